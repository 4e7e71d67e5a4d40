#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace exotic {

enum class Direction { CertifiedLower, CertifiedUpper, Heuristic };

enum class TargetKind { LambdaP, PFStar, ReducedCStar, CStarLp, EllP };

/// Which norm an estimate speaks about. `p` is ignored for ReducedCStar.
struct Target {
  TargetKind kind = TargetKind::ReducedCStar;
  double p = 2.0;

  static Target lambda(double p) { return {TargetKind::LambdaP, p}; }
  static Target pf_star(double p) { return {TargetKind::PFStar, p}; }
  static Target reduced() { return {TargetKind::ReducedCStar, 2.0}; }
  static Target cstar_lp(double p) { return {TargetKind::CStarLp, p}; }
  static Target ell(double p) { return {TargetKind::EllP, p}; }

  std::string to_string() const;
  friend bool operator==(const Target&, const Target&) = default;
};

/// A norm value with its direction and full provenance. `params` records every
/// truncation/iteration knob used; keys serialize in sorted order.
struct NormEstimate {
  double value = 0.0;
  Direction direction = Direction::Heuristic;
  Target target;
  std::string method;
  nlohmann::json params = nlohmann::json::object();

  bool certified() const noexcept { return direction != Direction::Heuristic; }
};

std::string to_string(Direction d);
std::string format_exponent(double p);

/// Doubles that are not finite serialize as the strings "inf" / "-inf" / "nan".
nlohmann::json number_to_json(double v);
nlohmann::json to_json(const NormEstimate& e);

}  // namespace exotic
