#include "exotic/estimate.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace exotic {

std::string format_exponent(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  // Prefer the shortest representation that round-trips.
  for (int digits = 1; digits <= 17; ++digits) {
    char shortbuf[32];
    std::snprintf(shortbuf, sizeof shortbuf, "%.*g", digits, p);
    if (std::strtod(shortbuf, nullptr) == p) return shortbuf;
  }
  return buf;
}

std::string Target::to_string() const {
  switch (kind) {
    case TargetKind::LambdaP:
      return "LambdaP(" + format_exponent(p) + ")";
    case TargetKind::PFStar:
      return "PFStar(" + format_exponent(p) + ")";
    case TargetKind::ReducedCStar:
      return "ReducedCStar";
    case TargetKind::CStarLp:
      return "CStarLp(" + format_exponent(p) + ")";
    case TargetKind::EllP:
      return "EllP(" + format_exponent(p) + ")";
  }
  return "unknown";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::CertifiedLower:
      return "certified-lower";
    case Direction::CertifiedUpper:
      return "certified-upper";
    case Direction::Heuristic:
      return "heuristic";
  }
  return "unknown";
}

nlohmann::json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json to_json(const NormEstimate& e) {
  return nlohmann::json{{"value", number_to_json(e.value)},
                        {"direction", to_string(e.direction)},
                        {"target", e.target.to_string()},
                        {"method", e.method},
                        {"params", e.params}};
}

}  // namespace exotic
