#pragma once

#include "exotic/algebra.hpp"
#include "exotic/estimate.hpp"
#include "exotic/opnorm.hpp"
#include "exotic/words.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace exotic {

inline constexpr int kCertificateSchemaVersion = 1;
inline constexpr double kMarginTolerance = 1e-6;

enum class CertificateKind { Distinctness, Hulanicki };

struct SearchCell {
  std::size_t k;
  double t;
};

/// A certified lower bound set against a certified upper bound. For Distinctness(p, p')
/// the lower bounds ‖f‖_{C*_{L^p}} and the upper bounds ‖f‖ in C*_r (p' = 2) or PF*_{p'}.
/// For Hulanicki(p) the lower is ⟨f, 1⟩, the value any bounded trivial representation would give.
struct Certificate {
  CertificateKind kind = CertificateKind::Distinctness;
  double p = 0.0;
  std::optional<double> p_prime;
  std::string group;
  std::string witness_f;
  std::optional<double> t;
  std::optional<double> p_star;
  std::optional<SearchCell> cell;
  NormEstimate lower;
  NormEstimate upper;
  double margin = 0.0;
  bool valid = false;

  double ratio() const noexcept { return upper.value > 0.0 ? lower.value / upper.value : 0.0; }
};

/// Valid iff both sides are certified and margin > 1e-6 · max(lower, upper).
bool margin_is_valid(const NormEstimate& lower, const NormEstimate& upper);

struct DistinctnessSearch {
  std::vector<double> t_grid;
  std::size_t k_min = 1;
  std::size_t k_max = 24;
};

/// t_min = log C / (0.99 p) and t_min·(1 + 0.05 j), j = 0..20; for C = 1, t = 0.05 j, j = 1..20.
DistinctnessSearch default_distinctness_search(const GroupPresentation& g, double p);

/// Parses `a:b:step` into an inclusive grid.
std::vector<double> parse_grid(const std::string& text);

/// χ_{S_k} against e^{-t|·|} at exponent p, and the Haagerup (p' = 2) or interpolation
/// (p' > 2) upper bound at p'. Throws PreconditionError when log C / t ≥ p.
Certificate distinctness_at(const GroupPresentation& g, double p, double p_prime, SearchCell cell);

struct SearchReport {
  bool found = false;
  std::optional<Certificate> certificate;  // the winner, or the best invalid attempt
  double best_margin = -std::numeric_limits<double>::infinity();
  std::optional<SearchCell> best_cell;
  std::size_t cells_examined = 0;
  nlohmann::json search = nlohmann::json::object();
};

/// Scans k ascending, then admissible t (log C / t < p) descending; the first valid cell wins.
SearchReport distinctness_witness(const GroupPresentation& g, double p, double p_prime,
                                  const DistinctnessSearch& search);

/// Default witness χ_{B₁}. p < 2 is replaced by its conjugate.
SearchReport hulanicki_witness(const GroupPresentation& g, double p,
                               std::optional<GroupFunction> f = std::nullopt);

struct ScanRow {
  double p;
  NormEstimate lower;
  NormEstimate upper;
  double envelope_lower;
  double envelope_upper;
  bool lower_repaired;
  bool upper_repaired;
  bool crossing;
  double gap;
};

struct ScanReport {
  std::string group;
  std::string f;
  std::vector<ScanRow> rows;
  bool crossing = false;
};

/// Per-p brackets for ‖f‖_{PF*_p} from every certified method. Raw brackets are repaired
/// into monotone envelopes (the norm is nondecreasing in p ≥ 2); a remaining crossing is flagged.
ScanReport scan_report(const GroupFunction& f, const std::vector<double>& p_grid, const PowerBudget& budget = {});

struct Revalidation {
  double lower;
  double upper;
  double margin;
  bool sign_agrees;
  bool valid;
  double max_relative_deviation;
};

/// Recomputes both sides from the certificate alone with exact sphere sizes and 50-digit floats.
Revalidation revalidate(const Certificate& c);

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const SearchReport& r);
nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const Revalidation& r);

}  // namespace exotic
