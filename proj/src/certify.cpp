#include "exotic/certify.hpp"

#include "exotic/ball.hpp"
#include "exotic/error.hpp"
#include "exotic/growth.hpp"
#include "exotic/posdef.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace exotic {

namespace {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

constexpr double kInf = std::numeric_limits<double>::infinity();

HighFloat to_high(const BigInt& n) { return HighFloat(n); }

double admissible_t_floor(const GroupPresentation& g, double p) {
  const double log_c = std::log(growth_rate(g));
  return std::isinf(p) ? 0.0 : log_c / (0.99 * p);
}

bool t_admissible(const GroupPresentation& g, double p, double t) {
  if (!(t > 0.0)) return false;
  const double log_c = std::log(growth_rate(g));
  if (log_c == 0.0 || std::isinf(p)) return true;
  return t >= log_c / (0.99 * p) && log_c / t < p;
}

NormEstimate trivial_pairing(const GroupFunction& f, double p) {
  NormEstimate e;
  e.value = std::fabs(pair(f, TestFunction{[](const GroupElement&) { return 1.0; }, [](std::size_t) { return 1.0; }}));
  e.direction = Direction::CertifiedLower;
  e.target = Target::pf_star(p);
  e.method = "trivial_representation_pairing";
  e.params = {{"f", f.descriptor()},
              {"group", f.presentation().descriptor()},
              {"hypothesis", "trivial representation bounded on " + Target::pf_star(p).to_string()}};
  return e;
}

// High-precision recomputation of the closed-form quantities behind certificates.

HighFloat high_pair_exp(const GroupFunction& f, double t, bool trivial) {
  const GroupPresentation& g = f.presentation();
  HighFloat sum = 0;
  if (f.is_radial()) {
    const auto c = f.radial_coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0.0) continue;
      HighFloat w = trivial ? HighFloat(1) : HighFloat(exp(-HighFloat(t) * static_cast<unsigned long>(k)));
      sum += HighFloat(c[k]) * w * to_high(sphere_size(g, k));
    }
  } else {
    for (const auto& [s, v] : f.entries()) {
      HighFloat w = trivial ? HighFloat(1) : HighFloat(exp(-HighFloat(t) * static_cast<unsigned long>(s.length())));
      sum += HighFloat(v) * w;
    }
  }
  return abs(sum);
}

HighFloat high_l1(const GroupFunction& f) {
  const GroupPresentation& g = f.presentation();
  HighFloat sum = 0;
  if (f.is_radial()) {
    const auto c = f.radial_coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) sum += abs(HighFloat(c[k])) * to_high(sphere_size(g, k));
  } else {
    for (const auto& [s, v] : f.entries()) sum += abs(HighFloat(v));
  }
  return sum;
}

HighFloat high_haagerup(const GroupFunction& f) {
  const GroupPresentation& g = f.presentation();
  HighFloat sum = 0;
  if (f.is_radial()) {
    const auto c = f.radial_coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
      sum += HighFloat(k + 1) * abs(HighFloat(c[k])) * sqrt(to_high(sphere_size(g, k)));
    }
  } else {
    std::map<std::size_t, HighFloat> squares;
    for (const auto& [s, v] : f.entries()) squares[s.length()] += HighFloat(v) * HighFloat(v);
    for (const auto& [k, ss] : squares) sum += HighFloat(k + 1) * sqrt(ss);
  }
  return sum;
}

HighFloat high_schur(const GroupFunction& f, double rho_d) {
  const GroupFunction fs = f.materialize();
  const GroupPresentation& g = f.presentation();
  const BallIndex ball(g, fs.support_radius());
  const HighFloat rho(rho_d);
  HighFloat sup_left = 0, sup_right = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const GroupElement s = ball.element_at(i);
    const int len = static_cast<int>(s.length());
    HighFloat left = 0, right = 0;
    for (const auto& [u, c] : fs.entries()) {
      left += abs(HighFloat(c)) * pow(rho, static_cast<int>(multiply(inverse(u), s).length()) - len);
      right += abs(HighFloat(c)) * pow(rho, static_cast<int>(multiply(u, s).length()) - len);
    }
    sup_left = std::max(sup_left, left);
    sup_right = std::max(sup_right, right);
  }
  return sqrt(sup_left * sup_right);
}

HighFloat high_reduced(const GroupFunction& f, const std::string& method, const nlohmann::json& params) {
  if (method == "haagerup_sphere_bound") return high_haagerup(f);
  if (method == "schur_test_radial_weight") return high_schur(f, params.at("rho").get<double>());
  throw DomainError("cannot revalidate reduced upper bound method '" + method + "'");
}

HighFloat high_upper(const GroupFunction& f, const NormEstimate& upper) {
  if (upper.method == "interpolation_reduced_l1") {
    const HighFloat reduced = high_reduced(f, upper.params.at("reduced_method").get<std::string>(),
                                           upper.params.at("reduced_params"));
    const double theta = upper.params.at("theta").get<double>();
    if (theta == 0.0) return reduced;
    if (theta == 1.0) return high_l1(f);
    return pow(reduced, HighFloat(1.0 - theta)) * pow(high_l1(f), HighFloat(theta));
  }
  return high_reduced(f, upper.method, upper.params);
}

std::string kind_name(CertificateKind k) { return k == CertificateKind::Distinctness ? "distinctness" : "hulanicki"; }

nlohmann::json cell_json(const std::optional<SearchCell>& c) {
  if (!c) return nullptr;
  return {{"k", c->k}, {"t", c->t}};
}

}  // namespace

bool margin_is_valid(const NormEstimate& lower, const NormEstimate& upper) {
  if (!lower.certified() || !upper.certified()) return false;
  if (lower.direction != Direction::CertifiedLower || upper.direction != Direction::CertifiedUpper) return false;
  const double margin = lower.value - upper.value;
  return margin > kMarginTolerance * std::max(lower.value, upper.value);
}

DistinctnessSearch default_distinctness_search(const GroupPresentation& g, double p) {
  DistinctnessSearch s;
  const double t_min = admissible_t_floor(g, p);
  if (t_min > 0.0) {
    for (int j = 0; j <= 20; ++j) s.t_grid.push_back(t_min * (1.0 + 0.05 * j));
  } else {
    for (int j = 1; j <= 20; ++j) s.t_grid.push_back(0.05 * j);
  }
  return s;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw MalformedInputError("grid '" + text + "' must be a:b:step with numeric entries");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw MalformedInputError("grid '" + text + "' must be a:b:step with a <= b and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = parts[0] + static_cast<double>(i) * parts[2];
    grid.push_back(std::round(v * 1e12) / 1e12);
  }
  return grid;
}

Certificate distinctness_at(const GroupPresentation& g, double p, double p_prime, SearchCell cell) {
  if (!(p_prime >= 2.0) || !(p_prime < p)) {
    throw DomainError("distinctness needs 2 <= p' < p, got p = " + format_exponent(p) + ", p' = " + format_exponent(p_prime));
  }
  const GroupFunction f = GroupFunction::sphere_indicator(g, cell.k);
  const PosDefFunction phi = PosDefFunction::haagerup(g, cell.t);
  Certificate c;
  c.kind = CertificateKind::Distinctness;
  c.p = p;
  c.p_prime = p_prime;
  c.group = g.descriptor();
  c.witness_f = f.descriptor();
  c.t = cell.t;
  c.p_star = lp_membership_threshold(g, cell.t);
  c.cell = cell;
  c.lower = state_lower_bound(f, phi, p);
  const NormEstimate reduced = reduced_upper_haagerup(f);
  c.upper = p_prime == 2.0 ? reduced : pf_star_upper_interp(f, p_prime, reduced);
  c.margin = c.lower.value - c.upper.value;
  c.valid = margin_is_valid(c.lower, c.upper);
  return c;
}

SearchReport distinctness_witness(const GroupPresentation& g, double p, double p_prime, const DistinctnessSearch& search) {
  if (!(p_prime >= 2.0) || !(p_prime < p)) {
    throw DomainError("distinctness needs 2 <= p' < p, got p = " + format_exponent(p) + ", p' = " + format_exponent(p_prime));
  }
  std::vector<double> ts;
  for (double t : search.t_grid) {
    if (t_admissible(g, p, t)) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end(), std::greater<>());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (ts.empty() || search.k_min > search.k_max) {
    throw DomainError("empty search space: no t in the grid satisfies log(C)/t < p with t >= log(C)/(0.99 p), or k range is empty");
  }
  SearchReport report;
  nlohmann::json grid = nlohmann::json::array();
  for (double t : ts) grid.push_back(t);
  report.search = {{"t_grid", grid},
                   {"k_min", search.k_min},
                   {"k_max", search.k_max},
                   {"order", "k ascending, then t descending"},
                   {"witness_family", "sphere:k"}};
  for (std::size_t k = search.k_min; k <= search.k_max; ++k) {
    for (double t : ts) {
      Certificate c = distinctness_at(g, p, p_prime, {k, t});
      ++report.cells_examined;
      if (c.margin > report.best_margin) {
        report.best_margin = c.margin;
        report.best_cell = c.cell;
        if (!report.found) report.certificate = c;
      }
      if (c.valid) {
        report.found = true;
        report.certificate = std::move(c);
        return report;
      }
    }
  }
  return report;
}

SearchReport hulanicki_witness(const GroupPresentation& g, double p, std::optional<GroupFunction> f) {
  const GroupFunction witness = f.value_or(GroupFunction::ball_indicator(g, 1));
  if (!witness.is_nonnegative()) throw DomainError("the Hulanicki witness must be nonnegative");
  const Exponent ex(p);
  const double pe = std::max(ex.p(), ex.q());
  Certificate c;
  c.kind = CertificateKind::Hulanicki;
  c.p = pe;
  c.group = g.descriptor();
  c.witness_f = witness.descriptor();
  c.lower = trivial_pairing(witness, pe);
  const NormEstimate reduced = best_reduced_upper(witness);
  c.upper = pe == 2.0 ? reduced : pf_star_upper_interp(witness, pe, reduced);
  c.margin = c.lower.value - c.upper.value;
  c.valid = margin_is_valid(c.lower, c.upper);
  SearchReport report;
  report.found = c.valid;
  report.best_margin = c.margin;
  report.cells_examined = 1;
  report.search = {{"witness", witness.descriptor()}, {"amenable_growth", growth_rate(g) <= 1.0}};
  report.certificate = std::move(c);
  return report;
}

ScanReport scan_report(const GroupFunction& f, const std::vector<double>& p_grid, const PowerBudget& budget) {
  const GroupPresentation& g = f.presentation();
  std::vector<double> grid = p_grid;
  for (double p : grid) {
    if (!(p >= 2.0)) throw DomainError("scan grid must lie in [2, inf], got " + format_exponent(p));
  }
  std::sort(grid.begin(), grid.end());
  ScanReport report{g.descriptor(), f.descriptor(), {}, false};
  const NormEstimate reduced = best_reduced_upper(f);
  const double log_c = std::log(growth_rate(g));
  for (double p : grid) {
    NormEstimate lower = pf_star_lower(f, Exponent(p), budget);
    const double t = std::max(std::isinf(p) ? 0.0 : log_c / p * (1.0 + 1e-6), 1e-6);
    NormEstimate state = state_lower_bound(f, PosDefFunction::haagerup(g, t), p);
    if (state.value > lower.value) lower = state;
    NormEstimate upper = p == 2.0 ? reduced : pf_star_upper_interp(f, p, reduced);
    report.rows.push_back({p, lower, upper, lower.value, upper.value, false, false, false, 0.0});
  }
  double running = 0.0;
  for (auto& row : report.rows) {
    if (running > row.envelope_lower) {
      row.envelope_lower = running;
      row.lower_repaired = true;
    }
    running = row.envelope_lower;
  }
  running = kInf;
  for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
    if (running < it->envelope_upper) {
      it->envelope_upper = running;
      it->upper_repaired = true;
    }
    running = it->envelope_upper;
  }
  for (auto& row : report.rows) {
    const double tol = 1e-9 * std::max(row.envelope_lower, row.envelope_upper);
    row.crossing = row.envelope_lower > row.envelope_upper + tol;
    row.gap = row.envelope_upper - row.envelope_lower;
    report.crossing = report.crossing || row.crossing;
  }
  return report;
}

Revalidation revalidate(const Certificate& c) {
  const GroupPresentation g = GroupPresentation::parse(c.group);
  const GroupFunction f = GroupFunction::parse(c.witness_f, g);
  HighFloat lower;
  if (c.lower.method == "positive_definite_state") {
    const double t = c.lower.params.at("t").get<double>();
    const double p = c.p;
    const HighFloat p_star = log(HighFloat(growth_rate(g))) / HighFloat(t);
    if (!std::isinf(p) && !(HighFloat(p) > p_star)) throw PreconditionError("revalidation: p <= p*", p_star.convert_to<double>());
    lower = high_pair_exp(f, t, false);
  } else if (c.lower.method == "trivial_representation_pairing") {
    lower = high_pair_exp(f, 0.0, true);
  } else {
    throw DomainError("cannot revalidate lower bound method '" + c.lower.method + "'");
  }
  const HighFloat upper = high_upper(f, c.upper);
  const HighFloat margin = lower - upper;
  Revalidation r;
  r.lower = lower.convert_to<double>();
  r.upper = upper.convert_to<double>();
  r.margin = margin.convert_to<double>();
  r.sign_agrees = (margin > 0) == (c.margin > 0);
  r.valid = margin > HighFloat(kMarginTolerance) * std::max(lower, upper);
  auto rel = [](double a, double b) { return b == 0.0 ? std::fabs(a) : std::fabs(a - b) / std::fabs(b); };
  r.max_relative_deviation = std::max(rel(c.lower.value, r.lower), rel(c.upper.value, r.upper));
  return r;
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j = {{"schema_version", kCertificateSchemaVersion},
                      {"kind", kind_name(c.kind)},
                      {"group", c.group},
                      {"witness_f", c.witness_f},
                      {"p", number_to_json(c.p)},
                      {"p_prime", c.p_prime ? number_to_json(*c.p_prime) : nlohmann::json(nullptr)},
                      {"cell", cell_json(c.cell)},
                      {"lower", to_json(c.lower)},
                      {"upper", to_json(c.upper)},
                      {"margin", number_to_json(c.margin)},
                      {"ratio", number_to_json(c.ratio())},
                      {"margin_tolerance", kMarginTolerance},
                      {"valid", c.valid}};
  if (c.t) {
    j["phi"] = {{"t", *c.t}, {"p_star", *c.p_star}};
  } else {
    j["phi"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const SearchReport& r) {
  return {{"schema_version", kCertificateSchemaVersion},
          {"status", r.found ? "found" : "not-found"},
          {"certificate", r.certificate ? to_json(*r.certificate) : nlohmann::json(nullptr)},
          {"best_margin", number_to_json(r.best_margin)},
          {"best_cell", cell_json(r.best_cell)},
          {"cells_examined", r.cells_examined},
          {"search", r.search}};
}

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"p", number_to_json(row.p)},
                    {"lower", to_json(row.lower)},
                    {"upper", to_json(row.upper)},
                    {"envelope_lower", row.envelope_lower},
                    {"envelope_upper", row.envelope_upper},
                    {"lower_repaired", row.lower_repaired},
                    {"upper_repaired", row.upper_repaired},
                    {"crossing", row.crossing},
                    {"gap", row.gap}});
  }
  return {{"schema_version", kCertificateSchemaVersion},
          {"group", r.group},
          {"f", r.f},
          {"rows", rows},
          {"crossing", r.crossing}};
}

nlohmann::json to_json(const Revalidation& r) {
  return {{"lower", r.lower},
          {"upper", r.upper},
          {"margin", r.margin},
          {"sign_agrees", r.sign_agrees},
          {"valid", r.valid},
          {"max_relative_deviation", r.max_relative_deviation}};
}

}  // namespace exotic
