#include "exotic/algebra.hpp"

#include "exotic/ball.hpp"
#include "exotic/error.hpp"
#include "exotic/growth.hpp"
#include "exotic/simd/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <unordered_map>

namespace exotic {

using simd::CompensatedSum;

std::size_t support_cap() {
  if (const char* env = std::getenv("EXOTIC_MAX_SUPPORT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSupportCap;
}

namespace {

void sort_and_merge(std::vector<GroupFunction::Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<GroupFunction::Entry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0.0; });
  entries = std::move(merged);
}

double parse_double(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw MalformedInputError("expected a number, got '" + s + "'");
  return v;
}

std::size_t parse_size(std::string_view text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw MalformedInputError("expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_same(const GroupFunction& f, const GroupFunction& g) {
  if (!(f.presentation() == g.presentation())) {
    throw DomainError("functions live on different groups: " + f.presentation().descriptor() + " vs " +
                      g.presentation().descriptor());
  }
}

}  // namespace

GroupFunction GroupFunction::sparse(GroupPresentation g, std::vector<Entry> entries) {
  for (const auto& e : entries) {
    if (!(e.first.presentation() == g)) throw DomainError("entry does not belong to " + g.descriptor());
  }
  GroupFunction f(g);
  sort_and_merge(entries);
  f.entries_ = std::move(entries);
  return f;
}

GroupFunction GroupFunction::delta(const GroupElement& u, double coefficient) {
  return sparse(u.presentation(), {{u, coefficient}});
}

GroupFunction GroupFunction::radial(GroupPresentation g, std::vector<double> coefficients) {
  GroupFunction f(g);
  f.radial_ = true;
  // Spheres beyond the group's extent are empty; their coefficients carry no mass.
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (log_sphere_size(g, k) == -std::numeric_limits<double>::infinity()) coefficients[k] = 0.0;
  }
  while (!coefficients.empty() && coefficients.back() == 0.0) coefficients.pop_back();
  f.coefficients_ = std::move(coefficients);
  return f;
}

GroupFunction GroupFunction::sphere_indicator(GroupPresentation g, std::size_t k) {
  std::vector<double> c(k + 1, 0.0);
  c[k] = 1.0;
  return radial(g, std::move(c));
}

GroupFunction GroupFunction::ball_indicator(GroupPresentation g, std::size_t k) {
  return radial(g, std::vector<double>(k + 1, 1.0));
}

GroupFunction GroupFunction::parse(std::string_view descriptor, GroupPresentation g) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw MalformedInputError("function descriptor must look like kind:args, got '" + std::string(descriptor) + "'");
  }
  const auto kind = descriptor.substr(0, colon);
  const auto args = descriptor.substr(colon + 1);
  if (kind == "delta") return delta(GroupElement::parse(args, g));
  if (kind == "sphere") return sphere_indicator(g, parse_size(args));
  if (kind == "ball") return ball_indicator(g, parse_size(args));
  if (kind == "radial") {
    std::vector<double> c;
    for (auto part : split(args, ',')) c.push_back(parse_double(part));
    return radial(g, std::move(c));
  }
  if (kind == "sparse") {
    std::vector<Entry> entries;
    for (auto part : split(args, ',')) {
      auto eq = part.find('=');
      if (eq == std::string_view::npos) throw MalformedInputError("sparse entries must be word=value");
      entries.emplace_back(GroupElement::parse(part.substr(0, eq), g), parse_double(part.substr(eq + 1)));
    }
    return sparse(g, std::move(entries));
  }
  throw MalformedInputError("unknown function kind '" + std::string(kind) + "'");
}

std::span<const GroupFunction::Entry> GroupFunction::entries() const {
  if (radial_) throw DomainError("radial function has no sparse entries; materialize it first");
  return entries_;
}

GroupFunction GroupFunction::materialize(std::size_t cap) const {
  if (!radial_) return *this;
  const double size = support_size();
  if (size > static_cast<double>(cap)) {
    throw ResourceLimitError("expanding " + descriptor() + " needs " + format_number(size) +
                                 " entries, above the support cap " + std::to_string(cap) +
                                 " (raise EXOTIC_MAX_SUPPORT)",
                             size, static_cast<double>(cap), "EXOTIC_MAX_SUPPORT");
  }
  GroupFunction out(pres_);
  if (coefficients_.empty()) return out;
  BallIndex index(pres_, coefficients_.size() - 1);
  out.entries_.reserve(static_cast<std::size_t>(size));
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    if (coefficients_[k] == 0.0) continue;
    for (std::size_t i = index.sphere_begin(k); i < index.sphere_begin(k + 1); ++i) {
      out.entries_.emplace_back(index.element_at(i), coefficients_[k]);
    }
  }
  return out;
}

double GroupFunction::operator()(const GroupElement& s) const {
  if (!(s.presentation() == pres_)) throw DomainError("element does not belong to " + pres_.descriptor());
  if (radial_) return s.length() < coefficients_.size() ? coefficients_[s.length()] : 0.0;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s, [](const Entry& e, const GroupElement& x) { return e.first < x; });
  return it != entries_.end() && it->first == s ? it->second : 0.0;
}

std::size_t GroupFunction::support_radius() const noexcept {
  if (radial_) return coefficients_.empty() ? 0 : coefficients_.size() - 1;
  return entries_.empty() ? 0 : entries_.back().first.length();
}

double GroupFunction::support_size() const noexcept {
  if (!radial_) return static_cast<double>(entries_.size());
  double total = 0.0;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    if (coefficients_[k] != 0.0) total += sphere_size_double(pres_, k);
  }
  return total;
}

bool GroupFunction::is_nonnegative() const noexcept {
  if (radial_) return std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return c >= 0.0; });
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second >= 0.0; });
}

bool GroupFunction::is_zero() const noexcept { return radial_ ? coefficients_.empty() : entries_.empty(); }

std::string GroupFunction::descriptor() const {
  if (radial_) {
    const auto n = coefficients_.size();
    if (n == 0) return "radial:0";
    const bool ones = std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return c == 1.0; });
    if (ones) return "ball:" + std::to_string(n - 1);
    const bool single = coefficients_.back() == 1.0 &&
                        std::all_of(coefficients_.begin(), coefficients_.end() - 1, [](double c) { return c == 0.0; });
    if (single) return "sphere:" + std::to_string(n - 1);
    std::string out = "radial:";
    for (std::size_t k = 0; k < n; ++k) out += (k ? "," : "") + format_number(coefficients_[k]);
    return out;
  }
  if (entries_.size() == 1 && entries_[0].second == 1.0) return "delta:" + entries_[0].first.to_string();
  std::string out = "sparse:";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out += (i ? "," : "") + entries_[i].first.to_string() + "=" + format_number(entries_[i].second);
  }
  return out;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g, std::size_t cap) {
  require_same(f, g);
  const auto& pres = f.presentation();
  if (f.is_zero() || g.is_zero()) return GroupFunction::sparse(pres, {});
  const double pairs = f.support_size() * g.support_size();
  const double ball_bound = ball_size(pres, f.support_radius() + g.support_radius()).convert_to<double>();
  const double estimate = std::min(pairs, ball_bound);
  if (estimate > static_cast<double>(cap)) {
    throw ResourceLimitError("convolution output support estimated at " + format_number(estimate) +
                                 " entries, above the support cap " + std::to_string(cap) +
                                 " (raise EXOTIC_MAX_SUPPORT)",
                             estimate, static_cast<double>(cap), "EXOTIC_MAX_SUPPORT");
  }
  const GroupFunction fs = f.materialize(cap);
  const GroupFunction gs = g.materialize(cap);
  std::unordered_map<GroupElement, CompensatedSum, GroupElementHash> acc;
  acc.reserve(static_cast<std::size_t>(estimate));
  for (const auto& [u, a] : fs.entries()) {
    for (const auto& [v, b] : gs.entries()) acc[multiply(u, v)].add(a * b);
  }
  std::vector<GroupFunction::Entry> out;
  out.reserve(acc.size());
  for (auto& [s, sum] : acc) {
    const double value = sum.value();
    if (value != 0.0) out.emplace_back(s, value);
  }
  return GroupFunction::sparse(pres, std::move(out));
}

GroupFunction involution(const GroupFunction& f) {
  if (f.is_radial()) return f;
  std::vector<GroupFunction::Entry> out;
  out.reserve(f.entries().size());
  for (const auto& [u, a] : f.entries()) out.emplace_back(inverse(u), a);
  return GroupFunction::sparse(f.presentation(), std::move(out));
}

GroupFunction add(const GroupFunction& f, const GroupFunction& g) {
  require_same(f, g);
  if (f.is_radial() && g.is_radial()) {
    std::vector<double> c(std::max(f.radial_coefficients().size(), g.radial_coefficients().size()), 0.0);
    for (std::size_t k = 0; k < f.radial_coefficients().size(); ++k) c[k] += f.radial_coefficients()[k];
    for (std::size_t k = 0; k < g.radial_coefficients().size(); ++k) c[k] += g.radial_coefficients()[k];
    return GroupFunction::radial(f.presentation(), std::move(c));
  }
  const auto fs = f.materialize();
  const auto gs = g.materialize();
  std::vector<GroupFunction::Entry> out(fs.entries().begin(), fs.entries().end());
  out.insert(out.end(), gs.entries().begin(), gs.entries().end());
  return GroupFunction::sparse(f.presentation(), std::move(out));
}

GroupFunction scaled(const GroupFunction& f, double a) {
  if (f.is_radial()) {
    std::vector<double> c(f.radial_coefficients().begin(), f.radial_coefficients().end());
    for (double& x : c) x *= a;
    return GroupFunction::radial(f.presentation(), std::move(c));
  }
  std::vector<GroupFunction::Entry> out(f.entries().begin(), f.entries().end());
  for (auto& e : out) e.second *= a;
  return GroupFunction::sparse(f.presentation(), std::move(out));
}

double PolynomialWeight::operator()(std::size_t length) const {
  if (degree == 0.0) return 1.0;
  return std::pow(1.0 + static_cast<double>(length), degree);
}

double weighted_norm(const GroupFunction& f, double p, PolynomialWeight w) {
  if (!(p > 0.0)) throw DomainError("exponent p must be positive");
  const bool inf = std::isinf(p);
  auto accumulate = [&](auto&& each) {
    double max = 0.0;
    CompensatedSum sum;
    each([&](double value, double multiplicity) {
      const double a = std::fabs(value);
      if (a == 0.0) return;
      if (inf) {
        max = std::max(max, a);
      } else {
        sum.add((p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p))) * multiplicity);
      }
    });
    if (inf) return max;
    if (p == 1.0) return sum.value();
    if (p == 2.0) return std::sqrt(sum.value());
    return std::pow(sum.value(), 1.0 / p);
  };
  if (f.is_radial()) {
    const auto c = f.radial_coefficients();
    return accumulate([&](auto&& visit) {
      for (std::size_t k = 0; k < c.size(); ++k) visit(c[k] * w(k), sphere_size_double(f.presentation(), k));
    });
  }
  return accumulate([&](auto&& visit) {
    for (const auto& [s, a] : f.entries()) visit(a * w(s), 1.0);
  });
}

double lp_norm(const GroupFunction& f, double p) { return weighted_norm(f, p, PolynomialWeight{0.0}); }

double pair(const GroupFunction& f, const TestFunction& phi) {
  CompensatedSum sum;
  if (f.is_radial() && phi.radial) {
    const auto c = f.radial_coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] != 0.0) sum.add(c[k] * phi.radial(k) * sphere_size_double(f.presentation(), k));
    }
    return sum.value();
  }
  const auto fs = f.materialize();
  for (const auto& [s, a] : fs.entries()) {
    const double value = phi.point ? phi.point(s) : phi.radial(s.length());
    sum.add(a * value);
  }
  return sum.value();
}

}  // namespace exotic
