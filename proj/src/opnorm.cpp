#include "exotic/opnorm.hpp"

#include "exotic/ball.hpp"
#include "exotic/dense.hpp"
#include "exotic/error.hpp"
#include "exotic/growth.hpp"
#include "exotic/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <random>

namespace exotic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Trie over the reversed words of supp f. λ(x₁⋯x_j) = λ(x₁)⋯λ(x_j), so walking the path
// x_j, …, x₁ from the root applies one letter per edge.
struct TrieNode {
  Letter letter = 0;
  double coefficient = 0.0;
  std::size_t height = 0;
  std::vector<std::unique_ptr<TrieNode>> children;  // sorted by letter
};

std::unique_ptr<TrieNode> build_trie(std::span<const GroupFunction::Entry> entries) {
  auto root = std::make_unique<TrieNode>();
  for (const auto& [u, c] : entries) {
    TrieNode* node = root.get();
    const auto w = u.letters();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto pos = std::lower_bound(node->children.begin(), node->children.end(), *it,
                                  [](const std::unique_ptr<TrieNode>& n, Letter x) { return n->letter < x; });
      if (pos == node->children.end() || (*pos)->letter != *it) {
        auto child = std::make_unique<TrieNode>();
        child->letter = *it;
        pos = node->children.insert(pos, std::move(child));
      }
      node = pos->get();
    }
    node->coefficient += c;
  }
  auto fix_heights = [](auto& self, TrieNode& n) -> std::size_t {
    n.height = 0;
    for (auto& c : n.children) n.height = std::max(n.height, self(self, *c) + 1);
    return n.height;
  };
  fix_heights(fix_heights, *root);
  return root;
}

// Applies convolution by finitely supported functions to dense vectors on a ball.
// Vectors have capacity() entries: the ball in canonical order plus one trailing zero
// that absorbs the out-of-ball sentinel of the gather tables.
class BallConvolution {
 public:
  BallConvolution(GroupPresentation g, std::size_t capacity_radius)
      : ball_(g, capacity_radius), tables_(g.alphabet_size()) {}

  const BallIndex& ball() const noexcept { return ball_; }
  std::size_t capacity() const noexcept { return ball_.size() + 1; }

  // out = f∗in on B_{out_r}; entries of `out` past B_{out_r} are left untouched. `in` must
  // vanish outside B_{in_r}. Each intermediate λ(w)in is supported in B_{in_r+|w|} and is
  // only formed on the part that later gathers can reach.
  void apply(const TrieNode& root, std::span<const double> in, std::size_t in_r, std::span<double> out,
             std::size_t out_r) {
    const std::size_t cap_r = ball_.radius();
    const std::size_t n_out = ball_.ball_size(out_r);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n_out), 0.0);
    if (root.coefficient != 0.0) {
      const std::size_t m = std::min(n_out, ball_.ball_size(in_r));
      dense::axpy(out.subspan(0, m), root.coefficient, in.subspan(0, m));
    }
    if (buffers_.size() < root.height + 1) {
      buffers_.resize(root.height + 1);
      high_water_.resize(root.height + 1, 0);
    }
    walk(root, 0, in, in_r, out.subspan(0, n_out), out_r, cap_r);
  }

 private:
  const std::vector<std::uint32_t>& table_for(Letter x) {
    auto& t = tables_[x];
    if (t.empty()) t = ball_.left_multiplication_table(x);
    return t;
  }

  void walk(const TrieNode& node, std::size_t depth, std::span<const double> src, std::size_t in_r,
            std::span<double> out, std::size_t out_r, std::size_t cap_r) {
    const GroupPresentation& g = ball_.presentation();
    for (const auto& child : node.children) {
      const std::size_t rho = std::min({in_r + depth + 1, out_r + child->height, cap_r});
      const std::size_t n = ball_.ball_size(rho);
      const auto& table = table_for(g.inverse(child->letter));
      if (child->children.empty()) {
        const std::size_t m = std::min(n, out.size());
        dense::gather_axpy(out.subspan(0, m), child->coefficient, src, std::span<const std::uint32_t>(table.data(), m));
        continue;
      }
      auto& dst = buffers_[depth + 1];
      if (dst.size() != capacity()) dst.assign(capacity(), 0.0);
      dense::gather(std::span<double>(dst.data(), n), src, std::span<const std::uint32_t>(table.data(), n));
      std::size_t& hw = high_water_[depth + 1];
      if (hw > n) std::fill(dst.begin() + static_cast<std::ptrdiff_t>(n), dst.begin() + static_cast<std::ptrdiff_t>(hw), 0.0);
      hw = n;
      if (child->coefficient != 0.0) {
        const std::size_t m = std::min(n, out.size());
        dense::axpy(out.subspan(0, m), child->coefficient, std::span<const double>(dst.data(), m));
      }
      walk(*child, depth + 1, dst, in_r, out, out_r, cap_r);
    }
  }

  BallIndex ball_;
  std::vector<std::vector<std::uint32_t>> tables_;
  std::vector<std::vector<double>> buffers_;
  std::vector<std::size_t> high_water_;
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (a * 1009 + b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string candidate_name(int kind) {
  switch (kind) {
    case 0:
      return "delta_e";
    case 1:
      return "ball_indicator";
    case 2:
      return "boyd_iterate";
    default:
      return "random";
  }
}

struct LambdaResult {
  double value = 0.0;
  std::size_t radius = 0;
  int candidate = 0;
  std::size_t iteration = 0;
  std::size_t boyd_steps_at_max_radius = 0;
};

LambdaResult lambda_search(const GroupFunction& f, double p, double q, const PowerBudget& budget) {
  LambdaResult best;
  const GroupFunction fs = f.materialize();
  if (fs.is_zero()) return best;
  const std::size_t rf = fs.support_radius();
  const std::size_t R = std::max<std::size_t>(budget.radius, 1);
  BallConvolution engine(fs.presentation(), R + rf);
  const auto forward = build_trie(fs.entries());
  const GroupFunction adj = involution(fs);
  const auto backward = build_trie(adj.entries());

  const std::size_t cap = engine.capacity();
  std::vector<double> g(cap, 0.0), y(cap, 0.0), z(cap, 0.0), w(cap, 0.0);
  const bool boyd = !std::isinf(p) && p > 1.0;

  for (std::size_t r = 1; r <= R; ++r) {
    const std::size_t n_in = engine.ball().ball_size(r);
    const std::size_t n_out = engine.ball().ball_size(r + rf);
    auto in_view = std::span<double>(g.data(), n_in);
    auto evaluate = [&](int kind, std::size_t iteration) {
      engine.apply(*forward, g, r, y, r + rf);
      const double den = dense::lp_norm(in_view, p);
      if (!(den > 0.0)) return 0.0;
      const double value = dense::lp_norm(std::span<const double>(y.data(), n_out), p) / den;
      if (value > best.value) best = {value, r, kind, iteration, best.boyd_steps_at_max_radius};
      return value;
    };

    // Vector prefixes only grow with r, so nothing past them is ever dirty.
    std::fill(in_view.begin(), in_view.end(), 0.0);
    g[0] = 1.0;
    evaluate(0, 0);

    std::fill(in_view.begin(), in_view.end(), 1.0);
    double previous = evaluate(1, 0);
    for (std::size_t it = 1; boyd && it <= budget.iterations; ++it) {
      // z = J_p(f∗g), w = P_r(f*∗z), g = J_q(w); scaled by sup norms against under/overflow.
      const double ymax = dense::lp_norm(std::span<const double>(y.data(), n_out), kInf);
      if (!(ymax > 0.0)) break;
      std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n_out), z.begin());
      auto zv = std::span<double>(z.data(), n_out);
      dense::scale(zv, 1.0 / ymax);
      dense::signed_power(zv, zv, p - 1.0);
      engine.apply(*backward, z, r + rf, w, r);
      auto wv = std::span<double>(w.data(), n_in);
      const double wmax = dense::lp_norm(wv, kInf);
      if (!(wmax > 0.0)) break;
      dense::scale(wv, 1.0 / wmax);
      dense::signed_power(in_view, wv, q - 1.0);
      const double value = evaluate(2, it);
      if (r == R) best.boyd_steps_at_max_radius = it;
      if (std::fabs(value - previous) <= 1e-15 * value) break;
      previous = value;
    }

    for (std::size_t i = 0; i < budget.random_vectors; ++i) {
      std::mt19937_64 rng(mix_seed(budget.seed, r, i));
      for (double& x : in_view) x = uniform01(rng);
      evaluate(3, i);
    }
  }
  return best;
}

nlohmann::json budget_json(const PowerBudget& b) {
  return {{"radius", b.radius}, {"iterations", b.iterations}, {"seed", b.seed}, {"random_vectors", b.random_vectors}};
}

const char* constant_status(const GroupPresentation& g) {
  return g.family() == Family::Free ? "proven" : "family_checked";
}

}  // namespace

Exponent::Exponent(double p) : p_(p) {
  if (!(p >= 1.0)) throw DomainError("exponent must lie in [1, inf], got " + format_exponent(p));
  if (std::isinf(p)) {
    q_ = 1.0;
  } else if (p == 1.0) {
    q_ = kInf;
  } else {
    q_ = p / (p - 1.0);
  }
}

bool Exponent::is_infinite() const noexcept { return std::isinf(p_); }

NormEstimate lambda_p_lower(const GroupFunction& f, Exponent p, const PowerBudget& budget) {
  const LambdaResult res = lambda_search(f, p.p(), p.q(), budget);
  NormEstimate e;
  e.value = res.value;
  e.direction = Direction::CertifiedLower;
  e.target = Target::lambda(p.p());
  e.method = "rayleigh_quotient_boyd";
  e.params = budget_json(budget);
  e.params["p"] = number_to_json(p.p());
  e.params["f"] = f.descriptor();
  e.params["group"] = f.presentation().descriptor();
  e.params["best_radius"] = res.radius;
  e.params["best_candidate"] = candidate_name(res.candidate);
  e.params["best_iteration"] = res.iteration;
  e.params["boyd_steps_at_max_radius"] = res.boyd_steps_at_max_radius;
  return e;
}

NormEstimate pf_star_lower(const GroupFunction& f, Exponent p, const PowerBudget& budget) {
  const double lo = std::min(p.p(), p.q());
  const Exponent first = p.p() == lo ? p : p.conjugate();
  const NormEstimate a = lambda_p_lower(f, first, budget);
  const NormEstimate b = first.p() == first.q() ? a : lambda_p_lower(f, first.conjugate(), budget);
  NormEstimate e;
  e.value = std::max(a.value, b.value);
  e.direction = Direction::CertifiedLower;
  e.target = Target::pf_star(std::max(p.p(), p.q()));
  e.method = "max_lambda_p_lambda_q";
  e.params = budget_json(budget);
  e.params["p"] = number_to_json(p.p());
  e.params["q"] = number_to_json(p.q());
  e.params["f"] = f.descriptor();
  e.params["group"] = f.presentation().descriptor();
  e.params["lambda_small_exponent"] = number_to_json(a.value);
  e.params["lambda_large_exponent"] = number_to_json(b.value);
  return e;
}

NormEstimate reduced_upper_haagerup(const GroupFunction& f) {
  const GroupPresentation& g = f.presentation();
  double value = 0.0;
  nlohmann::json spheres = nlohmann::json::array();
  if (f.is_radial()) {
    const auto c = f.radial_coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0.0) continue;
      const double l2 = std::fabs(c[k]) * std::sqrt(sphere_size_double(g, k));
      value += static_cast<double>(k + 1) * l2;
    }
  } else {
    std::map<std::size_t, simd::CompensatedSum> squares;
    for (const auto& [s, v] : f.entries()) squares[s.length()].add(v * v);
    for (const auto& [k, ss] : squares) value += static_cast<double>(k + 1) * std::sqrt(ss.value());
  }
  NormEstimate e;
  e.value = value;
  e.direction = Direction::CertifiedUpper;
  e.target = Target::reduced();
  e.method = "haagerup_sphere_bound";
  e.params = {{"f", f.descriptor()},
              {"group", g.descriptor()},
              {"weight", "k+1"},
              {"constant_status", constant_status(g)},
              {"path", f.is_radial() ? "radial_closed_form" : "sparse"}};
  return e;
}

std::optional<NormEstimate> reduced_upper_schur(const GroupFunction& f, double work_limit) {
  if (f.is_zero()) return std::nullopt;
  const GroupPresentation& g = f.presentation();
  const std::size_t rf = f.support_radius();
  if (f.support_size() * ball_size(g, rf).convert_to<double>() > work_limit) return std::nullopt;
  const GroupFunction fs = f.materialize();
  const BallIndex ball(g, rf);
  const std::size_t span_len = 2 * rf + 1;

  // hist_*[i * span_len + L]: Σ|f(u)| over u with |u⁻¹s_i| = L (left) or |u s_i| = L (right).
  std::vector<double> hist_left(ball.size() * span_len, 0.0), hist_right(ball.size() * span_len, 0.0);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const GroupElement s = ball.element_at(i);
    for (const auto& [u, c] : fs.entries()) {
      hist_left[i * span_len + multiply(inverse(u), s).length()] += std::fabs(c);
      hist_right[i * span_len + multiply(u, s).length()] += std::fabs(c);
    }
  }
  auto sup_ratio = [&](const std::vector<double>& hist, double rho) {
    double sup = 0.0;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const double len = static_cast<double>(ball.length_at(i));
      simd::CompensatedSum acc;
      for (std::size_t L = 0; L < span_len; ++L) {
        if (hist[i * span_len + L] != 0.0) acc.add(hist[i * span_len + L] * std::pow(rho, static_cast<double>(L) - len));
      }
      sup = std::max(sup, acc.value());
    }
    return sup;
  };

  std::vector<double> grid{1.0 / std::sqrt(static_cast<double>(g.branching()))};
  for (int j = 1; j <= 20; ++j) grid.push_back(0.05 * j);
  double best = kInf;
  double best_rho = 1.0;
  for (double rho : grid) {
    const double bound = std::sqrt(sup_ratio(hist_left, rho) * sup_ratio(hist_right, rho));
    if (bound < best) {
      best = bound;
      best_rho = rho;
    }
  }
  NormEstimate e;
  e.value = best;
  e.direction = Direction::CertifiedUpper;
  e.target = Target::reduced();
  e.method = "schur_test_radial_weight";
  e.params = {{"f", f.descriptor()},
              {"group", g.descriptor()},
              {"rho", best_rho},
              {"sup_radius", rf},
              {"weight", "rho^|s|"}};
  return e;
}

NormEstimate best_reduced_upper(const GroupFunction& f) {
  NormEstimate h = reduced_upper_haagerup(f);
  if (auto s = reduced_upper_schur(f); s && s->value < h.value) return *s;
  return h;
}

NormEstimate pf_star_upper_interp(const GroupFunction& f, double p, const NormEstimate& reduced_upper) {
  if (reduced_upper.target.kind != TargetKind::ReducedCStar || reduced_upper.direction != Direction::CertifiedUpper) {
    throw DomainError("interpolation needs a certified upper bound on the reduced norm, got " +
                      to_string(reduced_upper.direction) + " for " + reduced_upper.target.to_string());
  }
  const Exponent ex(p);
  const double pe = std::max(ex.p(), ex.q());
  const double l1 = lp_norm(f, 1.0);
  const double theta = std::isinf(pe) ? 1.0 : 1.0 - 2.0 / pe;
  const double value = std::pow(reduced_upper.value, 1.0 - theta) * std::pow(l1, theta);
  NormEstimate e;
  e.value = value;
  e.direction = Direction::CertifiedUpper;
  e.target = Target::pf_star(pe);
  e.method = "interpolation_reduced_l1";
  e.params = {{"p", number_to_json(pe)},
              {"theta", theta},
              {"reduced_upper", reduced_upper.value},
              {"reduced_method", reduced_upper.method},
              {"reduced_params", reduced_upper.params},
              {"l1_norm", l1},
              {"f", f.descriptor()},
              {"group", f.presentation().descriptor()},
              {"also_bounds", Target::cstar_lp(pe).to_string()}};
  return e;
}

OkayasuSequence okayasu_upper_seq(const GroupFunction& f, double p, std::size_t n_max, std::size_t cap) {
  const Exponent ex(p);
  if (ex.p() < 2.0) throw DomainError("the Okayasu sequence needs p >= 2, got " + format_exponent(p));
  OkayasuSequence seq{ex.p(), ex.q(), {}, false, {}};
  if (n_max == 0) return seq;
  std::optional<GroupFunction> h;
  try {
    const GroupFunction fs = f.materialize(cap);
    h = convolve(involution(fs), fs, cap);
  } catch (const ResourceLimitError& err) {
    seq.truncated = true;
    seq.truncation_reason = err.what();
    return seq;
  }
  GroupFunction power = *h;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      try {
        power = convolve(power, *h, cap);
      } catch (const ResourceLimitError& err) {
        seq.truncated = true;
        seq.truncation_reason = err.what();
        break;
      }
    }
    const double norm = lp_norm(power, ex.q());
    seq.terms.push_back({n, std::pow(norm, 1.0 / (2.0 * static_cast<double>(n))), power.support_size()});
  }
  return seq;
}

NormEstimate weighted_rd_upper(const GroupFunction& f, double p, double d) {
  const Exponent ex(p);
  if (ex.p() < 2.0) throw DomainError("weighted RD bound needs p >= 2, got " + format_exponent(p));
  const double degree = std::isinf(ex.p()) ? 0.0 : 2.0 * d / ex.p();
  NormEstimate e;
  e.value = weighted_norm(f, ex.q(), PolynomialWeight{degree});
  e.direction = Direction::Heuristic;
  e.target = Target::pf_star(ex.p());
  e.method = "weighted_lq_rd";
  e.params = {{"p", number_to_json(ex.p())},
              {"q", number_to_json(ex.q())},
              {"d", d},
              {"weight_degree", degree},
              {"constant", "unknown"},
              {"f", f.descriptor()},
              {"group", f.presentation().descriptor()}};
  return e;
}

RdMembership rd_membership(const PosDefFunction& phi, double p, double rd_bound, std::vector<double> degree_offsets) {
  if (!phi.is_radial()) throw DomainError("rd_membership needs a radial positive definite function");
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("rd_membership needs finite p >= 1");
  const GroupPresentation& g = phi.presentation();
  const auto decay = phi.decay();
  auto log_phi = [&](std::size_t k) {
    if (decay) return -*decay * static_cast<double>(k);
    return std::log(std::fabs(phi.radial_value(k)));
  };
  RdMembership out{p, rd_bound, 2.0 / p * rd_bound, {}, true};
  for (double offset : degree_offsets) {
    const double d = out.required_degree + offset;
    auto log_term = [&](std::size_t k) {
      return log_sphere_size(g, k) + p * log_phi(k) - d * p * std::log1p(static_cast<double>(k));
    };
    // log a_k ≈ c + r·k − α·log k, fitted at k = 250, 500, 1000.
    const double g1 = log_term(250), g2 = log_term(500), g3 = log_term(1000);
    RdNorm row{d, kInf, false, 0.0, 0.0};
    if (!std::isfinite(g3) && g3 < 0) {
      row.convergent = true;
      row.exponential_rate = -kInf;
    } else {
      const double d1 = g2 - g1, d2 = g3 - g2;
      row.exponential_rate = (d2 - d1) / 500.0;
      row.polynomial_exponent = (500.0 * row.exponential_rate - d1) / std::log(2.0);
      if (row.exponential_rate > 1e-9) {
        row.convergent = false;
      } else if (row.exponential_rate < -1e-9) {
        row.convergent = true;
      } else {
        row.convergent = row.polynomial_exponent > 1.0 + 1e-6;
      }
    }
    if (row.convergent) {
      simd::CompensatedSum sum;
      for (std::size_t k = 0; k < 100000; ++k) {
        const double term = std::exp(log_term(k));
        sum.add(term);
        if (k > 16 && term <= 1e-18 * sum.value()) break;
      }
      row.value = std::pow(sum.value(), 1.0 / p);
    }
    out.member = out.member && row.convergent;
    out.norms.push_back(row);
  }
  return out;
}

}  // namespace exotic
