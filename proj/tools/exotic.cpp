#include "exotic/certify.hpp"
#include "exotic/error.hpp"
#include "exotic/growth.hpp"
#include "exotic/opnorm.hpp"
#include "exotic/parallel.hpp"
#include "exotic/posdef.hpp"
#include "exotic/selftest.hpp"
#include "exotic/simd/kernels.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotFound = 2;
constexpr int kExitUsage = 64;

using nlohmann::json;
using namespace exotic;

struct Options {
  std::string group = "free:2";
  std::string f = "sphere:1";
  std::string witness_f = "ball:1";
  std::string p = "2";
  double p_prime = 2.0;
  double t = 1.0;
  std::string tgrid;
  std::size_t kmax = 0;
  std::size_t kmin = 1;
  std::size_t radius = PowerBudget{}.radius;
  std::size_t iters = PowerBudget{}.iterations;
  std::size_t nmax = 6;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-8;
  double d = 2.0;
  std::string target = "pf";
  std::size_t enum_cap = kDefaultEnumerationCap;
  std::size_t threads = 0;
  bool json = false;
  std::string csv;
  std::string manifest;
};

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw MalformedInputError("cannot parse exponent '" + text + "'");
}

std::vector<double> parse_exponent_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_exponent(item));
  return out;
}

PowerBudget budget_of(const Options& o) {
  PowerBudget b;
  b.radius = o.radius;
  b.iterations = o.iters;
  b.seed = o.seed;
  return b;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot open CSV file '" + path + "'");
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void print_estimate(const NormEstimate& e) {
  std::cout << "  " << e.target.to_string() << "  " << to_string(e.direction) << "  " << fmt(e.value) << "  ["
            << e.method << "]\n";
}

// Each command fills `doc` and returns an exit code; human output is printed directly.

int cmd_growth(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  const std::size_t kmax = o.kmax ? o.kmax : 8;
  const bool enumerable = ball_size(g, kmax) <= BigInt(o.enum_cap);
  const GrowthProfile prof = enumerable ? enumerate_profile(g, kmax, o.enum_cap) : closed_form_profile(g, kmax);
  json rows = json::array();
  std::vector<std::vector<std::string>> csv;
  for (const auto& r : prof.rows) {
    rows.push_back({{"k", r.k}, {"sphere", r.sphere.str()}, {"ball", r.ball.str()}, {"ratio", number_to_json(r.ratio)}});
    csv.push_back({std::to_string(r.k), r.sphere.str(), r.ball.str(), std::isnan(r.ratio) ? "" : fmt(r.ratio)});
  }
  doc = {{"group", g.descriptor()},
         {"kmax", kmax},
         {"enum_cap", o.enum_cap},
         {"source", prof.source == GrowthSource::Enumerated ? "enumerated" : "closed_form"},
         {"growth_rate", prof.growth_rate},
         {"rows", rows}};
  if (!o.csv.empty()) write_csv(o.csv, {"k", "sphere", "ball", "ratio"}, csv);
  if (!o.json) {
    std::cout << "group " << g.descriptor() << "  C = " << fmt(prof.growth_rate) << "  ("
              << doc["source"].get<std::string>() << ")\n";
    std::cout << "k\t|S_k|\t|B_k|\tratio\n";
    for (const auto& r : csv) std::cout << r[0] << '\t' << r[1] << '\t' << r[2] << '\t' << (r[3].empty() ? "-" : r[3]) << '\n';
  }
  return kExitOk;
}

int cmd_threshold(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  const double c = growth_rate(g);
  const double ps = lp_membership_threshold(g, o.t);
  doc = {{"group", g.descriptor()}, {"t", o.t}, {"C", c}, {"p_star", ps}};
  if (!o.json) std::cout << "C = " << fmt(c) << "  p* = log(C)/t = " << fmt(ps) << "  (t = " << fmt(o.t) << ")\n";
  return kExitOk;
}

int cmd_pair(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  const auto f = GroupFunction::parse(o.f, g);
  const double p = parse_exponent(o.p);
  const auto phi = PosDefFunction::haagerup(g, o.t);
  const auto m = haagerup_lp_membership(g, o.t, p);
  const double value = pair(f, phi.as_test_function());
  doc = {{"group", g.descriptor()},
         {"f", f.descriptor()},
         {"t", o.t},
         {"p", number_to_json(p)},
         {"value", value},
         {"p_star", m.p_star},
         {"certified", m.member},
         {"member_of_intersection", m.member_of_intersection}};
  if (m.member) doc["estimate"] = to_json(state_lower_bound(f, phi, p));
  if (!o.json) {
    std::cout << "<f, phi_t> = " << fmt(value) << "  p* = " << fmt(m.p_star) << "  certified lower bound for "
              << Target::cstar_lp(p).to_string() << ": " << (m.member ? "yes" : "no") << '\n';
    if (!m.member && m.member_of_intersection) std::cout << "  p equals p*: only the intersection over p+eps holds\n";
  }
  return kExitOk;
}

int cmd_norm(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  const auto f = GroupFunction::parse(o.f, g);
  const double p = parse_exponent(o.p);
  const PowerBudget budget = budget_of(o);
  std::vector<NormEstimate> out;
  if (o.target == "lambda") {
    out.push_back(lambda_p_lower(f, Exponent(p), budget));
  } else if (o.target == "pf") {
    out.push_back(pf_star_lower(f, Exponent(p), budget));
    out.push_back(pf_star_upper_interp(f, p, best_reduced_upper(f)));
  } else if (o.target == "reduced") {
    out.push_back(lambda_p_lower(f, Exponent(2.0), budget));
    out.push_back(reduced_upper_haagerup(f));
    if (auto s = reduced_upper_schur(f)) out.push_back(*s);
  } else if (o.target == "rd") {
    out.push_back(weighted_rd_upper(f, p, o.d));
  } else if (o.target == "ell") {
    NormEstimate e;
    e.value = lp_norm(f, p);
    e.direction = Direction::CertifiedUpper;
    e.target = Target::ell(p);
    e.method = "exact_counting_norm";
    e.params = {{"f", f.descriptor()}, {"group", g.descriptor()}, {"p", number_to_json(p)}};
    NormEstimate lo = e;
    lo.direction = Direction::CertifiedLower;
    out.push_back(lo);
    out.push_back(e);
  } else {
    throw MalformedInputError("unknown --target '" + o.target + "' (lambda, pf, reduced, rd, ell)");
  }
  json arr = json::array();
  std::vector<std::vector<std::string>> csv;
  for (const auto& e : out) {
    arr.push_back(to_json(e));
    csv.push_back({e.target.to_string(), to_string(e.direction), e.method, fmt(e.value)});
  }
  doc = {{"group", g.descriptor()}, {"f", f.descriptor()}, {"target", o.target}, {"p", number_to_json(p)}, {"estimates", arr}};
  if (!o.csv.empty()) write_csv(o.csv, {"target", "direction", "method", "value"}, csv);
  if (!o.json) {
    std::cout << "f = " << f.descriptor() << " on " << g.descriptor() << '\n';
    for (const auto& e : out) print_estimate(e);
  }
  return kExitOk;
}

int cmd_okayasu(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  const auto f = GroupFunction::parse(o.f, g);
  const auto seq = okayasu_upper_seq(f, parse_exponent(o.p), o.nmax);
  json terms = json::array();
  std::vector<std::vector<std::string>> csv;
  for (const auto& t : seq.terms) {
    terms.push_back({{"n", t.n}, {"value", t.value}, {"support_size", t.support_size}});
    csv.push_back({std::to_string(t.n), fmt(t.value), fmt(t.support_size)});
  }
  doc = {{"group", g.descriptor()},
         {"f", f.descriptor()},
         {"p", number_to_json(seq.p)},
         {"q", number_to_json(seq.q)},
         {"nmax", o.nmax},
         {"direction", to_string(Direction::Heuristic)},
         {"target", Target::cstar_lp(seq.p).to_string()},
         {"terms", terms},
         {"truncated", seq.truncated},
         {"truncation_reason", seq.truncation_reason}};
  if (!o.csv.empty()) write_csv(o.csv, {"n", "value", "support_size"}, csv);
  if (!o.json) {
    std::cout << "Okayasu terms ||(f*f)^n||_q^(1/2n), q = " << fmt(seq.q) << " (heuristic)\n";
    for (const auto& r : csv) std::cout << "  n=" << r[0] << "  " << r[1] << "  support " << r[2] << '\n';
    if (seq.truncated) std::cout << "  truncated: " << seq.truncation_reason << '\n';
  }
  return kExitOk;
}

void print_certificate(const Certificate& c) {
  std::cout << "  witness " << c.witness_f << " on " << c.group;
  if (c.cell) std::cout << "  (k = " << c.cell->k << ", t = " << fmt(c.cell->t) << ")";
  std::cout << '\n';
  print_estimate(c.lower);
  print_estimate(c.upper);
  std::cout << "  margin " << fmt(c.margin) << "  ratio " << fmt(c.ratio()) << "  valid " << (c.valid ? "yes" : "no") << '\n';
}

int report_search(const Options& o, const SearchReport& r, json& doc) {
  doc = to_json(r);
  if (r.found && r.certificate) doc["revalidation"] = to_json(revalidate(*r.certificate));
  if (!o.csv.empty() && r.certificate) {
    const auto& c = *r.certificate;
    write_csv(o.csv, {"status", "k", "t", "lower", "upper", "margin", "ratio"},
              {{r.found ? "found" : "not-found", c.cell ? std::to_string(c.cell->k) : "", c.cell ? fmt(c.cell->t) : "",
                fmt(c.lower.value), fmt(c.upper.value), fmt(c.margin), fmt(c.ratio())}});
  }
  if (!o.json) {
    std::cout << (r.found ? "certificate found" : "not found") << "  (" << r.cells_examined << " cells)\n";
    if (r.certificate) print_certificate(*r.certificate);
    if (!r.found) std::cout << "  best margin " << fmt(r.best_margin) << '\n';
  }
  return r.found ? kExitOk : kExitNotFound;
}

int cmd_witness(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  const double p = parse_exponent(o.p);
  DistinctnessSearch s = default_distinctness_search(g, p);
  if (!o.tgrid.empty()) s.t_grid = parse_grid(o.tgrid);
  if (o.kmax) s.k_max = o.kmax;
  s.k_min = o.kmin;
  return report_search(o, distinctness_witness(g, p, o.p_prime, s), doc);
}

int cmd_hulanicki(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  std::optional<GroupFunction> f;
  f = GroupFunction::parse(o.witness_f, g);
  return report_search(o, hulanicki_witness(g, parse_exponent(o.p), f), doc);
}

int cmd_scan(const Options& o, json& doc) {
  const auto g = GroupPresentation::parse(o.group);
  const auto f = GroupFunction::parse(o.f, g);
  const auto rep = scan_report(f, parse_exponent_list(o.p), budget_of(o));
  doc = to_json(rep);
  std::vector<std::vector<std::string>> csv;
  for (const auto& r : rep.rows) {
    csv.push_back({fmt(r.p), fmt(r.envelope_lower), fmt(r.envelope_upper), fmt(r.gap), r.lower_repaired ? "1" : "0",
                   r.upper_repaired ? "1" : "0", r.crossing ? "1" : "0"});
  }
  if (!o.csv.empty()) {
    write_csv(o.csv, {"p", "lower", "upper", "gap", "lower_repaired", "upper_repaired", "crossing"}, csv);
  }
  if (!o.json) {
    std::cout << "p\tlower\tupper\tgap\n";
    for (const auto& r : csv) std::cout << r[0] << '\t' << r[1] << '\t' << r[2] << '\t' << r[3] << (r[6] == "1" ? "\tCROSSING" : "") << '\n';
  }
  return rep.crossing ? kExitError : kExitOk;
}

int cmd_selftest(const Options& o, json& doc) {
  const auto checks = run_selftest();
  json arr = json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    all = all && c.pass;
    if (!o.json) std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
  }
  doc = {{"checks", arr}, {"pass", all}};
  return all ? kExitOk : kExitError;
}

json defaults_json(const Options& o) {
  return {{"group", o.group}, {"f", o.f},           {"p", o.p},       {"pprime", o.p_prime}, {"t", o.t},
          {"tgrid", o.tgrid}, {"kmin", o.kmin},     {"kmax", o.kmax}, {"radius", o.radius},  {"iters", o.iters},
          {"nmax", o.nmax},   {"seed", o.seed},     {"tol", o.tol},   {"d", o.d},            {"target", o.target},
          {"enum_cap", o.enum_cap}, {"max_support", support_cap()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds on group-algebra norms of free groups and free products"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "free:<d> or cyclic:<m>:<d>")->capture_default_str();
    sub->add_flag("--json", o.json, "single JSON document on stdout");
    sub->add_option("--csv", o.csv, "write the result table to this CSV file");
    sub->add_option("--threads", o.threads, "worker count (default EXOTIC_THREADS or hardware)");
    sub->add_option("--manifest", o.manifest, "write a run manifest (command line, budgets, wall time, output)");
    sub->add_option("--tol", o.tol, "numerical tolerance")->capture_default_str();
  };
  auto fn = [&](CLI::App* sub) { sub->add_option("--f", o.f, "delta:<w>, sphere:<k>, ball:<k>, radial:<c0,...>, sparse:<w>=<v>,...")->capture_default_str(); };
  auto power = [&](CLI::App* sub) {
    sub->add_option("--radius", o.radius, "test-vector ball radius R")->capture_default_str();
    sub->add_option("--iters", o.iters, "Boyd iterations N")->capture_default_str();
    sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  };

  std::map<std::string, std::function<int(const Options&, json&)>> commands;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Options&, json&)> run) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    commands[name] = std::move(run);
    return sub;
  };

  auto* growth = add("growth", "sphere and ball sizes", cmd_growth);
  growth->add_option("--kmax", o.kmax, "largest radius (default 8)");
  growth->add_option("--enum-cap", o.enum_cap, "enumeration cap")->capture_default_str();

  add("threshold", "growth rate C and l^p threshold p*", cmd_threshold)
      ->add_option("--t", o.t, "decay parameter")->capture_default_str();

  auto* pr = add("pair", "pairing with exp(-t|s|) as a certified lower bound", cmd_pair);
  fn(pr);
  pr->add_option("--t", o.t, "decay parameter")->capture_default_str();
  pr->add_option("--p", o.p, "exponent")->capture_default_str();

  auto* nm = add("norm", "certified norm estimates", cmd_norm);
  fn(nm);
  power(nm);
  nm->add_option("--p", o.p, "exponent (number or inf)")->capture_default_str();
  nm->add_option("--target", o.target, "lambda, pf, reduced, rd or ell")->capture_default_str();
  nm->add_option("--d", o.d, "weight degree for --target rd")->capture_default_str();

  auto* ok = add("okayasu", "heuristic Okayasu sequence", cmd_okayasu);
  fn(ok);
  ok->add_option("--p", o.p, "exponent >= 2")->capture_default_str();
  ok->add_option("--nmax", o.nmax, "number of terms")->capture_default_str();

  auto* wt = add("witness", "distinctness certificate search", cmd_witness);
  wt->add_option("--p", o.p, "larger exponent p")->required();
  wt->add_option("--pprime", o.p_prime, "smaller exponent p' >= 2")->capture_default_str();
  wt->add_option("--tgrid", o.tgrid, "t grid a:b:step (default from log C / (0.99 p))");
  wt->add_option("--kmax", o.kmax, "largest sphere radius (default 24)");
  wt->add_option("--kmin", o.kmin, "smallest sphere radius")->capture_default_str();

  auto* hu = add("hulanicki", "non-amenability certificate", cmd_hulanicki);
  hu->add_option("--p", o.p, "exponent")->required();
  hu->add_option("--f", o.witness_f, "nonnegative witness")->capture_default_str();

  auto* sc = add("scan", "certified brackets over a grid of p", cmd_scan);
  fn(sc);
  power(sc);
  sc->add_option("--p", o.p, "comma-separated exponents in [2, inf]")->capture_default_str();

  add("selftest", "run the invariant suites", cmd_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  if (o.threads) set_worker_count(o.threads);
  std::string name;
  for (const auto* sub : app.get_subcommands()) name = sub->get_name();

  const auto start = std::chrono::steady_clock::now();
  json doc;
  int code = kExitOk;
  try {
    code = commands.at(name)(o, doc);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what();
    if (e.p_star()) std::cerr << " (p* = " << fmt(*e.p_star()) << ")";
    std::cerr << '\n';
    return kExitError;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << " (raise " << e.flag() << ")\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json output = {{"command", name}, {"version", kVersion}, {"defaults", defaults_json(o)}, {"result", doc}};
  if (o.json) std::cout << output.dump(2) << '\n';
  if (!o.manifest.empty()) {
    json args = json::array();
    for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
    json manifest = {{"argv", args},
                     {"seed", o.seed},
                     {"budgets", {{"radius", o.radius}, {"iters", o.iters}, {"nmax", o.nmax}, {"enum_cap", o.enum_cap},
                                  {"max_support", support_cap()}}},
                     {"versions", {{"exotic", kVersion}, {"boost", BOOST_LIB_VERSION}, {"simd", simd::isa_name(simd::active_isa())}}},
                     {"workers", worker_count()},
                     {"wall_time_seconds", wall},
                     {"exit_code", code},
                     {"output", output}};
    std::ofstream(o.manifest) << manifest.dump(2) << '\n';
  }
  return code;
}
