#include "freeset/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "freeset/analysis.hpp"
#include "freeset/cache.hpp"
#include "freeset/constructions.hpp"
#include "freeset/scan.hpp"
#include "freeset/serialize.hpp"
#include "freeset/solver.hpp"

namespace freeset::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item[0] == '-') throw std::invalid_argument("not a residue: \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

// "m:r1,r2,..."
PeriodicSet parse_periodic(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("periodic set must look like m:r1,r2,...");
  const auto m = parse_list(text.substr(0, colon));
  if (m.size() != 1) throw std::invalid_argument("periodic set needs one modulus before ':'");
  ResidueSet classes(m[0]);
  for (auto r : parse_list(text.substr(colon + 1))) classes.insert(r % m[0]);
  return PeriodicSet(std::move(classes));
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("range must look like a:b");
  const auto lo = parse_list(text.substr(0, colon));
  const auto hi = parse_list(text.substr(colon + 1));
  if (lo.size() != 1 || hi.size() != 1) throw std::invalid_argument("range must look like a:b");
  return {lo[0], hi[0]};
}

Json float_value(double v) { return round_significant(v); }

Json set_summary(const ResidueSet& a, bool with_members) {
  Json j{{"n", a.modulus()},
         {"size", a.cardinality()},
         {"density", to_string(density(a))},
         {"sum_free", is_sum_free(a)},
         {"product_free", is_product_free(a)}};
  if (with_members) j["set"] = residue_set_to_json(a);
  return j;
}

constexpr std::size_t kInlineMembers = 256;

struct Options {
  std::uint64_t n = 0;
  std::string mode = "sp";
  std::uint64_t budget = kDefaultNodeBudget;
  std::string cache;
  std::string construction;
  std::string set;
  std::uint64_t m = 0;
  std::uint64_t x = 0;
  std::optional<std::uint32_t> k;
  std::uint64_t cap = kDefaultModulusCap;
  std::size_t divisor_cap = kDefaultDivisorCap;
  bool members = false;
  std::string input;
  std::string range;
  double kappa = 1.0;
  std::string periodic;
  std::string format = "json";
  std::uint64_t step = 0;
  std::string envelope_n;
};

int emit_solve(const SolveResult& r, std::ostream& out) {
  out << solve_result_to_json(r).dump() << '\n';
  return r.optimal ? kOk : kNonOptimal;
}

int cmd_solve(const Options& o, bool oracle, std::ostream& out) {
  const auto constraints = ConstraintSpec::from_mode(o.mode);
  std::optional<ResultCache> cache;
  if (!o.cache.empty()) {
    cache.emplace(o.cache);
    if (auto hit = cache->lookup(o.n, constraints.mode()); hit && hit->optimal) return emit_solve(*hit, out);
  }
  if (o.n == 0) throw std::invalid_argument("--n must be at least 1");
  const SolveResult r = oracle ? brute_force_max(o.n, constraints) : exact_max(o.n, constraints, o.budget);
  if (cache) cache->append(r);
  return emit_solve(r, out);
}

ResidueSet set_from_options(const Options& o, std::uint64_t modulus) {
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw CacheIoError("cannot read " + o.input);
    return residue_set_from_json(Json::parse(in));
  }
  ResidueSet a(modulus);
  for (auto r : parse_list(o.set)) a.insert(r);
  return a;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  Json rep{{"construction", o.construction}};
  if (o.construction == "odd") {
    const auto a = odd_residues(o.n);
    rep.update(set_summary(a, o.members || a.cardinality() <= kInlineMembers));
  } else if (o.construction == "lift") {
    if (o.m == 0) throw std::invalid_argument("lift needs --m");
    const auto base = set_from_options(o, o.m);
    const auto lifted = lift(base, o.n);
    rep["from"] = set_summary(base, true);
    rep.update(set_summary(lifted, o.members || lifted.cardinality() <= kInlineMembers));
    rep["size_identity_holds"] = lifted.cardinality() == base.cardinality() * (o.n / base.modulus());
  } else if (o.construction == "blowup") {
    const auto base = set_from_options(o, o.n);
    const auto b = blowup(base, o.cap);
    rep["from"] = set_summary(base, true);
    rep["k"] = b.k;
    rep["N"] = b.big_n;
    rep["size"] = b.size;
    rep["expected_size"] = b.expected_size;
    rep["count_identity_holds"] = b.count_identity_holds;
    rep["lower_bound_holds"] = b.lower_bound_holds;
    rep["product_free"] = b.product_free;
    rep["density"] = to_string(density(b.set));
    rep["verified"] = b.count_identity_holds && b.product_free;
    if (o.members) rep["set"] = residue_set_to_json(b.set);
  } else if (o.construction == "section4") {
    const auto p = section4_params(o.x, o.k, true, o.divisor_cap);
    const auto dens = section4_density(p);
    rep["x"] = p.x;
    rep["ell"] = p.ell.to_string();
    rep["n_x"] = p.n.to_string();
    if (auto v = p.n.value()) rep["n_x_value"] = *v;
    rep["k"] = p.k;
    rep["k_overridden"] = p.k_overridden;
    rep["k_real"] = float_value(p.k_real);
    rep["log_log_n"] = float_value(p.log_log_n);
    rep["window"] = {p.window.lower, *p.window.upper};
    Json divisors = Json::array();
    for (const auto& d : *p.divisors) divisors.push_back(d.value() ? Json(*d.value()) : Json(d.to_string()));
    rep["divisors"] = divisors;
    rep["density"] = to_string(dens);
    const auto n = p.n.value();
    if (!n || *n > o.cap) {
      rep["explicit_set"] = "skipped: n_x exceeds modulus cap " + std::to_string(o.cap);
      rep["elapsed_ms"] = ms_since(start);
      out << rep.dump() << '\n';
      return kCapExceeded;
    }
    const auto a = section4_set(p, o.cap);
    bool all_odd = true;
    a.for_each([&](Residue r) { all_odd = all_odd && r % 2 == 1; });
    rep["size"] = a.cardinality();
    rep["set_density"] = to_string(density(a));
    rep["density_matches"] = density(a) == dens;
    rep["all_odd"] = all_odd;
    rep["sum_free"] = is_sum_free(a);
    rep["product_free"] = is_product_free(a);
    rep["verified"] = rep["density_matches"].get<bool>() && all_odd && rep["sum_free"].get<bool>() &&
                      rep["product_free"].get<bool>();
    if (o.members) rep["set"] = residue_set_to_json(a);
  } else {
    throw std::invalid_argument("unknown construction \"" + o.construction + "\"");
  }
  rep["elapsed_ms"] = ms_since(start);
  out << rep.dump() << '\n';
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto a = set_from_options(o, o.n);
  Json rep = set_summary(a, true);
  rep["sums_products_disjoint"] = !sumset(a, a).intersects(productset(a, a));
  out << rep.dump() << '\n';
  return kOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const auto [lo, hi] = parse_range(o.range);
  ScanConfig cfg;
  cfg.first = lo;
  cfg.last = hi;
  cfg.constraints = ConstraintSpec::from_mode(o.mode);
  cfg.budget = o.budget;
  cfg.kappa = o.kappa;
  if (lo == 0 && hi >= lo) throw std::invalid_argument("scan range must start at 1 or above");
  ResultCache cache(o.cache.empty() ? default_cache_path() : std::filesystem::path(o.cache));
  const auto records = scan(cfg, cache);
  std::size_t optimal = 0, flagged = 0, cached = 0;
  for (const auto& rec : records) {
    Json line = solve_result_to_json(rec.result);
    line["cached"] = rec.from_cache;
    if (rec.envelope) line["envelope"] = float_value(*rec.envelope);
    out << line.dump() << '\n';
    if (rec.above_two_fifths) {
      Json flag{{"flag", "density_above_two_fifths"},
                {"n", rec.result.n},
                {"mode", rec.result.constraints.mode()},
                {"density", to_string(rec.result.density())},
                {"optimal", rec.result.optimal}};
      if (rec.envelope) flag["envelope"] = float_value(*rec.envelope);
      if (rec.sums_products_disjoint) flag["sums_products_disjoint"] = *rec.sums_products_disjoint;
      out << flag.dump() << '\n';
      ++flagged;
    }
    optimal += rec.result.optimal;
    cached += rec.from_cache;
  }
  out << Json{{"summary",
               {{"count", records.size()},
                {"optimal", optimal},
                {"cached", cached},
                {"flagged", flagged},
                {"cache", cache.path().string()}}}}
             .dump()
      << '\n';
  return optimal == records.size() ? kOk : kNonOptimal;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const auto p = parse_periodic(o.periodic);
  if (o.x == 0) throw std::invalid_argument("--x must be at least 1");
  if (o.format == "csv") {
    const std::uint64_t step = o.step ? o.step : std::max<std::uint64_t>(1, o.x / 100);
    std::vector<std::uint64_t> xs;
    for (std::uint64_t x = step; x <= o.x; x += step) xs.push_back(x);
    if (xs.empty() || xs.back() != o.x) xs.push_back(o.x);
    write_window_csv(out, p, xs);
    return kOk;
  }
  const auto w = window_count(p, o.x);
  const Rational d = p.density();
  const Rational limit = 1 - 2 * d;
  const Rational gap = w.delta > limit ? Rational(w.delta - limit) : Rational(limit - w.delta);
  Json rep{{"m", p.modulus()},
           {"classes", p.classes().members()},
           {"density", to_string(d)},
           {"sum_free", p.is_sum_free()},
           {"product_free", p.is_product_free()},
           {"x", o.x},
           {"count", w.count},
           {"delta_x", to_string(w.delta)},
           {"delta_limit", to_string(limit)},
           {"delta_within_2m_over_x", gap * o.x <= 2 * p.modulus()}};
  const auto g = periodic_difference_group(p);
  rep["difference_group"] = g ? Json(*g) : Json(nullptr);
  if (const auto a0 = p.least_element()) {
    rep["a0"] = *a0;
    const auto bound = theorem1_bound(*a0);
    rep["theorem1_bound"] = to_string(bound);
    rep["least_multiple_disjoint"] = p.least_multiple_disjoint();
    if (p.is_sum_free() && p.least_multiple_disjoint()) rep["theorem1_holds"] = d <= bound;
    if (p.is_sum_free()) {
      const auto ib = interval_bound_check(p, 1, o.x);
      rep["interval_check"] = {{"count", ib.count}, {"bound", to_string(ib.bound)}, {"holds", ib.holds}};
    }
  }
  out << rep.dump() << '\n';
  return kOk;
}

int cmd_envelope(const Options& o, std::ostream& out) {
  std::size_t used = 0;
  double n = 0;
  try {
    n = std::stod(o.envelope_n, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != o.envelope_n.size()) throw std::invalid_argument("--n must be a number");
  Json rep{{"n", float_value(n)},
           {"kappa", float_value(o.kappa)},
           {"exponent", float_value(exponent_constant())},
           {"envelope", float_value(envelope(n, o.kappa))}};
  out << rep.dump() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sum-free and product-free residue set toolkit", "freeset"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Maximum feasible subset of Z/nZ by branch and bound");
  solve->add_option("--n", o.n, "Modulus")->required();
  solve->add_option("--mode", o.mode, "s, p or sp")->check(CLI::IsMember({"s", "p", "sp"}));
  solve->add_option("--budget", o.budget, "Node budget");
  solve->add_option("--cache", o.cache, "JSONL result cache to consult and update");

  auto* oracle = app.add_subcommand("oracle", "Maximum feasible subset by exhaustive enumeration (n <= 20)");
  oracle->add_option("--n", o.n, "Modulus")->required();
  oracle->add_option("--mode", o.mode, "s, p or sp")->check(CLI::IsMember({"s", "p", "sp"}));
  oracle->add_option("--cache", o.cache, "JSONL result cache to consult and update");

  auto* construct = app.add_subcommand("construct", "Build and verify a named construction");
  construct->add_option("name", o.construction, "odd | blowup | section4 | lift")
      ->required()
      ->check(CLI::IsMember({"odd", "blowup", "section4", "lift"}));
  construct->add_option("--n", o.n, "Modulus (odd, blowup) or target modulus (lift)");
  construct->add_option("--m", o.m, "Source modulus for lift");
  construct->add_option("--set", o.set, "Comma-separated residues");
  construct->add_option("--input", o.input, "Residue set as {\"n\":..,\"members\":[..]}");
  construct->add_option("--x", o.x, "lcm parameter for section4");
  construct->add_option("--k", o.k, "Override the Omega window parameter k");
  construct->add_option("--cap", o.cap, "Largest explicitly materialized modulus");
  construct->add_option("--divisor-cap", o.divisor_cap, "Largest divisor list to materialize");
  construct->add_flag("--members", o.members, "Always include the member list");

  auto* verify = app.add_subcommand("verify", "Check freeness of an explicit residue set");
  verify->add_option("--n", o.n, "Modulus");
  verify->add_option("--set", o.set, "Comma-separated residues");
  verify->add_option("--input", o.input, "Residue set as {\"n\":..,\"members\":[..]}");

  auto* scan_cmd = app.add_subcommand("scan", "Solve a range of moduli through the result cache");
  scan_cmd->add_option("--range", o.range, "a:b")->required();
  scan_cmd->add_option("--mode", o.mode, "s, p or sp")->check(CLI::IsMember({"s", "p", "sp"}));
  scan_cmd->add_option("--budget", o.budget, "Node budget per modulus");
  scan_cmd->add_option("--cache", o.cache, "Cache path (default $FREESET_CACHE or ./freeset_cache.jsonl)");
  scan_cmd->add_option("--kappa", o.kappa, "Envelope constant");

  auto* analyze = app.add_subcommand("analyze", "Window statistics of a periodic set of positive integers");
  analyze->add_option("--periodic", o.periodic, "m:r1,r2,...")->required();
  analyze->add_option("--x", o.x, "Window end")->required();
  analyze->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--step", o.step, "CSV grid step (default x/100)");

  auto* env = app.add_subcommand("envelope", "Evaluate the density envelope at n");
  env->add_option("--n", o.envelope_n, "n, e.g. 1e6")->required();
  env->add_option("--kappa", o.kappa, "Envelope constant");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(o, false, out);
    if (*oracle) return cmd_solve(o, true, out);
    if (*construct) return cmd_construct(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*scan_cmd) return cmd_scan(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*env) return cmd_envelope(o, out);
  } catch (const ModulusCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const DivisorCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const CacheIoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace freeset::cli
