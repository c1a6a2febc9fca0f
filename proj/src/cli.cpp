#include "nilalg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "nilalg/errors.hpp"
#include "nilalg/growth.hpp"
#include "nilalg/quotient.hpp"
#include "nilalg/serialize.hpp"

namespace nilalg {

namespace fs = std::filesystem;

namespace {

std::pair<std::size_t, std::size_t> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw PreconditionError("window must be written as N1,N2");
  try {
    return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw PreconditionError("window must be written as N1,N2");
  }
}

Schedule load_schedule(const RunConfig& cfg) {
  if (!cfg.schedule_inline.is_null()) return schedule_from_json(cfg.schedule_inline, cfg.field);
  if (cfg.schedule == "default" || cfg.schedule == "default-real") return Schedule::default_real();
  std::ifstream in(cfg.schedule);
  if (!in) throw PreconditionError("cannot read schedule file " + cfg.schedule);
  try {
    return schedule_from_json(nlohmann::json::parse(in), cfg.field);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(cfg.schedule + ": " + e.what(), e.byte);
  }
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("cannot write " + p.string());
  out << text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string results_csv(const std::vector<CheckResult>& results) {
  std::string out = "check,parameters,status,counterexample,detail\n";
  for (const auto& r : results)
    out += csv_escape(r.check) + "," + csv_escape(r.parameters.dump()) + "," + status_name(r.status) + "," +
           csv_escape(r.counterexample) + "," + csv_escape(r.detail) + "\n";
  return out;
}

/// A store loaded from disk together with the objects rebuilt around it.
struct Session {
  LoadedStore store;
  Schedule schedule;
  std::unique_ptr<Levels> levels;
};

Session open_store(const RunConfig& cfg) {
  Session s{load_store(cfg.out), Schedule::default_real(), nullptr};
  s.schedule = schedule_from_json(s.store.manifest.schedule, s.store.manifest.field);
  s.levels = std::make_unique<Levels>(s.schedule, s.store.manifest.field, s.store.manifest.engine);
  s.levels->adopt(s.store.levels);
  return s;
}

/// Commands other than verify refuse to compute from a store whose files fail their hashes.
void require_intact(const Session& s) {
  if (!s.store.hash_mismatches.empty())
    throw PreconditionError("level store is corrupted: " + s.store.hash_mismatches.front() +
                            " does not match its manifest hash (run verify for details)");
}

nlohmann::json metadata(const Session& s) {
  return {{"schedule_sha256", s.store.manifest.schedule_sha256},
          {"field", s.store.manifest.field},
          {"engine", engine_name(s.store.manifest.engine)}};
}

// ---- verification suites ----

void suite_8props(Session& s, std::vector<CheckResult>& out) {
  for (std::size_t n = 0; n < s.store.levels.size(); ++n)
    for (auto& r : check_conditions(*s.levels, n)) out.push_back(std::move(r));
}

void suite_ustack(Session& s, std::vector<CheckResult>& out) {
  const std::size_t top = s.store.levels.size() - 1;
  for (std::size_t m = 0; m <= top; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      std::string bad;
      const std::uint64_t blocks = std::uint64_t{1} << (m - n);
      for (std::uint64_t k = 0; k < blocks && bad.empty(); ++k)
        if (auto w = ustack_counterexample(n, m, k, *s.levels)) bad = "k=" + std::to_string(k) + ": " + *w;
      out.push_back(make_result("ustack", {{"n", n}, {"m", m}, {"k", "all"}}, bad.empty(), bad));
    }
}

void suite_totalsize(Session& s, QuotientTable& t, std::size_t nmax, std::vector<CheckResult>& out) {
  (void)s;
  for (std::size_t n = 1; n <= nmax; ++n)
    for (auto& r : verify_totalsize(n, t)) out.push_back(std::move(r));
}

void suite_complements(QuotientTable& t, std::size_t nmax, std::vector<CheckResult>& out) {
  for (std::size_t j = 0; j <= nmax; ++j) {
    for (auto& r : verify_complements(j, t)) out.push_back(std::move(r));
    for (auto& r : verify_pieces(j, t)) out.push_back(std::move(r));
    out.push_back(verify_defining(j, t));
  }
}

void suite_qadd(QuotientTable& t, std::size_t nmax, std::vector<CheckResult>& out) {
  for (std::size_t total = 2; total <= nmax; ++total)
    for (std::size_t split = 1; split < 64 && (std::size_t{1} << split) <= total; ++split) {
      const std::size_t k = total & ((std::size_t{1} << split) - 1);
      const std::size_t j = total - k;
      // One pair per boundary between bits.
      if (k == 0 || j == 0 || ((k >> (split - 1)) & 1U) == 0) continue;
      out.push_back(verify_qadd(j, k, t));
    }
}

template <class Fn>
void sweep(std::size_t lo, std::size_t hi, std::vector<CheckResult>& out, Fn&& fn) {
  for (std::size_t n = lo; n <= hi; ++n) {
    CheckResult r = fn(n);
    if (r.status != Status::not_applicable) out.push_back(std::move(r));
  }
}

std::vector<std::string> compare_levels(const LevelState& a, const LevelState& b) {
  std::vector<std::string> diffs;
  if (a.build_case != b.build_case) diffs.push_back("case");
  if (!same_space(a.U, b.U)) diffs.push_back("U");
  if (!same_space(a.V, b.V)) diffs.push_back("V");
  if (!same_space(a.N, b.N)) diffs.push_back("N");
  if (!same_space(a.M, b.M)) diffs.push_back("M");
  if (a.m1 != b.m1 || a.m2 != b.m2) diffs.push_back("m1/m2");
  return diffs;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

void suite_engines(Session& s, std::vector<CheckResult>& out) {
  const std::size_t top = s.store.levels.size() - 1;
  Levels fresh(s.schedule, s.store.manifest.field, s.store.manifest.engine);
  fresh.build_through(top);
  for (std::size_t n = 0; n <= top; ++n) {
    auto diffs = compare_levels(s.store.levels[n], fresh.at(n));
    out.push_back(make_result("store_level", {{"level", n}, {"file", level_file_name(n)}}, diffs.empty(),
                              diffs.empty() ? "" : level_file_name(n) + ": " + join(diffs) + " differ from a rebuild"));
  }

  const std::size_t cross = std::min<std::size_t>(top, 4);
  Levels dense(s.schedule, s.store.manifest.field, Engine::dense);
  Levels mono(s.schedule, s.store.manifest.field, Engine::monomial);
  dense.build_through(cross);
  std::size_t mono_top = 0;
  bool mono_ok = true;
  for (std::size_t n = 0; n <= cross; ++n) {
    try {
      mono.build_through(n);
      mono_top = n;
    } catch (const PreconditionError& e) {
      mono_ok = false;
      CheckResult r;
      r.check = "engine_levels";
      r.parameters = {{"level", n}};
      r.status = Status::not_applicable;
      r.detail = e.what();
      out.push_back(std::move(r));
      break;
    }
    auto diffs = compare_levels(dense.at(n), mono.at(n));
    out.push_back(make_result("engine_levels", {{"level", n}}, diffs.empty(), join(diffs)));
  }
  if (!mono_ok) return;
  QuotientTable td(dense, QPath::dense), tm(mono, QPath::monomial);
  // Degrees whose E needs only levels both engines reached (E(n) uses level ⌊log n⌋ + 1).
  for (std::size_t n = 1; n <= 4 && (static_cast<std::size_t>(63 - __builtin_clzll(n)) + 1) <= mono_top; ++n) {
    std::vector<std::string> diffs;
    if (!same_space(td.E(n), tm.E(n))) diffs.push_back("E");
    if (!same_space(td.R(n), tm.R(n))) diffs.push_back("R");
    if (!same_space(td.S(n), tm.S(n))) diffs.push_back("S");
    if (!same_space(td.Q(n), tm.Q(n))) diffs.push_back("Q");
    if (!same_space(td.W(n), tm.W(n))) diffs.push_back("W");
    out.push_back(make_result("engine_quotient", {{"n", n}}, diffs.empty(), join(diffs)));
  }
}

std::vector<CheckResult> run_suite(const std::string& suite, Session& s, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  QuotientTable t(*s.levels);
  const std::size_t nmax = cfg.max_degree;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  // A tampered store fails every suite.
  for (const auto& f : s.store.hash_mismatches)
    out.push_back(make_result("store_hash", {{"file", f}}, false, f, "content does not match the manifest hash"));
  if (want("8props")) suite_8props(s, out);
  if (want("ustack")) suite_ustack(s, out);
  if (want("engines")) suite_engines(s, out);
  if (want("complements")) suite_complements(t, nmax, out);
  if (want("totalsize")) suite_totalsize(s, t, nmax, out);
  if (want("qadd")) suite_qadd(t, nmax, out);
  if (want("wqsmall")) sweep(3, nmax, out, [&](std::size_t n) { return verify_wqsmall(n, t); });
  if (want("sdim")) {
    const std::size_t before = out.size();
    sweep(2, nmax, out, [&](std::size_t n) { return verify_sdim(n, t); });
    if (out.size() == before) {
      CheckResult r;
      r.check = "sdim";
      r.parameters = {{"nmax", nmax}};
      r.status = Status::not_applicable;
      r.detail = "no degree has all its binary digits inside one S interval";
      out.push_back(std::move(r));
    }
  }
  if (want("tdim")) sweep(1, nmax, out, [&](std::size_t n) { return verify_tdim(n, t); });
  if (want("estimate")) sweep(2, nmax, out, [&](std::size_t n) { return verify_main_estimate(n, t); });
  if (want("ideal")) for (auto& r : verify_ideal(nmax, t)) out.push_back(std::move(r));
  if (want("witness")) sweep(1, nmax, out, [&](std::size_t n) { return verify_x_power(n, t); });
  return out;
}

// ---- commands ----

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  Levels levels(load_schedule(cfg), cfg.field, cfg.engine);
  levels.build_through(cfg.max_level);
  const std::string hash = save_store(cfg.out, levels);
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& s : levels.states()) cases.push_back(s.build_case);
  nlohmann::json j{{"command", "build"},
                   {"levels", levels.count()},
                   {"cases", cases},
                   {"store", cfg.out},
                   {"manifest_sha256", hash},
                   {"schedule_sha256", sha256_hex(canonical_text(schedule_to_json(levels.schedule())))}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw PreconditionError("unknown suite '" + cfg.suite + "'");
  Session s = open_store(cfg);
  const auto results = run_suite(cfg.suite, s, cfg);
  const std::string text = cfg.format == "csv" ? results_csv(results) : report_json(results).dump(2) + "\n";
  write_text(fs::path(cfg.out) / ("report-" + cfg.suite + (cfg.format == "csv" ? ".csv" : ".json")), text);
  out << text;
  std::map<std::string, std::size_t> counts;
  for (const auto& r : results) ++counts[status_name(r.status)];
  nlohmann::json summary{{"suite", cfg.suite}, {"seed", cfg.seed}, {"metadata", metadata(s)}, {"counts", counts}};
  err << summary.dump() << "\n";
  return any_failed(results) ? kExitVerifyFailed : kExitOk;
}

nlohmann::json profile_json(const HilbertProfile& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t n = 1; n <= p.nmax(); ++n)
    rows.push_back({{"n", n}, {"dim_quotient", p.dim(n).str()}, {"cumulative", p.cum(n).str()}});
  return rows;
}

std::string profile_csv(const HilbertProfile& p) {
  std::string out = "n,dim_quotient,cumulative\n";
  for (std::size_t n = 1; n <= p.nmax(); ++n) out += std::to_string(n) + "," + p.dim(n).str() + "," + p.cum(n).str() + "\n";
  return out;
}

int cmd_hilbert(const RunConfig& cfg, std::ostream& out) {
  Session s = open_store(cfg);
  require_intact(s);
  QuotientTable t(*s.levels);
  const HilbertProfile prof = hilbert(cfg.max_degree, t);
  const auto bounds = check_growth_bound(prof);
  nlohmann::json j{{"metadata", metadata(s)}, {"profile", profile_json(prof)}, {"bounds", report_json(bounds)}};
  write_text(fs::path(cfg.out) / "hilbert.csv", profile_csv(prof));
  write_text(fs::path(cfg.out) / "hilbert.json", j.dump(2) + "\n");
  out << (cfg.format == "csv" ? profile_csv(prof) : j.dump(2) + "\n");
  return any_failed(bounds) ? kExitVerifyFailed : kExitOk;
}

int cmd_gk(const RunConfig& cfg, std::ostream& out) {
  Session s = open_store(cfg);
  require_intact(s);
  QuotientTable t(*s.levels);
  const HilbertProfile prof = hilbert(cfg.max_degree, t);
  auto bounds = check_growth_bound(prof);
  const auto window = cfg.window.value_or(std::make_pair(std::max<std::size_t>(2, cfg.max_degree / 16), cfg.max_degree));
  const Rational slope = gk_slope(prof, window.first, window.second);
  bounds.push_back(make_result("gk_slope", {{"n1", window.first}, {"n2", window.second}}, slope <= 3, "",
                               "slope = " + slope.str() + " <= 3"));
  nlohmann::json j{{"metadata", metadata(s)},
                   {"window", {window.first, window.second}},
                   {"slope", slope.str()},
                   {"slope_decimal", to_double(slope)},
                   {"log_precision_bits", kSlopePrecision},
                   {"bounds", report_json(bounds)}};
  write_text(fs::path(cfg.out) / "gk.json", j.dump(2) + "\n");
  out << j.dump(2) << "\n";
  return any_failed(bounds) ? kExitVerifyFailed : kExitOk;
}

int cmd_probe(const RunConfig& cfg, std::ostream& out) {
  if (cfg.poly.empty()) throw PreconditionError("probe needs --poly");
  Session s = open_store(cfg);
  require_intact(s);
  const GeneralPoly f = parse_poly(cfg.poly, s.store.manifest.field);
  if (f.degree() * cfg.exponent > cfg.max_degree)
    throw BudgetExceeded("deg(poly) * exponent = " + std::to_string(f.degree() * cfg.exponent) + " exceeds --max-degree");
  const GeneralPoly g = power(f, cfg.exponent);
  QuotientTable t(*s.levels);
  nlohmann::json comps = nlohmann::json::array();
  bool all_in = true;
  for (const auto& [d, h] : g.components()) {
    const Subspace E = t.E_uncached(d);
    bool in = true;
    nlohmann::json offending = nlohmann::json::array();
    if (E.is_monomial()) {
      for (const auto& [w, c] : h.terms())
        if (!E.contains_word(w)) {
          in = false;
          offending.push_back(w.str());
        }
    } else {
      in = contains(E, h.to_dense());
    }
    all_in = all_in && in;
    nlohmann::json c{{"degree", d}, {"in_E", in}};
    if (E.is_monomial()) c["offending"] = offending;
    comps.push_back(std::move(c));
  }
  nlohmann::json j{{"poly", format_poly(f)}, {"exponent", cfg.exponent}, {"components", comps}, {"in_E", all_in}};
  if (g.components().size() <= 64) {
    std::size_t terms = 0;
    for (const auto& [d, h] : g.components()) terms += h.terms().size();
    if (terms <= 1000) j["power"] = format_poly(g);
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"8props", "ustack",  "totalsize", "qadd",  "wqsmall",     "sdim", "tdim",
                                              "estimate", "ideal", "engines",   "witness", "complements", "all"};
  return names;
}

void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "schedule") {
        if (v.is_object()) {
          cfg.schedule_inline = v;
        } else {
          cfg.schedule = v.get<std::string>();
          cfg.schedule_inline = nullptr;
        }
      } else if (key == "field") {
        cfg.field = v.get<std::uint32_t>();
      } else if (key == "engine") {
        cfg.engine = parse_engine(v.get<std::string>());
      } else if (key == "max_level") {
        cfg.max_level = v.get<std::size_t>();
      } else if (key == "max_degree") {
        cfg.max_degree = v.get<std::size_t>();
      } else if (key == "budget_mb") {
        cfg.budget_mb = v.get<std::size_t>();
      } else if (key == "suite") {
        cfg.suite = v.get<std::string>();
      } else if (key == "out") {
        cfg.out = v.get<std::string>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "format") {
        cfg.format = v.get<std::string>();
      } else if (key == "poly") {
        cfg.poly = v.get<std::string>();
      } else if (key == "exponent") {
        cfg.exponent = v.get<unsigned>();
      } else if (key == "window") {
        auto w = v.get<std::vector<std::size_t>>();
        if (w.size() != 2) throw PreconditionError("window must have two entries");
        cfg.window = std::make_pair(w[0], w[1]);
      } else {
        throw PreconditionError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad config value: ") + e.what());
  }
}

void validate_config(const RunConfig& cfg) {
  Field check(cfg.field);
  (void)check;
  if (cfg.budget_mb == 0) throw PreconditionError("--budget-mb must be positive");
  if (cfg.max_degree == 0) throw PreconditionError("--max-degree must be positive");
  if (cfg.exponent == 0) throw PreconditionError("--exponent must be positive");
  if (cfg.format != "json" && cfg.format != "csv") throw PreconditionError("--format must be json or csv");
  if (cfg.max_level > 30) throw BudgetExceeded("--max-level beyond the representable range");
  if (cfg.engine == Engine::dense && (std::size_t{1} << cfg.max_level) > limits().max_dense_degree)
    throw BudgetExceeded("the dense engine cannot reach degree 2^" + std::to_string(cfg.max_level) +
                         " (limit " + std::to_string(limits().max_dense_degree) + ")");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded nil-algebra construction laboratory", "nilalg"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path, schedule, engine, window;
  std::uint32_t field = 2;
  std::size_t max_level = 0, max_degree = 0, budget = 0;
  std::string suite, outdir, format, poly;
  std::uint64_t seed = 0;
  unsigned exponent = 1;

  auto* o_config = app.add_option("--config", config_path, "JSON config file (flags override it)");
  auto* o_schedule = app.add_option("--schedule", schedule, "schedule JSON file, or 'default'");
  auto* o_field = app.add_option("--field", field, "prime p of the ground field GF(p)");
  auto* o_engine = app.add_option("--engine", engine, "dense | monomial | auto");
  auto* o_level = app.add_option("--max-level", max_level, "build levels 0..L");
  auto* o_degree = app.add_option("--max-degree", max_degree, "largest degree n examined");
  auto* o_budget = app.add_option("--budget-mb", budget, "memory budget for dense objects");
  auto* o_suite = app.add_option("--suite", suite, "verification suite");
  auto* o_out = app.add_option("--out", outdir, "level store / output directory");
  auto* o_seed = app.add_option("--seed", seed, "seed recorded in reports");
  auto* o_format = app.add_option("--format", format, "json | csv");
  auto* o_poly = app.add_option("--poly", poly, "polynomial for probe, e.g. \"xy+yx\"");
  auto* o_exp = app.add_option("--exponent", exponent, "exponent for probe");
  auto* o_window = app.add_option("--window", window, "slope window N1,N2 for gk");

  auto* c_build = app.add_subcommand("build", "build levels and write the level store");
  auto* c_verify = app.add_subcommand("verify", "run a verification suite against the store");
  auto* c_hilbert = app.add_subcommand("hilbert", "Hilbert function of the quotient and growth bounds");
  auto* c_gk = app.add_subcommand("gk", "growth-exponent estimate over a window");
  auto* c_probe = app.add_subcommand("probe", "membership of the components of poly^e in E");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*o_config) {
      std::ifstream in(config_path);
      if (!in) throw PreconditionError("cannot read config file " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(config_path + ": " + e.what(), e.byte);
      }
      apply_config_json(cfg, j);
    }
    if (*o_schedule) {
      cfg.schedule = schedule;
      cfg.schedule_inline = nullptr;
    }
    if (*o_field) cfg.field = field;
    if (*o_engine) cfg.engine = parse_engine(engine);
    if (*o_level) cfg.max_level = max_level;
    if (*o_degree) cfg.max_degree = max_degree;
    if (*o_budget) cfg.budget_mb = budget;
    if (*o_suite) cfg.suite = suite;
    if (*o_out) cfg.out = outdir;
    if (*o_seed) cfg.seed = seed;
    if (*o_format) cfg.format = format;
    if (*o_poly) cfg.poly = poly;
    if (*o_exp) cfg.exponent = exponent;
    if (*o_window) cfg.window = parse_window(window);
    validate_config(cfg);

    Limits lim = limits();
    lim.max_bytes = cfg.budget_mb << 20;
    set_limits(lim);

    if (*c_build) return cmd_build(cfg, out);
    if (*c_verify) return cmd_verify(cfg, out, err);
    if (*c_hilbert) return cmd_hilbert(cfg, out);
    if (*c_gk) return cmd_gk(cfg, out);
    if (*c_probe) return cmd_probe(cfg, out);
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::bad_alloc&) {
    err << "budget exceeded: out of memory\n";
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace nilalg
