// molfact: command-line front end.
//
// Exit status: 0 ok, 1 a check or property failed, 2 configuration error,
// 3 size guard exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "molfact/config.hpp"
#include "molfact/report.hpp"

namespace {

using namespace molfact;

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kSizeGuard = 3 };

struct Options {
  std::string ambient_path;
  bool json = false;
  bool timings = false;
  std::uint64_t seed = 0;
  std::uint64_t max_ring_size = 0;
  std::string out;
  std::size_t trials = 200;
  int zmod_max = 100;
  std::string experiment;
  Coord n = 12, n_max = 0, q = 2, p = 2, d = -5;
  int kd = 1, kk = 2, truncation = 6;
};

struct Output {
  Json doc;
  bool passed = true;
};

int emit(const Options& opt, const Output& result, double seconds) {
  Json doc = result.doc;
  if (opt.timings) doc["timings"] = {{"seconds", seconds}};
  std::string text = opt.json ? doc.dump(2) + "\n" : to_table(doc);
  std::cout << text;
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) {
      std::cerr << "molfact: cannot write " << opt.out << "\n";
      return kConfigError;
    }
    f << text;
  }
  return result.passed ? kOk : kCheckFailed;
}

Ambient load_ambient(const RunConfig& cfg) {
  require(cfg.ambient.has_value(), ErrorKind::config_error, "this command needs --ambient <file>");
  return build_ambient(*cfg.ambient);
}

Output run_ambient_command(const std::string& cmd, const RunConfig& cfg, const Options& opt) {
  Ambient amb = load_ambient(cfg);
  if (cmd == "info") return {info_json(amb), true};
  if (cmd == "enumerate") return {enumerate_json(amb, enumerate_overideals(amb.target)), true};
  if (cmd == "census") return {census_json(amb, divisor_census(amb, amb.target)), true};
  if (cmd == "molecularize") {
    auto r = molecularizations(amb);
    return {molecularization_json(amb, r), true};
  }
  if (cmd == "property-suite") {
    auto r = amb.certified ? property_suite(amb, opt.seed, opt.trials) : property_suite(amb.ring, opt.seed, opt.trials);
    return {property_json(r), r.passed()};
  }
  throw Error(ErrorKind::config_error, "unknown command '" + cmd + "'");
}

/// Every shipped ambient, Z/n for n <= zmod_max, and F_2 x F_2.
Output run_shipped_suites(const Options& opt) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = "property-suite";
  doc["seed"] = opt.seed;
  Json suites = Json::array();
  bool ok = true;
  std::size_t violations = 0;
  auto add = [&](const PropertyReport& r) {
    ok = ok && r.passed();
    violations += r.violations();
    suites.push_back(property_json(r));
  };
  for (const auto& [name, spec] : shipped_specs()) add(property_suite(build_ambient(spec), opt.seed, opt.trials));
  for (Coord n = 2; n <= opt.zmod_max; ++n) add(property_suite(make_zmod(n), opt.seed, opt.trials));
  auto f2 = make_gf(2, 1);
  PropertyReport pr = property_suite(direct_product(f2, f2), opt.seed, opt.trials);
  bool counterexample = !pr.absorbing.empty();
  add(pr);
  doc["suites"] = suites;
  doc["subjects"] = suites.size();
  doc["violations"] = violations;
  doc["product_ring_unit_cancellation_counterexample"] = counterexample;
  doc["passed"] = ok && counterexample;
  return {doc, ok && counterexample};
}

/// Experiment names accepted on the command line, mapped to report names.
const std::map<std::string, std::string>& experiment_names() {
  static const std::map<std::string, std::string> names{
      {"integers", "integers"},         {"butts", "integers"},
      {"cusp-lines", "cusp-lines"},     {"theorem10", "cusp-lines"},
      {"zx-square", "zx-square"},       {"prop13-3", "zx-square"},
      {"zx-two-generator", "zx-two-generator"}, {"theorem13", "zx-two-generator"},
      {"dplusm", "dplusm"},             {"quadratic", "quadratic"}};
  return names;
}

Output run_experiment(const Options& opt) {
  auto it = experiment_names().find(opt.experiment);
  if (it == experiment_names().end()) {
    std::string known;
    for (const auto& [k, v] : experiment_names()) known += (known.empty() ? "" : ", ") + k;
    throw Error(ErrorKind::config_error, "unknown experiment '" + opt.experiment + "' (" + known + ")");
  }
  const std::string& e = it->second;
  if (e == "integers") {
    std::vector<IntegerCase> cases;
    Coord hi = opt.n_max == 0 ? opt.n : opt.n_max;
    for (Coord n = opt.n; n <= hi; ++n) cases.push_back(integer_case(n));
    bool ok = true;
    for (const auto& c : cases) ok = ok && c.passed();
    return {integer_json(cases), ok};
  }
  if (e == "cusp-lines") {
    auto r = cusp_lines_experiment(opt.q);
    return {cusp_lines_json(r), r.passed()};
  }
  if (e == "zx-square") {
    auto r = zx_square_molecule(opt.p);
    return {zx_square_json(r), r.passed()};
  }
  if (e == "zx-two-generator") {
    auto r = zx_two_generator_experiment();
    return {zx_two_generator_json(r), r.passed()};
  }
  if (e == "dplusm") {
    auto r = dplusm_classification(opt.p, opt.kd, opt.kk, opt.truncation);
    return {dplusm_json(r, opt.p, opt.kd, opt.kk, opt.truncation), r.passed()};
  }
  if (e == "quadratic") {
    auto r = quadratic_experiment(opt.d, opt.n);
    return {quadratic_json(r), r.passed()};
  }
  throw Error(ErrorKind::config_error, "unknown experiment '" + e + "'");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Ideal factorization into molecules in finite models of domains"};
  app.set_version_flag("--version", "molfact 1.0");
  app.add_option("--ambient", opt.ambient_path, "Ambient or run config document (JSON)");
  app.add_flag("--json", opt.json, "Emit JSON instead of a table");
  app.add_flag("--timings", opt.timings, "Add wall-clock timings to the report");
  auto* seed_opt = app.add_option("--seed", opt.seed, "Seed for sampled property checks");
  auto* guard_opt = app.add_option("--max-ring-size", opt.max_ring_size, "Size guard for enumerations (default 2^24)");
  app.add_option("--out", opt.out, "Also write the report to this file");

  auto* info = app.add_subcommand("info", "Describe the ambient model and target");
  auto* enumerate = app.add_subcommand("enumerate", "List all ideals containing the target");
  auto* census = app.add_subcommand("census", "Divisors and molecule divisors of the target");
  auto* molecularize = app.add_subcommand("molecularize", "All molecularizations of the target");
  auto* suite = app.add_subcommand("property-suite", "Check the factorization laws (all shipped ambients by default)");
  suite->add_option("--trials", opt.trials, "Sampled cases per check on large models");
  suite->add_option("--zmod-max", opt.zmod_max, "Also check Z/n for 2 <= n <= this");
  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  experiment->add_option("name", opt.experiment, "integers | cusp-lines | zx-square | zx-two-generator | dplusm | quadratic")
      ->required();
  experiment->add_option("--n", opt.n, "Integer (integers start, quadratic target)");
  experiment->add_option("--n-max", opt.n_max, "Sweep integers from --n to this");
  experiment->add_option("--q", opt.q, "Field size (cusp-lines)");
  experiment->add_option("--p", opt.p, "Prime (zx-square, dplusm)");
  experiment->add_option("--d", opt.d, "Negative squarefree d (quadratic)");
  experiment->add_option("--kd", opt.kd, "Degree of D over F_p (dplusm)");
  experiment->add_option("--kk", opt.kk, "Degree of K over F_p (dplusm)");
  experiment->add_option("--N", opt.truncation, "Truncation (dplusm)");
  for (auto* s : {info, enumerate, census, molecularize, suite, experiment}) s->fallthrough();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    RunConfig cfg;
    if (!opt.ambient_path.empty()) cfg = load_run_config(opt.ambient_path);
    if (seed_opt->count() > 0) cfg.seed = opt.seed;
    opt.seed = cfg.seed;
    if (guard_opt->count() > 0) cfg.max_ring_size = opt.max_ring_size;
    if (!opt.json) opt.json = cfg.json;
    if (opt.out.empty()) opt.out = cfg.report_path;
    ScopedSizeGuard guard(cfg.max_ring_size);

    std::string cmd = app.get_subcommands().empty() ? cfg.command : app.get_subcommands().front()->get_name();
    require(!cmd.empty(), ErrorKind::config_error, "no command given (see --help)");
    if (cmd.rfind("experiment ", 0) == 0) {
      if (opt.experiment.empty()) opt.experiment = cmd.substr(11);
      cmd = "experiment";
    }
    Output result;
    if (cmd == "experiment") result = run_experiment(opt);
    else if (cmd == "property-suite" && !cfg.ambient) result = run_shipped_suites(opt);
    else result = run_ambient_command(cmd, cfg, opt);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(opt, result, secs);
  } catch (const Error& e) {
    std::cerr << "molfact: " << e.what() << "\n";
    return e.kind() == ErrorKind::size_guard_exceeded ? kSizeGuard : kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "molfact: config-error: " << e.what() << "\n";
    return kConfigError;
  }
}
