// command line front end. exit codes: 0 all requested checks pass, 1 a check
// failed, 2 bad arguments or infeasible sizes.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bellforge/acceptance.hpp"
#include "bellforge/bell_expression.hpp"
#include "bellforge/bounds.hpp"
#include "bellforge/facet_classifier.hpp"
#include "bellforge/parallel.hpp"
#include "bellforge/quantum_value.hpp"
#include "bellforge/selftest.hpp"
#include "bellforge/serialize.hpp"

namespace {

using namespace bellforge;

struct CliConfig {
  std::string family = "mabk";
  std::string table;
  int n = 0;
  int sign = +1;
  std::string method = "both";
  std::uint64_t seed = kDefaultSeed;
  double tol = -1;  // negative means per-command default
  std::string out;
  std::string format = "json";
};

bool is_uffink(const std::string& family) {
  return family == "uffink-m" || family == "uffink-s";
}

BellExpression linear_expression(const CliConfig& cfg) {
  if (cfg.family == "mabk") return mabk(cfg.n);
  if (cfg.family == "svetlichny") return svetlichny(cfg.n, cfg.sign);
  if (cfg.family == "wwzb") {
    if (cfg.table.empty())
      throw std::invalid_argument("family wwzb needs --table (2^n chars, 0 for +1, 1 for -1)");
    int n = 0;
    while ((std::size_t{1} << n) < cfg.table.size()) ++n;
    if ((std::size_t{1} << n) != cfg.table.size())
      throw std::invalid_argument("--table length must be a power of two");
    if (cfg.n != 0 && cfg.n != n)
      throw std::invalid_argument("--n disagrees with the --table length");
    return wwzb_from_sign_table(SignTable::from_bits(n, cfg.table));
  }
  throw std::invalid_argument("family " + cfg.family + " is not a single linear expression");
}

QuadraticExpression quadratic_expression(const CliConfig& cfg) {
  const UffinkBase base = cfg.family == "uffink-m" ? UffinkBase::mabk : UffinkBase::svetlichny;
  return uffink(cfg.n, base, cfg.sign);
}

void require_n(const CliConfig& cfg) {
  if (cfg.family != "wwzb" && cfg.n <= 0)
    throw std::invalid_argument("--n is required for family " + cfg.family);
}

void require_json(const CliConfig& cfg) {
  if (cfg.format != "json")
    throw std::invalid_argument("csv output is only defined for classify");
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + out_path + " for writing");
  f << text;
  return 0;
}

std::string dumps(const Json& j) { return j.dump(2) + "\n"; }

int cmd_build(const CliConfig& cfg) {
  require_json(cfg);
  require_n(cfg);
  if (is_uffink(cfg.family)) {
    QuadraticExpression q = quadratic_expression(cfg);
    Json j;
    j["family"] = cfg.family;
    j["n"] = cfg.n;
    j["first"] = expression_to_json(q.first);
    j["second"] = expression_to_json(q.second);
    j["biseparable"] = q.biseparable_bound.to_string();
    j["quantum"] = q.quantum_bound.to_string();
    return emit(dumps(j), cfg.out);
  }
  return emit(dumps(expression_to_json(linear_expression(cfg))), cfg.out);
}

int cmd_value(const CliConfig& cfg) {
  require_json(cfg);
  require_n(cfg);
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-6;
  const bool want_fast = cfg.method != "oracle";
  const bool want_oracle = cfg.method != "fast";
  std::optional<QuantumValueResult> fast, oracle;
  Json j;
  j["family"] = cfg.family;
  if (is_uffink(cfg.family)) {
    QuadraticExpression q = quadratic_expression(cfg);
    j["n"] = cfg.n;
    if (want_fast) {
      OptimizeOptions opts;
      opts.seed = cfg.seed;
      fast = uffink_optimize(q, opts);
    }
    if (want_oracle) {
      UffinkOracleOptions opts;
      opts.seesaw.seed = cfg.seed;
      oracle = uffink_oracle(q, opts);
    }
  } else {
    BellExpression e = linear_expression(cfg);
    j["n"] = e.n();
    if (want_fast) {
      OptimizeOptions opts;
      opts.seed = cfg.seed;
      fast = optimize_angles(e, opts);
    }
    if (want_oracle) {
      SeesawOptions opts;
      opts.seed = cfg.seed;
      oracle = seesaw_oracle(e, opts);
    }
  }
  if (fast) j["fast"] = quantum_value_to_json(*fast);
  if (oracle) j["oracle"] = quantum_value_to_json(*oracle);
  bool ok = true;
  if (fast && oracle) {
    const double diff = std::abs(fast->value - oracle->value);
    j["difference"] = diff;
    ok = diff <= tol;
    j["agree"] = ok;
  }
  emit(dumps(j), cfg.out);
  return ok ? 0 : 1;
}

int cmd_bounds(const CliConfig& cfg) {
  require_json(cfg);
  require_n(cfg);
  if (is_uffink(cfg.family)) {
    const Family fam = cfg.family == "uffink-m" ? Family::uffink_m : Family::uffink_s;
    return emit(dumps(bound_report_to_json(reference_bounds(fam, cfg.n))), cfg.out);
  }
  BellExpression e = linear_expression(cfg);
  if (e.n() > 8)
    throw std::invalid_argument("exact strategy enumeration is limited to 8 parties");
  BoundReport report = local_bound(e);
  if (cfg.family == "mabk" || cfg.family == "svetlichny") {
    const Family fam = cfg.family == "mabk" ? Family::mabk : Family::svetlichny;
    BoundReport ref = reference_bounds(fam, e.n());
    report.biseparable = ref.biseparable;
    report.quantum = ref.quantum;
  }
  return emit(dumps(bound_report_to_json(report)), cfg.out);
}

int cmd_selftest(const CliConfig& cfg) {
  require_json(cfg);
  require_n(cfg);
  if (is_uffink(cfg.family))
    throw std::invalid_argument("selftest runs on linear families: mabk, svetlichny or wwzb");
  BellExpression e = linear_expression(cfg);
  UniquenessOptions opts;
  opts.seed = cfg.seed;
  if (cfg.tol > 0) opts.value_tol = cfg.tol;
  return emit(dumps(selftest_report_to_json(uniqueness_scan(e, opts))), cfg.out);
}

int cmd_classify(const CliConfig& cfg) {
  const int n = cfg.n > 0 ? cfg.n : 3;
  Classification c = classify(n);
  if (cfg.format == "json") return emit(dumps(classification_to_json(c)), cfg.out);
  return emit(classify_csv(c), cfg.out);
}

int cmd_reproduce(const CliConfig& cfg) {
  require_json(cfg);
  std::string text;
  bool all_ok = true;
  for (const CriterionResult& r : run_acceptance()) {
    text += std::string("[") + (r.passed ? "PASS" : "FAIL") + "] criterion " +
            std::to_string(r.index) + ": " + r.name + " -- " + r.detail + "\n";
    if (!r.passed) all_ok = false;
  }
  emit(text, cfg.out);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"correlation Bell inequalities: exact bounds, quantum values, self-testing"};
  app.require_subcommand(1);

  const std::vector<std::string> families{"mabk", "svetlichny", "uffink-m", "uffink-s", "wwzb"};
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "inequality family")->check(CLI::IsMember(families));
    sub->add_option("--table", cfg.table, "sign table bits for wwzb, length 2^n");
    sub->add_option("--n", cfg.n, "number of parties");
    sub->add_option("--sign", cfg.sign, "sign variant for svetlichny based families")
        ->check(CLI::IsMember({+1, -1}));
  };

  CLI::App* c_build = app.add_subcommand("build", "emit the expression as json");
  add_family(c_build);

  CLI::App* c_value = app.add_subcommand("value", "quantum value by fast path and/or oracle");
  add_family(c_value);
  c_value->add_option("--method", cfg.method, "fast, oracle or both")
      ->check(CLI::IsMember({"fast", "oracle", "both"}));
  c_value->add_option("--seed", cfg.seed, "rng seed");
  c_value->add_option("--tol", cfg.tol, "agreement tolerance when method is both");

  CLI::App* c_bounds = app.add_subcommand("bounds", "exact classical bound and reference constants");
  add_family(c_bounds);

  CLI::App* c_self = app.add_subcommand("selftest", "uniqueness scan of the maximizer");
  add_family(c_self);
  c_self->add_option("--seed", cfg.seed, "rng seed");
  c_self->add_option("--tol", cfg.tol, "relative value window around the optimum");

  CLI::App* c_classify = app.add_subcommand("classify", "orbit classification of all sign tables");
  c_classify->add_option("--n", cfg.n, "number of parties, 2 or 3 (default 3)");

  CLI::App* c_repro = app.add_subcommand("reproduce", "run the full acceptance suite");

  for (CLI::App* sub : {c_build, c_value, c_bounds, c_self, c_classify, c_repro}) {
    sub->add_option("--out", cfg.out, "write the output to a file instead of stdout");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--format") == 0) cfg.format = sub->get_name() == "classify" ? "csv" : "json";

  try {
    const std::string name = sub->get_name();
    if (name == "build") return cmd_build(cfg);
    if (name == "value") return cmd_value(cfg);
    if (name == "bounds") return cmd_bounds(cfg);
    if (name == "selftest") return cmd_selftest(cfg);
    if (name == "classify") return cmd_classify(cfg);
    return cmd_reproduce(cfg);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "bellforge: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bellforge: %s\n", e.what());
    return 1;
  }
}
