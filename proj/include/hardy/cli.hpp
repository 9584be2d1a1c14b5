#pragma once

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "hardy/cp.hpp"
#include "hardy/families.hpp"
#include "hardy/io.hpp"
#include "hardy/rng.hpp"
#include "hardy/stability.hpp"
#include "hardy/supersolution.hpp"

namespace hardy::cli {

enum class Command { verify, gen_weights, stability, constants, compare_weights, fuzz };
enum class Family { power, copson, fkp, classical, custom };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::verify:          return "verify";
    case Command::gen_weights:     return "gen-weights";
    case Command::stability:       return "stability";
    case Command::constants:       return "constants";
    case Command::compare_weights: return "compare-weights";
    case Command::fuzz:            return "fuzz";
  }
  return "?";
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::power:     return "power";
    case Family::copson:    return "copson";
    case Family::fkp:       return "fkp";
    case Family::classical: return "classical";
    case Family::custom:    return "custom";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  if (s == "power") return Family::power;
  if (s == "copson") return Family::copson;
  if (s == "fkp") return Family::fkp;
  if (s == "classical") return Family::classical;
  if (s == "custom") return Family::custom;
  throw std::invalid_argument("unknown family: " + s);
}

struct RunConfig {
  Command command = Command::verify;
  double p = 2.0;
  Family family = Family::power;
  double alpha = 0.0;
  double beta = 0.5;
  std::string input_path;   // empty = none
  std::string output_path;  // empty = stdout
  std::uint64_t seed = 1;
  i64 trials = 100;
  i64 support_max = 100;
  double tol = 1e-9;

  void validate() const {
    if (!(p > 1.0)) throw std::invalid_argument("config: p > 1 required");
    if (trials < 1) throw std::invalid_argument("config: trials >= 1 required");
    if (support_max < 1)
      throw std::invalid_argument("config: support-max >= 1 required");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol > 0 required");
  }
};

// Diagnostics go to stderr only; reports never do.
enum class LogLevel { error = 0, info = 1, debug = 2 };

inline LogLevel log_level() {
  const char* env = std::getenv("HARDY_LOG");
  if (!env) return LogLevel::error;
  const std::string s = env;
  if (s == "debug") return LogLevel::debug;
  if (s == "info") return LogLevel::info;
  return LogLevel::error;
}

inline void log(LogLevel lvl, const std::string& msg) {
  if (static_cast<int>(lvl) <= static_cast<int>(log_level()))
    std::cerr << "hardy: " << msg << '\n';
}

struct RunResult {
  int exit_code = 0;
  std::string report;  // JSON document, or CSV for weight tables
  bool is_csv = false;
};

namespace detail {

inline ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = to_string(cfg.command);
  j["p"] = cfg.p;
  j["family"] = to_string(cfg.family);
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["input"] = cfg.input_path;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["support_max"] = cfg.support_max;
  j["tol"] = cfg.tol;
  return j;
}

inline ordered_json report_skeleton(const RunConfig& cfg) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = to_string(cfg.command);
  j["config"] = config_json(cfg);
  j["results"] = ordered_json::object();
  j["violations"] = ordered_json::array();
  return j;
}

inline void add_violation(ordered_json& report, const std::string& check,
                          double value, double threshold,
                          const std::string& detail = {}) {
  ordered_json v;
  v["check"] = check;
  v["value"] = value;
  v["threshold"] = threshold;
  if (!detail.empty()) v["detail"] = detail;
  report["violations"].push_back(std::move(v));
}

// The supersolution pair selected by --family. classical has no pair of its
// own (its weight is dominated by the improved one); it borrows the
// n^{(p-1)/p} profile and verify additionally reports the condition slack
// against the classical weight.
inline WeightPair family_pair(const RunConfig& cfg, i64 nmax) {
  const Exponent p{cfg.p};
  switch (cfg.family) {
    case Family::power: {
      FamilyParams fp{p, cfg.alpha, cfg.beta};  // validates alpha/beta
      return power_pair(p, fp.alpha, fp.beta);
    }
    case Family::fkp:
    case Family::classical:
      return power_pair(p, 0.0, (cfg.p - 1.0) / cfg.p);
    case Family::copson:
      if (!(cfg.alpha < 0.0))
        throw std::invalid_argument("copson family requires alpha < 0");
      return copson_pair(p, cfg.alpha, nmax + 2);
    case Family::custom: {
      if (cfg.input_path.empty())
        throw std::invalid_argument("custom family requires --input tables");
      auto tables = load_custom_tables(cfg.input_path);
      if (!tables)
        throw std::invalid_argument(
            "custom family: input file has no \"v\"/\"phi\" tables");
      return WeightPair{tabulated(std::move(tables->v)),
                        tabulated(std::move(tables->phi)), p};
    }
  }
  throw std::logic_error("unreachable");
}

inline double family_weight(const RunConfig& cfg, const WeightPair& wp,
                            i64 n) {
  const Exponent p{cfg.p};
  switch (cfg.family) {
    case Family::power:
      return power_weight(FamilyParams{p, cfg.alpha, cfg.beta}, n);
    case Family::fkp:       return fkp_weight(p, n);
    case Family::classical: return classical_weight(p, n);
    case Family::copson:
    case Family::custom:    return hardy_weight(wp, n);
  }
  throw std::logic_error("unreachable");
}

inline ordered_json verification_json(const VerificationReport& rep,
                                      bool with_terms) {
  ordered_json r;
  r["lhs"] = rep.lhs;
  r["weight_sum"] = rep.weight_sum;
  r["remainder_sum"] = rep.remainder_sum;
  r["residual"] = rep.residual;
  r["relative_residual"] =
      std::abs(rep.residual) / std::max(1.0, rep.scale());
  r["truncation"] = rep.truncation;
  r["negative_weight_indices"] = rep.negative_weight_indices;
  if (with_terms) {
    auto& terms = r["per_index"] = ordered_json::array();
    for (const auto& t : rep.per_index)
      terms.push_back({t.n, t.lhs_term, t.weight_term, t.remainder_term});
  }
  return r;
}

inline RunResult finish(ordered_json report) {
  RunResult out;
  out.exit_code = report["violations"].empty() ? 0 : 1;
  out.report = report.dump(2) + "\n";
  return out;
}

// ---- verify ----------------------------------------------------------------

inline RunResult run_verify(const RunConfig& cfg) {
  if (cfg.input_path.empty())
    throw std::invalid_argument("verify requires --input");
  const FinSeq u = load_sequence(cfg.input_path);
  const i64 cut = u.max_support() + 1;
  if (cfg.family == Family::copson && !(cfg.alpha < 0.0))
    throw std::invalid_argument("copson family requires alpha < 0");

  auto report = report_skeleton(cfg);
  const auto rep = (cfg.family == Family::copson)
                       ? copson_verify(u, Exponent{cfg.p}, cfg.alpha)
                       : verify_identity(u, family_pair(cfg, cut));
  report["results"] = verification_json(rep, u.max_support() <= 10'000);

  const double rel = std::abs(rep.residual) / std::max(1.0, rep.scale());
  if (cfg.family == Family::copson) {
    // inequality mode: the residual is the slack and must not be negative
    if (rep.residual < -cfg.tol * std::max(1.0, rep.scale()))
      add_violation(report, "copson_slack", rep.residual,
                    -cfg.tol * std::max(1.0, rep.scale()));
  } else if (rel > cfg.tol) {
    add_violation(report, "identity_residual", rel, cfg.tol);
  }
  if (rep.remainder_sum < -cfg.tol * std::max(1.0, rep.scale()))
    add_violation(report, "remainder_sum", rep.remainder_sum, 0.0);

  if (cfg.family == Family::classical) {
    const Exponent p{cfg.p};
    double min_slack = 0.0;
    for (const auto& [n, slack] : check_condition(
             family_pair(cfg, cut),
             [&](i64 k) { return classical_weight(p, k); }, 1, cut))
      min_slack = std::min(min_slack, slack);
    report["results"]["classical_condition_min_slack"] = min_slack;
    if (min_slack < -cfg.tol)
      add_violation(report, "classical_condition", min_slack, -cfg.tol);
  }
  return finish(std::move(report));
}

// ---- gen-weights / compare-weights ------------------------------------------

inline RunResult run_gen_weights(const RunConfig& cfg) {
  const auto wp = family_pair(cfg, cfg.support_max);
  std::vector<std::pair<i64, double>> table;
  table.reserve(static_cast<std::size_t>(cfg.support_max));
  for (i64 n = 1; n <= cfg.support_max; ++n)
    table.emplace_back(n, family_weight(cfg, wp, n));

  const bool csv_out = cfg.output_path.ends_with(".csv");
  if (csv_out) {
    std::string csv = "n,w\n";
    for (const auto& [n, w] : table)
      csv += std::to_string(n) + "," + format_double(w) + "\n";
    return RunResult{0, std::move(csv), true};
  }
  auto report = report_skeleton(cfg);
  auto& rows = report["results"]["weights"] = ordered_json::array();
  for (const auto& [n, w] : table) rows.push_back({n, w});
  return finish(std::move(report));
}

inline RunResult run_compare_weights(const RunConfig& cfg) {
  const Exponent p{cfg.p};
  const FamilyParams fp{p, cfg.alpha, cfg.beta};
  i64 bad_gap = 0;
  std::string csv = "n,classical,fkp,power,gap_fkp,gap_power\n";
  auto report = report_skeleton(cfg);
  auto& rows = report["results"]["rows"] = ordered_json::array();
  for (i64 n = 1; n <= cfg.support_max; ++n) {
    const double wc = classical_weight(p, n);
    const double wf = fkp_weight(p, n);
    const double wp_ = power_weight(fp, n);
    const double gap_f = wf - wc;
    const double gap_p = wp_ - wc;
    if (!(gap_f > 0.0)) ++bad_gap;
    csv += std::to_string(n) + "," + format_double(wc) + "," +
           format_double(wf) + "," + format_double(wp_) + "," +
           format_double(gap_f) + "," + format_double(gap_p) + "\n";
    rows.push_back({n, wc, wf, wp_, gap_f, gap_p});
  }
  if (bad_gap > 0)
    add_violation(report, "fkp_dominates_classical",
                  static_cast<double>(bad_gap), 0.0,
                  "indices where the improved weight fails to dominate");
  if (cfg.output_path.ends_with(".csv"))
    return RunResult{bad_gap > 0 ? 1 : 0, std::move(csv), true};
  return finish(std::move(report));
}

// ---- stability ---------------------------------------------------------------

inline RunResult run_stability(const RunConfig& cfg) {
  if (cfg.input_path.empty())
    throw std::invalid_argument("stability requires --input");
  const FinSeq u = load_sequence(cfg.input_path);
  const auto rep = stability_report(u, Exponent{cfg.p});

  auto report = report_skeleton(cfg);
  auto& r = report["results"];
  r["deficit"] = rep.deficit;
  r["c_star"] = rep.c_star;
  r["infimum_value"] = rep.infimum_value;
  r["prefactor"] = rep.prefactor;
  r["bound"] = rep.bound;
  r["margin"] = rep.margin;
  r["truncation"] = rep.truncation;
  if (rep.deficit < -cfg.tol)
    add_violation(report, "deficit_nonnegative", rep.deficit, -cfg.tol);
  if (rep.margin < -cfg.tol * (rep.deficit + 1.0))
    add_violation(report, "stability_margin", rep.margin,
                  -cfg.tol * (rep.deficit + 1.0));
  return finish(std::move(report));
}

// ---- constants ----------------------------------------------------------------

inline RunResult run_constants(const RunConfig& cfg) {
  auto report = report_skeleton(cfg);
  auto& r = report["results"];

  if (cfg.p >= 2.0) {
    const auto c1 = cp_lower_constant(Exponent{cfg.p}, 1e-8);
    ordered_json cj;
    cj["value"] = c1.value;
    cj["lower"] = c1.lower;
    cj["upper"] = c1.upper;
    cj["method"] = hardy::to_string(c1.method);
    cj["evaluations"] = c1.evaluations;
    r["c1"] = cj;
    if (!(c1.value > 0.0 && c1.value <= 1.0))
      add_violation(report, "c1_range", c1.value, 1.0);
    if (cfg.p == 2.0 && std::abs(c1.value - 1.0) > 1e-6)
      add_violation(report, "c1_at_2", c1.value, 1e-6,
                    "known value is 1");
  } else {
    r["c1"] = nullptr;  // defined for p >= 2 only
  }

  const auto mk = muckenhoupt_constant(Exponent{cfg.p}, 10'000);
  ordered_json mj;
  mj["sup_lower"] = mk.sup_lower;
  mj["sup_upper"] = mk.sup_upper;
  mj["r_at_sup"] = mk.r_at_sup;
  mj["bound"] = mk.bound;
  r["muckenhoupt"] = mj;
  if (mk.sup_upper > mk.bound + 1e-6)
    add_violation(report, "muckenhoupt_bound", mk.sup_upper, mk.bound + 1e-6);

  r["copson_constant"] =
      std::pow((cfg.p - cfg.alpha - 1.0) / cfg.p, cfg.p);
  return finish(std::move(report));
}

// ---- fuzz ----------------------------------------------------------------------

struct TrialOutcome {
  double rel_residual = 0.0;
  double remainder_sum = 0.0;
  double deficit = 0.0;
  double margin = 0.0;           // p >= 2 only
  double critical_slack = 0.0;
  bool has_margin = false;
  std::vector<std::string> failures;
};

inline TrialOutcome run_trial(const RunConfig& cfg, std::uint64_t trial) {
  TrialOutcome out;
  // one generator per trial; reproducible from (seed, trial) alone
  SeqFuzzer fz(cfg.seed + trial);
  const Exponent p{cfg.p};
  const FinSeq u = fz.complex_seq(cfg.support_max);
  const i64 cut = u.max_support() + 1;
  const auto wp = family_pair(cfg, cut);

  const auto rep = verify_identity(u, wp);
  out.rel_residual = std::abs(rep.residual) / std::max(1.0, rep.scale());
  out.remainder_sum = rep.remainder_sum;
  if (out.rel_residual > cfg.tol)
    out.failures.push_back("identity_residual");
  if (rep.remainder_sum < -cfg.tol * std::max(1.0, rep.scale()))
    out.failures.push_back("remainder_sum");

  out.deficit = hardy_deficit(u, p);
  if (out.deficit < -cfg.tol * std::max(1.0, rep.lhs))
    out.failures.push_back("hardy_deficit");

  if (cfg.p >= 2.0) {
    const auto st = stability_report(u, p);
    out.margin = st.margin;
    out.has_margin = true;
    if (st.margin < -cfg.tol * (st.deficit + 1.0))
      out.failures.push_back("stability_margin");

    // spot-check the sharp lower bound of the convexity gap
    const double c1 = c1_lower_cached(p);
    for (int k = 0; k < 32; ++k) {
      const cx xi{fz.rng.normal(), fz.rng.normal()};
      const cx eta{fz.rng.normal(), fz.rng.normal()};
      const double floor = c1 * std::pow(std::abs(eta), cfg.p);
      if (cp_value(xi, eta, p) < floor - 1e-12 * std::max(1.0, floor)) {
        out.failures.push_back("cp_lower_bound");
        break;
      }
    }
  }

  const FinSeq v = fz.real_seq(cfg.support_max);
  const auto ch = critical_hardy_check(v, p);
  out.critical_slack = ch.slack;
  if (ch.slack < -cfg.tol * (1.0 + std::abs(ch.lhs)))
    out.failures.push_back("critical_hardy_slack");
  if (ch.rhs > ch.rhs_at_v1 * (1.0 + 1e-12))
    out.failures.push_back("critical_hardy_inf_vs_v1");

  return out;
}

inline RunResult run_fuzz(const RunConfig& cfg) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
  std::atomic<i64> next{0};
  const unsigned pool = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  auto worker = [&] {
    for (;;) {
      const i64 t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      outcomes[static_cast<std::size_t>(t)] =
          run_trial(cfg, static_cast<std::uint64_t>(t));
    }
  };
  std::vector<std::thread> threads;
  for (unsigned k = 0; k < pool; ++k) threads.emplace_back(worker);
  for (auto& th : threads) th.join();

  // index-ordered reduction keeps the report byte-stable
  auto report = report_skeleton(cfg);
  auto& r = report["results"];
  const auto& first = outcomes.front();
  double max_rel = first.rel_residual, min_rem = first.remainder_sum,
         min_def = first.deficit, min_slack = first.critical_slack,
         min_margin = 0.0;
  bool any_margin = false;
  i64 failed_trials = 0;
  for (i64 t = 0; t < cfg.trials; ++t) {
    const auto& o = outcomes[static_cast<std::size_t>(t)];
    max_rel = std::max(max_rel, o.rel_residual);
    min_rem = std::min(min_rem, o.remainder_sum);
    min_def = std::min(min_def, o.deficit);
    min_slack = std::min(min_slack, o.critical_slack);
    if (o.has_margin) {
      min_margin = any_margin ? std::min(min_margin, o.margin) : o.margin;
      any_margin = true;
    }
    if (!o.failures.empty()) {
      ++failed_trials;
      if (report["violations"].size() < 50)
        for (const auto& f : o.failures)
          add_violation(report, f, static_cast<double>(t), cfg.tol,
                        "trial index in value");
    }
  }
  r["generator"] = kFuzzerAlgorithm;
  r["trials"] = cfg.trials;
  r["failed_trials"] = failed_trials;
  r["max_relative_residual"] = max_rel;
  r["min_remainder_sum"] = min_rem;
  r["min_deficit"] = min_def;
  if (any_margin) r["min_stability_margin"] = min_margin;
  r["min_critical_hardy_slack"] = min_slack;
  return finish(std::move(report));
}

}  // namespace detail

// Runs a command and returns the report document without touching the
// filesystem; identical (config, seed) give byte-identical reports.
inline RunResult run_command(const RunConfig& cfg) {
  cfg.validate();
  switch (cfg.command) {
    case Command::verify:          return detail::run_verify(cfg);
    case Command::gen_weights:     return detail::run_gen_weights(cfg);
    case Command::stability:       return detail::run_stability(cfg);
    case Command::constants:       return detail::run_constants(cfg);
    case Command::compare_weights: return detail::run_compare_weights(cfg);
    case Command::fuzz:            return detail::run_fuzz(cfg);
  }
  throw std::logic_error("unreachable");
}

// Full CLI entry: writes the report to --output or stdout. Exit codes:
// 0 all checks passed, 1 violations recorded, 2 configuration error,
// 3 runtime/input error (an error record is still emitted).
inline int run(const RunConfig& cfg) {
  RunResult result;
  try {
    log(LogLevel::debug, "config " + detail::config_json(cfg).dump());
    result = run_command(cfg);
  } catch (const std::invalid_argument& e) {
    log(LogLevel::error, e.what());
    ordered_json err;
    err["schema_version"] = kSchemaVersion;
    err["command"] = to_string(cfg.command);
    err["error"] = {{"type", "config"}, {"message", e.what()}};
    result = {2, err.dump(2) + "\n", false};
  } catch (const std::exception& e) {
    log(LogLevel::error, e.what());
    ordered_json err;
    err["schema_version"] = kSchemaVersion;
    err["command"] = to_string(cfg.command);
    err["error"] = {{"type", "runtime"}, {"message", e.what()}};
    result = {3, err.dump(2) + "\n", false};
  }

  if (cfg.output_path.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
      log(LogLevel::error, "cannot write " + cfg.output_path);
      return 3;
    }
    out << result.report;
  }
  log(LogLevel::info, std::string("exit ") + std::to_string(result.exit_code));
  return result.exit_code;
}

}  // namespace hardy::cli
