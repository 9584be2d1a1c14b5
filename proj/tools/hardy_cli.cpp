#include <string>

#include "CLI11.hpp"
#include "hardy/cli.hpp"

using hardy::cli::Command;
using hardy::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"hardy: weighted discrete p-Hardy inequality toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string family = "power";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "exponent p (> 1)");
    sub->add_option("--family", family,
                    "weight family: power|copson|fkp|classical|custom");
    sub->add_option("--alpha", cfg.alpha, "power of v(n) = n^alpha");
    sub->add_option("--beta", cfg.beta, "power of phi(n) = n^beta");
    sub->add_option("--input", cfg.input_path, "sequence file (.json or .csv)");
    sub->add_option("--output", cfg.output_path,
                    "report path (stdout if omitted; .csv selects CSV tables)");
    sub->add_option("--seed", cfg.seed, "64-bit fuzzing seed");
    sub->add_option("--trials", cfg.trials, "number of fuzz trials");
    sub->add_option("--support-max", cfg.support_max,
                    "largest support index / table length");
    sub->add_option("--tol", cfg.tol, "violation tolerance");
  };

  struct SubEntry {
    const char* name;
    const char* help;
    Command command;
  };
  const SubEntry entries[] = {
      {"verify", "check the weighted identity/inequality on a sequence",
       Command::verify},
      {"gen-weights", "emit the family weight table over [1, support-max]",
       Command::gen_weights},
      {"stability", "deficit, optimal shift and stability bound for a sequence",
       Command::stability},
      {"constants", "c1(p) bracket, Muckenhoupt interval, Copson constant",
       Command::constants},
      {"compare-weights", "classical vs improved vs power weights with gaps",
       Command::compare_weights},
      {"fuzz", "seeded randomized check of the identities and inequalities",
       Command::fuzz},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    sub->callback([&cfg, &e] { cfg.command = e.command; });
  }

  try {
    app.parse(argc, argv);
    cfg.family = hardy::cli::family_from_string(family);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit cleanly
  } catch (const std::invalid_argument& e) {
    hardy::cli::log(hardy::cli::LogLevel::error, e.what());
    return 2;
  }

  return hardy::cli::run(cfg);
}
