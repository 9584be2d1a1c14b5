#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hardy/cli.hpp"
#include "hardy/io.hpp"
#include "hardy/rng.hpp"

using namespace hardy;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p);
  out << body;
}

}  // namespace

TEST_CASE("sequence json: examples from the schema") {
  const auto one = sequence_from_json(
      nlohmann::json::parse(R"({"schema_version":1,"entries":[[1,1.0,0.0]]})"));
  CHECK(one(1) == cx{1.0, 0.0});
  CHECK(one.max_support() == 1);

  const auto empty = sequence_from_json(
      nlohmann::json::parse(R"({"schema_version":1,"entries":[]})"));
  CHECK(empty.max_support() == 0);
}

TEST_CASE("sequence json: schema violations") {
  CHECK_THROWS_AS(sequence_from_json(nlohmann::json::parse(
                      R"({"schema_version":1,"entries":[[0,1.0,0.0]]})")),
                  std::runtime_error);
  CHECK_THROWS_AS(
      sequence_from_json(nlohmann::json::parse(
          R"({"schema_version":1,"entries":[[3,1.0,0.0],[3,2.0,0.0]]})")),
      std::runtime_error);
  CHECK_THROWS_AS(sequence_from_json(nlohmann::json::parse(R"({"x":1})")),
                  std::runtime_error);
}

TEST_CASE("sequence files: json and csv round trips") {
  SeqFuzzer fz(0x10CA7E5ULL);
  const FinSeq u = fz.complex_seq(40);

  const auto jpath = temp_file("hardy_seq_rt.json");
  save_sequence(u, jpath);
  const FinSeq uj = load_sequence(jpath);
  CHECK(uj.nonzero_entries() == u.nonzero_entries());

  const auto cpath = temp_file("hardy_seq_rt.csv");
  save_sequence(u, cpath);
  const FinSeq uc = load_sequence(cpath);
  CHECK(uc.nonzero_entries() == u.nonzero_entries());
}

TEST_CASE("sequence csv: header plus rows 2..10") {
  const auto path = temp_file("hardy_seq_rows.csv");
  std::string body = "n,re,im\n";
  for (int n = 2; n <= 10; ++n)
    body += std::to_string(n) + ",1.5,-0.5\n";
  write_file(path, body);
  const FinSeq u = load_sequence(path);
  CHECK(u.max_support() == 10);
  CHECK(u(1) == cx{});
  for (int n = 2; n <= 10; ++n) CHECK(u(n) == cx{1.5, -0.5});
}

TEST_CASE("sequence csv: malformed input reports the line") {
  const auto path = temp_file("hardy_seq_bad.csv");
  write_file(path, "wrong,header\n1,2,3\n");
  CHECK_THROWS_WITH_AS(load_sequence(path),
                       doctest::Contains(":1:"), std::runtime_error);
  write_file(path, "n,re,im\n2,oops,0\n");
  CHECK_THROWS_WITH_AS(load_sequence(path),
                       doctest::Contains(":2:"), std::runtime_error);
}

TEST_CASE("cli: reports are byte-identical for identical config and seed") {
  cli::RunConfig cfg;
  cfg.command = cli::Command::fuzz;
  cfg.p = 2.5;
  cfg.trials = 25;
  cfg.seed = 77;
  cfg.support_max = 40;
  const auto a = cli::run_command(cfg);
  const auto b = cli::run_command(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.report == b.report);
}

TEST_CASE("cli: verify on a stored sequence") {
  SeqFuzzer fz(0x10CA7E6ULL);
  const auto path = temp_file("hardy_cli_u.json");
  save_sequence(fz.complex_seq(60), path);

  cli::RunConfig cfg;
  cfg.command = cli::Command::verify;
  cfg.family = cli::Family::power;
  cfg.p = 2.0;
  cfg.alpha = 0.0;
  cfg.beta = 0.5;
  cfg.input_path = path.string();
  const auto res = cli::run_command(cfg);
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.report);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "verify");
  CHECK(j["results"]["relative_residual"].get<double>() <= 1e-9);
  CHECK(j["violations"].empty());

  // the exit-code contract: an absurdly tight tolerance flags the residual
  // (p = 2.5 keeps the rounding residual structurally nonzero; at p = 2 the
  // sums can cancel bitwise)
  cfg.p = 2.5;
  cfg.tol = 1e-30;
  const auto strict = cli::run_command(cfg);
  CHECK(strict.exit_code == 1);
  const auto js = nlohmann::json::parse(strict.report);
  CHECK(!js["violations"].empty());
}

TEST_CASE("cli: copson and custom families") {
  SeqFuzzer fz(0x10CA7E7ULL);
  FinSeq u = fz.complex_seq(50);
  u.set(1, cx{});
  const auto path = temp_file("hardy_cli_copson.json");
  save_sequence(u, path);

  cli::RunConfig cfg;
  cfg.command = cli::Command::verify;
  cfg.family = cli::Family::copson;
  cfg.p = 3.0;
  cfg.alpha = -1.0;
  cfg.input_path = path.string();
  cfg.tol = 1e-10;
  const auto res = cli::run_command(cfg);
  CHECK(res.exit_code == 0);

  // custom tables riding in the sequence file
  auto j = sequence_to_json(u);
  const i64 cut = u.max_support() + 2;
  auto& vtab = j["v"] = nlohmann::ordered_json::array();
  auto& ptab = j["phi"] = nlohmann::ordered_json::array();
  for (i64 n = 0; n <= cut; ++n) {
    vtab.push_back(1.0);
    ptab.push_back(n == 0 ? 0.0 : std::sqrt(static_cast<double>(n)));
  }
  const auto cpath = temp_file("hardy_cli_custom.json");
  write_file(cpath, j.dump());
  cli::RunConfig ccfg;
  ccfg.command = cli::Command::verify;
  ccfg.family = cli::Family::custom;
  ccfg.p = 2.0;
  ccfg.input_path = cpath.string();
  const auto cres = cli::run_command(ccfg);
  CHECK(cres.exit_code == 0);
}

TEST_CASE("cli: constants at p = 2") {
  cli::RunConfig cfg;
  cfg.command = cli::Command::constants;
  cfg.p = 2.0;
  cfg.alpha = -0.5;
  const auto res = cli::run_command(cfg);
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.report);
  CHECK(j["results"]["c1"]["lower"].get<double>() <= 1.0);
  CHECK(j["results"]["c1"]["upper"].get<double>() >= 1.0 - 1e-6);
  CHECK(j["results"]["muckenhoupt"]["sup_upper"].get<double>() <= 1.0);
  const double cop = j["results"]["copson_constant"].get<double>();
  CHECK(cop == doctest::Approx(std::pow(0.75, 2.0)));
}

TEST_CASE("cli: weight tables") {
  cli::RunConfig cfg;
  cfg.command = cli::Command::gen_weights;
  cfg.family = cli::Family::classical;
  cfg.p = 2.0;
  cfg.support_max = 4;
  cfg.output_path = "table.csv";  // only the extension matters here
  const auto res = cli::run_command(cfg);
  CHECK(res.is_csv);
  CHECK(res.report.starts_with("n,w\n1,0.25\n2,0.0625\n"));

  cli::RunConfig cmp;
  cmp.command = cli::Command::compare_weights;
  cmp.p = 2.0;
  cmp.alpha = 0.0;
  cmp.beta = 0.5;
  cmp.support_max = 200;
  const auto cres = cli::run_command(cmp);
  CHECK(cres.exit_code == 0);
  const auto j = nlohmann::json::parse(cres.report);
  for (const auto& row : j["results"]["rows"])
    CHECK(row[4].get<double>() > 0.0);  // improved minus classical
}

TEST_CASE("cli: error records and exit codes") {
  cli::RunConfig cfg;
  cfg.command = cli::Command::verify;  // missing --input
  cfg.output_path = temp_file("hardy_cli_err.json").string();
  CHECK(cli::run(cfg) == 2);
  {
    std::ifstream in(cfg.output_path);
    nlohmann::json j;
    in >> j;
    CHECK(j["error"]["type"] == "config");
  }

  cfg.input_path = temp_file("does_not_exist.json").string();
  CHECK(cli::run(cfg) == 3);
  {
    std::ifstream in(cfg.output_path);
    nlohmann::json j;
    in >> j;
    CHECK(j["error"]["type"] == "runtime");
  }
}
