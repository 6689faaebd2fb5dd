#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "samst/cli.hpp"
#include "samst/instance_io.hpp"
#include "samst/params.hpp"

namespace fs = std::filesystem;
using samst::cli::kExitFail;
using samst::cli::kExitPass;
using samst::cli::kExitUsage;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "samst");
  std::ostringstream out;
  std::ostringstream err;
  const int code = samst::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const fs::path dir(SAMST_TEST_TMPDIR);
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST_CASE("cli params") {
  const auto table = cli({"params", "--m", "10", "--n", "5", "--w-max", "100", "--delta", "0.1", "--eps", "1"});
  CHECK(table.code == kExitPass);
  CHECK(table.out.find("53018.98") != std::string::npos);
  CHECK(table.out.find("1+kappa") != std::string::npos);

  const auto js = cli({"--json", "params", "--m", "10", "--n", "5", "--w-max", "100"});
  REQUIRE(js.code == kExitPass);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["ell"].get<double>() == samst::ell_from_eps(10, 5, 0.1, 1.0));
  CHECK(j["in_regime"].get<bool>());
  CHECK(j["t0"].get<double>() == 100.0);

  CHECK(cli({"params", "--m", "10", "--n", "5", "--delta", "1"}).code == kExitUsage);
  CHECK(cli({"params", "--m", "10"}).code == kExitUsage);
  CHECK(cli({"params", "--m", "10", "--n", "5", "--budget", "sometimes"}).code == kExitUsage);

  const auto warn = cli({"params", "--m", "10", "--n", "5", "--ell", "3"});
  CHECK(warn.code == kExitPass);
  CHECK(warn.err.find("ConstraintViolation") != std::string::npos);
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitPass);
  CHECK(cli({"oracle", tmp("missing.txt")}).code == kExitUsage);
}

TEST_CASE("cli gen and oracle") {
  const auto path = tmp("gen_oracle.txt");
  REQUIRE(cli({"--seed", "5", "--output", path, "gen", "--family", "uniform", "--n", "6", "--m", "9"}).code == kExitPass);
  const auto g = samst::read_instance_file(path);
  CHECK(g.edge_count() == 9);
  CHECK(slurp(path).rfind("c generated family=uniform", 0) == 0);

  const auto text = cli({"oracle", path});
  CHECK(text.code == kExitPass);
  CHECK(text.out.rfind("mst_weight ", 0) == 0);
  const auto js = cli({"--json", "oracle", path});
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["sorted_weights"].size() == 5);
  CHECK(j["edges"].size() == 5);

  CHECK(cli({"gen", "--family", "grid", "--n", "5", "--m", "6"}).code == kExitUsage);
  CHECK(cli({"gen", "--n", "5", "--m", "2"}).code == kExitUsage);
}

TEST_CASE("cli run: exit codes, golden header, determinism") {
  const auto single = tmp("single.txt");
  write_file(single, "p mst 2 1\ne 0 1 3\n");
  const auto ok = cli({"run", single, "--trials", "5", "--no-timing"});
  CHECK(ok.code == kExitPass);
  CHECK(ok.out.rfind("trial,seed,steps,final_weight,opt_weight,ratio,success,heavy_violations,wall_ms\n", 0) == 0);

  const auto inst = tmp("run_inst.txt");
  REQUIRE(cli({"--seed", "2", "--output", inst, "gen", "--n", "6", "--m", "10"}).code == kExitPass);
  const std::vector<std::string> args{"--seed", "9", "run", inst, "--trials", "6", "--ell", "2000", "--no-timing"};
  const auto a = cli(args);
  const auto b = cli(args);
  CHECK(a.code == kExitPass);
  CHECK(a.out == b.out);

  // ell = 3 leaves a handful of steps, far too few for a 1.01-approximation.
  const auto fail = cli({"run", inst, "--trials", "10", "--ell", "3", "--eps", "0.01", "--no-timing"});
  CHECK(fail.code == kExitFail);
  CHECK(fail.out.find("-> FAIL") != std::string::npos);

  const auto js = cli({"--json", "run", single, "--trials", "2"});
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["rows"].size() == 2);
  CHECK(j["passed"].get<bool>());
  CHECK(j["config"]["params"]["m"].get<int>() == 1);

  CHECK(cli({"run", inst, "--trials", "0"}).code == kExitUsage);
  CHECK(cli({"run", inst, "--trials", "100000000"}).code == kExitUsage);
}

TEST_CASE("cli sweep") {
  const auto inst = tmp("sweep_inst.txt");
  REQUIRE(cli({"--seed", "3", "--output", inst, "gen", "--n", "5", "--m", "7"}).code == kExitPass);
  CHECK(cli({"sweep", inst, "--ell-list", "1000"}).code == kExitUsage);
  CHECK(cli({"sweep", inst, "--ell-list", "1000,2000", "--eps-list", "1,2"}).code == kExitUsage);
  const auto r = cli({"sweep", inst, "--ell-list", "1000,3000", "--trials", "4", "--no-timing"});
  CHECK(r.code != kExitUsage);
  CHECK(r.out.rfind("sweep_param,sweep_value,ell,one_plus_kappa,t_end,trial,", 0) == 0);
  std::size_t rows = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) rows += line.rfind("ell,", 0) == 0 ? 1 : 0;
  CHECK(rows == 8);
}

TEST_CASE("cli separated") {
  const auto plain = tmp("not_separated.txt");
  write_file(plain, "p mst 3 3\ne 0 1 1\ne 1 2 1.5\ne 0 2 3\n");
  CHECK(cli({"separated", plain, "--trials", "3"}).code == kExitUsage);

  const auto tree = tmp("tree.txt");
  write_file(tree, "p mst 4 3\ne 0 1 1\ne 1 2 2\ne 2 3 4\n");
  const auto r = cli({"--json", "separated", tree, "--trials", "10"});
  CHECK(r.code == kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["aggregates"]["success_rate"].get<double>() == 1.0);
}

TEST_CASE("cli gen -> run -> verify") {
  const auto inst = tmp("pipe_inst.txt");
  const auto tel = tmp("pipe_tel.csv");
  REQUIRE(cli({"--seed", "4", "--output", inst, "gen", "--n", "6", "--m", "9"}).code == kExitPass);
  const auto r = cli({"--seed", "4", "run", inst, "--trials", "3", "--ell", "1500", "--telemetry", tel, "--no-timing"});
  REQUIRE(r.code != kExitUsage);
  CHECK(slurp(tel).rfind("# samst telemetry v1\n", 0) == 0);
  const auto v = cli({"verify", inst, "--telemetry", tel});
  CHECK(v.code == kExitPass);
  CHECK(v.out.rfind("trial,step,edge,weight,temperature,t_w\n", 0) == 0);
  CHECK(v.out.find("# audit trials=3") != std::string::npos);
  CHECK(v.out.find("trial,w,epoch,start_step,non_essential,temperature,censored\n") != std::string::npos);
  CHECK(cli({"verify", inst, "--telemetry", tmp("absent.csv")}).code == kExitUsage);
}
