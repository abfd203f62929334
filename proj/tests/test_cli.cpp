#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sis/cli.hpp"
#include "sis/io.hpp"
#include "sis/generators.hpp"

using namespace sis;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run sis_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sis_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.5 x 1.1:3.0:20");
  REQUIRE(g.ratios.size() == 1);
  REQUIRE(g.gammas.size() == 20);
  CHECK(g.gammas.front() == Rational(11, 10));
  CHECK(g.gammas[9] == Rational(2));
  CHECK(g.gammas.back() == Rational(3));
  const auto h = parse_grid("1/4:1/2:2 \xC3\x97 2:2:1");
  CHECK(h.ratios == std::vector<Rational>{Rational(1, 4), Rational(1, 2)});
  CHECK(h.gammas == std::vector<Rational>{Rational(2)});
  CHECK_THROWS(parse_grid("0.5"));
  CHECK_THROWS(parse_grid("0.5:1 x 2"));
  CHECK_THROWS(parse_grid("1:0.5:3 x 2"));
  CHECK_THROWS(parse_grid("0.5 x 1:2:0"));
}

TEST_CASE("mpc command") {
  const auto r = sis_run({"mpc", "--gen", "complete:3", "--r", "0.5", "--gamma", "3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["infected_nodes"] == json::array({0, 1, 2}));
  CHECK(j["method"] == "mincut");
  CHECK(j["tie_policy"] == "maximal");
  CHECK(j["degenerate"] == "all_one");
  for (const char* key : {"method", "tie_policy", "lambda_over_mu", "gamma", "infected_nodes",
                          "infected_count", "infected_edges", "log_value", "degenerate"})
    CHECK(j.contains(key));

  const auto bad = sis_run({"mpc", "--gen", "complete:3", "--r", "0.5", "--gamma", "0.5"});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("gamma >= 1") != std::string::npos);

  const auto dot = sis_run({"mpc", "--gen", "clique_tail:5:5", "--r", "1/2", "--gamma", "3/2",
                            "--format", "dot"});
  REQUIRE(dot.code == 0);
  CHECK(dot.out.rfind("graph ", 0) == 0);
  CHECK(dot.out.find("4 [label=\"4\", state=infected") != std::string::npos);
  CHECK(dot.out.find("5 [label=\"5\", state=healthy") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(sis_run({}).code == 2);
  CHECK(sis_run({"frobnicate"}).code == 2);
  CHECK(sis_run({"mpc", "--gen", "complete:3", "--r", "x", "--gamma", "2"}).code == 2);
  CHECK(sis_run({"mpc", "--gen", "complete:3", "--gamma", "2"}).code == 2);
  CHECK(sis_run({"mpc", "--gen", "complete:3", "--graph", "a.txt", "--r", "1", "--gamma", "2"}).code == 2);
  CHECK(sis_run({"mpc", "--r", "1", "--gamma", "2"}).code == 2);
  CHECK(sis_run({"mpc", "--gen", "complete:3", "--r", "1", "--gamma", "2", "--format", "csv"}).code == 2);
  CHECK(sis_run({"mpc", "--gen", "complete:3", "--r", "1", "--gamma", "2", "--tie", "big"}).code == 2);
  CHECK(sis_run({"check", "--gen", "complete:3", "--r", "1", "--gamma", "2", "--enum-limit", "99"}).code == 2);
  CHECK(sis_run({"--help"}).code == 0);
}

TEST_CASE("validate command") {
  const fs::path dir = scratch("validate");
  write_file(dir / "g.txt", "# ring\nn1 n2\nn2 n3\nn3 n1\nn3 n4\n");
  const auto ok = sis_run({"validate", "--graph", (dir / "g.txt").string()});
  REQUIRE(ok.code == 0);
  const json j = json::parse(ok.out);
  CHECK(j["nodes"] == 4);
  CHECK(j["edges"] == 4);
  CHECK(j["density_exact"] == "1/1");
  CHECK(j["degree"]["max"] == 3);

  write_file(dir / "bad.txt", "0 1\n1 2\nbroken\n");
  const auto bad = sis_run({"validate", "--graph", (dir / "bad.txt").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 3") != std::string::npos);

  write_file(dir / "split.txt", "0 1\n2 3\n");
  const auto split = sis_run({"validate", "--graph", (dir / "split.txt").string()});
  CHECK(split.code == 1);
  CHECK(split.err.find("2 components") != std::string::npos);

  CHECK(sis_run({"validate", "--graph", (dir / "missing.txt").string()}).code == 1);
}

TEST_CASE("sweep command") {
  const auto c6 = sis_run({"sweep", "--gen", "cycle:6", "--grid", "0.5 x 1.1:3.0:20"});
  REQUIRE(c6.code == 0);
  std::istringstream rows(c6.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line.rfind("r,gamma,infected_count,infected_edges,log_value,degenerate", 0) == 0);
  int count = 0, zero = 0, one = 0;
  while (std::getline(rows, line)) {
    ++count;
    if (line.find(",all_zero,") != std::string::npos) ++zero;
    if (line.find(",all_one,") != std::string::npos) ++one;
  }
  CHECK(count == 20);
  CHECK(zero == 9);
  CHECK(one == 11);

  const auto single = sis_run({"sweep", "--gen", "cycle:6", "--grid", "0.5 x 2"});
  REQUIRE(single.code == 0);
  CHECK(std::count(single.out.begin(), single.out.end(), '\n') == 2);

  const fs::path dir = scratch("sweep");
  const auto kt = sis_run({"sweep", "--gen", "clique_tail:5:5", "--grid", "0.5 x 1.1:3.0:20",
                           "--out", dir.string()});
  REQUIRE(kt.code == 0);
  const json summary = json::parse(slurp(dir / "sweep.json"));
  REQUIRE(summary["boundaries"].size() == 2);
  CHECK(summary["boundaries"][0]["from"] == "all_zero");
  CHECK(summary["boundaries"][0]["to"] == "non_degenerate");
  CHECK(summary["boundaries"][1]["to"] == "all_one");

  const auto mixed = sis_run({"sweep", "--gen", "cycle:6", "--grid", "0.5 x 0.5:1.5:3"});
  CHECK(mixed.code == 1);
  CHECK(mixed.out.find("gamma >= 1") != std::string::npos);
  CHECK(mixed.out.find(",all_zero,") != std::string::npos);
}

TEST_CASE("densest command") {
  const auto kt = sis_run({"densest", "--gen", "clique_tail:5:5"});
  REQUIRE(kt.code == 0);
  json j = json::parse(kt.out);
  CHECK(j["density_exact"] == "2/1");
  CHECK(j["nodes"] == json::array({0, 1, 2, 3, 4}));
  j = json::parse(sis_run({"densest", "--gen", "multipartite:3,3"}).out);
  CHECK(j["density_exact"] == "3/2");
  CHECK(j["node_count"] == 6);
  j = json::parse(sis_run({"densest", "--gen", "path:2"}).out);
  CHECK(j["density_exact"] == "1/2");
  j = json::parse(sis_run({"densest", "--gen", "cycle:6", "--method", "peel"}).out);
  CHECK(j["density_exact"] == "1/1");
  CHECK(sis_run({"densest", "--gen", "cycle:6", "--method", "magic"}).code == 2);
}

TEST_CASE("simulate command") {
  const std::vector<std::string> args = {"simulate", "--gen", "star:4", "--r", "0.5", "--gamma", "2",
                                         "--tmax", "2000", "--seed", "42", "--compare"};
  const auto a = sis_run(args);
  const auto b = sis_run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["seed"] == 42);
  CHECK(j["tv_distance"].is_number());

  const auto big = sis_run({"simulate", "--gen", "kregular:20:3", "--r", "0.5", "--gamma", "2",
                            "--tmax", "10", "--compare"});
  CHECK(big.code == 1);
  CHECK(big.err.find("--enum-limit") != std::string::npos);

  const auto one = sis_run({"simulate", "--gen", "path:1", "--r", "1", "--gamma", "1", "--tmax",
                            "200000", "--compare"});
  REQUIRE(one.code == 0);
  const json s = json::parse(one.out);
  CHECK(s["mean_infected"].get<double>() == doctest::Approx(0.5).epsilon(0.02));

  const auto csv = sis_run({"simulate", "--gen", "path:3", "--r", "1", "--gamma", "2", "--tmax", "5",
                            "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("time,agent,new_state\n", 0) == 0);
  CHECK(sis_run({"simulate", "--gen", "path:3", "--r", "1", "--gamma", "2"}).code == 2);
}

TEST_CASE("check command") {
  auto verdict = [](std::vector<std::string> args) {
    const auto r = sis_run(args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
  };
  json j = verdict({"check", "--gen", "clique_tail:5:5", "--r", "0.5", "--gamma", "1.5"});
  CHECK(j["predicted"] == "non_degenerate");
  CHECK(j["consistent"] == true);
  CHECK(j["solver_maximal"]["infected_nodes"] == json::array({0, 1, 2, 3, 4}));
  j = verdict({"check", "--gen", "path:2", "--r", "0.5", "--gamma", "2"});
  CHECK(j["predicted"] == "x0");
  CHECK(j["consistent"] == true);
  j = verdict({"check", "--gen", "complete:3", "--r", "0.5", "--gamma", "3"});
  CHECK(j["predicted"] == "xN");
  CHECK(j["consistent"] == true);
  CHECK(sis_run({"check", "--gen", "complete:3", "--r", "2", "--gamma", "3"}).code == 1);
}

TEST_CASE("runs are reproducible from the manifest") {
  const fs::path dir = scratch("manifest");
  write_file(dir / "g.txt", "a b\nb c\nc d\nd a\na c\nc e\n");
  const std::vector<std::vector<std::string>> runs = {
      {"validate", "--graph", (dir / "g.txt").string()},
      {"mpc", "--graph", (dir / "g.txt").string(), "--r", "2/3", "--gamma", "1.8", "--tie", "minimal"},
      {"mpc", "--graph", (dir / "g.txt").string(), "--r", "2/3", "--gamma", "1.8", "--format", "dot"},
      {"sweep", "--gen", "clique_tail:4:3", "--grid", "0.2:1:5 x 1:3:9"},
      {"densest", "--gen", "islands:3,4:2"},
      {"simulate", "--gen", "cycle:5", "--r", "0.7", "--gamma", "1.4", "--tmax", "300", "--seed", "5",
       "--compare"},
      {"check", "--graph", (dir / "g.txt").string(), "--r", "1/2", "--gamma", "2"}};
  int k = 0;
  for (auto args : runs) {
    const fs::path first = dir / ("first" + std::to_string(k));
    const fs::path second = dir / ("second" + std::to_string(k));
    ++k;
    args.push_back("--out");
    args.push_back(first.string());
    REQUIRE(sis_run(args).code == 0);

    const json manifest = json::parse(slurp(first / "manifest.json"));
    const RunManifest m = manifest_from_json(nlohmann::ordered_json::parse(slurp(first / "manifest.json")));
    CHECK(m.command == args[0]);
    CHECK(manifest["tool_version"] == kToolVersion);
    CHECK_FALSE(m.outputs.empty());

    std::vector<std::string> again = m.arguments;
    again.back() = second.string();
    REQUIRE(sis_run(again).code == 0);
    for (const auto& name : m.outputs) CHECK(slurp(first / name) == slurp(second / name));
  }
  CHECK(fs::exists(dir / "first1" / "node_map.csv"));
  CHECK(slurp(dir / "first1" / "node_map.csv").rfind("index,label\n0,a\n", 0) == 0);
}

TEST_CASE("thread cap from the environment") {
  setenv("SIS_THREADS", "1", 1);
  const auto one = sis_run({"sweep", "--gen", "cycle:8", "--grid", "0.1:1:10 x 1:4:10"});
  setenv("SIS_THREADS", "3", 1);
  const auto three = sis_run({"sweep", "--gen", "cycle:8", "--grid", "0.1:1:10 x 1:4:10"});
  setenv("SIS_THREADS", "zero", 1);
  const auto bad = sis_run({"sweep", "--gen", "cycle:8", "--grid", "0.5 x 2"});
  unsetenv("SIS_THREADS");
  CHECK(one.code == 0);
  CHECK(one.out == three.out);
  CHECK(bad.code == 2);
}
