#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ndoubling/cli.hpp"
#include "ndoubling/exactnum.hpp"

using ndoubling::Rational;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ndoubling::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("human output") {
  auto r = run({"far", "1/6", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "far: true\n");

  r = run({"classify", "12", "18"});
  CHECK(r.code == 0);
  CHECK(r.out.find("GoodLift") != std::string::npos);
  CHECK(r.out.find("(18^6, 12^3)") != std::string::npos);

  r = run({"measure", "0", "1", "--n", "3", "--a", "1/2", "--b", "3/2"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "1");

  r = run({"cdf", "1/3"});
  CHECK(r.out.substr(0, r.out.find('\n')) == "1/6");
  CHECK(r.out.find("approx: 0.166666666667") != std::string::npos);

  r = run({"solvable", "108", "6"});
  CHECK(r.out.find("ell_min: 2") != std::string::npos);
  CHECK(r.out.find("k: 3") != std::string::npos);
}

TEST_CASE("exit codes") {
  auto r = run({"measure", "1/x", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("position 2") != std::string::npos);

  r = run({"no-such-command"});
  CHECK(r.code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"far", "1/2"}).code == 2);
  CHECK(run({"far", "1/2", "6", "--format", "xml"}).code == 2);

  r = run({"witness", "2", "4", "--ell", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("2") != std::string::npos);

  CHECK(run({"measure", "2", "1"}).code == 1);
  CHECK(run({"density", "1", "--a", "1", "--b", "1"}).code == 1);
  CHECK(run({"--factor-bound", "50", "solvable", "108", "6"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json output is schema-stable") {
  const std::vector<std::vector<std::string>> commands{
      {"classify", "3", "5"},
      {"classify", "12", "18"},
      {"classify", "2", "4"},
      {"classify-grid", "--n-max", "5", "--m-max", "5"},
      {"far", "1/6", "2"},
      {"far-constant", "1/3", "5"},
      {"far-constant", "1/2", "6"},
      {"solvable", "108", "36"},
      {"lift", "18", "12"},
      {"density", "7/6"},
      {"cdf", "5/2", "--n", "4"},
      {"measure", "-1", "2"},
      {"audit-doubling", "--depth", "3", "--range", "2"},
      {"audit-nondoubling", "--ell", "2"},
      {"witness", "3", "5", "--ell", "2"},
      {"sweep", "3", "5", "--ell-from", "1", "--ell-to", "3"},
      {"separate", "--ns", "12", "--ms", "18,2", "--ells", "2,4"},
      {"separate", "--ns", "4", "--ms", "2"},
      {"oracle-check", "--seed", "3", "--cases", "5"},
  };
  for (auto args : commands) {
    args.insert(args.begin(), {"--format", "json"});
    const auto r = run(args);
    INFO(args[2]);
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    for (const char* field : {"command", "inputs", "result", "exact", "approx"}) {
      CHECK(doc.contains(field));
    }
    CHECK(doc["command"] == args[2]);
  }
}

TEST_CASE("sweep csv round-trips") {
  const auto r = run({"sweep", "12", "18", "--ell-from", "2", "--ell-to", "8", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == std::vector<std::string>{"ell", "case", "left", "right", "ratio_num", "ratio_den",
                                            "ratio_approx", "bound_num", "bound_den"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 9);
    const Rational ratio = Rational::parse(rows[i][4] + "/" + rows[i][5]);
    const Rational bound = Rational::parse(rows[i][7] + "/" + rows[i][8]);
    CHECK(ratio.num().get_str() == rows[i][4]);
    CHECK(ratio.den().get_str() == rows[i][5]);
    CHECK(ratio.to_decimal() == rows[i][6]);
    CHECK(ratio >= bound);
  }

  const auto grid = parse_csv(run({"classify-grid", "--n-max", "6", "--m-max", "6", "--format", "csv"}).out);
  CHECK(grid.size() == 26);
}

TEST_CASE("global options after the subcommand and --out") {
  const std::string path = "cli_out_test.json";
  auto r = run({"far", "1/6", "2", "--format", "json", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["result"]["far"] == true);
  std::remove(path.c_str());
}

TEST_CASE("oracle-check") {
  const auto r = run({"oracle-check", "--seed", "11", "--cases", "40"});
  CHECK(r.code == 0);
  CHECK(r.out == "oracle-check: 40/40 agree\n");
}
