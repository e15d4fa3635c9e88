#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsatake/cli.hpp"
#include "qsatake/qarith.hpp"
#include "qsatake/webs.hpp"

using namespace qsatake;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

std::string temp_web(const std::string& name, const Web& w) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << web_to_json(w);
  return path.string();
}

Subset S(const char* name) { return *Subset::from_name(name); }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"verify"}).code == 2);
  CHECK(run_cli({"verify", "--suite", "nonsense", "--n", "3"}).code == 2);
  CHECK(run_cli({"verify", "--suite", "webs", "--n", "4"}).code == 2);
  CHECK(run_cli({"eval-web", "/no/such/file.json"}).code == 2);
  CHECK(run_cli({"demazure", "--ops", "x", "--poly", "a_b"}).code == 2);
  CHECK(run_cli({"demazure", "--ops", "y", "--poly", "a_b", "--n", "2"}).code == 2);
  CHECK(run_cli({"demazure", "--ops", "b", "--poly", "a_b +"}).code == 2);
  CHECK(run_cli({"dual-bases", "--ext", "b"}).code == 2);
  CHECK(run_cli({"dual-bases", "--ext", "b0"}).code == 2);
  CHECK(run_cli({"kernel-check", "--n", "1", "--m", "1"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("eval-web prints the closed value") {
  auto r = run_cli({"eval-web", fixture("circle3.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "q^2 + 1 + q^-2\n");

  auto j = run_cli({"eval-web", fixture("circle3.json"), "--json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["value"] == "q^2 + 1 + q^-2");
}

TEST_CASE("demazure applies operators leftmost first") {
  auto r = run_cli({"demazure", "--ops", "y", "--poly", "a_b"});
  CHECK(r.code == 0);
  CHECK(r.out == "-q\n");

  auto rr = run_cli({"demazure", "--ops", "b", "--poly", "a_b"});
  CHECK(rr.code == 0);
  CHECK(rr.out == "2\n");

  // y first sends a_b to a constant, so the composite vanishes
  auto yb = run_cli({"demazure", "--ops", "yb", "--poly", "a_b"});
  CHECK(yb.code == 0);
  CHECK(yb.out == "0\n");

  auto j = run_cli({"demazure", "--ops", "y", "--poly", "a_b", "--json"});
  CHECK(nlohmann::json::parse(j.out)["result"] == "-q");
}

TEST_CASE("dual-bases prints a basis with its dual and mu") {
  auto r = run_cli({"dual-bases", "--ext", "0b"});
  CHECK(r.code == 0);
  CHECK(r.out.find("b[0]") != std::string::npos);
  CHECK(r.out.find("mu = ") != std::string::npos);

  auto j = run_cli({"dual-bases", "--ext", "0b", "--json"});
  CHECK(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["lower"] == "0");
  CHECK(doc["upper"] == "b");
  CHECK(doc["basis"].size() == 2);
  CHECK(doc["dual"].size() == 2);

  // sl_2 lattice reachable with --n 2
  auto two = run_cli({"dual-bases", "--ext", "0b", "--n", "2"});
  CHECK(two.code == 0);
}

TEST_CASE("kernel-check reports pass and fail through exit codes") {
  CHECK(run_cli({"kernel-check", "--n", "1", "--m", "2"}).code == 0);
  CHECK(run_cli({"kernel-check", "--n", "2", "--m", "3"}).code == 0);
}

TEST_CASE("verify runs suites and honors the cutoff flag") {
  CHECK(run_cli({"verify", "--suite", "weylrep", "--n", "3"}).code == 0);
  CHECK(run_cli({"verify", "--suite", "weylrep", "--n", "2"}).code == 0);
  CHECK(run_cli({"verify", "--suite", "frobenius", "--n", "3",
                 "--degree-cutoff", "4"})
            .code == 0);
}

TEST_CASE("reports share one JSON schema across suites") {
  auto a = run_cli({"verify", "--suite", "weylrep", "--n", "2", "--json"});
  auto b = run_cli({"kernel-check", "--n", "1", "--m", "2", "--json"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  for (const auto& text : {a.out, b.out}) {
    auto doc = nlohmann::json::parse(text);
    CHECK(doc.size() == 5);
    CHECK(doc.contains("suite"));
    CHECK(doc.contains("version"));
    CHECK(doc.contains("seed"));
    CHECK(doc.contains("checks"));
    CHECK(doc.contains("summary"));
    CHECK(doc["summary"].contains("passed"));
    CHECK(doc["summary"].contains("failed"));
    CHECK(doc["summary"].contains("total"));
    for (const auto& c : doc["checks"]) {
      CHECK(c.contains("name"));
      CHECK(c.contains("status"));
    }
  }
}

TEST_CASE("reduce-web output re-parsed and re-reduced is unchanged") {
  Web bigon = bigon_web(S("o"), S("g"), S("p"));
  auto r = run_cli({"reduce-web", temp_web("qsatake_cli_bigon.json", bigon)});
  REQUIRE(r.code == 0);

  auto doc = nlohmann::json::parse(r.out);
  auto word = [&](const char* key) {
    std::vector<Subset> out;
    for (const auto& x : doc.at(key)) out.push_back(S(x.get<std::string>().c_str()));
    return out;
  };
  WebCombo parsed(doc.at("n").get<int>() - 1, word("source"), word("target"));
  for (const auto& term : doc.at("terms")) {
    auto c = QLaurent::parse(term.at("coeff").get<std::string>());
    REQUIRE(c.has_value());
    parsed.add(web_from_json(term.at("web").dump()), *c);
  }

  WebCombo again(parsed.rank(), parsed.source(), parsed.target());
  for (const auto& [w, c] : parsed.terms()) again = again + reduce(w).scaled(c);
  CHECK(again == parsed);
  CHECK(!parsed.is_zero());
}

TEST_CASE("functor-image reports a degree zero image") {
  Web cup = cup_web(1, S("b"), S("r"));
  auto r = run_cli({"functor-image", temp_web("qsatake_cli_cup.json", cup)});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("degree: 0") != std::string::npos);

  auto j = run_cli(
      {"functor-image", temp_web("qsatake_cli_cup.json", cup), "--json"});
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["degree"] == 0);
  CHECK(doc["source"] == "b");
}

TEST_SUITE_END();
