#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "steercert/io.hpp"

using namespace steercert;

namespace {

const std::string kCli = STEERCERT_CLI_PATH;

std::string temp_path(const std::string& name) {
  return std::string("cli_") + name;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::trunc);
  out << body;
}

int run(const std::string& args) {
  const int rc = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

const char* kTriangle = R"({"family":"graph","graph":{"d":2,"vertices":3,
  "edges":[[0,1],[1,2],[0,2]]}})";
const char* kEdge = R"({"family":"graph","graph":{"d":2,"vertices":2,
  "edges":[[0,1]]}})";
const char* kSchmidt = R"({"family":"schmidt","d":2,"N":2,
  "alpha":[0.70710678118654752,0.70710678118654752]})";

}  // namespace

TEST_CASE("scenario parsing and hashing") {
  const json j = json::parse(kTriangle);
  const ScenarioSpec spec = scenario_from_json(j);
  CHECK(std::get<Multigraph>(spec.params).n_vertices == 3);
  CHECK(spec.scenario.total_dim() == 8);
  CHECK(scenario_hash(j) == scenario_hash(json::parse(kTriangle)));
  CHECK(scenario_hash(j) != scenario_hash(json::parse(kEdge)));
  CHECK_THROWS_AS(scenario_from_json(json{{"family", "bell"}}),
                  std::invalid_argument);
}

TEST_CASE("matrix serialization round-trips") {
  const CMatrix z = gen_pauli_z(3);
  CHECK(max_abs(matrix_from_json(matrix_to_json(z)) - z) < 1e-15);
  CHECK_THROWS_AS(matrix_from_json(json::array()), std::invalid_argument);
}

TEST_CASE("explicit Bob observables are accepted") {
  json j = json::parse(kEdge);
  j["bob_observables"] =
      json::array({json::array({matrix_to_json(gen_pauli_z(2)),
                                matrix_to_json(gen_pauli_x(2))})});
  const ScenarioSpec spec = scenario_from_json(j);
  CHECK(spec.scenario.bob_dims[0] == 2);
}

TEST_CASE("build reports functional metadata") {
  write_file(temp_path("tri.json"), kTriangle);
  const std::string out = temp_path("build.json");
  CHECK(run("build " + temp_path("tri.json") + " --out " + out) == 0);
  const json r = read_json(out);
  CHECK(r["family"] == "graph");
  CHECK(r["term_count"] == 6);
  CHECK(r["beta_q"].get<double>() == doctest::Approx(6.0));
  CHECK(r["meta"]["seed"] == 12345);
  CHECK(r["meta"]["version"] == kVersion);
  CHECK(r["meta"].contains("scenario_hash"));
}

TEST_CASE("bound reports the single-edge gap") {
  write_file(temp_path("edge.json"), kEdge);
  const std::string out = temp_path("bound.json");
  CHECK(run("bound " + temp_path("edge.json") + " --restarts 8 --out " + out) == 0);
  const json r = read_json(out);
  CHECK(r["beta_q"].get<double>() == doctest::Approx(4.0));
  CHECK(r["lhs_exact"].get<double>() ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
  CHECK(r["gap"].get<double>() == doctest::Approx(4.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("certify passes on the ideal fixture and fails under noise") {
  write_file(temp_path("s22.json"), kSchmidt);
  const std::string out = temp_path("cert.json");
  CHECK(run("certify " + temp_path("s22.json") + " --out " + out) == 0);
  json r = read_json(out);
  CHECK(r["certified"] == true);
  CHECK(r["fidelity_to_reference"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(run("certify " + temp_path("s22.json") + " --visibility 0.9 --out " + out) == 1);
  r = read_json(out);
  CHECK(r["certified"] == false);
  CHECK(r["deficit"].get<double>() > 0.0);
  CHECK(r.contains("failure"));
}

TEST_CASE("scan emits the visibility grid with the expected crossing") {
  write_file(temp_path("s22b.json"), kSchmidt);
  const std::string out = temp_path("scan.csv");
  CHECK(run("scan " + temp_path("s22b.json") + " --vmin 0 --vmax 1 --steps 11 --out " + out) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# seed=", 0) == 0);
  std::getline(in, line);
  CHECK(line == "v,value,lhs_exact,beta_q,certified");
  double last_below = -1.0, first_above = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 5);
    if (vals[1] < vals[2]) last_below = vals[0];
    else if (first_above < 0.0) first_above = vals[0];
    if (vals[0] == 1.0) CHECK(vals[1] == doctest::Approx(vals[3]).epsilon(1e-10));
  }
  CHECK(rows == 11);
  // the value crosses the LHS bound between 0.7 and 0.8
  CHECK(last_below == doctest::Approx(0.7));
  CHECK(first_above == doctest::Approx(0.8));
}

TEST_CASE("malformed input exits with code 2") {
  write_file(temp_path("bad.json"), "{ not json");
  CHECK(run("build " + temp_path("bad.json")) == 2);
  CHECK(run("build " + temp_path("missing.json")) == 2);
  write_file(temp_path("badfam.json"), R"({"family":"bell"})");
  CHECK(run("bound " + temp_path("badfam.json")) == 2);
}

TEST_CASE("reruns with identical configuration are bit-identical") {
  write_file(temp_path("edge2.json"), kEdge);
  const std::string a = temp_path("a.json"), b = temp_path("b.json");
  CHECK(run("bound " + temp_path("edge2.json") + " --restarts 8 --seed 99 --out " + a) == 0);
  CHECK(run("bound " + temp_path("edge2.json") + " --restarts 8 --seed 99 --out " + b) == 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
}
