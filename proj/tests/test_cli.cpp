#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "groupctl/cli.hpp"

using namespace groupctl;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(RunConfig c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& input = "") {
  RunConfig c;
  c.command = command;
  c.input = input;
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check verdict sets") {
  auto c = config("check", "schema tail=Z/2\ngen 1 | 0\n");
  c.format = Format::csv;
  c.oracle = true;
  auto r = run_cli(c);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "property,k,holds\nweakly_controllable,0,true\ncontrollable,0,true\nuniformly_controllable,0,true\n"
        "k_controllable,1,true\nstrongly_controllable,1,true\n");
  c.input = "schema tail=Z/2\ngen | 1\n";
  r = run_cli(c);
  CHECK(r.out ==
        "property,k,holds\nweakly_controllable,0,false\ncontrollable,0,false\nuniformly_controllable,0,false\n"
        "k_controllable,1,false\nstrongly_controllable,1,false\n");
  auto b = config("check", "family block p=2 blocks=2,3");
  b.format = Format::json;
  r = run_cli(b);
  CHECK(r.code == 0);
  Report rep = parse_report(r.out);
  CHECK(rep.verdicts[2].holds);
  CHECK_FALSE(rep.verdicts[3].holds);
  CHECK(rep.verdicts[4].k == 3);
}

TEST_CASE("exit codes") {
  CHECK(run_cli(config("check", "schema tail=Z/2\ngen 1 |\n")).code == 2);
  CHECK(run_cli(config("check", "family block p=4 blocks=1")).code == 2);
  CHECK(run_cli(config("nonsense", "x")).code == 2);
  auto rep = config("reproduce");
  rep.example_id = "ex-9.9";
  CHECK(run_cli(rep).code == 2);
  auto big = config("check", "family z2_power depth=5");
  big.oracle = true;
  big.cap = 1000;
  auto r = run_cli(big);
  CHECK(r.code == 3);
  CHECK(r.err.find("more than 1000") != std::string::npos);
  CHECK(run_cli(config("check", "/nonexistent/spec.txt")).code == 5);
  auto out = config("check", "family z2_power depth=2");
  out.out = "/nonexistent/dir/report.json";
  CHECK(run_cli(out).code == 5);
}

TEST_CASE("defect tables") {
  auto c = config("defect");
  c.depths = std::make_pair(std::size_t{2}, std::size_t{4});
  c.format = Format::csv;
  auto r = run_cli(c);
  CHECK(r.code == 0);
  CHECK(r.out == "parameter,k,image_order,defect\ndepth=2,1,4,1\ndepth=3,2,8,2\ndepth=4,3,16,3\n");
  auto single = config("defect", "family z2_power depth=3");
  single.format = Format::csv;
  CHECK(run_cli(single).out ==
        "parameter,k,image_order,defect\ninput,0,2,2\ninput,1,4,2\ninput,2,8,2\ninput,3,8,2\ninput,4,8,2\n");
  auto constant = config("defect", "schema tail=Z/3\ngen | 1\n");
  CHECK(run_cli(constant).out.find("none (exceeds window)") != std::string::npos);
}

TEST_CASE("kcontrol and decompose") {
  auto k = config("kcontrol", "family block p=2 blocks=2,3");
  k.k = 2;
  k.oracle = true;
  auto r = run_cli(k);
  CHECK(r.code == 0);
  CHECK(r.out.find("strong index: 3") != std::string::npos);
  auto d = config("decompose", "family torsion_torus n=2");
  r = run_cli(d);
  CHECK(r.out.find("factors   30") != std::string::npos);
  CHECK(r.out.find("all generators torsion") != std::string::npos);
}

TEST_CASE("report writes and validates") {
  const auto dir = std::filesystem::temp_directory_path() / "groupctl_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "r.json").string();
  auto c = config("report", "family z2_power depth=3");
  c.out = path;
  CHECK(run_cli(c).code == 0);
  auto v = config("report", path);
  auto r = run_cli(v);
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(r.out == ss.str());
  {
    std::ofstream bad(path);
    bad << "{\"report_version\": 1}";
  }
  CHECK(run_cli(v).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reproduce passes") {
  for (const auto& id : reproduce_ids()) {
    auto c = config("reproduce");
    c.example_id = id;
    auto r = run_cli(c);
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS " + id) != std::string::npos);
  }
}

}
