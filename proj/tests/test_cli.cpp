#include <algorithm>
#include <filesystem>
#include <sstream>

#include "brokenlines/cli.hpp"
#include "brokenlines/io.hpp"
#include "doctest.h"

using namespace brokenlines;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

std::string data_file(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

fs::path scratch() {
  auto p = fs::temp_directory_path() / "brokenlines_cli_test";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("lpp on the 2x2 example") {
  auto r = cli({"lpp", "--xi", data_file("xi_2x2.csv")});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == 8.0);
  CHECK(j["H"] == 8.0);
  CHECK(j["path"].size() == 3);
  CHECK(r.err.find("\"command\":\"lpp\"") != std::string::npos);
}

TEST_CASE("decompose of the zero field is a bare header") {
  auto dir = scratch();
  write_file((dir / "zero.json").string(),
             field_to_json(FlowField(make_domain(Domain::rect(2, 3)))).dump());
  auto out = (dir / "zero.csv").string();
  auto r = cli({"decompose", "--field", (dir / "zero.json").string(), "--out", out});
  CHECK(r.code == 0);
  auto text = read_file(out);
  CHECK(text.find("j,weight,sites\n") != std::string::npos);
  CHECK(text.substr(text.find("j,weight,sites\n") + 15).empty());
}

TEST_CASE("golden decompose then compose") {
  auto dir = scratch();
  for (std::string name : {"field_3x4_int.json", "field_3x3_float.json"}) {
    auto lines = (dir / (name + ".csv")).string();
    auto back = (dir / (name + ".back.json")).string();
    REQUIRE(cli({"decompose", "--field", data_file(name), "--out", lines}).code == 0);
    REQUIRE(cli({"compose", "--lines", lines, "--out", back}).code == 0);
    auto a = field_from_json(read_json_file(data_file(name)));
    auto b = field_from_json(read_json_file(back));
    CHECK(max_abs_diff(a, b) <= 1e-9);
    // integer fields survive byte for byte
    if (a.mode() == Arithmetic::Integer) CHECK(read_file(back) == read_file(data_file(name)));
  }
}

TEST_CASE("sample output is reproducible") {
  auto a = cli({"sample", "--N", "3", "--M", "2", "--triple", "exp:1,exp:2,exp:3", "--seed", "9"});
  auto b = cli({"sample", "--N", "3", "--M", "2", "--triple", "exp:1,exp:2,exp:3", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = cli({"sample", "--N", "3", "--M", "2", "--lambda", "0.5", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 3);
}

TEST_CASE("statistical subcommands") {
  CHECK(cli({"duality-check", "--triple", "exp:1,exp:2,exp:3", "--n", "100000", "--seed", "7"}).code == 0);
  CHECK(cli({"duality-check", "--triple", "unif:0:1,unif:0:1,unif:0:1", "--n", "100000"}).code == 2);
  CHECK(cli({"duality-check", "--lambda", "0.5"}).code == 0);
  CHECK(cli({"burke", "--triple", "exp:1,exp:1,exp:2", "--n", "2000"}).code == 0);
  CHECK(cli({"burke", "--triple", "exp:1,exp:1,exp:5", "--n", "2000"}).code == 1);
  CHECK(cli({"consistency", "--sub", "0,0,2,3", "--n", "3000"}).code == 0);
}

TEST_CASE("path, render and experiments") {
  auto p = cli({"path", "--xi", data_file("xi_2x2.csv")});
  CHECK(p.code == 0);
  CHECK(nlohmann::json::parse(p.out)["value"] == 8.0);
  auto s = cli({"render", "--field", data_file("field_3x3_float.json"), "--view", "brick"});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("<svg", 0) == 0);
  auto l = cli({"lln", "--N", "20", "--replicas", "4", "--bracket", "0,100"});
  CHECK(l.code == 0);
  CHECK(cli({"lln", "--N", "20", "--replicas", "4", "--bracket", "5,6"}).code == 2);
  auto c = cli({"concentration", "--Ns", "10,20", "--replicas", "20", "--delta", "50", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("N,rate", 0) == 0);
}

TEST_CASE("validation errors exit with 1") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"lpp"}).code == 1);
  CHECK(cli({"lpp", "--xi", "/nonexistent/file.csv"}).code == 1);
  CHECK(cli({"lpp", "--xi", data_file("xi_2x2.csv"), "--format", "svg"}).code == 1);
  CHECK(cli({"sample", "--N", "2"}).code == 1);
  CHECK(cli({"sample", "--N", "2", "--M", "2", "--triple", "exp:1,exp:2"}).code == 1);
  CHECK(cli({"lpp", "--xi", data_file("xi_2x2.csv"), "--bogus"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}
