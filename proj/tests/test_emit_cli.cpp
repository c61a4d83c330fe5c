#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "rfg/emit.hpp"

using namespace rfg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rfg");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("csv and json emission") {
  emit::Table t{{"name", "value", "ratio", "ok"}, {}};
  t.rows.push_back({std::string("a,b"), BigInt(5), 0.5, true});
  t.rows.push_back({std::string("say \"hi\""), BigInt("123456789012345678901234567890"), 1e-3, false});
  const auto csv = emit::emit(t, emit::Format::csv);
  CHECK(csv == "name,value,ratio,ok\n\"a,b\",5,0.5,true\n\"say \"\"hi\"\"\",123456789012345678901234567890,0.001,false\n");
  const auto rows = emit::parse_csv(csv);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][0] == "a,b");
  CHECK(rows[2][0] == "say \"hi\"");
  const auto j = nlohmann::ordered_json::parse(emit::emit(t, emit::Format::json));
  CHECK(j[0]["value"] == 5);
  CHECK(j[1]["value"] == "123456789012345678901234567890");
  CHECK(j[0].begin().key() == "name");
  CHECK(emit::format_double(0.1) == "0.1");
  CHECK_THROWS(emit::parse_format("xml"));
}

TEST_CASE("cli dq") {
  auto r = run({"dq", "--matrix", "1,12;0,1"});
  CHECK(r.code == 0);
  CHECK(r.out == "modulus=5,order=120\n");
  r = run({"dq", "--matrix", "1,12;0,1", "--oracle", "--m-max", "50"});
  CHECK(r.code == 0);
  CHECK(r.out == "modulus=5,order=120\n");
  r = run({"dq", "--matrix", "1,0;0,1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("identity is undetectable") != std::string::npos);
  CHECK(run({"dq", "--matrix", "2,0;0,1"}).code == 2);
  CHECK(run({"dq"}).code == 2);
  r = run({"dq", "--matrix", "1,12;0,1", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["quotient_order"] == "120");
}

TEST_CASE("cli growth candidates and fit") {
  auto r = run({"growth", "--n-max", "2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 4);
  CHECK(r.out.rfind("n,ball_size,F_value,witness,modulus,quotient_order,central_flag\n", 0) == 0);
  CHECK(run({"growth", "--n-max", "20", "--budget", "100"}).code == 3);

  r = run({"candidates", "--k", "10..200"});
  CHECK(r.code == 0);
  const auto path = std::filesystem::temp_directory_path() / "rfg_candidates_test.csv";
  std::ofstream(path) << r.out;
  r = run({"fit", "--input", path.string()});
  std::filesystem::remove(path);
  CHECK(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it)
    keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"slope", "intercept", "max_residual"});
  CHECK(std::abs(j["slope"].get<double>() - 3) < 0.8);
}

TEST_CASE("cli verify examples ring") {
  auto r = run({"verify", "--suite", "moy-prasad", "--p", "5", "--k", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("check_name,instance,status,detail\n", 0) == 0);
  CHECK(r.out.find(",fail,") == std::string::npos);
  CHECK(run({"verify", "--suite", "normal-subgroups", "--p", "3", "--k", "2"}).code == 3);
  CHECK(run({"verify", "--suite", "bogus"}).code == 2);

  r = run({"examples", "--group", "lamplighter", "--k", "2..10"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 10);
  CHECK(run({"examples", "--group", "sl2"}).code == 2);

  r = run({"ring", "--ring", "f = 1,0,1", "--op", "split", "--limit", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "prime,roots\n");
  r = run({"ring", "--ring", "f = 1,0,1", "--op", "detect", "--element", "0,5"});
  CHECK(r.code == 0);
  CHECK(r.out == "prime,root,residue\n13,5,12\n");
}
