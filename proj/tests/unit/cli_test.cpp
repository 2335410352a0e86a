#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<const char*> args) {
  args.insert(args.begin(), "rsq");
  std::ostringstream out;
  std::ostringstream err;
  const int code = rsq::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json payload(const Outcome& o) { return nlohmann::json::parse(o.out).at("payload"); }

}  // namespace

TEST_CASE("decompose") {
  const Outcome a = invoke({"decompose", "--n", "31", "--m", "5", "--d", "1", "--mode", "min"});
  CHECK(a.code == 0);
  CHECK(payload(a).at("count") == 16);
  CHECK(payload(a).at("verified") == true);
  CHECK(nlohmann::json::parse(a.out).at("schema_version") == "1");
  CHECK(nlohmann::json::parse(a.out).at("command").at("n") == 31);

  const Outcome b = invoke({"decompose", "--n", "49", "--m", "8", "--d", "1", "--mode", "su"});
  CHECK(payload(b).at("count") == 1);
  CHECK(payload(b).at("terms") == nlohmann::json::array({-7}));

  const Outcome c = invoke({"decompose", "--n", "7", "--m", "1", "--d", "1", "--mode", "min", "--cap", "4"});
  CHECK(payload(c).at("count") == 4);

  CHECK(invoke({"decompose", "--n", "7", "--m", "1", "--d", "1", "--mode", "min", "--cap", "3"}).code == 2);
  CHECK(invoke({"decompose", "--n", "100", "--m", "7", "--d", "1", "--mode", "asu"}).code == 2);
  CHECK(invoke({"decompose", "--n", "100", "--m", "5", "--d", "2", "--mode", "su"}).code == 2);
  CHECK(invoke({"decompose", "--n", "100", "--m", "6", "--d", "3"}).code == 1);
  CHECK(invoke({"decompose", "--n", "0", "--m", "6", "--d", "1"}).code == 1);
  CHECK(invoke({"decompose", "--n", "10", "--m", "6", "--d", "1", "--mode", "max"}).code == 1);
  CHECK(invoke({"decompose", "--m", "6", "--d", "1"}).code == 1);

  const Outcome err = invoke({"decompose", "--n", "100", "--m", "5", "--d", "2", "--mode", "su"});
  CHECK(nlohmann::json::parse(err.out).at("error").at("kind") == "NoSU");
  CHECK_FALSE(nlohmann::json::parse(err.out).at("error").at("reason").get<std::string>().empty());
}

TEST_CASE("decompose honors RS_MAX_MEMORY_MB") {
  setenv("RS_MAX_MEMORY_MB", "1", 1);
  const Outcome o = invoke({"decompose", "--n", "5000000", "--m", "5", "--d", "1", "--mode", "min"});
  unsetenv("RS_MAX_MEMORY_MB");
  CHECK(o.code == 1);
  CHECK(nlohmann::json::parse(o.out).at("error").at("kind") == "ResourceLimit");
}

TEST_CASE("output is deterministic") {
  const std::vector<const char*> args = {"decompose", "--n", "123456789", "--m", "7", "--d", "6"};
  CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("scan") {
  const Outcome a = invoke({"scan", "--m", "12", "--d", "1", "--max-n", "200", "--exceptions-only"});
  CHECK(a.code == 0);
  CHECK(a.out.find("147\t3*7^2 (7 mod 12 = 7)\n") != std::string::npos);

  const Outcome b = invoke({"scan", "--m", "6", "--d", "1", "--max-n", "100"});
  CHECK(b.out == "3\t1\n27\t3\n51\t6\n75\t7\n99\t6\n");
  CHECK(invoke({"scan", "--m", "6", "--d", "5", "--max-n", "100"}).out == b.out);

  const Outcome many = invoke({"scan", "--m", "8", "--d", "1", "--max-n", "30000", "--jobs", "4"});
  CHECK(many.out == invoke({"scan", "--m", "8", "--d", "1", "--max-n", "30000"}).out);

  CHECK(invoke({"scan", "--m", "6", "--d", "2", "--max-n", "100"}).code == 1);
  CHECK(invoke({"scan", "--m", "6", "--d", "1", "--max-n", "100", "--jobs", "0"}).code == 1);
}

TEST_CASE("witness") {
  const Outcome a = invoke({"witness", "--m", "7", "--d", "1", "--kind", "su-extremal"});
  CHECK(a.code == 0);
  CHECK(payload(a).at("n") == 35);
  CHECK(payload(a).at("certified_min") == 35);

  const Outcome b = invoke({"witness", "--m", "6", "--d", "1", "--kind", "asu-lower", "--count", "2"});
  CHECK(b.code == 0);
  std::istringstream lines(b.out);
  int records = 0;
  for (std::string line; std::getline(lines, line); ++records) {
    CHECK(nlohmann::json::parse(line).at("payload").at("certified_min").get<int>() >= 26);
  }
  CHECK(records == 2);

  CHECK(invoke({"witness", "--m", "5", "--d", "2", "--kind", "su-extremal"}).code == 2);
}

TEST_CASE("tables") {
  const Outcome a = invoke({"tables", "--m-max", "12"});
  CHECK(a.code == 0);
  CHECK(a.out.find("\n5\t1\t1\t8\t16\t3907.25\n") != std::string::npos);
  CHECK(a.out.find("\n6\t2\t4\t26\t26\t85\n") != std::string::npos);
  CHECK(a.out.find("\n12\t0\t2\t27\t120\t5186\n") != std::string::npos);
  CHECK(invoke({"tables", "--m-max", "0"}).code == 1);
}

TEST_CASE("verify and usage errors") {
  CHECK(invoke({"verify", "--suite", "bogus"}).code == 1);
  const Outcome basic = invoke({"verify", "--suite", "basic"});
  CHECK((basic.code == 0 || basic.code == 3));
  CHECK(std::count(basic.out.begin(), basic.out.end(), '\n') == 10);
  CHECK(basic.out.rfind("PASS  c1  threshold-table", 0) == 0);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
}
