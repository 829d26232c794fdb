#include <doctest.h>

#include "cli.hpp"

using namespace alcove;
using namespace alcove::cli;

namespace {

auto config(int n, int f, Int p = 53) -> RunConfig {
  RunConfig c;
  c.n = n;
  c.f = f;
  c.p = p;
  return c;
}

auto parse(const Report &r) -> nlohmann::json { return nlohmann::json::parse(emit_report(r, Format::Json)); }

} // namespace

TEST_CASE("special alcove count through the front end") {
  auto j = parse(run("alcoves special", config(3, 1)));
  CHECK(j["schema_version"] == "1");
  CHECK(j["data"]["count"] == 1);
  CHECK(j["pass"] == true);
  CHECK(parse(run("alcoves special", config(2, 1)))["data"]["count"] == 0);
}

TEST_CASE("reports are byte-stable under a fixed seed") {
  RunConfig c = config(4, 1);
  c.trials = 1000;
  c.seed = 7;
  auto a = emit_report(run("verify minors", c), Format::Json);
  auto b = emit_report(run("verify minors", c), Format::Json);
  CHECK(a == b);
  CHECK(nlohmann::json::parse(a)["pass"] == true);
  c.seed = 8;
  c.trials = 5;
  RunConfig d = c;
  CHECK(emit_report(run("verify bruhat", c), Format::Json) == emit_report(run("verify bruhat", d), Format::Json));
  CHECK(a.find("seconds") == std::string::npos);
  c.timing = true;
  CHECK(parse(run("verify minors", c)).contains("seconds"));
}

TEST_CASE("triple witness report") {
  RunConfig c = config(3, 1);
  c.t = 2;
  auto j = parse(run("witness triple", c));
  CHECK(j["pass"] == true);
  REQUIRE_FALSE(j["data"]["witnesses"].empty());
  for (const auto &w : j["data"]["witnesses"]) {
    for (const auto &[k, v] : w["checks"].items())
      if (v.is_boolean()) CHECK_MESSAGE(v == true, k);
    CHECK(w["f"][2]["valuation"] == 0);
  }
}

TEST_CASE("every command runs on a small configuration") {
  for (const auto &name : known_commands()) {
    RunConfig c = config(3, 1);
    c.trials = 3;
    if (name == "verify z") c.p = 101;
    auto r = run(name, c);
    CHECK_MESSAGE(r.all_pass(), name);
    CHECK_FALSE(r.checks.empty());
  }
}

TEST_CASE("report emission") {
  Report empty;
  empty.command = "none";
  auto j = parse(empty);
  CHECK(j["checks"].empty());
  CHECK(j["pass"] == true);

  Report r;
  r.checks.push_back({"plain", true, {{"cases", 3}, {"failures", 0}}, std::nullopt});
  r.checks.push_back({"has, comma", false, {{"cases", 2}, {"failures", 1}}, nlohmann::ordered_json{{"x", 1}}});
  r.checks.push_back({"has \"quote\"", true, nlohmann::ordered_json::object(), std::nullopt});
  auto csv = emit_report(r, Format::CsvSummary);
  CHECK(csv == "check,pass,cases,failures\n"
               "plain,true,3,0\n"
               "\"has, comma\",false,2,1\n"
               "\"has \"\"quote\"\"\",true,,\n");
  CHECK_FALSE(r.all_pass());
  auto js = parse(r);
  CHECK(js["pass"] == false);
  CHECK(js["checks"][1]["counterexample"]["x"] == 1);
  CHECK_FALSE(js["checks"][0].contains("counterexample"));
}

TEST_CASE("configuration") {
  RunConfig base = config(3, 1);
  auto merged = merge_config_file(base, nlohmann::json{{"n", 4}, {"seed", 9}, {"format", "csv"}});
  CHECK(merged.n == 4);
  CHECK(merged.seed == 9);
  CHECK(merged.f == 1);
  CHECK(merged.format == "csv");
  CHECK_THROWS_AS(merge_config_file(base, nlohmann::json{{"colour", 1}}), usage_error);
  CHECK_THROWS_AS(merge_config_file(base, nlohmann::json{{"n", "four"}}), usage_error);
  CHECK_THROWS_AS(merge_config_file(base, nlohmann::json::array()), usage_error);

  CHECK_THROWS_AS(run("verify minors", config(3, 1, 4)), usage_error);
  CHECK_THROWS_AS(run("verify minors", config(1, 1)), usage_error);
  CHECK_THROWS_AS(run("verify everything", config(3, 1)), usage_error);
  CHECK_THROWS_AS(run("verify weyl", config(5, 1)), usage_error);

  RunConfig q = config(3, 1, 5);
  CHECK(q.q_degrees() == std::vector<int>{1, 2, 3});
  q.q_max = 30;
  CHECK(q.q_degrees() == std::vector<int>{1, 2});
  q.q_max = 4;
  CHECK_THROWS_AS(q.validate(), usage_error);
}

TEST_CASE("serialization") {
  auto x = ExtAffine::translation(Weight(3, 1, {1, 0, -1}));
  auto j = to_json(x);
  CHECK(j["nu"] == nlohmann::json::parse("[[1,0,-1]]"));
  CHECK(j["w"] == nlohmann::json::parse("[[1,2,3]]"));
  CHECK(root_name(Root{2, 0}) == "e3-e1");
}
