#include <doctest.h>

#include <json.hpp>
#include <map>
#include <sstream>

#include "cbern/report_io.hpp"
#include "cbern/suite.hpp"

using namespace cbern;

namespace {

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.params = {{1, 1}, {2, 2}, {4, 1}};
  for (const char* label : {"e1", "e2", "abs_half", "sqrt"}) cfg.corpus.push_back(corpus_function(label));
  cfg.x_grid = {0.0, 0.3, 0.5, 1.0};
  cfg.r_list = {1, 5};
  cfg.check.modulus_grid = 256;
  return cfg;
}

}  // namespace

TEST_CASE("empty corpus gives an empty run") {
  SuiteConfig cfg = small_config();
  cfg.corpus.clear();
  const auto res = run_suite(cfg);
  CHECK(res.reports.empty());
  CHECK(res.summary == SuiteSummary{});
}

TEST_CASE("P3.2 on e1 alone") {
  SuiteConfig cfg = small_config();
  cfg.only = {InequalityId::P3_2};
  cfg.fn = "e1";
  const auto res = run_suite(cfg);
  CHECK(res.reports.size() == cfg.params.size() * cfg.x_grid.size());
  for (const auto& r : res.reports) {
    CHECK(r.id == InequalityId::P3_2);
    // Linear reproduction holds up to rounding; a rounding-level lhs against
    // rhs = 0 is absorbed by the slack.
    CHECK(r.lhs < 1e-15);
    CHECK((r.status == Status::Pass || r.status == Status::GridLimited));
  }
}

TEST_CASE("suite ordering, counts and determinism") {
  SuiteConfig cfg = small_config();
  cfg.threads = 1;
  const auto serial = run_suite(cfg);
  cfg.threads = 4;
  const auto parallel = run_suite(cfg);
  REQUIRE(serial.reports.size() == parallel.reports.size());
  for (std::size_t i = 0; i < serial.reports.size(); ++i)
    CHECK(to_json_line(serial.reports[i]) == to_json_line(parallel.reports[i]));
  CHECK(serial.summary == parallel.summary);
  CHECK(serial.summary.violated == 0);
  CHECK(serial.summary.errors == 0);

  // Inequalities appear in declaration order.
  for (std::size_t i = 1; i < serial.reports.size(); ++i)
    CHECK(serial.reports[i - 1].id <= serial.reports[i].id);

  // Expected counts: 4 functions (3 C2-or-kink with derivative, sqrt without),
  // 10 unordered pairs, 3 params, 4 x, 2 r.
  std::map<InequalityId, std::size_t> count;
  for (const auto& r : serial.reports) ++count[r.id];
  CHECK(count[InequalityId::P3_2] == 3 * 4 * 4);
  CHECK(count[InequalityId::P4_3_Pointwise] == 3 * 2 * 4 * 4);
  CHECK(count[InequalityId::P4_3_Uniform] == 3 * 2 * 4);
  CHECK(count[InequalityId::P5_2] == 3 * 10 * 4);
  CHECK(count[InequalityId::T6_2] == 3 * 2);
  CHECK(count[InequalityId::T6_3i] == 3 * 4);
  CHECK(count[InequalityId::P7_2] == 3 * 10);
  CHECK(count[InequalityId::C7_Limit] == 6);
}

TEST_CASE("a throwing function yields error reports, not an abort") {
  SuiteConfig cfg = small_config();
  cfg.corpus.push_back({"bad", Smoothness::C0, [](double x) { return 1.0 / x; }, {}, {}});
  cfg.only = {InequalityId::T6_3ii};
  const auto res = run_suite(cfg);
  CHECK(res.summary.errors == cfg.params.size());
  CHECK(res.summary.violated == 0);
  for (const auto& r : res.reports)
    if (r.function_labels[0] == "bad") CHECK(r.status == Status::Error);
}

TEST_CASE("JSON line format") {
  BoundReport r;
  r.id = InequalityId::P4_3_Pointwise;
  r.params = OperatorParams(2, 3);
  r.r = 5;
  r.function_labels = {"e2"};
  r.x = 0.1;
  r.lhs = 0.25;
  r.rhs = 0.5;
  r.margin = 0.25;
  r.note = "a \"quoted\" note";
  const std::string line = to_json_line(r);
  CHECK(line ==
        "{\"inequality_id\":\"P4.3-pointwise\",\"params\":{\"n\":2,\"m\":3,\"r\":5},"
        "\"function_labels\":[\"e2\"],\"x\":0.10000000000000001,\"lhs\":0.25,\"rhs\":0.5,"
        "\"margin\":0.25,\"status\":\"pass\",\"grid_slack\":0,\"rhs_aux\":null,"
        "\"upper_estimate\":false,\"note\":\"a \\\"quoted\\\" note\"}");
  const auto j = nlohmann::json::parse(line);
  CHECK(j.at("note") == "a \"quoted\" note");

  BoundReport c;
  c.id = InequalityId::C7_Limit;
  c.function_labels = {"e1", "e1"};
  c.rhs_aux = 1.0 / 12;
  const auto jc = nlohmann::json::parse(to_json_line(c));
  CHECK(jc.at("params").is_null());
  CHECK(jc.at("x").is_null());
  CHECK(jc.at("rhs_aux").get<double>() == 1.0 / 12);
}

TEST_CASE("CSV format") {
  CHECK(csv_header() ==
        "inequality_id,n,m,r,function_labels,x,lhs,rhs,margin,status,grid_slack,rhs_aux,"
        "upper_estimate,note");
  BoundReport r;
  r.id = InequalityId::P7_2;
  r.params = OperatorParams(1, 1);
  r.function_labels = {"e1", "e1"};
  r.lhs = 0.25;
  r.rhs = 0.25;
  r.note = "x, y";
  CHECK(to_csv_row(r) == "P7.2,1,1,,e1;e1,,0.25,0.25,0,pass,0,,false,\"x, y\"");
}

TEST_CASE("summary round-trip") {
  const SuiteSummary s{37, 30, 5, 1, 1};
  CHECK(to_json(s) == "{\"total\":37,\"pass\":30,\"grid_limited\":5,\"violated\":1,\"errors\":1}");
  CHECK(summary_from_json(to_json(s)) == s);
}

TEST_CASE("rule export round-trip") {
  for (int n : {1, 3, 7})
    for (int m : {1, 2, 5}) {
      const auto rule = build_rule({n, m});
      const auto back = rule_from_json(rule_to_json(rule));
      CHECK(back.params == rule.params);
      CHECK(back.nodes == rule.nodes);
      CHECK(back.weights == rule.weights);
    }
}

TEST_CASE("write_reports ends with the summary") {
  SuiteConfig cfg = small_config();
  cfg.only = {InequalityId::T6_2};
  const auto res = run_suite(cfg);
  std::ostringstream out;
  write_reports(out, res, OutputFormat::Json);
  std::string line, last;
  std::size_t lines = 0;
  std::istringstream in(out.str());
  while (std::getline(in, line)) {
    last = line;
    ++lines;
  }
  CHECK(lines == res.reports.size() + 1);
  CHECK(summary_from_json(last) == res.summary);
  CHECK(parse_output_format("csv") == OutputFormat::Csv);
  CHECK_THROWS_AS(parse_output_format("xml"), std::invalid_argument);
}
