#include <doctest.h>

#include <sstream>

#include "dkbplan/bench.hpp"
#include "dkbplan/errors.hpp"

using namespace dkb;

TEST_CASE("random problems are deterministic per seed") {
  for (unsigned seed : {0u, 7u, 42u}) {
    PlanningProblem a = random_dkb(seed);
    PlanningProblem b = random_dkb(seed);
    CHECK(a.dkb.initial == b.dkb.initial);
    CHECK(a.dkb.actions == b.dkb.actions);
    CHECK(a.goal == b.goal);
  }
  PlanningProblem a = random_dkb(1);
  PlanningProblem b = random_dkb(2);
  CHECK((!(a.dkb.initial == b.dkb.initial) || !(a.dkb.actions == b.dkb.actions) ||
         !(a.goal == b.goal)));
}

TEST_CASE("fifty seeds produce valid problems within budget") {
  for (unsigned seed = 0; seed < 50; ++seed) {
    PlanningProblem problem = random_dkb(seed);
    CHECK(!problem.dkb.actions.empty());
    Reasoner reasoner(problem.dkb.tbox, default_depth_bound(problem));
    CHECK(reasoner.consistent(problem.dkb.initial));
    for (const Action& act : problem.dkb.actions)
      CHECK(well_formed(act, problem.dkb.tbox));
  }
}

TEST_CASE("inclusion verdicts hold on small instances") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    InclusionVerdict verdict = check_inclusion(random_dkb(seed));
    CHECK(verdict.included);
  }

  InclusionVerdict small = check_inclusion(make_problem(generate(ScenarioParams{1, 1, 1})));
  CHECK(small.included);
  CHECK(small.plans_fp == small.plans_fpi);
  CHECK(small.missing_nonredundant.empty());
}

TEST_CASE("run_grid validates repetitions and pairs rows") {
  CHECK_THROWS_AS(run_grid({ScenarioParams{1, 1, 1}}, 0, std::chrono::milliseconds(1000)),
                  InvalidRepetitions);

  BenchReport report =
      run_grid({ScenarioParams{1, 1, 1}, ScenarioParams{1, 1, 2}}, 2,
               std::chrono::milliseconds(30000));
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows[0].algorithm == "fp");
  CHECK(report.rows[1].algorithm == "abp-fpi");
  CHECK(report.rows[1].paired_with == 0);
  CHECK(report.rows[3].paired_with == 2);
  for (const BenchRow& row : report.rows) {
    CHECK(!row.timed_out);
    CHECK(row.inconsistent <= row.visited);
  }
  // Componentwise domination per cell.
  CHECK(report.rows[1].edges <= report.rows[0].edges);
  CHECK(report.rows[1].visited <= report.rows[0].visited);
  CHECK(report.rows[1].inconsistent <= report.rows[0].inconsistent);
  REQUIRE(report.inclusion_ok.size() == 4);
  CHECK(report.inclusion_ok[0].has_value());
  CHECK(report.inclusion_ok[0].value());
}

TEST_CASE("a forced timeout is data, not an error") {
  BenchReport report =
      run_grid({ScenarioParams{2, 3, 3}}, 1, std::chrono::milliseconds(1));
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].timed_out);

  std::string csv = to_csv(report);
  CHECK(csv.find("inf") != std::string::npos);
}

TEST_CASE("csv output carries the documented columns") {
  BenchReport report = run_grid({ScenarioParams{1, 1, 1}}, 1, std::chrono::milliseconds(30000));
  std::string csv = to_csv(report, /*reference_columns=*/true);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "mng,emp,techdoc,algo,P,V,Inc,time_s,plans,redundant,timeout,ref_P,ref_V,ref_Inc,ref_time_s");
  std::string fp_row;
  std::getline(lines, fp_row);
  CHECK(fp_row.find("1,1,1,fp,") == 0);
  CHECK(fp_row.find(",17,13,") != std::string::npos);  // published reference columns
  std::string fpi_row;
  std::getline(lines, fpi_row);
  CHECK(fpi_row.find("1,1,1,abp-fpi,3,7,3,") == 0);

  BenchReport empty = run_grid({}, 1, std::chrono::milliseconds(10));
  std::string empty_csv = to_csv(empty);
  CHECK(empty_csv == "mng,emp,techdoc,algo,P,V,Inc,time_s,plans,redundant,timeout\n");
}

TEST_CASE("grid specs parse to the expected cells") {
  std::vector<ScenarioParams> grid = parse_grid_spec("mng=1..2,emp=1..3,doc=2");
  CHECK(grid.size() == 6);
  CHECK(grid.front() == ScenarioParams{1, 1, 2});
  CHECK(grid.back() == ScenarioParams{2, 3, 2});
  CHECK(parse_grid_spec("").empty());
  CHECK(parse_grid_spec("table1").size() == 7);  // the published cells
  CHECK_THROWS_AS(parse_grid_spec("mng=1"), Error);
  CHECK_THROWS_AS(parse_grid_spec("mng=2..1,emp=1,doc=1"), Error);
}
