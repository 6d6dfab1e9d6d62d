#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "dkbplan/casegen.hpp"
#include "dkbplan/planner_fp.hpp"
#include "dkbplan/planner_fpi.hpp"

namespace dkb {

struct BenchRow {
  ScenarioParams params;
  std::string algorithm;  // "fp" or "abp-fpi"
  std::size_t edges = 0;
  std::size_t visited = 0;
  std::size_t inconsistent = 0;
  double mean_seconds = 0.0;
  std::size_t plans = 0;
  std::size_t redundant_plans = 0;
  bool plans_capped = false;
  bool timed_out = false;
  int paired_with = -1;  // index of the matching fp row for an abp-fpi row
};

struct BenchReport {
  std::vector<BenchRow> rows;
  // Per-cell verdict of plans(abp-fpi) subset-of plans(fp); absent when a
  // side timed out or plan enumeration was capped.
  std::vector<std::optional<bool>> inclusion_ok;
};

// Published reference counts for a scenario cell, when the cell is one of the
// grid rows reported in the original experiments.
struct ReferenceRow {
  int managers, employees, techdocs;
  std::size_t fp_edges, fp_visited, fp_inconsistent;
  double fp_seconds;  // negative = did not complete within 200 s
  std::size_t fpi_edges, fpi_visited, fpi_inconsistent;
  double fpi_seconds;
};
const std::vector<ReferenceRow>& reference_table();
const ReferenceRow* reference_for(const ScenarioParams& params);

// Runs both planners over every cell, `repetitions` times each with a cold
// reasoner cache, within `timeout` per run. Timeouts are recorded, not
// raised. Throws InvalidRepetitions when repetitions < 1.
BenchReport run_grid(const std::vector<ScenarioParams>& grid, int repetitions,
                     std::chrono::milliseconds timeout,
                     std::size_t plan_cap = 200000);

// CSV with one row per (cell, algorithm); `reference_columns` appends the
// published counts as reference columns where known.
std::string to_csv(const BenchReport& report, bool reference_columns = false);

struct RandomDkbBounds {
  int max_actions = 4;
  int max_constants = 6;
  int max_tbox_axioms = 8;
  int max_sj_axioms = 2;
  int retry_budget = 200;
};

// Deterministic-from-seed small planning problem with a consistent initial
// state and well-formed actions; rejection-samples until valid and throws
// GenerationExhausted past the retry budget.
PlanningProblem random_dkb(unsigned seed, const RandomDkbBounds& bounds = {});

struct InclusionVerdict {
  bool included = true;
  std::vector<Plan> missing_nonredundant;  // fp non-redundant plans absent from fpi
  std::set<Plan> plans_fp;
  std::set<Plan> plans_fpi;
};

// Computes both plan sets and checks plans(abp-fpi) subset-of plans(fp); the
// listed plans are the empirical completeness gap.
InclusionVerdict check_inclusion(const PlanningProblem& problem);

// Parses grid specs like "mng=1..2,emp=1..3,doc=2" into the cell list.
std::vector<ScenarioParams> parse_grid_spec(const std::string& spec);

}  // namespace dkb
