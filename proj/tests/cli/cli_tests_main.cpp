// CLI integration checks: runs the built binary against fixture files and
// compares output and exit codes with direct library results.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dkbplan/casegen.hpp"
#include "dkbplan/parser.hpp"
#include "dkbplan/planner_fp.hpp"
#include "dkbplan/reasoner.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "[ok] " << what << "\n";
  } else {
    ++g_failures;
    std::cout << "[FAIL] " << what << "\n";
  }
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& command) {
  std::string wrapped = command + " 2>&1";
  FILE* pipe = popen(wrapped.c_str(), "r");
  if (!pipe) return {127, "popen failed"};
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  return {code, output};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_tests <dkbplan-binary> <data-dir>\n";
    return 2;
  }
  std::string binary = argv[1];
  fs::path data_dir = argv[2];
  fs::path scratch = fs::temp_directory_path() / "dkbplan_cli_tests";
  fs::create_directories(scratch);

  fs::path fixture = data_dir / "case_study.kb";
  check(fs::exists(fixture), "fixture file exists: " + fixture.string());

  // The shipped fixture parses to the builtin case study.
  {
    dkb::ProblemSpec from_file = dkb::parse_kb_file(fixture.string());
    check(from_file == dkb::appendix_fixture(), "fixture file matches the builtin case study");
  }

  // check: consistent fixture, exit 0.
  {
    RunResult r = run(binary + " check " + fixture.string());
    check(r.exit_code == 0, "check exits 0 on the fixture");
    check(contains(r.output, "consistent"), "check prints 'consistent'");
  }

  // check: doctored fixture is inconsistent with a witness, exit 2.
  {
    fs::path bad = scratch / "inconsistent.kb";
    std::ifstream in(fixture);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::string marker = "[abox]";
    text.insert(text.find(marker) + marker.size(), "\nManager(e002)");
    std::ofstream out(bad);
    out << text;
    out.close();
    RunResult r = run(binary + " check " + bad.string());
    check(r.exit_code == 2, "check exits 2 on the doctored fixture");
    check(contains(r.output, "inconsistent: Technician <= not Manager at e002"),
          "check names the violated axiom and witness");
  }

  // check: missing file, exit 1.
  {
    RunResult r = run(binary + " check " + (scratch / "no_such.kb").string());
    check(r.exit_code == 1, "check exits 1 on a missing file");
  }

  // query: the appoint guard over the fixture has two answers.
  {
    RunResult r = run(binary + " query " + fixture.string() +
                      " 'Manager(?x), canManage(?y,?z)'");
    check(r.exit_code == 0, "query exits 0");
    check(contains(r.output, "1 answer(s)"), "fixture guard has one answer");
    check(contains(r.output, "{?x->e001, ?y->e002, ?z->d001}"), "query prints the binding row");

    RunResult ground = run(binary + " query " + fixture.string() + " 'Manager(e001)'");
    check(ground.exit_code == 0, "ground query exits 0");
    check(contains(ground.output, "{}"), "ground query prints one empty binding");

    RunResult none = run(binary + " query " + fixture.string() + " 'Greeted(?x)'");
    check(none.exit_code == 0, "unsatisfied query exits 0");
    check(contains(none.output, "0 answer(s)"), "unsatisfied query prints zero rows");

    RunResult inconsistent =
        run(binary + " query " + (scratch / "inconsistent.kb").string() + " 'Manager(?x)'");
    check(inconsistent.exit_code == 2, "query exits 2 on an inconsistent KB");

    RunResult bad_query = run(binary + " query " + fixture.string() + " 'Manager(?x'");
    check(bad_query.exit_code == 1, "query exits 1 on a parse error");
  }

  // plan: fp on the generated 1/1/1 scenario.
  {
    fs::path small = scratch / "one_one_one.kb";
    std::ofstream out(small);
    out << dkb::serialize_kb(dkb::generate(dkb::ScenarioParams{1, 1, 1}));
    out.close();

    fs::path dot = scratch / "graph.dot";
    RunResult r = run(binary + " plan " + small.string() + " --algo fp --out " + dot.string());
    check(r.exit_code == 0, "plan exits 0 when a plan exists");
    check(contains(r.output, "plans=1"), "plan reports one plan");
    check(contains(r.output, "|P|=3"), "plan reports three edges");
    check(fs::exists(dot), "plan writes the DOT file");

    // CLI output equals the direct library run.
    dkb::PlanningProblem problem = dkb::make_problem(dkb::parse_kb_file(small.string()));
    dkb::Reasoner reasoner(problem.dkb.tbox, dkb::default_depth_bound(problem));
    auto [graph, metrics] = dkb::forward_plan(reasoner, problem);
    std::ostringstream expected;
    expected << "|P|=" << metrics.edges << " |V|=" << metrics.visited
             << " Inc=" << metrics.inconsistent;
    check(contains(r.output, expected.str()), "plan summary matches the library metrics");

    RunResult abp = run(binary + " plan " + small.string() + " --algo abp-fpi --format json --out " +
                        (scratch / "graph.json").string());
    check(abp.exit_code == 0, "abp-fpi plan exits 0");
    check(fs::exists(scratch / "graph.json"), "abp-fpi writes the instantiated graph");
    check(fs::exists(scratch / "graph.json.abstract"), "abp-fpi writes the abstract graph");
    check(contains(abp.output, "|P|=3 |V|=7 Inc=3"), "abp-fpi reports the published counts");
  }

  // plan: goal satisfied initially means no plans, exit 3.
  {
    fs::path trivial = scratch / "goal_at_start.kb";
    std::ofstream out(trivial);
    out << "[abox]\nC(a)\n[actions]\nact(?x) : C(?x) => D(?x)\n[goal]\nC(?x)\n";
    out.close();
    RunResult r = run(binary + " plan " + trivial.string());
    check(r.exit_code == 3, "plan exits 3 when no plan exists");
    check(contains(r.output, "plans=0"), "plan reports zero plans");
  }

  // export: writes files without the plan summary, exit 0.
  {
    fs::path small = scratch / "one_one_one.kb";
    fs::path dot = scratch / "export.dot";
    RunResult r = run(binary + " export " + small.string() + " --out " + dot.string());
    check(r.exit_code == 0, "export exits 0");
    check(fs::exists(dot), "export writes the graph file");
    check(!contains(r.output, "|P|="), "export prints no summary");
  }

  // bench: a tiny grid with reference columns.
  {
    fs::path csv = scratch / "bench.csv";
    RunResult r = run(binary + " bench --grid mng=1..1,emp=1..1,doc=1..2 --reps 1 --timeout-s 60" +
                      std::string(" --ref --out ") + csv.string());
    check(r.exit_code == 0, "bench exits 0");
    std::ifstream in(csv);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    check(contains(content, "mng,emp,techdoc,algo,P,V,Inc,time_s,plans,redundant,timeout,ref_P"),
          "bench CSV carries the documented header");
    check(contains(content, "1,1,1,abp-fpi,3,7,3,"), "bench CSV carries the 1/1/1 fpi row");
    check(contains(content, "1,1,2,"), "bench CSV carries the 1/1/2 cell");

    RunResult forced = run(binary +
                           " bench --grid mng=2..2,emp=3..3,doc=3..3 --reps 1 --timeout-s 0.001");
    check(forced.exit_code == 0, "bench tolerates forced timeouts");
    check(contains(forced.output, "inf"), "forced timeout marked in the CSV");
  }

  // bench: empty grid gives just the header.
  {
    RunResult r = run(binary + " bench --grid '' --reps 1");
    check(r.exit_code == 0, "bench on an empty grid exits 0");
    check(contains(r.output, "mng,emp,techdoc,algo"), "empty grid still prints the header");
  }

  if (g_failures == 0) {
    std::cout << "CLI: all checks passed\n";
    return 0;
  }
  std::cout << "CLI: " << g_failures << " check(s) failed\n";
  return 1;
}
