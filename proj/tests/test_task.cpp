#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgc/task.hpp"

#include <cstdlib>

using namespace dgc;

TEST_CASE("parse a rigid task")
{
    TaskSpec t = parse_task(R"(
name = "gm"
kind = "hp"
p = 5
backend = "both"
[algebra]
names = ["t", "u"]
relations = ["t*u - 1"]
[expect]
betti = [1, 1, 0]
)");
    CHECK(t.name == "gm");
    CHECK(t.kind == TaskKind::hp);
    CHECK(t.names == std::vector<std::string>{"t", "u"});
    CHECK(t.backends.size() == 2);
    CHECK(t.expect_betti == std::vector<int>{1, 1, 0});
    CHECK(t.caps == std::vector<int>{20, 24, 28});
}

TEST_CASE("polynomial syntax errors carry a position")
{
    try {
        parse_task("name = \"bad\"\nkind = \"rigid\"\n[algebra]\nnames = [\"x\"]\nrelations = [\"x^^2\"]\n");
        FAIL("expected a TaskError");
    } catch (const TaskError& e) {
        CHECK(e.line == 5);
        CHECK(e.column > 0);
    }
}

TEST_CASE("toml syntax errors carry a position")
{
    try {
        parse_task("name = \"bad\"\nkind = = 1\n");
        FAIL("expected a TaskError");
    } catch (const TaskError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("validation errors")
{
    CHECK_THROWS_AS(parse_task("name = \"x\"\nkind = \"nonsense\"\n"), TaskError);
    CHECK_THROWS_AS(parse_task("name = \"x\"\nkind = \"rigid\"\np = 6\n"), TaskError);
    CHECK_THROWS_AS(parse_task("name = \"x\"\nkind = \"rigid\"\nbackend = \"float\"\n"), TaskError);
    CHECK_THROWS_AS(load_task("/nonexistent/task.toml"), TaskError);
}

TEST_CASE("budget environment override")
{
    GBBudget b;
    setenv("DGC_BUDGET_PAIRS", "17", 1);
    setenv("DGC_BUDGET_DEGREE", "9", 1);
    apply_budget_env(b);
    CHECK(b.max_pairs == 17);
    CHECK(b.max_degree == 9);
    unsetenv("DGC_BUDGET_PAIRS");
    unsetenv("DGC_BUDGET_DEGREE");
}

TEST_CASE("run the point task deterministically")
{
    TaskSpec t = parse_task("name = \"point\"\nkind = \"rigid\"\nbackend = \"both\"\n[algebra]\nnames = []\nrelations = []\n[expect]\nbetti = [1]\n");
    RunOutcome a = run_task(t), b = run_task(t);
    CHECK(a.invariants_ok);
    CHECK(a.resolved);
    CHECK(dump_report(a.report) == dump_report(b.report));
    CHECK(a.report["schema"] == "dgc-report/1");
    CHECK(exit_status(a, true) == 0);
    RunOutcome bad = a;
    bad.invariants_ok = false;
    CHECK(exit_status(bad, false) == 1);
    RunOutcome open = a;
    open.resolved = false;
    CHECK(exit_status(open, false) == 0);
    CHECK(exit_status(open, true) == 2);
}
