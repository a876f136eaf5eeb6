#pragma once

#include "dgc/groebner.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgc {

inline constexpr const char* kReportSchema = "dgc-report/1";

enum class TaskKind { rigid, hp, invariants, infinitesimal, tube_identity, spectral_radius };
std::string to_string(TaskKind k);
TaskKind task_kind_from_string(const std::string& s);

struct TaskError : std::runtime_error {
    int line = 0, column = 0;
    TaskError(const std::string& msg, int l = 0, int c = 0)
        : std::runtime_error(l ? msg + " at line " + std::to_string(l) + ", column " +
                                     std::to_string(c)
                               : msg),
          line(l), column(c) {}
};

struct FormWitness {
    std::string coefficient;   // polynomial a
    std::string differential;  // variable z, the form is a dz
};

struct TubeCase {
    std::vector<std::string> names;
    std::vector<std::string> J;
    std::vector<int> levels;
    int transitions_m_max = 3;
};

struct InfinitesimalCase {
    std::vector<std::string> names;
    std::vector<std::string> relations;
    std::vector<std::string> J;
    int k = 6;
};

struct TaskSpec {
    std::string name;
    std::string description;
    TaskKind kind = TaskKind::rigid;

    long p = 5;
    int N = 3;
    std::vector<int> caps{20, 24, 28};
    int delta = 12;
    int m_max = 3;
    int window = 3;
    std::vector<std::string> backends{"padic"};

    // algebra over F_p, relations lifted to Z
    std::vector<std::string> names;
    std::vector<std::string> relations;
    std::vector<int> weights;
    std::vector<std::string> order;
    std::vector<std::vector<std::string>> alt_orders;
    std::vector<FormWitness> witnesses;
    int holim_cap = 6;

    std::vector<TubeCase> tube_cases;
    int tube_D = 10;

    std::vector<InfinitesimalCase> inf_cases;

    // spectral radius: spans in one variable model
    std::vector<std::vector<std::string>> spans;
    std::vector<int> js{0, 1, 2};
    std::vector<int> cs{1, 2, 3};
    int n_max = 24;

    std::vector<std::string> suites;
    uint64_t seed = 1;
    int chains = 100;
    int algebras = 5;

    std::optional<std::vector<int>> expect_betti;
    std::optional<std::vector<int>> expect_hp;

    GBBudget budget;

    void validate() const;
    nlohmann::json echo() const;
};

TaskSpec parse_task(const std::string& text, const std::string& source = "task");
TaskSpec load_task(const std::string& path);

// DGC_BUDGET_PAIRS and DGC_BUDGET_DEGREE override the task budget
void apply_budget_env(GBBudget& b);

struct RunOutcome {
    nlohmann::json report;  // deterministic payload
    nlohmann::json timing;  // wall-clock per stage
    bool invariants_ok = true;
    bool resolved = true;
};

RunOutcome run_task(const TaskSpec& spec, const std::string& backend_override = "");

// exit status: nonzero iff an invariant fails, or a degree is unresolved under strict
int exit_status(const RunOutcome& r, bool strict);

std::string dump_report(const nlohmann::json& j);

}  // namespace dgc
