#include "dgc/task.hpp"

#include "dgc/completions.hpp"
#include "dgc/cyclic.hpp"
#include "dgc/derham.hpp"
#include "dgc/tubes.hpp"

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace dgc {

using nlohmann::json;

std::string to_string(TaskKind k)
{
    switch (k) {
    case TaskKind::rigid:
        return "rigid";
    case TaskKind::hp:
        return "hp";
    case TaskKind::invariants:
        return "invariants";
    case TaskKind::infinitesimal:
        return "infinitesimal";
    case TaskKind::tube_identity:
        return "tube-identity";
    case TaskKind::spectral_radius:
        return "spectral-radius";
    }
    return "?";
}

TaskKind task_kind_from_string(const std::string& s)
{
    for (auto k : {TaskKind::rigid, TaskKind::hp, TaskKind::invariants, TaskKind::infinitesimal,
                   TaskKind::tube_identity, TaskKind::spectral_radius})
        if (to_string(k) == s)
            return k;
    throw TaskError("unknown task kind '" + s + "'");
}

// ---------------- parsing ----------------

namespace {

TaskError at(const toml::node& n, const std::string& msg)
{
    auto& s = n.source();
    return TaskError(msg, static_cast<int>(s.begin.line), static_cast<int>(s.begin.column));
}

template <class T>
T get_scalar(const toml::table& t, const char* key, T def)
{
    const toml::node* n = t.get(key);
    if (!n)
        return def;
    if constexpr (std::is_same_v<T, std::string>) {
        if (!n->is_string())
            throw at(*n, std::string("'") + key + "' must be a string");
        return **n->as_string();
    } else {
        if (!n->is_integer())
            throw at(*n, std::string("'") + key + "' must be an integer");
        return static_cast<T>(**n->as_integer());
    }
}

std::vector<std::string> get_strings(const toml::table& t, const char* key,
                                     std::vector<std::string> def = {})
{
    const toml::node* n = t.get(key);
    if (!n)
        return def;
    auto* a = n->as_array();
    if (!a)
        throw at(*n, std::string("'") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (auto& e : *a) {
        if (!e.is_string())
            throw at(e, std::string("'") + key + "' must contain strings");
        out.push_back(**e.as_string());
    }
    return out;
}

std::vector<int> get_ints(const toml::table& t, const char* key, std::vector<int> def = {})
{
    const toml::node* n = t.get(key);
    if (!n)
        return def;
    auto* a = n->as_array();
    if (!a)
        throw at(*n, std::string("'") + key + "' must be an array of integers");
    std::vector<int> out;
    for (auto& e : *a) {
        if (!e.is_integer())
            throw at(e, std::string("'") + key + "' must contain integers");
        out.push_back(static_cast<int>(**e.as_integer()));
    }
    return out;
}

std::vector<std::vector<std::string>> get_string_lists(const toml::table& t, const char* key)
{
    std::vector<std::vector<std::string>> out;
    const toml::node* n = t.get(key);
    if (!n)
        return out;
    auto* a = n->as_array();
    if (!a)
        throw at(*n, std::string("'") + key + "' must be an array of arrays");
    for (auto& e : *a) {
        auto* inner = e.as_array();
        if (!inner)
            throw at(e, std::string("'") + key + "' must contain arrays");
        std::vector<std::string> v;
        for (auto& s : *inner) {
            if (!s.is_string())
                throw at(s, std::string("'") + key + "' must contain strings");
            v.push_back(**s.as_string());
        }
        out.push_back(v);
    }
    return out;
}

const toml::table* subtable(const toml::table& t, const char* key)
{
    const toml::node* n = t.get(key);
    if (!n)
        return nullptr;
    if (!n->is_table())
        throw at(*n, std::string("'") + key + "' must be a table");
    return n->as_table();
}

// parse every polynomial of a string array, reporting the position on failure
void check_polys(const toml::table& t, const char* key, const std::vector<std::string>& names)
{
    const toml::node* n = t.get(key);
    if (!n)
        return;
    for (auto& e : *n->as_array()) {
        try {
            parse_poly(**e.as_string(), names);
        } catch (const ParseError& err) {
            auto& s = e.source();
            throw TaskError(std::string(key) + ": " + err.what() + " (offset " +
                                std::to_string(err.pos) + " in \"" + **e.as_string() + "\")",
                            static_cast<int>(s.begin.line), static_cast<int>(s.begin.column));
        }
    }
}

}  // namespace

void TaskSpec::validate() const
{
    if (!is_prime(p))
        throw TaskError("p must be prime");
    if (N <= 0 || delta < 0 || m_max <= 0 || window < 2)
        throw TaskError("N, m_max must be positive, delta >= 0 and window >= 2");
    if (caps.empty())
        throw TaskError("the cap list is empty");
    for (size_t i = 1; i < caps.size(); ++i)
        if (caps[i] <= caps[i - 1])
            throw TaskError("caps must be strictly increasing");
    for (auto& b : backends)
        if (b != "rational" && b != "padic")
            throw TaskError("unknown backend '" + b + "'");
    if (!weights.empty() && weights.size() != names.size())
        throw TaskError("weights must match the variables");
    for (int w : weights)
        if (w <= 0)
            throw TaskError("weights must be positive");
    auto check_order = [&](const std::vector<std::string>& o) {
        if (o.empty())
            return;
        auto a = o, b = names;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw TaskError("an order must list every variable once");
    };
    check_order(order);
    for (auto& o : alt_orders)
        check_order(o);
}

json TaskSpec::echo() const
{
    json j;
    j["name"] = name;
    j["description"] = description;
    j["kind"] = to_string(kind);
    j["p"] = p;
    switch (kind) {
    case TaskKind::rigid:
    case TaskKind::hp:
        j["N"] = N;
        j["caps"] = caps;
        j["delta"] = delta;
        j["m_max"] = m_max;
        j["window"] = window;
        j["backends"] = backends;
        j["names"] = names;
        j["relations"] = relations;
        j["weights"] = weights;
        j["order"] = order;
        j["alt_orders"] = alt_orders;
        j["holim_cap"] = holim_cap;
        break;
    case TaskKind::infinitesimal:
        j["caps"] = caps;
        for (auto& c : inf_cases)
            j["cases"].push_back({{"names", c.names}, {"relations", c.relations}, {"J", c.J},
                                  {"k", c.k}});
        break;
    case TaskKind::tube_identity:
        j["D"] = tube_D;
        for (auto& c : tube_cases)
            j["cases"].push_back({{"names", c.names}, {"J", c.J}, {"levels", c.levels},
                                  {"transitions_m_max", c.transitions_m_max}});
        break;
    case TaskKind::spectral_radius:
        j["spans"] = spans;
        j["js"] = js;
        j["cs"] = cs;
        j["n_max"] = n_max;
        break;
    case TaskKind::invariants:
        j["suites"] = suites;
        j["seed"] = seed;
        j["chains"] = chains;
        j["algebras"] = algebras;
        break;
    }
    j["budget"] = {{"max_degree", budget.max_degree}, {"max_pairs", budget.max_pairs}};
    return j;
}

TaskSpec parse_task(const std::string& text, const std::string& source)
{
    toml::table t;
    try {
        t = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        throw TaskError(std::string(e.description()), static_cast<int>(e.source().begin.line),
                        static_cast<int>(e.source().begin.column));
    }
    TaskSpec s;
    s.name = get_scalar<std::string>(t, "name", source);
    s.description = get_scalar<std::string>(t, "description", "");
    s.kind = task_kind_from_string(get_scalar<std::string>(t, "kind", "rigid"));
    s.p = get_scalar<long>(t, "p", s.p);
    s.N = get_scalar<int>(t, "N", s.N);
    s.caps = get_ints(t, "caps", s.caps);
    s.delta = get_scalar<int>(t, "delta", s.delta);
    s.m_max = get_scalar<int>(t, "m_max", s.m_max);
    s.window = get_scalar<int>(t, "window", s.window);
    std::string backend = get_scalar<std::string>(t, "backend", "padic");
    s.backends = backend == "both" ? std::vector<std::string>{"rational", "padic"}
                                   : std::vector<std::string>{backend};
    s.holim_cap = get_scalar<int>(t, "holim_cap", s.holim_cap);

    if (auto* a = subtable(t, "algebra")) {
        s.names = get_strings(*a, "names");
        s.relations = get_strings(*a, "relations");
        check_polys(*a, "relations", s.names);
        s.weights = get_ints(*a, "weights");
        s.order = get_strings(*a, "order");
        s.alt_orders = get_string_lists(*a, "alt_orders");
    }
    if (const toml::node* w = t.get("witness")) {
        auto* arr = w->as_array();
        if (!arr)
            throw at(*w, "'witness' must be an array of tables");
        for (auto& e : *arr) {
            auto* wt = e.as_table();
            if (!wt)
                throw at(e, "'witness' entries must be tables");
            FormWitness f{get_scalar<std::string>(*wt, "coefficient", "1"),
                          get_scalar<std::string>(*wt, "differential", "")};
            if (std::find(s.names.begin(), s.names.end(), f.differential) == s.names.end())
                throw at(e, "witness differential must be a variable");
            try {
                parse_poly(f.coefficient, s.names);
            } catch (const ParseError& err) {
                throw at(e, std::string("witness coefficient: ") + err.what());
            }
            s.witnesses.push_back(f);
        }
    }
    if (const toml::node* c = t.get("case")) {
        auto* arr = c->as_array();
        if (!arr)
            throw at(*c, "'case' must be an array of tables");
        for (auto& e : *arr) {
            auto* ct = e.as_table();
            if (!ct)
                throw at(e, "'case' entries must be tables");
            if (s.kind == TaskKind::tube_identity) {
                TubeCase tc;
                tc.names = get_strings(*ct, "names");
                tc.J = get_strings(*ct, "J");
                auto fn = tc.names;
                fn.push_back("p");
                check_polys(*ct, "J", fn);
                tc.levels = get_ints(*ct, "levels", {2});
                tc.transitions_m_max = get_scalar<int>(*ct, "transitions_m_max", 3);
                s.tube_cases.push_back(tc);
            } else {
                InfinitesimalCase ic;
                ic.names = get_strings(*ct, "names");
                ic.relations = get_strings(*ct, "relations");
                ic.J = get_strings(*ct, "J");
                check_polys(*ct, "relations", ic.names);
                check_polys(*ct, "J", ic.names);
                ic.k = get_scalar<int>(*ct, "k", 6);
                s.inf_cases.push_back(ic);
            }
        }
    }
    s.tube_D = get_scalar<int>(t, "D", s.tube_D);
    s.spans = get_string_lists(t, "spans");
    for (auto& sp : s.spans)
        for (auto& g : sp)
            try {
                parse_poly(g, {"x"});
            } catch (const ParseError& err) {
                throw TaskError("spans: " + std::string(err.what()) + " in \"" + g + "\"");
            }
    s.js = get_ints(t, "js", s.js);
    s.cs = get_ints(t, "cs", s.cs);
    s.n_max = get_scalar<int>(t, "n_max", s.n_max);
    s.suites = get_strings(t, "suites");
    s.seed = get_scalar<uint64_t>(t, "seed", s.seed);
    s.chains = get_scalar<int>(t, "chains", s.chains);
    s.algebras = get_scalar<int>(t, "algebras", s.algebras);
    if (auto* e = subtable(t, "expect")) {
        if (e->contains("betti"))
            s.expect_betti = get_ints(*e, "betti");
        if (e->contains("hp"))
            s.expect_hp = get_ints(*e, "hp");
    }
    if (auto* b = subtable(t, "budget")) {
        s.budget.max_degree = get_scalar<int>(*b, "max_degree", s.budget.max_degree);
        s.budget.max_pairs = get_scalar<long>(*b, "max_pairs", s.budget.max_pairs);
    }
    apply_budget_env(s.budget);
    s.validate();
    return s;
}

TaskSpec load_task(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw TaskError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path.substr(path.find_last_of('/') + 1);
    stem = stem.substr(0, stem.find('.'));
    TaskSpec s = parse_task(ss.str(), stem);
    return s;
}

void apply_budget_env(GBBudget& b)
{
    if (const char* v = std::getenv("DGC_BUDGET_PAIRS"))
        b.max_pairs = std::stol(v);
    if (const char* v = std::getenv("DGC_BUDGET_DEGREE"))
        b.max_degree = std::stoi(v);
}

// ---------------- running ----------------

namespace {

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

json betti_json(const std::vector<std::optional<int>>& v)
{
    json j = json::array();
    for (auto& x : v)
        j.push_back(x ? json(*x) : json(nullptr));
    return j;
}

std::vector<int> precedence_of(const std::vector<std::string>& order,
                               const std::vector<std::string>& names)
{
    std::vector<int> perm;
    for (auto& o : order)
        perm.push_back(static_cast<int>(std::find(names.begin(), names.end(), o) - names.begin()));
    return perm;
}

LatticeModel make_lattice(const TaskSpec& s, const std::vector<std::string>& order)
{
    std::vector<Poly> rels;
    for (auto& r : s.relations)
        rels.push_back(parse_poly(r, s.names));
    if (s.weights.empty() && order.empty())
        return LatticeModel::with_search(s.names, rels, s.p);
    LatticeOptions o;
    o.weights = s.weights;
    o.precedence = precedence_of(order, s.names);
    return LatticeModel(s.names, rels, s.p, o);
}

json report_json(const BettiReport& R)
{
    json j;
    j["caps"] = R.caps;
    j["m_max"] = R.m_max;
    j["window"] = R.window;
    json cells = json::array();
    for (auto& c : R.cells)
        cells.push_back({{"D", c.D},
                         {"m", c.m},
                         {"betti", c.betti},
                         {"min_pivot_valuation",
                          c.min_pivot_val == kValInf ? json(nullptr) : json(c.min_pivot_val)},
                         {"max_pivot_valuation", c.max_pivot_val}});
    j["cells"] = cells;
    j["stable"] = betti_json(R.stable);
    j["resolved"] = R.resolved();
    return j;
}

bool matches(const std::vector<std::optional<int>>& got, const std::vector<int>& want)
{
    size_t n = std::max(got.size(), want.size());
    for (size_t i = 0; i < n; ++i) {
        int w = i < want.size() ? want[i] : 0;
        if (i >= got.size() || !got[i] || *got[i] != w)
            return false;
    }
    return true;
}

void run_rigid(const TaskSpec& s, const std::string& backend_override, RunOutcome& out)
{
    json& r = out.report["result"];
    json& tm = out.timing;
    auto backends = s.backends;
    if (backend_override == "both")
        backends = {"rational", "padic"};
    else if (!backend_override.empty())
        backends = {backend_override};

    LatticeModel L = make_lattice(s, s.order);
    {
        auto& o = L.options();
        std::vector<std::string> ord;
        for (int v : o.precedence)
            ord.push_back(s.names[v]);
        r["model"] = {{"weights", o.weights}, {"order", ord}};
    }
    RigidParams P;
    P.p = s.p;
    P.N = s.N;
    P.caps = s.caps;
    P.delta = s.delta;
    P.m_max = s.m_max;
    P.window = s.window;

    std::vector<BettiReport> reports;
    for (auto& b : backends) {
        P.backend = backend_from_string(b);
        auto t0 = Clock::now();
        reports.push_back(rigid_betti(L, P));
        r["backends"][b] = report_json(reports.back());
        json cells = json::array();
        for (auto& c : reports.back().cells)
            cells.push_back({{"D", c.D}, {"m", c.m}, {"seconds", c.seconds}});
        tm["rigid"][b] = {{"seconds", since(t0)}, {"cells", cells}};
    }
    const BettiReport& R = reports.front();
    r["betti"] = betti_json(R.stable);
    out.resolved = R.resolved();

    // agreement of certified ranks between backends
    if (reports.size() > 1) {
        json table = json::array();
        bool all = true;
        for (size_t i = 0; i < R.cells.size(); ++i) {
            bool same = true;
            for (size_t k = 1; k < reports.size(); ++k)
                same = same && reports[k].cells[i].betti == R.cells[i].betti;
            all = all && same;
            table.push_back({{"D", R.cells[i].D}, {"m", R.cells[i].m}, {"agree", same}});
        }
        r["backend_agreement"] = {{"cells", table}, {"all", all}};
        out.invariants_ok = out.invariants_ok && all;
    }

    // same computation under other variable orders of the filtration
    if (!s.alt_orders.empty()) {
        json alt = json::array();
        bool all = true;
        bool has_padic = std::find(backends.begin(), backends.end(), "padic") != backends.end();
        P.backend = has_padic ? Backend::padic : backend_from_string(backends.front());
        for (auto& o : s.alt_orders) {
            auto t0 = Clock::now();
            LatticeModel L2 = make_lattice(s, o);
            BettiReport R2 = rigid_betti(L2, P);
            bool same = R2.resolved() && R2.stable == R.stable;
            all = all && same;
            alt.push_back({{"order", o}, {"betti", betti_json(R2.stable)}, {"agree", same}});
            tm["alt_orders"].push_back(since(t0));
        }
        r["order_independence"] = {{"orders", alt}, {"all", all}};
        out.invariants_ok = out.invariants_ok && all;
    }

    // H^1 witnesses: closed and not exact in the truncated algebraic de Rham complex
    if (!s.witnesses.empty()) {
        auto t0 = Clock::now();
        PresentedAlgebra A = PresentedAlgebra::parse(s.names, s.relations, s.budget);
        DifferentialModule M(A);
        json wl = json::array();
        for (auto& w : s.witnesses) {
            int j = static_cast<int>(std::find(s.names.begin(), s.names.end(), w.differential) -
                                     s.names.begin());
            Form form = M.wedge(M.function(A.parse_element(w.coefficient)),
                                M.dpoly(Poly::var(A.nvars(), j)));
            json caps = json::array();
            bool ok = true;
            for (int D : s.caps) {
                FiniteComplex C = M.complex(D);
                SpMat d0 = C.diff(0);
                auto v = M.coordinates(form, 1, D);
                SpMat aug(d0.rows, d0.cols + 1);
                for (int c = 0; c < d0.cols; ++c)
                    for (auto& [i, x] : d0.col[c])
                        aug.add(i, c, x);
                for (int i = 0; i < static_cast<int>(v.size()); ++i)
                    if (v[i] != 0)
                        aug.add(i, d0.cols, v[i]);
                aug.finalize();
                int r0 = rank(d0), r1 = rank(aug);
                bool closed = M.in_relation_module(M.d(form), 2, D);
                bool not_exact = r1 == r0 + 1;
                ok = ok && closed && not_exact;
                caps.push_back({{"D", D},
                                {"rank_d0", r0},
                                {"rank_augmented", r1},
                                {"closed", closed},
                                {"not_exact", not_exact}});
            }
            wl.push_back({{"form", w.coefficient + " d" + w.differential},
                          {"caps", caps},
                          {"ok", ok}});
            out.invariants_ok = out.invariants_ok && ok;
        }
        r["h1_witnesses"] = wl;
        tm["witnesses"] = since(t0);
    }

    // holim of the level pro-complex at a small cap
    {
        auto t0 = Clock::now();
        ProComplex PC = L.pro_complex(s.m_max, s.holim_cap);
        auto checks = holim_bookkeeping(PC);
        json hl = json::array();
        bool ok = true;
        for (auto& c : checks) {
            ok = ok && c.ok;
            hl.push_back({{"degree", c.degree},
                          {"holim", c.holim_dim},
                          {"lim", c.lim},
                          {"lim1_next", c.lim1_prev},
                          {"ok", c.ok}});
        }
        r["holim"] = {{"cap", s.holim_cap}, {"degrees", hl}, {"ok", ok}};
        out.invariants_ok = out.invariants_ok && ok;
        tm["holim"] = since(t0);
    }

    HPReport hp = hp_report(R);
    r["hp"] = {{"HP0", hp.hp0 ? json(*hp.hp0) : json(nullptr)},
               {"HP1", hp.hp1 ? json(*hp.hp1) : json(nullptr)}};

    json expect;
    if (s.expect_betti) {
        bool ok = matches(R.stable, *s.expect_betti);
        expect["betti"] = {{"expected", *s.expect_betti}, {"ok", ok}};
        out.invariants_ok = out.invariants_ok && ok;
    }
    if (s.expect_hp) {
        bool ok = hp.resolved() && s.expect_hp->size() == 2 && *hp.hp0 == (*s.expect_hp)[0] &&
                  *hp.hp1 == (*s.expect_hp)[1];
        expect["hp"] = {{"expected", *s.expect_hp}, {"ok", ok}};
        out.invariants_ok = out.invariants_ok && ok;
    }
    if (!expect.is_null())
        r["expect"] = expect;
}

void run_infinitesimal(const TaskSpec& s, RunOutcome& out)
{
    json cases = json::array();
    for (auto& c : s.inf_cases) {
        auto t0 = Clock::now();
        json caps = json::array();
        bool ok = true;
        // below the horizon the truncation itself creates classes
        int horizon = c.k - 1;
        for (int D : s.caps) {
            FiniteComplex C = infinitesimal_complex(c.names, c.relations, c.J, c.k, D, s.budget);
            auto h = homology_dims(C);
            bool expected = !h.empty() && h[0] == 1 &&
                            std::all_of(h.begin() + 1, h.end(), [](int v) { return v == 0; });
            bool checked = D >= horizon;
            if (checked)
                ok = ok && expected;
            caps.push_back({{"D", D},
                            {"dims", C.dims},
                            {"cohomology", h},
                            {"checked", checked},
                            {"ok", expected}});
        }
        cases.push_back({{"names", c.names},
                         {"J", c.J},
                         {"k", c.k},
                         {"horizon", horizon},
                         {"caps", caps},
                         {"ok", ok}});
        out.invariants_ok = out.invariants_ok && ok;
        out.timing["cases"].push_back(since(t0));
    }
    out.report["result"]["cases"] = cases;
}

void run_tubes(const TaskSpec& s, RunOutcome& out)
{
    json cases = json::array();
    for (auto& c : s.tube_cases) {
        auto t0 = Clock::now();
        TubeBase B = TubeBase::parse(c.names, c.J, s.p);
        json levels = json::array();
        bool ok = true;
        for (int m : c.levels) {
            auto rep = tube_identity_check(B, m, s.tube_D, s.budget);
            ok = ok && rep.ok();
            levels.push_back({{"m", m},
                              {"checked_left", rep.checked_left},
                              {"failed_left", rep.failed_left},
                              {"checked_right", rep.checked_right},
                              {"failed_right", rep.failed_right},
                              {"ok", rep.ok()}});
        }
        // transition lifts under the default order and the reversed order
        json trans = json::array();
        int n = B.nx() + 1;
        std::vector<int> rev(n);
        for (int i = 0; i < n; ++i)
            rev[i] = n - 1 - i;
        TubeSystem S1 = build_tube_system(B, c.transitions_m_max, {}, s.budget);
        TubeSystem S2 = build_tube_system(B, c.transitions_m_max, rev, s.budget);
        for (size_t k = 0; k < S1.transitions.size(); ++k) {
            auto& src = S1.levels[k + 1];
            auto& dst = S1.levels[k];
            bool h1 = is_homomorphism(S1.transitions[k], src, dst);
            bool h2 = is_homomorphism(S2.transitions[k], src, dst);
            bool identical = S1.transitions[k].images == S2.transitions[k].images;
            bool same = same_map(S1.transitions[k], S2.transitions[k], dst);
            ok = ok && h1 && h2 && same;
            json imgs = json::array();
            for (size_t i = 0; i < S1.transitions[k].images.size(); ++i)
                imgs.push_back({S1.transitions[k].images[i].str(dst.names),
                                S2.transitions[k].images[i].str(dst.names)});
            trans.push_back({{"from", S1.transitions[k].from},
                             {"to", S1.transitions[k].to},
                             {"homomorphism", {h1, h2}},
                             {"identical_lifts", identical},
                             {"agree_mod_relations", same},
                             {"images", imgs}});
        }
        if (S1.levels.size() >= 3) {
            auto direct = tube_transition(B, S1.levels[2], S1.levels[0], {}, s.budget);
            auto comp = compose(S1.transitions[0], S1.transitions[1], S1.levels[1]);
            bool same = same_map(direct, comp, S1.levels[0]);
            ok = ok && same;
            trans.push_back({{"from", 3}, {"to", 1}, {"composite_agrees", same}});
        }
        cases.push_back({{"names", c.names},
                         {"J", c.J},
                         {"levels", levels},
                         {"transitions", trans},
                         {"ok", ok}});
        out.invariants_ok = out.invariants_ok && ok;
        out.timing["cases"].push_back(since(t0));
    }
    out.report["result"]["cases"] = cases;
}

void run_spectral(const TaskSpec& s, RunOutcome& out)
{
    TruncationParams T;
    T.p = s.p;
    T.n_max = s.n_max;
    json rows = json::array();
    bool ok = true;
    auto t0 = Clock::now();
    for (auto& span : s.spans) {
        SubmoduleSpan M;
        for (auto& g : span)
            M.gens.push_back(parse_poly(g, {"x"}));
        auto base = spectral_radius_estimate(M, nullptr, T);
        json entries = json::array();
        for (int j : s.js)
            for (int c : s.cs) {
                SubmoduleSpan S;
                for (auto& g : ideal_power_generators(M.gens, c))
                    S.gens.push_back(g * Q(zpow(s.p, j)));
                auto e = spectral_radius_estimate(S, nullptr, T);
                bool law = base.exponent && e.exponent &&
                           *e.exponent == Q(j) + Q(c) * *base.exponent;
                ok = ok && law;
                entries.push_back({{"j", j},
                                   {"c", c},
                                   {"exponent", e.exponent ? json(e.exponent->get_str())
                                                           : json(nullptr)},
                                   {"law", law}});
            }
        rows.push_back({{"span", span},
                        {"exponent", base.exponent ? json(base.exponent->get_str())
                                                   : json(nullptr)},
                        {"depth", base.depth},
                        {"scaled", entries}});
    }
    out.report["result"]["spans"] = rows;
    out.report["result"]["ok"] = ok;
    out.invariants_ok = out.invariants_ok && ok;
    out.timing["spectral"] = since(t0);
}

// ---- invariant suites ----

struct Rng {
    std::mt19937_64 g;
    explicit Rng(uint64_t seed) : g(seed) {}
    int below(int n) { return static_cast<int>(g() % static_cast<uint64_t>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }
};

Poly random_poly(Rng& R, int nv, int maxdeg, int terms, bool allow_const = true)
{
    Poly f(nv);
    for (int k = 0; k < terms; ++k) {
        Mono m(nv, 0);
        int d = R.range(allow_const ? 0 : 1, maxdeg);
        for (int i = 0; i < d; ++i)
            ++m[R.below(nv)];
        int c = R.range(-3, 3);
        if (c == 0)
            c = 1;
        f.add_term(m, Q(c));
    }
    return f;
}

PresentedAlgebra random_algebra(Rng& R, const GBBudget& budget, std::string& label)
{
    for (;;) {
        int nv = R.range(1, 2);
        int nr = R.range(0, 2);
        auto names = default_names(nv);
        std::vector<Poly> rels;
        for (int i = 0; i < nr; ++i)
            rels.push_back(random_poly(R, nv, 3, R.range(1, 3), false));
        PresentedAlgebra A(names, rels, budget);
        if (A.is_zero_ring())
            continue;
        label.clear();
        for (auto& r : rels)
            label += (label.empty() ? "" : ", ") + r.str(names);
        label = "Q[" + names[0] + (nv > 1 ? "," + names[1] : "") + "]/(" + label + ")";
        return A;
    }
}

ChainElement random_chain(Rng& R, const HochschildComplex& H, int n)
{
    int nv = H.algebra().nvars();
    ChainElement x;
    x.n = n;
    int terms = R.range(1, 3);
    for (int k = 0; k < terms; ++k) {
        std::vector<Poly> e;
        for (int i = 0; i <= n; ++i)
            e.push_back(random_poly(R, nv, 2, R.range(1, 2)));
        x = x + H.tensor(e) * Q(R.range(1, 3));
    }
    return x;
}

json suite_mixed_complex(const TaskSpec& s, bool& ok)
{
    Rng R(s.seed);
    json algs = json::array();
    int total = 0, failures = 0;
    int per = (s.chains + s.algebras - 1) / s.algebras;
    for (int a = 0; a < s.algebras; ++a) {
        std::string label;
        PresentedAlgebra A = random_algebra(R, s.budget, label);
        HochschildComplex H(A);
        int bad = 0;
        for (int k = 0; k < per; ++k) {
            int n = R.range(0, 4);
            ChainElement x = random_chain(R, H, n);
            bool good = H.b(H.b(x)).is_zero() && H.B(H.B(x)).is_zero() &&
                        (H.b(H.B(x)) + H.B(H.b(x))).is_zero() &&
                        H.bprime(H.s(x)) + H.s(H.bprime(x)) == x;
            if (!good)
                ++bad;
            ++total;
        }
        failures += bad;
        algs.push_back({{"algebra", label}, {"chains", per}, {"failures", bad}});
    }
    ok = failures == 0;
    return {{"algebras", algs}, {"chains", total}, {"failures", failures}, {"ok", ok}};
}

json suite_hkr(const TaskSpec& s, bool& ok)
{
    Rng R(s.seed + 1);
    ok = true;
    json out;
    int total = 0, bad = 0;
    for (int nv = 1; nv <= 3; ++nv) {
        PresentedAlgebra A(default_names(nv), {}, s.budget);
        HochschildComplex H(A);
        DifferentialModule M(A);
        for (int k = 0; k < 10; ++k) {
            int n = R.range(0, 4);
            ChainElement x = random_chain(R, H, n);
            bool good = H.hkr(H.B(x)) == M.d(H.hkr(x)) && H.hkr(H.b(x)).is_zero();
            ++total;
            if (!good)
                ++bad;
        }
    }
    out["random_chains"] = {{"chains", total}, {"failures", bad}};
    ok = bad == 0;
    PresentedAlgebra K1({"x"}, {}, s.budget);
    json graded = json::array();
    for (int d = 0; d <= 10; ++d) {
        auto hh = hh_graded_dims(K1, d, 3);
        auto om = form_graded_dims(K1, d);
        bool same = true;
        for (size_t i = 0; i < hh.size(); ++i)
            same = same && hh[i] == (i < om.size() ? om[i] : 0);
        ok = ok && same;
        graded.push_back({{"degree", d}, {"hh", hh}, {"forms", om}, {"agree", same}});
    }
    out["graded_K[x]"] = graded;
    out["ok"] = ok;
    return out;
}

json suite_witness(bool& ok)
{
    auto rep = completion_noninjectivity_witness(5, 6, 12);
    ok = rep.ok();
    int exact = 0, integral = 0;
    for (auto& r : rep.records) {
        exact += r.decomposition_exact;
        integral += r.remainder_integral;
    }
    return {{"p", rep.p},
            {"m_max", 6},
            {"n_max", 12},
            {"records", rep.records.size()},
            {"decomposition_exact", exact},
            {"remainder_integral", integral},
            {"ok", ok}};
}

json suite_dagger(const TaskSpec& s, bool& ok)
{
    Rng R(s.seed + 2);
    int total = 0, bad = 0;
    for (int k = 0; k < 50; ++k) {
        DaggerModelElement a, b;
        a.p = b.p = s.p;
        a.D = b.D = 12;
        a.c = R.range(1, 3);
        b.c = R.range(1, 3);
        // terms b x^i with the least valuation allowed by the estimate
        for (DaggerModelElement* e : {&a, &b}) {
            e->f = Poly(1);
            for (int i = 0; i <= 6; ++i) {
                Q need = Q(i) / e->c - 1;
                mpz_class v;
                mpz_cdiv_q(v.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
                int val = std::max(0, static_cast<int>(v.get_si())) + R.range(0, 1);
                e->f.add_term(Mono{i}, Q(zpow(s.p, val)) * R.range(1, 4));
            }
        }
        ++total;
        if (!a.estimate_holds() || !b.estimate_holds() || !(a * b).estimate_holds())
            ++bad;
    }
    ok = bad == 0;
    return {{"products", total}, {"failures", bad}, {"ok", ok}};
}

void run_invariants(const TaskSpec& s, RunOutcome& out)
{
    json res;
    for (auto& name : s.suites) {
        auto t0 = Clock::now();
        bool ok = false;
        if (name == "mixed-complex")
            res[name] = suite_mixed_complex(s, ok);
        else if (name == "hkr")
            res[name] = suite_hkr(s, ok);
        else if (name == "noninjective-completion")
            res[name] = suite_witness(ok);
        else if (name == "dagger-product")
            res[name] = suite_dagger(s, ok);
        else
            throw TaskError("unknown suite '" + name + "'");
        out.invariants_ok = out.invariants_ok && ok;
        out.timing["suites"][name] = since(t0);
    }
    out.report["result"] = res;
}

}  // namespace

RunOutcome run_task(const TaskSpec& spec, const std::string& backend_override)
{
    RunOutcome out;
    auto t0 = Clock::now();
    out.report["schema"] = kReportSchema;
    out.report["task"] = spec.echo();
    try {
        switch (spec.kind) {
        case TaskKind::rigid:
        case TaskKind::hp:
            run_rigid(spec, backend_override, out);
            break;
        case TaskKind::infinitesimal:
            run_infinitesimal(spec, out);
            break;
        case TaskKind::tube_identity:
            run_tubes(spec, out);
            break;
        case TaskKind::spectral_radius:
            run_spectral(spec, out);
            break;
        case TaskKind::invariants:
            run_invariants(spec, out);
            break;
        }
    } catch (const BudgetError& e) {
        out.report["error"] = {{"kind", "budget"}, {"stage", e.stage}, {"message", e.what()}};
        out.invariants_ok = false;
        out.resolved = false;
    }
    out.report["status"] = {{"invariants_ok", out.invariants_ok}, {"resolved", out.resolved}};
    out.timing["total_seconds"] = since(t0);
    return out;
}

int exit_status(const RunOutcome& r, bool strict)
{
    if (!r.invariants_ok)
        return 1;
    if (strict && !r.resolved)
        return 2;
    return 0;
}

std::string dump_report(const json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace dgc
