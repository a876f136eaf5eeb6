#include "dgc/tubes.hpp"

#include <functional>
#include <numeric>

namespace dgc {

TubeBase TubeBase::parse(const std::vector<std::string>& names, const std::vector<std::string>& J,
                         long p)
{
    TubeBase B;
    B.names = names;
    B.p = p;
    auto fn = B.formal_names();
    bool has_p = false;
    for (auto& g : J) {
        Poly f = parse_poly(g, fn);
        if (f == Poly::var(static_cast<int>(fn.size()), B.nx()))
            has_p = true;
        B.J.push_back(f);
    }
    if (!has_p)
        throw std::invalid_argument("the generators of J must contain p");
    return B;
}

std::vector<std::string> TubeBase::formal_names() const
{
    auto n = names;
    n.push_back("p");
    return n;
}

Poly TubeBase::numeric(const Poly& g, int extra) const
{
    int n = nx();
    Poly r(n + extra);
    for (auto& [m, c] : g.terms()) {
        Mono m2(n + extra, 0);
        for (int i = 0; i < n; ++i)
            m2[i] = m[i];
        r.add_term(m2, c * Q(zpow(p, m[n])));
    }
    return r;
}

int TubeBase::xdeg(const Poly& g) const
{
    int d = -1;
    for (auto& [m, c] : g.terms()) {
        int e = 0;
        for (int i = 0; i < nx(); ++i)
            e += m[i];
        d = std::max(d, e);
    }
    return d;
}

std::vector<TubeGenerator> tube_generators(const TubeBase& B, int i, int m)
{
    if (m <= 0 || i < 0 || i > m)
        throw std::invalid_argument("unsupported exponent: need 0 <= i/m <= 1");
    if (std::gcd(i, m) != 1 && !(i == 0 && m == 1))
        throw std::invalid_argument("exponent i/m must be in lowest terms");
    std::vector<TubeGenerator> out;
    int n = B.nx() + 1;
    for (int v = 0; v < B.nx(); ++v)
        out.push_back({Poly::var(n, v), 0});
    for (int l = 1; l <= i; ++l) {
        int k = (l * m + i - 1) / i;
        for (auto& g : ideal_power_generators(B.J, k))
            out.push_back({g, -l});
    }
    return out;
}

TubeLevel tube_level_presentation(const TubeBase& B, int m, const GBBudget& budget,
                                  int max_generators)
{
    TubeLevel L;
    L.m = m;
    L.gens = ideal_power_generators(B.J, m);
    int s = static_cast<int>(L.gens.size());
    if (s > max_generators)
        throw BudgetError("tube level", "J^" + std::to_string(m) + " needs " + std::to_string(s) +
                                            " generators");
    L.names = B.names;
    for (int k = 0; k < s; ++k)
        L.names.push_back("y" + std::to_string(k + 1));
    int n = B.nx() + s;
    std::vector<Poly> rels;
    for (int k = 0; k < s; ++k)
        rels.push_back(B.numeric(L.gens[k], s) - Poly::var(n, B.nx() + k) * Q(B.p));
    L.alg = PresentedAlgebra(L.names, rels, budget);
    return L;
}

TubeTransition tube_transition(const TubeBase& B, const TubeLevel& src, const TubeLevel& dst,
                               const std::vector<int>& perm, const GBBudget& budget)
{
    TubeTransition t;
    t.from = src.m;
    t.to = dst.m;
    int nd = dst.alg.nvars();
    for (int v = 0; v < B.nx(); ++v)
        t.images.push_back(Poly::var(nd, v));
    for (auto& g : src.gens) {
        auto c = lift_in_ideal(g, dst.gens, budget, perm);
        if (!c)
            throw BudgetError("transition", "generator " + g.str(B.formal_names()) +
                                                " of J^" + std::to_string(src.m) +
                                                " does not lift");
        Poly img(nd);
        for (size_t k = 0; k < c->size(); ++k)
            img += B.numeric((*c)[k], nd - B.nx()) * Poly::var(nd, B.nx() + static_cast<int>(k));
        t.images.push_back(img);
        t.cof.push_back(*c);
    }
    return t;
}

TubeTransition identity_transition(const TubeLevel& L)
{
    TubeTransition t;
    t.from = t.to = L.m;
    int n = L.alg.nvars();
    for (int v = 0; v < n; ++v)
        t.images.push_back(Poly::var(n, v));
    int s = static_cast<int>(L.gens.size());
    int nf = L.gens.empty() ? 0 : L.gens[0].nvars();
    for (int j = 0; j < s; ++j) {
        std::vector<Poly> row;
        for (int k = 0; k < s; ++k)
            row.push_back(j == k ? Poly::constant(nf, 1) : Poly(nf));
        t.cof.push_back(row);
    }
    return t;
}

TubeTransition compose(const TubeTransition& outer, const TubeTransition& inner,
                       const TubeLevel& mid)
{
    TubeTransition t;
    t.from = inner.from;
    t.to = outer.to;
    int nd = outer.images.empty() ? 0 : outer.images[0].nvars();
    for (auto& img : inner.images)
        t.images.push_back(img.substitute(outer.images, nd));
    size_t smid = mid.gens.size();
    for (auto& row : inner.cof) {
        std::vector<Poly> r;
        size_t sd = outer.cof.empty() ? 0 : outer.cof[0].size();
        int nf = row.empty() ? 0 : row[0].nvars();
        for (size_t k = 0; k < sd; ++k) {
            Poly acc(nf);
            for (size_t j = 0; j < smid; ++j)
                acc += row[j] * outer.cof[j][k];
            r.push_back(acc);
        }
        t.cof.push_back(r);
    }
    return t;
}

bool is_homomorphism(const TubeTransition& t, const TubeLevel& src, const TubeLevel& dst)
{
    for (auto& r : src.alg.relations())
        if (!dst.alg.nf(r.substitute(t.images, dst.alg.nvars())).is_zero())
            return false;
    return true;
}

bool same_map(const TubeTransition& a, const TubeTransition& b, const TubeLevel& dst)
{
    if (a.images.size() != b.images.size())
        return false;
    for (size_t i = 0; i < a.images.size(); ++i)
        if (!dst.alg.nf(a.images[i] - b.images[i]).is_zero())
            return false;
    return true;
}

TubeSystem build_tube_system(const TubeBase& B, int m_max, const std::vector<int>& perm,
                             const GBBudget& budget)
{
    TubeSystem S;
    S.base = B;
    for (int m = 1; m <= m_max; ++m)
        S.levels.push_back(tube_level_presentation(B, m, budget));
    for (int m = 1; m < m_max; ++m)
        S.transitions.push_back(tube_transition(B, S.levels[m], S.levels[m - 1], perm, budget));
    return S;
}

namespace {
bool p_integral(const Poly& f, long p)
{
    for (auto& [m, c] : f.terms())
        if (vp(Z(c.get_den()), p) > 0)
            return false;
    return true;
}
}  // namespace

bool in_generated_algebra(const TubeBase& B, const Poly& h, int a,
                          const std::vector<TubeGenerator>& gens, int D, const GBBudget& budget)
{
    if (a <= 0)
        return p_integral(h, B.p);
    int n = B.nx() + 1;
    std::vector<const TubeGenerator*> neg;
    for (auto& g : gens)
        if (g.exponent < 0)
            neg.push_back(&g);
    std::vector<Poly> ideal;
    Poly pi = Poly::var(n, B.nx());
    std::function<void(size_t, int, const Poly&)> rec = [&](size_t j, int used, const Poly& acc) {
        if (B.xdeg(acc) > D)
            return;
        if (j == neg.size()) {
            ideal.push_back(acc * pi.pow(a - used));
            return;
        }
        int l = -neg[j]->exponent;
        Poly cur = acc;
        for (int e = 0; used + e * l <= a; ++e) {
            rec(j + 1, used + e * l, cur);
            cur = cur * neg[j]->g;
            if (B.xdeg(cur) > D)
                break;
        }
    };
    rec(0, 0, Poly::constant(n, 1));
    auto c = lift_in_ideal(h, ideal, budget);
    if (!c)
        return false;
    for (auto& f : *c)
        if (!p_integral(f, B.p))
            return false;
    return true;
}

TubeIdentityReport tube_identity_check(const TubeBase& B, int m, int D, const GBBudget& budget)
{
    TubeIdentityReport rep;
    rep.m = m;
    rep.D = D;
    // algebra generators of T(R, J^m, 1): R and p^-1 J^m
    std::vector<TubeGenerator> right_gens;
    for (auto& g : ideal_power_generators(B.J, m))
        right_gens.push_back({g, -1});
    // algebra generators of T(R, J, 1/m): p^-floor(k/m) J^k, k < 2m
    std::vector<TubeGenerator> left_gens;
    for (int k = m; k < 2 * m; ++k)
        for (auto& g : ideal_power_generators(B.J, k))
            left_gens.push_back({g, -(k / m)});
    // p^-floor(n/m) J^n inside V[right_gens]
    for (int n = 1; n <= D; ++n)
        for (auto& g : ideal_power_generators(B.J, n)) {
            if (B.xdeg(g) > D)
                continue;
            ++rep.checked_left;
            if (!in_generated_algebra(B, g, n / m, right_gens, D, budget))
                ++rep.failed_left;
        }
    // p^-n (J^m)^n inside V[left_gens]
    auto Jm = ideal_power_generators(B.J, m);
    for (int n = 1; n * m <= D; ++n)
        for (auto& g : ideal_power_generators(Jm, n)) {
            if (B.xdeg(g) > D)
                continue;
            ++rep.checked_right;
            if (!in_generated_algebra(B, g, n, left_gens, D, budget))
                ++rep.failed_right;
        }
    return rep;
}

}  // namespace dgc
