#include "dgc/groebner.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dgc {

namespace {

Poly permute(const Poly& f, const std::vector<int>& perm, bool inverse)
{
    if (perm.empty())
        return f;
    Poly r(f.nvars());
    for (auto& [m, c] : f.terms()) {
        Mono m2(m.size());
        for (size_t k = 0; k < perm.size(); ++k) {
            if (inverse)
                m2[perm[k]] = m[k];
            else
                m2[k] = m[perm[k]];
        }
        r.add_term(m2, c);
    }
    return r;
}

struct Elem {
    Poly f;
    std::vector<Poly> cof;
};

void axpy(std::vector<Poly>& y, const std::vector<Poly>& x, const Mono& m, const Q& c)
{
    for (size_t i = 0; i < y.size(); ++i)
        if (!x[i].is_zero())
            y[i] -= x[i].mul_term(m, c);
}

// full reduction of e by the list, cofactors updated
void reduce(Elem& e, const std::vector<Elem>& G, bool track)
{
    Poly rem(e.f.nvars());
    Poly f = std::move(e.f);
    while (!f.is_zero()) {
        const Mono lm = f.lead_mono();
        const Q lc = f.lead_coef();
        bool done = false;
        for (auto& g : G) {
            if (g.f.is_zero() || !mdivides(g.f.lead_mono(), lm))
                continue;
            Mono q = mdiv(lm, g.f.lead_mono());
            Q c = lc / g.f.lead_coef();
            f -= g.f.mul_term(q, c);
            if (track)
                axpy(e.cof, g.cof, q, c);
            done = true;
            break;
        }
        if (!done) {
            rem.add_term(lm, lc);
            Poly t = Poly::monomial(lm, lc);
            f -= t;
        }
    }
    e.f = std::move(rem);
}

}  // namespace

Poly divide(const Poly& f0, const std::vector<Poly>& basis, std::vector<Poly>& q)
{
    q.assign(basis.size(), Poly(f0.nvars()));
    Poly rem(f0.nvars());
    Poly f = f0;
    while (!f.is_zero()) {
        const Mono lm = f.lead_mono();
        const Q lc = f.lead_coef();
        bool done = false;
        for (size_t k = 0; k < basis.size(); ++k) {
            const Poly& g = basis[k];
            if (g.is_zero() || !mdivides(g.lead_mono(), lm))
                continue;
            Mono qm = mdiv(lm, g.lead_mono());
            Q c = lc / g.lead_coef();
            f -= g.mul_term(qm, c);
            q[k].add_term(qm, c);
            done = true;
            break;
        }
        if (!done) {
            rem.add_term(lm, lc);
            f -= Poly::monomial(lm, lc);
        }
    }
    return rem;
}

Poly normal_form(const Poly& f, const std::vector<Poly>& basis)
{
    std::vector<Poly> q;
    return divide(f, basis, q);
}

GBResult groebner(const std::vector<Poly>& gens0, const GBBudget& budget, bool track,
                  const std::vector<int>& perm)
{
    std::vector<Poly> gens;
    for (auto& g : gens0)
        gens.push_back(permute(g, perm, false));
    size_t ng = gens.size();
    int n = ng ? gens[0].nvars() : 0;

    std::vector<Elem> G;
    auto unit_cof = [&](size_t i) {
        std::vector<Poly> c;
        if (track) {
            c.assign(ng, Poly(n));
            c[i] = Poly::constant(n, 1);
        }
        return c;
    };

    // pairs ordered by degree of lcm, then insertion
    using Pair = std::tuple<int, size_t, size_t, size_t>;
    std::set<Pair> pairs;
    size_t stamp = 0;
    long processed = 0;

    auto add_elem = [&](Elem e) {
        size_t k = G.size();
        for (size_t i = 0; i < k; ++i) {
            if (G[i].f.is_zero())
                continue;
            const Mono& a = G[i].f.lead_mono();
            const Mono& b = e.f.lead_mono();
            Mono l = mlcm(a, b);
            if (mmul(a, b) == l)
                continue;  // coprime leading terms
            pairs.insert({mdeg(l), stamp++, i, k});
        }
        G.push_back(std::move(e));
    };

    for (size_t i = 0; i < ng; ++i) {
        Elem e{gens[i], unit_cof(i)};
        reduce(e, G, track);
        if (!e.f.is_zero())
            add_elem(std::move(e));
    }

    auto partial = [&]() {
        std::vector<Poly> r;
        for (auto& e : G)
            if (!e.f.is_zero())
                r.push_back(permute(e.f, perm, true));
        return r;
    };

    while (!pairs.empty()) {
        auto [deg, st, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        if (G[i].f.is_zero() || G[j].f.is_zero())
            continue;
        if (deg > budget.max_degree)
            throw BudgetError("groebner", "S-pair degree " + std::to_string(deg) +
                                              " exceeds cap " + std::to_string(budget.max_degree),
                              partial());
        if (++processed > budget.max_pairs)
            throw BudgetError("groebner", "S-pair budget exhausted", partial());
        const Mono& a = G[i].f.lead_mono();
        const Mono& b = G[j].f.lead_mono();
        Mono l = mlcm(a, b);
        // chain criterion
        bool skip = false;
        for (size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == i || k == j || G[k].f.is_zero())
                continue;
            if (!mdivides(G[k].f.lead_mono(), l))
                continue;
            auto has = [&](size_t x, size_t y) {
                for (auto& pr : pairs)
                    if ((std::get<2>(pr) == std::min(x, y)) && (std::get<3>(pr) == std::max(x, y)))
                        return true;
                return false;
            };
            if (!has(i, k) && !has(j, k))
                skip = true;
        }
        if (skip)
            continue;
        Mono qa = mdiv(l, a), qb = mdiv(l, b);
        Q ca = Q(1) / G[i].f.lead_coef(), cb = Q(1) / G[j].f.lead_coef();
        Elem s{G[i].f.mul_term(qa, ca) - G[j].f.mul_term(qb, cb), {}};
        if (track) {
            s.cof.assign(ng, Poly(n));
            for (size_t t = 0; t < ng; ++t)
                s.cof[t] = G[i].cof[t].mul_term(qa, ca) - G[j].cof[t].mul_term(qb, cb);
        }
        reduce(s, G, track);
        if (!s.f.is_zero())
            add_elem(std::move(s));
    }

    // minimize
    std::vector<Elem> M;
    for (size_t i = 0; i < G.size(); ++i) {
        if (G[i].f.is_zero())
            continue;
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j || G[j].f.is_zero())
                continue;
            if (mdivides(G[j].f.lead_mono(), G[i].f.lead_mono()) &&
                (G[j].f.lead_mono() != G[i].f.lead_mono() || j < i))
                redundant = true;
        }
        if (!redundant)
            M.push_back(G[i]);
    }
    // interreduce and normalize
    for (size_t i = 0; i < M.size(); ++i) {
        std::vector<Elem> others;
        for (size_t j = 0; j < M.size(); ++j)
            if (j != i)
                others.push_back(M[j]);
        Elem e = M[i];
        Poly lead = Poly::monomial(e.f.lead_mono(), e.f.lead_coef());
        Elem tail{e.f - lead, e.cof};
        // reduce only the tail; the leading term is irreducible
        Elem t2{tail.f, track ? std::vector<Poly>(ng, Poly(n)) : std::vector<Poly>{}};
        reduce(t2, others, track);
        e.f = lead + t2.f;
        if (track)
            for (size_t t = 0; t < ng; ++t)
                e.cof[t] += t2.cof[t];
        Q c = Q(1) / e.f.lead_coef();
        e.f = e.f * c;
        if (track)
            for (auto& x : e.cof)
                x = x * c;
        M[i] = std::move(e);
    }
    std::sort(M.begin(), M.end(), [](const Elem& x, const Elem& y) {
        return Grevlex()(y.f.lead_mono(), x.f.lead_mono());
    });

    GBResult res;
    res.pairs_processed = processed;
    for (auto& e : M) {
        res.basis.push_back(permute(e.f, perm, true));
        std::vector<Poly> c;
        for (auto& x : e.cof)
            c.push_back(permute(x, perm, true));
        res.cofactors.push_back(std::move(c));
    }
    if (!perm.empty()) {
        // keep the list sorted by its own order only; reorder is not needed
    }
    return res;
}

std::optional<std::vector<Poly>> lift_in_ideal(const Poly& f, const std::vector<Poly>& gens,
                                               const GBBudget& budget,
                                               const std::vector<int>& perm)
{
    int n = f.nvars();
    std::vector<Poly> nz;
    std::vector<size_t> idx;
    for (size_t i = 0; i < gens.size(); ++i)
        if (!gens[i].is_zero()) {
            nz.push_back(gens[i]);
            idx.push_back(i);
        }
    std::vector<Poly> out(gens.size(), Poly(n));
    if (f.is_zero())
        return out;
    if (nz.empty())
        return std::nullopt;
    GBResult gb = groebner(nz, budget, true, perm);
    std::vector<Poly> q;
    std::vector<Poly> pb;
    for (auto& b : gb.basis)
        pb.push_back(permute(b, perm, false));
    Poly rem = divide(permute(f, perm, false), pb, q);
    if (!rem.is_zero())
        return std::nullopt;
    for (size_t k = 0; k < q.size(); ++k) {
        Poly qk = permute(q[k], perm, true);
        for (size_t i = 0; i < nz.size(); ++i)
            out[idx[i]] += qk * gb.cofactors[k][i];
    }
    return out;
}

std::vector<Poly> ideal_power_generators(const std::vector<Poly>& gens, int m,
                                         const PresentedAlgebra* ambient)
{
    if (m < 1)
        throw std::invalid_argument("ideal power must be positive");
    std::vector<Poly> out;
    std::vector<Poly> seen;
    std::vector<size_t> idx(m, 0);
    size_t s = gens.size();
    if (s == 0)
        return out;
    std::function<void(int, size_t, Poly)> rec = [&](int depth, size_t start, Poly acc) {
        if (depth == m) {
            Poly nf = ambient ? ambient->nf(acc) : acc;
            if (nf.is_zero())
                return;
            for (auto& x : seen)
                if (x == nf)
                    return;
            seen.push_back(nf);
            out.push_back(nf);
            return;
        }
        for (size_t i = start; i < s; ++i)
            rec(depth + 1, i, acc * gens[i]);
    };
    rec(0, 0, Poly::constant(gens[0].nvars(), 1));
    return out;
}

PresentedAlgebra::PresentedAlgebra(std::vector<std::string> names, std::vector<Poly> relations,
                                   const GBBudget& budget, std::vector<int> weights)
    : names_(std::move(names)), rels_(std::move(relations)), weights_(std::move(weights))
{
    std::vector<Poly> nz;
    for (auto& r : rels_)
        if (!r.is_zero())
            nz.push_back(r);
    if (!nz.empty())
        gb_ = groebner(nz, budget, true);
}

PresentedAlgebra PresentedAlgebra::parse(const std::vector<std::string>& names,
                                         const std::vector<std::string>& relations,
                                         const GBBudget& budget)
{
    std::vector<Poly> rels;
    for (auto& r : relations)
        rels.push_back(parse_poly(r, names));
    return PresentedAlgebra(names, rels, budget);
}

bool PresentedAlgebra::is_zero_ring() const
{
    return gb_.basis.size() == 1 && gb_.basis[0].is_constant();
}

bool PresentedAlgebra::is_standard(const Mono& m) const
{
    for (auto& g : gb_.basis)
        if (mdivides(g.lead_mono(), m))
            return false;
    return true;
}

std::vector<Mono> monomials_up_to(int n, int D)
{
    std::vector<Mono> out;
    Mono m(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[i] = e;
            rec(i + 1, left - e);
        }
        m[i] = 0;
    };
    if (D >= 0)
        rec(0, D);
    std::sort(out.begin(), out.end(), [](const Mono& a, const Mono& b) { return Grevlex()(b, a); });
    return out;
}

std::vector<Mono> PresentedAlgebra::standard_monomials(int D) const
{
    std::vector<Mono> out;
    for (auto& m : monomials_up_to(nvars(), D))
        if (is_standard(m))
            out.push_back(m);
    return out;
}

}  // namespace dgc
