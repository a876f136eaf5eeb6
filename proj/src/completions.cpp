#include "dgc/completions.hpp"

#include <map>
#include <set>

namespace dgc {

void TruncationParams::validate() const
{
    if (!is_prime(p))
        throw std::invalid_argument("p must be prime");
    if (N <= 0 || D <= 0 || n_max <= 0 || m_max <= 0)
        throw std::invalid_argument("truncation parameters must be positive");
    if (window < 2)
        throw std::invalid_argument("stabilization window must be at least 2");
}

int canonical_norm(const Poly& f, long p)
{
    return f.min_coeff_valuation(p);
}

bool SubmoduleSpan::monomial() const
{
    for (auto& g : gens)
        if (g.size() != 1)
            return false;
    return true;
}

std::string to_string(Membership m)
{
    switch (m) {
    case Membership::member:
        return "member";
    case Membership::not_member:
        return "not-member";
    default:
        return "inconclusive";
    }
}

Membership linear_growth_membership(const Poly& f, const SubmoduleSpan& S,
                                    const TruncationParams& P)
{
    if (!S.monomial())
        throw UnsupportedInput("linear growth membership needs a monomial span");
    bool inconclusive = false;
    for (auto& [alpha, c] : f.terms()) {
        int v = vp(c, P.p);
        if (v < 0)
            return Membership::not_member;
        // best[k][mono]: least valuation of a k-fold product of generators
        std::map<Mono, int> cur;
        cur[Mono(alpha.size(), 0)] = 0;
        bool found = false;
        int imax = std::min(v, P.n_max);
        for (int i = 0; i <= imax && !found; ++i) {
            std::map<Mono, int> next;
            for (auto& [m, val] : cur)
                for (auto& g : S.gens) {
                    Mono mm = mmul(m, g.lead_mono());
                    if (!mdivides(mm, alpha))
                        continue;
                    int w = val + vp(g.lead_coef(), P.p);
                    auto it = next.find(mm);
                    if (it == next.end() || it->second > w)
                        next[mm] = w;
                }
            cur = std::move(next);
            auto it = cur.find(alpha);
            if (it != cur.end() && it->second + i <= v)
                found = true;
        }
        if (found)
            continue;
        if (v > P.n_max)
            inconclusive = true;
        else
            return Membership::not_member;
    }
    return inconclusive ? Membership::inconclusive : Membership::member;
}

SpectralEstimate spectral_radius_estimate(const SubmoduleSpan& M, const PresentedAlgebra* ambient,
                                          const TruncationParams& P, size_t max_products)
{
    SpectralEstimate est;
    auto nf = [&](const Poly& f) { return ambient ? ambient->nf(f) : f; };
    std::vector<Poly> gens;
    for (auto& g : M.gens) {
        Poly h = nf(g);
        if (!h.is_zero())
            gens.push_back(h);
    }
    if (gens.empty())
        return est;
    std::vector<Poly> cur{Poly::constant(gens[0].nvars(), 1)};
    std::optional<Q> best;
    for (int n = 1; n <= P.n_max; ++n) {
        std::vector<Poly> next;
        std::set<std::string> seen;
        int minv = kValInf;
        for (auto& a : cur)
            for (auto& g : gens) {
                Poly h = nf(a * g);
                if (h.is_zero())
                    continue;
                std::string key = h.str({});
                if (!seen.insert(key).second)
                    continue;
                minv = std::min(minv, canonical_norm(h, P.p));
                next.push_back(std::move(h));
                if (next.size() > max_products)
                    throw std::length_error("spectral radius: too many products");
            }
        if (next.empty()) {
            est.exponent.reset();
            est.depth = n;
            return est;
        }
        Q e(minv, n);
        e.canonicalize();
        if (!best || e > *best)
            best = e;
        cur = std::move(next);
        est.depth = n;
    }
    est.exponent = best;
    return est;
}

bool WitnessReport::ok() const
{
    for (auto& r : records)
        if (!r.decomposition_exact || !r.remainder_integral)
            return false;
    return !records.empty();
}

WitnessReport completion_noninjectivity_witness(long p, int m_max, int n_max)
{
    WitnessReport rep;
    rep.p = p;
    Poly pt = Poly::var(1, 0) * Q(p);
    for (int m = 0; m <= m_max; ++m) {
        Poly fm(1);
        for (int i = 0; i < m; ++i)
            fm += pt.pow(i);
        fm = fm * (Q(1) / Q(zpow(p, m)));
        for (int n = std::max(m, 1); n <= n_max; ++n) {
            Poly sum(1), rem(1);
            for (int i = 0; i <= n; ++i) {
                sum += pt.pow(i);
                if (i >= m)
                    rem += pt.pow(i);
            }
            WitnessRecord r;
            r.m = m;
            r.n = n;
            r.decomposition_exact = sum == fm * Q(zpow(p, m)) + rem;
            Poly scaled = rem * (Q(1) / Q(zpow(p, m)));
            r.remainder_integral = rem.is_zero() || scaled.min_coeff_valuation(p) >= 0;
            rep.records.push_back(r);
        }
    }
    return rep;
}

bool DaggerModelElement::estimate_holds() const
{
    for (auto& [a, b] : f.terms()) {
        int v = vp(b, p);
        if (v < 0)
            return false;
        if (Q(v + 1) * c < Q(mdeg(a)))
            return false;
    }
    return true;
}

DaggerModelElement DaggerModelElement::operator*(const DaggerModelElement& o) const
{
    DaggerModelElement r;
    r.p = p;
    r.D = std::min(D, o.D);
    r.c = c + o.c;
    Poly prod = f * o.f;
    r.f = Poly(prod.nvars());
    for (auto& [m, v] : prod.terms())
        if (mdeg(m) <= r.D)
            r.f.add_term(m, v);
    return r;
}

}  // namespace dgc
