#include "dgc/derham.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>

namespace dgc {

void Form::add(const Mono& m, unsigned I, const Q& c)
{
    if (c == 0)
        return;
    auto it = t.find({m, I});
    if (it == t.end()) {
        t.emplace(FormKey{m, I}, c);
        return;
    }
    it->second += c;
    if (it->second == 0)
        t.erase(it);
}

Form Form::operator+(const Form& o) const
{
    Form r = *this;
    for (auto& [k, c] : o.t)
        r.add(k.first, k.second, c);
    return r;
}

Form Form::operator-(const Form& o) const
{
    Form r = *this;
    for (auto& [k, c] : o.t)
        r.add(k.first, k.second, -c);
    return r;
}

Form Form::operator*(const Q& c) const
{
    Form r;
    if (c == 0)
        return r;
    for (auto& [k, v] : t)
        r.t.emplace(k, v * c);
    return r;
}

int popcount(unsigned I)
{
    return std::popcount(I);
}

int wedge_sign(int j, unsigned I)
{
    if (I & (1u << j))
        return 0;
    return (std::popcount(I & ((1u << j) - 1)) % 2) ? -1 : 1;
}

namespace {

Mono partial_mono(const Mono& m, int j)
{
    Mono r = m;
    --r[j];
    return r;
}

std::vector<unsigned> subsets_of_size(int n, int l)
{
    std::vector<unsigned> out;
    for (unsigned I = 0; I < (1u << n); ++I)
        if (std::popcount(I) == l)
            out.push_back(I);
    return out;
}

}  // namespace

Form DifferentialModule::function(const Poly& f) const
{
    Form w;
    Poly g = A_.nf(f);
    for (auto& [m, c] : g.terms())
        w.add(m, 0, c);
    return w;
}

Form DifferentialModule::dpoly(const Poly& f) const
{
    Form w;
    for (int j = 0; j < A_.nvars(); ++j) {
        Poly g = A_.nf(f.derivative(j));
        for (auto& [m, c] : g.terms())
            w.add(m, 1u << j, c);
    }
    return w;
}

Form DifferentialModule::normalize(const Form& w) const
{
    std::map<unsigned, Poly> parts;
    for (auto& [k, c] : w.t) {
        auto it = parts.try_emplace(k.second, Poly(A_.nvars())).first;
        it->second.add_term(k.first, c);
    }
    Form r;
    for (auto& [I, f] : parts) {
        Poly g = A_.nf(f);
        for (auto& [m, c] : g.terms())
            r.add(m, I, c);
    }
    return r;
}

Form DifferentialModule::d(const Form& w) const
{
    Form r;
    int n = A_.nvars();
    for (auto& [k, c] : w.t) {
        const Mono& m = k.first;
        for (int j = 0; j < n; ++j) {
            if (m[j] == 0)
                continue;
            int s = wedge_sign(j, k.second);
            if (s == 0)
                continue;
            r.add(partial_mono(m, j), k.second | (1u << j), c * m[j] * s);
        }
    }
    return normalize(r);
}

Form DifferentialModule::wedge(const Form& a, const Form& b) const
{
    Form r;
    for (auto& [ka, ca] : a.t)
        for (auto& [kb, cb] : b.t) {
            unsigned I = ka.second, J = kb.second;
            if (I & J)
                continue;
            int sign = 1;
            for (unsigned J2 = J; J2; J2 &= J2 - 1) {
                int j = std::countr_zero(J2);
                // elements of I larger than j must pass dz_j
                if (std::popcount(I >> (j + 1)) % 2)
                    sign = -sign;
            }
            r.add(mmul(ka.first, kb.first), I | J, ca * cb * sign);
        }
    return normalize(r);
}

std::vector<Form> DifferentialModule::relations(int l, int D) const
{
    std::vector<Form> out;
    if (l < 1)
        return out;
    int n = A_.nvars();
    std::vector<Poly> gens;
    for (auto& f : A_.relations())
        if (!f.is_zero())
            gens.push_back(f);
    for (auto& g : A_.gb().basis)
        if (std::find(gens.begin(), gens.end(), g) == gens.end())
            gens.push_back(g);
    auto Is = subsets_of_size(n, l - 1);
    for (auto& f : gens) {
        int cap = D - f.degree() + 1;
        if (cap < 0)
            continue;
        Form df = dpoly(f);
        for (auto& s : A_.standard_monomials(cap)) {
            Form sdf;
            for (auto& [k, c] : df.t)
                sdf.add(mmul(s, k.first), k.second, c);
            sdf = normalize(sdf);
            for (unsigned I : Is) {
                Form e;
                e.add(Mono(n, 0), I, 1);
                Form w = wedge(sdf, e);
                if (!w.is_zero())
                    out.push_back(std::move(w));
            }
        }
    }
    return out;
}

DifferentialModule::Quotient DifferentialModule::quotient(int l, int D) const
{
    Quotient q;
    int n = A_.nvars();
    for (auto& s : A_.standard_monomials(D))
        for (unsigned I : subsets_of_size(n, l))
            q.basis.push_back({s, I});
    std::sort(q.basis.begin(), q.basis.end());
    for (size_t i = 0; i < q.basis.size(); ++i)
        q.index[q.basis[i]] = static_cast<int>(i);
    auto rels = relations(l, D);
    int nb = static_cast<int>(q.basis.size());
    QMat R(static_cast<int>(rels.size()), nb);
    for (size_t r = 0; r < rels.size(); ++r)
        for (auto& [k, c] : rels[r].t) {
            auto it = q.index.find(k);
            if (it == q.index.end())
                throw std::logic_error("relation outside the truncated basis");
            R.at(static_cast<int>(r), it->second) = c;
        }
    q.rel = R.rows ? rref(R) : RREF{QMat(0, nb), {}};
    std::vector<bool> piv(nb, false);
    for (int c : q.rel.pivots)
        piv[c] = true;
    q.free_pos.assign(nb, -1);
    for (int i = 0; i < nb; ++i)
        if (!piv[i]) {
            q.free_pos[i] = static_cast<int>(q.free.size());
            q.free.push_back(i);
        }
    return q;
}

std::vector<Q> DifferentialModule::reduce(const Quotient& q, const Form& w) const
{
    std::vector<Q> v(q.basis.size());
    for (auto& [k, c] : w.t) {
        auto it = q.index.find(k);
        if (it == q.index.end())
            throw std::logic_error("form exceeds the truncation");
        v[it->second] += c;
    }
    for (size_t r = 0; r < q.rel.pivots.size(); ++r) {
        int c = q.rel.pivots[r];
        if (v[c] == 0)
            continue;
        Q f = v[c];
        for (int j = 0; j < q.rel.R.cols; ++j)
            if (q.rel.R.at(static_cast<int>(r), j) != 0)
                v[j] -= f * q.rel.R.at(static_cast<int>(r), j);
    }
    std::vector<Q> out;
    for (int i : q.free)
        out.push_back(v[i]);
    return out;
}

bool DifferentialModule::in_relation_module(const Form& w, int l, int D) const
{
    Quotient q = quotient(l, D);
    for (auto& x : reduce(q, normalize(w)))
        if (x != 0)
            return false;
    return true;
}

std::vector<Q> DifferentialModule::coordinates(const Form& w, int l, int D) const
{
    return reduce(quotient(l, D), normalize(w));
}

FiniteComplex DifferentialModule::complex(int D) const
{
    FiniteComplex C;
    int n = A_.nvars();
    if (A_.is_zero_ring()) {
        C.dims.assign(n + 1, 0);
        for (int l = 0; l < n; ++l)
            C.d.emplace_back(0, 0);
        return C;
    }
    std::vector<Quotient> qs;
    for (int l = 0; l <= n; ++l) {
        qs.push_back(quotient(l, D));
        C.dims.push_back(static_cast<int>(qs.back().free.size()));
    }
    for (int l = 0; l < n; ++l) {
        SpMat M(C.dims[l + 1], C.dims[l]);
        for (size_t c = 0; c < qs[l].free.size(); ++c) {
            const FormKey& k = qs[l].basis[qs[l].free[c]];
            Form e;
            e.add(k.first, k.second, 1);
            auto v = reduce(qs[l + 1], d(e));
            for (size_t r = 0; r < v.size(); ++r)
                M.add(static_cast<int>(r), static_cast<int>(c), v[r]);
        }
        C.d.push_back(std::move(M));
    }
    return C;
}

FiniteComplex de_rham_complex(const PresentedAlgebra& A, int D)
{
    return DifferentialModule(A).complex(D);
}

FiniteComplex infinitesimal_complex(const std::vector<std::string>& names,
                                    const std::vector<std::string>& rels,
                                    const std::vector<std::string>& J, int k, int D,
                                    const GBBudget& budget)
{
    std::vector<Poly> all;
    for (auto& r : rels)
        all.push_back(parse_poly(r, names));
    std::vector<Poly> Jp;
    for (auto& g : J)
        Jp.push_back(parse_poly(g, names));
    for (auto& g : ideal_power_generators(Jp, k))
        all.push_back(g);
    PresentedAlgebra A(names, all, budget);
    return de_rham_complex(A, D);
}

// ---------------- lattice model ----------------

bool LatticeModel::Elem::operator<(const Elem& o) const
{
    if (s != o.s)
        return s < o.s;
    if (gamma != o.gamma)
        return gamma < o.gamma;
    return I < o.I;
}

Poly LatticeModel::lead_sorted(const Poly& g, Mono& lm) const
{
    bool first = true;
    for (auto& [m, c] : g.terms())
        if (first || ord_.greater(m, lm)) {
            lm = m;
            first = false;
        }
    return g;
}

LatticeModel::LatticeModel(std::vector<std::string> names, std::vector<Poly> rels, long p,
                           LatticeOptions opt)
    : names_(std::move(names)), rels_(std::move(rels)), p_(p), opt_(std::move(opt))
{
    n_ = static_cast<int>(names_.size());
    if (n_ > 16)
        throw std::invalid_argument("too many variables");
    if (opt_.weights.empty())
        opt_.weights.assign(n_, 1);
    if (opt_.precedence.empty()) {
        opt_.precedence.resize(n_);
        std::iota(opt_.precedence.begin(), opt_.precedence.end(), 0);
    }
    if (static_cast<int>(opt_.weights.size()) != n_ ||
        static_cast<int>(opt_.precedence.size()) != n_)
        throw std::invalid_argument("weights and precedence must have one entry per variable");
    for (int w : opt_.weights)
        if (w <= 0)
            throw std::invalid_argument("filtration weights must be positive");
    std::vector<int> chk = opt_.precedence;
    std::sort(chk.begin(), chk.end());
    for (int i = 0; i < n_; ++i)
        if (chk[i] != i)
            throw std::invalid_argument("precedence must be a permutation of the variables");
    ord_.weights = opt_.weights;
    ord_.perm = opt_.precedence;

    for (auto& f : rels_) {
        if (f.is_zero())
            throw std::invalid_argument("zero relation");
        Mono lm;
        lead_sorted(f, lm);
        if (mdeg(lm) == 0)
            throw std::invalid_argument("relation with constant leading term");
        for (auto& [m, c] : f.terms())
            if (c.get_den() != 1)
                throw std::invalid_argument("relations need integer coefficients");
        Q c = f.coeff(lm);
        if (c != 1 && c != -1)
            throw std::invalid_argument("leading coefficient of " + f.str(names_) +
                                        " is not a unit sign");
        for (auto& o : lt_)
            for (int v = 0; v < n_; ++v)
                if (o[v] && lm[v])
                    throw std::invalid_argument("leading terms are not coprime");
        lt_.push_back(lm);
        lc_.push_back(c == 1 ? 1 : -1);
        fdeg_.push_back(ord_.wdeg(lm));
    }

    // torus grading making every relation homogeneous
    std::vector<std::vector<int>> cons;
    for (size_t i = 0; i < rels_.size(); ++i)
        for (auto& [m, c] : rels_[i].terms())
            if (m != lt_[i]) {
                std::vector<int> row(n_);
                for (int v = 0; v < n_; ++v)
                    row[v] = lt_[i][v] - m[v];
                cons.push_back(row);
            }
    if (cons.empty()) {
        for (int v = 0; v < n_; ++v) {
            std::vector<int> g(n_, 0);
            g[v] = 1;
            grading_.push_back(g);
        }
    }
    else {
        QMat C(static_cast<int>(cons.size()), n_);
        for (size_t r = 0; r < cons.size(); ++r)
            for (int v = 0; v < n_; ++v)
                C.at(static_cast<int>(r), v) = cons[r][v];
        for (auto& k : kernel_basis(C)) {
            Z l = 1;
            for (auto& x : k)
                l = lcm(l, Z(x.get_den()));
            std::vector<int> g;
            for (auto& x : k)
                g.push_back(static_cast<int>(Q(x * l).get_num().get_si()));
            grading_.push_back(g);
        }
    }

    dfexp_.assign(rels_.size(), std::vector<Expansion>(n_));
    for (size_t i = 0; i < rels_.size(); ++i)
        for (int j = 0; j < n_; ++j)
            dfexp_[i][j] = expand(rels_[i].derivative(j));
}

LatticeModel LatticeModel::with_search(std::vector<std::string> names, std::vector<Poly> rels,
                                       long p)
{
    int n = static_cast<int>(names.size());
    std::vector<std::vector<int>> ws;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> w(n);
        for (int v = 0; v < n; ++v)
            w[v] = (mask >> v & 1) ? 2 : 1;
        ws.push_back(w);
    }
    std::stable_sort(ws.begin(), ws.end(), [](auto& a, auto& b) {
        return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
    });
    std::string last;
    for (auto& w : ws) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            try {
                return LatticeModel(names, rels, p, {w, perm});
            }
            catch (const std::invalid_argument& e) {
                last = e.what();
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    throw std::invalid_argument("no admissible order found: " + last);
}

LatticeModel::Expansion LatticeModel::expand(const Poly& g) const
{
    Expansion out;
    Poly r = g;
    int nr = static_cast<int>(rels_.size());
    while (!r.is_zero()) {
        Mono lm;
        lead_sorted(r, lm);
        Q c = r.coeff(lm);
        std::vector<int> gamma(nr, 0);
        Mono s = lm;
        int sign = 1;
        for (int i = 0; i < nr; ++i) {
            int k = std::numeric_limits<int>::max();
            for (int v = 0; v < n_; ++v)
                if (lt_[i][v])
                    k = std::min(k, s[v] / lt_[i][v]);
            gamma[i] = k;
            for (int v = 0; v < n_; ++v)
                s[v] -= k * lt_[i][v];
            if (lc_[i] < 0 && k % 2)
                sign = -sign;
        }
        Q coef = c * sign;
        out[{s, gamma}] += coef;
        Poly prod = Poly::monomial(s, coef);
        for (int i = 0; i < nr; ++i)
            if (gamma[i])
                prod = prod * rels_[i].pow(gamma[i]);
        r -= prod;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

int LatticeModel::wdeg(const Elem& e) const
{
    int d = ord_.wdeg(e.s);
    for (size_t i = 0; i < e.gamma.size(); ++i)
        d += e.gamma[i] * fdeg_[i];
    return d;
}

std::vector<int> LatticeModel::block_of(const Elem& e) const
{
    std::vector<int> b;
    for (auto& g : grading_) {
        long w = 0;
        for (int v = 0; v < n_; ++v) {
            w += static_cast<long>(g[v]) * e.s[v];
            if (e.I >> v & 1)
                w += g[v];
        }
        for (size_t i = 0; i < e.gamma.size(); ++i)
            for (int v = 0; v < n_; ++v)
                w += static_cast<long>(g[v]) * lt_[i][v] * e.gamma[i];
        b.push_back(static_cast<int>(w));
    }
    return b;
}

std::vector<Mono> LatticeModel::standard(int E) const
{
    std::vector<Mono> out;
    Mono m(n_, 0);
    std::function<void(int, int)> rec = [&](int v, int left) {
        if (v == n_) {
            for (auto& l : lt_)
                if (mdivides(l, m))
                    return;
            out.push_back(m);
            return;
        }
        for (int e = 0; e * opt_.weights[v] <= left; ++e) {
            m[v] = e;
            rec(v + 1, left - e * opt_.weights[v]);
        }
        m[v] = 0;
    };
    if (E >= 0)
        rec(0, E);
    return out;
}

std::vector<LatticeModel::Elem> LatticeModel::basis(int l, int E) const
{
    std::vector<Elem> out;
    int nr = static_cast<int>(rels_.size());
    auto Is = subsets_of_size(n_, l);
    for (auto& s : standard(E)) {
        int left = E - ord_.wdeg(s);
        std::vector<int> g(nr, 0);
        std::function<void(int, int)> rec = [&](int i, int rem) {
            if (i == nr) {
                for (unsigned I : Is)
                    out.push_back({s, g, I});
                return;
            }
            for (int k = 0; k * fdeg_[i] <= rem; ++k) {
                g[i] = k;
                rec(i + 1, rem - k * fdeg_[i]);
            }
            g[i] = 0;
        };
        rec(0, left);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
int level_exp(const std::vector<int>& gamma, int m)
{
    int k = std::accumulate(gamma.begin(), gamma.end(), 0);
    return k / m;
}
}  // namespace

std::vector<std::pair<LatticeModel::Elem, Q>> LatticeModel::d(const Elem& e, int m) const
{
    std::map<Elem, Q> acc;
    int nr = static_cast<int>(rels_.size());
    int e0 = level_exp(e.gamma, m);
    auto put = [&](Elem x, const Q& c) {
        int sh = level_exp(x.gamma, m) - e0;
        Q v = c;
        if (sh > 0)
            v *= Q(zpow(p_, sh));
        else if (sh < 0)
            v /= Q(zpow(p_, -sh));
        acc[x] += v;
    };
    for (int j = 0; j < n_; ++j) {
        int sg = wedge_sign(j, e.I);
        if (sg == 0)
            continue;
        unsigned I2 = e.I | (1u << j);
        if (e.s[j] > 0)
            put({partial_mono(e.s, j), e.gamma, I2}, Q(e.s[j] * sg));
        for (int i = 0; i < nr; ++i) {
            if (e.gamma[i] == 0)
                continue;
            for (auto& [key, c] : dfexp_[i][j]) {
                // s * s' f^delta needs re-expansion when s s' is not standard
                Mono ss = mmul(e.s, key.first);
                bool std_ok = true;
                for (auto& l : lt_)
                    if (mdivides(l, ss))
                        std_ok = false;
                std::vector<int> base = key.second;
                for (int q = 0; q < nr; ++q)
                    base[q] += e.gamma[q] - (q == i ? 1 : 0);
                Q coef = c * e.gamma[i] * sg;
                if (std_ok) {
                    put({ss, base, I2}, coef);
                    continue;
                }
                for (auto& [k2, c2] : expand(Poly::monomial(ss, 1))) {
                    std::vector<int> g2 = k2.second;
                    for (int q = 0; q < nr; ++q)
                        g2[q] += base[q];
                    put({k2.first, g2, I2}, coef * c2);
                }
            }
        }
    }
    std::vector<std::pair<Elem, Q>> out;
    for (auto& [x, c] : acc)
        if (c != 0)
            out.push_back({x, c});
    return out;
}

FiniteComplex LatticeModel::level_complex(int m, int E) const
{
    FiniteComplex C;
    std::vector<std::vector<Elem>> B;
    for (int l = 0; l <= n_; ++l) {
        B.push_back(basis(l, E));
        C.dims.push_back(static_cast<int>(B.back().size()));
    }
    for (int l = 0; l < n_; ++l) {
        std::map<Elem, int> idx;
        for (size_t i = 0; i < B[l + 1].size(); ++i)
            idx[B[l + 1][i]] = static_cast<int>(i);
        SpMat M(C.dims[l + 1], C.dims[l]);
        for (size_t c = 0; c < B[l].size(); ++c)
            for (auto& [x, v] : d(B[l][c], m))
                M.add(idx.at(x), static_cast<int>(c), v);
        M.finalize();
        C.d.push_back(std::move(M));
    }
    return C;
}

ProComplex LatticeModel::pro_complex(int m_max, int E) const
{
    ProComplex P;
    for (int m = 1; m <= m_max; ++m)
        P.levels.push_back(level_complex(m, E));
    for (int m = 1; m < m_max; ++m) {
        std::vector<SpMat> s;
        for (int l = 0; l <= n_; ++l) {
            auto B = basis(l, E);
            SpMat M(static_cast<int>(B.size()), static_cast<int>(B.size()));
            for (size_t i = 0; i < B.size(); ++i) {
                int sh = level_exp(B[i].gamma, m) - level_exp(B[i].gamma, m + 1);
                M.add(static_cast<int>(i), static_cast<int>(i), Q(zpow(p_, sh)));
            }
            s.push_back(std::move(M));
        }
        P.sigma.push_back(std::move(s));
    }
    return P;
}

LatticeModel::Persistent LatticeModel::persistent_betti(int m, int D, int Dp, int N,
                                                        Backend b) const
{
    if (Dp < D)
        throw std::invalid_argument("certifying cap below the cap");
    Persistent res;
    res.betti.assign(n_ + 1, 0);
    res.dims.assign(n_ + 1, 0);
    // per degree: basis at Dp grouped by block
    std::vector<std::map<std::vector<int>, std::vector<Elem>>> blocks(n_ + 1);
    std::set<std::vector<int>> keys;
    for (int l = 0; l <= n_; ++l)
        for (auto& e : basis(l, Dp)) {
            auto k = block_of(e);
            blocks[l][k].push_back(e);
            keys.insert(k);
            if (wdeg(e) <= D)
                ++res.dims[l];
        }
    static const std::vector<Elem> none;
    for (auto& key : keys) {
        std::vector<const std::vector<Elem>*> Bk;
        for (int l = 0; l <= n_; ++l) {
            auto it = blocks[l].find(key);
            Bk.push_back(it == blocks[l].end() ? &none : &it->second);
        }
        // d^l on the block at cap Dp, and the positions of cap-D elements
        std::vector<SpMat> A;
        std::vector<std::vector<int>> small(n_ + 1);
        for (int l = 0; l <= n_; ++l)
            for (size_t i = 0; i < Bk[l]->size(); ++i)
                if (wdeg((*Bk[l])[i]) <= D)
                    small[l].push_back(static_cast<int>(i));
        for (int l = 0; l < n_; ++l) {
            std::map<Elem, int> idx;
            for (size_t i = 0; i < Bk[l + 1]->size(); ++i)
                idx[(*Bk[l + 1])[i]] = static_cast<int>(i);
            SpMat M(static_cast<int>(Bk[l + 1]->size()), static_cast<int>(Bk[l]->size()));
            for (size_t c = 0; c < Bk[l]->size(); ++c)
                for (auto& [x, v] : d((*Bk[l])[c], m))
                    M.add(idx.at(x), static_cast<int>(c), v);
            M.finalize();
            A.push_back(std::move(M));
        }
        for (int l = 0; l <= n_; ++l) {
            int nl = static_cast<int>(Bk[l]->size());
            if (small[l].empty())
                continue;
            // restriction of d^l to cap D
            std::vector<int> rowpos;
            int nrow = 0;
            if (l < n_) {
                rowpos.assign(Bk[l + 1]->size(), -1);
                for (int i : small[l + 1])
                    rowpos[i] = nrow++;
            }
            SpMat Ad(nrow, static_cast<int>(small[l].size()));
            if (l < n_)
                for (size_t c = 0; c < small[l].size(); ++c)
                    for (auto& [i, v] : A[l].col[small[l][c]]) {
                        if (rowpos[i] < 0)
                            throw std::logic_error("d leaves the truncation");
                        Ad.add(rowpos[i], static_cast<int>(c), v);
                    }
            auto Z = cycles_mod_p(Ad, p_, N, b, &res.stats);
            std::vector<FpVec> rows;
            for (auto& z : Z) {
                FpVec v(nl, 0);
                for (size_t c = 0; c < small[l].size(); ++c)
                    v[small[l][c]] = z[c];
                rows.push_back(std::move(v));
            }
            std::vector<FpVec> W;
            if (l > 0 && A[l - 1].cols > 0)
                W = image_saturation_mod_p(A[l - 1], p_, N, b, &res.stats);
            int rw = W.empty() ? 0 : rank_mod_p(W, static_cast<uint32_t>(p_));
            for (auto& w : W)
                rows.push_back(std::move(w));
            int rzw = rows.empty() ? 0 : rank_mod_p(rows, static_cast<uint32_t>(p_));
            res.betti[l] += rzw - rw;
        }
    }
    return res;
}

BettiReport rigid_betti(const LatticeModel& L, const RigidParams& P)
{
    BettiReport rep;
    rep.caps = P.caps;
    rep.m_max = P.m_max;
    rep.window = P.window;
    for (int D : P.caps)
        for (int m = 1; m <= P.m_max; ++m) {
            auto t0 = std::chrono::steady_clock::now();
            auto r = L.persistent_betti(m, D, D + P.delta, P.N, P.backend);
            BettiCell c;
            c.D = D;
            c.m = m;
            c.betti = r.betti;
            c.min_pivot_val = r.stats.min_pivot_val;
            c.max_pivot_val = r.stats.max_pivot_val;
            c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            rep.cells.push_back(std::move(c));
        }
    rep.stabilize();
    return rep;
}

}  // namespace dgc
