#include "dgc/cyclic.hpp"

#include <stdexcept>

namespace dgc {

void ChainElement::add(const Tensor& x, const Q& c)
{
    if (c == 0)
        return;
    auto [it, fresh] = t.try_emplace(x, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            t.erase(it);
    }
}

ChainElement ChainElement::operator+(const ChainElement& o) const
{
    ChainElement r = *this;
    for (auto& [x, c] : o.t)
        r.add(x, c);
    return r;
}

ChainElement ChainElement::operator-(const ChainElement& o) const
{
    return *this + o * Q(-1);
}

ChainElement ChainElement::operator*(const Q& c) const
{
    ChainElement r;
    r.n = n;
    if (c == 0)
        return r;
    for (auto& [x, v] : t)
        r.t[x] = v * c;
    return r;
}

Poly HochschildComplex::mul(const Mono& a, const Mono& b) const
{
    return A_.nf(Poly::monomial(mmul(a, b), Q(1)));
}

int HochschildComplex::wdeg(const Mono& m) const
{
    auto& w = A_.weights();
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i)
        d += m[i] * (w.empty() ? 1 : w[i]);
    return d;
}

ChainElement HochschildComplex::tensor(const std::vector<Poly>& entries) const
{
    ChainElement r;
    r.n = static_cast<int>(entries.size()) - 1;
    std::vector<Poly> e;
    for (auto& f : entries)
        e.push_back(A_.nf(f));
    Tensor cur(entries.size());
    auto rec = [&](auto&& self, size_t i, const Q& c) -> void {
        if (i == e.size()) {
            r.add(cur, c);
            return;
        }
        for (auto& [m, v] : e[i].terms()) {
            cur[i] = m;
            self(self, i + 1, c * v);
        }
    };
    rec(rec, 0, Q(1));
    return r;
}

ChainElement HochschildComplex::face_sum(const ChainElement& x, bool cyclic_face) const
{
    ChainElement r;
    int n = x.n;
    r.n = n - 1;
    if (n < 1)
        return r;
    for (auto& [a, c] : x.t) {
        for (int i = 0; i < n; ++i) {
            Poly prod = mul(a[i], a[i + 1]);
            Tensor y;
            y.reserve(n);
            for (int k = 0; k < i; ++k)
                y.push_back(a[k]);
            y.push_back({});
            for (int k = i + 2; k <= n; ++k)
                y.push_back(a[k]);
            for (auto& [m, v] : prod.terms()) {
                y[i] = m;
                r.add(y, c * v * CyclicSigns::face(i));
            }
        }
        if (cyclic_face) {
            Poly prod = mul(a[n], a[0]);
            Tensor y(a.begin(), a.end() - 1);
            for (auto& [m, v] : prod.terms()) {
                y[0] = m;
                r.add(y, c * v * CyclicSigns::face(n));
            }
        }
    }
    return r;
}

ChainElement HochschildComplex::b(const ChainElement& x) const
{
    return face_sum(x, true);
}

ChainElement HochschildComplex::bprime(const ChainElement& x) const
{
    return face_sum(x, false);
}

ChainElement HochschildComplex::s(const ChainElement& x) const
{
    ChainElement r;
    r.n = x.n + 1;
    Mono one(A_.nvars(), 0);
    for (auto& [a, c] : x.t) {
        Tensor y{one};
        y.insert(y.end(), a.begin(), a.end());
        r.add(y, c);
    }
    return r;
}

ChainElement HochschildComplex::t(const ChainElement& x) const
{
    ChainElement r;
    r.n = x.n;
    int sg = CyclicSigns::rotation(x.n);
    for (auto& [a, c] : x.t) {
        Tensor y{a.back()};
        y.insert(y.end(), a.begin(), a.end() - 1);
        r.add(y, c * sg);
    }
    return r;
}

ChainElement HochschildComplex::N(const ChainElement& x) const
{
    ChainElement r;
    r.n = x.n;
    ChainElement cur = x;
    for (int i = 0; i <= x.n; ++i) {
        r = r + cur;
        cur = t(cur);
    }
    return r;
}

ChainElement HochschildComplex::B(const ChainElement& x) const
{
    ChainElement y = s(N(x));
    return y - t(y);
}

Form HochschildComplex::hkr(const ChainElement& x) const
{
    DifferentialModule M(A_);
    Form r;
    Q fact = 1;
    for (int k = 2; k <= x.n; ++k)
        fact *= k;
    for (auto& [a, c] : x.t) {
        Form w = M.function(Poly::monomial(a[0], c / fact));
        for (int k = 1; k <= x.n; ++k)
            w = M.wedge(w, M.dpoly(Poly::monomial(a[k], Q(1))));
        r = r + w;
    }
    return M.normalize(r);
}

std::vector<Tensor> HochschildComplex::graded_basis(int n, int d) const
{
    std::vector<Tensor> out;
    if (n < 0 || d < 0)
        return out;
    std::vector<std::vector<Mono>> by_deg(d + 1);
    for (auto& m : A_.standard_monomials(d)) {
        int w = wdeg(m);
        if (w <= d)
            by_deg[w].push_back(m);
    }
    Tensor cur(n + 1);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n) {
            for (auto& m : by_deg[left]) {
                cur[i] = m;
                out.push_back(cur);
            }
            return;
        }
        for (int e = 0; e <= left; ++e)
            for (auto& m : by_deg[e]) {
                cur[i] = m;
                self(self, i + 1, left - e);
            }
    };
    rec(rec, 0, d);
    return out;
}

SpMat HochschildComplex::graded_b(int n, int d) const
{
    auto src = graded_basis(n, d);
    auto dst = graded_basis(n - 1, d);
    std::map<Tensor, int> index;
    for (size_t i = 0; i < dst.size(); ++i)
        index[dst[i]] = static_cast<int>(i);
    SpMat M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
        ChainElement x;
        x.n = n;
        x.add(src[j], Q(1));
        for (auto& [y, c] : b(x).t) {
            auto it = index.find(y);
            if (it == index.end())
                throw std::logic_error("graded b left its slice");
            M.add(it->second, static_cast<int>(j), c);
        }
    }
    M.finalize();
    return M;
}

namespace {
void require_homogeneous(const PresentedAlgebra& A)
{
    auto& w = A.weights();
    for (auto& g : A.gb().basis) {
        int deg = -1;
        for (auto& [m, c] : g.terms()) {
            int e = 0;
            for (size_t i = 0; i < m.size(); ++i)
                e += m[i] * (w.empty() ? 1 : w[i]);
            if (deg >= 0 && e != deg)
                throw std::invalid_argument("unsupported: the algebra is not graded");
            deg = e;
        }
    }
}
}  // namespace

std::vector<int> hh_graded_dims(const PresentedAlgebra& A, int d, int nmax)
{
    require_homogeneous(A);
    HochschildComplex H(A);
    std::vector<int> ranks(nmax + 2, 0);  // ranks[n] = rank of b on C_n
    for (int n = 1; n <= nmax + 1; ++n)
        ranks[n] = rank(H.graded_b(n, d));
    std::vector<int> dims;
    for (int n = 0; n <= nmax; ++n)
        dims.push_back(static_cast<int>(H.graded_basis(n, d).size()) - ranks[n] - ranks[n + 1]);
    return dims;
}

std::vector<int> form_graded_dims(const PresentedAlgebra& A, int d)
{
    require_homogeneous(A);
    DifferentialModule M(A);
    std::map<int, std::vector<int>> cache;
    auto dims_at = [&](int cap) -> const std::vector<int>& {
        auto it = cache.find(cap);
        if (it == cache.end())
            it = cache.emplace(cap, M.complex(cap).dims).first;
        return it->second;
    };
    std::vector<int> out;
    for (int l = 0; l <= A.nvars(); ++l) {
        int c = d - l;
        int v = 0;
        if (c >= 0) {
            auto& hi = dims_at(c);
            v = l < static_cast<int>(hi.size()) ? hi[l] : 0;
            if (c >= 1) {
                auto& lo = dims_at(c - 1);
                v -= l < static_cast<int>(lo.size()) ? lo[l] : 0;
            }
        }
        out.push_back(v);
    }
    return out;
}

HPReport hp_report(const BettiReport& R)
{
    HPReport h;
    int sums[2] = {0, 0};
    bool ok[2] = {true, true};
    for (size_t k = 0; k < R.stable.size(); ++k) {
        if (R.stable[k])
            sums[k % 2] += *R.stable[k];
        else
            ok[k % 2] = false;
    }
    if (ok[0])
        h.hp0 = sums[0];
    if (ok[1])
        h.hp1 = sums[1];
    return h;
}

}  // namespace dgc
