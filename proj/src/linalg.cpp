#include "dgc/linalg.hpp"

#include <algorithm>

namespace dgc {

QMat QMat::identity(int n)
{
    QMat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

QMat QMat::operator*(const QMat& o) const
{
    QMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Q& x = at(i, k);
            if (x == 0)
                continue;
            for (int j = 0; j < o.cols; ++j)
                if (o.at(k, j) != 0)
                    r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

bool QMat::is_zero() const
{
    for (auto& x : a)
        if (x != 0)
            return false;
    return true;
}

SpMat SpMat::from_dense(const QMat& m)
{
    SpMat s(m.rows, m.cols);
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < m.rows; ++i)
            if (m.at(i, j) != 0)
                s.col[j].push_back({i, m.at(i, j)});
    return s;
}

SpMat SpMat::identity(int n)
{
    SpMat s(n, n);
    for (int i = 0; i < n; ++i)
        s.col[i].push_back({i, Q(1)});
    return s;
}

void SpMat::add(int i, int j, const Q& v)
{
    if (v != 0)
        col[j].push_back({i, v});
}

void SpMat::finalize()
{
    for (auto& c : col) {
        std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return x.first < y.first; });
        std::vector<std::pair<int, Q>> out;
        for (auto& e : c) {
            if (!out.empty() && out.back().first == e.first)
                out.back().second += e.second;
            else
                out.push_back(e);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }),
                  out.end());
        c = std::move(out);
    }
}

QMat SpMat::dense() const
{
    QMat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (auto& [i, v] : col[j])
            m.at(i, j) += v;
    return m;
}

SpMat SpMat::operator*(const SpMat& o) const
{
    if (cols != o.rows)
        throw std::invalid_argument("matrix shape mismatch");
    SpMat r(rows, o.cols);
    for (int j = 0; j < o.cols; ++j) {
        std::map<int, Q> acc;
        for (auto& [k, v] : o.col[j])
            for (auto& [i, w] : col[k])
                acc[i] += v * w;
        for (auto& [i, v] : acc)
            if (v != 0)
                r.col[j].push_back({i, v});
    }
    return r;
}

SpMat SpMat::operator+(const SpMat& o) const
{
    if (rows != o.rows || cols != o.cols)
        throw std::invalid_argument("matrix shape mismatch");
    SpMat r = *this;
    for (int j = 0; j < cols; ++j)
        for (auto& e : o.col[j])
            r.col[j].push_back(e);
    r.finalize();
    return r;
}

SpMat SpMat::scaled(const Q& c) const
{
    SpMat r(rows, cols);
    if (c == 0)
        return r;
    for (int j = 0; j < cols; ++j)
        for (auto& [i, v] : col[j])
            r.col[j].push_back({i, v * c});
    return r;
}

bool SpMat::is_zero() const
{
    for (auto& c : col)
        for (auto& e : c)
            if (e.second != 0)
                return false;
    return true;
}

size_t SpMat::nnz() const
{
    size_t n = 0;
    for (auto& c : col)
        n += c.size();
    return n;
}

int SpMat::min_valuation(long p) const
{
    int v = kValInf;
    for (auto& c : col)
        for (auto& e : c)
            v = std::min(v, vp(e.second, p));
    return v;
}

RREF rref(QMat m)
{
    RREF r;
    int row = 0;
    for (int c = 0; c < m.cols && row < m.rows; ++c) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j)
                std::swap(m.at(piv, j), m.at(row, j));
        Q inv = 1 / m.at(row, c);
        for (int j = c; j < m.cols; ++j)
            m.at(row, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, c) == 0)
                continue;
            Q f = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                if (m.at(row, j) != 0)
                    m.at(i, j) -= f * m.at(row, j);
        }
        r.pivots.push_back(c);
        ++row;
    }
    r.R = std::move(m);
    return r;
}

int rank(const QMat& m)
{
    return static_cast<int>(rref(m).pivots.size());
}

int rank(const SpMat& m)
{
    // incremental sparse echelon on columns
    std::map<int, std::map<int, Q>> piv;  // leading row -> reduced column
    int r = 0;
    for (int j = 0; j < m.cols; ++j) {
        std::map<int, Q> v;
        for (auto& [i, x] : m.col[j])
            if (x != 0)
                v[i] += x;
        while (!v.empty()) {
            auto it = v.begin();
            if (it->second == 0) {
                v.erase(it);
                continue;
            }
            auto p = piv.find(it->first);
            if (p == piv.end())
                break;
            Q f = it->second;
            for (auto& [i, x] : p->second) {
                Q& t = v[i];
                t -= f * x;
                if (t == 0)
                    v.erase(i);
            }
        }
        if (v.empty())
            continue;
        Q inv = 1 / v.begin()->second;
        for (auto& [i, x] : v)
            x *= inv;
        piv.emplace(v.begin()->first, std::move(v));
        ++r;
    }
    return r;
}

std::vector<std::vector<Q>> kernel_basis(const QMat& m)
{
    RREF r = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : r.pivots)
        is_piv[c] = true;
    std::vector<std::vector<Q>> out;
    for (int f = 0; f < m.cols; ++f) {
        if (is_piv[f])
            continue;
        std::vector<Q> v(m.cols);
        v[f] = 1;
        for (size_t k = 0; k < r.pivots.size(); ++k)
            v[r.pivots[k]] = -r.R.at(static_cast<int>(k), f);
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------- F_p ----------------

namespace {
uint32_t inv_p(uint32_t a, uint32_t p)
{
    return static_cast<uint32_t>(inv_mod(a, p));
}

struct FpEchelon {
    std::vector<FpVec> rows;
    std::vector<int> pivcols;
};

FpEchelon echelon_mod_p(std::vector<FpVec> rows, uint32_t p)
{
    FpEchelon e;
    if (rows.empty())
        return e;
    size_t n = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t piv = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (rows[i][c] % p) {
                piv = i;
                break;
            }
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[r]);
        uint32_t inv = inv_p(rows[r][c], p);
        for (size_t j = c; j < n; ++j)
            rows[r][j] = static_cast<uint32_t>((uint64_t)rows[r][j] * inv % p);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            uint64_t f = rows[i][c];
            for (size_t j = c; j < n; ++j)
                if (rows[r][j])
                    rows[i][j] = static_cast<uint32_t>((rows[i][j] + (p - f) * rows[r][j]) % p);
        }
        e.pivcols.push_back(static_cast<int>(c));
        ++r;
    }
    rows.resize(r);
    e.rows = std::move(rows);
    return e;
}
}  // namespace

int rank_mod_p(std::vector<FpVec> rows, uint32_t p)
{
    return static_cast<int>(echelon_mod_p(std::move(rows), p).pivcols.size());
}

std::vector<FpVec> kernel_mod_p(const std::vector<FpVec>& rows, int ncols, uint32_t p)
{
    FpEchelon e = echelon_mod_p(rows, p);
    std::vector<bool> is_piv(ncols, false);
    for (int c : e.pivcols)
        is_piv[c] = true;
    std::vector<FpVec> out;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f])
            continue;
        FpVec v(ncols, 0);
        v[f] = 1;
        for (size_t k = 0; k < e.pivcols.size(); ++k)
            v[e.pivcols[k]] = (p - e.rows[k][f]) % p;
        out.push_back(std::move(v));
    }
    return out;
}

int rank_mod_p(const SpMat& m, long p)
{
    std::vector<FpVec> rows;
    for (int j = 0; j < m.cols; ++j) {
        FpVec v(m.rows, 0);
        for (auto& [i, x] : m.col[j])
            v[i] = static_cast<uint32_t>(residue(x, p, 1));
        rows.push_back(std::move(v));
    }
    return rank_mod_p(std::move(rows), static_cast<uint32_t>(p));
}

// ---------------- valuation-pivoted eliminations ----------------

namespace {

struct ExactEngine {
    using T = Q;
    long p;
    int cap;  // valuations >= cap count as zero
    T from(const Q& x) const { return x; }
    int val(const T& x) const
    {
        int v = vp(x, p);
        return v >= cap ? kValInf : v;
    }
    using Pivot = Q;
    Pivot prepare(const T& piv, int) const { return piv; }
    // factor f with a - f * piv = 0
    T ratio(const T& a, const Pivot& piv) const { return a / piv; }
    T submul(const T& x, const T& f, const T& y) const { return x - f * y; }
    uint32_t reduce(const T& x, int v) const
    {
        if (x == 0)
            return 0;
        Q t = x / Q(zpow(p, v));
        return static_cast<uint32_t>(residue(t, p, 1));
    }
    bool zero(const T& x) const { return x == 0; }
};

struct ModEngine {
    using T = int64_t;
    long p;
    int cap;
    int64_t m;
    ModEngine(long p_, int cap_) : p(p_), cap(cap_), m(ipow(p_, cap_)) {}
    T from(const Q& x) const { return residue(x, p, cap); }
    int val(const T& x) const
    {
        if (x == 0)
            return kValInf;
        int v = 0;
        T t = x;
        while (t % p == 0) {
            t /= p;
            ++v;
        }
        return v;
    }
    struct Pivot {
        int64_t pv, mm, inv;
    };
    Pivot prepare(const T& piv, int vpiv) const
    {
        int64_t pv = ipow(p, vpiv);
        int64_t mm = m / pv;
        return {pv, mm, inv_mod((piv / pv) % mm, mm)};
    }
    T ratio(const T& a, const Pivot& P) const { return mulmod((a / P.pv) % P.mm, P.inv, P.mm); }
    T submul(const T& x, const T& f, const T& y) const
    {
        int64_t r = (x - mulmod(f, y, m)) % m;
        return r < 0 ? r + m : r;
    }
    uint32_t reduce(const T& x, int v) const
    {
        if (x == 0)
            return 0;
        return static_cast<uint32_t>((x / ipow(p, v)) % p);
    }
    bool zero(const T& x) const { return x == 0; }
};

int shift_for(const SpMat& A, long p)
{
    int mv = A.min_valuation(p);
    return (mv == kValInf || mv >= 0) ? 0 : -mv;
}

template <class E>
std::vector<std::vector<typename E::T>> load_columns(const SpMat& A, const E& eng, int shift)
{
    Q sc(zpow(eng.p, shift));
    std::vector<std::vector<typename E::T>> cols(A.cols, std::vector<typename E::T>(A.rows));
    for (int j = 0; j < A.cols; ++j)
        for (auto& [i, x] : A.col[j])
            cols[j][i] = eng.from(x * sc);
    return cols;
}

/* Elimination on "lines" (columns or rows of A). At each step choose the
   entry of least valuation among remaining lines, across all positions;
   clear that position in the other remaining lines. Returns the chosen
   lines scaled by p^-v and reduced mod p. */
template <class E>
std::vector<std::pair<int, FpVec>> eliminate_lines(std::vector<std::vector<typename E::T>>& L,
                                                   const E& eng, int threshold, ElimStats* st)
{
    size_t nl = L.size();
    size_t len = nl ? L[0].size() : 0;
    std::vector<std::vector<int>> V(nl, std::vector<int>(len, kValInf));
    // least valuation of each line and its first position
    std::vector<int> lmin(nl, kValInf);
    std::vector<size_t> lpos(nl, 0);
    auto rescan = [&](size_t a) {
        lmin[a] = kValInf;
        for (size_t b = 0; b < len; ++b)
            if (V[a][b] < lmin[a]) {
                lmin[a] = V[a][b];
                lpos[a] = b;
            }
    };
    for (size_t a = 0; a < nl; ++a) {
        for (size_t b = 0; b < len; ++b)
            if (!eng.zero(L[a][b]))
                V[a][b] = eng.val(L[a][b]);
        rescan(a);
    }
    std::vector<bool> done(nl, false);
    std::vector<std::pair<int, FpVec>> out;
    std::vector<size_t> support;
    while (true) {
        int best = kValInf;
        size_t bl = 0;
        for (size_t a = 0; a < nl; ++a)
            if (!done[a] && lmin[a] < best) {
                best = lmin[a];
                bl = a;
            }
        if (best == kValInf || best >= threshold)
            break;
        size_t bp = lpos[bl];
        done[bl] = true;
        if (st) {
            st->min_pivot_val = std::min(st->min_pivot_val, best);
            st->max_pivot_val = std::max(st->max_pivot_val, best);
            ++st->pivots;
        }
        FpVec w(len, 0);
        support.clear();
        for (size_t b = 0; b < len; ++b)
            if (V[bl][b] != kValInf) {
                w[b] = eng.reduce(L[bl][b], best);
                if (b != bp)
                    support.push_back(b);
            }
        out.push_back({static_cast<int>(bl), std::move(w)});
        auto piv = eng.prepare(L[bl][bp], best);
        for (size_t a = 0; a < nl; ++a) {
            if (done[a] || V[a][bp] == kValInf)
                continue;
            auto f = eng.ratio(L[a][bp], piv);
            bool touched_min = lpos[a] == bp;
            for (size_t b : support) {
                L[a][b] = eng.submul(L[a][b], f, L[bl][b]);
                int v = eng.zero(L[a][b]) ? kValInf : eng.val(L[a][b]);
                if (V[a][b] == lmin[a] && lpos[a] == b && v > V[a][b])
                    touched_min = true;
                V[a][b] = v;
                if (v < lmin[a] || (v == lmin[a] && b < lpos[a])) {
                    lmin[a] = v;
                    lpos[a] = b;
                }
            }
            V[a][bp] = kValInf;
            L[a][bp] = typename E::T(0);
            if (touched_min)
                rescan(a);
        }
    }
    return out;
}

template <class E>
std::vector<FpVec> image_sat_impl(const SpMat& A, const E& eng, int shift, int N, ElimStats* st)
{
    auto cols = load_columns(A, eng, shift);
    auto piv = eliminate_lines(cols, eng, N + shift, st);
    std::vector<FpVec> out;
    for (auto& [l, w] : piv)
        out.push_back(std::move(w));
    return out;
}

template <class E>
std::vector<FpVec> cycles_impl(const SpMat& A, const E& eng, int shift, int N, ElimStats* st)
{
    auto cols = load_columns(A, eng, shift);
    // transpose to rows
    std::vector<std::vector<typename E::T>> rows(A.rows, std::vector<typename E::T>(A.cols));
    for (int j = 0; j < A.cols; ++j)
        for (int i = 0; i < A.rows; ++i)
            rows[i][j] = cols[j][i];
    auto piv = eliminate_lines(rows, eng, N + shift, st);
    std::vector<FpVec> eq;
    for (auto& [l, w] : piv)
        eq.push_back(std::move(w));
    return kernel_mod_p(eq, A.cols, static_cast<uint32_t>(eng.p));
}

}  // namespace

std::vector<FpVec> image_saturation_mod_p(const SpMat& A, long p, int N, Backend backend,
                                          ElimStats* stats)
{
    int shift = shift_for(A, p);
    if (backend == Backend::rational)
        return image_sat_impl(A, ExactEngine{p, kValInf}, shift, N, stats);
    return image_sat_impl(A, ModEngine(p, N + shift + 1), shift, N, stats);
}

std::vector<FpVec> cycles_mod_p(const SpMat& A, long p, int N, Backend backend, ElimStats* stats)
{
    int shift = shift_for(A, p);
    if (A.rows == 0 || A.cols == 0) {
        std::vector<FpVec> out;
        for (int j = 0; j < A.cols; ++j) {
            FpVec v(A.cols, 0);
            v[j] = 1;
            out.push_back(v);
        }
        return out;
    }
    if (backend == Backend::rational)
        return cycles_impl(A, ExactEngine{p, kValInf}, shift, N, stats);
    return cycles_impl(A, ModEngine(p, N + shift + 1), shift, N, stats);
}

// ---------------- rank with certificate ----------------

ScalarMatrix to_scalar_matrix(const QMat& m, Backend b, long p, int N)
{
    ScalarMatrix s;
    s.rows = m.rows;
    s.cols = m.cols;
    for (auto& x : m.a)
        s.a.push_back(b == Backend::rational ? Scalar::rational(x, p) : Scalar::padic(x, p, N));
    return s;
}

RankResult rank_kernel_image(const ScalarMatrix& M, int slack)
{
    RankResult res;
    if (M.rows == 0 || M.cols == 0) {
        if (M.cols > 0) {
            long p = 2;
            for (int j = 0; j < M.cols; ++j) {
                std::vector<Scalar> v;
                for (int k = 0; k < M.cols; ++k)
                    v.push_back(Scalar::rational(k == j ? 1 : 0, p));
                res.kernel.push_back(v);
            }
        }
        return res;
    }
    const Scalar& s0 = M.a[0];
    long p = s0.prime();
    if (s0.backend() == Backend::rational) {
        QMat q(M.rows, M.cols);
        for (int i = 0; i < M.rows; ++i)
            for (int j = 0; j < M.cols; ++j)
                q.at(i, j) = M.at(i, j).value();
        RREF r = rref(q);
        res.rank = static_cast<int>(r.pivots.size());
        res.image_columns = r.pivots;
        for (auto& v : kernel_basis(q)) {
            std::vector<Scalar> s;
            for (auto& x : v)
                s.push_back(Scalar::rational(x, p));
            res.kernel.push_back(std::move(s));
        }
        for (int c : r.pivots)
            for (int i = 0; i < M.rows; ++i)
                if (q.at(i, c) != 0)
                    res.min_pivot_val = std::min(res.min_pivot_val, vp(q.at(i, c), p));
        return res;
    }

    // p-adic: full pivoting by least valuation modulo p^(N+shift)
    int N = kValInf, shift = 0;
    for (auto& x : M.a) {
        N = std::min(N, x.precision());
        if (!x.is_zero())
            shift = std::max(shift, -x.valuation());
    }
    int cap = N + shift;
    int64_t mod = ipow(p, cap);
    ModEngine eng(p, cap);
    int R = M.rows, C = M.cols;
    std::vector<std::vector<int64_t>> a(R, std::vector<int64_t>(C));
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) {
            const Scalar& x = M.at(i, j);
            if (x.is_zero())
                continue;
            int v = x.valuation() + shift;
            if (v >= cap)
                continue;
            a[i][j] = mulmod(x.unit() % mod, ipow(p, v), mod);
        }
    // column transform, tracked for the kernel
    std::vector<std::vector<int64_t>> T(C, std::vector<int64_t>(C, 0));
    for (int j = 0; j < C; ++j)
        T[j][j] = 1;
    std::vector<bool> rdone(R, false), cdone(C, false);
    while (true) {
        int best = kValInf, bi = -1, bj = -1;
        for (int i = 0; i < R; ++i) {
            if (rdone[i])
                continue;
            for (int j = 0; j < C; ++j) {
                if (cdone[j] || a[i][j] == 0)
                    continue;
                int v = eng.val(a[i][j]);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0)
            break;
        if (best >= cap - slack) {
            res.min_rejected_val = best - shift;
            res.certified = false;
            throw PrecisionExhausted("pivot of valuation " + std::to_string(best - shift) +
                                     " within slack " + std::to_string(slack) + " of precision " +
                                     std::to_string(N));
        }
        rdone[bi] = cdone[bj] = true;
        res.image_columns.push_back(bj);
        res.min_pivot_val = std::min(res.min_pivot_val, best - shift);
        res.max_pivot_val = std::max(res.max_pivot_val, best - shift);
        ++res.rank;
        auto piv = eng.prepare(a[bi][bj], best);
        // clear the pivot row by column operations
        for (int j = 0; j < C; ++j) {
            if (j == bj || a[bi][j] == 0)
                continue;
            int64_t f = eng.ratio(a[bi][j], piv);
            for (int i = 0; i < R; ++i)
                if (a[i][bj])
                    a[i][j] = eng.submul(a[i][j], f, a[i][bj]);
            for (int k = 0; k < C; ++k)
                if (T[k][bj])
                    T[k][j] = eng.submul(T[k][j], f, T[k][bj]);
        }
        // clear the pivot column by row operations (no tracking needed)
        for (int i = 0; i < R; ++i) {
            if (i == bi || a[i][bj] == 0)
                continue;
            int64_t f = eng.ratio(a[i][bj], piv);
            for (int j = 0; j < C; ++j)
                if (a[bi][j])
                    a[i][j] = eng.submul(a[i][j], f, a[bi][j]);
        }
    }
    std::sort(res.image_columns.begin(), res.image_columns.end());
    for (int j = 0; j < C; ++j) {
        if (cdone[j])
            continue;
        std::vector<Scalar> v;
        for (int k = 0; k < C; ++k)
            v.push_back(Scalar::padic_unit(T[k][j], 0, p, cap));
        res.kernel.push_back(std::move(v));
    }
    return res;
}

}  // namespace dgc
