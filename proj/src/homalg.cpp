#include "dgc/homalg.hpp"

#include "json.hpp"

namespace dgc {

int FiniteComplex::dim(int deg) const
{
    if (deg < lo || deg > hi())
        return 0;
    return dims[deg - lo];
}

SpMat FiniteComplex::diff(int deg) const
{
    if (deg < lo || deg >= hi())
        return SpMat(dim(deg + 1), dim(deg));
    return d[deg - lo];
}

void FiniteComplex::validate() const
{
    if (dims.empty()) {
        if (!d.empty())
            throw std::invalid_argument("complex without degrees has differentials");
        return;
    }
    if (d.size() + 1 != dims.size())
        throw std::invalid_argument("complex needs one differential between consecutive degrees");
    for (size_t k = 0; k < d.size(); ++k)
        if (d[k].cols != dims[k] || d[k].rows != dims[k + 1])
            throw std::invalid_argument("differential " + std::to_string(k) + " has wrong shape");
}

bool FiniteComplex::check_d2() const
{
    for (size_t k = 0; k + 1 < d.size(); ++k)
        if (!(d[k + 1] * d[k]).is_zero())
            return false;
    return true;
}

FiniteComplex FiniteComplex::from_chain(const std::vector<int>& dims_,
                                        const std::vector<SpMat>& boundaries)
{
    FiniteComplex C;
    int top = static_cast<int>(dims_.size()) - 1;
    C.lo = -top;
    for (int n = top; n >= 0; --n)
        C.dims.push_back(dims_[n]);
    for (int n = top; n >= 1; --n)
        C.d.push_back(boundaries[n]);
    C.validate();
    return C;
}

std::vector<int> homology_dims(const FiniteComplex& C)
{
    C.validate();
    std::vector<int> rk(C.dims.size() + 1, 0);
    for (size_t k = 0; k < C.d.size(); ++k)
        rk[k + 1] = rank(C.d[k]);
    std::vector<int> h;
    for (size_t k = 0; k < C.dims.size(); ++k)
        h.push_back(C.dims[k] - rk[k + 1] - rk[k]);
    return h;
}

std::vector<int> homology_dims(const FiniteComplex& C, Backend b, long p, int N, int slack)
{
    if (b == Backend::rational)
        return homology_dims(C);
    C.validate();
    std::vector<int> rk(C.dims.size() + 1, 0);
    for (size_t k = 0; k < C.d.size(); ++k) {
        if (C.d[k].rows == 0 || C.d[k].cols == 0)
            continue;
        rk[k + 1] = rank_kernel_image(to_scalar_matrix(C.d[k].dense(), b, p, N), slack).rank;
    }
    std::vector<int> h;
    for (size_t k = 0; k < C.dims.size(); ++k)
        h.push_back(C.dims[k] - rk[k + 1] - rk[k]);
    return h;
}

void ProComplex::validate() const
{
    if (levels.empty())
        return;
    if (sigma.size() + 1 != levels.size())
        throw std::invalid_argument("pro-complex needs one transition per pair of levels");
    for (auto& L : levels) {
        L.validate();
        if (L.lo != levels[0].lo || L.dims.size() != levels[0].dims.size())
            throw std::invalid_argument("pro-complex levels have different gradings");
    }
    for (size_t m = 0; m < sigma.size(); ++m) {
        const auto& s = sigma[m];
        if (s.size() != levels[m].dims.size())
            throw std::invalid_argument("transition has wrong number of degrees");
        for (size_t k = 0; k < s.size(); ++k) {
            if (s[k].rows != levels[m].dims[k] || s[k].cols != levels[m + 1].dims[k])
                throw std::invalid_argument("transition has wrong shape");
            if (k + 1 < s.size()) {
                SpMat a = levels[m].d[k] * s[k];
                SpMat b = s[k + 1] * levels[m + 1].d[k];
                if (!(a + b.scaled(-1)).is_zero())
                    throw std::invalid_argument("transition is not a chain map");
            }
        }
    }
}

namespace {
void put_block(SpMat& M, int r0, int c0, const SpMat& B, const Q& scale)
{
    for (int j = 0; j < B.cols; ++j)
        for (auto& [i, v] : B.col[j])
            M.add(r0 + i, c0 + j, v * scale);
}
}  // namespace

FiniteComplex holim(const ProComplex& P)
{
    P.validate();
    FiniteComplex out;
    int M = P.size();
    if (M == 0)
        return out;
    const FiniteComplex& L0 = P.levels[0];
    out.lo = L0.lo;
    int top = L0.hi() + 1;
    auto xdim = [&](int l) {
        int s = 0;
        for (auto& L : P.levels)
            s += L.dim(l);
        return s;
    };
    auto ydim = [&](int l) {
        int s = 0;
        for (int m = 0; m + 1 < M; ++m)
            s += P.levels[m].dim(l);
        return s;
    };
    for (int l = out.lo; l <= top; ++l)
        out.dims.push_back(xdim(l) + ydim(l - 1));
    for (int l = out.lo; l < top; ++l) {
        SpMat D(xdim(l + 1) + ydim(l), xdim(l) + ydim(l - 1));
        int rx = 0, cx = 0;
        std::vector<int> xoff;  // column offset of level m in X^l
        for (int m = 0; m < M; ++m) {
            xoff.push_back(cx);
            put_block(D, rx, cx, P.levels[m].diff(l), 1);
            rx += P.levels[m].dim(l + 1);
            cx += P.levels[m].dim(l);
        }
        int ry = xdim(l + 1), cy = xdim(l);
        for (int m = 0; m + 1 < M; ++m) {
            int n = P.levels[m].dim(l);
            for (int i = 0; i < n; ++i)
                D.add(ry + i, xoff[m] + i, 1);
            if (l >= L0.lo && l <= L0.hi())
                put_block(D, ry, xoff[m + 1], P.sigma[m][l - L0.lo], -1);
            put_block(D, ry, cy, P.levels[m].diff(l - 1), -1);
            ry += n;
            cy += P.levels[m].dim(l - 1);
        }
        D.finalize();
        out.d.push_back(std::move(D));
    }
    out.validate();
    return out;
}

LimResult lim_lim1(const Tower& T)
{
    LimResult r;
    int M = static_cast<int>(T.dims.size());
    if (M == 0)
        return r;
    int X = 0, Y = 0;
    std::vector<int> off;
    for (int m = 0; m < M; ++m) {
        off.push_back(X);
        X += T.dims[m];
        if (m + 1 < M)
            Y += T.dims[m];
    }
    QMat phi(Y, X);
    for (int m = 0; m + 1 < M; ++m) {
        for (int i = 0; i < T.dims[m]; ++i)
            phi.at(off[m] + i, off[m] + i) += 1;
        const QMat& s = T.maps[m];
        for (int i = 0; i < s.rows; ++i)
            for (int j = 0; j < s.cols; ++j)
                phi.at(off[m] + i, off[m + 1] + j) -= s.at(i, j);
    }
    int rk = (X && Y) ? rank(phi) : 0;
    r.lim = X - rk;
    r.lim1 = Y - rk;
    QMat comp = QMat::identity(T.dims[M - 1]);
    for (int m = M - 2; m >= 0; --m)
        comp = T.maps[m] * comp;
    r.lim_stable = rank(comp);
    return r;
}

namespace {

// independent columns of A, in order
std::vector<std::vector<Q>> column_basis(const QMat& A)
{
    std::vector<std::vector<Q>> out;
    if (A.rows == 0 || A.cols == 0)
        return out;
    RREF r = rref(A);
    for (int c : r.pivots) {
        std::vector<Q> v(A.rows);
        for (int i = 0; i < A.rows; ++i)
            v[i] = A.at(i, c);
        out.push_back(std::move(v));
    }
    return out;
}

struct LevelCohomology {
    std::vector<std::vector<Q>> B, H;  // bases of boundaries and of a complement in cycles
};

LevelCohomology level_cohomology(const FiniteComplex& C, int deg)
{
    LevelCohomology lc;
    int n = C.dim(deg);
    lc.B = column_basis(C.diff(deg - 1).dense());
    std::vector<std::vector<Q>> Z;
    if (n > 0) {
        QMat d = C.diff(deg).dense();
        if (d.rows == 0) {
            for (int i = 0; i < n; ++i) {
                std::vector<Q> e(n);
                e[i] = 1;
                Z.push_back(e);
            }
        }
        else
            Z = kernel_basis(d);
    }
    // greedy complement of B inside Z
    QMat G(n, static_cast<int>(lc.B.size() + Z.size()));
    for (size_t j = 0; j < lc.B.size(); ++j)
        for (int i = 0; i < n; ++i)
            G.at(i, static_cast<int>(j)) = lc.B[j][i];
    for (size_t j = 0; j < Z.size(); ++j)
        for (int i = 0; i < n; ++i)
            G.at(i, static_cast<int>(lc.B.size() + j)) = Z[j][i];
    if (G.cols == 0 || n == 0)
        return lc;
    RREF r = rref(G);
    for (int c : r.pivots)
        if (c >= static_cast<int>(lc.B.size()))
            lc.H.push_back(Z[c - lc.B.size()]);
    return lc;
}

// coordinates along H of vectors v in span(B, H)
QMat h_coordinates(const LevelCohomology& lc, const std::vector<std::vector<Q>>& vs, int n)
{
    int nb = static_cast<int>(lc.B.size()), nh = static_cast<int>(lc.H.size());
    QMat out(nh, static_cast<int>(vs.size()));
    if (nh == 0 || vs.empty())
        return out;
    QMat G(n, nb + nh + static_cast<int>(vs.size()));
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < n; ++i)
            G.at(i, j) = lc.B[j][i];
    for (int j = 0; j < nh; ++j)
        for (int i = 0; i < n; ++i)
            G.at(i, nb + j) = lc.H[j][i];
    for (size_t j = 0; j < vs.size(); ++j)
        for (int i = 0; i < n; ++i)
            G.at(i, nb + nh + static_cast<int>(j)) = vs[j][i];
    RREF r = rref(G);
    for (size_t k = 0; k < r.pivots.size(); ++k) {
        int c = r.pivots[k];
        if (c >= nb + nh)
            throw std::logic_error("induced map leaves the cycles");
        if (c < nb)
            continue;
        for (size_t j = 0; j < vs.size(); ++j)
            out.at(c - nb, static_cast<int>(j)) = r.R.at(static_cast<int>(k), nb + nh + static_cast<int>(j));
    }
    return out;
}

}  // namespace

Tower cohomology_tower(const ProComplex& P, int deg)
{
    P.validate();
    Tower T;
    std::vector<LevelCohomology> lcs;
    for (auto& L : P.levels) {
        lcs.push_back(level_cohomology(L, deg));
        T.dims.push_back(static_cast<int>(lcs.back().H.size()));
    }
    const FiniteComplex& L0 = P.levels[0];
    for (int m = 0; m + 1 < P.size(); ++m) {
        int n = P.levels[m].dim(deg);
        std::vector<std::vector<Q>> imgs;
        if (deg >= L0.lo && deg <= L0.hi()) {
            QMat s = P.sigma[m][deg - L0.lo].dense();
            for (auto& h : lcs[m + 1].H) {
                std::vector<Q> v(n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < s.cols; ++j)
                        if (s.at(i, j) != 0)
                            v[i] += s.at(i, j) * h[j];
                imgs.push_back(std::move(v));
            }
        }
        QMat c = h_coordinates(lcs[m], imgs, n);
        if (c.cols != T.dims[m + 1])
            c = QMat(T.dims[m], T.dims[m + 1]);
        T.maps.push_back(std::move(c));
    }
    return T;
}

std::vector<HolimCheck> holim_bookkeeping(const ProComplex& P)
{
    std::vector<HolimCheck> out;
    FiniteComplex C = holim(P);
    std::vector<int> h = homology_dims(C);
    for (int l = C.lo; l <= C.hi(); ++l) {
        HolimCheck hc;
        hc.degree = l;
        hc.holim_dim = h[l - C.lo];
        hc.lim = lim_lim1(cohomology_tower(P, l)).lim;
        hc.lim1_prev = lim_lim1(cohomology_tower(P, l - 1)).lim1;
        hc.ok = hc.holim_dim == hc.lim + hc.lim1_prev;
        out.push_back(hc);
    }
    return out;
}

const BettiCell* BettiReport::cell(int D, int m) const
{
    for (auto& c : cells)
        if (c.D == D && c.m == m)
            return &c;
    return nullptr;
}

void BettiReport::stabilize()
{
    size_t ndeg = 0;
    for (auto& c : cells)
        ndeg = std::max(ndeg, c.betti.size());
    stable.assign(ndeg, std::nullopt);
    int w = window;
    if (static_cast<int>(caps.size()) < w || m_max < w)
        return;
    for (size_t l = 0; l < ndeg; ++l) {
        std::optional<int> val;
        bool agree = true;
        for (size_t a = caps.size() - w; a < caps.size() && agree; ++a)
            for (int m = m_max - w + 1; m <= m_max && agree; ++m) {
                const BettiCell* c = cell(caps[a], m);
                if (!c) {
                    agree = false;
                    break;
                }
                int v = l < c->betti.size() ? c->betti[l] : 0;
                if (!val)
                    val = v;
                else if (*val != v)
                    agree = false;
            }
        if (agree)
            stable[l] = val;
    }
}

bool BettiReport::resolved() const
{
    for (auto& s : stable)
        if (!s)
            return false;
    return !stable.empty();
}

std::string matrix_to_json(const SpMat& A)
{
    nlohmann::json j;
    j["rows"] = A.rows;
    j["cols"] = A.cols;
    QMat d = A.dense();
    auto data = nlohmann::json::array();
    for (int i = 0; i < A.rows; ++i) {
        auto row = nlohmann::json::array();
        for (int c = 0; c < A.cols; ++c)
            row.push_back(d.at(i, c).get_str());
        data.push_back(row);
    }
    j["data"] = data;
    return j.dump();
}

SpMat matrix_from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
    SpMat A(r, c);
    auto& data = j.at("data");
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) {
            Q v(data.at(i).at(k).get<std::string>());
            v.canonicalize();
            A.add(i, k, v);
        }
    A.finalize();
    return A;
}

}  // namespace dgc
