#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgc/homalg.hpp"

#include <random>

using namespace dgc;

namespace {

SpMat mat(int r, int c, std::vector<int> entries)
{
    QMat m(r, c);
    for (int i = 0; i < r * c; ++i)
        m.a[i] = entries[i];
    return SpMat::from_dense(m);
}

FiniteComplex two_term(int a, int b, const SpMat& d)
{
    FiniteComplex C;
    C.lo = 0;
    C.dims = {a, b};
    C.d = {d};
    return C;
}

// levels with the same complex and the given maps in each degree
ProComplex constant_system(const FiniteComplex& C, int M, const std::vector<SpMat>& sig)
{
    ProComplex P;
    for (int m = 0; m < M; ++m)
        P.levels.push_back(C);
    for (int m = 0; m + 1 < M; ++m)
        P.sigma.push_back(sig);
    return P;
}

// the cone carries one extra degree on top, which must be acyclic
std::vector<int> holim_h(const ProComplex& P)
{
    auto h = homology_dims(holim(P));
    REQUIRE(!h.empty());
    CHECK(h.back() == 0);
    h.pop_back();
    return h;
}

}  // namespace

TEST_CASE("rank examples")
{
    CHECK(rank_kernel_image(to_scalar_matrix(QMat::identity(3), Backend::padic, 5, 8)).rank == 3);
    QMat m(2, 2);
    m.at(0, 0) = 5;
    m.at(0, 1) = 1;
    for (Backend b : {Backend::rational, Backend::padic})
        CHECK(rank_kernel_image(to_scalar_matrix(m, b, 5, 8)).rank == 1);
}

TEST_CASE("precision exhausted")
{
    QMat m(1, 1);
    m.at(0, 0) = 625;  // valuation 4 at N = 6 with slack 4
    CHECK_THROWS_AS(rank_kernel_image(to_scalar_matrix(m, Backend::padic, 5, 6)), PrecisionExhausted);
    CHECK(rank_kernel_image(to_scalar_matrix(m, Backend::padic, 5, 12)).rank == 1);
}

TEST_CASE("homology examples")
{
    FiniteComplex zero;
    zero.dims = {0, 0};
    zero.d = {SpMat(0, 0)};
    CHECK(homology_dims(zero) == std::vector<int>{0, 0});

    CHECK(homology_dims(two_term(1, 1, SpMat::identity(1))) == std::vector<int>{0, 0});

    // chain complex 0 -> K^2 -> K -> 0, surjective: H_1 = 1, H_0 = 0
    FiniteComplex C = FiniteComplex::from_chain({1, 2}, {SpMat(), mat(1, 2, {1, 1})});
    auto h = homology_dims(C);
    CHECK(C.lo == -1);
    CHECK(h == std::vector<int>{1, 0});
    CHECK(homology_dims(C, Backend::padic, 5, 8) == h);
}

TEST_CASE("d squared is checked")
{
    FiniteComplex C;
    C.dims = {1, 1, 1};
    C.d = {SpMat::identity(1), SpMat::identity(1)};
    CHECK_FALSE(C.check_d2());
    // validate only checks shapes
    CHECK_NOTHROW(C.validate());
    C.d[1] = SpMat(2, 1);
    CHECK_THROWS(C.validate());
}

TEST_CASE("holim of constant and trivial systems")
{
    // acyclic K -> K and a complex with cohomology (1, 1)
    for (auto& C : {two_term(1, 1, SpMat::identity(1)), two_term(2, 1, mat(1, 2, {1, 0}))}) {
        auto base = homology_dims(C);
        ProComplex P = constant_system(C, 3, {SpMat::identity(C.dims[0]), SpMat::identity(C.dims[1])});
        P.validate();
        CHECK(holim_h(P) == base);
        ProComplex one = constant_system(C, 1, {});
        CHECK(holim_h(one) == base);
    }
    FiniteComplex Z;
    Z.dims = {0, 0};
    Z.d = {SpMat(0, 0)};
    ProComplex P = constant_system(Z, 3, {SpMat(0, 0), SpMat(0, 0)});
    CHECK(holim_h(P) == std::vector<int>{0, 0});
}

TEST_CASE("holim rejects a non chain map")
{
    FiniteComplex C = two_term(1, 1, SpMat::identity(1));
    ProComplex P = constant_system(C, 2, {SpMat::identity(1), SpMat(1, 1)});
    CHECK_THROWS(P.validate());
}

TEST_CASE("lim and lim1 examples")
{
    Tower id{{1, 1, 1}, {QMat::identity(1), QMat::identity(1)}};
    auto r = lim_lim1(id);
    CHECK(r.lim == 1);
    CHECK(r.lim1 == 0);
    CHECK(r.lim_stable == 1);

    Tower zero{{1, 1, 1}, {QMat(1, 1), QMat(1, 1)}};
    r = lim_lim1(zero);
    CHECK(r.lim_stable == 0);
    CHECK(r.lim1 == 0);
    CHECK(r.lim == 1);  // the top level survives the finite truncation

    QMat proj(1, 2);
    proj.at(0, 0) = 1;
    Tower surj{{1, 2, 2}, {proj, QMat::identity(2)}};
    r = lim_lim1(surj);
    CHECK(r.lim1 == 0);
    CHECK(r.lim == 2);
    CHECK(r.lim_stable == 1);
}

TEST_CASE("holim bookkeeping on random systems")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> e(-2, 2);
    for (int it = 0; it < 30; ++it) {
        // levels 0 -> K^a --d--> K^b with d of random rank, maps commuting with d
        int a = 1 + it % 3, b = 1 + (it / 3) % 3, M = 2 + it % 3;
        QMat d(b, a);
        for (int k = 0; k < std::min(a, b); ++k)
            if (e(rng) != 0)
                d.at(k, k) = e(rng) == 0 ? 1 : 2;
        FiniteComplex C = two_term(a, b, SpMat::from_dense(d));
        // a scalar multiple of the identity is always a chain map
        ProComplex P;
        for (int m = 0; m < M; ++m)
            P.levels.push_back(C);
        for (int m = 0; m + 1 < M; ++m) {
            Q s = e(rng);
            P.sigma.push_back({SpMat::identity(a).scaled(s), SpMat::identity(b).scaled(s)});
        }
        P.validate();
        for (auto& c : holim_bookkeeping(P))
            CHECK(c.ok);
    }
}

TEST_CASE("cohomology tower")
{
    FiniteComplex C = two_term(2, 1, mat(1, 2, {1, 0}));
    ProComplex P = constant_system(C, 3, {SpMat::identity(2).scaled(3), SpMat::identity(1).scaled(3)});
    Tower T = cohomology_tower(P, 0);
    CHECK(T.dims == std::vector<int>{1, 1, 1});
    CHECK(lim_lim1(T).lim_stable == 1);
}

TEST_CASE("stabilization")
{
    BettiReport R;
    R.caps = {8, 12, 16};
    R.m_max = 3;
    R.window = 3;
    for (int D : R.caps)
        for (int m = 1; m <= 3; ++m)
            R.cells.push_back({D, m, {1, D == 8 ? 2 : 1, 0}});
    R.stabilize();
    CHECK(R.stable[0] == 1);
    CHECK_FALSE(R.stable[1].has_value());
    CHECK(R.stable[2] == 0);
    CHECK_FALSE(R.resolved());

    R.window = 2;
    R.stabilize();
    CHECK(R.stable[1] == 1);
    CHECK(R.resolved());

    // too few caps for the window: everything unresolved
    R.caps = {16};
    R.window = 3;
    R.stabilize();
    CHECK_FALSE(R.stable[0].has_value());
}

TEST_CASE("matrix json round trip")
{
    QMat m(2, 3);
    m.at(0, 1) = Q(3, 5);
    m.at(1, 2) = -7;
    SpMat s = SpMat::from_dense(m);
    SpMat back = matrix_from_json(matrix_to_json(s));
    CHECK(back.rows == 2);
    CHECK(back.cols == 3);
    CHECK(back.dense().a == m.a);
}
