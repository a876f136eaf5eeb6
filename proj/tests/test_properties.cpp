#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgc/derham.hpp"

#include <random>

using namespace dgc;

namespace {

Poly random_poly(std::mt19937& g, int nv, int deg, int terms)
{
    Poly f(nv);
    for (int k = 0; k < terms; ++k) {
        Mono m(nv, 0);
        int d = static_cast<int>(g() % (deg + 1));
        for (int i = 0; i < d; ++i)
            ++m[g() % nv];
        f.add_term(m, Q(static_cast<int>(g() % 11) - 5));
    }
    return f;
}

}  // namespace

TEST_CASE("normal forms are idempotent and multiplicative")
{
    std::mt19937 g(21);
    std::vector<std::vector<std::string>> ideals{{"x*y - 1"}, {"x^2 - y^3"}, {"x*y", "y^2 - x"}, {"x^2 + y^2 - 1"}};
    for (auto& rels : ideals) {
        auto A = PresentedAlgebra::parse({"x", "y"}, rels);
        for (int it = 0; it < 25; ++it) {
            Poly f = random_poly(g, 2, 5, 4), h = random_poly(g, 2, 5, 4);
            Poly nf = A.nf(f);
            CHECK(A.nf(nf) == nf);
            CHECK(A.nf(f * h) == A.nf(nf * A.nf(h)));
            CHECK(A.nf(f + h) == nf + A.nf(h));
        }
    }
}

TEST_CASE("rational and p-adic ranks agree on integral matrices")
{
    std::mt19937 g(4);
    for (int it = 0; it < 200; ++it) {
        int r = 1 + static_cast<int>(g() % 6), c = 1 + static_cast<int>(g() % 6);
        QMat m(r, c);
        for (auto& x : m.a)
            if (g() % 3)
                x = Q(static_cast<int>(g() % 51) - 25);
        // a dependent row keeps the rank below full
        if (r > 1)
            for (int j = 0; j < c; ++j)
                m.at(r - 1, j) = m.at(0, j) * 5 + m.at(r > 2 ? 1 : 0, j);
        int rq = rank_kernel_image(to_scalar_matrix(m, Backend::rational, 5, 20)).rank;
        int rp = rank_kernel_image(to_scalar_matrix(m, Backend::padic, 5, 20)).rank;
        CHECK(rq == rp);
    }
}

TEST_CASE("Euler characteristic is preserved by cohomology")
{
    std::mt19937 g(8);
    for (int it = 0; it < 60; ++it) {
        // d1 d0 = 0 by building d1 to kill the image of d0
        int a = 1 + static_cast<int>(g() % 4), b = 2 + static_cast<int>(g() % 4);
        QMat d0(b, a), d1(1, b);
        for (auto& x : d0.a)
            x = Q(static_cast<int>(g() % 7) - 3);
        for (int i = 0; i < b; ++i)
            d0.at(i, 0) = i == 0 ? 1 : 0;
        d1.at(0, b - 1) = 1;
        for (int j = 0; j < a; ++j)
            d0.at(b - 1, j) = 0;
        FiniteComplex C;
        C.dims = {a, b, 1};
        C.d = {SpMat::from_dense(d0), SpMat::from_dense(d1)};
        REQUIRE(C.check_d2());
        auto h = homology_dims(C);
        CHECK(h[0] - h[1] + h[2] == a - b + 1);
        CHECK(homology_dims(C, Backend::padic, 5, 12) == h);
    }
}

TEST_CASE("de Rham differential squares to zero on random forms")
{
    std::mt19937 g(13);
    for (auto& rels : std::vector<std::vector<std::string>>{{}, {"x*y - 1"}, {"x^2 - y^3"}}) {
        auto A = PresentedAlgebra::parse({"x", "y", "z"}, rels);
        DifferentialModule M(A);
        for (int D = 2; D <= 5; ++D)
            CHECK(M.complex(D).check_d2());
        for (int it = 0; it < 20; ++it) {
            Poly f = random_poly(g, 3, 3, 3), h = random_poly(g, 3, 3, 3);
            Form w = M.wedge(M.function(f), M.dpoly(h));
            CHECK(M.in_relation_module(M.d(M.d(w)), 3, 10));
        }
    }
}
