#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgc/cyclic.hpp"

#include <random>

using namespace dgc;

namespace {

Poly v(int nv, int i)
{
    return Poly::var(nv, i);
}

ChainElement random_chain(const HochschildComplex& H, std::mt19937& g, int nv, int n)
{
    ChainElement x;
    x.n = n;
    for (int k = 0; k < 3; ++k) {
        std::vector<Poly> e;
        for (int i = 0; i <= n; ++i) {
            Mono m(nv, 0);
            for (int j = 0; j < nv; ++j)
                m[j] = static_cast<int>(g() % 3);
            Poly f(nv);
            f.add_term(m, 1);
            e.push_back(f);
        }
        x = x + H.tensor(e) * Q(static_cast<int>(g() % 5) + 1);
    }
    return x;
}

}  // namespace

TEST_CASE("Hochschild boundary examples")
{
    auto A = PresentedAlgebra::parse({"x", "y"}, {});
    HochschildComplex H(A);
    Poly one = Poly::constant(2, 1), x = v(2, 0), y = v(2, 1);
    ChainElement lhs = H.b(H.tensor({one, x, y}));
    ChainElement rhs = H.tensor({x, y}) - H.tensor({one, x * y}) + H.tensor({y, x});
    CHECK(lhs == rhs);
    // b(a0 (x) a1) = a0 a1 - a1 a0 vanishes on a commutative algebra
    CHECK(H.b(H.tensor({x, y})).is_zero());
    CHECK(H.bprime(H.tensor({x, y})) == H.tensor({x * y}));
}

TEST_CASE("cyclic operators")
{
    auto A = PresentedAlgebra::parse({"x"}, {});
    HochschildComplex H(A);
    Poly one = Poly::constant(1, 1), x = v(1, 0);
    CHECK(H.s(H.tensor({x})) == H.tensor({one, x}));
    CHECK(H.t(H.tensor({x})) == H.tensor({x}));
    CHECK(H.t(H.tensor({one, x})) == H.tensor({x, one}) * Q(-1));
    CHECK(H.N(H.tensor({x})) == H.tensor({x}));
    CHECK(H.B(H.tensor({x})) == H.tensor({one, x}) + H.tensor({x, one}));
    CHECK(CyclicSigns::face(3) == -1);
    CHECK(CyclicSigns::rotation(2) == 1);
}

TEST_CASE("mixed complex identities on random chains")
{
    std::mt19937 g(3);
    for (auto& [names, rels] : std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>{
             {{"x"}, {}}, {{"x", "y"}, {"x*y"}}, {{"x", "y"}, {"x^2 - y^3"}}}) {
        auto A = PresentedAlgebra::parse(names, rels);
        HochschildComplex H(A);
        int nv = static_cast<int>(names.size());
        for (int n = 0; n <= 3; ++n)
            for (int it = 0; it < 10; ++it) {
                ChainElement c = random_chain(H, g, nv, n);
                CHECK(H.b(H.b(c)).is_zero());
                CHECK(H.B(H.B(c)).is_zero());
                CHECK((H.b(H.B(c)) + H.B(H.b(c))).is_zero());
            }
    }
}

TEST_CASE("HKR examples")
{
    auto A = PresentedAlgebra::parse({"x", "y"}, {});
    HochschildComplex H(A);
    DifferentialModule M(A);
    Poly one = Poly::constant(2, 1), x = v(2, 0), y = v(2, 1);
    Form dxdy = M.wedge(M.dpoly(x), M.dpoly(y));
    CHECK(H.hkr(H.tensor({one, x, y})) == dxdy * Q(1, 2));
    CHECK(H.hkr(H.tensor({one, x, y}) - H.tensor({one, y, x})) == dxdy);
    CHECK(H.hkr(H.tensor({x})) == M.function(x));
    std::mt19937 g(9);
    for (int n = 0; n <= 2; ++n)
        for (int it = 0; it < 10; ++it) {
            ChainElement c = random_chain(H, g, 2, n);
            CHECK(H.hkr(H.b(c)).is_zero());
            CHECK(M.normalize(H.hkr(H.B(c)) - M.d(H.hkr(c))).is_zero());
        }
}

TEST_CASE("graded Hochschild dimensions")
{
    auto line = PresentedAlgebra::parse({"x"}, {});
    CHECK(hh_graded_dims(line, 0, 3) == std::vector<int>{1, 0, 0, 0});
    for (int d = 1; d <= 5; ++d) {
        CHECK(hh_graded_dims(line, d, 3) == std::vector<int>{1, 1, 0, 0});
        CHECK(form_graded_dims(line, d) == std::vector<int>{1, 1});
    }
    auto plane = PresentedAlgebra::parse({"x", "y"}, {});
    CHECK(hh_graded_dims(plane, 2, 3) == std::vector<int>{3, 4, 1, 0});
    CHECK(form_graded_dims(plane, 2) == std::vector<int>{3, 4, 1});

    auto cusp = PresentedAlgebra::parse({"x", "y"}, {"x^2 - y"});
    CHECK_THROWS_AS(hh_graded_dims(cusp, 2, 2), std::invalid_argument);
}

TEST_CASE("periodic cyclic homology from Betti numbers")
{
    BettiReport R;
    R.stable = {1, 1, 0};
    auto hp = hp_report(R);
    CHECK(hp.resolved());
    CHECK(*hp.hp0 == 1);
    CHECK(*hp.hp1 == 1);
    R.stable = {1, std::nullopt, 2};
    hp = hp_report(R);
    CHECK(*hp.hp0 == 3);
    CHECK_FALSE(hp.hp1.has_value());
}
