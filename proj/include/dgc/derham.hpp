#pragma once

#include "dgc/groebner.hpp"
#include "dgc/homalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgc {

// coefficient monomial and the set I of dz_I as a bit mask
using FormKey = std::pair<Mono, unsigned>;

struct Form {
    std::map<FormKey, Q> t;
    void add(const Mono& m, unsigned I, const Q& c);
    bool is_zero() const { return t.empty(); }
    bool operator==(const Form& o) const { return t == o.t; }
    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator*(const Q& c) const;
};

// sign of dz_j ^ dz_I against the increasing order, 0 when j is in I
int wedge_sign(int j, unsigned I);
int popcount(unsigned I);

/* Kaehler forms of a presented algebra A = K[z]/(f): the free module on
   the dz_I modulo the submodule generated by the df_j. Coefficients are
   kept in normal form. */
class DifferentialModule {
public:
    explicit DifferentialModule(const PresentedAlgebra& A) : A_(A) {}
    const PresentedAlgebra& algebra() const { return A_; }

    Form function(const Poly& f) const;
    Form dpoly(const Poly& f) const;
    Form d(const Form& w) const;
    Form wedge(const Form& a, const Form& b) const;
    Form normalize(const Form& w) const;

    // generators s*df_j ^ dz_I of degree l with deg(s) + deg(f_j) - 1 <= D
    std::vector<Form> relations(int l, int D) const;
    // exact membership of w in the span of relations(l, D)
    bool in_relation_module(const Form& w, int l, int D) const;

    // truncated de Rham complex: coefficient degree <= D, degrees 0..n
    FiniteComplex complex(int D) const;
    // same complex with the coordinates of a form (in the quotient basis)
    std::vector<Q> coordinates(const Form& w, int l, int D) const;

private:
    const PresentedAlgebra& A_;
    struct Quotient {
        std::vector<FormKey> basis;  // full basis of the free module
        std::map<FormKey, int> index;
        RREF rel;                    // relations in reduced echelon form
        std::vector<int> free;       // indices not hit by a relation pivot
        std::vector<int> free_pos;   // index -> position among free, or -1
    };
    Quotient quotient(int l, int D) const;
    std::vector<Q> reduce(const Quotient& q, const Form& w) const;
};

FiniteComplex de_rham_complex(const PresentedAlgebra& A, int D);

/* De Rham complex of P/J^k for P = Q[z]/(rels): the J-adic truncation
   model of the formal completion. */
FiniteComplex infinitesimal_complex(const std::vector<std::string>& names,
                                    const std::vector<std::string>& rels,
                                    const std::vector<std::string>& J, int k, int D,
                                    const GBBudget& budget = {});

/* Integral model of the tube algebras of A = F_p[x]/(f) inside affine
   space. The leading terms of the lifts f_i for a weighted reverse
   lexicographic order must be pairwise coprime with coefficient +-1; then
   every polynomial has a unique integral expansion sum c s f^gamma with s
   not divisible by any leading term. Level m uses the lattice spanned by
   p^-floor(|gamma|/m) s f^gamma dx_I, truncated at weighted degree E. */
struct LatticeOptions {
    std::vector<int> weights;     // positive filtration weights, default all 1
    std::vector<int> precedence;  // variable order, last is smallest
};

class LatticeModel {
public:
    struct Elem {
        Mono s;
        std::vector<int> gamma;
        unsigned I = 0;
        bool operator<(const Elem& o) const;
        bool operator==(const Elem& o) const { return s == o.s && gamma == o.gamma && I == o.I; }
    };
    using Expansion = std::map<std::pair<Mono, std::vector<int>>, Q>;

    LatticeModel(std::vector<std::string> names, std::vector<Poly> rels, long p,
                 LatticeOptions opt = {});
    // searches weights in {1,2} and all precedences when none is given
    static LatticeModel with_search(std::vector<std::string> names, std::vector<Poly> rels,
                                    long p);

    int nvars() const { return n_; }
    long prime() const { return p_; }
    const MonoOrder& order() const { return ord_; }
    const std::vector<int>& rel_degrees() const { return fdeg_; }
    const std::vector<std::vector<int>>& grading() const { return grading_; }
    const LatticeOptions& options() const { return opt_; }

    Expansion expand(const Poly& g) const;
    int wdeg(const Elem& e) const;
    std::vector<int> block_of(const Elem& e) const;
    // basis of l-forms of weighted coefficient degree <= E
    std::vector<Elem> basis(int l, int E) const;
    // d of a basis element in level-m coordinates
    std::vector<std::pair<Elem, Q>> d(const Elem& e, int m) const;

    FiniteComplex level_complex(int m, int E) const;
    // inclusion of level m+1 into level m at cap E
    ProComplex pro_complex(int m_max, int E) const;

    struct Persistent {
        std::vector<int> betti;
        ElimStats stats;
        std::vector<int> dims;  // dims of the forms at cap D
    };
    Persistent persistent_betti(int m, int D, int Dp, int N, Backend b) const;

private:
    std::vector<std::string> names_;
    std::vector<Poly> rels_;
    long p_;
    int n_;
    LatticeOptions opt_;
    MonoOrder ord_;
    std::vector<Mono> lt_;
    std::vector<int> lc_;
    std::vector<int> fdeg_;
    std::vector<std::vector<int>> grading_;
    std::vector<std::vector<Expansion>> dfexp_;  // expansion of each partial derivative

    Poly lead_sorted(const Poly& g, Mono& lm) const;
    std::vector<Mono> standard(int E) const;
};

struct RigidParams {
    long p = 5;
    int N = 3;
    std::vector<int> caps{20, 24, 28};
    int delta = 12;
    int m_max = 3;
    int window = 3;
    Backend backend = Backend::padic;
};

BettiReport rigid_betti(const LatticeModel& L, const RigidParams& P);

// level m of the natural de Rham pro-complex, truncated at weighted degree E
inline FiniteComplex chaindR_alpha(const LatticeModel& L, int m, int E)
{
    return L.level_complex(m, E);
}
// holim over the levels 1..m_max at cap E
inline FiniteComplex chaindR_rig(const LatticeModel& L, int m_max, int E)
{
    return holim(L.pro_complex(m_max, E));
}

}  // namespace dgc
