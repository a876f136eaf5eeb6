#pragma once

#include "dgc/groebner.hpp"

#include <string>
#include <vector>

namespace dgc {

/* R = V[x] with J given by generators. The uniformizer is kept as a formal
   last variable named "p" so that lifts stay integral; numeric() puts the
   prime back in. */
struct TubeBase {
    std::vector<std::string> names;  // variables of R
    std::vector<Poly> J;             // polynomials in names + {"p"}
    long p = 5;

    static TubeBase parse(const std::vector<std::string>& names,
                          const std::vector<std::string>& J, long p);
    int nx() const { return static_cast<int>(names.size()); }
    std::vector<std::string> formal_names() const;
    // substitute p, result in nx() + extra variables
    Poly numeric(const Poly& g, int extra = 0) const;
    // x-degree (the formal p has degree 0)
    int xdeg(const Poly& g) const;
};

struct TubeGenerator {
    Poly g;        // formal polynomial
    int exponent;  // element is p^exponent * g
};

// generators of T(R, J, i/m): pairs (J^ceil(l m / i), -l), l = 0..i
std::vector<TubeGenerator> tube_generators(const TubeBase& B, int i, int m);

struct TubeLevel {
    int m = 1;
    std::vector<Poly> gens;  // generators of J^m, formal
    std::vector<std::string> names;
    PresentedAlgebra alg;    // K[x, y]/(g_i - p y_i)
};

TubeLevel tube_level_presentation(const TubeBase& B, int m, const GBBudget& budget = {},
                                  int max_generators = 64);

struct TubeTransition {
    int from = 2, to = 1;
    std::vector<std::vector<Poly>> cof;  // g^(from)_j = sum_k cof[j][k] g^(to)_k, formal
    std::vector<Poly> images;            // image of each variable of the source level
};

// lifts with the given variable relabelling of the formal ring (empty = default order)
TubeTransition tube_transition(const TubeBase& B, const TubeLevel& src, const TubeLevel& dst,
                               const std::vector<int>& perm = {}, const GBBudget& budget = {});
TubeTransition identity_transition(const TubeLevel& L);
TubeTransition compose(const TubeTransition& outer, const TubeTransition& inner,
                       const TubeLevel& mid);
// relations of src go to zero in dst
bool is_homomorphism(const TubeTransition& t, const TubeLevel& src, const TubeLevel& dst);
// both maps agree on every generator modulo the relations of dst
bool same_map(const TubeTransition& a, const TubeTransition& b, const TubeLevel& dst);

struct TubeSystem {
    TubeBase base;
    std::vector<TubeLevel> levels;            // m = 1..m_max
    std::vector<TubeTransition> transitions;  // transitions[k]: level k+2 -> k+1
};
TubeSystem build_tube_system(const TubeBase& B, int m_max, const std::vector<int>& perm = {},
                             const GBBudget& budget = {});

/* Membership of p^-a h in the V-algebra generated by elements p^-l_j q_j:
   h must lie in the ideal spanned by p^(a - sum e_j l_j) prod q_j^e_j with
   p-integral cofactors. */
bool in_generated_algebra(const TubeBase& B, const Poly& h, int a,
                          const std::vector<TubeGenerator>& gens, int D,
                          const GBBudget& budget = {});

struct TubeIdentityReport {
    int m = 0, D = 0;
    int checked_left = 0, checked_right = 0;
    int failed_left = 0, failed_right = 0;
    bool ok() const { return failed_left == 0 && failed_right == 0; }
};
// T(R, J, 1/m) = T(R, J^m, 1) up to x-degree D
TubeIdentityReport tube_identity_check(const TubeBase& B, int m, int D,
                                       const GBBudget& budget = {});

}  // namespace dgc
