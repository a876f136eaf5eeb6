#pragma once

#include "dgc/groebner.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgc {

struct TruncationParams {
    long p = 5;
    int N = 3;
    int D = 20;
    int n_max = 24;
    int m_max = 3;
    int window = 3;
    void validate() const;
};

// exponent of epsilon in the canonical norm; kValInf for the zero polynomial
int canonical_norm(const Poly& f, long p);

/* A finitely generated V-submodule given by generators. */
struct SubmoduleSpan {
    std::vector<Poly> gens;
    bool monomial() const;
};

enum class Membership { member, not_member, inconclusive };
std::string to_string(Membership m);

struct UnsupportedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// f in sum_i p^i S^(i+1) with i <= n_max, S spanned by monomials
Membership linear_growth_membership(const Poly& f, const SubmoduleSpan& S,
                                    const TruncationParams& P);

/* max over n <= n_max of (min valuation over n-fold products)/n; the
   exponent e of the estimate eps^e. nullopt means the products vanish. */
struct SpectralEstimate {
    std::optional<Q> exponent;
    int depth = 0;
};
SpectralEstimate spectral_radius_estimate(const SubmoduleSpan& M, const PresentedAlgebra* ambient,
                                          const TruncationParams& P, size_t max_products = 20000);

/* Partial geometric sums in X_0 = V[t] and X_1 = X_0 + span f_m with
   f_m = p^-m (1 + pt + ... + (pt)^(m-1)). */
struct WitnessRecord {
    int m = 0, n = 0;
    bool decomposition_exact = false;  // sum = p^m f_m + sum_(m<=i<=n) (pt)^i
    bool remainder_integral = false;   // p^-m times the remainder lies in V[t]
};
struct WitnessReport {
    long p = 5;
    std::vector<WitnessRecord> records;
    bool ok() const;
};
WitnessReport completion_noninjectivity_witness(long p, int m_max, int n_max);

/* Truncated element of the dagger model P_c: coefficients b_alpha with
   nu(b_alpha) + 1 >= |alpha| / c. */
struct DaggerModelElement {
    Poly f;
    Q c = 1;
    int D = 20;
    long p = 5;
    bool estimate_holds() const;
    // parameter c1 + c2; c = max(c1, c2) is not enough in general
    DaggerModelElement operator*(const DaggerModelElement& o) const;
};

}  // namespace dgc
