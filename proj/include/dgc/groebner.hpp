#pragma once

#include "dgc/poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgc {

struct GBBudget {
    int max_degree = 24;
    long max_pairs = 10000;
};

struct BudgetError : std::runtime_error {
    std::string stage;
    std::vector<Poly> partial;
    BudgetError(const std::string& stage_, const std::string& msg, std::vector<Poly> part = {})
        : std::runtime_error(stage_ + ": " + msg), stage(stage_), partial(std::move(part)) {}
};

struct GBResult {
    std::vector<Poly> basis;
    // cofactors[k][i]: basis[k] = sum_i cofactors[k][i] * gens[i]
    std::vector<std::vector<Poly>> cofactors;
    long pairs_processed = 0;
};

/* Reduced Groebner basis for grevlex. When perm is non-empty the
   variables are relabelled (variable perm[0] becomes the largest) for
   the computation, which gives a different monomial order. */
GBResult groebner(const std::vector<Poly>& gens, const GBBudget& budget = {},
                  bool track_cofactors = true, const std::vector<int>& perm = {});

Poly normal_form(const Poly& f, const std::vector<Poly>& basis);
// f = sum q[k] basis[k] + remainder
Poly divide(const Poly& f, const std::vector<Poly>& basis, std::vector<Poly>& q);

std::optional<std::vector<Poly>> lift_in_ideal(const Poly& f, const std::vector<Poly>& gens,
                                               const GBBudget& budget = {},
                                               const std::vector<int>& perm = {});

class PresentedAlgebra;

// all m-fold products of gens, deduplicated after normal form
std::vector<Poly> ideal_power_generators(const std::vector<Poly>& gens, int m,
                                         const PresentedAlgebra* ambient = nullptr);

class PresentedAlgebra {
public:
    PresentedAlgebra() = default;
    PresentedAlgebra(std::vector<std::string> names, std::vector<Poly> relations,
                     const GBBudget& budget = {}, std::vector<int> weights = {});
    static PresentedAlgebra parse(const std::vector<std::string>& names,
                                  const std::vector<std::string>& relations,
                                  const GBBudget& budget = {});

    int nvars() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Poly>& relations() const { return rels_; }
    const std::vector<int>& weights() const { return weights_; }
    const GBResult& gb() const { return gb_; }
    bool is_zero_ring() const;

    Poly nf(const Poly& f) const { return normal_form(f, gb_.basis); }
    bool is_standard(const Mono& m) const;
    // standard monomials of total degree <= D
    std::vector<Mono> standard_monomials(int D) const;
    Poly parse_element(const std::string& s) const { return parse_poly(s, names_); }

private:
    std::vector<std::string> names_;
    std::vector<Poly> rels_;
    std::vector<int> weights_;
    GBResult gb_;
};

std::vector<Mono> monomials_up_to(int n, int D);

}  // namespace dgc
