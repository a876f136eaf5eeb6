#pragma once

#include "dgc/scalars.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgc {

using Mono = std::vector<int>;

int mdeg(const Mono& m);
bool mdivides(const Mono& a, const Mono& b);
Mono mmul(const Mono& a, const Mono& b);
Mono mdiv(const Mono& a, const Mono& b);
Mono mlcm(const Mono& a, const Mono& b);

// true when a > b in graded reverse lexicographic order
struct Grevlex {
    bool operator()(const Mono& a, const Mono& b) const;
};

/* A monomial order given by positive integer weights and a variable
   precedence: compare weighted degree, then reverse lexicographic along
   the precedence list (last listed variable is the smallest). */
struct MonoOrder {
    std::vector<int> weights;
    std::vector<int> perm;
    static MonoOrder grevlex(int n);
    int wdeg(const Mono& m) const;
    bool greater(const Mono& a, const Mono& b) const;
};

class Poly {
public:
    using Terms = std::map<Mono, Q, Grevlex>;

    Poly() = default;
    explicit Poly(int nvars) : n_(nvars) {}
    static Poly constant(int n, const Q& c);
    static Poly var(int n, int i);
    static Poly monomial(const Mono& m, const Q& c);

    int nvars() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    const Terms& terms() const { return t_; }
    void add_term(const Mono& m, const Q& c);
    Q coeff(const Mono& m) const;

    const Mono& lead_mono() const { return t_.begin()->first; }
    const Q& lead_coef() const { return t_.begin()->second; }
    int degree() const;
    bool is_constant() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Q& c) const;
    Poly mul_term(const Mono& m, const Q& c) const;
    bool operator==(const Poly& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned e) const;
    Poly derivative(int i) const;
    Poly substitute(const std::vector<Poly>& images, int target_nvars) const;
    Poly monic() const;
    int min_coeff_valuation(long p) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    int n_ = 0;
    Terms t_;
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t pos_, const std::string& msg)
        : std::runtime_error(msg), pos(pos_) {}
};

/* Grammar: sums of products of factors; a factor is an integer, a
   variable name or a parenthesised expression, optionally raised to a
   non-negative integer power. '/' divides by an integer. */
Poly parse_poly(const std::string& text, const std::vector<std::string>& names);

std::vector<std::string> default_names(int n);

}  // namespace dgc
