#pragma once

#include "dgc/derham.hpp"

#include <map>
#include <optional>
#include <vector>

namespace dgc {

using Tensor = std::vector<Mono>;

/* Element of C_n(A) = A^(n+1): combination of tensors of standard
   monomials of the algebra. */
struct ChainElement {
    int n = 0;
    std::map<Tensor, Q> t;

    bool is_zero() const { return t.empty(); }
    void add(const Tensor& x, const Q& c);
    ChainElement operator+(const ChainElement& o) const;
    ChainElement operator-(const ChainElement& o) const;
    ChainElement operator*(const Q& c) const;
    bool operator==(const ChainElement& o) const { return n == o.n && t == o.t; }
};

// signs of the cyclic operators, one place
struct CyclicSigns {
    // sign of the face d_i in b and b'
    static int face(int i) { return i % 2 ? -1 : 1; }
    // t(a0 .. an) = (-1)^n (an, a0, .., a(n-1))
    static int rotation(int n) { return n % 2 ? -1 : 1; }
};

class HochschildComplex {
public:
    explicit HochschildComplex(const PresentedAlgebra& A) : A_(A) {}
    const PresentedAlgebra& algebra() const { return A_; }

    // elementary tensor of polynomials, expanded multilinearly
    ChainElement tensor(const std::vector<Poly>& entries) const;

    ChainElement b(const ChainElement& x) const;
    ChainElement bprime(const ChainElement& x) const;
    ChainElement s(const ChainElement& x) const;
    ChainElement t(const ChainElement& x) const;
    ChainElement N(const ChainElement& x) const;
    // B = (1 - t) s N
    ChainElement B(const ChainElement& x) const;

    // (1/n!) a0 da1 ^ .. ^ dan
    Form hkr(const ChainElement& x) const;

    // tensors of standard monomials of total weighted degree d
    std::vector<Tensor> graded_basis(int n, int d) const;
    // b : C_n -> C_(n-1) on the slice of internal degree d
    SpMat graded_b(int n, int d) const;

private:
    const PresentedAlgebra& A_;
    Poly mul(const Mono& a, const Mono& b) const;
    int wdeg(const Mono& m) const;
    ChainElement face_sum(const ChainElement& x, bool cyclic_face) const;
};

// HH_0..HH_nmax in internal degree d; relations must be homogeneous
std::vector<int> hh_graded_dims(const PresentedAlgebra& A, int d, int nmax);

// graded dims of the differential forms of degrees 0..n in internal degree d
std::vector<int> form_graded_dims(const PresentedAlgebra& A, int d);

struct HPReport {
    std::optional<int> hp0, hp1;
    bool resolved() const { return hp0.has_value() && hp1.has_value(); }
};
// HP_j = sum of the stabilized Betti numbers in degrees of parity j
HPReport hp_report(const BettiReport& R);

}  // namespace dgc
