#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dgc {

using Q = mpq_class;
using Z = mpz_class;

// valuation of zero
constexpr int kValInf = std::numeric_limits<int>::max();

int vp(const Z& a, long p);
int vp(const Q& a, long p);
Z zpow(long p, int e);
int64_t ipow(int64_t p, int e);
bool is_prime(long p);

// Residue of a p-integral rational in [0, p^e).
int64_t residue(const Q& a, int64_t p, int e);
int64_t inv_mod(int64_t a, int64_t m);
inline int64_t mulmod(int64_t a, int64_t b, int64_t m)
{
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

struct NotInvertible : std::domain_error {
    NotInvertible() : std::domain_error("not invertible") {}
};

enum class Backend { rational, padic };
std::string to_string(Backend b);
Backend backend_from_string(const std::string& s);

/* An element of K = Q_p modelled either as an exact fraction or as
   p^v * unit with the unit known modulo p^prec. */
class Scalar {
public:
    static Scalar rational(const Q& q, long p);
    static Scalar padic(const Q& q, long p, int N);
    static Scalar padic_unit(int64_t unit, int v, long p, int N);

    Backend backend() const { return backend_; }
    long prime() const { return p_; }
    bool is_zero() const;
    int valuation() const;
    int precision() const { return prec_; }
    int64_t unit() const { return unit_; }
    const Q& value() const { return q_; }

    Scalar operator*(const Scalar& o) const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar inverse() const;

    Scalar to_padic(int N) const;
    // residue modulo p^e; requires valuation >= 0
    int64_t residue_mod(int e) const;
    std::string str() const;

private:
    Backend backend_ = Backend::rational;
    long p_ = 2;
    Q q_;
    int64_t unit_ = 0;
    int v_ = kValInf;
    int prec_ = 0;
    Scalar coerce(const Scalar& o) const;
};

Scalar mul(const Scalar& a, const Scalar& b);
Scalar invert(const Scalar& a);
int valuation(const Scalar& a);

}  // namespace dgc
