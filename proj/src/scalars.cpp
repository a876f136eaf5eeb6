#include "dgc/scalars.hpp"

#include <sstream>

namespace dgc {

int vp(const Z& a, long p)
{
    if (a == 0)
        return kValInf;
    Z t = a, r;
    int v = 0;
    while (true) {
        r = t % p;
        if (r != 0)
            return v;
        t /= p;
        ++v;
    }
}

int vp(const Q& a, long p)
{
    if (a == 0)
        return kValInf;
    return vp(a.get_num(), p) - vp(a.get_den(), p);
}

Z zpow(long p, int e)
{
    Z r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

int64_t ipow(int64_t p, int e)
{
    int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<int64_t>::max() / p)
            throw std::overflow_error("p^e exceeds 64 bits");
        r *= p;
    }
    return r;
}

bool is_prime(long p)
{
    if (p < 2)
        return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

int64_t inv_mod(int64_t a, int64_t m)
{
    int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1 != 0) {
        int64_t q = g / a1;
        int64_t t = g - q * a1;
        g = a1;
        a1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1)
        throw NotInvertible();
    return ((x % m) + m) % m;
}

int64_t residue(const Q& a, int64_t p, int e)
{
    int64_t m = ipow(p, e);
    if (a == 0)
        return 0;
    Q c = a;
    c.canonicalize();
    Z num = c.get_num() % m;
    Z den = c.get_den() % m;
    int64_t n = num.get_si(), d = den.get_si();
    n = ((n % m) + m) % m;
    return mulmod(n, inv_mod(d, m), m);
}

std::string to_string(Backend b)
{
    return b == Backend::rational ? "rational" : "padic";
}

Backend backend_from_string(const std::string& s)
{
    if (s == "rational")
        return Backend::rational;
    if (s == "padic")
        return Backend::padic;
    throw std::invalid_argument("unknown backend " + s);
}

Scalar Scalar::rational(const Q& q, long p)
{
    Scalar s;
    s.backend_ = Backend::rational;
    s.p_ = p;
    s.q_ = q;
    s.q_.canonicalize();
    return s;
}

Scalar Scalar::padic(const Q& q, long p, int N)
{
    Scalar s;
    s.backend_ = Backend::padic;
    s.p_ = p;
    s.prec_ = N;
    if (q == 0)
        return s;
    s.v_ = vp(q, p);
    Q u = q;
    u.canonicalize();
    if (s.v_ > 0)
        u /= Q(zpow(p, s.v_));
    else if (s.v_ < 0)
        u *= Q(zpow(p, -s.v_));
    s.unit_ = residue(u, p, N);
    return s;
}

Scalar Scalar::padic_unit(int64_t unit, int v, long p, int N)
{
    Scalar s;
    s.backend_ = Backend::padic;
    s.p_ = p;
    s.prec_ = N;
    int64_t m = ipow(p, N);
    unit = ((unit % m) + m) % m;
    if (unit == 0)
        return s;
    while (unit % p == 0) {
        unit /= p;
        ++v;
        --s.prec_;
    }
    s.unit_ = unit;
    s.v_ = v;
    return s;
}

bool Scalar::is_zero() const
{
    return backend_ == Backend::rational ? q_ == 0 : v_ == kValInf;
}

int Scalar::valuation() const
{
    return backend_ == Backend::rational ? vp(q_, p_) : v_;
}

Scalar Scalar::coerce(const Scalar& o) const
{
    if (o.backend_ == backend_)
        return o;
    return o.to_padic(prec_);
}

Scalar Scalar::to_padic(int N) const
{
    if (backend_ == Backend::padic)
        return *this;
    return padic(q_, p_, N);
}

Scalar Scalar::operator*(const Scalar& o0) const
{
    if (backend_ == Backend::rational && o0.backend_ == Backend::padic)
        return o0 * *this;
    Scalar o = coerce(o0);
    if (backend_ == Backend::rational)
        return rational(q_ * o.q_, p_);
    Scalar r;
    r.backend_ = Backend::padic;
    r.p_ = p_;
    r.prec_ = std::min(prec_, o.prec_);
    if (is_zero() || o.is_zero())
        return r;
    r.v_ = v_ + o.v_;
    r.unit_ = mulmod(unit_, o.unit_, ipow(p_, r.prec_));
    return r;
}

Scalar Scalar::operator+(const Scalar& o0) const
{
    if (backend_ == Backend::rational && o0.backend_ == Backend::padic)
        return o0 + *this;
    Scalar o = coerce(o0);
    if (backend_ == Backend::rational)
        return rational(q_ + o.q_, p_);
    if (is_zero())
        return o;
    if (o.is_zero())
        return *this;
    // absolute precision of each summand is v + prec
    int abs_prec = std::min(v_ + prec_, o.v_ + o.prec_);
    int s = std::min(v_, o.v_);
    int rel = abs_prec - s;
    if (rel <= 0)
        return padic_unit(0, s, p_, 0);
    int64_t m = ipow(p_, rel);
    int64_t a = mulmod(unit_ % m, ipow(p_, v_ - s) % m, m);
    int64_t b = mulmod(o.unit_ % m, ipow(p_, o.v_ - s) % m, m);
    Scalar r = padic_unit((a + b) % m, s, p_, rel);
    return r;
}

Scalar Scalar::operator-() const
{
    if (backend_ == Backend::rational)
        return rational(-q_, p_);
    if (is_zero())
        return *this;
    Scalar r = *this;
    int64_t m = ipow(p_, prec_);
    r.unit_ = (m - unit_) % m;
    return r;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw NotInvertible();
    if (backend_ == Backend::rational)
        return rational(1 / q_, p_);
    // u = a^{-1} (1 - p z) with a = u^{-1} mod p, then invert 1 - p z by the
    // truncated geometric series
    int64_t m = ipow(p_, prec_);
    int64_t a = inv_mod(unit_ % p_, p_);
    int64_t ua = mulmod(unit_, a, m);
    int64_t pz = (1 - ua + m) % m;
    int64_t sum = 0, term = 1;
    for (int j = 0; j < prec_; ++j) {
        sum = (sum + term) % m;
        term = mulmod(term, pz, m);
    }
    Scalar r;
    r.backend_ = Backend::padic;
    r.p_ = p_;
    r.prec_ = prec_;
    r.v_ = -v_;
    r.unit_ = mulmod(sum, a, m);
    return r;
}

int64_t Scalar::residue_mod(int e) const
{
    if (is_zero())
        return 0;
    if (valuation() < 0)
        throw std::domain_error("negative valuation has no residue");
    if (backend_ == Backend::rational)
        return residue(q_, p_, e);
    int64_t m = ipow(p_, e);
    if (v_ >= e)
        return 0;
    return mulmod(unit_ % m, ipow(p_, v_), m);
}

std::string Scalar::str() const
{
    if (backend_ == Backend::rational)
        return q_.get_str();
    std::ostringstream os;
    if (is_zero())
        os << "O(" << p_ << "^" << prec_ << ")";
    else
        os << unit_ << "*" << p_ << "^" << v_ << " (prec " << prec_ << ")";
    return os.str();
}

Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar invert(const Scalar& a) { return a.inverse(); }
int valuation(const Scalar& a) { return a.valuation(); }

}  // namespace dgc
