#include "dgc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace dgc {

int mdeg(const Mono& m)
{
    return std::accumulate(m.begin(), m.end(), 0);
}

bool mdivides(const Mono& a, const Mono& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

Mono mmul(const Mono& a, const Mono& b)
{
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Mono mdiv(const Mono& a, const Mono& b)
{
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Mono mlcm(const Mono& a, const Mono& b)
{
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

bool Grevlex::operator()(const Mono& a, const Mono& b) const
{
    int da = mdeg(a), db = mdeg(b);
    if (da != db)
        return da > db;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] < b[i];
    }
    return false;
}

MonoOrder MonoOrder::grevlex(int n)
{
    MonoOrder o;
    o.weights.assign(n, 1);
    o.perm.resize(n);
    std::iota(o.perm.begin(), o.perm.end(), 0);
    return o;
}

int MonoOrder::wdeg(const Mono& m) const
{
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i)
        d += weights[i] * m[i];
    return d;
}

bool MonoOrder::greater(const Mono& a, const Mono& b) const
{
    int da = wdeg(a), db = wdeg(b);
    if (da != db)
        return da > db;
    for (size_t k = perm.size(); k-- > 0;) {
        int i = perm[k];
        if (a[i] != b[i])
            return a[i] < b[i];
    }
    return false;
}

Poly Poly::constant(int n, const Q& c)
{
    Poly p(n);
    p.add_term(Mono(n, 0), c);
    return p;
}

Poly Poly::var(int n, int i)
{
    Mono m(n, 0);
    m[i] = 1;
    return monomial(m, 1);
}

Poly Poly::monomial(const Mono& m, const Q& c)
{
    Poly p(static_cast<int>(m.size()));
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Mono& m, const Q& c)
{
    if (c == 0)
        return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0)
        t_.erase(it);
}

Q Poly::coeff(const Mono& m) const
{
    auto it = t_.find(m);
    return it == t_.end() ? Q(0) : it->second;
}

int Poly::degree() const
{
    int d = -1;
    for (auto& [m, c] : t_)
        d = std::max(d, mdeg(m));
    return d;
}

bool Poly::is_constant() const
{
    return t_.empty() || (t_.size() == 1 && mdeg(t_.begin()->first) == 0);
}

Poly& Poly::operator+=(const Poly& o)
{
    if (n_ == 0 && t_.empty())
        n_ = o.n_;
    for (auto& [m, c] : o.t_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (n_ == 0 && t_.empty())
        n_ = o.n_;
    for (auto& [m, c] : o.t_)
        add_term(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const
{
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const
{
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator-() const
{
    Poly r(n_);
    for (auto& [m, c] : t_)
        r.t_.emplace_hint(r.t_.end(), m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    Poly r(std::max(n_, o.n_));
    for (auto& [m1, c1] : t_)
        for (auto& [m2, c2] : o.t_)
            r.add_term(mmul(m1, m2), c1 * c2);
    return r;
}

Poly Poly::operator*(const Q& c) const
{
    Poly r(n_);
    if (c == 0)
        return r;
    for (auto& [m, a] : t_)
        r.t_.emplace_hint(r.t_.end(), m, a * c);
    return r;
}

Poly Poly::mul_term(const Mono& mono, const Q& c) const
{
    Poly r(n_);
    if (c == 0)
        return r;
    for (auto& [m, a] : t_)
        r.t_.emplace_hint(r.t_.end(), mmul(m, mono), a * c);
    return r;
}

Poly Poly::pow(unsigned e) const
{
    Poly r = constant(n_, 1), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

Poly Poly::derivative(int i) const
{
    Poly r(n_);
    for (auto& [m, c] : t_) {
        if (m[i] == 0)
            continue;
        Mono m2 = m;
        --m2[i];
        r.add_term(m2, c * m[i]);
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images, int target_nvars) const
{
    Poly r(target_nvars);
    for (auto& [m, c] : t_) {
        Poly term = constant(target_nvars, c);
        for (int i = 0; i < n_; ++i)
            if (m[i])
                term = term * images[i].pow(m[i]);
        r += term;
    }
    return r;
}

Poly Poly::monic() const
{
    if (t_.empty())
        return *this;
    return *this * (Q(1) / lead_coef());
}

int Poly::min_coeff_valuation(long p) const
{
    int v = kValInf;
    for (auto& [m, c] : t_)
        v = std::min(v, vp(c, p));
    return v;
}

std::vector<std::string> default_names(int n)
{
    std::vector<std::string> r;
    for (int i = 0; i < n; ++i)
        r.push_back("x" + std::to_string(i + 1));
    return r;
}

std::string Poly::str(const std::vector<std::string>& names) const
{
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : t_) {
        Q a = c;
        bool neg = a < 0;
        if (neg)
            a = -a;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = mdeg(m) > 0 && a == 1;
        if (!unit)
            os << a.get_str();
        bool star = !unit;
        for (size_t i = 0; i < m.size(); ++i) {
            if (!m[i])
                continue;
            if (star)
                os << "*";
            os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
            if (m[i] > 1)
                os << "^" << m[i];
            star = true;
        }
    }
    return os.str();
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& names)
        : s_(s), names_(names), n_(static_cast<int>(names.size())) {}

    Poly run()
    {
        Poly r = expr();
        skip();
        if (i_ != s_.size())
            fail("unexpected character '" + std::string(1, s_[i_]) + "'");
        return r;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& names_;
    int n_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(i_, msg); }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool peek(char c)
    {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }

    Poly expr()
    {
        Poly r(n_);
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[i_] == '-' ? -1 : 1;
                ++i_;
            }
            else if (!first)
                break;
            Poly t = term();
            if (sign < 0)
                r -= t;
            else
                r += t;
            first = false;
            if (!peek('+') && !peek('-'))
                break;
        }
        return r;
    }

    Poly term()
    {
        Poly r = factor();
        while (true) {
            if (peek('*')) {
                ++i_;
                r = r * factor();
            }
            else if (peek('/')) {
                ++i_;
                skip();
                Z d = integer();
                if (d == 0)
                    fail("division by zero");
                r = r * (Q(1) / Q(d));
            }
            else
                break;
        }
        return r;
    }

    Z integer()
    {
        skip();
        size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (b == i_)
            fail("expected integer");
        return Z(s_.substr(b, i_ - b));
    }

    Poly factor()
    {
        skip();
        if (i_ >= s_.size())
            fail("unexpected end of input");
        Poly base(n_);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            base = expr();
            if (!peek(')'))
                fail("expected ')'");
            ++i_;
        }
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            base = Poly::constant(n_, Q(integer()));
        }
        else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t b = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            std::string id = s_.substr(b, i_ - b);
            auto it = std::find(names_.begin(), names_.end(), id);
            if (it == names_.end()) {
                i_ = b;
                fail("unknown variable '" + id + "'");
            }
            base = Poly::var(n_, static_cast<int>(it - names_.begin()));
        }
        else
            fail("unexpected character '" + std::string(1, c) + "'");
        if (peek('^')) {
            ++i_;
            skip();
            if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
                fail("expected exponent after '^'");
            Z e = integer();
            if (e > 1000)
                fail("exponent too large");
            base = base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& names)
{
    return Parser(text, names).run();
}

}  // namespace dgc
