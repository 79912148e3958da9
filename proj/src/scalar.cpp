#include "sphkernel/scalar.hpp"

#include <sstream>

namespace sph {

void Scalar::trim(int e) {
    auto it = terms_.find(e);
    if (it != terms_.end() && it->second == 0) terms_.erase(it);
}

Scalar Scalar::integer(long n) { return integer(Int(n)); }

Scalar Scalar::integer(const Int& n) {
    Scalar r;
    if (n != 0) r.terms_[0] = n;
    return r;
}

Scalar Scalar::q_pow(long k) {
    Scalar r;
    r.terms_[static_cast<int>(2 * k)] = (k % 2 == 0) ? 1 : -1;
    return r;
}

Scalar Scalar::neg_q_pow(long k) {
    Scalar r;
    r.terms_[static_cast<int>(2 * k)] = 1;
    return r;
}

Scalar Scalar::s_pow(long k) {
    Scalar r;
    r.terms_[static_cast<int>(k)] = 1;
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r;
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (auto& [e, c] : o.terms_) {
        terms_[e] += c;
        trim(e);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    for (auto& [e, c] : o.terms_) {
        terms_[e] -= c;
        trim(e);
    }
    return *this;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r = *this;
    r += o;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r = *this;
    r -= o;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) {
            r.terms_[e1 + e2] += c1 * c2;
        }
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
        if (it->second == 0)
            it = r.terms_.erase(it);
        else
            ++it;
    }
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
}

Scalar Scalar::pow(unsigned long n) const {
    Scalar r = Scalar::integer(1);
    Scalar b = *this;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

bool Scalar::is_q_polynomial() const {
    for (auto& [e, c] : terms_)
        if (e % 2 != 0) return false;
    return true;
}

Rational Scalar::eval_q(long q0) const {
    Rational acc = 0;
    for (auto& [e, c] : terms_) {
        if (e % 2 != 0)
            throw OddPowerError("eval_q: odd power of s at exponent " + std::to_string(e));
        int k = e / 2;  // s^{2k} = (-q)^k
        Rational term(c);
        Int base = -Int(q0);
        if (k >= 0) {
            Int p = 1;
            for (int i = 0; i < k; ++i) p *= base;
            term *= p;
        } else {
            Int p = 1;
            for (int i = 0; i < -k; ++i) p *= base;
            term /= p;
        }
        acc += term;
    }
    return acc;
}

Int Scalar::coeff_s(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
}

int Scalar::min_exp() const {
    if (terms_.empty()) throw Error("min_exp of zero");
    return terms_.begin()->first;
}

int Scalar::max_exp() const {
    if (terms_.empty()) throw Error("max_exp of zero");
    return terms_.rbegin()->first;
}

Scalar Scalar::div_exact(const Scalar& d) const {
    if (d.is_zero()) throw InexactDivisionError("division by zero");
    Scalar rem = *this;
    Scalar quot;
    const int dmax = d.max_exp();
    const Int dlead = d.terms_.rbegin()->second;
    // An exact quotient has lowest exponent exactly min - d.min (lowest terms
    // cannot cancel), which bounds the synthetic division from below.
    const int qmin = is_zero() ? 0 : min_exp() - d.min_exp();
    while (!rem.is_zero()) {
        int rmax = rem.max_exp();
        const Int rlead = rem.terms_.rbegin()->second;
        if (rlead % dlead != 0)
            throw InexactDivisionError("leading coefficient not divisible");
        if (rmax - dmax < qmin)
            throw InexactDivisionError("no exact quotient");
        Scalar t;
        t.terms_[rmax - dmax] = rlead / dlead;
        quot += t;
        rem -= t * d;
        if (!rem.is_zero() && rem.max_exp() >= rmax)
            throw InexactDivisionError("division did not reduce degree");
    }
    return quot;
}

namespace {

// One rendered monomial: c * s^parity * q^k with the (-1)^k of s^{2k} = (-1)^k q^k
// folded into c.
void render_term(std::ostringstream& out, bool first, int e, const Int& c) {
    bool odd = (e % 2) != 0;
    // s^e = s^{e mod 2} * s^{2k} with k = floor(e/2); both (e-1)/2 and e/2
    // below are exact divisions, so truncation equals floor.
    int k = odd ? (e - 1) / 2 : e / 2;
    // s^{2k} = (-1)^k q^k
    Int printed = c;
    if (k % 2 != 0) printed = -printed;
    bool neg = printed < 0;
    Int mag = neg ? Int(-printed) : printed;
    if (first) {
        if (neg) out << "-";
    } else {
        out << (neg ? " - " : " + ");
    }
    bool unit = (mag == 1);
    bool have_var = odd || k != 0;
    if (!unit || !have_var) out << mag.str();
    bool need_star = !unit || !have_var;
    if (odd) {
        if (need_star) out << "*";
        out << "s";
        need_star = true;
    }
    if (k != 0) {
        if (need_star) out << "*";
        out << "q";
        if (k != 1) out << "^" << k;
    }
}

}  // namespace

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        render_term(out, first, e, c);
        first = false;
    }
    return out.str();
}

Scalar operator*(long n, const Scalar& x) { return Scalar::integer(n) * x; }

Scalar c_weight(int k) {
    Scalar r = Scalar::integer(1);
    for (int i = 1; i <= k; ++i) r *= Scalar::integer(1) - Scalar::q_pow(2 * i);
    return r;
}

Scalar pochhammer(const Scalar& x, int n) {
    Scalar r = Scalar::integer(1);
    for (int i = 1; i <= n; ++i) r *= Scalar::integer(1) - x.pow(i);
    return r;
}

Scalar gauss_binomial(int n, int i, const Scalar& base) {
    if (i < 0 || i > n) return Scalar();
    Scalar num = pochhammer(base, n);
    Scalar den = pochhammer(base, i) * pochhammer(base, n - i);
    return num.div_exact(den);
}

}  // namespace sph
