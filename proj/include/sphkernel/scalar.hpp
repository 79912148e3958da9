#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>

#include "sphkernel/errors.hpp"

namespace sph {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Laurent polynomial in the formal square root s, with integer coefficients.
// The base parameter q is the image of -s^2, so the q-subring is exactly the
// even part. Internally terms are keyed by the s-exponent; rendering folds
// even powers back into powers of q.
class Scalar {
  public:
    Scalar() = default;

    static Scalar integer(long n);
    static Scalar integer(const Int& n);
    // q^k = (-1)^k s^{2k}
    static Scalar q_pow(long k);
    // (-q)^k = s^{2k}
    static Scalar neg_q_pow(long k);
    static Scalar s_pow(long k);

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator*=(const Scalar& o);

    Scalar pow(unsigned long n) const;

    // True when every s-exponent is even, i.e. the value lies in Z[q, q^-1].
    bool is_q_polynomial() const;

    // Substitute a concrete prime power for q. Throws OddPowerError if an odd
    // power of s survives. Negative exponents produce honest rationals.
    Rational eval_q(long q0) const;

    // Exact division; throws InexactDivisionError when the remainder is
    // nonzero (used by the Gaussian binomials, which must divide exactly).
    Scalar div_exact(const Scalar& d) const;

    // Coefficient of s^e.
    Int coeff_s(int e) const;
    const std::map<int, Int>& terms() const { return terms_; }

    int min_exp() const;  // throws on zero
    int max_exp() const;

    // Canonical text form: integer combination of q^k and s*q^k monomials,
    // even powers always printed through q. Parsed back by the expression
    // grammar.
    std::string str() const;

  private:
    void trim(int e);
    std::map<int, Int> terms_;
};

Scalar operator*(long n, const Scalar& x);

// c(k) = prod_{i=1..k} (1 - q^{2i})
Scalar c_weight(int k);

// (x)_n = prod_{i=1..n} (1 - x^i)
Scalar pochhammer(const Scalar& x, int n);

// Gaussian binomial [n choose i] in the given base, by exact division.
Scalar gauss_binomial(int n, int i, const Scalar& base);

}  // namespace sph
