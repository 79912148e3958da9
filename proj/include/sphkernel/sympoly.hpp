#pragma once

#include <map>
#include <vector>

#include "sphkernel/scalar.hpp"

namespace sph {

// Polynomial in a fixed number of commuting variables with Scalar
// coefficients, keyed by exponent vectors.
class MultiPoly {
  public:
    explicit MultiPoly(int nvars) : nvars_(nvars) {}
    static MultiPoly constant(int nvars, const Scalar& c);
    static MultiPoly variable(int nvars, int index);
    static MultiPoly elementary(int nvars, int k);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }

    Scalar coeff(const std::vector<int>& expo) const;
    void add_term(const std::vector<int>& expo, const Scalar& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(const Scalar& c) const;

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    bool is_symmetric() const;

  private:
    int nvars_;
    std::map<std::vector<int>, Scalar> terms_;
};

// Rewrite a symmetric polynomial as a polynomial in the elementary
// generators, by repeated subtraction at the lex-leading monomial. Keys of
// the result are vectors (d_1, ..., d_n) standing for prod_k e_k^{d_k}.
// Throws InvalidSpecError when the input is not symmetric.
std::map<std::vector<int>, Scalar> elementary_decomposition(const MultiPoly& p);

// Multiplicative-basis images of the level operator and its companion: both
// sides of the closed product identity, expanded in the coordinate
// variables. The operator sum maps the i-th summand to
// q^{r^2 - i^2} e_{r-i} times its combination coefficient; the product side
// is q^{r^2} prod_j (mu_j - (q + q^{-1})) for the level operator and the
// derivative-style sum of (r-1)-fold products for the companion.
enum class SatakeTarget { Level, LevelPrime };

MultiPoly satake_operator_side(SatakeTarget target, int r);
MultiPoly satake_product_side(SatakeTarget target, int r);
bool satake_identity_check(SatakeTarget target, int r);

}  // namespace sph
