#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "sphkernel/scalar.hpp"

using namespace sph;

namespace {
Scalar one() { return Scalar::integer(1); }
}

TEST_CASE("s and q powers identify correctly") {
    CHECK(Scalar::s_pow(2) == Scalar::neg_q_pow(1));
    CHECK(Scalar::s_pow(4) == Scalar::q_pow(2));
    CHECK(Scalar::s_pow(6) == Scalar::neg_q_pow(3));
    CHECK(Scalar::q_pow(1) == -Scalar::neg_q_pow(1));
    CHECK(Scalar::s_pow(1) * Scalar::s_pow(1) == Scalar::neg_q_pow(1));
    CHECK(Scalar::s_pow(-2) == Scalar::neg_q_pow(-1));
    CHECK(Scalar::q_pow(3) * Scalar::q_pow(-3) == one());
    CHECK(Scalar::q_pow(2).is_q_polynomial());
    CHECK_FALSE(Scalar::s_pow(3).is_q_polynomial());
}

TEST_CASE("c weights expand and evaluate") {
    Scalar want = one() - Scalar::q_pow(2) - Scalar::q_pow(4) + Scalar::q_pow(6);
    CHECK(c_weight(2) == want);
    CHECK(c_weight(0) == one());
    CHECK(c_weight(1) == one() - Scalar::q_pow(2));
    // (1-9)(1-81) = 640
    CHECK(c_weight(2).eval_q(3) == Rational(640));
    CHECK(c_weight(1).eval_q(5) == Rational(-24));
}

TEST_CASE("pochhammer products") {
    Scalar p = pochhammer(Scalar::neg_q_pow(1), 2);
    Scalar want = (one() + Scalar::q_pow(1)) * (one() - Scalar::q_pow(2));
    CHECK(p == want);
    CHECK(pochhammer(Scalar::q_pow(2), 3) == c_weight(3));
    CHECK(pochhammer(Scalar::q_pow(1), 0) == one());
}

TEST_CASE("gaussian binomials divide exactly") {
    CHECK(gauss_binomial(2, 1, Scalar::q_pow(2)) == one() + Scalar::q_pow(2));
    CHECK(gauss_binomial(4, 2, Scalar::q_pow(1)) ==
          one() + Scalar::q_pow(1) + 2 * Scalar::q_pow(2) + Scalar::q_pow(3) +
              Scalar::q_pow(4));
    CHECK(gauss_binomial(3, 0, Scalar::q_pow(2)) == one());
    CHECK(gauss_binomial(3, 3, Scalar::neg_q_pow(1)) == one());
    CHECK(gauss_binomial(3, 4, Scalar::q_pow(2)).is_zero());
    CHECK(gauss_binomial(3, -1, Scalar::q_pow(2)).is_zero());
}

TEST_CASE("q-Pascal identity") {
    for (const Scalar& x : {Scalar::q_pow(2), Scalar::neg_q_pow(1)}) {
        for (int n = 1; n <= 6; ++n) {
            for (int k = 0; k <= n; ++k) {
                Scalar lhs = gauss_binomial(n, k, x);
                Scalar rhs = gauss_binomial(n - 1, k, x) +
                             x.pow(static_cast<unsigned long>(n - k)) *
                                 gauss_binomial(n - 1, k - 1, x);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("q-binomial theorem through n = 8") {
    // prod_{i=1..n} (1 + q^{2i-1} x)  =  sum_i q^{i^2} [n choose i]_{q^2} x^i,
    // tracked as a polynomial in x with Scalar coefficients.
    for (int n = 1; n <= 8; ++n) {
        std::vector<Scalar> lhs{one()};
        for (int i = 1; i <= n; ++i) {
            std::vector<Scalar> next(lhs.size() + 1);
            for (size_t d = 0; d < lhs.size(); ++d) {
                next[d] += lhs[d];
                next[d + 1] += lhs[d] * Scalar::q_pow(2 * i - 1);
            }
            lhs = std::move(next);
        }
        for (int i = 0; i <= n; ++i) {
            Scalar want = Scalar::q_pow(static_cast<long>(i) * i) *
                          gauss_binomial(n, i, Scalar::q_pow(2));
            CHECK(lhs[static_cast<size_t>(i)] == want);
        }
    }
}

TEST_CASE("numeric evaluation is a ring map") {
    Scalar a = 3 * Scalar::q_pow(2) - Scalar::neg_q_pow(1) + Scalar::integer(7);
    Scalar b = Scalar::q_pow(-1) - 2 * Scalar::q_pow(3);
    for (long q0 : {3L, 5L}) {
        CHECK((a * b).eval_q(q0) == a.eval_q(q0) * b.eval_q(q0));
        CHECK((a + b).eval_q(q0) == a.eval_q(q0) + b.eval_q(q0));
        CHECK((a - b).eval_q(q0) == a.eval_q(q0) - b.eval_q(q0));
    }
    CHECK(Scalar::q_pow(-1).eval_q(3) == Rational(1, 3));
    CHECK(Scalar::neg_q_pow(-1).eval_q(3) == Rational(-1, 3));
    CHECK(Scalar::neg_q_pow(2).eval_q(5) == Rational(25));
    CHECK(Scalar().eval_q(3) == Rational(0));
}

TEST_CASE("odd powers refuse numeric evaluation") {
    CHECK_THROWS_AS(Scalar::s_pow(1).eval_q(3), OddPowerError);
    CHECK_THROWS_AS((Scalar::s_pow(3) + one()).eval_q(5), OddPowerError);
    // ...but an odd power that cancels is fine.
    Scalar x = Scalar::s_pow(1) + one();
    CHECK((x - Scalar::s_pow(1)).eval_q(3) == Rational(1));
}

TEST_CASE("exact division") {
    Scalar num = one() - Scalar::q_pow(4);
    Scalar den = one() - Scalar::q_pow(2);
    CHECK(num.div_exact(den) == one() + Scalar::q_pow(2));
    CHECK_THROWS_AS(den.div_exact(num), InexactDivisionError);
    Scalar lau = Scalar::q_pow(-2) - Scalar::q_pow(2);
    CHECK(lau.div_exact(Scalar::q_pow(-1) - Scalar::q_pow(1)) ==
          Scalar::q_pow(-1) + Scalar::q_pow(1));
}

TEST_CASE("rendering") {
    CHECK(Scalar().str() == "0");
    CHECK(one().str() == "1");
    CHECK(Scalar::integer(-1).str() == "-1");
    CHECK(Scalar::q_pow(1).str() == "q");
    CHECK((2 * Scalar::q_pow(3)).str() == "2*q^3");
    CHECK(Scalar::neg_q_pow(1).str() == "-q");
    CHECK(Scalar::s_pow(1).str() == "s");
    CHECK(Scalar::q_pow(-1).str() == "q^-1");
    CHECK((one() - Scalar::q_pow(2)).str() == "1 - q^2");
}
