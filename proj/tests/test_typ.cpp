#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphkernel/typ.hpp"

using namespace sph;

TEST_CASE("vector statistics") {
    CHECK(vec_sum({2, -1, 3}) == 4);
    CHECK(vec_sum({}) == 0);
    CHECK(lambda_count({2, 0, 0, -1}, 0) == 2);
    CHECK(lambda_count({2, 0, 0, -1}, 2) == 1);
    CHECK(tilde_inv({2, 0, 1}) == 3);
    CHECK(tilde_inv({3, 3, 3}) == 0);
    CHECK(inv01({1, 0, 1, 0}) == 3);
    CHECK(inv01({0, 0, 1}) == 0);
    // On a 0/1 vector the gap-weighted count degenerates to plain inversions.
    CHECK(tilde_inv({1, 0, 1, 0, 1}) == inv01({1, 0, 1, 0, 1}));
}

TEST_CASE("regions") {
    CHECK(weakly_decreasing({3, 3, 1}));
    CHECK_FALSE(weakly_decreasing({1, 2}));
    CHECK(in_region({2, 0, -1}, Region::Natural));
    CHECK_FALSE(in_region({2, 0, -1}, Region::Flat));
    CHECK(in_region({2, 0, 0}, Region::Flat));
    CHECK(in_region({}, Region::Flat));
    CHECK_FALSE(in_region({0, 1}, Region::Natural));
}

TEST_CASE("windows") {
    Window w{3, 2, ZeroKind::Exact};
    CHECK(in_window({3, 1, 0, 0}, w));
    CHECK_FALSE(in_window({4, 1, 0, 0}, w));
    CHECK_FALSE(in_window({3, 1, 1, 0}, w));
    CHECK_FALSE(in_window({3, 2, 1}, w));
    Window atmost{5, 1, ZeroKind::AtMost};
    CHECK(in_window({2, 1}, atmost));
    CHECK(in_window({2, 0}, atmost));
    CHECK_FALSE(in_window({2, 0, 0}, atmost));
    Window atleast{5, 1, ZeroKind::AtLeast};
    CHECK_FALSE(in_window({2, 1}, atleast));
    CHECK(in_window({2, 0, 0}, atleast));
}

TEST_CASE("image membership test") {
    CHECK(typ_image_check({2, 1}, 1, Side::Gl));
    CHECK_FALSE(typ_image_check({2, 1}, 0, Side::Gl));
    CHECK(typ_image_check({1, -1}, 0, Side::Gl));
    CHECK_FALSE(typ_image_check({1, -1}, 0, Side::Fj));
    CHECK(typ_image_check({3, 1, 0}, 0, Side::Fj));
    CHECK_FALSE(typ_image_check({0, 3, 1}, 0, Side::Gl));
}

TEST_CASE("element arithmetic") {
    Element a = Element::delta({1, 0});
    a.add_term({0, 0}, Scalar::q_pow(1));
    Element b = Element::delta({0, 0}, -Scalar::q_pow(1));
    Element sum = a + b;
    CHECK(sum == Element::delta({1, 0}));
    CHECK((a - a).is_zero());
    CHECK(a.coeff({0, 0}) == Scalar::q_pow(1));
    CHECK(a.coeff({5, 5}).is_zero());
    CHECK(a.scaled(Scalar()).is_zero());
    Element t = a.translated({2, 2});
    CHECK(t.coeff({3, 2}) == Scalar::integer(1));
    CHECK(t.coeff({2, 2}) == Scalar::q_pow(1));
    CHECK_THROWS_AS(a + Element::delta({1}), RankMismatchError);
    CHECK_THROWS_AS(a.translated({1}), RankMismatchError);
}

TEST_CASE("star concatenation") {
    Element a = Element::delta({2}, Scalar::q_pow(1));
    Element b = Element::delta({1, 0});
    Element ab = star(a, b);
    CHECK(ab.rank() == 3);
    CHECK(ab.coeff({2, 1, 0}) == Scalar::q_pow(1));
    // Rank zero is the unit.
    Element unit = Element::delta({});
    CHECK(star(unit, ab) == ab);
    CHECK(star(ab, unit) == ab);
    // Bilinearity across a sum.
    Element c = Element::delta({3}) + Element::delta({1}, Scalar::integer(2));
    Element left = star(c, b);
    CHECK(left.coeff({3, 1, 0}) == Scalar::integer(1));
    CHECK(left.coeff({1, 1, 0}) == Scalar::integer(2));
}

TEST_CASE("pairing") {
    Element a = Element::delta({2, 0}) + Element::delta({1, 1}, Scalar::q_pow(2));
    Element b = Element::delta({1, 1}, Scalar::integer(3));
    CHECK(pair_elements(a, b, Region::Flat) == 3 * Scalar::q_pow(2));
    CHECK(pair_elements(a, Element::delta({4, 4}), Region::Flat).is_zero());
    Element bad = Element::delta({0, 2});
    CHECK_THROWS_AS(pair_elements(a, bad, Region::Flat), RegionViolationError);
    Element neg = Element::delta({1, -1});
    CHECK_THROWS_AS(pair_elements(neg, neg, Region::Flat), RegionViolationError);
    CHECK(pair_elements(neg, neg, Region::Natural) == Scalar::integer(1));
}

TEST_CASE("vector enumeration") {
    auto dec = decreasing_vectors(2, -1, 1);
    // (1,1) (1,0) (1,-1) (0,0) (0,-1) (-1,-1)
    CHECK(dec.size() == 6);
    for (auto& v : dec) CHECK(in_region(v, Region::Natural));
    auto flat = flat_vectors_with_sum_at_most(2, 2);
    // (0,0) (1,0) (1,1) (2,0)
    CHECK(flat.size() == 4);
    for (auto& v : flat) {
        CHECK(in_region(v, Region::Flat));
        CHECK(vec_sum(v) <= 2);
    }
    CHECK(decreasing_vectors(0, -3, 3).size() == 1);
    CHECK(flat_vectors_with_sum_at_most(3, 0).size() == 1);
}
