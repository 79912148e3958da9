#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphkernel/expr.hpp"

using namespace sph;

TEST_CASE("element parsing") {
    Element e = parse_element("q^2*[1,-2] + (1-q^2)*[0,-1]");
    CHECK(e.rank() == 2);
    CHECK(e.coeff({1, -2}) == Scalar::q_pow(2));
    CHECK(e.coeff({0, -1}) == Scalar::integer(1) - Scalar::q_pow(2));

    Element lead = parse_element("-q^2*[1] + [0]");
    CHECK(lead.coeff({1}) == -Scalar::q_pow(2));
    CHECK(lead.coeff({0}) == Scalar::integer(1));

    Element prod = parse_element("5*q*[3]");
    CHECK(prod.coeff({3}) == 5 * Scalar::q_pow(1));

    Element bare = parse_element("[2,2] - [1,1]");
    CHECK(bare.coeff({2, 2}) == Scalar::integer(1));
    CHECK(bare.coeff({1, 1}) == Scalar::integer(-1));

    // Rank zero: a bare coefficient.
    Element unit = parse_element("3 - q");
    CHECK(unit.rank() == 0);
    CHECK(unit.coeff({}) == Scalar::integer(3) - Scalar::q_pow(1));

    // Like terms combine, cancellations vanish.
    CHECK(parse_element("[1] - [1]").is_zero());
    CHECK(parse_element("q*[1] + q*[1]").coeff({1}) == 2 * Scalar::q_pow(1));
}

TEST_CASE("rank checking") {
    CHECK_THROWS_AS(parse_element("[1] + [1,2]"), RankMismatchError);
    CHECK_THROWS_AS(parse_element("[1] + q"), RankMismatchError);
    CHECK_THROWS_AS(parse_element("[1,2]", 3), RankMismatchError);
    CHECK(parse_element("[1,2]", 2).rank() == 2);
    // Zero input cannot pin a rank, so the checked form accepts it as-is.
    CHECK(parse_element("0", 0).is_zero());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_element("q^"), ParseError);
    CHECK_THROWS_AS(parse_element("[1,]"), ParseError);
    CHECK_THROWS_AS(parse_element("[1 2]"), ParseError);
    CHECK_THROWS_AS(parse_element("[1] +"), ParseError);
    CHECK_THROWS_AS(parse_element("(1-q"), ParseError);
    CHECK_THROWS_AS(parse_scalar("x"), ParseError);
}

TEST_CASE("scalar round trip") {
    for (const char* text :
         {"0", "1", "-1", "q", "-q", "2*q^3", "q^-1", "1 - q^2", "s",
          "-s*q", "s*q^-2 + 3*q^4 - 7"}) {
        Scalar v = parse_scalar(text);
        CHECK(parse_scalar(v.str()) == v);
    }
    CHECK(parse_scalar("s^2") == -Scalar::q_pow(1));
    CHECK(parse_scalar("(1-q)*(1+q)") == Scalar::integer(1) - Scalar::q_pow(2));
}

TEST_CASE("element round trip and rendering") {
    for (const char* text :
         {"[2]", "-[2]", "q^2*[1,-2] + (1-q^2)*[0,-1]", "3*[0,0,0]",
          "(q^-1 - q)*[5] - [0]", "0"}) {
        Element e = parse_element(text);
        CHECK(parse_element(render_element(e)) == e);
    }
    Element e = Element::delta({1, 0}) + Element::delta({0, 0}, -Scalar::q_pow(1));
    CHECK(render_element(e) == "-q*[0,0] + [1,0]");
    CHECK(render_element(Element::zero(2)) == "0");
    Element f = Element::delta({2}, Scalar::integer(1) - Scalar::q_pow(2));
    CHECK(render_element(f) == "(1 - q^2)*[2]");
}

TEST_CASE("json form") {
    Element e = Element::delta({2}) +
                Element::delta({0}, Scalar::integer(1) - Scalar::q_pow(2));
    CHECK(element_to_json(e) ==
          "[{\"coeff\":\"1 - q^2\",\"type\":[0]},{\"coeff\":\"1\",\"type\":[2]}]");
    CHECK(element_to_json(Element::zero(1)) == "[]");
}

TEST_CASE("gram matrix parsing") {
    auto g = parse_gram("1,0;0,3+1*t");
    REQUIRE(g.size() == 2);
    CHECK(g[0][0] == std::make_pair(1L, 0L));
    CHECK(g[0][1] == std::make_pair(0L, 0L));
    CHECK(g[1][1] == std::make_pair(3L, 1L));
    auto h = parse_gram("t,2*t;-t,-2");
    CHECK(h[0][0] == std::make_pair(0L, 1L));
    CHECK(h[0][1] == std::make_pair(0L, 2L));
    CHECK(h[1][0] == std::make_pair(0L, -1L));
    CHECK(h[1][1] == std::make_pair(-2L, 0L));
    auto one = parse_gram("9");
    CHECK(one.size() == 1);
    CHECK_THROWS_AS(parse_gram("1,2;3"), ParseError);
    CHECK_THROWS_AS(parse_gram("1,2"), ParseError);
}

TEST_CASE("type vector parsing") {
    CHECK(parse_typevec("1,1,0") == TypeVec{1, 1, 0});
    CHECK(parse_typevec("-1,2") == TypeVec{-1, 2});
    CHECK(parse_typevec("").empty());
    CHECK_THROWS_AS(parse_typevec("1,,2"), ParseError);
}
