#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphkernel/errors.hpp"
#include "sphkernel/rz.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace sph;

namespace {

std::set<std::vector<long long>> key_set(const std::vector<Lat>& v) {
    std::set<std::vector<long long>> out;
    for (const Lat& L : v) out.insert(lat_key(L));
    return out;
}

// Puts a rank-two lattice beside a fixed vector of uniformizer norm, giving a
// rank-three lattice in the odd space with diagonal pairing (p, 1, 1).
Lat embed_beside_norm_p(const Space& sp3, const Lat& L2) {
    const LocalRing& R = sp3.R;
    int s = std::max(L2.scale, 0);
    LocalMat rows(3, std::vector<LocalElem>(3, R.zero()));
    rows[0][0] = R.uniformizer_power(s);
    int k = s - L2.scale;
    LocalElem pk = R.uniformizer_power(k);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            rows[i + 1][j + 1] = k > 0 ? R.mul(L2.rows[i][j], pk) : L2.rows[i][j];
    return {&sp3, rows, s};
}

}  // namespace

TEST_CASE("base lattices realize their types") {
    Space sp2(3, {0, 0}, 34);
    for (TypeVec e : {TypeVec{0, 0}, {1, 1}, {2, 0}, {2, 2}, {3, 1}, {4, 2}}) {
        Lat L = base_lattice(sp2, e);
        CHECK(lat_typ(L) == e);
    }
    Lat neg = base_lattice(sp2, {0, -2});
    CHECK(lat_typ(neg) == TypeVec{0, -2});

    Space sp4(3, {0, 0, 0, 0}, 34);
    for (TypeVec e : {TypeVec{0, 0, 0, 0}, {1, 1, 0, 0}, {2, 0, 0, 0}, {1, 1, 1, 1}, {2, 1, 1, 0},
                      {2, 2, 0, 0}, {2, 2, 1, 1}, {2, 2, 2, 0}, {2, 2, 2, 2}}) {
        Lat L = base_lattice(sp4, e);
        CHECK(lat_typ(L) == e);
    }

    CHECK_THROWS_AS(base_lattice(sp2, {1, 0}), NoSuchTypeError);
    CHECK_THROWS_AS(base_lattice(sp2, {2, 1}), NoSuchTypeError);
    CHECK_THROWS_AS(base_lattice(sp2, {1, 1, 0}), RankMismatchError);
    CHECK_THROWS_AS(base_lattice(sp2, {0, 2}), RegionViolationError);
}

TEST_CASE("self-dual windows at rank one") {
    Space sp2(3, {0, 0}, 34);
    const std::vector<std::pair<TypeVec, long long>> expected = {
        {{0, 0}, 1}, {{1, 1}, 4}, {{2, 0}, 1}, {{2, 2}, 13}};
    for (const auto& [e, count] : expected) {
        Lat base = base_lattice(sp2, e);
        std::vector<Lat> circ = self_dual_overlattices(base);
        CHECK((long long)circ.size() == count);
        for (const Lat& S : circ) {
            CHECK(lat_typ(S) == TypeVec{0, 0});
            CHECK(lat_contains(S, base));
        }
    }
}

TEST_CASE("incidence counts match the isotropic subspace census") {
    Space sp2(3, {0, 0}, 34);
    Lat std2 = standard_lattice(sp2);
    std::vector<Lat> inc = incident_max_type(std2);
    CHECK(inc.size() == 4);
    for (const Lat& N : inc) {
        CHECK(lat_typ(N) == TypeVec{1, 1});
        CHECK(lat_contains(std2, N));
    }
    // The window of maximal-type vertices over a self-dual base is exactly its
    // incidence fiber, so the two enumeration engines must agree.
    CHECK(key_set(max_type_vertices(std2)) == key_set(inc));

    Lat N = base_lattice(sp2, {1, 1});
    std::vector<Lat> sd = incident_self_dual(N);
    CHECK(sd.size() == 4);
    CHECK(key_set(sd) == key_set(self_dual_overlattices(N)));

    Space sp4(3, {0, 0, 0, 0}, 34);
    CHECK(incident_max_type(standard_lattice(sp4)).size() == 112);
}

TEST_CASE("closed intersection values agree with the reduced ground term") {
    Space sp2(3, {0, 0}, 34);
    Space sp3(3, {1, 0, 0}, 34);
    Lat N = base_lattice(sp2, {1, 1});
    Lat vtx = embed_beside_norm_p(sp3, N);
    REQUIRE(lat_typ(vtx) == TypeVec{1, 1, 1});

    Lat L11 = base_lattice(sp2, {1, 1});
    CHECK(c_bullet(L11, N, 3) == Int(-8));
    CHECK(int_closed(embed_beside_norm_p(sp3, L11), vtx, 3) == Int(-8));

    Lat L00 = standard_lattice(sp2);
    CHECK(c_bullet(L00, N, 3) == Int(1));
    CHECK(int_closed(embed_beside_norm_p(sp3, L00), vtx, 3) == Int(1));

    Lat L20 = base_lattice(sp2, {2, 0});
    CHECK(c_bullet(L20, N, 3) == Int(1));
    Lat L22 = base_lattice(sp2, {2, 2});
    CHECK(c_bullet(L22, N, 3) == Int(-8));

    // Exactly the incident self-dual lattices can sit under the dual of a
    // maximal-type vertex; for every other one both ground terms vanish.
    std::vector<Lat> wide = self_dual_overlattices(base_lattice(sp2, {2, 2}));
    REQUIRE(wide.size() == 13);
    int supported = 0;
    for (const Lat& S : wide) {
        bool in = lat_contains(dual_lattice(N), S);
        supported += in ? 1 : 0;
        CHECK(int_closed(embed_beside_norm_p(sp3, S), vtx, 3) == c_bullet(S, N, 3));
        if (!in) CHECK(c_bullet(S, N, 3) == Int(0));
    }
    CHECK(supported == 4);
}

TEST_CASE("vertex values at rank one") {
    Space sp2(3, {0, 0}, 34);
    Lat std2 = standard_lattice(sp2);
    Lat L11 = base_lattice(sp2, {1, 1});

    CHECK(nabla_bullet(L11, L11, 0, 3) == Int(-3));
    CHECK(nabla_bullet(L11, L11, 1, 3) == Int(1));

    CHECK(nabla_circ(std2, std2, 0, 3) == Int(1));
    CHECK(nabla_circ(std2, std2, 1, 3) == Int(-3));
    CHECK(nabla_circ(L11, std2, 0, 3) == Int(1));

    std::vector<Lat> wide = self_dual_overlattices(base_lattice(sp2, {2, 2}));
    Lat N = L11;
    bool found_far = false;
    for (const Lat& S : wide)
        if (!lat_contains(S, L11)) {
            CHECK(nabla_circ(L11, S, 0, 3) == Int(0));
            found_far = true;
            break;
        }
    CHECK(found_far);
    (void)N;
}

TEST_CASE("correspondence sums compose") {
    Space sp2(3, {0, 0}, 34);
    Lat std2 = standard_lattice(sp2);
    CHECK(sum_incident_max_type(std2, [](const Lat&) { return Int(0); }) == Int(0));
    CHECK(sum_incident_max_type(std2, [](const Lat&) { return Int(1); }) == Int(4));
    CHECK(double_incidence(std2, [](const Lat&) { return Int(1); }) == Int(16));
    CHECK(double_incidence(std2, [&](const Lat& S) { return Int(lat_equal(S, std2) ? 1 : 0); }) ==
          Int(4));
}

TEST_CASE("total identity holds at rank one") {
    Space sp2(3, {0, 0}, 34);
    const std::vector<std::pair<TypeVec, long long>> expected = {
        {{0, 0}, 1}, {{1, 1}, 4}, {{2, 0}, 1}, {{2, 2}, 13}};
    for (const auto& [e, count] : expected) {
        TotalCheck tc = verify_total_identity(sp2, e, 3);
        CHECK(tc.passed);
        CHECK(tc.self_dual_count == count);
        CHECK(tc.pair_count == 4 * count);
        CHECK((long long)tc.rows.size() == count);
        for (const TotalCheckRow& row : tc.rows) CHECK(row.lhs == row.rhs);
    }
    // The same statement through the standalone evaluators, including the
    // independence of the sign vector.
    Lat base = base_lattice(sp2, {1, 1});
    for (const Lat& S : self_dual_overlattices(base)) {
        Int rhs = sum_incident_max_type(S, [&](const Lat& N) { return c_bullet(base, N, 3); });
        CHECK(nabla_total(base, S, 3, 0) == rhs);
        CHECK(nabla_total(base, S, 3, 1) == rhs);
    }
}

TEST_CASE("total identity holds at rank two samples") {
    Space sp4(3, {0, 0, 0, 0}, 34);
    for (TypeVec e : {TypeVec{1, 1, 0, 0}, {2, 0, 0, 0}}) {
        TotalCheck tc = verify_total_identity(sp4, e, 3);
        CHECK(tc.passed);
        CHECK(tc.pair_count == 112 * tc.self_dual_count);
        for (const TotalCheckRow& row : tc.rows) CHECK(row.lhs == row.rhs);
    }
}

TEST_CASE("windows are stable under a unimodular change of basis") {
    Space sp2(3, {0, 0}, 34);
    const LocalRing& R = sp2.R;
    Lat base = base_lattice(sp2, {2, 2});
    std::mt19937 rng(20260822);
    LocalMat rows = base.rows;
    for (int step = 0; step < 12; ++step) {
        int i = (int)(rng() % 2), j = 1 - i;
        long long c = 1 + (long long)(rng() % 5);
        for (int t = 0; t < 2; ++t) rows[i][t] = R.add(rows[i][t], R.mul({c, 0}, rows[j][t]));
        if (rng() % 3 == 0) std::swap(rows[0], rows[1]);
    }
    Lat moved{&sp2, rows, base.scale};
    REQUIRE(lat_equal(moved, base));
    CHECK(key_set(self_dual_overlattices(moved)) == key_set(self_dual_overlattices(base)));
    CHECK(key_set(max_type_vertices(moved)) == key_set(max_type_vertices(base)));
}

TEST_CASE("window closure under incidence") {
    Space sp2(3, {0, 0}, 34);
    VertexWindow w = enumerate_window(sp2, {1, 1}, true);
    CHECK(w.self_dual.size() == 4);
    auto max_keys = key_set(w.max_type);
    bool has_base = false;
    for (const Lat& N : w.max_type) has_base |= lat_equal(N, w.base);
    CHECK(has_base);
    for (const Lat& S : w.self_dual)
        for (const Lat& N : incident_max_type(S)) CHECK(max_keys.count(lat_key(N)) == 1);
}

TEST_CASE("vertex error paths") {
    Space sp2(3, {0, 0}, 34);
    Space sp4(3, {0, 0, 0, 0}, 34);
    Lat std2 = standard_lattice(sp2);

    CHECK_THROWS_AS(self_dual_overlattices(base_lattice(sp2, {0, -2})), NonIntegralError);
    CHECK_THROWS_AS(max_type_vertices(base_lattice(sp4, {6, 6, 4, 4})), CapExceededError);

    CHECK_THROWS_AS(int_closed(std2, std2, 3), InvalidSpecError);
    CHECK_THROWS_AS(c_bullet(std2, std2, 3), InvalidSpecError);
    CHECK_THROWS_AS(nabla_circ(std2, base_lattice(sp2, {1, 1}), 0, 3), InvalidSpecError);
    CHECK_THROWS_AS(c_value(-1, 3), InvalidSpecError);

    CHECK(c_value(0, 3) == Int(1));
    CHECK(c_value(1, 3) == Int(-8));
    CHECK(c_value(2, 3) == Int(-8 * -80));
}
