#include "sphkernel/suites.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sphkernel/expr.hpp"
#include "sphkernel/lattice.hpp"
#include "sphkernel/ops.hpp"
#include "sphkernel/phi.hpp"
#include "sphkernel/rz.hpp"
#include "sphkernel/straighten.hpp"
#include "sphkernel/sympoly.hpp"
#include "sphkernel/typ.hpp"

namespace sph {

namespace {

std::string vec_str(const TypeVec& v) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ']';
    return os.str();
}

std::string primes_str(const std::vector<long long>& primes) {
    std::ostringstream os;
    for (size_t i = 0; i < primes.size(); ++i) {
        if (i) os << ',';
        os << primes[i];
    }
    return os.str();
}

std::string params_str(int eff_rank, const SuiteParams& p, const std::string& extra = "") {
    std::ostringstream os;
    os << "rank_max=" << eff_rank << " primes=" << primes_str(p.primes) << " seed=" << p.seed;
    if (!extra.empty()) os << ' ' << extra;
    return os.str();
}

int eff_rank(const SuiteParams& p, int fallback) { return p.rank_max > 0 ? p.rank_max : fallback; }

std::vector<long long> eff_primes(const SuiteParams& p) {
    return p.primes.empty() ? std::vector<long long>{3} : p.primes;
}

void record(SuiteReport& rep, bool ok, const std::string& input, const std::string& expected,
            const std::string& actual, const char* from) {
    ++rep.cases;
    if (!ok) rep.failures.push_back({input, expected, actual, from});
}

void check_elements(SuiteReport& rep, const std::string& input, const Element& expected,
                    const Element& actual, const char* from) {
    record(rep, expected == actual, input, render_element(expected), render_element(actual), from);
}

TypeVec random_vec(std::mt19937_64& rng, int rank, int lo, int hi) {
    TypeVec v(static_cast<size_t>(rank));
    for (auto& x : v) x = lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    return v;
}

TypeVec ones_zeros(int a, int b) {
    TypeVec v(static_cast<size_t>(a), 1);
    v.insert(v.end(), static_cast<size_t>(b), 0);
    return v;
}

// prod_{k=from+1}^{to} (1 - (-q)^k)
Scalar q_pochhammer_neg(int from_exclusive, int to_inclusive) {
    Scalar out = Scalar::integer(1);
    for (int k = from_exclusive + 1; k <= to_inclusive; ++k)
        out = out * (Scalar::integer(1) - Scalar::neg_q_pow(k));
    return out;
}

const char* mode_label(StrMode m) {
    switch (m) {
        case StrMode::Natural: return "natural";
        case StrMode::Flat: return "flat";
        default: return "phi";
    }
}

// Relation generators of each rewrite system over a small sample of shapes.
std::vector<Element> sample_relations(StrMode mode, int rank) {
    const Straightener& st = shared_straightener(mode);
    std::vector<Element> out;
    if (rank == 1) {
        if (mode != StrMode::Natural)
            for (int m = 1; m <= 4; ++m) out.push_back(st.boundary_relation(m, {}));
        return out;
    }
    if (rank == 2) {
        out.push_back(st.pair_relation(0, 1, {}, {}));
        out.push_back(st.pair_relation(-1, 1, {}, {}));
        out.push_back(st.pair_relation(-2, 2, {}, {}));
        out.push_back(st.pair_relation(1, 3, {}, {}));
        if (mode != StrMode::Natural) {
            for (int m = 1; m <= 3; ++m) {
                out.push_back(st.boundary_relation(m, {1}));
                out.push_back(st.boundary_relation(m, {3}));
            }
        }
    }
    if (rank == 3) {
        out.push_back(st.pair_relation(0, 2, {3}, {}));
        out.push_back(st.pair_relation(1, 2, {}, {0}));
        out.push_back(st.pair_relation(-1, 0, {2}, {}));
        if (mode != StrMode::Natural) {
            out.push_back(st.boundary_relation(2, {3, 1}));
            out.push_back(st.boundary_relation(1, {2, 2}));
        }
    }
    return out;
}

SuiteReport run_strphi(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "strphi";
    rep.statement =
        "Straightening the two recorded elements gives the stored normal forms, every relation "
        "generator normalizes to zero, and normalization is idempotent into the normal region";
    int rk = eff_rank(p, 3);
    rep.params = params_str(rk, p);

    check_elements(rep, "natural [-2,1]",
                   parse_element("q^2*[1,-2] + (1-q^2)*[0,-1]"),
                   shared_straightener(StrMode::Natural).normalize(Element::delta({-2, 1})),
                   "golden");
    check_elements(rep, "phi [-2,1]",
                   parse_element("q^5*[2,1] + (q^2-q^3)*[1,0]"),
                   shared_straightener(StrMode::Phi).normalize(Element::delta({-2, 1})), "golden");

    for (StrMode m : {StrMode::Natural, StrMode::Flat, StrMode::Phi}) {
        const Straightener& st = shared_straightener(m);
        for (int rank = 1; rank <= std::min(rk, 3); ++rank) {
            int idx = 0;
            for (const Element& rel : sample_relations(m, rank)) {
                std::ostringstream in;
                in << "mode=" << mode_label(m) << " rank=" << rank << " relation#" << idx++;
                Element nf = st.normalize(rel);
                record(rep, nf.is_zero(), in.str(), "0", render_element(nf), "recomputed");
            }
        }
    }

    std::mt19937_64 rng(p.seed);
    for (StrMode m : {StrMode::Natural, StrMode::Flat, StrMode::Phi}) {
        const Straightener& st = shared_straightener(m);
        for (int trial = 0; trial < 40; ++trial) {
            int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(rk, 4)));
            TypeVec v = random_vec(rng, rank, -4, 4);
            Element nf = st.normalize(Element::delta(v));
            bool region = true;
            for (const auto& [w, c] : nf.support()) region = region && st.in_normal_form(w);
            std::ostringstream in;
            in << "mode=" << mode_label(m) << " v=" << vec_str(v);
            record(rep, region, in.str() + " region", "all keys in normal form",
                   render_element(nf), "recomputed");
            record(rep, st.normalize(nf) == nf, in.str() + " idempotence", render_element(nf),
                   render_element(st.normalize(nf)), "recomputed");
        }
    }
    return rep;
}

SuiteReport run_deltaphi(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "deltaphi";
    rep.statement = "Symbolic pairing values of the functional basis match brute-force lattice counts";
    int rk = std::min(eff_rank(p, 2), 2);
    rep.params = params_str(rk, p);
    for (long long q0 : eff_primes(p)) {
        for (int r = 1; r <= rk; ++r) {
            std::vector<TypeVec> vecs = decreasing_vectors(r, -3, 3);
            for (const TypeVec& e : vecs) {
                for (const TypeVec& f : vecs) {
                    if (((vec_sum(e) - vec_sum(f)) % 2 + 2) % 2 != 0) continue;
                    Rational want(count_phi(e, f, q0));
                    Rational got = phi_natural_value(e, f).eval_q(q0);
                    std::ostringstream in;
                    in << "q0=" << q0 << " e=" << vec_str(e) << " f=" << vec_str(f);
                    record(rep, got == want, in.str(), want.str(), got.str(), "oracle");
                }
            }
        }
    }
    return rep;
}

SuiteReport run_heckenatural(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "heckenatural";
    rep.statement =
        "The straightened adjoint of each doubled shift operator reproduces the orbit counts of "
        "the shape-restricted sublattice walk";
    rep.params = params_str(2, p);
    const Straightener& str = shared_straightener(StrMode::Natural);
    for (long long q0 : eff_primes(p)) {
        for (int i = 0; i <= 2; ++i) {
            for (const TypeVec& f : decreasing_vectors(2, -2, 2)) {
                Element img = str.normalize(delta_gl(i, 2).apply(Element::delta(f)));
                for (const TypeVec& e : decreasing_vectors(2, -4, 6)) {
                    if (vec_sum(e) - vec_sum(f) != 2 * i) continue;
                    Rational want(count_hecke_gl(i, e, f, q0));
                    Rational got = img.coeff(e).eval_q(q0);
                    std::ostringstream in;
                    in << "q0=" << q0 << " i=" << i << " f=" << vec_str(f) << " e=" << vec_str(e);
                    record(rep, got == want, in.str(), want.str(), got.str(), "oracle");
                }
            }
        }
    }
    return rep;
}

SuiteReport run_flatphi(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "flatphi";
    rep.statement =
        "The half-shift expansion of the functional basis holds, and the level operator agrees "
        "with the signed product route under the recorded exponent reading";
    int rk = std::min(eff_rank(p, 3), 4);
    rep.params = params_str(rk, p, "reading=B");
    for (int r = 2; r <= rk; ++r) {
        for (int i = 0; i <= r; ++i) {
            for (const TypeVec& e : decreasing_vectors(r, 0, 2)) {
                std::ostringstream in;
                in << "expansion i=" << i << " r=" << r << " e=" << vec_str(e);
                record(rep, half_shift_functional_expansion_check(i, r, e), in.str(),
                       "expansion identity holds", "mismatch", "recomputed");
            }
        }
    }
    for (int r = 1; r <= std::min(rk, 3); ++r) {
        std::vector<Element> probes = {Element::delta(TypeVec(r, 0))};
        if (r >= 2) probes.push_back(Element::delta(ones_zeros(1, r - 1)));
        int idx = 0;
        for (const Element& f : probes) {
            Element via_product = s_pm_apply(r, 1, s_pm_apply(r, -1, f));
            std::ostringstream in;
            in << "product route r=" << r << " probe#" << idx++;
            check_elements(rep, in.str(), via_product, t_r_apply(r, f), "recomputed");
        }
    }
    // The exponent reading is pinned by the product route in rank two: the
    // alternative reading must disagree there, the recorded one must agree.
    Element f00 = Element::delta({0, 0});
    Element cross = s_pm_apply(2, 1, s_pm_apply(2, -1, f00));
    record(rep, t_r_apply(2, f00, FlatReading::A) != cross, "reading A at r=2",
           "disagrees with product route", "agrees", "recomputed");
    check_elements(rep, "reading B at r=2", cross, t_r_apply(2, f00, FlatReading::B), "recomputed");
    return rep;
}

SuiteReport run_conjproof1(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "conjproof1";
    rep.statement = "Half shifts keep functional combinations inside the span with at most one zero row";
    int rk = std::min(eff_rank(p, 3), 3);
    rep.params = params_str(rk, p);
    for (int r = 1; r <= rk; ++r) {
        for (const TypeVec& e : flat_vectors_with_sum_at_most(r, r + 2)) {
            if (lambda_count(e, 0) > 1) continue;
            for (int i = 0; i <= r; ++i) {
                std::ostringstream in;
                in << "closure i=" << i << " r=" << r << " e=" << vec_str(e);
                record(rep, half_shift_closure_check(i, r, e), in.str(),
                       "image solves with at most one zero row", "solve failed", "recomputed");
            }
        }
    }
    return rep;
}

SuiteReport run_conjproof2(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "conjproof2";
    rep.statement =
        "level-operator images solve in the constrained span, the recorded rank-one image is "
        "exact, and the closed product formula matches both the symbolic value and the count";
    int rk = std::min(eff_rank(p, 4), 4);
    rep.params = params_str(rk, p);

    Element t1 = t_r_apply(1, Element::delta(TypeVec{0}));
    check_elements(rep, "worked image r=1", parse_element("[2] - (q^2+q)*[0]"), t1, "golden");
    SolveResult w = phi_span_solve(t1);
    bool coords_ok = w.in_span && w.coords.size() == 2 &&
                     w.coords.at({2}) == Scalar::integer(1) &&
                     w.coords.at({0}) == -(Scalar::integer(1) + Scalar::q_pow(1));
    record(rep, coords_ok, "worked coordinates r=1", "phi[2] - (1+q)*phi[0]",
           w.in_span ? "solved with other coordinates" : "not in span", "golden");

    for (int r = 1; r <= rk; ++r) {
        std::vector<TypeVec> starts = {TypeVec(r, 0)};
        for (const TypeVec& f : flat_vectors_with_sum_at_most(r, r == 4 ? 2 : 3))
            if (lambda_count(f, 0) <= 1) starts.push_back(f);
        for (const TypeVec& f : starts) {
            SolveResult a = phi_span_solve(t_r_apply(r, Element::delta(f)), 1);
            SolveResult b = phi_span_solve(t_r_prime_apply(r, Element::delta(f)), 1);
            std::ostringstream in;
            in << "membership r=" << r << " f=" << vec_str(f);
            record(rep, a.in_span, in.str() + " level", "in constrained span", "not in span",
                   "recomputed");
            record(rep, b.in_span, in.str() + " level-prime", "in constrained span", "not in span",
                   "recomputed");
        }
    }

    for (long long q0 : eff_primes(p)) {
        for (int a = 0; a <= 4; ++a) {
            for (int b = 0; a + b <= 4; ++b) {
                if (a + b == 0) continue;
                TypeVec e = ones_zeros(a, b);
                TypeVec z(static_cast<size_t>(a + b), 0);
                Scalar want = a % 2 == 0 ? q_pochhammer_neg(b, a + b) : Scalar();
                Scalar got = phi_natural_value(e, z);
                std::ostringstream in;
                in << "closed count a=" << a << " b=" << b;
                record(rep, got == want, in.str() + " symbolic", want.str(), got.str(),
                       "recomputed");
                Rational cnt(count_phi(e, z, q0));
                record(rep, cnt == want.eval_q(q0), in.str() + " q0=" + std::to_string(q0),
                       want.eval_q(q0).str(), cnt.str(), "oracle");
            }
        }
    }
    return rep;
}

SuiteReport run_satake(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "satake";
    rep.statement = "Symmetrized polynomial transforms of the level operators equal their product expansions";
    int rk = eff_rank(p, 5);
    rep.params = params_str(rk, p);
    for (int r = 1; r <= rk; ++r) {
        std::ostringstream in;
        in << "target=level r=" << r;
        record(rep, satake_identity_check(SatakeTarget::Level, r), in.str(),
               "transform equals expansion", "mismatch", "recomputed");
    }
    for (int r = 1; r <= std::min(rk, 4); ++r) {
        std::ostringstream in;
        in << "target=level-prime r=" << r;
        record(rep, satake_identity_check(SatakeTarget::LevelPrime, r), in.str(),
               "transform equals expansion", "mismatch", "recomputed");
    }
    return rep;
}

SuiteReport run_rznabla(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "rznabla";
    rep.statement =
        "The total vertex value equals the incidence transform of the ground term at every "
        "window vertex, for every sign vector";
    int rk = std::min(eff_rank(p, 2), 2);
    rep.params = params_str(rk, p);
    for (long long q0 : eff_primes(p)) {
        for (int r = 1; r <= rk; ++r) {
            int n = 2 * r;
            Space sp(q0, TypeVec(static_cast<size_t>(n), 0), 34);
            for (const TypeVec& e : decreasing_vectors(n, 0, 2)) {
                if (vec_sum(e) % 2 != 0) continue;
                TotalCheck tc = verify_total_identity(sp, e, q0);
                for (size_t k = 0; k < tc.rows.size(); ++k) {
                    const TotalCheckRow& row = tc.rows[k];
                    std::ostringstream in;
                    in << "q0=" << q0 << " type=" << vec_str(e) << " vertex#" << k;
                    record(rep, row.ok, in.str(), row.rhs.str(), row.lhs.str(), "recomputed");
                }
            }
        }
        // Free-function route on one small window, both sign counts.
        Space sp2(q0, {0, 0}, 34);
        Lat base = base_lattice(sp2, {1, 1});
        std::vector<Lat> circ = self_dual_overlattices(base);
        if (!circ.empty()) {
            Int want = 0;
            for (const Lat& N : incident_max_type(circ.front())) want += c_bullet(base, N, q0);
            for (int ps = 0; ps <= 1; ++ps) {
                Int got = nabla_total(base, circ.front(), q0, ps);
                std::ostringstream in;
                in << "q0=" << q0 << " free route type=[1,1] signs=" << ps;
                record(rep, got == want, in.str(), want.str(), got.str(), "recomputed");
            }
        }
    }
    return rep;
}

SuiteReport run_confluence(const SuiteParams& p) {
    SuiteReport rep;
    rep.suite = "confluence";
    rep.statement = "Normal forms are independent of the rewriting strategy";
    int rk = std::min(eff_rank(p, 4), 4);
    rep.params = params_str(rk, p);
    std::mt19937_64 rng(p.seed);
    for (int trial = 0; trial < 500; ++trial) {
        int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(rk));
        TypeVec v = random_vec(rng, rank, -4, 4);
        std::uint64_t s1 = rng();
        std::uint64_t s2 = rng();
        for (StrMode m : {StrMode::Natural, StrMode::Flat, StrMode::Phi}) {
            const Straightener& st = shared_straightener(m);
            Element x = Element::delta(v);
            Element left = st.normalize(x, Strategy::Leftmost, 0);
            Element right = st.normalize(x, Strategy::Rightmost, 0);
            Element rnd1 = st.normalize(x, Strategy::Random, s1);
            Element rnd2 = st.normalize(x, Strategy::Random, s2);
            std::ostringstream in;
            in << "trial=" << trial << " mode=" << mode_label(m) << " v=" << vec_str(v);
            bool ok = left == right && left == rnd1 && left == rnd2;
            record(rep, ok, in.str(), render_element(left),
                   ok ? render_element(left) : "strategy disagreement", "recomputed");
        }
    }
    return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "strphi",     "deltaphi",   "heckenatural", "flatphi", "conjproof1",
        "conjproof2", "satake",     "rznabla",      "confluence"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
    if (name == "strphi") return run_strphi(params);
    if (name == "deltaphi") return run_deltaphi(params);
    if (name == "heckenatural") return run_heckenatural(params);
    if (name == "flatphi") return run_flatphi(params);
    if (name == "conjproof1") return run_conjproof1(params);
    if (name == "conjproof2") return run_conjproof2(params);
    if (name == "satake") return run_satake(params);
    if (name == "rznabla") return run_rznabla(params);
    if (name == "confluence") return run_confluence(params);
    throw InvalidSpecError("unknown suite: " + name);
}

std::vector<SuiteReport> run_all(const SuiteParams& params) {
    std::vector<SuiteReport> out;
    out.reserve(suite_names().size());
    for (const std::string& name : suite_names()) out.push_back(run_suite(name, params));
    return out;
}

std::string reports_json(const std::vector<SuiteReport>& reports) {
    nlohmann::ordered_json root;
    root["schema"] = "sphkernel-report/1";
    root["reports"] = nlohmann::ordered_json::array();
    for (const SuiteReport& r : reports) {
        nlohmann::ordered_json jr;
        jr["suite"] = r.suite;
        jr["statement"] = r.statement;
        jr["params"] = r.params;
        jr["cases"] = r.cases;
        jr["passed"] = r.passed();
        jr["failures"] = nlohmann::ordered_json::array();
        for (const SuiteFailure& f : r.failures) {
            nlohmann::ordered_json jf;
            jf["input"] = f.input;
            jf["expected"] = f.expected;
            jf["actual"] = f.actual;
            jf["expected_from"] = f.expected_from;
            jr["failures"].push_back(jf);
        }
        root["reports"].push_back(jr);
    }
    return root.dump(2) + "\n";
}

}  // namespace sph
