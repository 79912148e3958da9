#include "sphkernel/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "sphkernel/errors.hpp"

namespace sph {

namespace {

constexpr int kBigVal = 1000;  // stand-in for "valuation of an exact zero"

void require_type_vector(const TypeVec& v, const char* what) {
    if (v.empty()) throw InvalidSpecError(std::string(what) + " must have positive rank");
    if (!weakly_decreasing(v))
        throw RegionViolationError(std::string(what) + " must be weakly decreasing");
}

int vp64(long long x, long long p) {
    if (x == 0) return kBigVal;
    if (x < 0) x = -x;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

int vp128(__int128 x, long long p) {
    if (x == 0) return kBigVal;
    if (x < 0) x = -x;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

long long ipow(long long p, int k) {
    long long r = 1;
    while (k-- > 0) r *= p;
    return r;
}

// Weight c(k) = prod_{i=1..k} (1 - q^{2i}) at an integer q.
Int c_weight_at(int k, long long q0) {
    Int out = 1;
    Int q2 = Int(q0) * q0;
    Int power = 1;
    for (int i = 1; i <= k; ++i) {
        power *= q2;
        out *= (Int(1) - power);
    }
    return out;
}

struct NormalizedQuery {
    TypeVec e2, f2;
    int colength = 0;
    bool zero = false;
};

NormalizedQuery normalize_query(const TypeVec& e, const TypeVec& f) {
    require_type_vector(e, "type vector");
    require_type_vector(f, "type vector");
    if (e.size() != f.size()) throw RankMismatchError("type vectors of unequal rank");
    NormalizedQuery nq;
    int diff = vec_sum(e) - vec_sum(f);
    if (diff < 0 || diff % 2 != 0) {
        nq.zero = true;
        return nq;
    }
    int t = f.back();
    nq.e2.reserve(e.size());
    nq.f2.reserve(f.size());
    for (int x : e) nq.e2.push_back(x - t);
    for (int x : f) nq.f2.push_back(x - t);
    for (int x : nq.e2)
        if (x < 0) nq.zero = true;
    nq.colength = diff / 2;
    return nq;
}

// All compositions (a_1..a_n) of total into nonnegative parts.
void compositions(int n, int total, TypeVec& cur, const std::function<void(const TypeVec&)>& fn) {
    if ((int)cur.size() == n - 1) {
        cur.push_back(total);
        fn(cur);
        cur.pop_back();
        return;
    }
    for (int a = 0; a <= total; ++a) {
        cur.push_back(a);
        compositions(n, total - a, cur, fn);
        cur.pop_back();
    }
}

// Lower-triangular Hermite representatives: diagonal p^{a_i}, entries below
// the diagonal reduced mod the pivot of their column.
void for_each_hnf(const LocalRing& R, int n, int colength,
                  const std::function<void(const LocalMat&)>& fn) {
    TypeVec cur;
    compositions(n, colength, cur, [&](const TypeVec& a) {
        struct Free {
            int i, j;
            long long m;
        };
        std::vector<Free> frees;
        double total = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (a[j] > 0) {
                    long long m = ipow(R.p(), a[j]);
                    frees.push_back({i, j, m});
                    total *= (double)m * (double)m;
                }
        if (total > 2.5e8)
            throw CapExceededError("sublattice enumeration exceeds the configured budget");
        LocalMat H(n, std::vector<LocalElem>(n, R.zero()));
        for (int i = 0; i < n; ++i) H[i][i] = R.uniformizer_power(a[i]);
        std::vector<long long> idx(frees.size(), 0);
        while (true) {
            for (size_t k = 0; k < frees.size(); ++k) {
                long long m = frees[k].m;
                H[frees[k].i][frees[k].j] = {idx[k] % m, idx[k] / m};
            }
            fn(H);
            size_t k = 0;
            for (; k < frees.size(); ++k) {
                if (++idx[k] < frees[k].m * frees[k].m) break;
                idx[k] = 0;
            }
            if (k == frees.size()) break;
        }
    });
}

void record(SublatticeHistogram& hist, int colength, TypeVec typ, int dim, long long cnt) {
    hist.by_colength[colength][std::move(typ)][dim] += cnt;
}

// Rank-2 histogram by exact integer arithmetic: rows (p^{a1}, 0) and
// (x + y t, p^{a2}); the Gram entries stay small enough for 64-bit words.
void histogram_rank2(SublatticeHistogram& hist, long long p, long long u, int f1, int f2,
                     int cap) {
    for (int c = 0; c <= cap; ++c) {
        int vdet = 2 * c + f1 + f2;
        for (int a1 = 0; a1 <= c; ++a1) {
            int a2 = c - a1;
            long long m = ipow(p, a1);
            long long pf1 = ipow(p, f1);
            long long p22 = ipow(p, 2 * a2 + f2);
            std::vector<int> vpt(m, 0);
            vpt[0] = kBigVal;
            for (long long x = 1; x < m; ++x) vpt[x] = vp64(x, p);
            // counts[vmin][hmin]
            std::vector<std::vector<long long>> counts(vdet / 2 + 1,
                                                       std::vector<long long>(c + 1, 0));
            for (long long x = 0; x < m; ++x) {
                int vpx = vpt[x];
                __int128 xx = (__int128)x * x;
                for (long long y = 0; y < m; ++y) {
                    int vc = std::min(vpx, vpt[y]);
                    int hmin = std::min({a1, a2, vc});
                    __int128 g22 = (xx - (__int128)u * y * y) * pf1 + p22;
                    int v22 = vp128(g22, p);
                    int v12 = vc >= kBigVal ? kBigVal : a1 + f1 + vc;
                    int vmin = std::min({2 * a1 + f1, v12, v22});
                    if (vmin > vdet - vmin)
                        throw PrecisionLossError("elementary divisors out of order");
                    ++counts[vmin][hmin];
                }
            }
            for (int vmin = 0; vmin <= vdet / 2; ++vmin)
                for (int hmin = 0; hmin <= c; ++hmin) {
                    long long cnt = counts[vmin][hmin];
                    if (cnt == 0) continue;
                    int dim = (hmin > 0 ? 1 : 0) + (c - hmin > 0 ? 1 : 0);
                    record(hist, c, TypeVec{vdet - vmin, vmin}, dim, cnt);
                }
        }
    }
}

}  // namespace

Space::Space(long long p, TypeVec exponents, int digits) : R(p, digits), f0(std::move(exponents)) {
    require_type_vector(f0, "space exponent vector");
    for (int x : f0)
        if (x < 0) throw InvalidSpecError("space exponents must be nonnegative");
    if (f0.front() >= digits)
        throw PrecisionLossError("space exponents exceed the working precision");
    n = (int)f0.size();
    gram0 = LocalMat(n, std::vector<LocalElem>(n, R.zero()));
    for (int i = 0; i < n; ++i) gram0[i][i] = R.uniformizer_power(f0[i]);
}

Lat standard_lattice(const Space& sp) { return {&sp, sp.R.identity(sp.n), 0}; }

LocalMat rows_gram(const Lat& L) {
    const LocalRing& R = L.sp->R;
    return R.mat_mul(L.rows, R.mat_mul(L.sp->gram0, R.conj_transpose(L.rows)));
}

TypeVec lat_typ(const Lat& L) {
    std::vector<int> vals = L.sp->R.snf_valuations(rows_gram(L));
    TypeVec t;
    t.reserve(vals.size());
    for (auto it = vals.rbegin(); it != vals.rend(); ++it) t.push_back(*it - 2 * L.scale);
    if (!weakly_decreasing(t)) throw PrecisionLossError("elementary divisors out of order");
    return t;
}

Lat dual_lattice(const Lat& L) {
    const LocalRing& R = L.sp->R;
    auto [inv, v] = R.scaled_inverse(rows_gram(L));
    // The adjugate rows share a large uniformizer power; reduce them so that
    // chained dual and inverse computations stay inside the precision budget.
    return canonicalize({L.sp, R.mat_mul(inv, L.rows), v - L.scale});
}

bool lat_contains(const Lat& outer, const Lat& inner) {
    if (outer.sp != inner.sp) throw InvalidSpecError("lattices from different spaces");
    const LocalRing& R = outer.sp->R;
    auto [inv, v] = R.scaled_inverse(outer.rows);
    int need = v + inner.scale - outer.scale;
    if (need > R.digits()) throw PrecisionLossError("containment test outruns the precision");
    LocalMat coef = R.mat_mul(inner.rows, inv);
    for (const auto& row : coef)
        for (const auto& x : row)
            if (R.val(x) < need) return false;
    return true;
}

bool lat_equal(const Lat& A, const Lat& B) { return lat_contains(A, B) && lat_contains(B, A); }

Lat canonicalize(const Lat& L) {
    const LocalRing& R = L.sp->R;
    Lat out = L;
    int minv = R.digits();
    for (const auto& row : out.rows)
        for (const auto& x : row) minv = std::min(minv, R.val(x));
    if (minv >= R.digits()) throw PrecisionLossError("zero basis in canonical form");
    if (minv > 0) {
        for (auto& row : out.rows)
            for (auto& x : row) x = R.shift_down(x, minv);
        out.scale -= minv;
    }
    out.rows = R.hnf_basis(out.rows, L.sp->n);
    return out;
}

std::vector<long long> lat_key(const Lat& L) {
    Lat c = canonicalize(L);
    std::vector<long long> key;
    key.reserve(1 + 2 * c.rows.size() * c.rows.size());
    key.push_back(c.scale);
    for (const auto& row : c.rows)
        for (const auto& x : row) {
            key.push_back(x.a);
            key.push_back(x.b);
        }
    return key;
}

int lat_colength(const Lat& outer, const Lat& inner) {
    if (!lat_contains(outer, inner)) throw InvalidSpecError("colength of a non-sublattice");
    int s = vec_sum(lat_typ(inner)) - vec_sum(lat_typ(outer));
    if (s < 0 || s % 2 != 0) throw PrecisionLossError("inconsistent colength computation");
    return s / 2;
}

void for_each_sublattice(const Lat& L, int colength, const std::function<void(const Lat&)>& fn) {
    if (colength < 0) throw InvalidSpecError("negative colength");
    if (colength > oracle_colength_cap())
        throw CapExceededError("sublattice colength above the configured cap");
    const LocalRing& R = L.sp->R;
    for_each_hnf(R, L.sp->n, colength, [&](const LocalMat& H) {
        fn(Lat{L.sp, R.mat_mul(H, L.rows), L.scale});
    });
}

void for_each_sublattice_of_shape(const Lat& L, const TypeVec& shape,
                                  const std::function<void(const Lat&)>& fn) {
    for (int x : shape)
        if (x <= 0) throw InvalidSpecError("quotient shape entries must be positive");
    if (!weakly_decreasing(shape)) throw InvalidSpecError("quotient shape must be decreasing");
    int colength = vec_sum(shape);
    TypeVec want = shape;
    want.resize(L.sp->n, 0);
    const LocalRing& R = L.sp->R;
    if (colength > oracle_colength_cap())
        throw CapExceededError("sublattice colength above the configured cap");
    for_each_hnf(R, L.sp->n, colength, [&](const LocalMat& H) {
        std::vector<int> vals = R.snf_valuations(H);
        TypeVec got(vals.rbegin(), vals.rend());
        if (got == want) fn(Lat{L.sp, R.mat_mul(H, L.rows), L.scale});
    });
}

long long count_sublattices_of_shape(const Lat& L, const TypeVec& shape) {
    long long n = 0;
    for_each_sublattice_of_shape(L, shape, [&](const Lat&) { ++n; });
    return n;
}

SublatticeHistogram sublattice_histogram_uncached(long long p, const TypeVec& f_norm,
                                                  int colength_cap, int digits_override) {
    require_type_vector(f_norm, "histogram exponent vector");
    if (!in_region(f_norm, Region::Flat))
        throw RegionViolationError("histogram exponents must be flat");
    if (colength_cap < 0) throw InvalidSpecError("negative colength cap");
    SublatticeHistogram hist;
    hist.p = p;
    hist.f_norm = f_norm;
    hist.by_colength.assign(colength_cap + 1, {});
    int r = (int)f_norm.size();
    int digits = digits_override > 0 ? digits_override : vec_sum(f_norm) + 2 * colength_cap + 2;
    if (r == 1) {
        for (int c = 0; c <= colength_cap; ++c)
            record(hist, c, TypeVec{f_norm[0] + 2 * c}, c > 0 ? 1 : 0, 1);
        return hist;
    }
    if (r == 2) {
        LocalRing R(p, std::max(digits, 2));  // validates p and finds the non-residue
        histogram_rank2(hist, p, R.nonresidue(), f_norm[0], f_norm[1], colength_cap);
        return hist;
    }
    Space sp(p, f_norm, digits);
    const LocalRing& R = sp.R;
    for (int c = 0; c <= colength_cap; ++c) {
        int want_det = vec_sum(f_norm) + 2 * c;
        for_each_hnf(R, r, c, [&](const LocalMat& H) {
            LocalMat B = R.mat_mul(H, R.mat_mul(sp.gram0, R.conj_transpose(H)));
            std::vector<int> gvals = R.snf_valuations(B);
            int tot = 0;
            for (int v : gvals) tot += v;
            if (tot != want_det)
                throw PrecisionLossError("determinant bookkeeping mismatch in histogram");
            TypeVec typ(gvals.rbegin(), gvals.rend());
            std::vector<int> hvals = R.snf_valuations(H);
            int dim = 0;
            for (int v : hvals)
                if (v > 0) ++dim;
            record(hist, c, std::move(typ), dim, 1);
        });
    }
    return hist;
}

const SublatticeHistogram& sublattice_histogram(long long p, const TypeVec& f_norm,
                                                int colength_cap) {
    static std::map<std::pair<long long, TypeVec>, SublatticeHistogram> cache;
    auto key = std::make_pair(p, f_norm);
    auto it = cache.find(key);
    if (it != cache.end() && (int)it->second.by_colength.size() > colength_cap) return it->second;
    SublatticeHistogram fresh = sublattice_histogram_uncached(p, f_norm, colength_cap);
    return cache.insert_or_assign(key, std::move(fresh)).first->second;
}

long long count_d(const TypeVec& e, const TypeVec& f, long long q0) {
    NormalizedQuery nq = normalize_query(e, f);
    if (nq.zero) return 0;
    if (nq.colength > oracle_colength_cap())
        throw CapExceededError("count query needs a colength above the cap");
    const SublatticeHistogram& h = sublattice_histogram(q0, nq.f2, nq.colength);
    auto it = h.by_colength[nq.colength].find(nq.e2);
    if (it == h.by_colength[nq.colength].end()) return 0;
    long long total = 0;
    for (const auto& [dim, cnt] : it->second) {
        (void)dim;
        total += cnt;
    }
    return total;
}

Int count_phi(const TypeVec& e, const TypeVec& f, long long q0) {
    NormalizedQuery nq = normalize_query(e, f);
    if (nq.zero) return 0;
    if (nq.colength > oracle_colength_cap())
        throw CapExceededError("count query needs a colength above the cap");
    const SublatticeHistogram& h = sublattice_histogram(q0, nq.f2, nq.colength);
    auto it = h.by_colength[nq.colength].find(nq.e2);
    if (it == h.by_colength[nq.colength].end()) return 0;
    Int total = 0;
    for (const auto& [dim, cnt] : it->second) total += Int(cnt) * c_weight_at(dim, q0);
    return total;
}

long long count_hecke_gl(int i, const TypeVec& e, const TypeVec& f, long long q0) {
    if (i < 0 || i > (int)f.size()) throw InvalidSpecError("shape index outside 0..rank");
    NormalizedQuery nq = normalize_query(e, f);
    if (nq.zero || nq.colength != i) return 0;
    if (i > oracle_colength_cap())
        throw CapExceededError("count query needs a colength above the cap");
    const SublatticeHistogram& h = sublattice_histogram(q0, nq.f2, i);
    auto it = h.by_colength[i].find(nq.e2);
    if (it == h.by_colength[i].end()) return 0;
    auto jt = it->second.find(i);
    return jt == it->second.end() ? 0 : jt->second;
}

Rational type_function_value(const TypeFunction& fn, const TypeVec& v) {
    auto it = fn.vals.find(v);
    if (it != fn.vals.end()) return it->second;
    if (!fn.zero_extended)
        throw WindowTooSmallError("type function read outside its window");
    return Rational(0);
}

TypeFunction hecke_action_gl(int i, const TypeFunction& fn, long long q0,
                             const std::vector<TypeVec>& out_window) {
    TypeFunction out;
    out.zero_extended = false;
    if (i > oracle_colength_cap())
        throw CapExceededError("count query needs a colength above the cap");
    for (const TypeVec& x : out_window) {
        require_type_vector(x, "window type vector");
        if (i < 0 || i > (int)x.size()) throw InvalidSpecError("shape index outside 0..rank");
        int t = x.back();
        TypeVec xn;
        for (int v : x) xn.push_back(v - t);
        const SublatticeHistogram& h = sublattice_histogram(q0, xn, i);
        Rational acc(0);
        if (i < (int)h.by_colength.size()) {
            for (const auto& [typ2, dims] : h.by_colength[i]) {
                auto jt = dims.find(i);
                if (jt == dims.end()) continue;
                TypeVec reached;
                for (int v : typ2) reached.push_back(v + t);
                acc += Rational(jt->second) * type_function_value(fn, reached);
            }
        }
        out.vals[x] = acc;
    }
    return out;
}

int oracle_colength_cap() {
    static int cap = [] {
        const char* s = std::getenv("SPHKERNEL_COLENGTH_CAP");
        if (!s) return 6;
        int v = std::atoi(s);
        if (v < 1) v = 1;
        if (v > 12) v = 12;
        return v;
    }();
    return cap;
}

}  // namespace sph
