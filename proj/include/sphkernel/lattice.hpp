#pragma once

#include <functional>
#include <map>

#include "sphkernel/plocal.hpp"
#include "sphkernel/typ.hpp"

namespace sph {

// Ambient Hermitian space: rank n, diagonal pairing with entries p^{f0_i},
// f0 weakly decreasing and nonnegative, at a fixed working precision.
// The standard lattice of the space has type exactly f0.
struct Space {
    Space(long long p, TypeVec exponents, int digits);
    LocalRing R;
    TypeVec f0;
    int n;
    LocalMat gram0;
};

// A lattice: p^{-scale} times the row span of an integral basis matrix in
// ambient coordinates. scale may be negative (a sublattice of a deep
// multiple of the standard lattice).
struct Lat {
    const Space* sp = nullptr;
    LocalMat rows;
    int scale = 0;
};

Lat standard_lattice(const Space& sp);
// Gram matrix of the stored rows (the scale is not applied).
LocalMat rows_gram(const Lat& L);
// Valuations of the elementary divisors of the Gram form of the actual
// (scaled) lattice, sorted decreasing.
TypeVec lat_typ(const Lat& L);
Lat dual_lattice(const Lat& L);
bool lat_contains(const Lat& outer, const Lat& inner);
bool lat_equal(const Lat& A, const Lat& B);
// Unique representative: common uniformizer powers moved into the scale,
// rows in canonical triangular Hermite form.
Lat canonicalize(const Lat& L);
// Flattened canonical rows plus scale; usable as an ordered map key.
std::vector<long long> lat_key(const Lat& L);

// Colength of inner inside outer (length of the quotient); the inner
// lattice must be contained in the outer one.
int lat_colength(const Lat& outer, const Lat& inner);

// Visit each sublattice of the given colength exactly once (triangular
// Hermite representatives). CapExceededError above the configured cap.
void for_each_sublattice(const Lat& L, int colength, const std::function<void(const Lat&)>& fn);
// Only those whose quotient has the given elementary-divisor shape
// (weakly decreasing, positive entries).
void for_each_sublattice_of_shape(const Lat& L, const TypeVec& shape,
                                  const std::function<void(const Lat&)>& fn);
long long count_sublattices_of_shape(const Lat& L, const TypeVec& shape);

// Histogram of the sublattices of the standard lattice with exponents
// f_norm (nonnegative decreasing), per colength: type of the sublattice
// and dimension of Lambda/(p*Lambda + L), with multiplicity.
struct SublatticeHistogram {
    long long p = 0;
    TypeVec f_norm;
    // index: colength; key: type; inner key: quotient dimension.
    std::vector<std::map<TypeVec, std::map<int, long long>>> by_colength;
};

// Cached per (p, f_norm); recomputed when a larger cap is requested.
// digits_override bypasses the cache (used by precision-stability checks).
const SublatticeHistogram& sublattice_histogram(long long p, const TypeVec& f_norm,
                                                int colength_cap);
SublatticeHistogram sublattice_histogram_uncached(long long p, const TypeVec& f_norm,
                                                  int colength_cap, int digits_override = -1);

// Number of sublattices of a type-f lattice having type e.
long long count_d(const TypeVec& e, const TypeVec& f, long long q0);
// The weighted count: sum of c(dim) over type-e sublattices of a type-f
// lattice, where c(k) is the standard weight evaluated at q0.
Int count_phi(const TypeVec& e, const TypeVec& f, long long q0);
// #{L inside a type-f lattice : quotient of shape (1^i), typ(L) = e}.
long long count_hecke_gl(int i, const TypeVec& e, const TypeVec& f, long long q0);

// Functions on type vectors, for the brute-force Hecke action. With
// zero_extended, absent keys read as zero; otherwise reading an absent key
// raises WindowTooSmallError.
struct TypeFunction {
    std::map<TypeVec, Rational> vals;
    bool zero_extended = true;
};
Rational type_function_value(const TypeFunction& fn, const TypeVec& v);
// (T_i fn)(x) = sum of fn(typ L) over sublattices L of a type-x lattice
// with quotient (O/p)^i, computed for every x in out_window.
TypeFunction hecke_action_gl(int i, const TypeFunction& fn, long long q0,
                             const std::vector<TypeVec>& out_window);

// Colength cap for oracle enumerations; reads SPHKERNEL_COLENGTH_CAP once.
int oracle_colength_cap();

}  // namespace sph
