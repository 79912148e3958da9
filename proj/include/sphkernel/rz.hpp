#pragma once

#include <functional>

#include "sphkernel/lattice.hpp"

namespace sph {

// Vertex-lattice combinatorics in an even-rank space. A lattice V is a
// vertex lattice when p*dual(V) is contained in V and V in dual(V); its
// type vector then has entries in {0,1}. The two kinds used here are the
// self-dual lattices (type all zero) and the maximal-type vertices N
// (type all one, equivalently N = p*dual(N)).

// Smallest lattice containing both arguments (same space).
Lat lat_join(const Lat& A, const Lat& B);

// Build a full-rank lattice of the requested type inside the space with
// unit diagonal pairing. Even entries are realized on the diagonal; odd
// entries are produced in pairs from vectors of odd norm valuation, so a
// type with an odd number of odd entries raises NoSuchTypeError. Entries
// may be negative (the result is then not integral).
Lat base_lattice(const Space& sp, const TypeVec& e);

// Total quotient length allowed in vertex enumerations; reads
// SPHKERNEL_VERTEX_CAP once (default 24).
int vertex_length_cap();

// All self-dual lattices containing the base, deterministically ordered.
// The base must be integral (NonIntegralError); the enumeration walks
// colength-one integral enlargement chains, which reach every self-dual
// overlattice because intermediate steps inside one stay integral.
// CapExceededError when the dual quotient of the base is longer than the
// configured cap.
std::vector<Lat> self_dual_overlattices(const Lat& base);

// All maximal-type vertices N with p*base contained in N. Every such N
// satisfies N = p*dual(N), so N automatically lies inside dual(base) and
// the window is finite. Errors as above, with the cap measured on the
// quotient dual(base)/(p*base).
std::vector<Lat> max_type_vertices(const Lat& base);

// Incidence between the two kinds: a self-dual lattice S and a maximal
// type vertex N are incident when N is contained in S; S then lies inside
// dual(N) = p^{-1} N automatically, so the pairs sit in the chain
// N <= S <= dual(N). Enumeration is by half-dimensional isotropic
// subspaces of the rank-n residue space carrying the reduced pairing.
std::vector<Lat> incident_max_type(const Lat& self_dual);
std::vector<Lat> incident_self_dual(const Lat& max_type);

// prod_{i=1..k} (1 - q0^{2i}); k must be nonnegative.
Int c_value(int k, long long q0);

// Intersection value against an odd-type vertex lattice V in its own
// space: c(d - [V+L : V]) when L is integral and contained in dual(V),
// with 2d+1 the type of V; zero otherwise. The index never exceeds d
// because the image of L in dual(V)/V is isotropic for the torsion
// pairing, whose Witt index is d.
Int int_closed(const Lat& L, const Lat& vert_odd, long long q0);

// The same value for a maximal-type vertex N of rank n = 2r, computed
// through the rank-(n+1) model obtained by adding an orthogonal vector of
// norm valuation one: the added generator lies in the enlarged vertex, so
// the index there equals [N+L : N] and the value is c(r - [N+L : N]) under
// the support conditions (L integral, L inside dual(N)). The enlarged
// space is never materialized.
Int c_bullet(const Lat& L, const Lat& max_type, long long q0);

// Indicator-type value on a self-dual lattice: (-q0)^plus_signs when L is
// contained in it, else zero.
Int nabla_circ(const Lat& L, const Lat& self_dual, int plus_signs, long long q0);

// Ground value on a maximal-type vertex:
//   (c_bullet(L, N) - (-q0)^plus_signs * #{self-dual S >= N + L}) / (q0+1).
// The combination is always divisible by q0+1; a nonzero remainder means
// an enumeration or formula bug and raises NonIntegralError.
Int nabla_bullet(const Lat& L, const Lat& max_type, int plus_signs, long long q0);

// Correspondence sums along the incidence relation.
using MaxTypeFn = std::function<Int(const Lat&)>;
using SelfDualFn = std::function<Int(const Lat&)>;
Int sum_incident_max_type(const Lat& self_dual, const MaxTypeFn& g);
Int sum_incident_self_dual(const Lat& max_type, const SelfDualFn& g);
// Composite: first pull to the maximal-type side, then push back.
Int double_incidence(const Lat& self_dual, const SelfDualFn& g);

// Total value on a self-dual lattice:
//   (q0+1) * sum of nabla_bullet over incident vertices
//   + double incidence sum of nabla_circ.
// Independent of plus_signs; the identity checked by verify_total_identity
// says it equals the incident sum of c_bullet.
Int nabla_total(const Lat& L, const Lat& self_dual, long long q0, int plus_signs = 0);

// Windowed enumeration around one base lattice. The maximal-type list is
// optional because it is only needed by direct window queries, not by the
// total-value identity.
struct VertexWindow {
    const Space* sp = nullptr;
    Lat base;
    std::vector<Lat> self_dual;
    std::vector<Lat> max_type;
};
VertexWindow enumerate_window(const Space& sp, const TypeVec& e, bool with_max_type);

// One verification row: both sides of the total-value identity at one
// self-dual lattice, for every sign count 0..r.
struct TotalCheckRow {
    std::vector<long long> key;
    Int lhs;
    Int rhs;
    bool ok = false;
};
struct TotalCheck {
    TypeVec base_type;
    long long self_dual_count = 0;
    long long pair_count = 0;
    bool passed = false;
    std::vector<TotalCheckRow> rows;
};
// Runs the pointwise identity over every self-dual lattice containing the
// base of type e, with all 2^r sign vectors, memoizing per-vertex counts.
TotalCheck verify_total_identity(const Space& sp, const TypeVec& e, long long q0);

}  // namespace sph
