#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sphkernel/scalar.hpp"

namespace sph {

// A type vector: r integers. Rank 0 (empty vector) is the star unit.
using TypeVec = std::vector<int>;

int vec_sum(const TypeVec& v);
// lambda_i: multiplicity of the value i among the entries.
int lambda_count(const TypeVec& v, int value);
// Number of strict descents counted with gaps: sum_{i<j} max(0, v_i - v_j).
long tilde_inv(const TypeVec& v);
// Inversion count of a 0/1 vector: pairs i<j with v_i > v_j. Defined for any
// integer entries; equals tilde_inv restricted to 0/1 vectors.
long inv01(const TypeVec& v);

bool weakly_decreasing(const TypeVec& v);

// The two normal regions: all weakly decreasing vectors, and the flat cone of
// weakly decreasing nonnegative vectors.
enum class Region { Natural, Flat };

bool in_region(const TypeVec& v, Region r);

// Zero-count window constraint: exactly / at most / at least k trailing zeros
// (in terms of lambda_0).
enum class ZeroKind { Exact, AtMost, AtLeast };

struct Window {
    int max_entry;          // e_1 <= max_entry
    int zeros;              // the k of 0^k
    ZeroKind kind;
};

// Membership in Typ_{r,[1,N],0^k}-style windows: flat region, entry bound and
// the zero-count constraint.
bool in_window(const TypeVec& v, const Window& w);

// Parity test for the image of the type map: sum of entries congruent to
// delta mod 2; on the flat side additionally the flat region condition.
enum class Side { Gl, Fj };
bool typ_image_check(const TypeVec& v, int delta, Side side);

// Finitely supported Scalar-linear combination of type vectors of one rank.
class Element {
  public:
    explicit Element(int rank) : rank_(rank) {}
    static Element delta(const TypeVec& v, Scalar c = Scalar::integer(1));
    static Element zero(int rank) { return Element(rank); }

    int rank() const { return rank_; }
    bool is_zero() const { return sup_.empty(); }
    const std::map<TypeVec, Scalar>& support() const { return sup_; }

    Scalar coeff(const TypeVec& v) const;
    void add_term(const TypeVec& v, const Scalar& c);

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(const Scalar& c) const;

    bool operator==(const Element& o) const {
        return rank_ == o.rank_ && sup_ == o.sup_;
    }
    bool operator!=(const Element& o) const { return !(*this == o); }

    // Shift every support vector by eps (the translation operator t(eps)).
    Element translated(const TypeVec& eps) const;

    // True when every support key lies in the region.
    bool supported_in(Region r) const;

  private:
    void check_rank(const Element& o) const;
    int rank_;
    std::map<TypeVec, Scalar> sup_;
};

// Concatenation product; ranks add, bilinear, the rank-0 delta is the unit.
Element star(const Element& a, const Element& b);

// Delta-orthonormal pairing. Both inputs must be supported in the stated
// region; otherwise RegionViolationError.
Scalar pair_elements(const Element& a, const Element& b, Region region);

// All weakly decreasing vectors of the rank with entries in [lo, hi].
std::vector<TypeVec> decreasing_vectors(int rank, int lo, int hi);

// All flat-region vectors of the rank with entry sum <= max_sum.
std::vector<TypeVec> flat_vectors_with_sum_at_most(int rank, int max_sum);

}  // namespace sph
