#pragma once

#include <vector>

#include "sphkernel/straighten.hpp"

namespace sph {

// Finite Scalar-linear combination of coordinate translations t(eps) acting on
// rank-r elements. Composition is commutative (translations add), and the
// star product juxtaposes blocks of coordinates.
class ShiftOp {
  public:
    explicit ShiftOp(int rank) : rank_(rank) {}
    static ShiftOp identity(int rank);

    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<TypeVec, Scalar>& terms() const { return terms_; }

    Scalar coeff(const TypeVec& shift) const;
    void add_term(const TypeVec& shift, const Scalar& c);

    ShiftOp operator+(const ShiftOp& o) const;
    ShiftOp operator-(const ShiftOp& o) const;
    ShiftOp scaled(const Scalar& c) const;
    ShiftOp compose(const ShiftOp& o) const;

    bool operator==(const ShiftOp& o) const {
        return rank_ == o.rank_ && terms_ == o.terms_;
    }
    bool operator!=(const ShiftOp& o) const { return !(*this == o); }

    Element apply(const Element& f) const;

    // Extremes of the entry sum over the support shifts; used to derive
    // complete pairing windows. Throw on the zero operator.
    int min_shift_sum() const;
    int max_shift_sum() const;

  private:
    void check_rank(int other) const;
    int rank_;
    std::map<TypeVec, Scalar> terms_;
};

// Juxtaposition: a acts on the first a.rank() coordinates, b on the rest.
ShiftOp star(const ShiftOp& a, const ShiftOp& b);

// Translation part of the i-th natural Hecke operator in rank r: shifts 2*eps
// over 0/1 vectors eps with i ones, weighted by q^{2*inv(eps)}. The exponent
// makes lambda_1(eps)^2 + 2*inv(eps) additive over rows, which is what the
// adjointness against the sublattice count requires.
ShiftOp delta_gl(int i, int r);

// Truncation of the full geometric series whose pairing computes the phi
// functionals: shifts 2*eps over nonnegative eps with entry sum
// 2*sum(eps) <= shift_sum_bound, weighted by
// (1-q^2)^{#nonzero} q^{sum_j 2(r-j) eps_j}. Since every shift raises the
// entry sum, coefficients of outputs at levels <= min level of the input plus
// the bound are exact.
ShiftOp delta_phi_truncated(int r, int shift_sum_bound);

// The exponent in the flat translation weights admits two parenthesizations;
// they agree in rank one and diverge from rank two on. B is the reading under
// which the zeroth operator is the identity and the two level-operator routes
// agree; A is kept selectable so the discrepancy stays checkable.
enum class FlatReading { A, B };

// Translation part of the i-th flat Hecke operator: shifts 2*eps over
// eps in {-1,0,1}^r with r-i zeros, weight q^{2*tilde_inv(eps)+E} where
// E depends on the reading.
ShiftOp delta_flat(int i, int r, FlatReading reading = FlatReading::B);

// Translation part of the i-th half-shift flat operator: shifts eps (not
// 2*eps) over the same index set, weight
// q^{sum_{eps_j=1}(2(r-j)+1)} * (-q)^{sum_{eps_j=0}(r-j) - binom(r-i,2)}.
ShiftOp delta_half_flat(int i, int r);

// Translation part of the rank-r plus/minus operator, a star product of
// rank-one factors q^{2(r-j)+1} t(1) +- (-q)^{r-j}(q+1) t(0) + t(-1).
ShiftOp delta_pm(int r, int sign);

// Two-parameter family specializing to the plus/minus operators: star product
// of x q^{2(r-j)+1} t(1) + y (-q)^{r-j} s t(0) + x t(-1).
ShiftOp delta_s_half(int r, const Scalar& x, const Scalar& y);

// The y value at which the family with x = 1 reproduces delta_pm(r, sign).
Scalar pm_specialization_y(int sign);

// Process-wide memoized straighteners, one per mode.
const Straightener& shared_straightener(StrMode mode);

// Adjoint action through the pairing: returns
// sum_{g in window} <f, str(op delta_g)> delta_g. The window must be chosen
// by the caller; on the natural side no finite window is complete for every
// f, so coefficients are exact for the g supplied and silence about others.
Element adjoint_apply(const ShiftOp& op, StrMode mode, const Element& f,
                      const std::vector<TypeVec>& window);

// Flat-side adjoint with a self-derived complete window: both flat rewrite
// systems only raise the entry sum, so the coefficient at g vanishes unless
// sum(g) <= max entry sum over supp(f) minus the least shift sum of op.
Element adjoint_apply_flat(const ShiftOp& op, StrMode mode, const Element& f);

// Named operator actions on the flat module.
Element s_flat_apply(int i, int r, const Element& f,
                     FlatReading reading = FlatReading::B);
Element s_half_flat_apply(int i, int r, const Element& f);
Element s_pm_apply(int r, int sign, const Element& f);

// Level operator and its derivative-style companion, as the standard
// combinations of the flat operators:
//   T_r      = sum_{i=0..r} (-1)^i (q^2+1)^i q^{i^2-i} S_{r-i}
//   T_r'     = sum_{i=1..r} i (-1)^{i-1} (q^2+1)^{i-1} q^{i^2-i} S_{r-i}
Element t_r_apply(int r, const Element& f,
                  FlatReading reading = FlatReading::B);
Element t_r_prime_apply(int r, const Element& f,
                        FlatReading reading = FlatReading::B);

// Natural-side Hecke action on an explicit window of weakly decreasing g.
Element hecke_gl_apply(int i, int r, const Element& f,
                       const std::vector<TypeVec>& window);

}  // namespace sph
