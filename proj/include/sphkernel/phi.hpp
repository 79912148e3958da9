#pragma once

#include "sphkernel/ops.hpp"

namespace sph {

// Value of the distinguished functional indexed by e at the argument f: the
// coefficient of delta_e in the naturally rewritten geometric-series image
// of delta_f. Both vectors must be weakly decreasing. Exact: the series is
// truncated at the level difference, beyond which nothing contributes.
Scalar phi_natural_value(const TypeVec& e, const TypeVec& f);

// The functional as an element over a caller-chosen window of arguments.
Element phi_natural(const TypeVec& e, const std::vector<TypeVec>& window);

// Restriction of the functional to the flat cone. Finitely supported: the
// series only raises levels, so arguments live at levels up to that of e.
// Values are memoized per index vector.
const Element& phi_flat(const TypeVec& e);

// Exact span arithmetic over the flat functionals. The functional at g is
// delta_g plus strictly lower-level terms, so elimination proceeds top
// level down with unit pivots and no division.
struct SolveResult {
    explicit SolveResult(int rank) : residual(Element::zero(rank)) {}
    bool in_span = false;
    std::map<TypeVec, Scalar> coords;
    Element residual;
};

// Express target in the span of the flat functionals at indices with zero
// count at most max_zeros (negative: unconstrained). When the target is not
// in that span the residual holds the irreducible remainder.
SolveResult phi_span_solve(const Element& target, int max_zeros = -1);

// Two routes for the half-shift action on a flat functional: the adjoint
// route on the functional element, against the expansion whose coefficients
// come from the phi-twisted rewriting of translated deltas.
bool half_shift_functional_expansion_check(int i, int r, const TypeVec& e);

// Closure of the at-most-one-zero span under the half-shift operators.
bool half_shift_closure_check(int i, int r, const TypeVec& e);

}  // namespace sph
