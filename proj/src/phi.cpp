#include "sphkernel/phi.hpp"

#include <algorithm>

#include "sphkernel/errors.hpp"

namespace sph {

namespace {

void require_decreasing(const TypeVec& v, const char* what) {
    if (!in_region(v, Region::Natural))
        throw RegionViolationError(std::string(what) + " must be weakly decreasing");
}

// Highest level present in the support of x.
int top_level(const Element& x) {
    int best = 0;
    bool first = true;
    for (const auto& [v, c] : x.support()) {
        (void)c;
        int s = vec_sum(v);
        if (first || s > best) best = s;
        first = false;
    }
    return best;
}

}  // namespace

Scalar phi_natural_value(const TypeVec& e, const TypeVec& f) {
    require_decreasing(e, "functional index");
    require_decreasing(f, "argument");
    if (e.size() != f.size())
        throw InvalidSpecError("functional index and argument must share a rank");
    const int r = static_cast<int>(e.size());
    const int diff = vec_sum(e) - vec_sum(f);
    if (diff < 0 || diff % 2 != 0) return Scalar::integer(0);
    const ShiftOp op = delta_phi_truncated(r, diff);
    const Element img = shared_straightener(StrMode::Natural).normalize(op.apply(Element::delta(f)));
    return img.coeff(e);
}

Element phi_natural(const TypeVec& e, const std::vector<TypeVec>& window) {
    Element out = Element::zero(static_cast<int>(e.size()));
    for (const TypeVec& f : window) out.add_term(f, phi_natural_value(e, f));
    return out;
}

const Element& phi_flat(const TypeVec& e) {
    static std::map<TypeVec, Element> cache;
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    if (!in_region(e, Region::Flat))
        throw RegionViolationError("flat functional index must be decreasing and nonnegative");
    const int r = static_cast<int>(e.size());
    Element out = Element::zero(r);
    for (const TypeVec& f : flat_vectors_with_sum_at_most(r, vec_sum(e)))
        out.add_term(f, phi_natural_value(e, f));
    return cache.emplace(e, std::move(out)).first->second;
}

SolveResult phi_span_solve(const Element& target, int max_zeros) {
    const int r = target.rank();
    for (const auto& [v, c] : target.support()) {
        (void)c;
        if (!in_region(v, Region::Flat))
            throw RegionViolationError("span arithmetic needs a target supported in the flat cone");
    }
    SolveResult res(r);
    Element rem = target;
    if (rem.is_zero()) {
        res.in_span = true;
        return res;
    }
    for (int level = top_level(rem); level >= 0; --level) {
        for (const TypeVec& g : flat_vectors_with_sum_at_most(r, level)) {
            if (vec_sum(g) != level) continue;
            if (max_zeros >= 0 && lambda_count(g, 0) > max_zeros) continue;
            Scalar c = rem.coeff(g);
            if (c.is_zero()) continue;
            const Element& basis = phi_flat(g);
            if (!(basis.coeff(g) - Scalar::integer(1)).is_zero())
                throw InvalidSpecError("functional pivot is not one; triangularity broken");
            rem = rem - basis.scaled(c);
            res.coords.emplace(g, std::move(c));
        }
    }
    if (rem.is_zero()) {
        res.in_span = true;
    } else {
        res.residual = std::move(rem);
    }
    return res;
}

bool half_shift_functional_expansion_check(int i, int r, const TypeVec& e) {
    if (!in_region(e, Region::Flat) || static_cast<int>(e.size()) != r)
        throw InvalidSpecError("expansion check needs a rank-r flat index");
    const Element lhs = s_half_flat_apply(i, r, phi_flat(e));

    const ShiftOp op = delta_half_flat(i, r);
    const Straightener& phi_str = shared_straightener(StrMode::Phi);
    Element rhs = Element::zero(r);
    for (const TypeVec& g : flat_vectors_with_sum_at_most(r, vec_sum(e) + r)) {
        Scalar c = phi_str.normalize(op.apply(Element::delta(g))).coeff(e);
        if (!c.is_zero()) rhs = rhs + phi_flat(g).scaled(c);
    }
    return lhs == rhs;
}

bool half_shift_closure_check(int i, int r, const TypeVec& e) {
    if (lambda_count(e, 0) > 1)
        throw InvalidSpecError("closure check starts from an index with at most one zero");
    return phi_span_solve(s_half_flat_apply(i, r, phi_flat(e)), 1).in_span;
}

}  // namespace sph
