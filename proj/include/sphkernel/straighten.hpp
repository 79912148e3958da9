#pragma once

#include <cstdint>
#include <string>

#include "sphkernel/typ.hpp"

namespace sph {

// Which module the rewriting targets. Natural straightens into all weakly
// decreasing vectors and has no boundary rule; Flat and Phi straighten into
// the flat cone and rewrite a negative last coordinate through their
// respective rank-one boundary tables.
enum class StrMode { Natural, Flat, Phi };

StrMode parse_mode(const std::string& name);
std::string mode_name(StrMode m);

// Which violation to rewrite first when several are present. Normal forms do
// not depend on the choice; the non-leftmost strategies exist to test that.
enum class Strategy { Leftmost, Rightmost, Random };

class Straightener {
  public:
    explicit Straightener(StrMode mode, bool printed_pair_rule = false);

    StrMode mode() const { return mode_; }
    bool printed_pair_rule() const { return printed_; }

    bool in_normal_form(const TypeVec& v) const;

    // Leftmost-violation rewriting with a per-vector memo.
    Element normalize(const Element& e) const;
    // Uncached, strategy-driven variant; seed only matters for Random.
    Element normalize(const Element& e, Strategy strat, std::uint64_t seed) const;

    // Rewrite targets. pair_rhs(a, b) is the rank-two element the ascent
    // (a, b) with a < b rewrites to. boundary_rhs(m) is the full normal form
    // of delta_{(-m)}, m >= 1 (Flat and Phi only); boundary_step(m) is the
    // primitive two-term right side whose repeated use produces it.
    Element pair_rhs(int a, int b) const;
    Element boundary_rhs(int m) const;
    Element boundary_step(int m) const;

    // Generators of the defining ideal: left * (delta_{(a,b)} - pair_rhs)
    // * right, and left * (delta_{(-m)} - boundary_step). The boundary rule
    // only holds in the last coordinate, so it takes no right padding.
    Element pair_relation(int a, int b, const TypeVec& left,
                          const TypeVec& right) const;
    Element boundary_relation(int m, const TypeVec& left) const;

  private:
    Element normalize_delta(const TypeVec& v) const;
    Element rewrite_at(const TypeVec& v, int pos) const;
    // Positions needing a rewrite: i < rank-1 for an ascent at (i, i+1),
    // rank-1 for a negative last coordinate.
    std::vector<int> violations(const TypeVec& v) const;

    StrMode mode_;
    bool printed_;
    mutable std::map<std::pair<int, int>, Element> pair_cache_;
    mutable std::map<int, Element> boundary_cache_;
    mutable std::map<TypeVec, Element> delta_cache_;
};

}  // namespace sph
