#include "sphkernel/straighten.hpp"

#include <algorithm>
#include <random>

#include "sphkernel/errors.hpp"

namespace sph {

namespace {

Region region_of(StrMode m) {
    return m == StrMode::Natural ? Region::Natural : Region::Flat;
}

TypeVec slice(const TypeVec& v, size_t from, size_t to) {
    return TypeVec(v.begin() + static_cast<long>(from),
                   v.begin() + static_cast<long>(to));
}

}  // namespace

StrMode parse_mode(const std::string& name) {
    if (name == "natural") return StrMode::Natural;
    if (name == "flat") return StrMode::Flat;
    if (name == "phi") return StrMode::Phi;
    throw InvalidSpecError("unknown straightening mode: " + name);
}

std::string mode_name(StrMode m) {
    switch (m) {
        case StrMode::Natural: return "natural";
        case StrMode::Flat: return "flat";
        case StrMode::Phi: return "phi";
    }
    throw InvalidSpecError("bad mode enum");
}

Straightener::Straightener(StrMode mode, bool printed_pair_rule)
    : mode_(mode), printed_(printed_pair_rule) {}

bool Straightener::in_normal_form(const TypeVec& v) const {
    return in_region(v, region_of(mode_));
}

Element Straightener::pair_rhs(int a, int b) const {
    if (a >= b) throw InvalidSpecError("pair_rhs needs an ascent a < b");
    auto key = std::make_pair(a, b);
    auto it = pair_cache_.find(key);
    if (it != pair_cache_.end()) return it->second;

    Element out = Element::zero(2);
    if (b == a + 1) {
        // Adjacent values just swap.
        out.add_term({b, a}, Scalar::integer(1));
    } else {
        // (a,b) -> inner contraction + (-q)^{b-a-1} (swap - inner swap).
        Scalar w = Scalar::neg_q_pow(b - a - 1);
        int first = printed_ ? b : b - 1;
        out.add_term({a + 1, first}, Scalar::integer(1));
        out.add_term({b, a}, w);
        out.add_term({b - 1, a + 1}, -w);
    }
    pair_cache_.emplace(key, out);
    return out;
}

Element Straightener::boundary_rhs(int m) const {
    if (mode_ == StrMode::Natural)
        throw InvalidSpecError("no boundary rule in natural mode");
    if (m < 1) throw InvalidSpecError("boundary_rhs needs m >= 1");
    auto it = boundary_cache_.find(m);
    if (it != boundary_cache_.end()) return it->second;

    // Fill the table bottom-up. T(0) and T(1) are the bases; higher entries
    // follow the two-step recurrence of the mode.
    for (int k = 0; k <= m; ++k) {
        if (boundary_cache_.count(k)) continue;
        Element t = Element::zero(1);
        if (k == 0) {
            t.add_term({0}, Scalar::integer(1));
        } else if (k == 1) {
            t.add_term({1}, mode_ == StrMode::Phi ? Scalar::q_pow(2)
                                                  : Scalar::integer(1));
        } else {
            const Element& prev = boundary_cache_.at(k - 2);
            if (mode_ == StrMode::Flat) {
                // T(k) = T(k-2) + q^{k-1} (delta_k - delta_{k-2})
                t = prev;
                t.add_term({k}, Scalar::q_pow(k - 1));
                t.add_term({k - 2}, -Scalar::q_pow(k - 1));
            } else {
                // T(k) = q^2 T(k-2) + q^{k+1} delta_k - q^{k-1} delta_{k-2}
                t = prev.scaled(Scalar::q_pow(2));
                t.add_term({k}, Scalar::q_pow(k + 1));
                t.add_term({k - 2}, -Scalar::q_pow(k - 1));
            }
        }
        boundary_cache_.emplace(k, t);
    }
    return boundary_cache_.at(m);
}

Element Straightener::boundary_step(int m) const {
    if (mode_ == StrMode::Natural)
        throw InvalidSpecError("no boundary rule in natural mode");
    if (m < 1) throw InvalidSpecError("boundary_step needs m >= 1");
    Element out = Element::zero(1);
    if (m == 1) {
        out.add_term({1}, mode_ == StrMode::Phi ? Scalar::q_pow(2)
                                                : Scalar::integer(1));
        return out;
    }
    Scalar edge = Scalar::q_pow(m - 1);
    if (mode_ == StrMode::Flat) {
        out.add_term({-m + 2}, Scalar::integer(1));
        out.add_term({m}, edge);
    } else {
        out.add_term({-m + 2}, Scalar::q_pow(2));
        out.add_term({m}, Scalar::q_pow(m + 1));
    }
    out.add_term({m - 2}, -edge);
    return out;
}

std::vector<int> Straightener::violations(const TypeVec& v) const {
    std::vector<int> out;
    int r = static_cast<int>(v.size());
    for (int i = 0; i + 1 < r; ++i)
        if (v[i] < v[i + 1]) out.push_back(i);
    if (mode_ != StrMode::Natural && r > 0 && v.back() < 0)
        out.push_back(r - 1);
    return out;
}

Element Straightener::rewrite_at(const TypeVec& v, int pos) const {
    int r = static_cast<int>(v.size());
    if (pos == r - 1) {
        Element left = Element::delta(slice(v, 0, v.size() - 1));
        return star(left, boundary_rhs(-v.back()));
    }
    Element left = Element::delta(slice(v, 0, static_cast<size_t>(pos)));
    Element right = Element::delta(slice(v, static_cast<size_t>(pos) + 2, v.size()));
    return star(star(left, pair_rhs(v[pos], v[pos + 1])), right);
}

Element Straightener::normalize_delta(const TypeVec& v) const {
    if (in_normal_form(v)) return Element::delta(v);
    auto it = delta_cache_.find(v);
    if (it != delta_cache_.end()) return it->second;

    // Termination: every rewrite strictly decreases the measure
    // (sum deficit below the region, dominance order of the sort,
    // inversion count), so the recursion is well founded.
    Element step = rewrite_at(v, violations(v).front());
    Element out = Element::zero(static_cast<int>(v.size()));
    for (const auto& [w, c] : step.support())
        out = out + normalize_delta(w).scaled(c);
    delta_cache_.emplace(v, out);
    return out;
}

Element Straightener::normalize(const Element& e) const {
    Element out = Element::zero(e.rank());
    for (const auto& [v, c] : e.support())
        out = out + normalize_delta(v).scaled(c);
    return out;
}

Element Straightener::normalize(const Element& e, Strategy strat,
                                std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    Element work = e;
    while (true) {
        bool dirty = false;
        Element next = Element::zero(e.rank());
        for (const auto& [v, c] : work.support()) {
            auto bad = violations(v);
            if (bad.empty()) {
                next.add_term(v, c);
                continue;
            }
            dirty = true;
            int pos;
            switch (strat) {
                case Strategy::Leftmost: pos = bad.front(); break;
                case Strategy::Rightmost: pos = bad.back(); break;
                default: pos = bad[rng() % bad.size()]; break;
            }
            next = next + rewrite_at(v, pos).scaled(c);
        }
        work = next;
        if (!dirty) return work;
    }
}

Element Straightener::pair_relation(int a, int b, const TypeVec& left,
                                    const TypeVec& right) const {
    Element core = Element::delta({a, b}) - pair_rhs(a, b);
    return star(star(Element::delta(left), core), Element::delta(right));
}

Element Straightener::boundary_relation(int m, const TypeVec& left) const {
    Element core = Element::delta({-m}) - boundary_step(m);
    return star(Element::delta(left), core);
}

}  // namespace sph
