#include "sphkernel/typ.hpp"

#include <algorithm>

namespace sph {

int vec_sum(const TypeVec& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
}

int lambda_count(const TypeVec& v, int value) {
    int n = 0;
    for (int x : v)
        if (x == value) ++n;
    return n;
}

long tilde_inv(const TypeVec& v) {
    long s = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) s += v[i] - v[j];
    return s;
}

long inv01(const TypeVec& v) {
    long s = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) ++s;
    return s;
}

bool weakly_decreasing(const TypeVec& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) return false;
    return true;
}

bool in_region(const TypeVec& v, Region r) {
    if (!weakly_decreasing(v)) return false;
    if (r == Region::Flat && !v.empty() && v.back() < 0) return false;
    return true;
}

bool in_window(const TypeVec& v, const Window& w) {
    if (!in_region(v, Region::Flat)) return false;
    if (!v.empty() && v.front() > w.max_entry) return false;
    int z = lambda_count(v, 0);
    switch (w.kind) {
        case ZeroKind::Exact: return z == w.zeros;
        case ZeroKind::AtMost: return z <= w.zeros;
        case ZeroKind::AtLeast: return z >= w.zeros;
    }
    return false;
}

bool typ_image_check(const TypeVec& v, int delta, Side side) {
    if (((vec_sum(v) - delta) % 2 + 2) % 2 != 0) return false;
    if (side == Side::Fj) return in_region(v, Region::Flat);
    return in_region(v, Region::Natural);
}

Element Element::delta(const TypeVec& v, Scalar c) {
    Element e(static_cast<int>(v.size()));
    if (!c.is_zero()) e.sup_[v] = std::move(c);
    return e;
}

Scalar Element::coeff(const TypeVec& v) const {
    auto it = sup_.find(v);
    return it == sup_.end() ? Scalar() : it->second;
}

void Element::add_term(const TypeVec& v, const Scalar& c) {
    if (static_cast<int>(v.size()) != rank_)
        throw RankMismatchError("add_term: vector rank mismatch");
    auto it = sup_.find(v);
    if (it == sup_.end()) {
        if (!c.is_zero()) sup_.emplace(v, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) sup_.erase(it);
}

void Element::check_rank(const Element& o) const {
    if (rank_ != o.rank_) throw RankMismatchError("element rank mismatch");
}

Element Element::operator+(const Element& o) const {
    check_rank(o);
    Element r = *this;
    for (auto& [v, c] : o.sup_) r.add_term(v, c);
    return r;
}

Element Element::operator-(const Element& o) const {
    check_rank(o);
    Element r = *this;
    for (auto& [v, c] : o.sup_) r.add_term(v, -c);
    return r;
}

Element Element::operator-() const {
    Element r(rank_);
    for (auto& [v, c] : sup_) r.sup_[v] = -c;
    return r;
}

Element Element::scaled(const Scalar& c) const {
    Element r(rank_);
    if (c.is_zero()) return r;
    for (auto& [v, x] : sup_) {
        Scalar y = x * c;
        if (!y.is_zero()) r.sup_[v] = std::move(y);
    }
    return r;
}

Element Element::translated(const TypeVec& eps) const {
    if (static_cast<int>(eps.size()) != rank_)
        throw RankMismatchError("translated: shift rank mismatch");
    Element r(rank_);
    for (auto& [v, c] : sup_) {
        TypeVec w = v;
        for (int i = 0; i < rank_; ++i) w[i] += eps[i];
        r.sup_[w] = c;
    }
    return r;
}

bool Element::supported_in(Region reg) const {
    for (auto& [v, c] : sup_)
        if (!in_region(v, reg)) return false;
    return true;
}

Element star(const Element& a, const Element& b) {
    Element r(a.rank() + b.rank());
    for (auto& [v, c] : a.support())
        for (auto& [w, d] : b.support()) {
            TypeVec u = v;
            u.insert(u.end(), w.begin(), w.end());
            r.add_term(u, c * d);
        }
    return r;
}

Scalar pair_elements(const Element& a, const Element& b, Region region) {
    if (a.rank() != b.rank()) throw RankMismatchError("pair: rank mismatch");
    if (!a.supported_in(region) || !b.supported_in(region))
        throw RegionViolationError("pair: support outside declared region");
    Scalar s;
    const auto& small = a.support().size() <= b.support().size() ? a : b;
    const auto& big = (&small == &a) ? b : a;
    for (auto& [v, c] : small.support()) {
        Scalar d = big.coeff(v);
        if (!d.is_zero()) s += c * d;
    }
    return s;
}

namespace {
void decreasing_rec(int rank, int lo, int hi, TypeVec& cur,
                    std::vector<TypeVec>& out) {
    if (static_cast<int>(cur.size()) == rank) {
        out.push_back(cur);
        return;
    }
    int top = cur.empty() ? hi : cur.back();
    for (int x = top; x >= lo; --x) {
        cur.push_back(x);
        decreasing_rec(rank, lo, hi, cur, out);
        cur.pop_back();
    }
}

void flat_sum_rec(int rank, int budget, int top, TypeVec& cur,
                  std::vector<TypeVec>& out) {
    if (static_cast<int>(cur.size()) == rank) {
        out.push_back(cur);
        return;
    }
    for (int x = std::min(top, budget); x >= 0; --x) {
        cur.push_back(x);
        flat_sum_rec(rank, budget - x, x, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<TypeVec> decreasing_vectors(int rank, int lo, int hi) {
    std::vector<TypeVec> out;
    TypeVec cur;
    if (rank == 0) {
        out.push_back({});
        return out;
    }
    decreasing_rec(rank, lo, hi, cur, out);
    return out;
}

std::vector<TypeVec> flat_vectors_with_sum_at_most(int rank, int max_sum) {
    std::vector<TypeVec> out;
    TypeVec cur;
    if (rank == 0) {
        out.push_back({});
        return out;
    }
    flat_sum_rec(rank, std::max(0, max_sum), std::max(0, max_sum), cur, out);
    return out;
}

}  // namespace sph
