#include "sphkernel/ops.hpp"

#include <algorithm>

namespace sph {

namespace {

Scalar one() { return Scalar::integer(1); }

void require(bool cond, const char* msg) {
    if (!cond) throw InvalidSpecError(msg);
}

// eps in {-1,0,1}^r with exactly zeros entries equal to zero.
std::vector<TypeVec> signed_vectors_with_zeros(int r, int zeros) {
    std::vector<TypeVec> out;
    TypeVec eps(r, -1);
    while (true) {
        if (lambda_count(eps, 0) == zeros) out.push_back(eps);
        int i = 0;
        for (; i < r; ++i) {
            if (eps[i] < 1) {
                ++eps[i];
                break;
            }
            eps[i] = -1;
        }
        if (i == r) break;
    }
    return out;
}

void nonneg_vectors_rec(int r, int pos, int budget, TypeVec& cur,
                        std::vector<TypeVec>& out) {
    if (pos == r) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= budget; ++v) {
        cur[pos] = v;
        nonneg_vectors_rec(r, pos + 1, budget - v, cur, out);
    }
    cur[pos] = 0;
}

int max_support_sum(const Element& f) {
    bool any = false;
    int best = 0;
    for (const auto& [v, c] : f.support()) {
        (void)c;
        int s = vec_sum(v);
        if (!any || s > best) best = s;
        any = true;
    }
    if (!any) throw InvalidSpecError("zero element has no support sum");
    return best;
}

Region pairing_region(StrMode mode) {
    return mode == StrMode::Natural ? Region::Natural : Region::Flat;
}

}  // namespace

ShiftOp ShiftOp::identity(int rank) {
    ShiftOp op(rank);
    op.add_term(TypeVec(rank, 0), one());
    return op;
}

Scalar ShiftOp::coeff(const TypeVec& shift) const {
    auto it = terms_.find(shift);
    return it == terms_.end() ? Scalar() : it->second;
}

void ShiftOp::add_term(const TypeVec& shift, const Scalar& c) {
    if (static_cast<int>(shift.size()) != rank_)
        throw RankMismatchError("shift rank mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(shift);
    if (it == terms_.end()) {
        terms_.emplace(shift, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void ShiftOp::check_rank(int other) const {
    if (other != rank_) throw RankMismatchError("operator rank mismatch");
}

ShiftOp ShiftOp::operator+(const ShiftOp& o) const {
    check_rank(o.rank_);
    ShiftOp out = *this;
    for (const auto& [v, c] : o.terms_) out.add_term(v, c);
    return out;
}

ShiftOp ShiftOp::operator-(const ShiftOp& o) const {
    check_rank(o.rank_);
    ShiftOp out = *this;
    for (const auto& [v, c] : o.terms_) out.add_term(v, -c);
    return out;
}

ShiftOp ShiftOp::scaled(const Scalar& c) const {
    ShiftOp out(rank_);
    for (const auto& [v, w] : terms_) out.add_term(v, w * c);
    return out;
}

ShiftOp ShiftOp::compose(const ShiftOp& o) const {
    check_rank(o.rank_);
    ShiftOp out(rank_);
    for (const auto& [v, c] : terms_) {
        for (const auto& [w, d] : o.terms_) {
            TypeVec sum(rank_);
            for (int i = 0; i < rank_; ++i) sum[i] = v[i] + w[i];
            out.add_term(sum, c * d);
        }
    }
    return out;
}

Element ShiftOp::apply(const Element& f) const {
    check_rank(f.rank());
    Element out(rank_);
    for (const auto& [shift, w] : terms_) {
        for (const auto& [v, c] : f.support()) {
            TypeVec moved(rank_);
            for (int i = 0; i < rank_; ++i) moved[i] = v[i] + shift[i];
            out.add_term(moved, w * c);
        }
    }
    return out;
}

int ShiftOp::min_shift_sum() const {
    if (terms_.empty()) throw InvalidSpecError("zero operator has no shifts");
    int best = 0;
    bool any = false;
    for (const auto& [v, c] : terms_) {
        (void)c;
        int s = vec_sum(v);
        if (!any || s < best) best = s;
        any = true;
    }
    return best;
}

int ShiftOp::max_shift_sum() const {
    if (terms_.empty()) throw InvalidSpecError("zero operator has no shifts");
    int best = 0;
    bool any = false;
    for (const auto& [v, c] : terms_) {
        (void)c;
        int s = vec_sum(v);
        if (!any || s > best) best = s;
        any = true;
    }
    return best;
}

ShiftOp star(const ShiftOp& a, const ShiftOp& b) {
    ShiftOp out(a.rank() + b.rank());
    for (const auto& [v, c] : a.terms()) {
        for (const auto& [w, d] : b.terms()) {
            TypeVec cat = v;
            cat.insert(cat.end(), w.begin(), w.end());
            out.add_term(cat, c * d);
        }
    }
    return out;
}

ShiftOp delta_gl(int i, int r) {
    require(r >= 0, "rank must be nonnegative");
    require(i >= 0 && i <= r, "index out of range");
    ShiftOp out(r);
    for (unsigned m = 0; m < (1u << r); ++m) {
        TypeVec eps(r);
        int ones = 0;
        for (int j = 0; j < r; ++j) {
            eps[j] = (m >> j) & 1u;
            ones += eps[j];
        }
        if (ones != i) continue;
        TypeVec shift(r);
        for (int j = 0; j < r; ++j) shift[j] = 2 * eps[j];
        out.add_term(shift, Scalar::q_pow(2 * inv01(eps)));
    }
    return out;
}

ShiftOp delta_phi_truncated(int r, int shift_sum_bound) {
    require(r >= 1, "rank must be positive");
    require(shift_sum_bound >= 0, "truncation bound must be nonnegative");
    std::vector<TypeVec> epss;
    TypeVec cur(r, 0);
    nonneg_vectors_rec(r, 0, shift_sum_bound / 2, cur, epss);
    Scalar unit_factor = one() - Scalar::q_pow(2);
    ShiftOp out(r);
    for (const TypeVec& eps : epss) {
        long expo = 0;
        int nonzero = 0;
        for (int j = 0; j < r; ++j) {
            expo += 2L * (r - 1 - j) * eps[j];
            if (eps[j] != 0) ++nonzero;
        }
        TypeVec shift(r);
        for (int j = 0; j < r; ++j) shift[j] = 2 * eps[j];
        out.add_term(shift, unit_factor.pow(nonzero) * Scalar::q_pow(expo));
    }
    return out;
}

ShiftOp delta_flat(int i, int r, FlatReading reading) {
    require(r >= 1, "rank must be positive");
    require(i >= 0 && i <= r, "index out of range");
    ShiftOp out(r);
    for (const TypeVec& eps : signed_vectors_with_zeros(r, r - i)) {
        int l1 = lambda_count(eps, 1);
        int lm1 = lambda_count(eps, -1);
        long e;
        if (reading == FlatReading::A) {
            e = static_cast<long>(l1) * l1 + (r - static_cast<long>(lm1) * lm1)
                - static_cast<long>(r - i) * (r - i);
        } else {
            e = static_cast<long>(l1) * l1
                + static_cast<long>(r - lm1) * (r - lm1)
                - static_cast<long>(r - i) * (r - i);
        }
        TypeVec shift(r);
        for (int j = 0; j < r; ++j) shift[j] = 2 * eps[j];
        out.add_term(shift, Scalar::q_pow(2 * tilde_inv(eps) + e));
    }
    return out;
}

ShiftOp delta_half_flat(int i, int r) {
    require(r >= 1, "rank must be positive");
    require(i >= 0 && i <= r, "index out of range");
    ShiftOp out(r);
    long zeros = r - i;
    long corner = zeros * (zeros - 1) / 2;
    for (const TypeVec& eps : signed_vectors_with_zeros(r, r - i)) {
        long plus = 0;
        long zero_pos = 0;
        for (int j = 0; j < r; ++j) {
            if (eps[j] == 1) plus += 2L * (r - 1 - j) + 1;
            if (eps[j] == 0) zero_pos += r - 1 - j;
        }
        Scalar w = Scalar::q_pow(plus) * Scalar::neg_q_pow(zero_pos - corner);
        out.add_term(eps, w);
    }
    return out;
}

ShiftOp delta_pm(int r, int sign) {
    require(r >= 1, "rank must be positive");
    require(sign == 1 || sign == -1, "sign must be +-1");
    ShiftOp out(0);
    out.add_term(TypeVec{}, one());
    Scalar qp1 = Scalar::q_pow(1) + one();
    for (int j = 1; j <= r; ++j) {
        ShiftOp f(1);
        f.add_term(TypeVec{1}, Scalar::q_pow(2L * (r - j) + 1));
        f.add_term(TypeVec{0}, sign * (Scalar::neg_q_pow(r - j) * qp1));
        f.add_term(TypeVec{-1}, one());
        out = star(out, f);
    }
    return out;
}

ShiftOp delta_s_half(int r, const Scalar& x, const Scalar& y) {
    require(r >= 1, "rank must be positive");
    ShiftOp out(0);
    out.add_term(TypeVec{}, one());
    for (int j = 1; j <= r; ++j) {
        ShiftOp f(1);
        f.add_term(TypeVec{1}, x * Scalar::q_pow(2L * (r - j) + 1));
        f.add_term(TypeVec{0}, y * Scalar::neg_q_pow(r - j) * Scalar::s_pow(1));
        f.add_term(TypeVec{-1}, x);
        out = star(out, f);
    }
    return out;
}

Scalar pm_specialization_y(int sign) {
    require(sign == 1 || sign == -1, "sign must be +-1");
    Scalar g = Scalar::s_pow(1) - Scalar::s_pow(-1);
    return sign == 1 ? -g : g;
}

const Straightener& shared_straightener(StrMode mode) {
    static Straightener nat(StrMode::Natural);
    static Straightener flat(StrMode::Flat);
    static Straightener phi(StrMode::Phi);
    switch (mode) {
        case StrMode::Natural: return nat;
        case StrMode::Flat: return flat;
        default: return phi;
    }
}

Element adjoint_apply(const ShiftOp& op, StrMode mode, const Element& f,
                      const std::vector<TypeVec>& window) {
    const Straightener& str = shared_straightener(mode);
    Region reg = pairing_region(mode);
    Element out(op.rank());
    for (const TypeVec& g : window) {
        Element moved = op.apply(Element::delta(g));
        Scalar c = pair_elements(f, str.normalize(moved), reg);
        if (!c.is_zero()) out.add_term(g, c);
    }
    return out;
}

Element adjoint_apply_flat(const ShiftOp& op, StrMode mode, const Element& f) {
    if (mode == StrMode::Natural)
        throw InvalidSpecError("no finite window exists on the natural side");
    if (f.is_zero()) return Element::zero(op.rank());
    int bound = max_support_sum(f) - op.min_shift_sum();
    if (bound < 0) return Element::zero(op.rank());
    return adjoint_apply(op, mode, f,
                         flat_vectors_with_sum_at_most(op.rank(), bound));
}

Element s_flat_apply(int i, int r, const Element& f, FlatReading reading) {
    return adjoint_apply_flat(delta_flat(i, r, reading), StrMode::Flat, f);
}

Element s_half_flat_apply(int i, int r, const Element& f) {
    return adjoint_apply_flat(delta_half_flat(i, r), StrMode::Flat, f);
}

Element s_pm_apply(int r, int sign, const Element& f) {
    return adjoint_apply_flat(delta_pm(r, sign), StrMode::Flat, f);
}

Element t_r_apply(int r, const Element& f, FlatReading reading) {
    Scalar a = Scalar::q_pow(2) + one();
    Element out(r);
    for (int i = 0; i <= r; ++i) {
        Scalar c = a.pow(i) * Scalar::q_pow(static_cast<long>(i) * i - i);
        if (i % 2 == 1) c = -c;
        out = out + s_flat_apply(r - i, r, f, reading).scaled(c);
    }
    return out;
}

Element t_r_prime_apply(int r, const Element& f, FlatReading reading) {
    Scalar a = Scalar::q_pow(2) + one();
    Element out(r);
    for (int i = 1; i <= r; ++i) {
        Scalar c = i * (a.pow(i - 1)
                        * Scalar::q_pow(static_cast<long>(i) * i - i));
        if (i % 2 == 0) c = -c;
        out = out + s_flat_apply(r - i, r, f, reading).scaled(c);
    }
    return out;
}

Element hecke_gl_apply(int i, int r, const Element& f,
                       const std::vector<TypeVec>& window) {
    return adjoint_apply(delta_gl(i, r), StrMode::Natural, f, window);
}

}  // namespace sph
