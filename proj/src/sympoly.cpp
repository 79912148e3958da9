#include "sphkernel/sympoly.hpp"

#include <algorithm>

#include "sphkernel/errors.hpp"

namespace sph {

namespace {

void check_expo(int nvars, const std::vector<int>& expo) {
    if (static_cast<int>(expo.size()) != nvars)
        throw InvalidSpecError("exponent vector length mismatch");
    for (int e : expo)
        if (e < 0) throw InvalidSpecError("negative exponent");
}

}  // namespace

MultiPoly MultiPoly::constant(int nvars, const Scalar& c) {
    MultiPoly p(nvars);
    p.add_term(std::vector<int>(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars)
        throw InvalidSpecError("variable index out of range");
    MultiPoly p(nvars);
    std::vector<int> expo(nvars, 0);
    expo[index] = 1;
    p.add_term(expo, Scalar::integer(1));
    return p;
}

MultiPoly MultiPoly::elementary(int nvars, int k) {
    if (k < 0 || k > nvars)
        throw InvalidSpecError("elementary degree out of range");
    MultiPoly p(nvars);
    std::vector<int> mask(nvars, 0);
    std::fill(mask.begin(), mask.begin() + k, 1);
    std::sort(mask.begin(), mask.end());
    do {
        p.add_term(mask, Scalar::integer(1));
    } while (std::next_permutation(mask.begin(), mask.end()));
    return p;
}

Scalar MultiPoly::coeff(const std::vector<int>& expo) const {
    auto it = terms_.find(expo);
    return it == terms_.end() ? Scalar() : it->second;
}

void MultiPoly::add_term(const std::vector<int>& expo, const Scalar& c) {
    check_expo(nvars_, expo);
    if (c.is_zero()) return;
    auto it = terms_.find(expo);
    if (it == terms_.end()) {
        terms_.emplace(expo, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw InvalidSpecError("variable count mismatch");
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw InvalidSpecError("variable count mismatch");
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw InvalidSpecError("variable count mismatch");
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        for (const auto& [f, d] : o.terms_) {
            std::vector<int> sum(nvars_);
            for (int i = 0; i < nvars_; ++i) sum[i] = e[i] + f[i];
            out.add_term(sum, c * d);
        }
    }
    return out;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
    MultiPoly out(nvars_);
    for (const auto& [e, w] : terms_) out.add_term(e, w * c);
    return out;
}

bool MultiPoly::is_symmetric() const {
    for (const auto& [e, c] : terms_) {
        std::vector<int> perm = e;
        std::sort(perm.begin(), perm.end());
        do {
            if (coeff(perm) != c) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return true;
}

std::map<std::vector<int>, Scalar> elementary_decomposition(const MultiPoly& p) {
    if (!p.is_symmetric())
        throw InvalidSpecError("cannot decompose a non-symmetric polynomial");
    int n = p.nvars();
    std::map<std::vector<int>, Scalar> out;
    MultiPoly rest = p;
    while (!rest.is_zero()) {
        // Lex-leading exponent; symmetry makes it weakly decreasing.
        auto lead = rest.terms().begin();
        for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it) {
            if (std::lexicographical_compare(lead->first.begin(),
                                             lead->first.end(),
                                             it->first.begin(),
                                             it->first.end()))
                lead = it;
        }
        const std::vector<int>& lam = lead->first;
        Scalar c = lead->second;
        std::vector<int> degs(n, 0);
        MultiPoly prod = MultiPoly::constant(n, Scalar::integer(1));
        for (int k = 0; k < n; ++k) {
            int next = (k + 1 < n) ? lam[k + 1] : 0;
            degs[k] = lam[k] - next;
            for (int t = 0; t < degs[k]; ++t)
                prod = prod * MultiPoly::elementary(n, k + 1);
        }
        out[degs] += c;
        if (out[degs].is_zero()) out.erase(degs);
        rest = rest - prod.scaled(c);
    }
    return out;
}

MultiPoly satake_operator_side(SatakeTarget target, int r) {
    if (r < 1) throw InvalidSpecError("rank must be positive");
    Scalar a = Scalar::q_pow(2) + Scalar::integer(1);
    MultiPoly out(r);
    if (target == SatakeTarget::Level) {
        for (int i = 0; i <= r; ++i) {
            Scalar c = a.pow(i)
                       * Scalar::q_pow(static_cast<long>(r) * r
                                       - static_cast<long>(i) * i)
                       * Scalar::q_pow(static_cast<long>(i) * i - i);
            if (i % 2 == 1) c = -c;
            out = out + MultiPoly::elementary(r, r - i).scaled(c);
        }
    } else {
        for (int i = 1; i <= r; ++i) {
            Scalar c = i * (a.pow(i - 1)
                            * Scalar::q_pow(static_cast<long>(r) * r
                                            - static_cast<long>(i) * i)
                            * Scalar::q_pow(static_cast<long>(i) * i - i));
            if (i % 2 == 0) c = -c;
            out = out + MultiPoly::elementary(r, r - i).scaled(c);
        }
    }
    return out;
}

MultiPoly satake_product_side(SatakeTarget target, int r) {
    if (r < 1) throw InvalidSpecError("rank must be positive");
    Scalar shift = Scalar::q_pow(1) + Scalar::q_pow(-1);
    auto factor = [&](int j) {
        return MultiPoly::variable(r, j)
               - MultiPoly::constant(r, shift);
    };
    if (target == SatakeTarget::Level) {
        MultiPoly out = MultiPoly::constant(
            r, Scalar::q_pow(static_cast<long>(r) * r));
        for (int j = 0; j < r; ++j) out = out * factor(j);
        return out;
    }
    MultiPoly out(r);
    for (int j = 0; j < r; ++j) {
        MultiPoly term = MultiPoly::constant(
            r, Scalar::q_pow(static_cast<long>(r) * r - 1));
        for (int i = 0; i < r; ++i)
            if (i != j) term = term * factor(i);
        out = out + term;
    }
    return out;
}

bool satake_identity_check(SatakeTarget target, int r) {
    return satake_operator_side(target, r) == satake_product_side(target, r);
}

}  // namespace sph
