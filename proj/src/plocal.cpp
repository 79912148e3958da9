#include "sphkernel/plocal.hpp"

#include <algorithm>

#include "sphkernel/errors.hpp"

namespace sph {

namespace {

const long long kWordCap = 3000000000000000000LL;  // keeps x+y and 2*p^M in range

long long powmod_small(long long base, long long e, long long m) {
    long long r = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1) r = (long long)((__int128)r * base % m);
        base = (long long)((__int128)base * base % m);
        e >>= 1;
    }
    return r;
}

// Inverse of x mod m for gcd(x, m) = 1; coefficients kept reduced mod m.
long long invmod(long long x, long long m) {
    long long r0 = m, r1 = ((x % m) + m) % m;
    long long s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long s2 = (long long)(((__int128)s0 - (__int128)q * s1) % m);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw InvalidSpecError("modular inverse of a non-unit");
    return ((s0 % m) + m) % m;
}

}  // namespace

LocalRing::LocalRing(long long p, int digits) : p_(p), M_(digits) {
    if (p < 3 || p % 2 == 0) throw InvalidSpecError("residue characteristic must be an odd prime");
    if (digits < 1) throw InvalidSpecError("precision must be at least one digit");
    pows_.assign(M_ + 1, 1);
    for (int k = 1; k <= M_; ++k) {
        if (pows_[k - 1] > kWordCap / p) throw InvalidSpecError("precision exceeds the word size");
        pows_[k] = pows_[k - 1] * p;
    }
    pM_ = pows_[M_];
    u_ = 0;
    for (long long c = 2; c < p; ++c) {
        if (powmod_small(c, (p - 1) / 2, p) == p - 1) {
            u_ = c;
            break;
        }
    }
    if (u_ == 0) throw InvalidSpecError("no quadratic non-residue found");
}

long long LocalRing::p_power(int k) const {
    if (k < 0 || k > M_) throw InvalidSpecError("uniformizer power outside tracked precision");
    return pows_[k];
}

long long LocalRing::norm_mod(long long x) const { return ((x % pM_) + pM_) % pM_; }

LocalElem LocalRing::from_pair(long long a, long long b) const { return {norm_mod(a), norm_mod(b)}; }

LocalElem LocalRing::add(const LocalElem& x, const LocalElem& y) const {
    long long a = x.a + y.a;
    if (a >= pM_) a -= pM_;
    long long b = x.b + y.b;
    if (b >= pM_) b -= pM_;
    return {a, b};
}

LocalElem LocalRing::sub(const LocalElem& x, const LocalElem& y) const {
    long long a = x.a - y.a;
    if (a < 0) a += pM_;
    long long b = x.b - y.b;
    if (b < 0) b += pM_;
    return {a, b};
}

LocalElem LocalRing::neg(const LocalElem& x) const { return {norm_mod(-x.a), norm_mod(-x.b)}; }

LocalElem LocalRing::mul(const LocalElem& x, const LocalElem& y) const {
    __int128 aa = (__int128)x.a * y.a % pM_;
    __int128 bb = (__int128)x.b * y.b % pM_;
    __int128 a = (aa + (__int128)u_ * bb) % pM_;
    __int128 ab = ((__int128)x.a * y.b + (__int128)x.b * y.a) % pM_;
    return {(long long)a, (long long)ab};
}

int LocalRing::val_int(long long a) const {
    if (a == 0) return M_;
    int v = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++v;
    }
    return v;
}

int LocalRing::val(const LocalElem& x) const { return std::min(val_int(x.a), val_int(x.b)); }

long long LocalRing::norm(const LocalElem& x) const {
    __int128 bb = (__int128)x.b * x.b % pM_;
    __int128 n = ((__int128)x.a * x.a % pM_ - (__int128)u_ * bb) % pM_;
    if (n < 0) n += pM_;
    return (long long)n;
}

LocalElem LocalRing::unit_inv(const LocalElem& x) const {
    if (val(x) != 0) throw InvalidSpecError("inverse of a non-unit local element");
    long long ninv = invmod(norm(x), pM_);
    LocalElem c = conj(x);
    return {(long long)((__int128)c.a * ninv % pM_), (long long)((__int128)c.b * ninv % pM_)};
}

LocalElem LocalRing::shift_down(const LocalElem& x, int k) const {
    if (k == 0) return x;
    long long pk = p_power(k);
    if (x.a % pk != 0 || x.b % pk != 0)
        throw PrecisionLossError("inexact division by a uniformizer power");
    return {x.a / pk, x.b / pk};
}

LocalElem LocalRing::reduce_mod(const LocalElem& x, int k) const {
    long long pk = p_power(k);
    return {x.a % pk, x.b % pk};
}

LocalMat LocalRing::identity(int n) const {
    LocalMat A(n, std::vector<LocalElem>(n, zero()));
    for (int i = 0; i < n; ++i) A[i][i] = one();
    return A;
}

LocalMat LocalRing::mat_mul(const LocalMat& A, const LocalMat& B) const {
    int n = (int)A.size(), k = (int)B.size(), m = k > 0 ? (int)B[0].size() : 0;
    LocalMat C(n, std::vector<LocalElem>(m, zero()));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (is_zero(A[i][t])) continue;
            for (int j = 0; j < m; ++j) C[i][j] = add(C[i][j], mul(A[i][t], B[t][j]));
        }
    return C;
}

LocalMat LocalRing::conj_transpose(const LocalMat& A) const {
    int n = (int)A.size(), m = n > 0 ? (int)A[0].size() : 0;
    LocalMat C(m, std::vector<LocalElem>(n, zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) C[j][i] = conj(A[i][j]);
    return C;
}

bool LocalRing::mat_equal(const LocalMat& A, const LocalMat& B) const {
    if (A.size() != B.size()) return false;
    for (size_t i = 0; i < A.size(); ++i)
        if (A[i] != B[i]) return false;
    return true;
}

std::vector<int> LocalRing::snf_valuations(LocalMat A) const {
    int n = (int)A.size();
    for (const auto& row : A)
        if ((int)row.size() != n) throw InvalidSpecError("elementary divisors need a square matrix");
    std::vector<int> out;
    for (int k = 0; k < n; ++k) {
        int bi = -1, bj = -1, bv = M_;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                int v = val(A[i][j]);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0)
            throw PrecisionLossError("matrix block vanishes at working precision");
        std::swap(A[k], A[bi]);
        for (int i = 0; i < n; ++i) std::swap(A[i][k], A[i][bj]);
        LocalElem uinv = unit_inv(shift_down(A[k][k], bv));
        for (int i = k + 1; i < n; ++i) {
            if (is_zero(A[i][k])) continue;
            LocalElem f = mul(shift_down(A[i][k], bv), uinv);
            for (int j = k; j < n; ++j) A[i][j] = sub(A[i][j], mul(f, A[k][j]));
        }
        for (int j = k + 1; j < n; ++j) {
            if (is_zero(A[k][j])) continue;
            LocalElem f = mul(shift_down(A[k][j], bv), uinv);
            for (int i = k; i < n; ++i) A[i][j] = sub(A[i][j], mul(f, A[i][k]));
        }
        out.push_back(bv);
    }
    return out;
}

LocalElem LocalRing::det_rec(const LocalMat& A, std::vector<int>& cols, int row) const {
    if (row == (int)A.size()) return one();
    LocalElem acc = zero();
    for (size_t t = 0; t < cols.size(); ++t) {
        int j = cols[t];
        if (is_zero(A[row][j])) continue;
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (size_t s = 0; s < cols.size(); ++s)
            if (s != t) rest.push_back(cols[s]);
        LocalElem term = mul(A[row][j], det_rec(A, rest, row + 1));
        acc = (t % 2 == 0) ? add(acc, term) : sub(acc, term);
    }
    return acc;
}

std::pair<LocalMat, int> LocalRing::scaled_inverse(const LocalMat& A) const {
    int n = (int)A.size();
    if (n < 1 || n > 4) throw InvalidSpecError("scaled inverse supports sizes 1 through 4");
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    LocalElem det = det_rec(A, cols, 0);
    int v = val(det);
    if (v >= M_) throw PrecisionLossError("determinant vanishes at working precision");
    LocalElem uinv = unit_inv(shift_down(det, v));
    LocalMat B(n, std::vector<LocalElem>(n, zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LocalMat minor;
            minor.reserve(n - 1);
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<LocalElem> mrow;
                mrow.reserve(n - 1);
                for (int c = 0; c < n; ++c)
                    if (c != i) mrow.push_back(A[r][c]);
                minor.push_back(std::move(mrow));
            }
            std::vector<int> sub_cols(n - 1);
            for (int c = 0; c < n - 1; ++c) sub_cols[c] = c;
            LocalElem cof = minor.empty() ? one() : det_rec(minor, sub_cols, 0);
            if ((i + j) % 2 == 1) cof = neg(cof);
            B[i][j] = mul(cof, uinv);
        }
    return {B, v};
}

LocalMat LocalRing::hnf_basis(LocalMat rows, int n) const {
    int m = (int)rows.size();
    if (m < n) throw InvalidSpecError("too few generator rows for the rank");
    for (const auto& row : rows)
        if ((int)row.size() != n) throw InvalidSpecError("generator row width mismatch");
    // Work in reversed coordinates so the canonical form comes out
    // lower-triangular with below-diagonal entries reduced.
    auto rev = [&](LocalMat X) {
        std::reverse(X.begin(), X.end());
        for (auto& row : X) std::reverse(row.begin(), row.end());
        return X;
    };
    LocalMat A = rev(std::move(rows));
    std::vector<int> pval(n, 0);
    for (int j = 0; j < n; ++j) {
        int bi = -1, bv = M_;
        for (int i = j; i < m; ++i) {
            int v = val(A[i][j]);
            if (v < bv) {
                bv = v;
                bi = i;
            }
        }
        if (bi < 0) throw PrecisionLossError("generators are not of full rank at working precision");
        std::swap(A[j], A[bi]);
        LocalElem uinv = unit_inv(shift_down(A[j][j], bv));
        for (int c = 0; c < n; ++c) A[j][c] = mul(A[j][c], uinv);
        for (int i = j + 1; i < m; ++i) {
            if (is_zero(A[i][j])) continue;
            LocalElem f = shift_down(A[i][j], bv);
            for (int c = 0; c < n; ++c) A[i][c] = sub(A[i][c], mul(f, A[j][c]));
        }
        pval[j] = bv;
    }
    for (int i = n; i < m; ++i)
        for (int c = 0; c < n; ++c)
            if (!is_zero(A[i][c]))
                throw PrecisionLossError("dependent generator fails to reduce to zero");
    A.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            LocalElem red = reduce_mod(A[i][j], pval[j]);
            LocalElem diff = sub(A[i][j], red);
            if (is_zero(diff)) continue;
            LocalElem f = shift_down(diff, pval[j]);
            for (int c = 0; c < n; ++c) A[i][c] = sub(A[i][c], mul(f, A[j][c]));
        }
    return rev(std::move(A));
}

}  // namespace sph
