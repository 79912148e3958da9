#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sph {

// One number a + b*t of the unramified quadratic extension, components
// reduced into [0, p^M). t^2 equals a fixed unit non-residue, so t generates
// the residue field extension and conjugation flips the sign of b.
struct LocalElem {
    long long a = 0;
    long long b = 0;
    bool operator==(const LocalElem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const LocalElem& o) const { return !(*this == o); }
};

using LocalMat = std::vector<std::vector<LocalElem>>;

// Fixed-precision arithmetic in O = Z_p[t]/(t^2 - u) for odd p, working
// modulo p^M. All operations are exact on the tracked digits; valuations
// that reach M are reported as M and treated as "at least M" by callers,
// which must size M above every valuation they need to distinguish.
class LocalRing {
  public:
    LocalRing(long long p, int digits);

    long long p() const { return p_; }
    int digits() const { return M_; }
    long long modulus() const { return pM_; }
    long long nonresidue() const { return u_; }
    long long p_power(int k) const;  // p^k for 0 <= k <= M

    LocalElem from_pair(long long a, long long b) const;
    LocalElem zero() const { return {0, 0}; }
    LocalElem one() const { return {1, 0}; }
    LocalElem uniformizer_power(int k) const { return {p_power(k), 0}; }

    LocalElem add(const LocalElem& x, const LocalElem& y) const;
    LocalElem sub(const LocalElem& x, const LocalElem& y) const;
    LocalElem neg(const LocalElem& x) const;
    LocalElem mul(const LocalElem& x, const LocalElem& y) const;
    LocalElem conj(const LocalElem& x) const { return {x.a, norm_mod(-x.b)}; }

    bool is_zero(const LocalElem& x) const { return x.a == 0 && x.b == 0; }
    // min of the component p-valuations; M when the element is 0 mod p^M.
    int val(const LocalElem& x) const;
    int val_int(long long a) const;
    // norm to the base: a^2 - u b^2 mod p^M.
    long long norm(const LocalElem& x) const;

    // Inverse of a valuation-zero element; PrecisionLossError otherwise.
    LocalElem unit_inv(const LocalElem& x) const;
    // Exact division by p^k; PrecisionLossError when not divisible.
    LocalElem shift_down(const LocalElem& x, int k) const;
    // Reduce both components mod p^k (k <= M).
    LocalElem reduce_mod(const LocalElem& x, int k) const;

    // Matrices.
    LocalMat identity(int n) const;
    LocalMat mat_mul(const LocalMat& A, const LocalMat& B) const;
    LocalMat conj_transpose(const LocalMat& A) const;
    bool mat_equal(const LocalMat& A, const LocalMat& B) const;

    // Elementary-divisor valuations of a square matrix, weakly increasing.
    // Pivots are chosen globally by minimal valuation so every elimination
    // divides exactly. PrecisionLossError when a pivot valuation reaches M
    // before the matrix is exhausted.
    std::vector<int> snf_valuations(LocalMat A) const;

    // (B, v) with inverse(A) = p^{-v} B, via the adjugate; n <= 4.
    std::pair<LocalMat, int> scaled_inverse(const LocalMat& A) const;

    // Unique lower-triangular basis of the row span: full row rank n among
    // m >= n generator rows, diagonal p^{a_j}, entries below a diagonal
    // reduced mod the pivot of their column. Rows that vanish are dropped;
    // PrecisionLossError if fewer than n independent rows remain.
    LocalMat hnf_basis(LocalMat rows, int n) const;

  private:
    long long norm_mod(long long x) const;
    LocalElem det_rec(const LocalMat& A, std::vector<int>& cols, int row) const;

    long long p_;
    int M_;
    long long pM_;
    long long u_;
    std::vector<long long> pows_;
};

}  // namespace sph
