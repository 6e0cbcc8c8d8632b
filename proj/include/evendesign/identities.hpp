#pragma once

// Wordlength identities between complementary designs in the maximal even
// design, and the blocked-design identity they specialize from.
//
// Conventions: n is the number of factors of D, k the run-size exponent,
// n_tilde = 2^(k-1) - n. All coefficients are exact rationals; results are
// asserted integral and nonnegative before they leave this module.

#include <vector>

#include "evendesign/design.hpp"
#include "evendesign/exact.hpp"

namespace evendesign {

/// C_i = 2^-k (P_i(0; n) - P_i(2^(k-1); n)).
Rational identity_c(int i, int n, int k);

/// C_ij = (-1)^(i - floor((i-j)/2)) C(n - 2^(k-1), floor((i-j)/2)); zero when j > i.
BigInt identity_cij(int i, int j, int n, int k);

/// A_4(D) - A_4(D~) = (C(n,4) - C(2^(k-1)-n, 4)) / (2^(k-1) - 3).
Rational a4_offset(int n, int k);

/// Constants of the complement identity for one even wordlength i = 2u.
struct IdentityConstants {
    int u = 0;
    Rational c_2u;            // C_{2u}
    std::vector<BigInt> c_2u_j; // C_{2u,j}, j = 0..2u
    Rational gamma_2u;        // sum_{s=3}^{2u} I[s <= 2^(k-1)-1] C_{2u,s} gamma_{k-1}(s)
};

IdentityConstants identity_constants(int u, int n, int k);

/// Precomputed complement identity for fixed (n, k): every coefficient is
/// stored as an integer numerator over one common power-of-two denominator.
class ComplementIdentity {
public:
    ComplementIdentity(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int n_tilde() const { return n_tilde_; }

    /// See wlp_from_complement.
    WordlengthPattern apply(const WordlengthPattern& wlp_tilde) const;

private:
    int n_ = 0;
    int k_ = 0;
    int n_tilde_ = 0;
    BigInt denom_;
    // Indexed by u: constant term, then per-l coefficients of
    // (C(n~, 2l) - A_2l(D~)) and of A_2l(D~).
    std::vector<BigInt> constant_;
    std::vector<std::vector<BigInt>> coef_block_;
    std::vector<std::vector<BigInt>> coef_treat_;
};

/// Cached instance for (n, k); thread-safe.
const ComplementIdentity& complement_identity(int n, int k);

/// A_{2u}(D) for u = 2..floor(n/2) from the pattern of the complement D~.
/// wlp_tilde must be a pattern on n_tilde factors with no odd words.
/// Odd entries of the result are zero; A_2(D) = 0.
WordlengthPattern wlp_from_complement(int n, int k, const WordlengthPattern& wlp_tilde);

/// A_{i,0} of a blocked design with n treatment factors in 2^r blocks, from the
/// split pattern of its blocked residual design. 3 <= i <= n, 1 <= r < k.
/// When r = k - 1 the residual is checked against the closure
/// A_{s,1} = C(n_res, s) - A_{s,0} (s even), 0 (s odd); violations are a DomainError.
Rational split_wlp_from_residual(int i, int n, int k, int r, const SplitWordlengthPattern& residual);

/// Precomputed blocked-design identity for fixed (n, k, r).
class ResidualIdentity {
public:
    ResidualIdentity(int n, int k, int r);

    int n() const { return n_; }
    int residual_size() const { return n_res_; }

    /// A_{i,0}(D_B) for i = 3..n, asserted integral and nonnegative; entries 0..2 are zero.
    std::vector<BigInt> apply(const SplitWordlengthPattern& residual) const;

private:
    int n_ = 0;
    int k_ = 0;
    int r_ = 0;
    int n_res_ = 0;
    BigInt denom_;
    std::vector<BigInt> constant_;                // by i
    std::vector<std::vector<BigInt>> coef_a0_;    // [i][s], s = 0..i
    std::vector<std::vector<BigInt>> coef_a1_;    // [i][s]
};

/// Cached instance for (n, k, r); thread-safe.
const ResidualIdentity& residual_identity(int n, int k, int r);

/// split_wlp_from_residual for i = 3..n, asserted integral; entries 0..2 are zero.
std::vector<BigInt> split_a0_from_residual(int n, int k, int r, const SplitWordlengthPattern& residual);

/// Size of the residual point set for a blocked design: 2^k - 2^r - n.
int residual_size(int n, int k, int r);

} // namespace evendesign
