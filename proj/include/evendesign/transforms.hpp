#pragma once

// Krawtchouk polynomials and the transforms built on them.
//
// P_i(x; n) = sum_s (-1)^s C(x, s) C(n - x, i - s) is evaluated as a
// polynomial in x, so arguments outside 0..n (which the complement identities
// need) use generalized binomial coefficients.

#include <cstdint>
#include <vector>

#include "evendesign/design.hpp"
#include "evendesign/exact.hpp"

namespace evendesign {

/// Generalized binomial x(x-1)...(x-t+1)/t!; zero for t < 0.
BigInt binomial(std::int64_t x, int t);

BigInt krawtchouk(int i, std::int64_t j, int n);

/// P_0(j; n) .. P_max_i(j; n) in one pass: coefficients of (1-z)^j (1+z)^(n-j).
std::vector<BigInt> krawtchouk_row(std::int64_t j, int n, int max_i);

/// alpha_r(s) for 1 <= s <= 2^r - 2, as printed: 1 at s = 1, otherwise
/// 2^-r (C(2^r-2, s) + P_s(2^(r-1); 2^r-2)(2^(r-1)-1) - P_s(2^(r-1)-1; 2^r-2) 2^(r-1)).
/// This counts s-subsets of PG(r-1,2) minus a point p that sum to p.
Rational alpha(int r, int s);

/// Number of s-subsets of PG(r-1, 2) summing to a fixed nonzero point,
/// 2^-r (C(2^r-1, s) - P_s(2^(r-1); 2^r-1)), for 1 <= s <= 2^r - 1.
/// Equals alpha(r, s) plus the (s-1)-subsets of PG(r-1,2) \ {p} summing to zero.
Rational alpha_full(int r, int s);

/// gamma_r(s) = 2^-r (C(2^r-1, s) + P_s(2^(r-1); 2^r-1)(2^r-1)), 0 <= s <= 2^r - 1:
/// the weight distribution of the length 2^r - 1 Hamming code.
Rational gamma(int r, int s);

/// (s-1)-subsets of PG(r-1,2) \ {p} summing to zero; alpha_full(r,s) - alpha(r,s).
Rational punctured_zero_sum_count(int r, int s);

/// Unscaled transform b_i = sum_j P_i(j; n) a_j, i = 0..n.
std::vector<BigInt> krawtchouk_transform(const std::vector<BigInt>& a, int n);

/// Wordlength pattern of the dual: A_i = 2^-dim sum_j P_i(j; n) A'_j.
/// Requires sum A'_j = 2^dim; InvariantViolation if any output is not a
/// nonnegative integer or A_0 != 1.
WordlengthPattern macwilliams(const WeightDistribution& a_prime, int n, int dim);

/// S_i = 2^-dim sum_j (n - 2j)^i A'_j for even i <= 8.
Rational power_moment(int i, const WeightDistribution& a_prime, int n, int dim);

/// The constant C_i with A_i = (S_i - C_i) / i!, for i = 2 (C_2 = n) and i = 4 (C_4 = n(3n-2)).
/// Valid when A_2 = 0 for i = 4.
BigInt karpovsky_constant(int i, int n);

/// Number of i-tuples over n letters whose odd-multiplicity letters form one
/// given w-set: 2^-n sum_j P_j(w; n) (n - 2j)^i. Then S_i = sum_w A_w N_i(w).
BigInt moment_weight(int i, int w, int n);

/// A_4 through the fourth power moment (valid for resolution >= III).
BigInt a4_from_moments(const WeightDistribution& a_prime, int n, int dim);

} // namespace evendesign
