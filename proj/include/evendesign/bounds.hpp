#pragma once

// Lower bounds on A_4 for even resolution IV designs with N = 2^k runs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evendesign/design.hpp"
#include "evendesign/exact.hpp"

namespace evendesign {

/// Largest x with C(x-1,1) + C(x-1,2) + C(x-1,3) + C(x-1,4) <= 2^k - 1.
/// An estimate of M_6(k) only; the direction of the inequality is not certified.
int varshamov_max(int k);

/// Inclusive range of n where the minimum A_4 equals the offset bound by the
/// extended-BCH (here: Sidon complement) argument.
std::pair<int, int> weak_ma_range(int k);

/// Maximum number of factors in an even design of resolution >= VI with 2^k runs.
struct M6Estimate {
    int k = 0;
    std::optional<int> known;  // certified value, when available
    int constructive_lower = 0; // factors reached by the built-in Sidon constructions
    int varshamov = 0;          // varshamov_max(k), advisory
};

M6Estimate m6(int k);

/// A_4 of a weak minimum aberration design where the offset bound is attained.
/// DomainError when n is outside weak_ma_range(k) and below 2^(k-1) - known M_6(k).
BigInt weak_ma_a4(int n, int k);
bool weak_ma_applicable(int n, int k);

/// LB(n, k) = n^4/(12 N) - (3n^2 - 2n)/24 + n^2 (N/2 - n)^2 / ((N/2 - 1) 12 N), N = 2^k.
Rational lb(int n, int k);

enum class BoundSource { complement_lp, direct_lp, exact_weak_ma };

std::string to_string(BoundSource s);

struct BoundReport {
    int n = 0;
    int k = 0;
    Rational lb_direct;         // LB(n, k)
    Rational lb_complement;     // LB(N/2 - n, k), unclamped
    Rational offset;            // a4_offset(n, k)
    BigInt via_complement;      // max(ceil LB(N/2 - n, k), 0) + offset, ceiled
    BigInt direct;              // ceil LB(n, k)
    BigInt bound;               // final bound
    BoundSource source = BoundSource::complement_lp;
    bool in_lp_regime = false;  // 5N/16 < n < N/2
    bool exact = false;         // bound is attained (weak minimum aberration value)
};

/// True when 5N/16 < n < N/2.
bool in_complement_regime(int n, int k);

/// Combined LP bound. Inside the regime both LP branches are reported; where the
/// weak minimum aberration value is certified it is returned as an exact bound.
/// DomainError when neither applies.
BoundReport a4_bound(int n, int k);

/// Extreme point of the two-point LP: l* = 1 + (n - sqrt(Q/S))/2, g* = l* - 1,
/// h_min = Q^2 / S with Q = (2^(k-1) - n) n and S = 2^(k-1) - 1.
struct ExtremePoint {
    double l_star = 0;
    double g_star = 0;
    Rational h_min;
    Rational f_min; // the LP objective at h_min; equals lb(n, k)
};

ExtremePoint h_extreme(int n, int k);

/// h(l, g) for the two-point support {l, g}; nullopt when l == g with equal
/// weights or when the supported x_l, x_g would be negative.
std::optional<Rational> h_two_point(int n, int k, int l, int g);

/// The LP objective for a given h value.
Rational objective_from_h(int n, int k, const Rational& h);

/// x_j = A'_j (j < n/2), A'_{n/2}/2 (j = n/2), for j = 1..floor(n/2); index 0 unused.
struct FoldedWeightVector {
    int n = 0;
    std::vector<Rational> x;

    /// Checks sum x_j = 2^(dim-1) - 1 and sum (n-2j)^2 x_j = (2^(dim-1) - n) n.
    bool satisfies_constraints(int dim) const;
    /// The LP objective evaluated at x; equals A_4 for a resolution IV design.
    Rational objective(int dim) const;
};

/// Requires a symmetric distribution (the all-ones vector in the code).
FoldedWeightVector fold_weights(const WeightDistribution& wd);

} // namespace evendesign
