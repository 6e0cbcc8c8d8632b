#pragma once

// Regular two-level designs as point sets of PG(k-1, 2).
//
// A design with run size N = 2^k is a set T of n distinct nonzero k-bit
// points (the columns of its factor representation). Viewed as a binary
// [n, rank] code its codewords are (v.p_1, ..., v.p_n); the defining
// relation is the dual code, so the wordlength pattern is the dual weight
// distribution.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evendesign/exact.hpp"
#include "evendesign/gf2.hpp"

namespace evendesign {

using PointMask = std::uint32_t;

constexpr int kMaxRunExponent = 30;
constexpr int kDefaultEnumerationBudget = 26; // log2 of codewords enumerated

class DesignSpec {
public:
    DesignSpec() = default;
    /// Validates 1 <= k <= 30, points distinct, nonzero and below 2^k; stores them sorted.
    /// An empty point set is allowed (it arises as the complement of a maximal design).
    DesignSpec(int k, std::vector<PointMask> points, std::string name = {});

    int k() const { return k_; }
    int n() const { return static_cast<int>(points_.size()); }
    const std::vector<PointMask>& points() const { return points_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    int rank() const;
    /// m = n - rank: number of independent defining words.
    int defining_dimension() const { return n() - rank(); }
    bool contains(PointMask p) const;

    /// True when every point lies in the top-bit-1 half-space (EG(k-1, 2)).
    bool in_top_half() const;

    bool operator==(const DesignSpec& other) const { return k_ == other.k_ && points_ == other.points_; }

private:
    int k_ = 0;
    std::vector<PointMask> points_;
    std::string name_;
};

/// A_1..A_n of a design; counts[0] is kept at zero.
struct WordlengthPattern {
    std::vector<BigInt> counts;

    WordlengthPattern() = default;
    explicit WordlengthPattern(int n) : counts(static_cast<std::size_t>(n) + 1, 0) {}

    int n() const { return counts.empty() ? 0 : static_cast<int>(counts.size()) - 1; }
    /// A_i, or zero outside 1..n.
    BigInt at(int i) const;
    BigInt total() const;
    std::optional<int> resolution() const;
    bool odd_free() const;

    bool operator==(const WordlengthPattern&) const = default;
};

/// Sequential comparison A_1, A_2, ... (minimum aberration order); shorter patterns pad with zero.
int compare_aberration(const WordlengthPattern& a, const WordlengthPattern& b);

/// A'_0..A'_n of the design viewed as a code.
struct WeightDistribution {
    std::vector<std::uint64_t> counts;

    int n() const { return counts.empty() ? -1 : static_cast<int>(counts.size()) - 1; }
    std::uint64_t total() const;
    /// log2(total); DomainError unless the total is a power of two.
    int dimension() const;

    bool operator==(const WeightDistribution&) const = default;
};

/// T, F and T~ partition PG(k-1, 2); F is the top-bit-0 hyperplane.
struct EvenPartition {
    int k = 0;
    std::vector<PointMask> T;
    std::vector<PointMask> F;
    std::vector<PointMask> T_tilde;

    DesignSpec design() const { return DesignSpec(k, T); }
    DesignSpec complement() const { return DesignSpec(k, T_tilde); }
};

/// A design in 2^r blocks: treatment points, r independent block generators,
/// and the residual points PG(k-1,2) \ (treatment U blocks).
struct BlockedPartition {
    int k = 0;
    int r = 0;
    std::vector<PointMask> treatment;
    std::vector<PointMask> block_generators;
    std::vector<PointMask> residual;

    /// Swaps the roles of treatment and residual points (the blocked residual design).
    BlockedPartition residual_design() const;
};

/// Builds a blocked partition; DomainError when generators are dependent or a
/// treatment point is a block effect.
BlockedPartition make_blocked_partition(int k, std::vector<PointMask> treatment, std::vector<PointMask> block_generators);

enum class PartitionSide { design, complement };

/// Split pattern: a0[i] = A_{i,0} (treatment words), a1[i] = A_{i,1} (block words).
struct SplitWordlengthPattern {
    std::vector<BigInt> a0;
    std::vector<BigInt> a1;
    int r = 0;

    int n() const { return static_cast<int>(a0.size()) - 1; }
    BigInt at0(int i) const;
    BigInt at1(int i) const;

    bool operator==(const SplitWordlengthPattern&) const = default;
};

WeightDistribution weight_distribution(const DesignSpec& d, int max_rank = kDefaultEnumerationBudget);
WordlengthPattern wordlength_pattern(const DesignSpec& d, int max_rank = kDefaultEnumerationBudget);
std::optional<int> resolution(const DesignSpec& d);

/// Even iff the all-ones vector lies in the code, i.e. some functional is 1 on every point.
bool is_even(const DesignSpec& d);

/// Invertible k x k matrix whose top row is a functional equal to 1 on every
/// point, so that applying it moves the design into the top half. Empty for odd designs.
std::optional<Gf2Matrix> even_basis_change(const DesignSpec& d);
DesignSpec apply_basis_change(const DesignSpec& d, const Gf2Matrix& change);
/// Returns d unchanged when already in the top half; DomainError when d is not even.
DesignSpec canonicalize_even(const DesignSpec& d);

DesignSpec maximal_even(int k);
EvenPartition complement_in_maximal_even(const DesignSpec& d);

/// Oracle: enumerates all 2^(n - rank) defining words.
WordlengthPattern defining_words_bruteforce(const DesignSpec& d, int max_dual_dim = kDefaultEnumerationBudget);

/// Oracle: enumerates the dual of [treatment | block generators].
SplitWordlengthPattern split_wordlength_bruteforce(const BlockedPartition& partition, int max_dual_dim = 24);
SplitWordlengthPattern split_wordlength_bruteforce(const EvenPartition& partition, PartitionSide side,
                                                   int max_dual_dim = 24);

/// Points of the top-bit-0 hyperplane's standard basis: e_0 .. e_{k-2}.
std::vector<PointMask> hyperplane_generators(int k);

} // namespace evendesign
