#pragma once

// Branch-and-bound search over complements in the maximal even design.
//
// A complement is a set of n_tilde top-half points; only the lower k-1 bits
// ("lower parts") matter for dependent quadruples, and the affine group of
// GF(2)^(k-1) acts on lower parts without changing any wordlength pattern.

#include <cstdint>
#include <string>
#include <vector>

#include "evendesign/design.hpp"

namespace evendesign {

enum class Symmetry {
    none,        // every n_tilde-subset of max rank
    translation, // lower part 0 is in the set
    frame,       // {0, e_0, ..., e_{min(n_tilde,k)-2}} is in the set
};

std::string to_string(Symmetry s);
Symmetry parse_symmetry(const std::string& name);

constexpr int kMaxSearchRunExponent = 10;

struct SearchOptions {
    std::uint64_t node_budget = 0; // 0: unlimited
    int threads = 0;               // 0: hardware concurrency
    Symmetry symmetry = Symmetry::frame;
    std::string checkpoint_path;   // empty: no checkpointing
};

enum class Objective { a4, aberration };

struct SearchReport {
    int k = 0;
    int n_tilde = 0;
    Objective objective = Objective::a4;
    Symmetry symmetry = Symmetry::frame;
    std::uint64_t min_a4_tilde = 0;
    DesignSpec witness;           // the complement, top-half points
    WordlengthPattern tilde_wlp;  // of the witness
    WordlengthPattern full_wlp;   // of the 2^(k-1) - n_tilde factor design, via the complement identity
    std::uint64_t nodes_explored = 0;
    bool exhaustive = false;
    int threads = 1;
    int branches_total = 0;
    int branches_resumed = 0;
};

/// Minimum A_4 over n_tilde-point complements of maximum rank.
SearchReport min_a4(int k, int n_tilde, const SearchOptions& options = {});

/// Minimum aberration complement for an n-factor even design; requires 5N/16 < n < N/2.
SearchReport ma_search(int k, int n, const SearchOptions& options = {});

/// 3 A_4 = sum_v C(m_v, 2) with m_v the number of pairs summing to v.
std::uint64_t count_dependent_quadruples(const std::vector<PointMask>& lower);
/// Direct O(n^3) scan, for cross-checking.
std::uint64_t count_dependent_quadruples_direct(std::vector<PointMask> lower);

/// Dimension of the affine span of the lower parts; -1 for the empty set.
int affine_rank(const std::vector<PointMask>& lower);

} // namespace evendesign
