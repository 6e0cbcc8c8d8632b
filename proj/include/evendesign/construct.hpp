#pragma once

// Complements of minimum aberration even designs in the maximal even design,
// and Sidon-set complements of resolution at least VI.
//
// The independent points are fixed as b_1 = 2^(k-1) and b_{i+2} = 2^(k-1) + 2^i
// for i = 0..k-2, so every construction is reproducible bit for bit.

#include <string>
#include <vector>

#include "evendesign/design.hpp"

namespace evendesign {

enum class Family { independent, k_plus_1, k_plus_2, k_plus_3, sidon };

std::string to_string(Family f);
/// Parses "independent", "k+1", "k+2", "k+3", "sidon"; ConfigError otherwise.
Family parse_family(const std::string& name);

struct ComplementFamily {
    int k = 0;
    int n_tilde = 0;
    Family family = Family::independent;
    int m = 0; // k = 3m + r for k+2, n_tilde = 7m + r for k+3
    int r = 0;
};

/// The family complement_construction would use for (k, n_tilde).
ComplementFamily classify_complement(int k, int n_tilde);

/// b_1..b_count (1-based in the text, 0-based here).
std::vector<PointMask> independent_points(int k, int count);

/// n_tilde <= k+3 dispatch over the four families. k >= 4.
DesignSpec complement_construction(int k, int n_tilde);

DesignSpec k_plus_1_complement(int k);
DesignSpec k_plus_2_complement(int k);
DesignSpec k_plus_3_complement(int k);

/// The three generating words B7B6B4B3, B7B5B4B2, B6B5B4B1 of the k+3 family as
/// bitmasks over n_tilde letters (bit j = letter j+1).
std::vector<std::uint64_t> k_plus_3_words(int n_tilde);

/// Even design whose defining relation is generated by `words` (masks over
/// n letters, all of even length); the all-ones functional becomes the top coordinate.
DesignSpec design_from_words(int n, const std::vector<std::uint64_t>& words);

/// Largest n_tilde sidon_complement supports for k.
int sidon_capacity(int k);

/// n_tilde top-half points whose lower parts form a Sidon set (A_4 = 0).
/// Odd k: the norm-one circle in GF(2^(k-1)); even k: depth-first search.
DesignSpec sidon_complement(int k, int n_tilde);

/// The elements of the norm-one circle {beta^i}, beta = alpha^(2^s - 1), in GF(2^(2s)).
std::vector<PointMask> norm_one_circle(int s);

/// Top-half points not in d_tilde.
DesignSpec design_from_complement(int k, const DesignSpec& d_tilde);

/// Number of 4-subsets of `lower` (distinct vectors) that sum to zero.
std::uint64_t zero_sum_quadruples(const std::vector<PointMask>& lower);

} // namespace evendesign
