#pragma once

// Invariant suites run by `evendesign verify`. Each suite compares library
// results against brute-force oracles or reference values and lists every
// failing input.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evendesign/design.hpp"
#include "evendesign/io.hpp"

namespace evendesign {

struct VerifyReport {
    std::string suite;
    std::uint64_t cases = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    void check(bool ok, const std::string& what);
};

struct VerifyOptions {
    int random_samples = 200; // k=6 complement and k=5 residual samples
    std::uint64_t seed = 20240601;
};

VerifyReport verify_identities(const VerifyOptions& options = {});
VerifyReport verify_bounds(const VerifyOptions& options = {});
VerifyReport verify_constructions(const VerifyOptions& options = {});

/// "identities", "bounds" or "constructions"; ConfigError otherwise.
VerifyReport run_suite(const std::string& suite, const VerifyOptions& options = {});

Json verify_json(const VerifyReport& r);

/// Calls fn on every subset of `pool` with exactly `size` elements, in lexicographic index order.
void for_each_subset(const std::vector<PointMask>& pool, int size,
                     const std::function<void(const std::vector<PointMask>&)>& fn);

/// 64-run (k=6, n=21..24) and 128-run (k=7, n=54..41) rows as (n, bound, minimum) rows.
struct TableRow {
    int n = 0;
    int bound = 0;
    int min_a4 = 0;
};
const std::vector<TableRow>& runs64_reference();
const std::vector<TableRow>& runs128_reference();

} // namespace evendesign
