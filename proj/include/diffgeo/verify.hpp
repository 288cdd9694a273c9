#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace diffgeo {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    double worst;     // worst observed residual/deviation
    double tolerance; // pinned bound it is held against
    std::string detail;
};

// The full verification suite. Deterministic for a fixed seed.
std::vector<CriterionResult> run_verification(std::uint64_t seed = 42);

// Subset selection by criterion id (empty = all).
std::vector<CriterionResult> run_verification(const std::vector<int>& ids, std::uint64_t seed);

} // namespace diffgeo
