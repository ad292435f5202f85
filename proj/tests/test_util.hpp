#pragma once

#include <cstdlib>
#include <random>
#include <string>

namespace dwtest {

// Seed for randomized property tests; DW_TEST_SEED overrides for replay.
inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
    std::uint64_t seed = 12345;
    if (const char* env = std::getenv("DW_TEST_SEED")) seed = std::stoull(env);
    return std::mt19937_64(seed + salt);
}

}  // namespace dwtest
