#pragma once

#include <cstdint>
#include <string_view>

namespace agentmem {

/// FNV-1a, 64-bit. Stable across platforms and standard libraries, unlike
/// std::hash.
constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t seed = 14695981039346656037ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

constexpr std::uint64_t fnv1a64_mix(std::uint64_t h, std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

/// Per-call seed: a stable hash of (run seed, task id, iteration, role) so the
/// scheduling order of parallel workers cannot change any sampled output.
constexpr std::uint64_t derive_call_seed(std::uint64_t run_seed, std::string_view task_id,
                                         int iteration, std::string_view role) {
    std::uint64_t h = fnv1a64_mix(14695981039346656037ull, run_seed);
    h = fnv1a64(task_id, h);
    h = fnv1a64_mix(h, static_cast<std::uint64_t>(iteration));
    h = fnv1a64(role, h);
    return h;
}

} // namespace agentmem
