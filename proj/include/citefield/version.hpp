#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace citefield {

inline constexpr std::string_view kToolName = "citefield";
inline constexpr std::string_view kVersion = "0.1.0";

// Layout algorithm identifier embedded in exported maps. Bump whenever the
// force schedule, cooling, or normalization changes, since coordinates are
// part of the output contract.
inline constexpr std::string_view kLayoutAlgorithm = "fr-v1";

// FNV-1a, used to fingerprint effective run configurations in report metadata.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf);
}

}  // namespace citefield
