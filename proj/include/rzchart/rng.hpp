#pragma once

#include <cstdint>
#include <random>

#include "rzchart/ratio_dist.hpp"

namespace rzchart {

/// splitmix64 step; used to derive independent per-replication sub-seeds
/// from one master seed so parallel and serial runs draw identical streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t subseed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master + 0x632be59bd9b4e019ULL * (index + 1);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

/// Standard normal draw by inverse-CDF of a (0,1) uniform. One engine call
/// per variate; streams stay aligned no matter how draws are grouped.
inline double draw_standard_normal(std::mt19937_64& gen) {
    // uniform strictly inside (0,1)
    const double u =
        (static_cast<double>(gen() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    return standard_normal_quantile(u);
}

}  // namespace rzchart
