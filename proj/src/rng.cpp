// SPDX-License-Identifier: MIT
#include "pearsonchaos/rng.hpp"

#include <cmath>

namespace pearsonchaos {

void CounterStream::block(std::uint64_t c0, std::uint64_t c1, std::uint64_t& o0,
                          std::uint64_t& o1) const {
    constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ull;
    constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;
    std::uint64_t k = key_;
    for (int round = 0; round < 10; ++round) {
        const unsigned __int128 prod = static_cast<unsigned __int128>(kMul) * c0;
        const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        const std::uint64_t lo = static_cast<std::uint64_t>(prod);
        c0 = hi ^ k ^ c1;
        c1 = lo;
        k += kWeyl;
    }
    o0 = c0;
    o1 = c1;
}

double CounterStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double CounterStream::gamma(double alpha) {
    if (alpha < 1.0) {
        // boost to shape alpha+1, then scale back
        const double u = uniform();
        return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace pearsonchaos
