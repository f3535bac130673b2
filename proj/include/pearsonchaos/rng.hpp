// SPDX-License-Identifier: MIT
//
// Counter-based random streams (Philox2x64-10). A stream is addressed by
// (seed, stream id); draws are reproducible bitwise regardless of thread
// scheduling, so samplers key a fresh substream per (coordinate, draw).
#pragma once

#include <cstdint>

namespace pearsonchaos {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Packs a (major, minor) pair into one stream id. Major indexes coordinates
/// or purposes (< 2^20), minor indexes draws (< 2^44).
inline std::uint64_t compose_stream(std::uint64_t major, std::uint64_t minor) {
    return (major << 44) | (minor & ((1ull << 44) - 1));
}

class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream)
        : key_(detail::splitmix64(seed)), stream_(stream) {}

    std::uint64_t next_u64() {
        if (pos_ == 2) {
            block(stream_, counter_++, buf_[0], buf_[1]);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform on (0,1].
    double uniform() {
        return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal (Box-Muller, cosine branch).
    double normal();

    /// Gamma(shape alpha, rate 1), Marsaglia-Tsang.
    double gamma(double alpha);

    double chi_squared(double dof) { return 2.0 * gamma(dof / 2.0); }

private:
    void block(std::uint64_t c0, std::uint64_t c1, std::uint64_t& o0, std::uint64_t& o1) const;

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int pos_ = 2;
};

}  // namespace pearsonchaos
