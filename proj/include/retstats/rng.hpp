#pragma once

#include <cstdint>

namespace retstats {

// SplitMix64 finalizer. Bijective on 64-bit words, so distinct inputs never
// collide.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: output i is a pure function of (seed, stream, i).
// Streams with distinct indices are independent for any interleaving, which
// is what makes runs bit-identical no matter how work is scheduled across
// threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(seed + 0x9e3779b97f4a7c15ULL * (mix64(stream) | 1ULL))) {}

    std::uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ ^ counter_);
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace retstats
