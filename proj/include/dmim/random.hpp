#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <string_view>

namespace dmim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Deterministic stream keyed by a tuple of 64-bit ids. Streams with distinct
// keys are independent for Monte Carlo purposes; the same key always replays
// the same sequence, which is what makes sweeps reproducible across worker
// counts.
class RandomStream {
public:
    explicit RandomStream(std::initializer_list<std::uint64_t> key)
        : engine_(derive_seed(key)) {}

    static std::uint64_t derive_seed(std::initializer_list<std::uint64_t> key) {
        std::uint64_t h = 0x8f1bbcdcbfa53e0bULL;
        for (auto k : key) h = splitmix64(h ^ splitmix64(k));
        return h;
    }

    std::uint64_t next_u64() { return engine_(); }

    std::uint8_t next_bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

    // Uniform on (0, 1]; never returns 0 so log() is safe.
    double next_unit() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
    }

    // Circularly symmetric complex Gaussian CN(0, variance) via Box-Muller.
    std::complex<double> next_cgauss(double variance) {
        double u = next_unit();
        double theta = 2.0 * std::numbers::pi * (static_cast<double>(engine_() >> 11) * 0x1p-53);
        double r = std::sqrt(-variance * std::log(u));
        return {r * std::cos(theta), r * std::sin(theta)};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dmim
