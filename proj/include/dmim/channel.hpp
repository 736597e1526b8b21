#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "constellation.hpp"
#include "random.hpp"

namespace dmim {

// Average noise energy per subcarrier, N0.
struct NoiseSpec {
    double n0;
};

inline NoiseSpec n0_from_ebn0(double eb, double ebn0_db) {
    if (!(eb > 0.0)) throw std::invalid_argument("n0_from_ebn0: eb must be positive");
    return NoiseSpec{eb / std::pow(10.0, ebn0_db / 10.0)};
}

// Per-subcarrier channel frequency response, i.i.d. CN(0,1) Rayleigh fading.
struct ChannelRealization {
    std::vector<Complex> h;
};

inline ChannelRealization sample_cfr(int n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_cfr: n must be positive");
    ChannelRealization cfr;
    cfr.h.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cfr.h.push_back(rng.next_cgauss(1.0));
    return cfr;
}

inline std::vector<Complex> sample_awgn(int n, const NoiseSpec& noise, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_awgn: n must be positive");
    if (!(noise.n0 > 0.0)) throw std::invalid_argument("sample_awgn: n0 must be positive");
    std::vector<Complex> w;
    w.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w.push_back(rng.next_cgauss(noise.n0));
    return w;
}

// y(a) = x(a) h(a) + w(a); the frequency-domain group model.
inline std::vector<Complex> apply_channel(const std::vector<Complex>& x,
                                          const ChannelRealization& cfr,
                                          const std::vector<Complex>& w) {
    if (x.size() != cfr.h.size() || x.size() != w.size())
        throw std::invalid_argument("apply_channel: length mismatch");
    std::vector<Complex> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * cfr.h[i] + w[i];
    return y;
}

}  // namespace dmim
