#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "constellation.hpp"
#include "index_codebook.hpp"
#include "modem.hpp"

namespace dmim {

// A registered transmission scheme: the modem configuration plus the energy
// per information bit used for Eb/N0 normalization.
struct Scheme {
    std::string id;
    SchemeConfig cfg;
    double eb;
};

inline const std::vector<std::string>& scheme_ids() {
    static const std::vector<std::string> ids = {
        "dm-qpsk-conv-const-conv-map",  "dm-qpsk-prop-const-conv-map",
        "dm-qpsk-prop-const-prop-map",  "dm-16qam-conv-const-conv-map",
        "dm-16qam-prop-const-conv-map", "dm-16qam-prop-const-prop-map",
        "ofdm-im-16qam",                "ofdm-16qam",
    };
    return ids;
}

// All schemes share the n=4 group geometry of the reference setup. The two
// benchmarks reuse the dual-mode machinery: OFDM-IM models inactive
// subcarriers as a zero-point mode B, and plain OFDM is the single-pattern
// k = n case.
inline Scheme make_scheme(const std::string& id) {
    SchemeConfig cfg = [&id] {
        if (id == "dm-qpsk-conv-const-conv-map")
            return make_scheme_config(4, 2, build_conventional_pair(4), paper_codebook(),
                                      BitMapping::conventional);
        if (id == "dm-qpsk-prop-const-conv-map")
            return make_scheme_config(4, 2, build_proposed_pair(4), paper_codebook(),
                                      BitMapping::conventional);
        if (id == "dm-qpsk-prop-const-prop-map")
            return make_scheme_config(4, 2, build_proposed_pair(4), paper_codebook(),
                                      BitMapping::proposed);
        if (id == "dm-16qam-conv-const-conv-map")
            return make_scheme_config(4, 2, build_conventional_pair(16), paper_codebook(),
                                      BitMapping::conventional);
        if (id == "dm-16qam-prop-const-conv-map")
            return make_scheme_config(4, 2, build_proposed_pair(16), paper_codebook(),
                                      BitMapping::conventional);
        if (id == "dm-16qam-prop-const-prop-map")
            return make_scheme_config(4, 2, build_proposed_pair(16), paper_codebook(),
                                      BitMapping::proposed);
        if (id == "ofdm-im-16qam")
            return make_scheme_config(
                4, 2, ConstellationPair(gray_constellation(16), zero_constellation()),
                paper_codebook(), BitMapping::conventional);
        if (id == "ofdm-16qam")
            return make_scheme_config(
                4, 4, ConstellationPair(gray_constellation(16), zero_constellation()),
                full_band_codebook(4), BitMapping::conventional);
        throw std::invalid_argument("make_scheme: unknown scheme id: " + id);
    }();
    double eb = energy_per_bit(cfg.pair, cfg.n, cfg.k, cfg.p);
    return Scheme{id, std::move(cfg), eb};
}

inline double spectral_efficiency(const Scheme& s) {
    return static_cast<double>(s.cfg.p) / static_cast<double>(s.cfg.n);
}

}  // namespace dmim
