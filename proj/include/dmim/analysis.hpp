#pragma once

#include <cmath>
#include <stdexcept>

#include "bits.hpp"
#include "constellation.hpp"

namespace dmim {

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Conditional pairwise error probability, Q(delta * SNR / Eb). The argument
// shape is kept exactly as the reference analysis states it; the BER engine
// never uses this (it measures errors empirically).
inline double cpep_paper(double delta, double snr_linear, double eb) {
    if (!(eb > 0.0)) throw std::invalid_argument("cpep_paper: eb must be positive");
    if (delta < 0.0 || snr_linear < 0.0)
        throw std::invalid_argument("cpep_paper: delta and snr must be nonnegative");
    return q_function(delta * snr_linear / eb);
}

// Channel-independent worst-case distance factors of the two error events:
// delta1 (symbol demodulation error, within one mode) and delta2 (index
// demodulation error, across modes), plus the pair's energy per bit.
struct PairReport {
    double delta1_factor;
    double delta2_factor;
    double eb;
    double normalized_d1;  // delta1_factor / sqrt(eb)
    double normalized_d2;  // delta2_factor / sqrt(eb)
};

inline PairReport worst_case_report(const ConstellationPair& pair, int n, int k, int p) {
    double d1 = std::numeric_limits<double>::infinity();
    if (pair.a.size() >= 2) d1 = std::min(d1, min_intra_distance(pair.a));
    if (pair.b.size() >= 2) d1 = std::min(d1, min_intra_distance(pair.b));
    if (!std::isfinite(d1))
        throw std::invalid_argument("worst_case_report: no mode has two points");
    double d2 = min_inter_distance(pair);
    double eb = energy_per_bit(pair, n, k, p);
    return PairReport{d1, d2, eb, d1 / std::sqrt(eb), d2 / std::sqrt(eb)};
}

// True iff both modes share the same minimum intra-constellation distance
// (the symbol-error design criterion).
inline bool design_criterion_check(const ConstellationPair& pair) {
    return std::abs(min_intra_distance(pair.a) - min_intra_distance(pair.b)) <= 1e-9;
}

// Average Hamming distance between a label and its nearest-neighbor demapping
// through the other mode, in each direction. Small values mean an index error
// corrupts few payload bits.
struct CrossDemapStats {
    double a_to_b;
    double b_to_a;
};

inline CrossDemapStats cross_demap_statistics(const ConstellationPair& pair) {
    if (pair.a.size() != pair.b.size())
        throw std::invalid_argument("cross_demap_statistics: needs M_A = M_B");
    int m = pair.a.bits_per_symbol();
    double ab = 0.0, ba = 0.0;
    for (std::uint32_t lab = 0; lab < pair.a.size(); ++lab) {
        Bits word = bits_from_word(lab, m);
        ab += static_cast<double>(hamming_distance(word, cross_demap(pair.a, pair.b, word)));
        ba += static_cast<double>(hamming_distance(word, cross_demap(pair.b, pair.a, word)));
    }
    return CrossDemapStats{ab / static_cast<double>(pair.a.size()),
                           ba / static_cast<double>(pair.a.size())};
}

}  // namespace dmim
