#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "channel.hpp"
#include "harness.hpp"
#include "modem.hpp"
#include "random.hpp"
#include "schemes.hpp"

namespace dmim {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

// The worked index-error example: proposed 16QAM pair, I_A = {1,3},
// b1 = 10, b2 = 1011 0000 1111 0111, detected pattern forced to {1,2},
// no noise, flat unit channel.
struct ToyExampleResult {
    std::vector<Complex> x_conv;
    std::vector<Complex> x_prop;
    Bits b2hat_conv;
    Bits b2hat_prop;
    std::size_t payload_errors_conv;
    std::size_t payload_errors_prop;
};

inline ToyExampleResult run_toy_example() {
    SchemeConfig conv = make_scheme_config(4, 2, build_proposed_pair(16), paper_codebook(),
                                           BitMapping::conventional);
    SchemeConfig prop = make_scheme_config(4, 2, build_proposed_pair(16), paper_codebook(),
                                           BitMapping::proposed);
    const Bits b = bits_from_string("10 1011 0000 1111 0111");
    const Bits b2 = subrange(b, 2, 16);
    const IndexPattern forced{{1, 2}};
    const std::vector<Complex> ones(4, Complex{1.0, 0.0});

    ToyExampleResult r;
    GroupSymbols x_conv = modulate_conventional(b, conv);
    GroupSymbols x_prop = modulate_proposed(b, prop);
    r.x_conv = x_conv.x;
    r.x_prop = x_prop.x;
    GroupSymbols xhat_conv = detect_with_pattern(x_conv.x, ones, forced, conv);
    GroupSymbols xhat_prop = detect_with_pattern(x_prop.x, ones, forced, prop);
    r.b2hat_conv = subrange(demap_conventional(xhat_conv, conv), 2, 16);
    r.b2hat_prop = subrange(demap_proposed(xhat_prop, prop), 2, 16);
    r.payload_errors_conv = hamming_distance(b2, r.b2hat_conv);
    r.payload_errors_prop = hamming_distance(b2, r.b2hat_prop);
    return r;
}

namespace detail {

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline void push(std::vector<CheckResult>& out, const std::string& name, bool pass,
                 const std::string& detail) {
    out.push_back(CheckResult{name, pass, detail});
}

inline bool same_symbols(const GroupSymbols& a, const GroupSymbols& b) {
    if (!(a.pattern == b.pattern) || a.x.size() != b.x.size()) return false;
    for (std::size_t i = 0; i < a.x.size(); ++i)
        if (a.x[i] != b.x[i]) return false;  // bitwise: detectors return constellation points
    return true;
}

}  // namespace detail

// Pair-metric reproduction against the quoted design values.
inline std::vector<CheckResult> check_pair_constants() {
    std::vector<CheckResult> out;
    struct Row {
        const char* name;
        ConstellationPair pair;
        int p;
        double eb, d1, d2;
    };
    const double r2 = std::sqrt(2.0);
    std::vector<Row> rows;
    rows.push_back({"conv-qpsk", build_conventional_pair(4), 10, 1.8928, 2.0, 2.0});
    rows.push_back({"prop-qpsk", build_proposed_pair(4), 10, 1.0, 2.0, r2});
    rows.push_back({"conv-16qam", build_conventional_pair(16), 18, 4.444, 2.0, 2.0});
    rows.push_back({"prop-16qam", build_proposed_pair(16), 18, 2.3333, 2.0, r2});
    for (const Row& row : rows) {
        PairReport rep = worst_case_report(row.pair, 4, 2, row.p);
        detail::push(out, std::string("eb ") + row.name,
                     detail::close(rep.eb, row.eb, 1e-3),
                     "eb=" + format_double(rep.eb) + " expected " + format_double(row.eb) +
                         " +/- 0.001");
        detail::push(out, std::string("delta factors ") + row.name,
                     detail::close(rep.delta1_factor, row.d1, 1e-9) &&
                         detail::close(rep.delta2_factor, row.d2, 1e-9),
                     "d1=" + format_double(rep.delta1_factor) +
                         " d2=" + format_double(rep.delta2_factor));
    }
    detail::push(out, "q_function(0)", detail::close(q_function(0.0), 0.5, 1e-12),
                 "Q(0)=" + format_double(q_function(0.0)));
    return out;
}

// Detector oracle: low-complexity ML must match exhaustive ML exactly on
// randomized fading/noise draws.
inline std::vector<CheckResult> check_detector_equivalence(int trials_per_point,
                                                           std::uint64_t seed) {
    std::vector<CheckResult> out;
    const double snrs_db[] = {0.0, 10.0, 20.0, 30.0};
    for (const std::string& id : scheme_ids()) {
        Scheme s = make_scheme(id);
        std::uint64_t mismatches = 0;
        std::uint64_t trials = 0;
        for (double snr_db : snrs_db) {
            RandomStream rng({seed, fnv1a64(id), std::bit_cast<std::uint64_t>(snr_db)});
            NoiseSpec noise = n0_from_ebn0(s.eb, snr_db);
            Bits b(static_cast<std::size_t>(s.cfg.p));
            for (int t = 0; t < trials_per_point; ++t) {
                for (auto& bit : b) bit = rng.next_bit();
                GroupSymbols x = modulate(b, s.cfg);
                ChannelRealization cfr = sample_cfr(s.cfg.n, rng);
                std::vector<Complex> w = sample_awgn(s.cfg.n, noise, rng);
                std::vector<Complex> y = apply_channel(x.x, cfr, w);
                GroupSymbols fast = detect_low_complexity_ml(y, cfr.h, s.cfg);
                GroupSymbols full = detect_exhaustive_ml(y, cfr.h, s.cfg);
                ++trials;
                if (!detail::same_symbols(fast, full)) ++mismatches;
            }
        }
        detail::push(out, "detector equivalence " + id, mismatches == 0,
                     std::to_string(trials) + " trials, " + std::to_string(mismatches) +
                         " mismatches");
    }
    return out;
}

// Zero noise through a random nonzero channel must demap with zero errors.
inline std::vector<CheckResult> check_noiseless_round_trips(int groups, std::uint64_t seed) {
    std::vector<CheckResult> out;
    for (const std::string& id : scheme_ids()) {
        Scheme s = make_scheme(id);
        RandomStream rng({seed, fnv1a64(id), 7});
        Bits b(static_cast<std::size_t>(s.cfg.p));
        std::size_t errors = 0;
        for (int g = 0; g < groups; ++g) {
            for (auto& bit : b) bit = rng.next_bit();
            GroupSymbols x = modulate(b, s.cfg);
            ChannelRealization cfr = sample_cfr(s.cfg.n, rng);
            std::vector<Complex> y(x.x.size());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = x.x[i] * cfr.h[i];
            errors += hamming_distance(b, demap(detect_low_complexity_ml(y, cfr.h, s.cfg), s.cfg));
        }
        detail::push(out, "noiseless round trip " + id, errors == 0,
                     std::to_string(groups) + " groups, " + std::to_string(errors) +
                         " bit errors");
    }
    return out;
}

inline std::vector<CheckResult> check_design_comparisons() {
    std::vector<CheckResult> out;
    for (int order : {4, 16}) {
        ConstellationPair conv = build_conventional_pair(order);
        ConstellationPair prop = build_proposed_pair(order);
        std::string tag = order == 4 ? "qpsk" : "16qam";
        // the conventional 16QAM ring happens to share d_min with the grid, so
        // the raw criterion only separates the pairs in the QPSK case
        bool conv_expected = order == 16;
        detail::push(out, "design criterion " + tag,
                     design_criterion_check(prop) &&
                         design_criterion_check(conv) == conv_expected,
                     order == 4 ? "proposed satisfies equal-min-distance, conventional does not"
                                : "both satisfy equal-min-distance; proposed wins after energy "
                                  "normalization");
        CrossDemapStats cs_conv = cross_demap_statistics(conv);
        CrossDemapStats cs_prop = cross_demap_statistics(prop);
        detail::push(out, "cross demap " + tag,
                     cs_prop.a_to_b < cs_conv.a_to_b && cs_prop.b_to_a < cs_conv.b_to_a,
                     "proposed (" + format_double(cs_prop.a_to_b) + "," +
                         format_double(cs_prop.b_to_a) + ") vs conventional (" +
                         format_double(cs_conv.a_to_b) + "," + format_double(cs_conv.b_to_a) +
                         ")");
        // the design conclusion: per-event CPEP no worse for the proposed pair
        int p = order == 4 ? 10 : 18;
        PairReport rc = worst_case_report(conv, 4, 2, p);
        PairReport rp = worst_case_report(prop, 4, 2, p);
        bool cpep_ok = true;
        for (double snr_db = 0.0; snr_db <= 40.0; snr_db += 2.0) {
            double snr = std::pow(10.0, snr_db / 10.0);
            if (cpep_paper(rp.delta1_factor, snr, rp.eb) >
                    cpep_paper(rc.delta1_factor, snr, rc.eb) ||
                cpep_paper(rp.delta2_factor, snr, rp.eb) >
                    cpep_paper(rc.delta2_factor, snr, rc.eb))
                cpep_ok = false;
        }
        detail::push(out, "cpep ordering " + tag, cpep_ok,
                     "proposed CPEP <= conventional CPEP for both error events");
    }
    ToyExampleResult toy = run_toy_example();
    detail::push(out, "index-error example", toy.payload_errors_prop <= toy.payload_errors_conv,
                 "payload bit errors: proposed " + std::to_string(toy.payload_errors_prop) +
                     ", conventional " + std::to_string(toy.payload_errors_conv));
    return out;
}

inline std::vector<CheckResult> run_verification(std::uint64_t seed = 20240901,
                                                 int equivalence_trials_per_point = 250,
                                                 int round_trip_groups = 200) {
    std::vector<CheckResult> out = check_pair_constants();
    auto design = check_design_comparisons();
    out.insert(out.end(), design.begin(), design.end());
    auto rt = check_noiseless_round_trips(round_trip_groups, seed);
    out.insert(out.end(), rt.begin(), rt.end());
    auto eq = check_detector_equivalence(equivalence_trials_per_point, seed);
    out.insert(out.end(), eq.begin(), eq.end());
    return out;
}

}  // namespace dmim
