#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "constellation.hpp"
#include "index_codebook.hpp"

namespace dmim {

enum class BitMapping { conventional, proposed };

// Static description of one transmission scheme: group geometry, the
// constellation pair, the index codebook and the payload bit arrangement.
struct SchemeConfig {
    int n;
    int k;
    ConstellationPair pair;
    IndexCodebook codebook;
    BitMapping mapping;
    int p1;   // index bits per group
    int p2a;  // mode-A payload bits
    int p2b;  // mode-B payload bits
    int p;    // total bits per group
};

inline SchemeConfig make_scheme_config(int n, int k, ConstellationPair pair,
                                       IndexCodebook codebook, BitMapping mapping) {
    if (n < 1 || k < 1 || k > n)
        throw std::invalid_argument("make_scheme_config: need 1 <= k <= n");
    if (codebook.n() != n || codebook.k() != k)
        throw std::invalid_argument("make_scheme_config: codebook does not match n,k");
    if (mapping == BitMapping::proposed && pair.a.size() != pair.b.size())
        throw std::invalid_argument("make_scheme_config: proposed mapping needs M_A = M_B");
    int p1 = codebook.p1();
    int p2a = k * pair.a.bits_per_symbol();
    int p2b = (n - k) * pair.b.bits_per_symbol();
    int p = p1 + p2a + p2b;
    if (p < 1) throw std::invalid_argument("make_scheme_config: scheme carries no bits");
    return SchemeConfig{n, k, std::move(pair), std::move(codebook), mapping, p1, p2a, p2b, p};
}

// One modulated group: n symbols plus the mode-A pattern they were built with.
// x[a-1] is a mode-A point iff a is in pattern.
struct GroupSymbols {
    std::vector<Complex> x;
    IndexPattern pattern;
};

// A frame is G groups back to back (G*n subcarriers); groups are processed
// independently throughout.
using FrameSymbols = std::vector<GroupSymbols>;

inline std::vector<Bits> split_bits(const Bits& stream, const SchemeConfig& cfg, int groups) {
    if (groups < 1 || stream.size() != static_cast<std::size_t>(groups) * static_cast<std::size_t>(cfg.p))
        throw std::invalid_argument("split_bits: stream length must be groups*p");
    std::vector<Bits> out;
    out.reserve(static_cast<std::size_t>(groups));
    for (int g = 0; g < groups; ++g)
        out.push_back(subrange(stream, static_cast<std::size_t>(g) * cfg.p, cfg.p));
    return out;
}

// b = [b1 | b2A | b2B]: b2A fills pattern positions in increasing order, b2B
// fills the complement positions in increasing order.
inline GroupSymbols modulate_conventional(const Bits& b, const SchemeConfig& cfg) {
    if (b.size() != static_cast<std::size_t>(cfg.p))
        throw std::invalid_argument("modulate_conventional: wrong group length");
    GroupSymbols out;
    out.pattern = encode_index_bits(cfg.codebook, subrange(b, 0, cfg.p1));
    out.x.assign(static_cast<std::size_t>(cfg.n), Complex{});
    int wa = cfg.pair.a.bits_per_symbol();
    int wb = cfg.pair.b.bits_per_symbol();
    std::size_t off = static_cast<std::size_t>(cfg.p1);
    for (int pos : out.pattern.indices) {
        out.x[static_cast<std::size_t>(pos - 1)] = cfg.pair.a.map_bits(subrange(b, off, wa));
        off += static_cast<std::size_t>(wa);
    }
    for (int pos : complement(out.pattern, cfg.n).indices) {
        out.x[static_cast<std::size_t>(pos - 1)] = cfg.pair.b.map_bits(subrange(b, off, wb));
        off += static_cast<std::size_t>(wb);
    }
    return out;
}

// b = [b1 | b2,1 ... b2,n]: substream a maps through M_A when a is a pattern
// position and through M_B otherwise — positional, not pattern-grouped.
inline GroupSymbols modulate_proposed(const Bits& b, const SchemeConfig& cfg) {
    if (b.size() != static_cast<std::size_t>(cfg.p))
        throw std::invalid_argument("modulate_proposed: wrong group length");
    if (cfg.pair.a.size() != cfg.pair.b.size())
        throw std::invalid_argument("modulate_proposed: needs M_A = M_B");
    GroupSymbols out;
    out.pattern = encode_index_bits(cfg.codebook, subrange(b, 0, cfg.p1));
    out.x.assign(static_cast<std::size_t>(cfg.n), Complex{});
    int m = cfg.pair.a.bits_per_symbol();
    for (int pos = 1; pos <= cfg.n; ++pos) {
        Bits word = subrange(b, static_cast<std::size_t>(cfg.p1) +
                                    static_cast<std::size_t>(pos - 1) * m, m);
        const Constellation& c = out.pattern.contains(pos) ? cfg.pair.a : cfg.pair.b;
        out.x[static_cast<std::size_t>(pos - 1)] = c.map_bits(word);
    }
    return out;
}

inline GroupSymbols modulate(const Bits& b, const SchemeConfig& cfg) {
    return cfg.mapping == BitMapping::conventional ? modulate_conventional(b, cfg)
                                                   : modulate_proposed(b, cfg);
}

inline Bits demap_conventional(const GroupSymbols& xhat, const SchemeConfig& cfg) {
    Bits out = decode_index_pattern(cfg.codebook, xhat.pattern);
    out.reserve(static_cast<std::size_t>(cfg.p));
    for (int pos : xhat.pattern.indices) {
        Bits w = cfg.pair.a.demap_exact(xhat.x[static_cast<std::size_t>(pos - 1)]);
        out.insert(out.end(), w.begin(), w.end());
    }
    for (int pos : complement(xhat.pattern, cfg.n).indices) {
        Bits w = cfg.pair.b.demap_exact(xhat.x[static_cast<std::size_t>(pos - 1)]);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

inline Bits demap_proposed(const GroupSymbols& xhat, const SchemeConfig& cfg) {
    Bits out = decode_index_pattern(cfg.codebook, xhat.pattern);
    out.reserve(static_cast<std::size_t>(cfg.p));
    for (int pos = 1; pos <= cfg.n; ++pos) {
        const Constellation& c = xhat.pattern.contains(pos) ? cfg.pair.a : cfg.pair.b;
        Bits w = c.demap_exact(xhat.x[static_cast<std::size_t>(pos - 1)]);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

inline Bits demap(const GroupSymbols& xhat, const SchemeConfig& cfg) {
    return cfg.mapping == BitMapping::conventional ? demap_conventional(xhat, cfg)
                                                   : demap_proposed(xhat, cfg);
}

namespace detail {

// Per-subcarrier candidate costs |y(a) - s h(a)|^2, laid out [pos*M + label].
// Both detectors read these exact values, which keeps their float arithmetic
// identical term by term.
inline void fill_cost_tables(const std::vector<Complex>& y, const std::vector<Complex>& h,
                             const SchemeConfig& cfg, std::vector<double>& cost_a,
                             std::vector<double>& cost_b) {
    std::size_t n = static_cast<std::size_t>(cfg.n);
    std::size_t ma = cfg.pair.a.size(), mb = cfg.pair.b.size();
    cost_a.resize(n * ma);
    cost_b.resize(n * mb);
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (std::size_t lab = 0; lab < ma; ++lab)
            cost_a[pos * ma + lab] = std::norm(y[pos] - cfg.pair.a.points()[lab] * h[pos]);
        for (std::size_t lab = 0; lab < mb; ++lab)
            cost_b[pos * mb + lab] = std::norm(y[pos] - cfg.pair.b.points()[lab] * h[pos]);
    }
}

inline void check_detect_args(const std::vector<Complex>& y, const std::vector<Complex>& h,
                              const SchemeConfig& cfg) {
    if (y.size() != static_cast<std::size_t>(cfg.n) || h.size() != y.size())
        throw std::invalid_argument("detect: y and h must have length n");
}

}  // namespace detail

// Per-subcarrier mode decisions under a fixed (possibly wrong) pattern; ties
// go to the lowest label.
inline GroupSymbols detect_with_pattern(const std::vector<Complex>& y,
                                        const std::vector<Complex>& h,
                                        const IndexPattern& pattern, const SchemeConfig& cfg) {
    detail::check_detect_args(y, h, cfg);
    validate_pattern(pattern, cfg.n, cfg.k);
    GroupSymbols out;
    out.pattern = pattern;
    out.x.assign(static_cast<std::size_t>(cfg.n), Complex{});
    for (int pos = 1; pos <= cfg.n; ++pos) {
        const Constellation& c = pattern.contains(pos) ? cfg.pair.a : cfg.pair.b;
        std::size_t best = 0;
        double best_d = std::norm(y[static_cast<std::size_t>(pos - 1)] -
                                  c.points()[0] * h[static_cast<std::size_t>(pos - 1)]);
        for (std::size_t lab = 1; lab < c.size(); ++lab) {
            double d = std::norm(y[static_cast<std::size_t>(pos - 1)] -
                                 c.points()[lab] * h[static_cast<std::size_t>(pos - 1)]);
            if (d < best_d) {
                best_d = d;
                best = lab;
            }
        }
        out.x[static_cast<std::size_t>(pos - 1)] = c.points()[best];
    }
    return out;
}

// Joint ML over every (pattern, symbol tuple) realization; first minimum in
// (codebook order, then label order, position-major) wins. The optional
// counter reports how many candidates were enumerated.
inline GroupSymbols detect_exhaustive_ml(const std::vector<Complex>& y,
                                         const std::vector<Complex>& h, const SchemeConfig& cfg,
                                         std::uint64_t* candidates_visited = nullptr) {
    detail::check_detect_args(y, h, cfg);
    std::vector<double> cost_a, cost_b;
    detail::fill_cost_tables(y, h, cfg, cost_a, cost_b);
    std::size_t ma = cfg.pair.a.size(), mb = cfg.pair.b.size();
    std::size_t n = static_cast<std::size_t>(cfg.n);

    std::uint64_t visited = 0;
    double best_total = std::numeric_limits<double>::infinity();
    std::size_t best_pattern = 0;
    std::vector<std::size_t> labels(n), best_labels(n, 0);
    std::vector<double> partial(n + 1, 0.0);

    for (std::size_t pi = 0; pi < cfg.codebook.patterns().size(); ++pi) {
        const IndexPattern& pat = cfg.codebook.patterns()[pi];
        // odometer over label tuples, last position fastest; partial[i] holds
        // the metric of the first i positions so only changed suffixes are
        // re-accumulated
        labels.assign(n, 0);
        std::size_t dirty = 0;
        while (true) {
            for (std::size_t pos = dirty; pos < n; ++pos) {
                bool in_a = pat.contains(static_cast<int>(pos) + 1);
                std::size_t m = in_a ? ma : mb;
                const std::vector<double>& cost = in_a ? cost_a : cost_b;
                partial[pos + 1] = partial[pos] + cost[pos * m + labels[pos]];
            }
            ++visited;
            if (partial[n] < best_total) {
                best_total = partial[n];
                best_pattern = pi;
                best_labels = labels;
            }
            std::size_t pos = n;
            while (pos > 0) {
                std::size_t m = pat.contains(static_cast<int>(pos - 1) + 1) ? ma : mb;
                if (++labels[pos - 1] < m) break;
                labels[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
            dirty = pos - 1;
        }
    }
    if (candidates_visited) *candidates_visited = visited;

    GroupSymbols out;
    out.pattern = cfg.codebook.patterns()[best_pattern];
    out.x.assign(n, Complex{});
    for (std::size_t pos = 0; pos < n; ++pos) {
        const Constellation& c =
            out.pattern.contains(static_cast<int>(pos) + 1) ? cfg.pair.a : cfg.pair.b;
        out.x[pos] = c.points()[best_labels[pos]];
    }
    return out;
}

// Exact ML at O(n(M_A+M_B)) cost: the metric separates per subcarrier once the
// pattern is fixed, so per-subcarrier minima plus a pattern-cost scan suffice.
inline GroupSymbols detect_low_complexity_ml(const std::vector<Complex>& y,
                                             const std::vector<Complex>& h,
                                             const SchemeConfig& cfg) {
    detail::check_detect_args(y, h, cfg);
    std::vector<double> cost_a, cost_b;
    detail::fill_cost_tables(y, h, cfg, cost_a, cost_b);
    std::size_t ma = cfg.pair.a.size(), mb = cfg.pair.b.size();
    std::size_t n = static_cast<std::size_t>(cfg.n);

    std::vector<double> min_a(n), min_b(n);
    std::vector<std::size_t> arg_a(n, 0), arg_b(n, 0);
    for (std::size_t pos = 0; pos < n; ++pos) {
        min_a[pos] = cost_a[pos * ma];
        for (std::size_t lab = 1; lab < ma; ++lab)
            if (cost_a[pos * ma + lab] < min_a[pos]) {
                min_a[pos] = cost_a[pos * ma + lab];
                arg_a[pos] = lab;
            }
        min_b[pos] = cost_b[pos * mb];
        for (std::size_t lab = 1; lab < mb; ++lab)
            if (cost_b[pos * mb + lab] < min_b[pos]) {
                min_b[pos] = cost_b[pos * mb + lab];
                arg_b[pos] = lab;
            }
    }

    std::size_t best_pattern = 0;
    double best_total = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (std::size_t pi = 0; pi < cfg.codebook.patterns().size(); ++pi) {
        const IndexPattern& pat = cfg.codebook.patterns()[pi];
        double total = 0.0;
        for (std::size_t pos = 0; pos < n; ++pos)
            total += pat.contains(static_cast<int>(pos) + 1) ? min_a[pos] : min_b[pos];
        if (!have_best || total < best_total) {
            have_best = true;
            best_total = total;
            best_pattern = pi;
        }
    }

    GroupSymbols out;
    out.pattern = cfg.codebook.patterns()[best_pattern];
    out.x.assign(n, Complex{});
    for (std::size_t pos = 0; pos < n; ++pos) {
        bool in_a = out.pattern.contains(static_cast<int>(pos) + 1);
        out.x[pos] = in_a ? cfg.pair.a.points()[arg_a[pos]] : cfg.pair.b.points()[arg_b[pos]];
    }
    return out;
}

inline std::uint64_t ml_search_space_size(const SchemeConfig& cfg) {
    std::uint64_t count = std::uint64_t{1} << cfg.p1;
    for (int i = 0; i < cfg.k; ++i) count *= cfg.pair.a.size();
    for (int i = 0; i < cfg.n - cfg.k; ++i) count *= cfg.pair.b.size();
    return count;
}

}  // namespace dmim
