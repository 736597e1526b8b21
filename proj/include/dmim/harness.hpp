#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "channel.hpp"
#include "modem.hpp"
#include "random.hpp"
#include "schemes.hpp"

namespace dmim {

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: " + std::string(s));
    return v;
}

template <typename Int>
inline Int parse_integer(std::string_view s) {
    Int v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: " + std::string(s));
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

// Accepts "start:step:stop" (inclusive, step > 0), a comma list of dB values,
// or a single value.
inline std::vector<double> parse_ebn0_spec(std::string_view spec) {
    std::vector<double> grid;
    if (spec.find(':') != std::string_view::npos) {
        auto parts = split(spec, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("ebn0 range must be start:step:stop");
        double start = parse_double(parts[0]);
        double step = parse_double(parts[1]);
        double stop = parse_double(parts[2]);
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("ebn0 range needs step > 0 and stop >= start");
        auto count = static_cast<std::int64_t>((stop - start) / step + 1e-9);
        for (std::int64_t i = 0; i <= count; ++i)
            grid.push_back(start + static_cast<double>(i) * step);
    } else {
        for (auto part : split(spec, ','))
            if (!part.empty()) grid.push_back(parse_double(part));
    }
    return grid;
}

struct SimulationPlan {
    std::string scheme_id = "dm-qpsk-conv-const-conv-map";
    std::vector<double> ebn0_grid_db = {0, 5, 10, 15, 20, 25, 30};
    std::int64_t max_groups = 100000;
    std::int64_t target_errors = 500;
    std::uint64_t seed = 1;
    int workers = 1;
    bool noiseless = false;
    bool timing = false;   // record wall time in elapsed_s; breaks byte-reproducibility
    std::string out;       // empty means stdout

    bool operator==(const SimulationPlan&) const = default;
};

inline void validate_plan(const SimulationPlan& plan) {
    make_scheme(plan.scheme_id);  // throws on unknown id
    if (plan.ebn0_grid_db.empty())
        throw std::invalid_argument("plan: ebn0 grid must be nonempty");
    for (std::size_t i = 1; i < plan.ebn0_grid_db.size(); ++i)
        if (!(plan.ebn0_grid_db[i] > plan.ebn0_grid_db[i - 1]))
            throw std::invalid_argument("plan: ebn0 grid must be ascending");
    if (plan.max_groups < 1) throw std::invalid_argument("plan: max_groups must be >= 1");
    if (plan.target_errors < 1) throw std::invalid_argument("plan: target_errors must be >= 1");
    if (plan.workers < 1) throw std::invalid_argument("plan: workers must be >= 1");
}

struct BerRecord {
    std::string scheme;
    double ebn0_db;
    std::int64_t bits;
    std::int64_t errors;
    double ber;
    std::int64_t groups;
    std::uint64_t seed;
    double elapsed_s;
    bool censored;  // stopped by max_groups with zero errors observed
};

namespace detail {

// Trials are grouped into fixed-size blocks with self-contained random
// streams keyed by (seed, scheme, ebn0 bits, block, role). Block identities
// never depend on the worker count, which is what makes sweeps byte-identical
// under any parallelism.
inline constexpr std::int64_t groups_per_block = 512;

// Allocation-free transcription of the per-group chain
// modulate -> x h + w -> detect_low_complexity_ml -> demap -> hamming,
// operating on constellation labels instead of materialized bit vectors. The
// arithmetic (cost expressions, accumulation order, strict-< tie breaks) is
// copied verbatim from the public functions so the error counts are
// bit-identical to running them; a regression test asserts that equivalence.
inline std::int64_t simulate_block(const Scheme& s, const SimulationPlan& plan, double ebn0_db,
                                   std::int64_t block, std::int64_t groups) {
    const std::uint64_t scheme_key = fnv1a64(s.id);
    const std::uint64_t point_key = std::bit_cast<std::uint64_t>(ebn0_db);
    const std::uint64_t block_key = static_cast<std::uint64_t>(block);
    RandomStream bit_rng({plan.seed, scheme_key, point_key, block_key, 0});
    RandomStream cfr_rng({plan.seed, scheme_key, point_key, block_key, 1});
    RandomStream noise_rng({plan.seed, scheme_key, point_key, block_key, 2});
    NoiseSpec noise{1.0};
    if (!plan.noiseless) noise = n0_from_ebn0(s.eb, ebn0_db);

    const SchemeConfig& cfg = s.cfg;
    const std::size_t n = static_cast<std::size_t>(cfg.n);
    const std::size_t k = static_cast<std::size_t>(cfg.k);
    const std::size_t ma = cfg.pair.a.size(), mb = cfg.pair.b.size();
    const int wa = cfg.pair.a.bits_per_symbol(), wb = cfg.pair.b.bits_per_symbol();
    const Complex* pa = cfg.pair.a.points().data();
    const Complex* pb = cfg.pair.b.points().data();
    const std::size_t num_patterns = cfg.codebook.patterns().size();
    const bool conv_map = cfg.mapping == BitMapping::conventional;

    // per-pattern mode masks and the conventional slot order (mode-A positions
    // ascending, then the complement ascending)
    std::vector<std::uint8_t> in_a(num_patterns * n, 0);
    std::vector<std::size_t> slot_pos(num_patterns * n);
    for (std::size_t pi = 0; pi < num_patterns; ++pi) {
        const IndexPattern& pat = cfg.codebook.patterns()[pi];
        std::size_t slot = 0;
        for (int pos : pat.indices) {
            in_a[pi * n + static_cast<std::size_t>(pos - 1)] = 1;
            slot_pos[pi * n + slot++] = static_cast<std::size_t>(pos - 1);
        }
        for (std::size_t pos = 0; pos < n; ++pos)
            if (!in_a[pi * n + pos]) slot_pos[pi * n + slot++] = pos;
    }

    Bits b(static_cast<std::size_t>(cfg.p));
    std::vector<std::uint32_t> label(n), label_hat(n);
    std::vector<Complex> x(n), h(n), w(n, Complex{}), y(n);
    std::vector<double> cost_a(n * ma), cost_b(n * mb), min_a(n), min_b(n);
    std::vector<std::size_t> arg_a(n), arg_b(n);

    auto word_at = [&b](std::size_t off, int width) {
        std::uint32_t v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | b[off + static_cast<std::size_t>(i)];
        return v;
    };

    std::int64_t errors = 0;
    for (std::int64_t g = 0; g < groups; ++g) {
        for (auto& bit : b) bit = bit_rng.next_bit();

        // map bits to labels and symbols
        const std::size_t tw = word_at(0, cfg.p1);
        std::size_t off = static_cast<std::size_t>(cfg.p1);
        if (conv_map) {
            for (std::size_t slot = 0; slot < n; ++slot) {
                const int width = slot < k ? wa : wb;
                label[slot_pos[tw * n + slot]] = word_at(off, width);
                off += static_cast<std::size_t>(width);
            }
        } else {
            for (std::size_t pos = 0; pos < n; ++pos) {
                label[pos] = word_at(off, wa);
                off += static_cast<std::size_t>(wa);
            }
        }
        for (std::size_t pos = 0; pos < n; ++pos)
            x[pos] = in_a[tw * n + pos] ? pa[label[pos]] : pb[label[pos]];

        for (std::size_t pos = 0; pos < n; ++pos) h[pos] = cfr_rng.next_cgauss(1.0);
        if (!plan.noiseless)
            for (std::size_t pos = 0; pos < n; ++pos) w[pos] = noise_rng.next_cgauss(noise.n0);
        for (std::size_t pos = 0; pos < n; ++pos) y[pos] = x[pos] * h[pos] + w[pos];

        // per-subcarrier candidate costs and minima, as in detect_low_complexity_ml
        for (std::size_t pos = 0; pos < n; ++pos) {
            for (std::size_t lab = 0; lab < ma; ++lab)
                cost_a[pos * ma + lab] = std::norm(y[pos] - pa[lab] * h[pos]);
            for (std::size_t lab = 0; lab < mb; ++lab)
                cost_b[pos * mb + lab] = std::norm(y[pos] - pb[lab] * h[pos]);
        }
        for (std::size_t pos = 0; pos < n; ++pos) {
            min_a[pos] = cost_a[pos * ma];
            arg_a[pos] = 0;
            for (std::size_t lab = 1; lab < ma; ++lab)
                if (cost_a[pos * ma + lab] < min_a[pos]) {
                    min_a[pos] = cost_a[pos * ma + lab];
                    arg_a[pos] = lab;
                }
            min_b[pos] = cost_b[pos * mb];
            arg_b[pos] = 0;
            for (std::size_t lab = 1; lab < mb; ++lab)
                if (cost_b[pos * mb + lab] < min_b[pos]) {
                    min_b[pos] = cost_b[pos * mb + lab];
                    arg_b[pos] = lab;
                }
        }
        std::size_t best = 0;
        double best_total = 0.0;
        bool have_best = false;
        for (std::size_t pi = 0; pi < num_patterns; ++pi) {
            double total = 0.0;
            for (std::size_t pos = 0; pos < n; ++pos)
                total += in_a[pi * n + pos] ? min_a[pos] : min_b[pos];
            if (!have_best || total < best_total) {
                have_best = true;
                best_total = total;
                best = pi;
            }
        }
        for (std::size_t pos = 0; pos < n; ++pos)
            label_hat[pos] = static_cast<std::uint32_t>(in_a[best * n + pos] ? arg_a[pos]
                                                                             : arg_b[pos]);

        // bit errors = index word difference + payload stream difference
        std::int64_t e = std::popcount(static_cast<std::uint32_t>(tw ^ best));
        if (best == tw || !conv_map) {
            for (std::size_t pos = 0; pos < n; ++pos)
                e += std::popcount(label[pos] ^ label_hat[pos]);
        } else {
            for (std::size_t slot = 0; slot < n; ++slot)
                e += std::popcount(label[slot_pos[tw * n + slot]] ^
                                   label_hat[slot_pos[best * n + slot]]);
        }
        errors += e;
    }
    return errors;
}

}  // namespace detail

// Simulates one Eb/N0 point: random bits through modulate -> Rayleigh CFR +
// AWGN -> low-complexity ML -> demap, counting Hamming errors over all p bits
// per group. Stops at target_errors or max_groups, whichever comes first.
inline BerRecord run_point(const SimulationPlan& plan, double ebn0_db) {
    validate_plan(plan);
    const Scheme s = make_scheme(plan.scheme_id);
    const auto t0 = std::chrono::steady_clock::now();

    const std::int64_t gpb = detail::groups_per_block;
    const std::int64_t total_blocks = (plan.max_groups + gpb - 1) / gpb;
    auto block_groups = [&](std::int64_t blk) { return std::min(gpb, plan.max_groups - blk * gpb); };

    std::int64_t errors = 0, groups = 0;
    bool stopped = false;
    for (std::int64_t next = 0; next < total_blocks && !stopped;) {
        const std::int64_t wave = std::min<std::int64_t>(plan.workers, total_blocks - next);
        std::vector<std::future<std::int64_t>> pending;
        for (std::int64_t j = 1; j < wave; ++j) {
            const std::int64_t blk = next + j;
            pending.push_back(std::async(std::launch::async, [&s, &plan, ebn0_db, blk,
                                                              g = block_groups(blk)] {
                return detail::simulate_block(s, plan, ebn0_db, blk, g);
            }));
        }
        std::int64_t first = detail::simulate_block(s, plan, ebn0_db, next, block_groups(next));
        // fold results in block order; once the target is reached, later
        // blocks are dropped even if they were computed in the same wave
        for (std::int64_t j = 0; j < wave; ++j) {
            const std::int64_t e = (j == 0) ? first : pending[static_cast<std::size_t>(j - 1)].get();
            if (stopped) continue;
            errors += e;
            groups += block_groups(next + j);
            if (errors >= plan.target_errors) stopped = true;
        }
        next += wave;
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    BerRecord rec;
    rec.scheme = plan.scheme_id;
    rec.ebn0_db = ebn0_db;
    rec.groups = groups;
    rec.bits = groups * static_cast<std::int64_t>(s.cfg.p);
    rec.errors = errors;
    rec.ber = rec.bits > 0 ? static_cast<double>(errors) / static_cast<double>(rec.bits) : 0.0;
    rec.seed = plan.seed;
    rec.elapsed_s = plan.timing ? elapsed : 0.0;
    rec.censored = errors == 0;
    return rec;
}

inline std::vector<BerRecord> run_sweep(const SimulationPlan& plan) {
    validate_plan(plan);
    std::vector<BerRecord> out;
    out.reserve(plan.ebn0_grid_db.size());
    for (double e : plan.ebn0_grid_db) out.push_back(run_point(plan, e));
    return out;
}

inline double binomial_standard_error(const BerRecord& r) {
    if (r.bits <= 0) return 0.0;
    return std::sqrt(std::max(r.ber * (1.0 - r.ber), 0.0) / static_cast<double>(r.bits));
}

// Soft sanity check: BER should not increase with Eb/N0 beyond Monte Carlo
// noise (2 combined standard errors).
inline std::vector<std::string> monotonicity_warnings(const std::vector<BerRecord>& records) {
    std::vector<std::string> warnings;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const BerRecord& lo = records[i - 1];
        const BerRecord& hi = records[i];
        if (lo.scheme != hi.scheme || !(hi.ebn0_db > lo.ebn0_db)) continue;
        double se_lo = binomial_standard_error(lo);
        double se_hi = binomial_standard_error(hi);
        double slack = 2.0 * std::sqrt(se_lo * se_lo + se_hi * se_hi);
        if (hi.ber > lo.ber + slack)
            warnings.push_back("ber not monotone for " + hi.scheme + ": " +
                               format_double(hi.ber) + " at " + format_double(hi.ebn0_db) +
                               " dB vs " + format_double(lo.ber) + " at " +
                               format_double(lo.ebn0_db) + " dB");
    }
    return warnings;
}

inline const char* csv_header() { return "scheme,ebn0_db,bits,errors,ber,groups,seed,elapsed_s"; }

inline void write_csv(const std::vector<BerRecord>& records, std::ostream& os) {
    os << csv_header() << '\n';
    for (const BerRecord& r : records)
        os << r.scheme << ',' << format_double(r.ebn0_db) << ',' << r.bits << ',' << r.errors
           << ',' << format_double(r.ber) << ',' << r.groups << ',' << r.seed << ','
           << format_double(r.elapsed_s) << '\n';
}

inline void write_csv(const std::vector<BerRecord>& records, const std::string& path) {
    std::ofstream os(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!os) throw std::runtime_error("write_csv: cannot open " + path);
    write_csv(records, os);
    if (!os.flush()) throw std::runtime_error("write_csv: write failed for " + path);
}

inline std::vector<BerRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != csv_header())
        throw std::invalid_argument("read_csv: bad header");
    std::vector<BerRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 8) throw std::invalid_argument("read_csv: bad row: " + line);
        BerRecord r;
        r.scheme = std::string(f[0]);
        r.ebn0_db = parse_double(f[1]);
        r.bits = parse_integer<std::int64_t>(f[2]);
        r.errors = parse_integer<std::int64_t>(f[3]);
        r.ber = parse_double(f[4]);
        r.groups = parse_integer<std::int64_t>(f[5]);
        r.seed = parse_integer<std::uint64_t>(f[6]);
        r.elapsed_s = parse_double(f[7]);
        r.censored = r.errors == 0;
        if (r.ber < 0.0 || r.ber > 1.0 || r.errors > r.bits)
            throw std::invalid_argument("read_csv: inconsistent row: " + line);
        records.push_back(std::move(r));
    }
    return records;
}

// Flat key=value config mirroring the CLI flags.
inline std::string format_config(const SimulationPlan& plan) {
    std::string grid;
    for (std::size_t i = 0; i < plan.ebn0_grid_db.size(); ++i) {
        if (i) grid += ',';
        grid += format_double(plan.ebn0_grid_db[i]);
    }
    std::string out;
    out += "scheme=" + plan.scheme_id + "\n";
    out += "ebn0=" + grid + "\n";
    out += "max-groups=" + std::to_string(plan.max_groups) + "\n";
    out += "target-errors=" + std::to_string(plan.target_errors) + "\n";
    out += "seed=" + std::to_string(plan.seed) + "\n";
    out += "workers=" + std::to_string(plan.workers) + "\n";
    out += std::string("noiseless=") + (plan.noiseless ? "true" : "false") + "\n";
    out += std::string("timing=") + (plan.timing ? "true" : "false") + "\n";
    out += "out=" + plan.out + "\n";
    return out;
}

inline bool parse_bool(std::string_view v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("not a boolean: " + std::string(v));
}

inline SimulationPlan parse_config(const std::string& text) {
    SimulationPlan plan;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "scheme") plan.scheme_id = value;
        else if (key == "ebn0") plan.ebn0_grid_db = parse_ebn0_spec(value);
        else if (key == "max-groups") plan.max_groups = parse_integer<std::int64_t>(value);
        else if (key == "target-errors") plan.target_errors = parse_integer<std::int64_t>(value);
        else if (key == "seed") plan.seed = parse_integer<std::uint64_t>(value);
        else if (key == "workers") plan.workers = parse_integer<int>(value);
        else if (key == "noiseless") plan.noiseless = parse_bool(value);
        else if (key == "timing") plan.timing = parse_bool(value);
        else if (key == "out") plan.out = value;
        else throw std::invalid_argument("unknown config key: " + key);
    }
    validate_plan(plan);
    return plan;
}

inline SimulationPlan load_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_config: cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

}  // namespace dmim
