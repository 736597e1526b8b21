#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"

namespace dmim {

using Complex = std::complex<double>;

// Coordinate tolerance for exact-membership and disjointness checks. All pair
// coordinates are half-integers or involve sqrt(3), so doubles are far more
// accurate than this.
inline constexpr double point_match_tolerance = 1e-12;

inline bool same_point(Complex a, Complex b) {
    return std::abs(a.real() - b.real()) <= point_match_tolerance &&
           std::abs(a.imag() - b.imag()) <= point_match_tolerance;
}

// Labeled signal set. Points are stored so that points()[i] carries the label
// with integer value i; the constructor accepts (point, label) pairs in any
// order and sorts them. This makes "lowest point index" and "lowest label"
// tie-breaking the same rule.
class Constellation {
public:
    Constellation(std::vector<Complex> points, std::vector<std::uint32_t> labels) {
        if (points.empty() || points.size() != labels.size())
            throw std::invalid_argument("Constellation: points/labels size mismatch");
        if (!std::has_single_bit(points.size()))
            throw std::invalid_argument("Constellation: size must be a power of two");
        bits_ = std::bit_width(points.size()) - 1;
        points_.assign(points.size(), Complex{});
        std::vector<bool> seen(points.size(), false);
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (labels[i] >= points.size() || seen[labels[i]])
                throw std::invalid_argument("Constellation: labels must be a permutation of 0..M-1");
            seen[labels[i]] = true;
            points_[labels[i]] = points[i];
        }
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (same_point(points_[i], points_[j]))
                    throw std::invalid_argument("Constellation: points must be pairwise distinct");
    }

    std::size_t size() const { return points_.size(); }
    int bits_per_symbol() const { return bits_; }
    const std::vector<Complex>& points() const { return points_; }
    Complex point(std::uint32_t label) const { return points_.at(label); }

    Complex map_bits(const Bits& bits) const {
        if (static_cast<int>(bits.size()) != bits_)
            throw std::invalid_argument("map_bits: wrong label length");
        return points_[word_from_bits(bits)];
    }

    Bits demap_exact(Complex x) const {
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (same_point(points_[i], x))
                return bits_from_word(static_cast<std::uint32_t>(i), bits_);
        throw std::invalid_argument("demap_exact: point is not a constellation point");
    }

    // Euclidean nearest point; ties resolve to the lowest index (== lowest label).
    std::size_t nearest_index(Complex x) const {
        std::size_t best = 0;
        double best_d = std::norm(x - points_[0]);
        for (std::size_t i = 1; i < points_.size(); ++i) {
            double d = std::norm(x - points_[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

private:
    std::vector<Complex> points_;
    int bits_ = 0;
};

inline Complex map_bits(const Constellation& c, const Bits& bits) { return c.map_bits(bits); }
inline Bits demap_exact(const Constellation& c, Complex x) { return c.demap_exact(x); }

inline Bits cross_demap(const Constellation& from, const Constellation& to, const Bits& bits) {
    if (from.bits_per_symbol() != to.bits_per_symbol())
        throw std::invalid_argument("cross_demap: label lengths differ");
    auto idx = to.nearest_index(from.map_bits(bits));
    return bits_from_word(static_cast<std::uint32_t>(idx), to.bits_per_symbol());
}

inline double average_energy(const Constellation& c) {
    double e = 0.0;
    for (auto p : c.points()) e += std::norm(p);
    return e / static_cast<double>(c.size());
}

inline double min_intra_distance(const Constellation& c) {
    if (c.size() < 2)
        throw std::invalid_argument("min_intra_distance: need at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            best = std::min(best, std::abs(c.points()[i] - c.points()[j]));
    return best;
}

// Two disjoint labeled sets assigned to mode-A and mode-B subcarriers.
struct ConstellationPair {
    Constellation a;
    Constellation b;

    ConstellationPair(Constellation a_, Constellation b_)
        : a(std::move(a_)), b(std::move(b_)) {
        for (auto pa : a.points())
            for (auto pb : b.points())
                if (same_point(pa, pb))
                    throw std::invalid_argument("ConstellationPair: point sets overlap");
    }
};

inline double min_inter_distance(const ConstellationPair& pair) {
    double best = std::numeric_limits<double>::infinity();
    for (auto pa : pair.a.points())
        for (auto pb : pair.b.points())
            best = std::min(best, std::abs(pa - pb));
    return best;
}

// Average transmitted energy per information bit for a group: k mode-A symbols
// and n-k mode-B symbols carry p bits in total (index bits included).
inline double energy_per_bit(const ConstellationPair& pair, int n, int k, int p) {
    if (n < 1 || k < 0 || k > n || p < 1)
        throw std::invalid_argument("energy_per_bit: bad group parameters");
    return (k * average_energy(pair.a) + (n - k) * average_energy(pair.b)) / p;
}

// Gray-labeled base constellations. QPSK: first bit selects the imaginary
// sign, second the real sign, {00->1+j, 01->-1+j, 11->-1-j, 10->1-j}.
// 16QAM: first two bits -> real axis, last two -> imaginary axis, each axis
// Gray-coded {00->-3, 01->-1, 11->+1, 10->+3}.
inline Constellation gray_constellation(int order) {
    std::vector<Complex> pts;
    std::vector<std::uint32_t> labels;
    if (order == 4) {
        for (std::uint32_t lab = 0; lab < 4; ++lab) {
            double re = (lab & 1u) ? -1.0 : 1.0;
            double im = (lab & 2u) ? -1.0 : 1.0;
            pts.push_back({re, im});
            labels.push_back(lab);
        }
    } else if (order == 16) {
        constexpr double pam[4] = {-3.0, -1.0, 3.0, 1.0};  // Gray: 00,01,10,11
        for (std::uint32_t lab = 0; lab < 16; ++lab) {
            pts.push_back({pam[(lab >> 2) & 3u], pam[lab & 3u]});
            labels.push_back(lab);
        }
    } else {
        throw std::invalid_argument("gray_constellation: order must be 4 or 16");
    }
    return Constellation(std::move(pts), std::move(labels));
}

// Single point at the origin carrying zero bits; models inactive subcarriers
// so OFDM-IM and plain OFDM fit the dual-mode machinery.
inline Constellation zero_constellation() {
    return Constellation({Complex{0.0, 0.0}}, {0u});
}

inline ConstellationPair offset_pair(const Constellation& base, Complex offset) {
    std::vector<std::uint32_t> labels(base.size());
    std::vector<Complex> a_pts(base.size()), b_pts(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        labels[i] = static_cast<std::uint32_t>(i);
        a_pts[i] = base.points()[i] + offset;
        b_pts[i] = base.points()[i] - offset;
    }
    return ConstellationPair(Constellation(a_pts, labels), Constellation(b_pts, labels));
}

inline ConstellationPair build_proposed_pair(int order) {
    return offset_pair(gray_constellation(order), Complex{0.5, 0.5});
}

inline ConstellationPair build_conventional_pair(int order) {
    Constellation a = gray_constellation(order);
    // Listed orders expand +/- shorthand with the first sign slot varying
    // slowest, + before -. Each b point takes the label of the a point listed
    // at the same position.
    std::vector<Complex> a_listed, b_listed;
    if (order == 4) {
        const double c = 1.0 + std::sqrt(3.0);
        a_listed = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        b_listed = {{-c, 0}, {0, -c}, {c, 0}, {0, c}};
    } else if (order == 16) {
        a_listed = {{1, 1},  {1, -1},  {-1, 1},  {-1, -1}, {1, 3},  {1, -3},  {-1, 3},  {-1, -3},
                    {3, 1},  {3, -1},  {-3, 1},  {-3, -1}, {3, 3},  {3, -3},  {-3, 3},  {-3, -3}};
        b_listed = {{-3, 5}, {-3, -5}, {-1, 5},  {-1, -5}, {1, 5},  {1, -5},  {3, 5},   {3, -5},
                    {5, -3}, {-5, -3}, {5, -1},  {-5, -1}, {5, 1},  {-5, 1},  {5, 3},   {-5, 3}};
    } else {
        throw std::invalid_argument("build_conventional_pair: order must be 4 or 16");
    }
    std::vector<Complex> b_pts;
    std::vector<std::uint32_t> b_labels;
    for (std::size_t i = 0; i < a_listed.size(); ++i) {
        b_pts.push_back(b_listed[i]);
        b_labels.push_back(word_from_bits(a.demap_exact(a_listed[i])));
    }
    return ConstellationPair(std::move(a), Constellation(std::move(b_pts), std::move(b_labels)));
}

// Plain-text table "label re im", one point per row, 12 significant digits.
inline std::string format_constellation_table(const Constellation& c) {
    std::string out;
    char buf[80];
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::string lab = c.bits_per_symbol() > 0
                              ? bits_to_string(bits_from_word(static_cast<std::uint32_t>(i),
                                                              c.bits_per_symbol()))
                              : std::string("-");
        std::snprintf(buf, sizeof buf, "%s %.12g %.12g\n", lab.c_str(),
                      c.points()[i].real(), c.points()[i].imag());
        out += buf;
    }
    return out;
}

}  // namespace dmim
