#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bits.hpp"

namespace dmim {

// Subcarrier positions are 1-based within a group, matching the usual
// index-modulation convention.
struct IndexPattern {
    std::vector<int> indices;  // strictly increasing, values in [1, n]

    bool operator==(const IndexPattern&) const = default;
    bool contains(int pos) const {
        for (int i : indices)
            if (i == pos) return true;
        return false;
    }
};

inline void validate_pattern(const IndexPattern& p, int n, int k) {
    if (static_cast<int>(p.indices.size()) != k)
        throw std::invalid_argument("IndexPattern: wrong length");
    for (std::size_t i = 0; i < p.indices.size(); ++i) {
        if (p.indices[i] < 1 || p.indices[i] > n)
            throw std::invalid_argument("IndexPattern: position out of range");
        if (i > 0 && p.indices[i] <= p.indices[i - 1])
            throw std::invalid_argument("IndexPattern: positions must be strictly increasing");
    }
}

inline IndexPattern complement(const IndexPattern& p, int n) {
    IndexPattern out;
    for (int pos = 1; pos <= n; ++pos)
        if (!p.contains(pos)) out.indices.push_back(pos);
    return out;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < std::min(k, n - k); ++i) r = r * static_cast<std::uint64_t>(n - i) / (i + 1);
    return r;
}

// Maps p1-bit index words to mode-A subcarrier patterns; p1 = floor(log2 C(n,k)).
class IndexCodebook {
public:
    IndexCodebook(int n, int k, std::vector<IndexPattern> patterns)
        : n_(n), k_(k), patterns_(std::move(patterns)) {
        if (n < 1 || k < 1 || k > n)
            throw std::invalid_argument("IndexCodebook: need 1 <= k <= n");
        std::uint64_t choices = binomial(n, k);
        p1_ = std::bit_width(choices) - 1;  // floor(log2 C(n,k))
        if (patterns_.size() != (std::uint64_t{1} << p1_))
            throw std::invalid_argument("IndexCodebook: need exactly 2^p1 patterns");
        for (std::size_t i = 0; i < patterns_.size(); ++i) {
            validate_pattern(patterns_[i], n, k);
            for (std::size_t j = 0; j < i; ++j)
                if (patterns_[i] == patterns_[j])
                    throw std::invalid_argument("IndexCodebook: duplicate pattern");
        }
    }

    int n() const { return n_; }
    int k() const { return k_; }
    int p1() const { return p1_; }
    const std::vector<IndexPattern>& patterns() const { return patterns_; }

private:
    int n_, k_, p1_;
    std::vector<IndexPattern> patterns_;
};

inline IndexPattern encode_index_bits(const IndexCodebook& cb, const Bits& bits) {
    if (static_cast<int>(bits.size()) != cb.p1())
        throw std::invalid_argument("encode_index_bits: wrong word length");
    return cb.patterns()[word_from_bits(bits)];
}

inline Bits decode_index_pattern(const IndexCodebook& cb, const IndexPattern& pattern) {
    for (std::size_t i = 0; i < cb.patterns().size(); ++i)
        if (cb.patterns()[i] == pattern)
            return bits_from_word(static_cast<std::uint32_t>(i), cb.p1());
    throw std::invalid_argument("decode_index_pattern: pattern not in codebook");
}

// The n=4, k=2 pattern table used in the reference setup:
// 00 -> {1,2}, 11 -> {3,4}, 10 -> {1,3}, 01 -> {2,4}.
inline IndexCodebook paper_codebook() {
    return IndexCodebook(4, 2,
                         {IndexPattern{{1, 2}}, IndexPattern{{2, 4}},
                          IndexPattern{{1, 3}}, IndexPattern{{3, 4}}});
}

// General deterministic mapping: word i (MSB-first unsigned) selects the i-th
// k-subset of {1..n} in lexicographic order, truncated to the first 2^p1.
inline IndexCodebook combinadic_codebook(int n, int k) {
    if (k < 1 || k >= n)
        throw std::invalid_argument("combinadic_codebook: need 1 <= k < n");
    int p1 = std::bit_width(binomial(n, k)) - 1;
    std::vector<int> comb(static_cast<std::size_t>(k));
    std::iota(comb.begin(), comb.end(), 1);
    std::vector<IndexPattern> patterns;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << p1); ++w) {
        patterns.push_back(IndexPattern{comb});
        // advance to the next combination in lexicographic order
        int i = k - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    return IndexCodebook(n, k, std::move(patterns));
}

// Degenerate single-pattern codebook ({1..n}, p1 = 0); used by the plain-OFDM
// benchmark where every subcarrier is mode A and no index bits are sent.
inline IndexCodebook full_band_codebook(int n) {
    IndexPattern all;
    for (int pos = 1; pos <= n; ++pos) all.indices.push_back(pos);
    return IndexCodebook(n, n, {all});
}

}  // namespace dmim
