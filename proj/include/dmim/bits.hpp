#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmim {

// One bit per element, values 0/1. The first bit of a word is the most significant.
using Bits = std::vector<std::uint8_t>;

inline std::uint32_t word_from_bits(const Bits& bits) {
    if (bits.size() > 31) throw std::invalid_argument("word_from_bits: more than 31 bits");
    std::uint32_t w = 0;
    for (auto b : bits) {
        if (b > 1) throw std::invalid_argument("word_from_bits: bit value not 0/1");
        w = (w << 1) | b;
    }
    return w;
}

inline Bits bits_from_word(std::uint32_t word, int width) {
    if (width < 0 || width > 31) throw std::invalid_argument("bits_from_word: width out of range");
    if (width < 31 && (word >> width) != 0)
        throw std::invalid_argument("bits_from_word: word does not fit in width");
    Bits out(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i)
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((word >> (width - 1 - i)) & 1u);
    return out;
}

inline std::size_t hamming_distance(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

inline Bits subrange(const Bits& bits, std::size_t pos, std::size_t len) {
    if (pos + len > bits.size()) throw std::invalid_argument("subrange: out of bounds");
    return Bits(bits.begin() + static_cast<std::ptrdiff_t>(pos),
                bits.begin() + static_cast<std::ptrdiff_t>(pos + len));
}

// Accepts '0'/'1' plus space or '_' separators, e.g. "1011 0000".
inline Bits bits_from_string(const std::string& s) {
    Bits out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ' ' || c == '_') continue;
        if (c != '0' && c != '1')
            throw std::invalid_argument("bits_from_string: invalid character");
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

inline std::string bits_to_string(const Bits& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace dmim
