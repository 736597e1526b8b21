#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <dmim/analysis.hpp>
#include <dmim/bits.hpp>
#include <dmim/constellation.hpp>

using namespace dmim;
using Catch::Approx;

namespace {
Bits bs(const char* s) { return bits_from_string(s); }
const double kCross = 1.0 + std::sqrt(3.0);
}  // namespace

TEST_CASE("gray qpsk labeling") {
    Constellation c = gray_constellation(4);
    REQUIRE(c.size() == 4);
    REQUIRE(c.bits_per_symbol() == 2);
    REQUIRE(c.map_bits(bs("00")) == Complex(1, 1));
    REQUIRE(c.map_bits(bs("01")) == Complex(-1, 1));
    REQUIRE(c.map_bits(bs("11")) == Complex(-1, -1));
    REQUIRE(c.map_bits(bs("10")) == Complex(1, -1));
    for (std::uint32_t lab = 0; lab < 4; ++lab) {
        Bits word = bits_from_word(lab, 2);
        REQUIRE(c.demap_exact(c.map_bits(word)) == word);
    }
    REQUIRE(average_energy(c) == Approx(2.0));
    REQUIRE(min_intra_distance(c) == Approx(2.0));
}

TEST_CASE("gray 16qam labeling") {
    Constellation c = gray_constellation(16);
    REQUIRE(c.size() == 16);
    REQUIRE(c.bits_per_symbol() == 4);
    REQUIRE(c.map_bits(bs("0000")) == Complex(-3, -3));
    REQUIRE(c.map_bits(bs("1111")) == Complex(1, 1));
    REQUIRE(c.map_bits(bs("1011")) == Complex(3, 1));
    REQUIRE(c.map_bits(bs("0111")) == Complex(-1, 1));
    REQUIRE(c.map_bits(bs("1010")) == Complex(3, 3));
    REQUIRE(average_energy(c) == Approx(10.0));
    REQUIRE(min_intra_distance(c) == Approx(2.0));

    // Gray property: nearest neighbors differ in exactly one label bit
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = i + 1; j < 16; ++j)
            if (std::abs(c.points()[i] - c.points()[j]) < 2.0 + 1e-9)
                REQUIRE(hamming_distance(bits_from_word(static_cast<std::uint32_t>(i), 4),
                                         bits_from_word(static_cast<std::uint32_t>(j), 4)) == 1);
}

TEST_CASE("conventional qpsk pair") {
    ConstellationPair pair = build_conventional_pair(4);
    REQUIRE(pair.a.size() == 4);
    REQUIRE(pair.b.size() == 4);
    // mode A is the Gray QPSK base
    REQUIRE(pair.a.map_bits(bs("00")) == Complex(1, 1));
    // mode B points inherit the labels of the mode-A points listed alongside
    REQUIRE(pair.b.point(0) == Complex(-kCross, 0));
    REQUIRE(pair.b.point(1) == Complex(kCross, 0));
    REQUIRE(pair.b.point(2) == Complex(0, -kCross));
    REQUIRE(pair.b.point(3) == Complex(0, kCross));

    REQUIRE(average_energy(pair.a) == Approx(2.0));
    REQUIRE(average_energy(pair.b) == Approx(7.46410161514).margin(1e-9));
    REQUIRE(min_intra_distance(pair.b) == Approx(3.863703305156273).margin(1e-12));
    REQUIRE(min_inter_distance(pair) == Approx(2.0).margin(1e-12));
    REQUIRE(energy_per_bit(pair, 4, 2, 10) == Approx(1.89282032303).margin(1e-9));
}

TEST_CASE("conventional 16qam pair") {
    ConstellationPair pair = build_conventional_pair(16);
    REQUIRE(pair.a.size() == 16);
    REQUIRE(pair.b.size() == 16);
    // spot-check the listed pairing: b takes the label of the a point listed
    // at the same position (1+j <-> -3+5j, 1-j <-> -3-5j, 3+j <-> 5-3j)
    REQUIRE(pair.b.point(word_from_bits(bs("1111"))) == Complex(-3, 5));
    REQUIRE(pair.b.point(word_from_bits(bs("1101"))) == Complex(-3, -5));
    REQUIRE(pair.b.point(word_from_bits(bs("1011"))) == Complex(5, -3));

    REQUIRE(average_energy(pair.a) == Approx(10.0));
    REQUIRE(average_energy(pair.b) == Approx(30.0));
    REQUIRE(min_intra_distance(pair.b) == Approx(2.0).margin(1e-12));
    REQUIRE(min_inter_distance(pair) == Approx(2.0).margin(1e-12));
    REQUIRE(energy_per_bit(pair, 4, 2, 18) == Approx(4.44444444444).margin(1e-9));
}

TEST_CASE("proposed pairs are shifted copies with identical labels") {
    for (int order : {4, 16}) {
        Constellation base = gray_constellation(order);
        ConstellationPair pair = build_proposed_pair(order);
        const Complex offset(0.5, 0.5);
        for (std::uint32_t lab = 0; lab < base.size(); ++lab) {
            REQUIRE(pair.a.point(lab) == base.point(lab) + offset);
            REQUIRE(pair.b.point(lab) == base.point(lab) - offset);
        }
        REQUIRE(min_intra_distance(pair.a) == Approx(2.0));
        REQUIRE(min_intra_distance(pair.b) == Approx(2.0));
        REQUIRE(min_inter_distance(pair) == Approx(std::sqrt(2.0)).margin(1e-12));
    }
    REQUIRE(average_energy(build_proposed_pair(4).a) == Approx(2.5));
    REQUIRE(energy_per_bit(build_proposed_pair(4), 4, 2, 10) == Approx(1.0).margin(1e-12));
    REQUIRE(average_energy(build_proposed_pair(16).a) == Approx(10.5));
    REQUIRE(energy_per_bit(build_proposed_pair(16), 4, 2, 18) ==
            Approx(2.33333333333).margin(1e-9));
}

TEST_CASE("demap_exact accepts members only") {
    Constellation c = gray_constellation(4);
    REQUIRE(c.demap_exact(Complex(1.0 + 1e-13, 1.0)) == bs("00"));
    REQUIRE_THROWS_AS(c.demap_exact(Complex(0.9, 1.0)), std::invalid_argument);
    REQUIRE_THROWS_AS(c.demap_exact(Complex(0, 0)), std::invalid_argument);
}

TEST_CASE("nearest-neighbor ties go to the lowest label") {
    // origin is equidistant from every QPSK point
    REQUIRE(gray_constellation(4).nearest_index(Complex(0, 0)) == 0);
    // the proposed-pair b point 0.5+0.5j is equidistant from all four a points
    ConstellationPair prop = build_proposed_pair(4);
    REQUIRE(prop.b.point(0) == Complex(0.5, 0.5));
    REQUIRE(cross_demap(prop.b, prop.a, bs("00")) == bs("00"));
}

TEST_CASE("cross demap tables, qpsk") {
    ConstellationPair conv = build_conventional_pair(4);
    ConstellationPair prop = build_proposed_pair(4);
    auto table = [](const Constellation& from, const Constellation& to) {
        std::vector<std::uint32_t> out;
        for (std::uint32_t lab = 0; lab < from.size(); ++lab)
            out.push_back(word_from_bits(cross_demap(from, to, bits_from_word(lab, 2))));
        return out;
    };
    REQUIRE(table(conv.a, conv.b) == std::vector<std::uint32_t>{1, 0, 1, 0});
    REQUIRE(table(conv.b, conv.a) == std::vector<std::uint32_t>{1, 0, 2, 0});
    REQUIRE(table(prop.a, prop.b) == std::vector<std::uint32_t>{0, 0, 0, 0});
    REQUIRE(table(prop.b, prop.a) == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("constructor rejects malformed inputs") {
    std::vector<Complex> pts = {{1, 0}, {0, 1}};
    REQUIRE_THROWS_AS(Constellation(pts, {0}), std::invalid_argument);            // size mismatch
    REQUIRE_THROWS_AS(Constellation(pts, {0, 2}), std::invalid_argument);         // bad label
    REQUIRE_THROWS_AS(Constellation(pts, {1, 1}), std::invalid_argument);         // duplicate label
    REQUIRE_THROWS_AS(Constellation({{1, 0}, {1, 0}}, {0, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(Constellation({{1, 0}, {0, 1}, {1, 1}}, {0, 1, 2}),
                      std::invalid_argument);                                     // not a power of two
    REQUIRE_THROWS_AS(ConstellationPair(gray_constellation(4), gray_constellation(4)),
                      std::invalid_argument);                                     // overlap
    REQUIRE_THROWS_AS(offset_pair(gray_constellation(4), Complex(0, 0)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(gray_constellation(8), std::invalid_argument);
    REQUIRE_THROWS_AS(build_conventional_pair(8), std::invalid_argument);
}

TEST_CASE("labels are storage order") {
    ConstellationPair conv = build_conventional_pair(4);
    for (std::uint32_t lab = 0; lab < 4; ++lab) {
        REQUIRE(conv.b.points()[lab] == conv.b.point(lab));
        REQUIRE(word_from_bits(conv.b.demap_exact(conv.b.point(lab))) == lab);
    }
}

TEST_CASE("zero constellation") {
    Constellation z = zero_constellation();
    REQUIRE(z.size() == 1);
    REQUIRE(z.bits_per_symbol() == 0);
    REQUIRE(z.map_bits({}) == Complex(0, 0));
    REQUIRE(z.demap_exact(Complex(0, 0)).empty());
    REQUIRE(average_energy(z) == 0.0);
    REQUIRE_THROWS_AS(min_intra_distance(z), std::invalid_argument);
}

TEST_CASE("plain-text table rendering") {
    std::string table = format_constellation_table(build_conventional_pair(4).b);
    REQUIRE(table.find("00 -2.73205080757 0") != std::string::npos);
    REQUIRE(table.find("11 0 2.73205080757") != std::string::npos);
    std::string qpsk = format_constellation_table(gray_constellation(4));
    REQUIRE(qpsk.find("00 1 1") != std::string::npos);
    REQUIRE(qpsk.find("10 1 -1") != std::string::npos);
}
