#include <gtest/gtest.h>

#include <random>

#include "monocode/bitio.hpp"
#include "monocode/error.hpp"

using namespace mono;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::invalid_argument;
}

// Reference gamma/delta built from the textbook definition on strings.
std::string binary(std::uint64_t v) {
    std::string s;
    for (; v; v >>= 1) s.insert(s.begin(), static_cast<char>('0' + (v & 1)));
    return s;
}
std::string ref_gamma(std::uint64_t i) {
    std::string b = binary(i);
    return std::string(b.size() - 1, '0') + b;
}
std::string ref_delta(std::uint64_t i) {
    std::string b = binary(i);
    return ref_gamma(b.size()) + b.substr(1);
}

}  // namespace

TEST(Gamma, KnownCodewords) {
    EXPECT_EQ(elias_gamma(1).to_string(), "1");
    EXPECT_EQ(elias_gamma(2).to_string(), "010");
    EXPECT_EQ(elias_gamma(5).to_string(), "00101");
}

TEST(Delta, KnownCodewords) {
    EXPECT_EQ(elias_delta(1).to_string(), "1");
    EXPECT_EQ(elias_delta(17).to_string(), "001010001");
    EXPECT_EQ(elias_delta(17).bit_count, 9u);
}

TEST(Gamma, ZeroRejected) {
    BitWriter w;
    EXPECT_EQ(code_of([&] { elias_gamma_encode(w, 0); }), Errc::invalid_argument);
    EXPECT_EQ(code_of([&] { elias_delta_encode(w, 0); }), Errc::invalid_argument);
}

TEST(Gamma, DecodeKnown) {
    BitString one = BitString::from_string("1"), five = BitString::from_string("00101");
    BitReader r1(one);
    EXPECT_EQ(elias_gamma_decode(r1), 1u);
    BitReader r2(five);
    EXPECT_EQ(elias_gamma_decode(r2), 5u);
}

TEST(Elias, MatchesStringReference) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 2000; ++t) {
        std::uint64_t i = (rng() >> (rng() % 64)) | 1;
        EXPECT_EQ(elias_gamma(i).to_string(), ref_gamma(i));
        EXPECT_EQ(elias_delta(i).to_string(), ref_delta(i));
    }
}

TEST(Elias, RoundTripAndLengths) {
    std::vector<std::uint64_t> values;
    for (std::uint64_t i = 1; i <= (1u << 16); ++i) values.push_back(i);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20000; ++t) values.push_back(1 + rng() % (std::uint64_t{1} << 30));
    values.push_back(~std::uint64_t{0});
    for (std::uint64_t i : values) {
        BitWriter w;
        elias_gamma_encode(w, i);
        elias_delta_encode(w, i);
        BitString s = w.take();
        unsigned fl = floor_log2(i);
        ASSERT_EQ(gamma_length(i), 1 + 2 * fl);
        ASSERT_EQ(delta_length(i), fl + 2 * floor_log2(fl + 1) + 1);
        ASSERT_EQ(s.bit_count, gamma_length(i) + delta_length(i));
        if (i >= 32) {
            ASSERT_LE(delta_length(i), gamma_length(i));
        }
        BitReader r(s);
        ASSERT_EQ(elias_gamma_decode(r), i);
        ASSERT_EQ(elias_delta_decode(r), i);
        ASSERT_EQ(r.remaining(), 0u);
    }
}

TEST(Elias, ConcatenationIsPrefixFree) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::pair<bool, std::uint64_t>> items;
        BitWriter w;
        for (int j = 0; j < 50; ++j) {
            bool delta = rng() & 1;
            std::uint64_t v = 1 + (rng() >> (rng() % 64));
            items.emplace_back(delta, v);
            delta ? elias_delta_encode(w, v) : elias_gamma_encode(w, v);
        }
        BitString s = w.take();
        BitReader r(s);
        for (auto [delta, v] : items) ASSERT_EQ(delta ? elias_delta_decode(r) : elias_gamma_decode(r), v);
        EXPECT_EQ(r.remaining(), 0u);
    }
}

TEST(Elias, TruncatedCodewordsFail) {
    BitString g = elias_gamma(1000);
    g.bit_count -= 1;
    BitReader r(g);
    EXPECT_EQ(code_of([&] { elias_gamma_decode(r); }), Errc::truncated_stream);
    BitString d = elias_delta(1000);
    d.bit_count -= 3;
    BitReader r2(d);
    EXPECT_EQ(code_of([&] { elias_delta_decode(r2); }), Errc::truncated_stream);
}

TEST(Elias, OverlongPrefixIsCorrupt) {
    BitString s = BitString::from_string(std::string(70, '0') + "1");
    BitReader r(s);
    EXPECT_EQ(code_of([&] { elias_gamma_decode(r); }), Errc::corrupt_stream);
}

TEST(Fixed, Examples) {
    BitWriter w;
    write_fixed(w, 5, 4);
    write_fixed(w, 0, 1);
    write_fixed(w, 3, ceil_log2(16));
    BitString s = w.take();
    EXPECT_EQ(s.to_string(), "0101" "0" "0011");
    BitReader r(s);
    EXPECT_EQ(read_fixed(r, 4), 5u);
    EXPECT_EQ(read_fixed(r, 1), 0u);
    EXPECT_EQ(read_fixed(r, 4), 3u);
}

TEST(Fixed, OutOfRangeRejected) {
    BitWriter w;
    EXPECT_EQ(code_of([&] { write_fixed(w, 16, 4); }), Errc::invalid_argument);
    EXPECT_EQ(code_of([&] { write_fixed(w, 1, 0); }), Errc::invalid_argument);
    EXPECT_NO_THROW(write_fixed(w, 0, 0));
    EXPECT_EQ(w.bit_count(), 0u);
}

TEST(BitIo, MsbFirstAndLengthAccounting) {
    BitWriter w;
    w.write_bit(true);
    w.write_bits(0b0110, 4);
    w.write_bits(0xABCDEF, 24);
    EXPECT_EQ(w.bit_count(), 29u);
    EXPECT_EQ(w.bytes()[0], 0b10110101);
    BitString s = w.take();
    BitReader r(s);
    EXPECT_TRUE(r.read_bit());
    EXPECT_EQ(r.read_bits(4), 0b0110u);
    EXPECT_EQ(r.read_bits(24), 0xABCDEFu);
    EXPECT_EQ(code_of([&] { r.read_bit(); }), Errc::truncated_stream);
    EXPECT_FALSE(r.read_bit_or_zero());
}

TEST(BitIo, AppendUnaligned) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        std::string a, b;
        for (int i = 0, na = rng() % 40; i < na; ++i) a += static_cast<char>('0' + (rng() & 1));
        for (int i = 0, nb = rng() % 40; i < nb; ++i) b += static_cast<char>('0' + (rng() & 1));
        BitWriter w;
        w.append(BitString::from_string(a));
        w.append(BitString::from_string(b));
        EXPECT_EQ(w.take().to_string(), a + b);
    }
}

TEST(BitIo, LogHelpers) {
    EXPECT_EQ(bits_for(0), 0u);
    EXPECT_EQ(bits_for(1), 1u);
    EXPECT_EQ(bits_for(16), 5u);
    EXPECT_EQ(ceil_log2(1), 0u);
    EXPECT_EQ(ceil_log2(16), 4u);
    EXPECT_EQ(ceil_log2(17), 5u);
    EXPECT_EQ(floor_log2(17), 4u);
    EXPECT_EQ(code_of([] { floor_log2(0); }), Errc::invalid_argument);
}
