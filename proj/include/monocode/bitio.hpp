#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mono {

// A finished bit sequence: MSB-first bytes plus the exact bit length.
struct BitString {
    std::vector<std::uint8_t> bytes;
    std::size_t bit_count = 0;

    bool bit(std::size_t i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1u; }
    // "0101..." rendering, handy in tests and diagnostics.
    std::string to_string() const;
    static BitString from_string(const std::string& bits);
};

class BitWriter {
public:
    void write_bit(bool b);
    // Writes the low `width` bits of value, most significant first.
    void write_bits(std::uint64_t value, unsigned width);
    void append(const BitString& bits);

    std::size_t bit_count() const { return bit_count_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    BitString take();

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bit_count_ = 0;
};

class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count, std::size_t start = 0);
    explicit BitReader(const BitString& bits) : BitReader(bits.bytes, bits.bit_count) {}
    // The reader borrows its buffer.
    explicit BitReader(BitString&&) = delete;

    bool read_bit();
    // Past the limit this yields zeros instead of throwing; used by the arithmetic decoder.
    bool read_bit_or_zero();
    std::uint64_t read_bits(unsigned width);
    void skip(std::size_t bits);

    std::size_t position() const { return pos_; }
    std::size_t limit() const { return limit_; }
    std::size_t remaining() const { return limit_ - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
    std::size_t limit_;
};

// Number of bits needed to hold any value in [0, v].
unsigned bits_for(std::uint64_t v);
// ceil(log2 v) for v >= 1; 0 for v == 1.
unsigned ceil_log2(std::uint64_t v);
unsigned floor_log2(std::uint64_t v);

void write_fixed(BitWriter& w, std::uint64_t value, unsigned width);
std::uint64_t read_fixed(BitReader& r, unsigned width);

void elias_gamma_encode(BitWriter& w, std::uint64_t i);
void elias_delta_encode(BitWriter& w, std::uint64_t i);
std::uint64_t elias_gamma_decode(BitReader& r);
std::uint64_t elias_delta_decode(BitReader& r);

std::size_t gamma_length(std::uint64_t i);
std::size_t delta_length(std::uint64_t i);

BitString elias_gamma(std::uint64_t i);
BitString elias_delta(std::uint64_t i);

}  // namespace mono
