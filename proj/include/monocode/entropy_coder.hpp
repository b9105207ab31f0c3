#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "monocode/bitio.hpp"

namespace mono {

inline constexpr std::uint64_t kMaxFrequencyTotal = std::uint64_t{1} << 30;

// Static integer model. Zero frequencies are allowed for symbols that never occur;
// coding one of them is a model mismatch.
class FrequencyTable {
public:
    explicit FrequencyTable(std::vector<std::uint64_t> freqs);

    std::size_t size() const { return freqs_.size(); }
    std::uint64_t total() const { return cum_.back(); }
    std::uint64_t freq(std::size_t s) const { return freqs_[s]; }
    std::uint64_t cum_low(std::size_t s) const { return cum_[s]; }
    std::uint64_t cum_high(std::size_t s) const { return cum_[s + 1]; }
    // Symbol s with cum_low(s) <= target < cum_high(s).
    std::size_t symbol_for(std::uint64_t target) const;
    // -log2(freq(s)/total)
    long double cost(std::size_t s) const;

private:
    std::vector<std::uint64_t> freqs_;
    std::vector<std::uint64_t> cum_;
};

// Binary arithmetic coder with 62-bit low/high registers and pending-bit carry handling.
class ArithmeticEncoder {
public:
    explicit ArithmeticEncoder(BitWriter& out);

    void encode(std::size_t symbol, const FrequencyTable& table);
    void finish();
    std::size_t bits_written() const { return out_.bit_count() - start_; }

private:
    void emit(bool bit);

    BitWriter& out_;
    std::size_t start_;
    std::uint64_t low_ = 0;
    std::uint64_t high_;
    std::uint64_t pending_ = 0;
    bool finished_ = false;

    friend class ArithmeticDecoder;
};

class ArithmeticDecoder {
public:
    // Decodes from reader's current position; `payload_bits` is the exact encoded length.
    ArithmeticDecoder(BitReader& in, std::size_t payload_bits);

    std::size_t decode(const FrequencyTable& table);
    // Checks that the encoder would have produced exactly payload_bits.
    void finish();

private:
    void shift_in();

    BitReader& in_;
    std::size_t start_;
    std::size_t payload_bits_;
    std::uint64_t low_ = 0;
    std::uint64_t high_;
    std::uint64_t value_ = 0;
    // Mirror of the encoder's output count, used for truncation checks.
    std::size_t emitted_ = 0;
    std::uint64_t pending_ = 0;
};

BitString ac_encode(std::span<const std::size_t> symbols, const FrequencyTable& table);
std::vector<std::size_t> ac_decode(const BitString& bits, const FrequencyTable& table, std::size_t n);
long double ideal_code_length(std::span<const std::size_t> symbols, const FrequencyTable& table);

}  // namespace mono
