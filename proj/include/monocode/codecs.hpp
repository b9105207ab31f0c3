#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "monocode/estimators.hpp"
#include "monocode/grids.hpp"

namespace mono {

enum class Mode : std::uint8_t { small_k = 0, large = 1, fast = 2, individual = 3 };

const char* mode_name(Mode m) noexcept;

// Longest sequence a container may hold; keeps every frequency total within 2^30.
inline constexpr std::uint64_t kMaxSequenceLength = std::uint64_t{1} << 30;

struct CodecConfig {
    Mode mode = Mode::small_k;
    // Alphabet bound for SMALL_K.
    std::uint64_t k_hat = 0;
    // Effective alphabet for FAST and the monotone INDIVIDUAL branch.
    std::uint64_t m = 0;
    // INDIVIDUAL only: true for the monotone-ML branch.
    bool monotone = true;

    friend bool operator==(const CodecConfig&, const CodecConfig&) = default;
};

// Bit counts per container section.
struct LengthBreakdown {
    std::size_t magic = 48;
    std::size_t length = 0;          // delta(n)
    std::size_t mode = 0;            // mode bits plus the INDIVIDUAL flag
    std::size_t alphabet = 0;        // delta(k_hat), delta(m) or delta(k_max)
    std::size_t support = 0;         // explicit support or leader field
    std::size_t tail_mass = 0;       // tail count (sigma = T/n)
    std::size_t tail_distinct = 0;   // c_x(x > m)
    std::size_t tail_list = 0;       // gamma(i) and counts of tail symbols
    std::size_t params = 0;          // quantized parameter description
    std::size_t payload_length = 0;  // delta(payload bits + 1)
    std::size_t payload = 0;
    std::size_t padding = 0;

    // Everything that describes the data: excludes magic, length fields and padding.
    std::size_t code_bits() const {
        return mode + alphabet + support + tail_mass + tail_distinct + tail_list + params + payload;
    }
    std::size_t total_bits() const { return magic + length + code_bits() + payload_length + padding; }
};

struct EncodeResult {
    std::vector<std::uint8_t> bytes;
    CodecConfig config;
    LengthBreakdown bits;
    // -log2 of the sequence under the coded model.
    double ideal_payload_bits = 0;
};

struct DecodeResult {
    std::vector<Symbol> symbols;
    CodecConfig config;
    std::size_t payload_bits = 0;
};

EncodeResult encode(std::span<const Symbol> x, const CodecConfig& config);
EncodeResult encode_small(std::span<const Symbol> x, std::uint64_t k_hat);
EncodeResult encode_large(std::span<const Symbol> x);
EncodeResult encode_fast(std::span<const Symbol> x, std::uint64_t m);
// Best of both branches, searching m for the monotone one.
EncodeResult encode_individual(std::span<const Symbol> x);

// Candidates evaluated by choose_config, in evaluation order.
std::vector<CodecConfig> candidate_configs(const EmpiricalCounts& c);
std::vector<CodecConfig> candidate_configs(const EmpiricalCounts& c, Mode only);
CodecConfig choose_config(std::span<const Symbol> x);
// choose_config followed by encode, without re-running the winner.
EncodeResult compress(std::span<const Symbol> x);
// Best candidate restricted to one mode.
EncodeResult compress(std::span<const Symbol> x, Mode mode);

std::vector<Symbol> decode(std::span<const std::uint8_t> container);
DecodeResult decode_detailed(std::span<const std::uint8_t> container);

}  // namespace mono
