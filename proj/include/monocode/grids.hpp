#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "monocode/estimators.hpp"

namespace mono {

// Grid points are integers in units of 2^-62.
inline constexpr unsigned kUnitBits = 62;
inline constexpr std::uint64_t kUnit = std::uint64_t{1} << kUnitBits;
// Grids above this many points are refused.
inline constexpr std::uint64_t kMaxGridPoints = std::uint64_t{1} << 40;

enum class GridMode { small_k, large, fast, ind_small, ind_large };

struct GridSpec {
    GridMode mode = GridMode::small_k;
    std::uint64_t n = 2;
    // k for SMALL_K, m for FAST / IND_*; unused by LARGE.
    std::uint64_t k_or_m = 1;
    // alpha = alpha_num / alpha_den (LARGE, FAST, IND_LARGE).
    std::uint32_t alpha_num = 1;
    std::uint32_t alpha_den = 3;
};

class Grid {
public:
    struct Interval {
        std::uint64_t lower;    // 2^(j-1-J) in units
        std::uint64_t spacing;  // Delta_j in units
        std::uint64_t count;    // points in this interval
        std::uint64_t first;    // global index of the first point
    };

    static Grid build(const GridSpec& spec);

    const GridSpec& spec() const { return spec_; }
    std::uint64_t size() const { return size_; }
    unsigned interval_count() const { return static_cast<unsigned>(intervals_.size()); }
    // 1-based interval index j, as in the construction.
    const Interval& interval(unsigned j) const { return intervals_[j - 1]; }
    unsigned interval_of(std::uint64_t b) const;
    std::uint64_t point(std::uint64_t b) const;
    std::uint64_t first_point() const { return intervals_.front().lower; }
    // Index of the largest point <= v; nullopt if v is below the first point.
    std::optional<std::uint64_t> floor_index(std::uint64_t v) const;
    // Interval holding value v (values below the grid map to 1, values >= 1 to J).
    unsigned interval_of_value(std::uint64_t v) const;
    std::vector<std::uint64_t> points() const;

private:
    GridSpec spec_;
    std::vector<Interval> intervals_;
    std::uint64_t size_ = 0;
};

// Mass reserved for the quantized head: head_num / head_den (1 when there is no tail).
struct HeadMass {
    std::uint64_t num = 1;
    std::uint64_t den = 1;
};

struct QuantizedParams {
    // b_i for i = 2..support, so indices[0] belongs to i = 2. Non-increasing.
    std::vector<std::uint64_t> indices;
    std::uint64_t support = 0;
    HeadMass head;

    // Sum of the grid points of entries 2..support, in units.
    unsigned __int128 point_sum(const Grid& g) const;
    // theta'_1 = head - point_sum, as a numerator over head.den * 2^62.
    __int128 leading_scaled(const Grid& g) const;
    // theta'_i for i = 1..support.
    std::vector<long double> values(const Grid& g) const;

    friend bool operator==(const QuantizedParams&, const QuantizedParams&) = default;
};

// Quantizes a monotone vector (summing to head) onto g, smallest component first.
QuantizedParams quantize_monotone(std::span<const Rational> theta, const Grid& g, HeadMass head = {});

// n * sum theta_i log2(theta_i / theta'_i), in bits.
double kl_quantization_cost(std::span<const Rational> theta, const QuantizedParams& qp, const Grid& g,
                            std::uint64_t n);

}  // namespace mono
