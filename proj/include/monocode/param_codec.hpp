#pragma once

#include <cstddef>
#include <cstdint>

#include "monocode/bitio.hpp"
#include "monocode/grids.hpp"

namespace mono {

// Differential code: delta(b_k + 1), then delta(b_i - b_{i+1} + 1) for i = k-1 down to 2.
std::size_t encode_params_differential(const QuantizedParams& qp, const Grid& g, BitWriter& w);
QuantizedParams decode_params_differential(BitReader& r, const Grid& g, std::uint64_t support, HeadMass head = {});
std::size_t differential_length(const QuantizedParams& qp);

// Counts code: delta(count_j + 1) for every grid point j, largest point first.
std::size_t encode_params_counts(const QuantizedParams& qp, const Grid& g, BitWriter& w);
QuantizedParams decode_params_counts(BitReader& r, const Grid& g, std::uint64_t max_support, HeadMass head = {});
std::size_t counts_length(const QuantizedParams& qp, const Grid& g);

}  // namespace mono
