#include "monocode/param_codec.hpp"

#include "monocode/error.hpp"

namespace mono {

namespace {

void check_indices(const QuantizedParams& qp, const Grid& g) {
    if (qp.support > 0 && qp.indices.size() != qp.support - 1)
        fail(Errc::invalid_argument, "index count does not match support");
    for (std::size_t i = 0; i < qp.indices.size(); ++i) {
        if (qp.indices[i] >= g.size()) fail(Errc::invalid_argument, "grid index out of range");
        if (i > 0 && qp.indices[i] > qp.indices[i - 1]) fail(Errc::invalid_argument, "grid indices not monotone");
    }
}

// Walks runs of equal indices from the largest grid point down; calls f(point, count).
template <class F>
void for_each_count(const QuantizedParams& qp, const Grid& g, F&& f) {
    std::size_t i = 0;
    for (std::uint64_t j = g.size(); j-- > 0;) {
        std::uint64_t c = 0;
        while (i < qp.indices.size() && qp.indices[i] == j) ++c, ++i;
        f(j, c);
    }
}

}  // namespace

std::size_t encode_params_differential(const QuantizedParams& qp, const Grid& g, BitWriter& w) {
    check_indices(qp, g);
    const std::size_t start = w.bit_count();
    const auto& b = qp.indices;
    if (b.empty()) return 0;
    elias_delta_encode(w, b.back() + 1);
    for (std::size_t i = b.size() - 1; i-- > 0;) elias_delta_encode(w, b[i] - b[i + 1] + 1);
    return w.bit_count() - start;
}

std::size_t differential_length(const QuantizedParams& qp) {
    const auto& b = qp.indices;
    if (b.empty()) return 0;
    std::size_t bits = delta_length(b.back() + 1);
    for (std::size_t i = b.size() - 1; i-- > 0;) bits += delta_length(b[i] - b[i + 1] + 1);
    return bits;
}

QuantizedParams decode_params_differential(BitReader& r, const Grid& g, std::uint64_t support, HeadMass head) {
    QuantizedParams qp;
    qp.support = support;
    qp.head = head;
    if (support <= 1) return qp;
    qp.indices.assign(support - 1, 0);
    std::uint64_t b = elias_delta_decode(r) - 1;
    if (b >= g.size()) fail(Errc::corrupt_stream, "decoded grid index out of range");
    qp.indices.back() = b;
    for (std::size_t i = qp.indices.size() - 1; i-- > 0;) {
        std::uint64_t step = elias_delta_decode(r) - 1;
        if (step >= g.size() - b) fail(Errc::corrupt_stream, "decoded grid index out of range");
        b += step;
        qp.indices[i] = b;
    }
    return qp;
}

std::size_t encode_params_counts(const QuantizedParams& qp, const Grid& g, BitWriter& w) {
    check_indices(qp, g);
    const std::size_t start = w.bit_count();
    for_each_count(qp, g, [&](std::uint64_t, std::uint64_t c) { elias_delta_encode(w, c + 1); });
    return w.bit_count() - start;
}

std::size_t counts_length(const QuantizedParams& qp, const Grid& g) {
    std::size_t bits = 0;
    for_each_count(qp, g, [&](std::uint64_t, std::uint64_t c) { bits += delta_length(c + 1); });
    return bits;
}

QuantizedParams decode_params_counts(BitReader& r, const Grid& g, std::uint64_t max_support, HeadMass head) {
    QuantizedParams qp;
    qp.head = head;
    for (std::uint64_t j = g.size(); j-- > 0;) {
        std::uint64_t c = elias_delta_decode(r) - 1;
        if (c > max_support || qp.indices.size() + c >= max_support)
            fail(Errc::corrupt_stream, "parameter counts exceed the alphabet");
        qp.indices.insert(qp.indices.end(), c, j);
    }
    qp.support = qp.indices.size() + 1;
    return qp;
}

}  // namespace mono
