#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "monocode/error.hpp"
#include "monocode/estimators.hpp"
#include "monocode/param_codec.hpp"

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

QuantizedParams random_params(std::mt19937_64& rng, const Grid& g, std::uint64_t support) {
    QuantizedParams qp;
    qp.support = support;
    std::uint64_t b = rng() % g.size();
    for (std::uint64_t i = 1; i < support; ++i) {
        if (rng() % 3 == 0) b = rng() % (b + 1);
        qp.indices.push_back(b);
    }
    return qp;
}

}  // namespace

TEST(ParamCodec, SingleSymbolCostsNothing) {
    Grid g = Grid::build({GridMode::small_k, 16, 4});
    QuantizedParams qp;
    qp.support = 1;
    BitWriter w;
    EXPECT_EQ(encode_params_differential(qp, g, w), 0u);
    EXPECT_EQ(differential_length(qp), 0u);
    EXPECT_EQ(w.bit_count(), 0u);
    BitString s = w.take();
    BitReader r(s);
    EXPECT_TRUE(decode_params_differential(r, g, 1).indices.empty());
}

TEST(ParamCodec, DifferentialTrace) {
    Grid g = Grid::build({GridMode::small_k, 16, 4});
    ASSERT_EQ(g.size(), 4u);
    QuantizedParams qp{{2, 2}, 3, {}};
    BitWriter w;
    EXPECT_EQ(encode_params_differential(qp, g, w), 5u);
    BitString s = w.take();
    EXPECT_EQ(s.to_string(), "0101" "1");
    BitReader r(s);
    EXPECT_EQ(decode_params_differential(r, g, 3).indices, qp.indices);
}

TEST(ParamCodec, CountsTrace) {
    Grid g = Grid::build({GridMode::small_k, 16, 4});
    QuantizedParams qp{{3, 1, 1}, 4, {}};
    BitWriter w;
    // counts from the largest point down: j=3 -> 1, j=2 -> 0, j=1 -> 2, j=0 -> 0
    EXPECT_EQ(encode_params_counts(qp, g, w), counts_length(qp, g));
    BitString s = w.take();
    EXPECT_EQ(s.to_string(), "0100" "1" "0101" "1");
    BitReader r(s);
    QuantizedParams back = decode_params_counts(r, g, 4);
    EXPECT_EQ(back.indices, qp.indices);
    EXPECT_EQ(back.support, 4u);

    QuantizedParams single;
    single.support = 1;
    EXPECT_EQ(counts_length(single, g), g.size());
}

TEST(ParamCodec, RejectsMalformedInput) {
    Grid g = Grid::build({GridMode::small_k, 16, 4});
    QuantizedParams rising{{1, 2}, 3, {}};
    BitWriter w;
    EXPECT_EQ(code_of([&] { encode_params_differential(rising, g, w); }), Errc::invalid_argument);
    QuantizedParams outside{{4}, 2, {}};
    EXPECT_EQ(code_of([&] { encode_params_counts(outside, g, w); }), Errc::invalid_argument);

    BitWriter bad;
    elias_delta_encode(bad, g.size() + 1);
    BitString s = bad.take();
    BitReader r(s);
    EXPECT_EQ(code_of([&] { decode_params_differential(r, g, 2); }), Errc::corrupt_stream);

    BitWriter many;
    for (std::uint64_t j = 0; j < g.size(); ++j) elias_delta_encode(many, 3);
    BitString m = many.take();
    BitReader rm(m);
    EXPECT_EQ(code_of([&] { decode_params_counts(rm, g, 4); }), Errc::corrupt_stream);

    BitString cut = BitString::from_string("0101");
    BitReader rc(cut);
    EXPECT_EQ(code_of([&] { decode_params_differential(rc, g, 3); }), Errc::truncated_stream);
}

TEST(ParamCodec, FuzzedRoundTrips) {
    std::mt19937_64 rng(41);
    std::vector<GridSpec> specs = {{GridMode::small_k, 4096, 5},
                                   {GridMode::large, 4096, 1, 1, 3},
                                   {GridMode::fast, 1 << 16, 64, 1, 3},
                                   {GridMode::ind_large, 1 << 14, 100, 1, 2}};
    for (const auto& spec : specs) {
        Grid g = Grid::build(spec);
        for (int t = 0; t < 300; ++t) {
            QuantizedParams qp = random_params(rng, g, 1 + rng() % 600);
            BitWriter w;
            const std::size_t a = encode_params_differential(qp, g, w);
            const std::size_t b = encode_params_counts(qp, g, w);
            ASSERT_EQ(a, differential_length(qp));
            ASSERT_EQ(b, counts_length(qp, g));
            BitString s = w.take();
            BitReader r(s);
            ASSERT_EQ(decode_params_differential(r, g, qp.support).indices, qp.indices);
            QuantizedParams back = decode_params_counts(r, g, qp.support + rng() % 5);
            ASSERT_EQ(back.indices, qp.indices);
            ASSERT_EQ(back.support, qp.support);
            ASSERT_EQ(r.remaining(), 0u);
        }
    }
}

TEST(ParamCodec, CountsWinWhenAlphabetExceedsGrid) {
    std::mt19937_64 rng(43);
    Grid g = Grid::build({GridMode::large, 512, 1, 1, 3});
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t k = g.size() * (4 + rng() % 8);
        QuantizedParams qp = random_params(rng, g, k);
        ASSERT_LE(counts_length(qp, g), differential_length(qp));
    }
}

// For k <= n^(1/3), quantized monotone ML estimates cost about (k-1)/2 log2(n log^2 n / k^3) bits each.
TEST(ParamCodec, DifferentialLengthOnQuantizedEstimates) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t n = std::uint64_t{1} << (10 + rng() % 7);
        const auto kmax = static_cast<std::uint64_t>(std::cbrt(double(n)));
        const std::uint64_t k = 2 + rng() % (kmax - 1);
        std::vector<Symbol> x(n);
        std::geometric_distribution<Symbol> geo(1.0 / (1 + rng() % k));
        for (auto& v : x) v = 1 + std::min<Symbol>(geo(rng), k - 1);
        auto c = EmpiricalCounts::from_sequence(x);
        Grid g = Grid::build({GridMode::small_k, n, c.k_max()});
        QuantizedParams qp = quantize_monotone(monotone_ml(c), g);
        const double dn = double(n), kk = double(c.k_max());
        const double bound = (kk - 1) * std::max(0.0, std::log2(dn * std::pow(std::log2(dn), 2) / (kk * kk * kk))) + 64;
        ASSERT_LE(double(differential_length(qp)), bound) << "n=" << n << " k=" << k;
    }
}
