#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "monocode/error.hpp"
#include "monocode/estimators.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {

std::vector<double> as_doubles(const std::vector<Rational>& t) { return to_doubles(t); }

std::vector<Symbol> random_sequence(std::mt19937_64& rng, std::size_t n, Symbol k) {
    std::vector<Symbol> x(n);
    for (auto& v : x) v = 1 + rng() % k;
    return x;
}

}  // namespace

TEST(EmpiricalCounts, Examples) {
    std::vector<Symbol> a = {1, 1, 2, 1};
    auto c = EmpiricalCounts::from_sequence(a);
    EXPECT_EQ(c.n(), 4u);
    EXPECT_EQ(c.k_max(), 2u);
    EXPECT_EQ(c.count(1), 3u);
    EXPECT_EQ(c.count(2), 1u);

    std::vector<Symbol> b = {2, 2};
    auto d = EmpiricalCounts::from_sequence(b);
    EXPECT_EQ(d.k_max(), 2u);
    EXPECT_EQ(d.count(1), 0u);

    std::vector<Symbol> e = {1, 5, 1};
    auto f = EmpiricalCounts::from_sequence(e);
    EXPECT_EQ(f.tail_count(2), 1u);
    EXPECT_EQ(f.distinct_tail(2), 1u);
    EXPECT_EQ(f.largest_at_most(4), 1u);
}

TEST(EmpiricalCounts, RejectsZeroSymbol) {
    std::vector<Symbol> x = {1, 0, 2};
    try {
        EmpiricalCounts::from_sequence(x);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_argument);
    }
}

TEST(EmpiricalCounts, TailInvariants) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        auto x = random_sequence(rng, 1 + rng() % 300, 1 + rng() % 60);
        auto c = EmpiricalCounts::from_sequence(x);
        auto dense = c.dense(c.k_max());
        std::uint64_t total = 0;
        for (auto v : dense) total += v;
        EXPECT_EQ(total, c.n());
        for (Symbol m = 0; m <= c.k_max() + 1; ++m) {
            std::uint64_t tail = 0, distinct = 0;
            for (Symbol i = m + 1; i <= c.k_max(); ++i) tail += dense[i - 1], distinct += dense[i - 1] > 0;
            ASSERT_EQ(c.tail_count(m), tail);
            ASSERT_EQ(c.distinct_tail(m), distinct);
        }
    }
}

TEST(MlEstimate, Examples) {
    auto c1 = EmpiricalCounts::from_entries({{1, 3}, {2, 1}});
    EXPECT_EQ(as_doubles(ml_estimate(c1)), (std::vector<double>{0.75, 0.25}));
    auto c2 = EmpiricalCounts::from_entries({{1, 2}, {2, 2}});
    EXPECT_EQ(as_doubles(ml_estimate(c2)), (std::vector<double>{0.5, 0.5}));
    auto c3 = EmpiricalCounts::from_entries({{2, 2}});
    EXPECT_EQ(as_doubles(ml_estimate(c3)), (std::vector<double>{0, 1}));
}

TEST(MonotoneMl, Examples) {
    EXPECT_EQ(as_doubles(monotone_ml(EmpiricalCounts::from_entries({{1, 3}, {2, 1}}))),
              (std::vector<double>{0.75, 0.25}));
    EXPECT_EQ(as_doubles(monotone_ml(EmpiricalCounts::from_entries({{1, 1}, {2, 3}}))),
              (std::vector<double>{0.5, 0.5}));
    auto t = monotone_ml(EmpiricalCounts::from_entries({{2, 2}}));
    EXPECT_EQ(as_doubles(t), (std::vector<double>{0.5, 0.5}));
    EXPECT_GE(t.back(), (Rational{1, 4}));
}

TEST(MonotoneMl, ExactSumAndMonotone) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        auto x = random_sequence(rng, 1 + rng() % 500, 1 + rng() % 100);
        auto c = EmpiricalCounts::from_sequence(x);
        auto blocks = pava_blocks(c, c.k_max());
        std::uint64_t sum = 0, len = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            sum += blocks[i].sum, len += blocks[i].len;
            if (i > 0) {
                // block means are non-increasing after pooling
                ASSERT_GE(static_cast<unsigned __int128>(blocks[i - 1].sum) * blocks[i].len,
                          static_cast<unsigned __int128>(blocks[i].sum) * blocks[i - 1].len);
            }
        }
        EXPECT_EQ(sum, c.n());
        EXPECT_EQ(len, c.k_max());
        auto theta = monotone_ml(c);
        for (std::size_t i = 1; i < theta.size(); ++i) ASSERT_LE(theta[i], theta[i - 1]);
    }
}

TEST(MonotoneMl, SparseMatchesDense) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        std::vector<Symbol> x(1 + rng() % 200);
        for (auto& v : x) v = 1 + (rng() % 8 == 0 ? rng() % 5000 : rng() % 20);
        auto c = EmpiricalCounts::from_sequence(x);
        auto dense = pava(c.dense(c.k_max()), c.n());
        auto sparse = expand_blocks(pava_blocks(c, c.k_max()), c.n());
        ASSERT_EQ(dense.size(), sparse.size());
        for (std::size_t i = 0; i < dense.size(); ++i) ASSERT_EQ(dense[i], sparse[i]);
    }
}

TEST(MonotoneMl, MatchesExhaustiveSearchSmall) {
    for (unsigned k = 1; k <= 3; ++k) {
        for (unsigned n = 1; n <= 5; ++n) {
            oracle::for_each_composition(n, k, [&](const std::vector<std::uint64_t>& counts) {
                auto theta = to_doubles(pava(counts, n));
                double ll = oracle::log_likelihood(counts, theta);
                double best = oracle::monotone_ml_search(counts);
                EXPECT_NEAR(ll, best, 1e-9);
                EXPECT_LE(best, ll + 1e-12);
            });
        }
    }
}

TEST(MonotoneMl, LastBlockAtLeastOneOverKn) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 2000; ++t) {
        auto x = random_sequence(rng, 1 + rng() % 64, 1 + rng() % 64);
        auto c = EmpiricalCounts::from_sequence(x);
        auto theta = monotone_ml(c);
        ASSERT_GE(theta.back(), (Rational{1, c.k_max() * c.n()}));
    }
}

TEST(DescriptionLength, Examples) {
    std::vector<Symbol> a = {1, 1};
    std::vector<double> one = {1.0};
    EXPECT_EQ(description_length(a, one), 0.0);
    std::vector<Symbol> b = {1, 2};
    std::vector<double> half = {0.5, 0.5};
    EXPECT_EQ(description_length(b, half), 2.0);
    std::vector<Symbol> c = {1, 1, 1, 2};
    std::vector<double> skew = {0.75, 0.25};
    EXPECT_NEAR(description_length(c, skew), 3 * std::log2(4.0 / 3) + 2, 1e-12);
    std::vector<Symbol> d = {1, 3};
    EXPECT_TRUE(std::isinf(description_length(d, half)));
    std::vector<double> zero = {1.0, 0.0};
    EXPECT_TRUE(std::isinf(description_length(b, zero)));
}

TEST(DescriptionLength, MonotoneNeverShorterThanMl) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        auto x = random_sequence(rng, 1 + rng() % 200, 1 + rng() % 30);
        auto c = EmpiricalCounts::from_sequence(x);
        double ml = ml_description_length(c);
        double mono = monotone_ml_description_length(c);
        auto theta = ml_estimate(c);
        bool monotone = std::is_sorted(theta.rbegin(), theta.rend());
        EXPECT_GE(mono, ml - 1e-9);
        if (monotone) EXPECT_NEAR(mono, ml, 1e-9);
        else EXPECT_GT(mono, ml + 1e-12);
        EXPECT_NEAR(mono, description_length(x, to_doubles(monotone_ml(c))), 1e-7 * (1 + mono));
    }
}

TEST(Entropy, Examples) {
    std::vector<double> one = {1.0}, half = {0.5, 0.5};
    EXPECT_EQ(entropy(one), 0.0);
    EXPECT_EQ(entropy(half), 1.0);
    std::vector<double> geo;
    for (int i = 1; i <= 80; ++i) geo.push_back(std::ldexp(1.0, -i));
    EXPECT_NEAR(entropy(geo), 2.0, 1e-15);
}
