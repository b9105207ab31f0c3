#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "monocode/error.hpp"
#include "monocode/lab.hpp"

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

SourceSpec make(Family f, double gamma = 1, double p = 0.5, std::vector<double> theta = {}) {
    SourceSpec s;
    s.family = f;
    s.gamma = gamma;
    s.p = p;
    s.theta = std::move(theta);
    return s;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

// Reference values below were computed independently with mpmath: zeta and its derivative for the
// power law, direct summation plus the integral tail for the slow family.
TEST(Source, FrozenSeriesValues) {
    Source pl(make(Family::powerlaw, 1));
    EXPECT_NEAR(static_cast<double>(pl.normalizer()), 6 / (std::numbers::pi * std::numbers::pi), 1e-15);
    EXPECT_NEAR(pl.entropy().bits, 2.3625895546987438, 1e-13);
    Source half(make(Family::powerlaw, 0.5));
    EXPECT_NEAR(static_cast<double>(half.normalizer()), 0.38279338399942656, 1e-14);
    EXPECT_NEAR(static_cast<double>(half.log_moment()), 2.1715955831664686, 1e-12);
    Source slow(make(Family::slowlog, 1));
    EXPECT_NEAR(static_cast<double>(slow.normalizer()), 1.4535070782632742, 1e-12);
    EXPECT_EQ(slow.theta(1), 0);
    EXPECT_NEAR(true_entropy(make(Family::geometric, 1, 0.25)).bits, 3.2451124978365315, 1e-13);
    EXPECT_NEAR(true_entropy(make(Family::geometric)).bits, 2.0, 1e-14);
    EXPECT_NEAR(true_entropy(make(Family::explicit_theta, 1, 0.5, {0.5, 0.5})).bits, 1.0, 1e-15);
}

TEST(Source, SurvivalAndThetaAgree) {
    for (auto spec : {make(Family::powerlaw, 1), make(Family::powerlaw, 0.3), make(Family::geometric, 1, 0.2),
                      make(Family::slowlog, 0.5)}) {
        Source s(spec);
        long double acc = 0;
        for (Symbol i = 1; i <= 5000; ++i) {
            acc += s.theta(i);
            if (i % 500 == 0) ASSERT_NEAR(static_cast<double>(1 - acc), static_cast<double>(s.survival(i)), 1e-12) << i;
        }
        for (Symbol i = 2; i < 100; ++i) ASSERT_LE(s.theta(i + 1), s.theta(i));
    }
}

TEST(Source, InfiniteEntropyDetected) {
    EXPECT_FALSE(true_entropy(make(Family::slowlog, -0.5)).finite);
    EXPECT_TRUE(true_entropy(make(Family::slowlog, 1)).finite);
}

TEST(Source, RejectsBadSpecs) {
    EXPECT_EQ(code_of([] { Source(make(Family::powerlaw, 0)); }), Errc::invalid_argument);
    EXPECT_EQ(code_of([] { Source(make(Family::geometric, 1, 1.5)); }), Errc::invalid_argument);
    EXPECT_EQ(code_of([] { Source(make(Family::slowlog, -1)); }), Errc::invalid_argument);
    EXPECT_EQ(code_of([] { Source(make(Family::explicit_theta, 1, 0.5, {0.3, 0.7})); }), Errc::invalid_argument);
    EXPECT_EQ(code_of([] { Source(make(Family::explicit_theta, 1, 0.5, {0.5, 0.4})); }), Errc::invalid_argument);
}

TEST(Source, WynerInequality) {
    for (auto spec : {make(Family::powerlaw, 1), make(Family::powerlaw, 3), make(Family::geometric, 1, 0.7),
                      make(Family::explicit_theta, 1, 0.5, {0.4, 0.3, 0.2, 0.1})}) {
        WynerCheck w = wyner_check(spec);
        EXPECT_TRUE(w.pass) << family_name(spec.family);
        EXPECT_LE(w.log_moment, w.entropy + 1e-12);
    }
    // The slow family starts at symbol 2, so theta_1 = 0 < theta_2 and the inequality need not hold.
    WynerCheck slow = wyner_check(make(Family::slowlog, 2));
    EXPECT_FALSE(slow.pass);
    EXPECT_GT(slow.log_moment, slow.entropy);
}

TEST(Sampler, GeometricMean) {
    SourceSpec spec = make(Family::geometric);
    spec.seed = 5;
    auto x = sample(spec, 1000000);
    double mean = 0;
    for (Symbol v : x) mean += static_cast<double>(v);
    mean /= static_cast<double>(x.size());
    // variance (1-p)/p^2 = 2
    EXPECT_NEAR(mean, 2.0, 3 * std::sqrt(2.0 / 1e6));
}

TEST(Sampler, ExplicitFrequencies) {
    std::vector<double> theta = {0.5, 0.25, 0.15, 0.1};
    SourceSpec spec = make(Family::explicit_theta, 1, 0.5, theta);
    spec.seed = 9;
    const std::size_t n = 200000;
    auto x = sample(spec, n);
    std::vector<double> f(4, 0);
    for (Symbol v : x) {
        ASSERT_GE(v, 1u);
        ASSERT_LE(v, 4u);
        f[v - 1] += 1;
    }
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(f[i] / n, theta[i], 3 * std::sqrt(theta[i] * (1 - theta[i]) / n)) << i;
}

TEST(Sampler, DeterministicPerSeed) {
    SourceSpec spec = make(Family::powerlaw, 0.5);
    spec.seed = 3;
    EXPECT_EQ(sample(spec, 5000), sample(spec, 5000));
    SourceSpec other = spec;
    other.seed = 4;
    EXPECT_NE(sample(spec, 5000), sample(other, 5000));
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Sampler, HeavyTailStaysInRange) {
    SourceSpec spec = make(Family::slowlog, -0.5);
    spec.seed = 11;
    Source s(spec);
    Sampler sm(s);
    auto x = sm.sample(20000, 11);
    for (Symbol v : x) {
        ASSERT_GE(v, 2u);
        ASSERT_LE(v, kMaxSymbol);
    }
    EXPECT_GE(sm.last_symbol(), 2u);
}

TEST(Redundancy, DegenerateSourceIsCheap) {
    RedundancyReport r = measure_redundancy(make(Family::explicit_theta, 1, 0.5, {1.0}), 4096, 5);
    EXPECT_EQ(r.entropy_bits, 0.0);
    EXPECT_LT(r.total_redundancy, 64);
    EXPECT_EQ(r.trials, 5u);
}

TEST(Redundancy, GeometricNearBound) {
    RedundancyReport r = measure_redundancy(make(Family::geometric), 4096, 10);
    EXPECT_NEAR(r.entropy_bits, 2.0, 1e-12);
    EXPECT_GT(r.pointwise_redundancy, 0);
    EXPECT_LT(r.pointwise_redundancy, 4 * r.bound_value);
    EXPECT_DOUBLE_EQ(r.bound_value, 72);
    std::size_t total = 0;
    for (const auto& [label, count] : r.config_histogram) total += count;
    EXPECT_EQ(total, 10u);
}

TEST(Redundancy, InfiniteEntropyUsesMlReference) {
    RedundancyReport r = measure_redundancy(make(Family::slowlog, -0.5), 512, 2);
    EXPECT_TRUE(r.against_ml);
    EXPECT_TRUE(std::isnan(r.entropy_bits));
    EXPECT_TRUE(std::isfinite(r.total_redundancy));
}

TEST(Experiment, CsvOutput) {
    std::vector<ExperimentCell> cells;
    for (std::uint64_t n : {256u, 512u}) cells.push_back({make(Family::geometric), n, 3, std::nullopt});
    cells.push_back({make(Family::powerlaw, 1), 256, 2, Mode::fast});
    std::ostringstream a, b;
    auto reports = run_experiment(cells, a);
    run_experiment(cells, b);
    EXPECT_EQ(reports.size(), 3u);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(line_count(a.str()), 4u);
    EXPECT_EQ(a.str().rfind(std::string(kCsvHeader) + "\n", 0), 0u);
    EXPECT_NE(a.str().find("geometric,"), std::string::npos);
    EXPECT_NE(a.str().find("fast(m="), std::string::npos);

    std::ostringstream empty;
    run_experiment({}, empty);
    EXPECT_EQ(empty.str(), std::string(kCsvHeader) + "\n");
}

TEST(Experiment, UnwritablePath) {
    std::vector<ExperimentCell> cells = {{make(Family::geometric), 64, 1, std::nullopt}};
    EXPECT_EQ(code_of([&] { run_experiment(cells, "/nonexistent-dir/out.csv"); }), Errc::io_error);
}

TEST(Experiment, ConfigLabels) {
    EXPECT_EQ(config_label({Mode::fast, 0, 16, true}), "fast(m=16)");
    EXPECT_EQ(config_label({Mode::individual, 0, 0, false}), "individual(plain)");
    EXPECT_EQ(config_label({Mode::small_k, 3, 0, true}).rfind("small_k", 0), 0u);
}
