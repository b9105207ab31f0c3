#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "monocode/codecs.hpp"
#include "monocode/estimators.hpp"

namespace mono {

enum class Family { powerlaw, geometric, slowlog, explicit_theta };

const char* family_name(Family f) noexcept;

struct SourceSpec {
    Family family = Family::geometric;
    // POWERLAW: theta_i = a / i^(1+gamma). SLOWLOG: theta_i = a / (i (log2 i)^(2+gamma)), i >= 2.
    double gamma = 1;
    // GEOMETRIC: theta_i = p (1-p)^(i-1).
    double p = 0.5;
    // EXPLICIT: non-increasing, sums to 1.
    std::vector<double> theta;
    std::uint64_t seed = 1;
};

// splitmix64 of (seed, index): independent stream per trial.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct EntropyValue {
    double bits = 0;
    bool finite = true;
};

// A validated source with its normalizer and series evaluators.
class Source {
public:
    explicit Source(SourceSpec spec);

    const SourceSpec& spec() const { return spec_; }
    long double normalizer() const { return a_; }
    long double theta(Symbol i) const;
    // sum_{i > m} theta_i
    long double survival(long double m) const;
    // sum_{i > m} theta_i log2 i
    long double tail_log_moment(long double m) const;
    // E[log2 X]
    long double log_moment() const { return tail_log_moment(0); }
    // -log2 P_theta(x)
    long double self_information(const EmpiricalCounts& c) const;
    EntropyValue entropy() const;
    // "gamma=1;a=0.6079271019" style description.
    std::string params() const;

private:
    enum class Term { mass, log_moment, entropy };
    long double term(Term t, long double x) const;
    long double integral(Term t, long double from) const;
    long double series(Term t, long double from) const;

    SourceSpec spec_;
    long double a_ = 1;
};

// Inverse-CDF sampler over a lazily extended cumulative table.
class Sampler {
public:
    explicit Sampler(const Source& source);
    Symbol draw(std::mt19937_64& rng);
    std::vector<Symbol> sample(std::size_t n, std::uint64_t seed);
    // Symbol receiving the residual mass above 1 - 2^-60.
    Symbol last_symbol() const { return last_; }

private:
    Symbol lookup(long double u);

    const Source& source_;
    std::vector<long double> cdf_;
    Symbol last_ = 1;
};

std::vector<Symbol> sample(const SourceSpec& spec, std::size_t n);

EntropyValue true_entropy(const SourceSpec& spec);

struct WynerCheck {
    double log_moment = 0;
    double entropy = 0;
    bool pass = false;
};
WynerCheck wyner_check(const SourceSpec& spec, double tolerance = 1e-12);

struct RedundancyReport {
    std::uint64_t n = 0;
    std::size_t trials = 0;
    // Averages of EncodeResult::bits.code_bits().
    double mean_total_bits = 0;
    double stddev_bits = 0;
    // Per-symbol entropy H; NaN when infinite.
    double entropy_bits = 0;
    // n H, or the mean monotone ML description length when the entropy is infinite.
    double entropy_total = 0;
    bool against_ml = false;
    double total_redundancy = 0;
    double per_symbol_redundancy = 0;
    // Standard error of total_redundancy.
    double std_error = 0;
    // Mean of code bits minus -log2 P_theta(x): same expectation as total_redundancy, far less
    // sampling noise. NaN when the entropy is infinite.
    double pointwise_redundancy = 0;
    double pointwise_std_error = 0;
    double bound_value = 0;
    double bound_ratio = 0;
    std::map<std::string, std::size_t> config_histogram;
};

// nullopt selects the full configuration search.
using CodecChoice = std::optional<Mode>;

RedundancyReport measure_redundancy(const SourceSpec& spec, std::uint64_t n, std::size_t trials = 30,
                                    CodecChoice codec = std::nullopt);

// Total-bit bound matched to the family (NaN if none applies).
double family_bound(const Source& source, std::uint64_t n);

std::string config_label(const CodecConfig& c);

struct ExperimentCell {
    SourceSpec spec;
    std::uint64_t n = 0;
    std::size_t trials = 30;
    CodecChoice codec;
};

inline constexpr const char* kCsvHeader =
    "family,params,seed,n,trials,mean_bits,entropy_bits,total_red,per_symbol_red,bound,bound_ratio,mode_histogram";

std::string csv_row(const ExperimentCell& cell, const RedundancyReport& r);
std::vector<RedundancyReport> run_experiment(const std::vector<ExperimentCell>& cells, std::ostream& out);
// Throws Error(io_error) when the file cannot be written.
std::vector<RedundancyReport> run_experiment(const std::vector<ExperimentCell>& cells, const std::string& path);

}  // namespace mono
