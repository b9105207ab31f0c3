#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mono {

using Symbol = std::uint64_t;

inline constexpr Symbol kMaxSymbol = Symbol{1} << 62;
// Largest alphabet prefix any estimator or codec will materialize densely.
inline constexpr std::uint64_t kMaxDenseAlphabet = std::uint64_t{1} << 24;

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    long double value() const { return static_cast<long double>(num) / static_cast<long double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return static_cast<unsigned __int128>(a.num) * b.den <=> static_cast<unsigned __int128>(b.num) * a.den;
    }
};

class EmpiricalCounts {
public:
    static EmpiricalCounts from_sequence(std::span<const Symbol> x);
    // entries: (symbol, count) with distinct symbols >= 1 and counts >= 1, any order.
    static EmpiricalCounts from_entries(std::vector<std::pair<Symbol, std::uint64_t>> entries);

    std::uint64_t n() const { return n_; }
    Symbol k_max() const { return entries_.empty() ? 0 : entries_.back().first; }
    std::uint64_t count(Symbol i) const;
    // n_x(x > m)
    std::uint64_t tail_count(Symbol m) const;
    // c_x(x > m)
    std::uint64_t distinct_tail(Symbol m) const;
    // Largest occurring symbol <= m, or 0.
    Symbol largest_at_most(Symbol m) const;
    // Counts of symbols 1..limit, index 0 holding symbol 1.
    std::vector<std::uint64_t> dense(Symbol limit) const;
    // Sorted by symbol.
    const std::vector<std::pair<Symbol, std::uint64_t>>& entries() const { return entries_; }

private:
    std::size_t first_above(Symbol m) const;

    std::vector<std::pair<Symbol, std::uint64_t>> entries_;
    // prefix_[i] = sum of counts of entries_[0..i)
    std::vector<std::uint64_t> prefix_;
    std::uint64_t n_ = 0;
};

// theta_i = n_x(i)/n for 1 <= i <= k_max.
std::vector<Rational> ml_estimate(const EmpiricalCounts& c);

// A pooled run of `len` consecutive symbols sharing probability sum/(len*denom).
struct PavaBlock {
    std::uint64_t sum = 0;
    std::uint64_t len = 0;
};

// Pool-adjacent-violators on raw counts; returns non-increasing block means count/denom.
std::vector<Rational> pava(std::span<const std::uint64_t> counts, std::uint64_t denom);
// Sparse variant over symbols 1..limit; zero-count gaps enter as single runs.
std::vector<PavaBlock> pava_blocks(const EmpiricalCounts& c, Symbol limit);
std::vector<Rational> expand_blocks(std::span<const PavaBlock> blocks, std::uint64_t denom);

// Monotone (Grenander) ML over 1..k_max.
std::vector<Rational> monotone_ml(const EmpiricalCounts& c);

std::vector<double> to_doubles(std::span<const Rational> theta);

// -sum log2 theta[x_t - 1]; +infinity if a symbol has zero or missing probability.
double description_length(std::span<const Symbol> x, std::span<const double> theta);
// Same quantity from counts, for rational parameters over 1..theta.size().
double description_length(const EmpiricalCounts& c, std::span<const Rational> theta);

double ml_description_length(const EmpiricalCounts& c);
double monotone_ml_description_length(const EmpiricalCounts& c);

double entropy(std::span<const double> theta);

}  // namespace mono
