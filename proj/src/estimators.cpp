#include "monocode/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monocode/error.hpp"

namespace mono {

namespace {

// a.sum/a.len < b.sum/b.len
bool mean_less(const PavaBlock& a, const PavaBlock& b) {
    return static_cast<unsigned __int128>(a.sum) * b.len < static_cast<unsigned __int128>(b.sum) * a.len;
}

void push_pooled(std::vector<PavaBlock>& stack, PavaBlock b) {
    while (!stack.empty() && mean_less(stack.back(), b)) {
        b.sum += stack.back().sum;
        b.len += stack.back().len;
        stack.pop_back();
    }
    stack.push_back(b);
}

}  // namespace

EmpiricalCounts EmpiricalCounts::from_sequence(std::span<const Symbol> x) {
    std::vector<Symbol> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<Symbol, std::uint64_t>> entries;
    for (Symbol s : sorted) {
        if (s == 0 || s > kMaxSymbol) fail(Errc::invalid_argument, "symbols must lie in [1, 2^62]");
        if (!entries.empty() && entries.back().first == s)
            ++entries.back().second;
        else
            entries.emplace_back(s, 1);
    }
    return from_entries(std::move(entries));
}

EmpiricalCounts EmpiricalCounts::from_entries(std::vector<std::pair<Symbol, std::uint64_t>> entries) {
    std::sort(entries.begin(), entries.end());
    EmpiricalCounts c;
    c.prefix_.reserve(entries.size() + 1);
    c.prefix_.push_back(0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto [s, k] = entries[i];
        if (s == 0 || s > kMaxSymbol) fail(Errc::invalid_argument, "symbols must lie in [1, 2^62]");
        if (k == 0) fail(Errc::invalid_argument, "entry with zero count");
        if (i > 0 && entries[i - 1].first == s) fail(Errc::invalid_argument, "duplicate symbol entry");
        c.n_ += k;
        c.prefix_.push_back(c.n_);
    }
    c.entries_ = std::move(entries);
    return c;
}

std::size_t EmpiricalCounts::first_above(Symbol m) const {
    auto it = std::upper_bound(entries_.begin(), entries_.end(), m,
                               [](Symbol v, const auto& e) { return v < e.first; });
    return static_cast<std::size_t>(it - entries_.begin());
}

std::uint64_t EmpiricalCounts::count(Symbol i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const auto& e, Symbol v) { return e.first < v; });
    return it != entries_.end() && it->first == i ? it->second : 0;
}

std::uint64_t EmpiricalCounts::tail_count(Symbol m) const { return n_ - prefix_[first_above(m)]; }

std::uint64_t EmpiricalCounts::distinct_tail(Symbol m) const { return entries_.size() - first_above(m); }

Symbol EmpiricalCounts::largest_at_most(Symbol m) const {
    std::size_t i = first_above(m);
    return i == 0 ? 0 : entries_[i - 1].first;
}

std::vector<std::uint64_t> EmpiricalCounts::dense(Symbol limit) const {
    if (limit > kMaxDenseAlphabet) fail(Errc::invalid_argument, "alphabet too large for a dense view");
    std::vector<std::uint64_t> out(limit, 0);
    for (auto [s, k] : entries_) {
        if (s > limit) break;
        out[s - 1] = k;
    }
    return out;
}

std::vector<Rational> ml_estimate(const EmpiricalCounts& c) {
    std::vector<Rational> theta;
    for (std::uint64_t k : c.dense(c.k_max())) theta.push_back({k, c.n()});
    return theta;
}

std::vector<Rational> pava(std::span<const std::uint64_t> counts, std::uint64_t denom) {
    std::vector<PavaBlock> stack;
    for (std::uint64_t k : counts) push_pooled(stack, {k, 1});
    return expand_blocks(stack, denom);
}

std::vector<PavaBlock> pava_blocks(const EmpiricalCounts& c, Symbol limit) {
    std::vector<PavaBlock> stack;
    Symbol next = 1;
    for (auto [s, k] : c.entries()) {
        if (s > limit) break;
        if (s > next) push_pooled(stack, {0, s - next});
        push_pooled(stack, {k, 1});
        next = s + 1;
    }
    if (limit >= next) push_pooled(stack, {0, limit - next + 1});
    return stack;
}

std::vector<Rational> expand_blocks(std::span<const PavaBlock> blocks, std::uint64_t denom) {
    std::uint64_t total = 0;
    for (const auto& b : blocks) total += b.len;
    if (total > kMaxDenseAlphabet) fail(Errc::invalid_argument, "alphabet too large for a dense view");
    std::vector<Rational> theta;
    theta.reserve(total);
    for (const auto& b : blocks) {
        Rational v{b.sum, b.len * denom};
        theta.insert(theta.end(), b.len, v);
    }
    return theta;
}

std::vector<Rational> monotone_ml(const EmpiricalCounts& c) {
    if (c.n() == 0) fail(Errc::invalid_argument, "empty sequence");
    return expand_blocks(pava_blocks(c, c.k_max()), c.n());
}

std::vector<double> to_doubles(std::span<const Rational> theta) {
    std::vector<double> out;
    out.reserve(theta.size());
    for (const auto& r : theta) out.push_back(static_cast<double>(r.value()));
    return out;
}

double description_length(std::span<const Symbol> x, std::span<const double> theta) {
    long double bits = 0;
    for (Symbol s : x) {
        if (s == 0 || s > theta.size() || !(theta[s - 1] > 0)) return std::numeric_limits<double>::infinity();
        bits -= std::log2(static_cast<long double>(theta[s - 1]));
    }
    return static_cast<double>(bits);
}

double description_length(const EmpiricalCounts& c, std::span<const Rational> theta) {
    long double bits = 0;
    for (auto [s, k] : c.entries()) {
        if (s > theta.size() || theta[s - 1].num == 0) return std::numeric_limits<double>::infinity();
        bits -= static_cast<long double>(k) * std::log2(theta[s - 1].value());
    }
    return static_cast<double>(bits);
}

double ml_description_length(const EmpiricalCounts& c) {
    long double bits = 0;
    long double n = static_cast<long double>(c.n());
    for (auto [s, k] : c.entries()) bits -= static_cast<long double>(k) * std::log2(k / n);
    return static_cast<double>(bits);
}

double monotone_ml_description_length(const EmpiricalCounts& c) {
    if (c.n() == 0) fail(Errc::invalid_argument, "empty sequence");
    long double bits = 0;
    long double n = static_cast<long double>(c.n());
    auto blocks = pava_blocks(c, c.k_max());
    const auto& entries = c.entries();
    std::size_t e = 0;
    Symbol start = 1;
    for (const auto& b : blocks) {
        Symbol end = start + b.len;
        long double p = static_cast<long double>(b.sum) / (static_cast<long double>(b.len) * n);
        for (; e < entries.size() && entries[e].first < end; ++e)
            bits -= static_cast<long double>(entries[e].second) * std::log2(p);
        start = end;
    }
    return static_cast<double>(bits);
}

double entropy(std::span<const double> theta) {
    long double h = 0;
    for (double p : theta)
        if (p > 0) h -= static_cast<long double>(p) * std::log2(static_cast<long double>(p));
    return static_cast<double>(h);
}

}  // namespace mono
