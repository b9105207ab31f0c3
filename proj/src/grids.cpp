#include "monocode/grids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "monocode/bitio.hpp"
#include "monocode/error.hpp"

namespace mono {

namespace {

using boost::multiprecision::cpp_int;

// Smallest E with 2^(r*E) >= v.
unsigned min_exponent(const cpp_int& v, unsigned r) {
    unsigned e = 0;
    while ((cpp_int(1) << (r * e)) < v) ++e;
    return e;
}

// Largest y with y^r * p <= q * 2^(r*s), i.e. floor((q/p)^(1/r) * 2^s).
std::uint64_t scaled_root(unsigned r, const cpp_int& p, const cpp_int& q, unsigned s) {
    const cpp_int rhs = q << (r * s);
    auto fits = [&](std::uint64_t y) { return pow(cpp_int(y), r) * p <= rhs; };
    long double est = std::pow(static_cast<long double>(q) / static_cast<long double>(p), 1.0L / r) *
                      std::ldexp(1.0L, static_cast<int>(s));
    constexpr std::uint64_t cap = std::uint64_t{1} << 63;
    std::uint64_t y = est >= static_cast<long double>(cap) ? cap : static_cast<std::uint64_t>(est);
    if (y == cap) return cap;
    while (y > 0 && !fits(y)) --y;
    while (y < cap && fits(y + 1)) ++y;
    return y;
}

}  // namespace

Grid Grid::build(const GridSpec& spec) {
    if (spec.n < 2) fail(Errc::invalid_argument, "grids need n >= 2");
    if (spec.k_or_m < 1) fail(Errc::invalid_argument, "grids need k or m >= 1");
    const unsigned a = spec.alpha_num;
    const unsigned b = spec.alpha_den;
    bool uses_alpha = spec.mode == GridMode::large || spec.mode == GridMode::fast || spec.mode == GridMode::ind_large;
    if (uses_alpha && (a == 0 || b == 0 || a >= b)) fail(Errc::invalid_argument, "alpha must lie in (0, 1)");

    const cpp_int n = spec.n;
    const cpp_int km = spec.k_or_m;
    unsigned levels = 0;
    unsigned r = 1;
    cpp_int p, q;
    switch (spec.mode) {
        case GridMode::small_k:
            levels = min_exponent(n, 1);
            r = 2, p = n, q = km;
            break;
        case GridMode::large:
            levels = min_exponent(n * n, 1);
            r = b, p = pow(n, a), q = 1;
            break;
        case GridMode::fast:
            levels = min_exponent(pow(km, b) * pow(n, 2 * a), b);
            r = b, p = pow(n, a), q = 1;
            break;
        case GridMode::ind_small:
            levels = min_exponent(n * n, 1);
            r = 1, p = n, q = km;
            break;
        case GridMode::ind_large:
            levels = min_exponent(pow(km, b) * pow(n, b + a), b);
            r = b, p = pow(n, a), q = 1;
            break;
    }
    if (levels == 0) fail(Errc::invalid_argument, "grid has no intervals");
    if (levels > kUnitBits) fail(Errc::invalid_argument, "grid finer than 2^-62 resolution");

    Grid g;
    g.spec_ = spec;
    for (unsigned j = 1; j <= levels; ++j) {
        const unsigned upper_exp = kUnitBits - levels + j;
        const std::uint64_t lower = std::uint64_t{1} << (upper_exp - 1);
        std::uint64_t spacing = std::min(scaled_root(r, p, q, upper_exp), lower);
        if (spacing == 0) fail(Errc::invalid_argument, "grid spacing below 2^-62 resolution");
        std::uint64_t count = (lower + spacing - 1) / spacing;
        g.intervals_.push_back({lower, spacing, count, g.size_});
        g.size_ += count;
        if (g.size_ > kMaxGridPoints) fail(Errc::invalid_argument, "grid has too many points");
    }
    return g;
}

unsigned Grid::interval_of(std::uint64_t b) const {
    if (b >= size_) fail(Errc::invalid_argument, "grid index out of range");
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), b,
                               [](std::uint64_t v, const Interval& iv) { return v < iv.first; });
    return static_cast<unsigned>(it - intervals_.begin());
}

std::uint64_t Grid::point(std::uint64_t b) const {
    const Interval& iv = interval(interval_of(b));
    return iv.lower + (b - iv.first) * iv.spacing;
}

unsigned Grid::interval_of_value(std::uint64_t v) const {
    if (v < first_point()) return 1;
    if (v >= kUnit) return interval_count();
    return floor_log2(v) - (kUnitBits - interval_count()) + 1;
}

std::optional<std::uint64_t> Grid::floor_index(std::uint64_t v) const {
    if (v < first_point()) return std::nullopt;
    if (v >= kUnit) return size_ - 1;
    const Interval& iv = interval(interval_of_value(v));
    return iv.first + std::min((v - iv.lower) / iv.spacing, iv.count - 1);
}

std::vector<std::uint64_t> Grid::points() const {
    if (size_ > kMaxDenseAlphabet) fail(Errc::invalid_argument, "grid too large to materialize");
    std::vector<std::uint64_t> out;
    out.reserve(size_);
    for (const auto& iv : intervals_)
        for (std::uint64_t t = 0; t < iv.count; ++t) out.push_back(iv.lower + t * iv.spacing);
    return out;
}

unsigned __int128 QuantizedParams::point_sum(const Grid& g) const {
    unsigned __int128 s = 0;
    for (std::uint64_t b : indices) s += g.point(b);
    return s;
}

__int128 QuantizedParams::leading_scaled(const Grid& g) const {
    return static_cast<__int128>(head.num) * kUnit - static_cast<__int128>(head.den) * point_sum(g);
}

std::vector<long double> QuantizedParams::values(const Grid& g) const {
    std::vector<long double> out;
    if (support == 0) return out;
    out.push_back(static_cast<long double>(leading_scaled(g)) /
                  (static_cast<long double>(head.den) * static_cast<long double>(kUnit)));
    for (std::uint64_t b : indices) out.push_back(std::ldexp(static_cast<long double>(g.point(b)), -62));
    return out;
}

QuantizedParams quantize_monotone(std::span<const Rational> theta, const Grid& g, HeadMass head) {
    if (head.den == 0 || head.num > head.den) fail(Errc::invalid_argument, "head mass must lie in [0, 1]");
    std::size_t support = theta.size();
    while (support > 0 && theta[support - 1].num == 0) --support;
    for (std::size_t i = 0; i < support; ++i) {
        if (theta[i].den == 0 || theta[i].num > theta[i].den) fail(Errc::invalid_argument, "probability outside [0, 1]");
        if (theta[i].num == 0) fail(Errc::invalid_argument, "zero probability inside the support");
        if (i > 0 && theta[i - 1] < theta[i]) fail(Errc::invalid_argument, "parameter vector is not monotone");
    }

    QuantizedParams qp;
    qp.support = support;
    qp.head = head;
    if (support <= 1) {
        if (support == 1 && head.num == 0) fail(Errc::quantization_infeasible, "no mass left for the head");
        return qp;
    }

    const __int128 head_units = static_cast<__int128>(head.num) * kUnit;
    const __int128 den = head.den;
    const std::uint64_t p0 = g.first_point();
    if (head_units - den * static_cast<__int128>(support - 1) * p0 < den * p0)
        fail(Errc::quantization_infeasible, "grid cannot host this many parameters");

    // Entries whose values share a grid cell form a run; monotonicity only constrains choices inside a
    // run, where the rounded-up entries must be the largest ones. Each run picks how many entries round
    // up so that the error carried from the smaller parameters stays within half a spacing.
    qp.indices.assign(support - 1, 0);
    std::vector<std::uint64_t> t(support);
    std::vector<bool> exact(support);
    for (std::size_t i = 1; i < support; ++i) {
        const unsigned __int128 scaled = static_cast<unsigned __int128>(theta[i].num) << kUnitBits;
        t[i] = static_cast<std::uint64_t>(scaled / theta[i].den);
        exact[i] = scaled % theta[i].den == 0;
    }
    __int128 err = 0;
    unsigned __int128 sum = 0;
    std::size_t hi = support;
    while (hi > 1) {
        const auto lo = g.floor_index(t[hi - 1]);
        std::size_t first = hi - 1;
        while (first > 1 && g.floor_index(t[first - 1]) == lo) --first;
        if (!lo) {
            for (std::size_t i = first; i < hi; ++i) {
                err += static_cast<__int128>(t[i]) - static_cast<__int128>(p0);
                sum += p0;
                qp.indices[i - 1] = 0;
            }
            hi = first;
            continue;
        }
        const std::uint64_t f = *lo;
        const std::uint64_t c1 = f + 1 < g.size() ? f + 1 : f;
        const __int128 base = static_cast<__int128>(g.point(f));
        const __int128 d = static_cast<__int128>(g.point(c1)) - base;
        __int128 excess = err;
        std::size_t inexact = 0;
        for (std::size_t i = first; i < hi; ++i) {
            excess += static_cast<__int128>(t[i]) - base;
            if (!(exact[i] && g.point(f) == t[i])) ++inexact;
        }
        std::size_t ups = 0;
        if (d > 0 && excess > 0) {
            const __int128 r = (2 * excess + d) / (2 * d);
            ups = static_cast<std::size_t>(std::min<__int128>(r, static_cast<__int128>(inexact)));
        }
        for (std::size_t i = first; i < hi; ++i) {
            const std::uint64_t choice = i < first + ups ? c1 : f;
            err += static_cast<__int128>(t[i]) - static_cast<__int128>(g.point(choice));
            sum += g.point(choice);
            qp.indices[i - 1] = choice;
        }
        hi = first;
    }

    // Pull the largest free parameters down one grid step at a time until theta'_1 >= theta'_2.
    auto lead = [&] { return head_units - den * static_cast<__int128>(sum); };
    std::size_t run_end = 0;
    while (run_end + 1 < qp.indices.size() && qp.indices[run_end + 1] == qp.indices[0]) ++run_end;
    std::uint64_t guard = 0;
    while (lead() < den * static_cast<__int128>(g.point(qp.indices[0]))) {
        std::uint64_t& b = qp.indices[run_end];
        if (b == 0 || ++guard > (std::uint64_t{1} << 26))
            fail(Errc::quantization_infeasible, "monotonicity repair failed");
        sum -= g.point(b) - g.point(b - 1);
        --b;
        if (run_end > 0) {
            --run_end;
        } else {
            while (run_end + 1 < qp.indices.size() && qp.indices[run_end + 1] == qp.indices[0]) ++run_end;
        }
    }
    return qp;
}

double kl_quantization_cost(std::span<const Rational> theta, const QuantizedParams& qp, const Grid& g,
                            std::uint64_t n) {
    auto q = qp.values(g);
    long double cost = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (theta[i].num == 0) continue;
        if (i >= q.size() || !(q[i] > 0)) return std::numeric_limits<double>::infinity();
        long double p = theta[i].value();
        cost += p * std::log2(p / q[i]);
    }
    return static_cast<double>(static_cast<long double>(n) * cost);
}

}  // namespace mono
