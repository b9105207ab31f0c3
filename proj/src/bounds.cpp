#include "monocode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "monocode/error.hpp"
#include "monocode/estimators.hpp"

namespace mono {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog2e = std::numbers::log2e;

BoundValue make(double n, double total, std::string region, std::vector<std::pair<std::string, double>> params) {
    BoundValue b;
    b.total = total;
    b.per_symbol = total / n;
    b.region = std::move(region) + kAsymptoticMarker;
    params.insert(params.begin(), {"n", n});
    b.params = std::move(params);
    return b;
}

void require(bool ok, const char* what) {
    if (!ok) fail(Errc::invalid_argument, what);
}

// Golden-section minimization of f on [lo, hi].
template <class F>
std::pair<double, double> golden(F&& f, double lo, double hi, double tol = 1e-9) {
    const double r = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - r * (b - a), fc = f(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + r * (b - a), fd = f(d);
        }
    }
    double x = (a + b) / 2;
    return {x, f(x)};
}

constexpr double kStep = 0.01;
constexpr int kGridSteps = 300;  // 0.01 .. 3.00

}  // namespace

double BoundValue::param(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    return std::numeric_limits<double>::quiet_NaN();
}

BoundValue lb_maximin(double n, double k, double eps) {
    require(n >= 2 && k >= 2 && eps > 0 && eps < 1, "lb_maximin needs n >= 2, k >= 2, 0 < eps < 1");
    const double ne = std::pow(n, 1 - eps);
    const double threshold = std::cbrt(kPi * ne / 2);
    std::vector<std::pair<std::string, double>> p{{"k", k}, {"eps", eps}, {"threshold", threshold}};
    if (k <= threshold) {
        double total = (k - 1) / 2 * std::log2(ne / (k * k * k)) + (k - 1) / 2 * std::log2(kPi * std::exp(3.0) / 2);
        return make(n, total, "k <= (pi n^(1-eps)/2)^(1/3)", p);
    }
    double total = std::cbrt(kPi / 2) * 1.5 * kLog2e * std::pow(n, (1 - eps) / 3);
    return make(n, total, "k > (pi n^(1-eps)/2)^(1/3)", p);
}

BoundValue lb_most_sources(double n, double k, double eps) {
    require(n >= 2 && k >= 2 && eps > 0 && eps < 1, "lb_most_sources needs n >= 2, k >= 2, 0 < eps < 1");
    const double ne = std::pow(n, 1 - eps);
    const double threshold = 0.5 * std::cbrt(ne / kPi);
    std::vector<std::pair<std::string, double>> p{{"k", k}, {"eps", eps}, {"threshold", threshold}};
    if (k <= threshold) {
        double total = (k - 1) / 2 * std::log2(ne / (k * k * k)) - (k - 1) / 2 * std::log2(8 * kPi / std::exp(3.0));
        return make(n, total, "k <= (n^(1-eps)/pi)^(1/3)/2", p);
    }
    double total = 1.5 * kLog2e / (2 * std::cbrt(kPi)) * std::pow(n, (1 - eps) / 3);
    return make(n, total, "k > (n^(1-eps)/pi)^(1/3)/2", p);
}

BoundValue lb_individual(double n, double k) {
    require(n >= 2 && k >= 2, "lb_individual needs n >= 2, k >= 2");
    const double c = std::exp(5.0 / 18) / std::cbrt(2 * kPi);
    const double threshold = c * std::cbrt(n);
    std::vector<std::pair<std::string, double>> p{{"k", k}, {"threshold", threshold}};
    if (k <= threshold) {
        double total = (k - 1) / 2 * std::log2(n / (k * k * k)) +
                       k * std::log2(std::exp(23.0 / 12) / std::sqrt(2 * kPi));
        return make(n, total, "k <= c n^(1/3)", p);
    }
    if (k < n) return make(n, c * 1.5 * kLog2e * std::cbrt(n), "c n^(1/3) < k < n", p);
    return make(n, 1.5 * kLog2e * std::cbrt(n), "k >= n", p);
}

namespace {

// Shared shape of the average and individual small/large-alphabet upper bounds.
BoundValue small_large_shape(double n, double k, double eps, double third_coefficient) {
    require(n >= 2 && k >= 1 && eps >= 0, "bound needs n >= 2, k >= 1, eps >= 0");
    const double ln = std::log2(n);
    const double cbrt_n = std::cbrt(n);
    std::vector<std::pair<std::string, double>> p{{"k", k}, {"eps", eps}};
    if (k <= cbrt_n) {
        double total = (1 + eps) * (k - 1) / 2 * std::log2(n * ln * ln / (k * k * k));
        return make(n, total, "k <= n^(1/3)", p);
    }
    double third = (1 + eps) * third_coefficient * ln * ln * cbrt_n;
    if (k < n) {
        double second = (1 + eps) * ln * std::log2(k / std::pow(n, 1.0 / 3 - eps)) * cbrt_n;
        if (second < third) return make(n, second, "n^(1/3) < k = o(n)", p);
    }
    return make(n, third, "n^(1/3) < k = O(n)", p);
}

}  // namespace

BoundValue ub_small_large(double n, double k, double eps) { return small_large_shape(n, k, eps, 2.0 / 3); }

BoundValue ub_individual(double n, double k, double eps) { return small_large_shape(n, k, eps, 1.0 / 3); }

BoundValue cal_R(double n, double m, double eps) {
    require(n >= 2 && m >= 1 && eps >= 0, "cal_R needs n >= 2, m >= 1, eps >= 0");
    const double ln = std::log2(n);
    const double rho = std::log2(m) / ln;
    std::vector<std::pair<std::string, double>> p{{"m", m}, {"rho", rho}, {"eps", eps}};
    if (m * m * m < n) return make(n, (m - 1) / 2 * std::log2(n / (m * m * m)), "m = o(n^(1/3))", p);
    double total = 0.5 * (rho + 2.0 / 3) * (rho + eps - 1.0 / 3) * ln * ln * std::cbrt(n);
    return make(n, total, "m >= n^(1/3)", p);
}

BoundValue ub_fast_decay(double n, double m, double eps) {
    BoundValue r = cal_R(n, m, eps);
    BoundValue b = make(n, (1 + eps) * r.total, r.region.substr(0, r.region.size() - std::char_traits<char>::length(kAsymptoticMarker)), {});
    b.params = r.params;
    return b;
}

double fast_min_objective(double n, double alpha, double rho, const TailLogMoment& tail) {
    const double ln = std::log2(n);
    double v = 0.5 * (rho + 2 * alpha) * (rho - alpha) * ln * ln * std::pow(n, alpha) +
               5 * kLog2e * std::pow(n, 1 - 2 * alpha);
    double t = tail(std::pow(n, rho));
    if (t > 0) v += (1 + 1 / rho) * n * t;
    return v;
}

BoundValue ub_fast_min(double n, const TailLogMoment& tail, double eps) {
    require(n >= 2 && eps > 0, "ub_fast_min needs n >= 2 and eps > 0 (the minimum degenerates at eps = 0)");
    // Fine grid over (alpha, rho) plus the boundary line rho = alpha + eps, then coordinate refinement.
    constexpr double step = 0.001;
    constexpr int steps = 3000;
    const double ln = std::log2(n);
    std::vector<double> na(steps + 1), nb(steps + 1), tails(steps + 1);
    for (int j = 1; j <= steps; ++j) {
        na[j] = std::pow(n, j * step);
        nb[j] = 5 * kLog2e * std::pow(n, 1 - 2 * j * step);
        double t = tail(na[j]);
        tails[j] = t > 0 ? (1 + 1 / (j * step)) * n * t : 0;
    }
    double best = std::numeric_limits<double>::infinity(), ba = 0, br = 0;
    for (int i = 1; i <= steps; ++i) {
        const double a = i * step;
        const double c = 0.5 * ln * ln * na[i];
        for (int j = 1; j <= steps; ++j) {
            double r = j * step;
            if (r < a + eps - 1e-12) continue;
            double v = c * (r + 2 * a) * (r - a) + nb[i] + tails[j];
            if (v < best) best = v, ba = a, br = r;
        }
        if (a + eps <= 3.0) {
            double v = fast_min_objective(n, a, a + eps, tail);
            if (v < best) best = v, ba = a, br = a + eps;
        }
    }
    require(std::isfinite(best), "no feasible (alpha, rho) pair");
    auto f = [&](double a, double r) { return fast_min_objective(n, a, r, tail); };
    for (int round = 0; round < 60; ++round) {
        double before = best;
        double alo = std::max(1e-6, ba - step), ahi = std::min(br - eps, ba + step);
        if (ahi > alo) {
            auto [a, v] = golden([&](double a) { return f(a, br); }, alo, ahi);
            if (v < best) best = v, ba = a;
        }
        double rlo = std::max(ba + eps, br - step), rhi = std::min(3.0, br + step);
        if (rhi > rlo) {
            auto [r, v] = golden([&](double r) { return f(ba, r); }, rlo, rhi);
            if (v < best) best = v, br = r;
        }
        if (before - best <= 1e-6 * std::max(1.0, best)) break;
    }
    return make(n, (1 + eps) * best, "min over alpha, rho", {{"eps", eps}, {"alpha", ba}, {"rho", br}});
}

BoundValue ub_powerlaw(double n, double gamma, double a, double eps) {
    require(n >= 2 && gamma > 0 && a > 0 && eps >= 0, "ub_powerlaw needs n >= 2, gamma > 0, a > 0");
    const double ln = std::log2(n);
    std::vector<std::pair<std::string, double>> p{{"gamma", gamma}, {"a", a}, {"eps", eps}};
    if (gamma <= 2) {
        double coef = (1.0 / 9) * (1 + 1 / gamma) * (2 / gamma + eps - 1);
        return make(n, (1 + eps) * coef * std::cbrt(n) * ln * ln, "gamma <= 2", p);
    }
    double coef = a * (3 + gamma) / (1 + gamma) / gamma + (1 - 3 / (1 + gamma)) / 2;
    return make(n, (1 + eps) * coef * std::pow(n, 1 / (1 + gamma)) * ln, "gamma > 2", p);
}

BoundValue ub_geometric(double n, double p, double eps) {
    require(n >= 2 && p > 0 && p < 1 && eps >= 0, "ub_geometric needs n >= 2, 0 < p < 1");
    const double ln = std::log2(n);
    double total = (1 + eps) / (-2 * std::log2(1 - p)) * ln * ln;
    return make(n, total, "geometric", {{"p", p}, {"eps", eps}, {"m", ln / -std::log2(1 - p)}});
}

SlowDecayBound ub_slow_decay(double n, double gamma, double eps) {
    require(n >= 2 && gamma > -1 && eps >= 0, "ub_slow_decay needs n >= 2, gamma > -1");
    const double ln = std::log2(n);
    const double exponent = (gamma + 4) / (3 * gamma + 4);
    const double alpha = gamma / (4 + 3 * gamma);
    const double ell = 2 / (4 + 3 * gamma);
    double total = (1 + eps) * std::pow(n, exponent) * ln * ln / 2;
    std::string region = gamma > 0 ? "gamma > 0" : "-1 < gamma <= 0, non-diminishing";
    BoundValue b = make(n, total, region, {{"gamma", gamma}, {"eps", eps}, {"alpha", alpha}, {"ell", ell}});
    return {b, alpha, ell, exponent};
}

double cal_R_ind_objective(double n, double alpha, double rho) {
    const double ln = std::log2(n);
    return (rho + 1 + alpha) / 2 * (rho - alpha) * ln * ln * std::pow(n, alpha) + 3 * kLog2e * std::pow(n, 1 - alpha);
}

BoundValue cal_R_ind(double n, double m) {
    require(n >= 2 && m >= 1, "cal_R_ind needs n >= 2, m >= 1");
    const double ln = std::log2(n);
    const double rho = std::log2(m) / ln;
    std::vector<std::pair<std::string, double>> p{{"m", m}, {"rho", rho}};
    if (m * m * m <= n) return make(n, (m - 1) / 2 * std::log2(n / m), "m <= n^(1/3)", p);
    if (m * m < n) return make(n, m * std::log2(n / (m * m)), "n^(1/3) < m = o(sqrt n)", p);
    double best = std::numeric_limits<double>::infinity(), ba = 0;
    // The grid needs at least one interval, (rho - alpha) log n >= 1. Without this the objective
    // collapses to the bare quantization term as alpha approaches rho.
    const double amax = std::max(rho - 1 / ln, rho / 2);
    for (int i = 1; i * kStep <= amax + 1e-12; ++i) {
        double v = cal_R_ind_objective(n, i * kStep, rho);
        if (v < best) best = v, ba = i * kStep;
    }
    if (double v = cal_R_ind_objective(n, amax, rho); v < best) best = v, ba = amax;
    auto [a, v] = golden([&](double a) { return cal_R_ind_objective(n, a, rho); }, std::max(1e-6, ba - kStep),
                         std::min(amax, ba + kStep));
    if (v < best) best = v, ba = a;
    p.emplace_back("alpha", ba);
    return make(n, best, "m >= sqrt n, min over alpha < rho", p);
}

BoundValue ub_individual2(double n, const TailLogSum& tail, double eps) {
    require(n >= 2 && eps >= 0, "ub_individual2 needs n >= 2, eps >= 0");
    auto f = [&](double rho) {
        double m = std::pow(n, rho);
        double t = tail(m);
        return cal_R_ind(n, m).total + (t > 0 ? (1 + 1 / rho) * t : 0);
    };
    // The tail sum jumps at every distinct symbol, so the rho grid is fine.
    constexpr double step = 0.001;
    double best = std::numeric_limits<double>::infinity(), br = 0;
    for (int j = 1; j <= 3000; ++j) {
        double v = f(j * step);
        if (v < best) best = v, br = j * step;
    }
    auto [r, v] = golden(f, std::max(1e-6, br - step), std::min(3.0, br + step), 1e-9);
    if (v < best) best = v, br = r;
    BoundValue inner = cal_R_ind(n, std::pow(n, br));
    return make(n, (1 + eps) * best, "min over rho", {{"eps", eps}, {"rho", br}, {"alpha", inner.param("alpha")}});
}

NmlResult nml_bruteforce_monotone(unsigned n, unsigned k) {
    require(n >= 1 && k >= 1, "nml needs n >= 1, k >= 1");
    long double space = std::pow(static_cast<long double>(k), static_cast<long double>(n));
    if (space > 1e7L)
        fail(Errc::budget_exceeded, "k^n exceeds the 10^7 enumeration budget; choose smaller n or k");
    // Sum over count vectors weighted by the number of sequences sharing them. Only the nonzero
    // entries are enumerated, so (n = 1, k large) costs O(k).
    std::vector<long double> log_fact(n + 1, 0);
    for (unsigned i = 2; i <= n; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<long double>(i));
    std::vector<std::pair<Symbol, std::uint64_t>> entries;
    long double total = 0;
    auto visit = [&] {
        auto counts = EmpiricalCounts::from_entries(entries);
        auto blocks = pava_blocks(counts, counts.k_max());
        long double log_p = log_fact[n];
        std::size_t e = 0;
        Symbol first = 1;
        for (const auto& b : blocks) {
            const long double theta = static_cast<long double>(b.sum) / (static_cast<long double>(b.len) * n);
            for (; e < entries.size() && entries[e].first < first + b.len; ++e)
                log_p += entries[e].second * std::log(theta) - log_fact[entries[e].second];
            first += b.len;
        }
        total += std::exp(log_p);
    };
    auto rec = [&](auto&& self, Symbol from, unsigned left) -> void {
        if (left == 0) {
            visit();
            return;
        }
        for (Symbol i = from; i <= k; ++i) {
            for (unsigned c = 1; c <= left; ++c) {
                entries.emplace_back(i, c);
                self(self, i + 1, left - c);
                entries.pop_back();
            }
        }
    };
    rec(rec, 1, n);
    return {total, static_cast<double>(std::log2(total))};
}

}  // namespace mono
