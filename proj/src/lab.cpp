#include "monocode/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/differentiation/finite_difference.hpp>

#include "monocode/bounds.hpp"
#include "monocode/error.hpp"

namespace mono {

namespace {

constexpr long double kLn2 = std::numbers::ln2_v<long double>;
constexpr long double kInf = std::numeric_limits<long double>::infinity();
// Direct summation runs up to here before the Euler-Maclaurin tail takes over.
constexpr long double kDirectLimit = 4096;
// Largest cumulative table kept in memory; beyond it the survival function is inverted directly.
constexpr std::size_t kTableCap = std::size_t{1} << 21;
constexpr long double kResidual = 0x1p-60L;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

const char* family_name(Family f) noexcept {
    switch (f) {
        case Family::powerlaw: return "powerlaw";
        case Family::geometric: return "geometric";
        case Family::slowlog: return "slowlog";
        case Family::explicit_theta: return "explicit";
    }
    return "unknown";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Source::Source(SourceSpec spec) : spec_(std::move(spec)) {
    switch (spec_.family) {
        case Family::powerlaw:
            if (!(spec_.gamma > 0) || !std::isfinite(spec_.gamma)) fail(Errc::invalid_argument, "powerlaw needs gamma > 0");
            break;
        case Family::slowlog:
            if (!(spec_.gamma > -1) || !std::isfinite(spec_.gamma)) fail(Errc::invalid_argument, "slowlog needs gamma > -1");
            break;
        case Family::geometric:
            if (!(spec_.p > 0 && spec_.p < 1)) fail(Errc::invalid_argument, "geometric needs 0 < p < 1");
            break;
        case Family::explicit_theta: {
            auto& t = spec_.theta;
            if (t.empty() || t.size() > kMaxDenseAlphabet) fail(Errc::invalid_argument, "explicit theta size out of range");
            long double sum = 0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (!(t[i] >= 0)) fail(Errc::invalid_argument, "explicit theta must be non-negative");
                if (i > 0 && t[i] > t[i - 1]) fail(Errc::invalid_argument, "explicit theta must be non-increasing");
                sum += t[i];
            }
            if (std::fabs(static_cast<double>(sum) - 1) > 1e-9) fail(Errc::invalid_argument, "explicit theta must sum to 1");
            while (t.back() == 0) t.pop_back();
            a_ = 1 / sum;
            return;
        }
    }
    if (spec_.family != Family::geometric) a_ = 1 / series(Term::mass, 1);
}

long double Source::theta(Symbol i) const { return term(Term::mass, static_cast<long double>(i)); }

long double Source::term(Term t, long double x) const {
    long double th = 0;
    switch (spec_.family) {
        case Family::powerlaw: th = a_ * std::pow(x, -1.0L - spec_.gamma); break;
        case Family::slowlog:
            if (x >= 2) th = a_ / (x * std::pow(std::log2(x), 2.0L + spec_.gamma));
            break;
        case Family::geometric: th = spec_.p * std::pow(1.0L - spec_.p, x - 1); break;
        case Family::explicit_theta:
            if (x >= 1 && x <= spec_.theta.size()) th = spec_.theta[static_cast<std::size_t>(x) - 1] * a_;
            break;
    }
    if (th <= 0) return 0;
    switch (t) {
        case Term::mass: return th;
        case Term::log_moment: return th * std::log2(x);
        case Term::entropy: return -th * std::log2(th);
    }
    return 0;
}

// Integral of the continuous extension of term(t, .) over [from, inf).
long double Source::integral(Term t, long double from) const {
    const long double g = spec_.gamma;
    if (spec_.family == Family::powerlaw) {
        const long double lf = std::pow(from, -g);
        const long double mass = a_ * lf / g;
        const long double logm = a_ / kLn2 * lf * (std::log(from) / g + 1 / (g * g));
        if (t == Term::mass) return mass;
        if (t == Term::log_moment) return logm;
        return (1 + g) * logm - std::log2(a_) * mass;
    }
    // slowlog, substituting u = log2 x
    const long double s = 2 + g;
    const long double u = std::log2(from);
    const long double mass = a_ * kLn2 * std::pow(u, 1 - s) / (s - 1);
    if (t == Term::mass) return mass;
    if (g <= 0) return kInf;
    const long double logm = a_ * kLn2 * std::pow(u, 2 - s) / (s - 2);
    if (t == Term::log_moment) return logm;
    const long double loglog = a_ * std::pow(u, 1 - s) * (std::log(u) / (s - 1) + 1 / ((s - 1) * (s - 1)));
    return logm + s * loglog - std::log2(a_) * mass;
}

// sum_{i >= from} term(t, i) for integral from >= 1.
long double Source::series(Term t, long double from) const {
    long double sum = 0;
    switch (spec_.family) {
        case Family::explicit_theta:
            for (long double i = from; i <= spec_.theta.size(); ++i) sum += term(t, i);
            return sum;
        case Family::geometric:
            for (long double i = from; i < from + 1e7L; ++i) {
                long double v = term(t, i);
                sum += v;
                if (i >= from + 64 && v <= 1e-24L * sum) break;
                if (i >= from + 64 && v == 0) break;
            }
            return sum;
        case Family::powerlaw:
        case Family::slowlog: break;
    }
    const long double lim = std::max(from, kDirectLimit);
    for (long double i = from; i < lim; ++i) sum += term(t, i);
    long double tail = integral(t, lim);
    if (!std::isfinite(tail)) return kInf;
    auto f = [&](long double x) { return term(t, x); };
    long double slope = boost::math::differentiation::finite_difference_derivative(f, lim);
    return sum + tail + term(t, lim) / 2 - slope / 12;
}

long double Source::survival(long double m) const {
    if (m < 1) return 1;
    if (spec_.family == Family::geometric) return std::pow(1.0L - spec_.p, std::floor(m));
    return series(Term::mass, std::floor(m) + 1);
}

long double Source::tail_log_moment(long double m) const {
    if (spec_.family == Family::slowlog && spec_.gamma <= 0) return kInf;
    return series(Term::log_moment, std::max(1.0L, std::floor(m) + 1));
}

long double Source::self_information(const EmpiricalCounts& c) const {
    long double bits = 0;
    for (const auto& [sym, count] : c.entries()) {
        long double th = theta(sym);
        if (th <= 0) return kInf;
        bits -= count * std::log2(th);
    }
    return bits;
}

EntropyValue Source::entropy() const {
    if (spec_.family == Family::slowlog && spec_.gamma <= 0)
        return {std::numeric_limits<double>::infinity(), false};
    return {static_cast<double>(series(Term::entropy, 1)), true};
}

std::string Source::params() const {
    switch (spec_.family) {
        case Family::powerlaw:
        case Family::slowlog:
            return "gamma=" + fmt(spec_.gamma) + ";a=" + fmt(static_cast<double>(a_));
        case Family::geometric: return "p=" + fmt(spec_.p);
        case Family::explicit_theta: {
            std::string s = "k=" + std::to_string(spec_.theta.size());
            for (double v : spec_.theta) s += ";" + fmt(v);
            return s;
        }
    }
    return {};
}

Sampler::Sampler(const Source& source) : source_(source) {
    if (source.spec().family == Family::explicit_theta) {
        last_ = source.spec().theta.size();
        return;
    }
    // Smallest symbol whose survival drops to 2^-60, capped at the largest codable symbol.
    Symbol hi = 1;
    while (hi < kMaxSymbol && source_.survival(hi) > kResidual) hi = std::min(kMaxSymbol, hi * 2);
    Symbol lo = hi / 2 + 1;
    while (lo < hi) {
        Symbol mid = lo + (hi - lo) / 2;
        if (source_.survival(mid) > kResidual) lo = mid + 1;
        else hi = mid;
    }
    last_ = hi;
}

Symbol Sampler::lookup(long double u) {
    const std::size_t table_limit = static_cast<std::size_t>(std::min<Symbol>(last_, kTableCap));
    while ((cdf_.empty() || cdf_.back() <= u) && cdf_.size() < table_limit) {
        long double prev = cdf_.empty() ? 0 : cdf_.back();
        cdf_.push_back(prev + source_.theta(cdf_.size() + 1));
    }
    if (cdf_.back() > u) return std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin() + 1;
    if (cdf_.size() >= last_) return last_;
    // Smallest i with 1 - S(i) > u, searched over the analytic survival function.
    const long double v = 1 - u;
    Symbol lo = cdf_.size() + 1, hi = last_;
    if (source_.survival(hi) >= v) return last_;
    while (lo < hi) {
        Symbol mid = lo + (hi - lo) / 2;
        if (source_.survival(mid) < v) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

Symbol Sampler::draw(std::mt19937_64& rng) { return lookup(std::ldexp(static_cast<long double>(rng()), -64)); }

std::vector<Symbol> Sampler::sample(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Symbol> x(n);
    for (auto& v : x) v = draw(rng);
    return x;
}

std::vector<Symbol> sample(const SourceSpec& spec, std::size_t n) {
    Source source(spec);
    Sampler sampler(source);
    return sampler.sample(n, spec.seed);
}

EntropyValue true_entropy(const SourceSpec& spec) { return Source(spec).entropy(); }

WynerCheck wyner_check(const SourceSpec& spec, double tolerance) {
    Source source(spec);
    WynerCheck w;
    w.log_moment = static_cast<double>(source.log_moment());
    EntropyValue h = source.entropy();
    w.entropy = h.bits;
    w.pass = h.finite && std::isfinite(w.log_moment) && w.log_moment <= w.entropy + tolerance;
    return w;
}

double family_bound(const Source& source, std::uint64_t n) {
    const auto& s = source.spec();
    const double dn = static_cast<double>(std::max<std::uint64_t>(n, 2));
    switch (s.family) {
        case Family::geometric: return ub_geometric(dn, s.p, 0).total;
        case Family::powerlaw: return ub_powerlaw(dn, s.gamma, static_cast<double>(source.normalizer()), 0).total;
        case Family::slowlog: return ub_slow_decay(dn, s.gamma, 0).bound.total;
        case Family::explicit_theta: return ub_small_large(dn, static_cast<double>(s.theta.size()), 0).total;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string config_label(const CodecConfig& c) {
    std::string s = mode_name(c.mode);
    switch (c.mode) {
        case Mode::small_k: return s + "(k=" + std::to_string(c.k_hat) + ")";
        case Mode::large: return s;
        case Mode::fast: return s + "(m=" + std::to_string(c.m) + ")";
        case Mode::individual: return c.monotone ? s + "(m=" + std::to_string(c.m) + ")" : s + "(plain)";
    }
    return s;
}

RedundancyReport measure_redundancy(const SourceSpec& spec, std::uint64_t n, std::size_t trials, CodecChoice codec) {
    if (trials < 1) fail(Errc::invalid_argument, "trials >= 1 required");
    if (n < 1) fail(Errc::invalid_argument, "n >= 1 required");
    Source source(spec);
    Sampler sampler(source);
    const EntropyValue h = source.entropy();

    RedundancyReport r;
    r.n = n;
    r.trials = trials;
    r.against_ml = !h.finite;
    r.entropy_bits = h.finite ? h.bits : std::numeric_limits<double>::quiet_NaN();
    std::vector<double> bits(trials), reference(trials), pointwise(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        auto x = sampler.sample(n, derive_seed(spec.seed, t));
        EncodeResult e = codec ? compress(x, *codec) : compress(x);
        auto counts = EmpiricalCounts::from_sequence(x);
        bits[t] = static_cast<double>(e.bits.code_bits());
        reference[t] = h.finite ? static_cast<double>(n) * h.bits : monotone_ml_description_length(counts);
        pointwise[t] = bits[t] - static_cast<double>(source.self_information(counts));
        ++r.config_histogram[config_label(e.config)];
    }
    auto mean = [](const std::vector<double>& v) {
        long double s = 0;
        for (double d : v) s += d;
        return static_cast<double>(s / v.size());
    };
    auto std_error = [&](const std::vector<double>& v, double m) {
        if (v.size() < 2) return 0.0;
        long double s = 0;
        for (double d : v) s += (d - m) * (d - m);
        return static_cast<double>(std::sqrt(s / (v.size() - 1) / v.size()));
    };
    r.mean_total_bits = mean(bits);
    r.stddev_bits = std_error(bits, r.mean_total_bits) * std::sqrt(static_cast<double>(trials));
    r.entropy_total = mean(reference);
    r.total_redundancy = r.mean_total_bits - r.entropy_total;
    r.per_symbol_redundancy = r.total_redundancy / static_cast<double>(n);
    std::vector<double> diff(trials);
    for (std::size_t t = 0; t < trials; ++t) diff[t] = bits[t] - reference[t];
    r.std_error = std_error(diff, r.total_redundancy);
    if (h.finite) {
        r.pointwise_redundancy = mean(pointwise);
        r.pointwise_std_error = std_error(pointwise, r.pointwise_redundancy);
    } else {
        r.pointwise_redundancy = r.pointwise_std_error = std::numeric_limits<double>::quiet_NaN();
    }
    r.bound_value = family_bound(source, n);
    r.bound_ratio = r.total_redundancy / r.bound_value;
    return r;
}

std::string csv_row(const ExperimentCell& cell, const RedundancyReport& r) {
    Source source(cell.spec);
    std::string hist;
    for (const auto& [label, count] : r.config_histogram) {
        if (!hist.empty()) hist += ';';
        hist += label + ":" + std::to_string(count);
    }
    std::ostringstream row;
    row << family_name(cell.spec.family) << ',' << source.params() << ',' << cell.spec.seed << ',' << r.n << ','
        << r.trials << ',' << fmt(r.mean_total_bits) << ',' << fmt(r.entropy_bits) << ',' << fmt(r.total_redundancy)
        << ',' << fmt(r.per_symbol_redundancy) << ',' << fmt(r.bound_value) << ',' << fmt(r.bound_ratio) << ','
        << hist;
    return row.str();
}

std::vector<RedundancyReport> run_experiment(const std::vector<ExperimentCell>& cells, std::ostream& out) {
    std::vector<RedundancyReport> reports;
    out << kCsvHeader << '\n';
    for (const auto& cell : cells) {
        reports.push_back(measure_redundancy(cell.spec, cell.n, cell.trials, cell.codec));
        out << csv_row(cell, reports.back()) << '\n';
    }
    return reports;
}

std::vector<RedundancyReport> run_experiment(const std::vector<ExperimentCell>& cells, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
    auto reports = run_experiment(cells, out);
    out.flush();
    if (!out) fail(Errc::io_error, "write to " + path + " failed");
    return reports;
}

}  // namespace mono
