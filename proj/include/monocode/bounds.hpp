#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mono {

// Region labels carry this suffix: O(.) and o(.) terms are evaluated as zero.
inline constexpr const char* kAsymptoticMarker = " [asymptotic, constants omitted]";

struct BoundValue {
    double per_symbol = 0;
    double total = 0;
    std::string region;
    std::vector<std::pair<std::string, double>> params;

    double param(const std::string& name) const;
};

// Average lower bounds (maximin/minimax, and almost every source).
BoundValue lb_maximin(double n, double k, double eps);
BoundValue lb_most_sources(double n, double k, double eps);
// Individual minimax lower bound w.r.t. the monotone ML description length.
BoundValue lb_individual(double n, double k);

// Average upper bound for alphabet size k.
BoundValue ub_small_large(double n, double k, double eps);
// R_n(m), the effective-alphabet cost; total holds R_n(m).
BoundValue cal_R(double n, double m, double eps);
// (1 + eps) R_n(m) / n.
BoundValue ub_fast_decay(double n, double m, double eps);

// sum_{i > m} theta_i log2 i, for real m >= 1.
using TailLogMoment = std::function<double(double m)>;
// Minimum over (alpha, rho) with rho >= alpha + eps of the three-term cost.
BoundValue ub_fast_min(double n, const TailLogMoment& tail, double eps);
// The objective minimized by ub_fast_min (total bits, without the (1 + eps) factor).
double fast_min_objective(double n, double alpha, double rho, const TailLogMoment& tail);

BoundValue ub_powerlaw(double n, double gamma, double a, double eps);
BoundValue ub_geometric(double n, double p, double eps);

struct SlowDecayBound {
    BoundValue bound;
    double alpha;
    double ell;
    double exponent;
};
SlowDecayBound ub_slow_decay(double n, double gamma, double eps);

// Individual-sequence upper bound for monotone empirical distributions.
BoundValue ub_individual(double n, double k, double eps);
// R-hat_n(m); total holds the value.
BoundValue cal_R_ind(double n, double m);
double cal_R_ind_objective(double n, double alpha, double rho);
// sum of log2 i over distinct symbols i > m occurring in the sequence.
using TailLogSum = std::function<double(double m)>;
BoundValue ub_individual2(double n, const TailLogSum& tail, double eps);

struct NmlResult {
    long double sum;
    double log2_sum;
};
// Exact monotone Shtarkov sum over all k^n sequences; refuses k^n > 10^7.
NmlResult nml_bruteforce_monotone(unsigned n, unsigned k);

}  // namespace mono
