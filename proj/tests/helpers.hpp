#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "chase/rng.hpp"

namespace chase::test {

// Monte Carlo estimate of P(max of k Exp(lambda) < min of k Exp(1)),
// independent of both library routes.
inline std::pair<double, double> mc_open_probability(int k, double lambda,
                                                     long long draws, Rng& rng) {
    std::exponential_distribution<double> red(lambda);
    std::exponential_distribution<double> blue(1.0);
    long long hits = 0;
    for (long long i = 0; i < draws; ++i) {
        double mx = 0.0, mn = std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j) mx = std::max(mx, red(rng));
        for (int j = 0; j < k; ++j) mn = std::min(mn, blue(rng));
        hits += mx < mn ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(draws);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
    return {p, se};
}

// Bisection solve of 4 a x / (1+x)^2 = 1 on (0, 1]; independent check of the
// closed-form critical value.
inline double solve_crit_bisect(double a) {
    double lo = 1e-16, hi = 1.0;
    const auto f = [a](double x) { return 4.0 * a * x / ((1.0 + x) * (1.0 + x)) - 1.0; };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace chase::test
