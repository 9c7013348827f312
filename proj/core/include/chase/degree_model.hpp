#pragma once

#include <string>
#include <vector>

#include "chase/rng.hpp"

namespace chase {

enum class DegreeKind { Regular, Poisson, Geometric, PowerLaw, Explicit };

// Distribution of a vertex degree D on the nonnegative integers, with a
// sampler and first/second moments. +infinity is a valid second moment
// (declared, for heavy-tailed stand-ins); all other kinds compute their
// moments in closed form or from the table.
class DegreeModel {
public:
    static DegreeModel regular(int d);
    static DegreeModel poisson(double mu);
    // P(D = k) = p (1-p)^k for k >= 0
    static DegreeModel geometric(double p);
    // pmf(k) proportional to k^-tau on 1 <= k <= cutoff, normalized exactly
    static DegreeModel power_law(double tau, int cutoff);
    // pmf[k] = P(D = k); must sum to 1 within 1e-12
    static DegreeModel from_pmf(std::vector<double> pmf);
    // explicit table with declared moments overriding the computed ones
    // (second_moment may be +infinity)
    static DegreeModel from_pmf_declared(std::vector<double> pmf, double mean,
                                         double second_moment);

    // Mini-grammar shared by CLI flags and config files: "regular:3",
    // "poisson:2.5", "geometric:0.4", "powerlaw:2.5:100", or a path to a
    // two-column (k, probability) text file.
    static DegreeModel parse(const std::string& spec);

    DegreeKind kind() const { return kind_; }
    double pmf(int k) const;
    double mean() const { return mean_; }
    double second_moment() const { return second_moment_; }
    // largest k with pmf(k) > 0 for table-backed kinds; -1 for unbounded
    int max_support() const;

    int sample(Rng& rng) const;

    // canonical spec string ("regular:3", "explicit[...]")
    std::string to_string() const;

private:
    DegreeModel() = default;

    DegreeKind kind_ = DegreeKind::Regular;
    double param0_ = 0.0;  // d / mu / p / tau
    double param1_ = 0.0;  // cutoff for power law
    std::vector<double> table_;  // pmf for PowerLaw/Explicit
    std::vector<double> cdf_;    // cumulative table for sampling
    double mean_ = 0.0;
    double second_moment_ = 0.0;

    void finish_table();
};

} // namespace chase
