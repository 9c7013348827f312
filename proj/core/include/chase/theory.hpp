#pragma once

#include <optional>
#include <string>

#include "chase/degree_model.hpp"

namespace chase {

// Branching number of the local tree approximation: a = E[D^2]/E[D] - 1.
// Returns +infinity when the second moment is infinite. Requires a positive
// finite mean.
double branching_ratio(const DegreeModel& model);

// Critical red rate for branching number a >= 1:
//   Lambda(a) = 2a - 1 - 2 sqrt(a^2 - a),
// evaluated as 1 / (2a - 1 + 2 sqrt(a^2 - a)) which is algebraically equal
// (the two roots of x^2 + (2-4a)x + 1 multiply to 1) and does not cancel for
// large a. Lambda(inf) = 0 by convention. a < 1 is a domain error.
double lambda_crit(double a);

// E[D(D-2)] = E[D^2] - 2 E[D]; +infinity when the second moment is infinite.
double molloy_reed(const DegreeModel& model);

// Law of D* - 1 where P(D* = i) = i P(D = i)/E[D]. Mean equals
// branching_ratio(model). Kind-aware: regular(d) -> regular(d-1),
// poisson(mu) -> poisson(mu); geometric maps to an explicit table truncated
// at machine-precision tail mass; table kinds are exact.
DegreeModel size_biased_offspring(const DegreeModel& model);

// (1 + lambda) / (1 - lambda)^2 for lambda < 1.
double c_lambda(double lambda);

// Upper bound on the probability that red survives along k path edges:
//   C_lambda * (4 lambda / (1+lambda)^2)^k * k^(-3/2),  0 < lambda < 1.
double survival_bound(double lambda, int k);

// The lambda-free constant bounding E|R_n| in the subcritical phase:
//   C = 1 + 3 E[D]^2 / (E[D^2] - E[D]) * (1+Lambda)/(1-Lambda)^2.
// Requires 1 < a < infinity. Overflow near a -> 1+ reports +infinity.
double range_const(const DegreeModel& model);

// P(max of k Exp(lambda) < min of k Exp(1)): the probability that a
// degree-k vertex is open. k = 0 returns 1 (empty max precedes empty min).
// Exact alternating sum for k <= 25, adaptive quadrature beyond.
double open_probability(int k, double lambda);

// The two routes, exposed separately so they can cross-check each other.
double open_probability_series(int k, double lambda);
double open_probability_quadrature(int k, double lambda);

struct TheoryReport {
    double branching_ratio = 0.0;       // a, may be +inf
    double molloy_reed = 0.0;           // E[D(D-2)], may be +inf
    std::optional<double> lambda_crit;  // absent when the giant-component criterion fails
    std::optional<double> range_const;  // absent unless 1 < a < inf
    std::string note;                   // refusal reason when fields are absent
};

TheoryReport theory_report(const DegreeModel& model);

} // namespace chase
