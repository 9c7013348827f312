#include "chase/theory.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chase {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double branching_ratio(const DegreeModel& model) {
    const double mu = model.mean();
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::domain_error("branching ratio needs a positive finite mean degree");
    const double m2 = model.second_moment();
    if (std::isinf(m2)) return kInf;
    return m2 / mu - 1.0;
}

double lambda_crit(double a) {
    if (std::isinf(a)) return 0.0;
    if (!(a >= 1.0))
        throw std::domain_error("lambda_crit is defined for branching number a >= 1");
    return 1.0 / (2.0 * a - 1.0 + 2.0 * std::sqrt(a * (a - 1.0)));
}

double molloy_reed(const DegreeModel& model) {
    const double m2 = model.second_moment();
    if (std::isinf(m2)) return kInf;
    return m2 - 2.0 * model.mean();
}

DegreeModel size_biased_offspring(const DegreeModel& model) {
    const double mu = model.mean();
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::domain_error("size-biasing needs a positive finite mean degree");
    switch (model.kind()) {
        case DegreeKind::Regular: {
            const int d = model.max_support();
            return DegreeModel::regular(d - 1);
        }
        case DegreeKind::Poisson:
            // size-biasing a Poisson and shifting down reproduces it
            return DegreeModel::poisson(mu);
        case DegreeKind::Geometric: {
            // D* - 1 is negative binomial NB(2, p) with pmf (j+1) p^2 q^j;
            // tabulate until the remaining tail mass is below machine precision
            const double p = model.pmf(0);
            const double q = 1.0 - p;
            std::vector<double> pmf;
            double cum = 0.0;
            double term = p * p;  // j = 0
            for (int j = 0; cum < 1.0 - 1e-15 || term > 1e-18; ++j) {
                pmf.push_back(term);
                cum += term;
                term = term * q * (j + 2.0) / (j + 1.0);
                if (j > 1000000) throw std::runtime_error("size-biased table runaway");
            }
            for (double& v : pmf) v /= cum;
            return DegreeModel::from_pmf(std::move(pmf));
        }
        case DegreeKind::PowerLaw:
        case DegreeKind::Explicit: {
            const int kmax = model.max_support();
            if (kmax < 1) throw std::domain_error("size-biasing needs support above 0");
            std::vector<double> pmf(kmax, 0.0);
            for (int j = 0; j + 1 <= kmax; ++j)
                pmf[j] = (j + 1.0) * model.pmf(j + 1) / mu;
            double sum = 0.0;
            for (double v : pmf) sum += v;
            for (double& v : pmf) v /= sum;
            return DegreeModel::from_pmf(std::move(pmf));
        }
    }
    throw std::logic_error("unreachable");
}

double c_lambda(double lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::domain_error("C_lambda requires 0 < lambda < 1");
    const double d = 1.0 - lambda;
    return (1.0 + lambda) / (d * d);
}

double survival_bound(double lambda, int k) {
    if (k < 1) throw std::domain_error("survival bound requires k >= 1");
    const double ratio = 4.0 * lambda / ((1.0 + lambda) * (1.0 + lambda));
    return c_lambda(lambda) * std::pow(ratio, k) * std::pow(k, -1.5);
}

double range_const(const DegreeModel& model) {
    const double a = branching_ratio(model);
    if (std::isinf(a) || !(a > 1.0))
        throw std::domain_error("range constant requires 1 < a < infinity");
    const double L = lambda_crit(a);
    const double mu = model.mean();
    const double d = 1.0 - L;
    return 1.0 + 3.0 * mu * mu / (model.second_moment() - mu) * (1.0 + L) / (d * d);
}

double open_probability_series(int k, double lambda) {
    if (k < 0) throw std::domain_error("open probability needs k >= 0");
    if (!(lambda > 0.0)) throw std::domain_error("open probability needs lambda > 0");
    if (k == 0) return 1.0;
    // sum_{j=0}^{k} C(k,j) (-1)^j k/(k + j lambda); the terms grow to
    // C(k, k/2) so accumulate in long double to keep the cancellation noise
    // below the 1e-9 cross-check tolerance at k = 25
    long double sum = 0.0L;
    long double binom = 1.0L;  // C(k, j)
    const long double lk = k;
    const long double ll = lambda;
    for (int j = 0; j <= k; ++j) {
        const long double term = binom * lk / (lk + j * ll);
        sum += (j % 2 == 0) ? term : -term;
        binom = binom * (k - j) / (j + 1.0L);
    }
    const double out = static_cast<double>(sum);
    return std::min(1.0, std::max(0.0, out));
}

double open_probability_quadrature(int k, double lambda) {
    if (k < 0) throw std::domain_error("open probability needs k >= 0");
    if (!(lambda > 0.0)) throw std::domain_error("open probability needs lambda > 0");
    if (k == 0) return 1.0;
    const auto integrand = [k, lambda](double x) {
        // (1 - e^(-lambda x))^k * k e^(-k x); evaluate the power via
        // exp(k log1p(-e^(-lambda x))) to stay accurate for small x
        const double base = -std::expm1(-lambda * x);
        if (base <= 0.0) return 0.0;
        return std::exp(k * std::log(base) - k * x) * k;
    };
    double error = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, kInf, 15, 1e-12, &error);
    return std::min(1.0, std::max(0.0, v));
}

double open_probability(int k, double lambda) {
    return k <= 25 ? open_probability_series(k, lambda)
                   : open_probability_quadrature(k, lambda);
}

TheoryReport theory_report(const DegreeModel& model) {
    TheoryReport rep;
    rep.branching_ratio = branching_ratio(model);
    rep.molloy_reed = molloy_reed(model);
    if (rep.molloy_reed > 0.0) {
        rep.lambda_crit = lambda_crit(rep.branching_ratio);
        if (std::isfinite(rep.branching_ratio))
            rep.range_const = range_const(model);
        else
            rep.note = "E[D^2] infinite: critical rate 0, no finite range constant";
    } else {
        rep.note = "Molloy-Reed criterion E[D(D-2)] > 0 fails: no giant-component regime";
    }
    return rep;
}

} // namespace chase
