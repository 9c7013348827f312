#include "chase/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace chase {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DegreeModel DegreeModel::regular(int d) {
    if (d < 0) throw std::invalid_argument("regular degree must be >= 0");
    DegreeModel m;
    m.kind_ = DegreeKind::Regular;
    m.param0_ = d;
    m.mean_ = d;
    m.second_moment_ = static_cast<double>(d) * d;
    return m;
}

DegreeModel DegreeModel::poisson(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("poisson mean must be positive and finite");
    DegreeModel m;
    m.kind_ = DegreeKind::Poisson;
    m.param0_ = mu;
    m.mean_ = mu;
    m.second_moment_ = mu + mu * mu;
    return m;
}

DegreeModel DegreeModel::geometric(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("geometric parameter must lie in (0,1)");
    DegreeModel m;
    m.kind_ = DegreeKind::Geometric;
    m.param0_ = p;
    const double q = 1.0 - p;
    m.mean_ = q / p;
    m.second_moment_ = q * (1.0 + q) / (p * p);
    return m;
}

DegreeModel DegreeModel::power_law(double tau, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("power-law cutoff must be >= 1");
    if (!std::isfinite(tau)) throw std::invalid_argument("power-law exponent must be finite");
    DegreeModel m;
    m.kind_ = DegreeKind::PowerLaw;
    m.param0_ = tau;
    m.param1_ = cutoff;
    m.table_.assign(static_cast<std::size_t>(cutoff) + 1, 0.0);
    double norm = 0.0;
    for (int k = 1; k <= cutoff; ++k) norm += std::pow(k, -tau);
    for (int k = 1; k <= cutoff; ++k) m.table_[k] = std::pow(k, -tau) / norm;
    m.finish_table();
    return m;
}

DegreeModel DegreeModel::from_pmf(std::vector<double> pmf) {
    if (pmf.empty()) throw std::invalid_argument("empty pmf");
    double sum = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("pmf entries must lie in [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("pmf must sum to 1 within 1e-12");
    DegreeModel m;
    m.kind_ = DegreeKind::Explicit;
    m.table_ = std::move(pmf);
    m.finish_table();
    return m;
}

DegreeModel DegreeModel::from_pmf_declared(std::vector<double> pmf, double mean,
                                           double second_moment) {
    DegreeModel m = from_pmf(std::move(pmf));
    m.mean_ = mean;
    m.second_moment_ = second_moment;
    return m;
}

void DegreeModel::finish_table() {
    mean_ = 0.0;
    second_moment_ = 0.0;
    for (std::size_t k = 0; k < table_.size(); ++k) {
        mean_ += static_cast<double>(k) * table_[k];
        second_moment_ += static_cast<double>(k) * k * table_[k];
    }
    cdf_.resize(table_.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < table_.size(); ++k) {
        acc += table_[k];
        cdf_[k] = acc;
    }
    cdf_.back() = 1.0;
}

double DegreeModel::pmf(int k) const {
    if (k < 0) return 0.0;
    switch (kind_) {
        case DegreeKind::Regular:
            return k == static_cast<int>(param0_) ? 1.0 : 0.0;
        case DegreeKind::Poisson: {
            // exp(-mu + k log mu - log k!)
            return std::exp(-param0_ + k * std::log(param0_) - std::lgamma(k + 1.0));
        }
        case DegreeKind::Geometric:
            return param0_ * std::pow(1.0 - param0_, k);
        case DegreeKind::PowerLaw:
        case DegreeKind::Explicit:
            return k < static_cast<int>(table_.size()) ? table_[k] : 0.0;
    }
    return 0.0;
}

int DegreeModel::max_support() const {
    switch (kind_) {
        case DegreeKind::Regular: return static_cast<int>(param0_);
        case DegreeKind::PowerLaw:
        case DegreeKind::Explicit: {
            for (int k = static_cast<int>(table_.size()) - 1; k >= 0; --k)
                if (table_[k] > 0.0) return k;
            return 0;
        }
        default: return -1;
    }
}

int DegreeModel::sample(Rng& rng) const {
    switch (kind_) {
        case DegreeKind::Regular:
            return static_cast<int>(param0_);
        case DegreeKind::Poisson:
            return std::poisson_distribution<int>(param0_)(rng);
        case DegreeKind::Geometric:
            return std::geometric_distribution<int>(param0_)(rng);
        case DegreeKind::PowerLaw:
        case DegreeKind::Explicit: {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
            return static_cast<int>(it - cdf_.begin());
        }
    }
    return 0;
}

std::string DegreeModel::to_string() const {
    std::ostringstream os;
    switch (kind_) {
        case DegreeKind::Regular: os << "regular:" << static_cast<int>(param0_); break;
        case DegreeKind::Poisson: os << "poisson:" << param0_; break;
        case DegreeKind::Geometric: os << "geometric:" << param0_; break;
        case DegreeKind::PowerLaw:
            os << "powerlaw:" << param0_ << ":" << static_cast<int>(param1_);
            break;
        case DegreeKind::Explicit: {
            os << "explicit[";
            bool first = true;
            for (std::size_t k = 0; k < table_.size(); ++k) {
                if (table_[k] == 0.0) continue;
                if (!first) os << ",";
                os << k << ":" << table_[k];
                first = false;
            }
            os << "]";
            break;
        }
    }
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

double parse_real(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + s + "'");
    return v;
}

DegreeModel parse_pmf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pmf file: " + path);
    std::vector<double> pmf;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        long long k;
        double p;
        if (!(is >> k)) continue;
        if (!(is >> p)) throw std::invalid_argument("malformed pmf line: " + line);
        if (k < 0) throw std::invalid_argument("pmf support must be nonnegative");
        if (k >= static_cast<long long>(pmf.size())) pmf.resize(k + 1, 0.0);
        pmf[k] = p;
    }
    if (pmf.empty()) throw std::invalid_argument("pmf file has no entries: " + path);
    return DegreeModel::from_pmf(std::move(pmf));
}

} // namespace

DegreeModel DegreeModel::parse(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty model spec");
    const std::string& name = parts[0];
    if (name == "regular" && parts.size() == 2) {
        const double d = parse_real(parts[1], "regular degree");
        if (d != std::floor(d)) throw std::invalid_argument("regular degree must be an integer");
        return regular(static_cast<int>(d));
    }
    if (name == "poisson" && parts.size() == 2)
        return poisson(parse_real(parts[1], "poisson mean"));
    if (name == "geometric" && parts.size() == 2)
        return geometric(parse_real(parts[1], "geometric parameter"));
    if (name == "powerlaw" && parts.size() == 3) {
        const double tau = parse_real(parts[1], "power-law exponent");
        const double cut = parse_real(parts[2], "power-law cutoff");
        if (cut != std::floor(cut) || cut < 1)
            throw std::invalid_argument("power-law cutoff must be a positive integer");
        return power_law(tau, static_cast<int>(cut));
    }
    if (std::ifstream(spec).good()) return parse_pmf_file(spec);
    throw std::invalid_argument("unrecognized model spec: '" + spec + "'");
}

} // namespace chase
