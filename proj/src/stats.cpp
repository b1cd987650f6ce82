#include "sixv/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sixv {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance(const std::vector<double>& xs, const std::vector<double>& ps,
                   const std::function<double(double)>& cdf) {
    if (xs.empty() || xs.size() != ps.size()) throw SizeError("ks_distance needs matching nonempty inputs");
    double F = 0, d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double G = cdf(xs[i]);
        d = std::max(d, std::abs(F - G));
        F += ps[i];
        d = std::max(d, std::abs(F - G));
    }
    return d;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw SizeError("empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double G = cdf(sample[i]);
        d = std::max({d, std::abs(static_cast<double>(i) / n - G), std::abs(static_cast<double>(i + 1) / n - G)});
    }
    return d;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    const std::size_t m = std::max(p.size(), q.size());
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = i < p.size() ? p[i] : 0.0, b = i < q.size() ? q[i] : 0.0;
        s += std::abs(a - b);
    }
    return s / 2;
}

ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob) {
    if (observed.size() != expected_prob.size() || observed.empty()) throw SizeError("chi_square size mismatch");
    const double N = std::accumulate(observed.begin(), observed.end(), 0.0);
    const double P = std::accumulate(expected_prob.begin(), expected_prob.end(), 0.0);
    ChiSquare r;
    double pool_o = 0, pool_e = 0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = N * expected_prob[i] / P;
        if (e < 5) {
            pool_o += observed[i];
            pool_e += e;
            continue;
        }
        r.statistic += (observed[i] - e) * (observed[i] - e) / e;
        ++cells;
    }
    if (pool_e > 0) {
        r.statistic += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
        ++cells;
    } else if (pool_o > 0) {
        r.statistic = INFINITY;  // mass where none is expected
    }
    r.dof = std::max(1, cells - 1);
    if (std::isinf(r.statistic)) {
        r.p_value = 0;
    } else {
        boost::math::chi_squared dist(r.dof);
        r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    }
    return r;
}

Moments moments(const std::vector<double>& v) {
    if (v.empty()) throw SizeError("empty sample");
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    for (double x : v) m.var += (x - m.mean) * (x - m.mean);
    if (v.size() > 1) m.var /= static_cast<double>(v.size() - 1);
    return m;
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = "1";
    j["theorem"] = theorem;
    j["params"] = params;
    j["grid"] = grid;
    j["thresholds"] = thresholds;
    j["verdict"] = pass ? "pass" : "fail";
    if (!note.empty()) j["note"] = note;
    return j;
}

}  // namespace sixv
