#pragma once

#include "sixv/core.hpp"
#include "sixv/loggas.hpp"
#include "sixv/mp.hpp"
#include "sixv/rng.hpp"

#include <json.hpp>

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace sixv {

double normal_cdf(double x);

// Exact law on the points xs (increasing) with masses ps against a continuous
// cdf; both one-sided limits at every atom are checked.
double ks_distance(const std::vector<double>& xs, const std::vector<double>& ps,
                   const std::function<double(double)>& cdf);
// Empirical version; the sample is copied and sorted.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

double tv_distance(const std::vector<double>& p, const std::vector<double>& q);
template <class K>
double tv_distance(const std::map<K, double>& p, const std::map<K, double>& q) {
    double s = 0;
    for (const auto& [k, v] : p) {
        auto it = q.find(k);
        s += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : q)
        if (!p.count(k)) s += std::abs(v);
    return s / 2;
}

struct ChiSquare {
    double statistic = 0;
    int dof = 0;
    double p_value = 1;
};
// Cells with expected count below 5 are pooled into one cell.
ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob);

struct Moments {
    double mean = 0, var = 0;
    double stderr_mean(long n) const { return std::sqrt(var / static_cast<double>(n)); }
};
Moments moments(const std::vector<double>& v);

struct VerifyReport {
    std::string theorem;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json grid = nlohmann::json::array();
    nlohmann::json thresholds = nlohmann::json::object();
    bool pass = false;
    std::string note;
    nlohmann::json to_json() const;
};

// Exact law of lambda_1^1 standardized by (m n, s sqrt n), KS against N(0,1).
// Pass: KS strictly decreasing; |mean| and |var - 1| nonincreasing.
VerifyReport verify_gaussian_limit(const WeightTriple& w, const std::vector<int>& n_grid,
                                   const PrecisionCtx& prec = {});

// TV between the exact lambda_1^1 law and Geom(b1).  Pass: strictly
// decreasing, final value <= final_threshold (when given).
VerifyReport verify_geometric_limit(const WeightTriple& w, const std::vector<int>& n_grid,
                                    double final_threshold = -1, const PrecisionCtx& prec = {});

// MCMC (lambda_1^2, lambda_2^2), standardized, against GUE corners at k = 2.
// Pass: interlacing always, and means, variances and the covariance within
// tol of the corners reference.
VerifyReport verify_corners_joint(const WeightTriple& w, int n, long draws, const ChainConfig& chain, Rng& rng,
                                  double tol = 0.15);

struct MallowsOptions {
    int k = 2;
    std::vector<int> n_grid{8, 32, 128};
    long draws = 100000;
    double mc_tv_limit = 0.01;
    double theta = 2.0;  // for the eta comparison at q = e^{theta/n}
};
// Exact TV of the first k letters (finite Mallows vs q-shuffle prefix), a
// Monte Carlo check of the two samplers, and the eta-density route.
VerifyReport verify_mallows(double a, double b, const MallowsOptions& opt, Rng& rng);

// e_n = |exact / predicted - 1| over the grid.  Pass: consecutive ratios of
// e_n sqrt(n) at most max_ratio and max e_n sqrt(n) <= band * e_{n0} sqrt(n0).
// Points already at double rounding (<= 1e-12) are not held to the ratio.
VerifyReport verify_expansions(Phase expected, const PhaseParams& p, const std::vector<std::complex<double>>& xi,
                               const std::vector<int>& n_grid, double band = 2.0, double max_ratio = 1.1,
                               const PrecisionCtx& prec = {});

// "T2.4".."T2.7" <-> phase of the expansion.
Phase expansion_phase(const std::string& theorem);
std::string expansion_theorem(Phase p);

}  // namespace sixv
