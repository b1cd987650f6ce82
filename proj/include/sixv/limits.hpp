#pragma once

#include "sixv/core.hpp"
#include "sixv/mp.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace sixv {

struct LimitConstants {
    std::optional<double> m_const, s_const;  // Delta < 1
    std::optional<double> b1, b2;            // Delta > 1
    std::optional<double> mallows_q;         // b^2/a^2
    std::optional<double> sigma;
};

// Mean and standard deviation scales of lambda_1^1 for Delta < 1.
std::pair<double, double> gue_constants(const PhaseParams& p);
std::pair<double, double> gue_constants(double a, double b, double c);

// Turning probabilities of the limiting stochastic model.  For a < b the
// roles of a and b are swapped; the result then describes n + 1 - lambda.
std::pair<double, double> stochastic_params(double a, double b, double c);

struct StochasticMatch {
    double q, w;
};
StochasticMatch stochastic_weight_match(const PhaseParams& p);

double sigma(const PhaseParams& p);

LimitConstants limit_constants(double a, double b, double c);

// Leading-order prediction of the normalized partition function.  Ferro
// predicts Z~_n(xi) directly; the other phases predict Z~_n(xi / sqrt(n)).
// `expected` guards against calling the wrong expansion for the weights.
std::complex<double> expansion_predict(Phase expected, int n, const std::vector<std::complex<double>>& xi,
                                       const PhaseParams& p);

// The exact value that expansion_predict approximates (same scaling of xi).
std::complex<double> expansion_exact(int n, const std::vector<std::complex<double>>& xi, const PhaseParams& p,
                                     const PrecisionCtx& prec = {});

// Partition function of the k x n rectangle with k paths entering on the left
// and leaving at the top at columns nu; row j uses the spectral parameter
// t + xi_j.  Evaluated as a sum over interlacing arrays below nu.
Real f_sym(const Row& nu, const std::vector<double>& xi, const PhaseParams& p, int n,
           const PrecisionCtx& prec = {});

// f_sym(xi) prod a(t+xi_j)^{-n} / (f_sym(0) a(t)^{-kn}); independent of n.
double f_sym_normalized(const Row& nu, const std::vector<double>& xi, const PhaseParams& p,
                        const PrecisionCtx& prec = {});

// Ratio of f_sym_normalized(eps xi) to its Bessel-function approximation with
// shift M.  Tends to 1 as eps -> 0 with eps (nu - M) bounded.
double f_to_bessel_ratio(const Row& nu, int M, const std::vector<double>& xi, double eps, const PhaseParams& p);

// Symmetrized rational formula for the stochastic-weight strip partition
// function.  Coinciding w's are resolved by averaging over a small circle.
std::complex<double> f_st(const Row& nu, const std::vector<std::complex<double>>& w, double q);

// Same function from the lattice sum over the strip (columns 1..nu_k).
std::complex<double> f_st_lattice(const Row& nu, const std::vector<std::complex<double>>& w, double q);

// Normalized stochastic partition function via the symmetric-weight Z~ and
// the explicit prefactor relating the two.
std::complex<double> ztilde_stochastic(int n, const std::vector<std::complex<double>>& w_vec, double q, double w,
                                       const PrecisionCtx& prec = {});

}  // namespace sixv
