#pragma once

#include "sixv/core.hpp"
#include "sixv/mp.hpp"
#include "sixv/rng.hpp"

#include <complex>
#include <vector>

namespace sixv {

struct ChainConfig {
    long sweeps = 1000;
    long burn_in = 1000;
    long thinning = 1;
    void check() const;
};

enum class SupportKind { Lattice2ZNeg, Lattice2Z, Continuum };

// The tilted measure e^{tx} m(dx) of one phase.  Ferro masses carry the sign
// of gamma; mass() returns the signed value.
struct MeasureSpec {
    Phase phase;
    double t, gamma;
    SupportKind support;
    double mass(double x) const;
    Real mass(const Real& x) const;
};

MeasureSpec measure_spec(Phase phase, double t, double gamma);
inline MeasureSpec measure_spec(const PhaseParams& p) { return measure_spec(p.phase, p.t, p.gamma); }

double phi(double t, double gamma, Phase phase);
Real phi(const Real& t, const Real& gamma, Phase phase);

// m_j(u) = j! [s^j] phi(u + s), j < count.  Works for complex u as well,
// which continues the moments analytically beyond the Laplace domain.
template <class S>
std::vector<S> phi_derivatives(Phase phase, const S& u, const Real& gamma, int count);

// Moments of e^{tx} m(dx) through the Taylor coefficients of phi.
std::vector<Real> measure_moments(const MeasureSpec& spec, int count, const PrecisionCtx& prec);

// Independent route: lattice summation or quadrature.  Used as a cross-check.
std::vector<Real> measure_moments_direct(const MeasureSpec& spec, int count, const PrecisionCtx& prec);

struct OrthoBasis {
    std::vector<Real> moments;
    std::vector<Real> alpha;  // P_{k+1} = (x - alpha_k) P_k - beta_k P_{k-1}
    std::vector<Real> beta;   // beta_0 = h_0, beta_k = h_k / h_{k-1}
    std::vector<Real> h;
    int bits = 0;
    int max_degree() const { return static_cast<int>(h.size()) - 1; }
};

// Chebyshev's algorithm on raw moments.  Throws PrecisionError when some
// beta_k stops being positive.
OrthoBasis orthobasis_from_moments(const std::vector<Real>& moments, int bits);

template <class S>
S eval_monic(const OrthoBasis& basis, int k, const S& x) {
    if (k == 0) return S(Real(1));
    S p0(Real(1));
    S p1 = x - S(basis.alpha.at(0));
    for (int j = 1; j < k; ++j) {
        S p2 = (x - S(basis.alpha.at(j))) * p1 - S(basis.beta.at(j)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// Monomial coefficients of P_k, constant term first.
std::vector<Real> monic_coefficients(const OrthoBasis& basis, int k);

struct EquilibriumMeasure {
    Phase phase;
    double t, gamma;
    double alpha, beta;
    double alpha_prime = 0, beta_prime = 0;  // AntiFerro only
    double mu1, mu2;
};

EquilibriumMeasure equilibrium(const PhaseParams& p);
std::complex<double> stieltjes(const EquilibriumMeasure& eq, std::complex<double> z);
std::complex<double> stieltjes_derivative(const EquilibriumMeasure& eq, std::complex<double> z);

// Single-particle Metropolis chain for M^{n,t,gamma}.  Lattice phases move by
// +-2 with occasional geometric long jumps; continuum phases use Gaussian
// steps whose scale adapts toward 30% acceptance while adapt is set.
class LogGasChain {
public:
    LogGasChain(int n, const PhaseParams& p, Rng& rng);
    void sweep(bool adapt = false);
    std::vector<double> sorted() const;

private:
    double log_weight(double x) const;
    int move();

    int n_;
    MeasureSpec spec_;
    Rng& rng_;
    std::vector<double> x_, lw_;
    double scale_ = 1.0;
};

// Returns the sorted n-tuple after burn_in + sweeps sweeps.
std::vector<double> sample_loggas(int n, const PhaseParams& p, const ChainConfig& chain, Rng& rng);

struct ProbeRow {
    int n;
    double mean_exp;  // E exp(|xi_n|)
    double stderr;
};

// f has degree <= 2 (coefficients constant first), the only case where the
// closed-form equilibrium moments determine the centering.
std::vector<ProbeRow> conjecture_probe(const std::vector<int>& n_list, const PhaseParams& p,
                                       const std::vector<double>& f, const ChainConfig& chain, long draws, Rng& rng);

}  // namespace sixv
