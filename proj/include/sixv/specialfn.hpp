#pragma once

#include "sixv/rng.hpp"

#include <complex>
#include <vector>

namespace sixv {

struct ThetaNome {
    double q;
    explicit ThetaNome(double q_);
    static ThetaNome from_gamma(double gamma);  // exp(-pi^2/(2 gamma))
};

struct ThetaValue {
    double value;
    double deriv;  // d/du
};

// Jacobi theta functions with period convention theta_3(u + pi) = theta_3(u).
ThetaValue theta(int ell, double u, const ThetaNome& nome);
inline double theta_logderiv(int ell, double u, const ThetaNome& nome) {
    ThetaValue v = theta(ell, u, nome);
    return v.deriv / v.value;
}

enum class BesselRoute { Auto, Determinant, Sum, Series };

// beta = 2 multivariate Bessel function B_x(z).
std::complex<double> mv_bessel(const std::vector<double>& x, const std::vector<std::complex<double>>& z,
                               BesselRoute route = BesselRoute::Auto);

struct McEstimate {
    std::complex<double> mean;
    double stderr_re = 0, stderr_im = 0;
};

// Haar unitary from the QR factorization of a complex Ginibre matrix.
std::vector<std::complex<double>> haar_unitary(int n, Rng& rng);  // row-major

McEstimate bessel_spherical_mc(const std::vector<double>& x, const std::vector<std::complex<double>>& z,
                               long samples, Rng& rng);

}  // namespace sixv
