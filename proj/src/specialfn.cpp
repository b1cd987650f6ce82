#include "sixv/specialfn.hpp"

#include "sixv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace sixv {

using cd = std::complex<double>;

ThetaNome::ThetaNome(double q_) : q(q_) {
    if (!(q > 0) || !(q < 1)) throw DomainError("theta nome must lie in (0,1)");
}

ThetaNome ThetaNome::from_gamma(double gamma) {
    if (!(gamma > 0)) throw DomainError("nome needs gamma > 0");
    return ThetaNome(std::exp(-M_PI * M_PI / (2 * gamma)));
}

ThetaValue theta(int ell, double u, const ThetaNome& nome) {
    const double q = nome.q;
    double v = 0, d = 0;
    if (ell == 1 || ell == 2) {
        for (int n = 0; n < 200; ++n) {
            double k = 2 * n + 1;
            double w = 2 * std::pow(q, (n + 0.5) * (n + 0.5));
            if (ell == 1) {
                double s = (n % 2) ? -1.0 : 1.0;
                v += s * w * std::sin(k * u);
                d += s * w * k * std::cos(k * u);
            } else {
                v += w * std::cos(k * u);
                d -= w * k * std::sin(k * u);
            }
            if (w * k < 1e-25 * std::max(1.0, std::abs(v))) break;
        }
    } else if (ell == 3 || ell == 4) {
        v = 1;
        for (int n = 1; n < 200; ++n) {
            double s = (ell == 4 && n % 2) ? -1.0 : 1.0;
            double w = 2 * std::pow(q, static_cast<double>(n) * n);
            v += s * w * std::cos(2 * n * u);
            d -= s * w * 2 * n * std::sin(2 * n * u);
            if (w * 2 * n < 1e-25) break;
        }
    } else {
        throw DomainError("theta index must be 1..4");
    }
    return {v, d};
}

namespace {

double min_gap(const std::vector<double>& v) {
    double g = INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
    return g;
}

double min_gap(const std::vector<cd>& v) {
    double g = INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
    return g;
}

double factorial_prod(int n) {  // 1! 2! ... (n-1)!
    double r = 1, f = 1;
    for (int k = 1; k < n; ++k) {
        f *= k;
        r *= f;
    }
    return r;
}

cd bessel_det(const std::vector<double>& x, const std::vector<cd>& z) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = std::exp(x[i] * z[j]);
    cd den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) den *= (x[i] - x[j]) * (z[i] - z[j]);
    return factorial_prod(n) * m.fullPivLu().determinant() / den;
}

// z = (xi, 0, ..., 0); x pairwise distinct
cd bessel_sum(const std::vector<double>& x, cd xi) {
    const int n = static_cast<int>(x.size());
    if (n == 1) return std::exp(xi * x[0]);
    cd s = 0;
    for (int i = 0; i < n; ++i) {
        double p = 1;
        for (int j = 0; j < n; ++j)
            if (j != i) p *= x[i] - x[j];
        s += std::exp(xi * x[i]) / p;
    }
    double f = 1;
    for (int k = 2; k < n; ++k) f *= k;
    return f * s / std::pow(xi, n - 1);
}

// h[i][r] = complete homogeneous polynomial h_r of the first i+1 variables
template <class T>
std::vector<std::vector<T>> complete_h(const std::vector<T>& v, int rmax) {
    const int n = static_cast<int>(v.size());
    std::vector<std::vector<T>> h(n, std::vector<T>(rmax + 1));
    for (int i = 0; i < n; ++i) {
        h[i][0] = 1;
        for (int r = 1; r <= rmax; ++r) h[i][r] = (i ? h[i - 1][r] : T(0)) + v[i] * h[i][r - 1];
    }
    return h;
}

// Divided-difference form: B = prod k! * det[sum_m h_{m-i}(x_0..x_i) h_{m-j}(z_0..z_j) / m!]
cd bessel_series(const std::vector<double>& x, const std::vector<cd>& z) {
    const int n = static_cast<int>(x.size());
    double X = 0, Z = 0;
    for (double v : x) X = std::max(X, std::abs(v));
    for (cd v : z) Z = std::max(Z, std::abs(v));
    const int M = std::min(3000, static_cast<int>(6 * X * Z) + 2 * n + 60);
    auto hx = complete_h(x, M);
    auto hz = complete_h(z, M);
    std::vector<double> inv_fact(M + 1);
    inv_fact[0] = 1;
    for (int m = 1; m <= M; ++m) inv_fact[m] = inv_fact[m - 1] / m;
    Eigen::MatrixXcd d(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cd s = 0;
            for (int m = std::max(i, j); m <= M; ++m) s += hx[i][m - i] * hz[j][m - j] * inv_fact[m];
            d(i, j) = s;
        }
    }
    return factorial_prod(n) * d.fullPivLu().determinant();
}

}  // namespace

cd mv_bessel(const std::vector<double>& x, const std::vector<cd>& z, BesselRoute route) {
    if (x.size() != z.size() || x.empty()) throw DomainError("mv_bessel needs equal nonzero lengths");
    const std::size_t n = x.size();
    bool all_zero = std::all_of(z.begin(), z.end(), [](cd v) { return v == cd(0); });
    if (all_zero) return 1.0;
    bool sum_shape = std::all_of(z.begin() + 1, z.end(), [](cd v) { return v == cd(0); });
    const double thr = 1e-4;
    if (route == BesselRoute::Auto) {
        if (sum_shape && n > 1 && min_gap(x) > thr)
            route = BesselRoute::Sum;
        else if (n == 1 || (min_gap(x) > thr && min_gap(z) > thr))
            route = BesselRoute::Determinant;
        else
            route = BesselRoute::Series;
    }
    switch (route) {
        case BesselRoute::Sum:
            if (!sum_shape) throw DomainError("sum formula needs z = (xi, 0, ..., 0)");
            if (n > 1 && min_gap(x) == 0) throw ConfluenceError("sum formula needs distinct x");
            return bessel_sum(x, z[0]);
        case BesselRoute::Determinant:
            if (n > 1 && (min_gap(x) == 0 || min_gap(z) == 0))
                throw ConfluenceError("determinant formula needs distinct arguments");
            return bessel_det(x, z);
        default: return bessel_series(x, z);
    }
}

std::vector<cd> haar_unitary(int n, Rng& rng) {
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = cd(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        cd d = r(j, j);
        double a = std::abs(d);
        cd ph = a > 0 ? d / a : cd(1);
        q.col(j) *= ph;
    }
    std::vector<cd> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = q(i, j);
    return out;
}

McEstimate bessel_spherical_mc(const std::vector<double>& x, const std::vector<cd>& z, long samples, Rng& rng) {
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(z.size()) != n || n < 1) throw DomainError("mismatched lengths");
    if (n > 8) throw SizeError("spherical Monte Carlo is limited to n <= 8");
    McEstimate est;
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0; })) {
        est.mean = 1.0;
        return est;
    }
    double sr = 0, si = 0, sr2 = 0, si2 = 0;
    for (long s = 0; s < samples; ++s) {
        auto u = haar_unitary(n, rng);
        cd e = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e += x[i] * z[j] * std::norm(u[static_cast<std::size_t>(i) * n + j]);
        cd v = std::exp(e);
        sr += v.real();
        si += v.imag();
        sr2 += v.real() * v.real();
        si2 += v.imag() * v.imag();
    }
    const double N = static_cast<double>(samples);
    double mr = sr / N, mi = si / N;
    est.mean = cd(mr, mi);
    if (samples > 1) {
        est.stderr_re = std::sqrt(std::max(0.0, (sr2 / N - mr * mr) / (N - 1)));
        est.stderr_im = std::sqrt(std::max(0.0, (si2 / N - mi * mi) / (N - 1)));
    }
    return est;
}

}  // namespace sixv
