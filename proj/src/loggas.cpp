#include "sixv/loggas.hpp"

#include "sixv/specialfn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace sixv {

using cd = std::complex<double>;
namespace bmp = boost::multiprecision;

void ChainConfig::check() const {
    if (sweeps < 1 || burn_in < 0 || thinning < 1) throw DomainError("chain parameters must be positive");
}

MeasureSpec measure_spec(Phase phase, double t, double gamma) {
    PhaseParams p;
    p.phase = phase;
    p.t = t;
    p.gamma = gamma;
    check_params(p);
    MeasureSpec s{phase, t, gamma, SupportKind::Continuum};
    if (phase == Phase::Ferro) s.support = SupportKind::Lattice2ZNeg;
    if (phase == Phase::AntiFerro) s.support = SupportKind::Lattice2Z;
    return s;
}

double MeasureSpec::mass(double x) const {
    switch (phase) {
        case Phase::Ferro: return x < 0 ? 4 * std::sinh(-gamma * x) * std::exp(t * x) : 0.0;  // 4: with 2 the Laplace transform is phi/2
        case Phase::AntiFerro: return 2 * std::exp(-gamma * std::abs(x) + t * x);
        case Phase::Boundary: return std::exp(-gamma * std::abs(x) + t * x);
        case Phase::Disordered: {
            if (x == 0) return (M_PI - 2 * gamma) / M_PI;
            double ax = std::abs(x), A = (M_PI - 2 * gamma) / 2, B = M_PI / 2;
            double r = std::exp(-gamma * ax) * -std::expm1(-2 * A * ax) / -std::expm1(-2 * B * ax);
            return r * std::exp(t * x);
        }
    }
    return 0;
}

Real MeasureSpec::mass(const Real& x) const {
    Real g(gamma), tt(t);
    switch (phase) {
        case Phase::Ferro: return x < 0 ? Real(4 * bmp::sinh(Real(-g * x)) * bmp::exp(Real(tt * x))) : Real(0);
        case Phase::AntiFerro: return Real(2 * bmp::exp(Real(-g * bmp::abs(x) + tt * x)));
        case Phase::Boundary: return Real(bmp::exp(Real(-g * bmp::abs(x) + tt * x)));
        case Phase::Disordered: {
            Real pi = real_pi();
            if (x == 0) return Real((pi - 2 * g) / pi);
            Real ax = bmp::abs(x);
            Real A = (pi - 2 * g) / 2, B = pi / 2;
            Real num = 1 - bmp::exp(Real(-2 * A * ax));
            Real den = 1 - bmp::exp(Real(-2 * B * ax));
            return Real(bmp::exp(Real(-g * ax + tt * x)) * num / den);
        }
    }
    return Real(0);
}

double phi(double t, double gamma, Phase phase) {
    double ab = weight_a(phase, t, gamma) * weight_b(phase, t, gamma);
    if (ab == 0) throw DomainError("phi has a pole here");
    return weight_c(phase, gamma) / ab;
}

Real phi(const Real& t, const Real& gamma, Phase phase) {
    Real ab = weight_a(phase, t, gamma) * weight_b(phase, t, gamma);
    if (ab == 0) throw DomainError("phi has a pole here");
    return Real(weight_c(phase, gamma) / ab);
}

namespace {

enum class Fn { Sinh, Sin, Linear };

// Taylor coefficients of f(a0 + sgn*s) up to s^(count-1).
template <class S>
std::vector<S> shifted_series(Fn f, const S& a0, int sgn, int count) {
    std::vector<S> c(count, S(Real(0)));
    if (f == Fn::Linear) {
        c[0] = a0;
        if (count > 1) c[1] = S(Real(sgn));
        return c;
    }
    S v0, v1;
    if (f == Fn::Sinh) {
        v0 = sinh(a0);
        v1 = cosh(a0);
    } else {
        v0 = sin(a0);
        v1 = cos(a0);
    }
    Real inv_fact(1);
    for (int k = 0; k < count; ++k) {
        if (k > 0) inv_fact /= k;
        S d;
        if (f == Fn::Sinh) {
            d = (k % 2 == 0) ? v0 : v1;
        } else {
            switch (k % 4) {
                case 0: d = v0; break;
                case 1: d = v1; break;
                case 2: d = -v0; break;
                default: d = -v1; break;
            }
        }
        Real coef = (sgn < 0 && k % 2 == 1) ? Real(-inv_fact) : inv_fact;
        c[k] = d * S(coef);
    }
    return c;
}

}  // namespace

template <class S>
std::vector<S> phi_derivatives(Phase phase, const S& u, const Real& gamma, int count) {
    const S g(gamma);
    Fn f = Fn::Sinh;
    if (phase == Phase::Disordered) f = Fn::Sin;
    if (phase == Phase::Boundary) f = Fn::Linear;
    std::vector<S> A, B;
    if (phase == Phase::Ferro)
        A = shifted_series(f, S(u - g), +1, count);
    else
        A = shifted_series(f, S(g - u), -1, count);
    B = shifted_series(f, S(u + g), +1, count);

    std::vector<S> P(count, S(Real(0)));
    for (int i = 0; i < count; ++i)
        for (int j = 0; i + j < count; ++j) P[i + j] += A[i] * B[j];
    if (sc_is_zero(P[0])) throw DomainError("phi has a pole at the expansion point");

    std::vector<S> R(count);
    S inv0 = S(Real(1)) / P[0];
    R[0] = inv0;
    for (int k = 1; k < count; ++k) {
        S acc(Real(0));
        for (int i = 1; i <= k; ++i) acc += P[i] * R[k - i];
        R[k] = -(acc * inv0);
    }
    const S c = weight_c(phase, S(gamma));
    Real fact(1);
    for (int k = 0; k < count; ++k) {
        if (k > 0) fact *= k;
        R[k] = R[k] * c * S(fact);
    }
    return R;
}

template std::vector<Real> phi_derivatives<Real>(Phase, const Real&, const Real&, int);
template std::vector<CReal> phi_derivatives<CReal>(Phase, const CReal&, const Real&, int);

std::vector<Real> measure_moments(const MeasureSpec& spec, int count, const PrecisionCtx& prec) {
    PrecisionGuard guard(prec.mantissa_bits);
    return phi_derivatives<Real>(spec.phase, Real(spec.t), Real(spec.gamma), count);
}

std::vector<Real> measure_moments_direct(const MeasureSpec& spec, int count, const PrecisionCtx& prec) {
    PrecisionGuard guard(prec.mantissa_bits);
    std::vector<Real> m(count, Real(0));
    const Real eps = bmp::pow(Real(2), -prec.mantissa_bits);
    if (spec.support != SupportKind::Continuum) {
        // walk outward from 0 until every moment's tail is negligible
        const double rate = spec.support == SupportKind::Lattice2ZNeg ? spec.t - std::abs(spec.gamma)
                                                                      : spec.gamma - std::abs(spec.t);
        const double peak = (count + 1) / rate;
        auto add = [&](long x) {
            Real xr(x);
            Real w = spec.mass(xr);
            Real xp(1);
            bool small = true;
            for (int j = 0; j < count; ++j) {
                Real term = xp * w;
                m[j] += term;
                if (bmp::abs(term) > eps * bmp::abs(m[j])) small = false;
                xp *= xr;
            }
            return small;
        };
        if (spec.support == SupportKind::Lattice2Z) add(0);
        for (long k = 1;; ++k) {
            bool s1 = add(-2 * k);
            bool s2 = spec.support == SupportKind::Lattice2Z ? add(2 * k) : true;
            if (s1 && s2 && 2.0 * k > peak) break;
            if (k > 10000000) throw DomainError("lattice sum does not converge");
        }
        return m;
    }
    // sinh-sinh double exponential trapezoid on the real line; the Boundary
    // density has a kink at 0, so there each half line gets exp-sinh
    const Real half_pi = real_pi() / 2;
    const bool kink = spec.phase == Phase::Boundary;
    auto integrate_level = [&](const Real& h, int parity_only_odd) {
        std::vector<Real> s(count, Real(0));
        const double T = 5.0;
        long kmax = static_cast<long>(T / h.convert_to<double>());
        for (long k = -kmax; k <= kmax; ++k) {
            if (parity_only_odd && (k % 2 == 0)) continue;
            Real tau = h * k;
            Real sh = bmp::sinh(tau);
            Real xp(1);
            if (kink) {
                Real x = bmp::exp(Real(half_pi * sh));
                Real jac = half_pi * bmp::cosh(tau) * x;
                Real wp = spec.mass(x) * jac, wm = spec.mass(Real(-x)) * jac;
                for (int j = 0; j < count; ++j) {
                    s[j] += xp * (j % 2 ? Real(wp - wm) : Real(wp + wm));
                    xp *= x;
                }
                continue;
            }
            Real x = bmp::sinh(Real(half_pi * sh));
            Real jac = half_pi * bmp::cosh(tau) * bmp::cosh(Real(half_pi * sh));
            Real w = spec.mass(x) * jac;
            for (int j = 0; j < count; ++j) {
                s[j] += xp * w;
                xp *= x;
            }
        }
        return s;
    };
    Real h(0.125);
    std::vector<Real> sum = integrate_level(h, 0);
    std::vector<Real> est(count);
    for (int j = 0; j < count; ++j) est[j] = sum[j] * h;
    for (int level = 0; level < 14; ++level) {
        h /= 2;
        std::vector<Real> odd = integrate_level(h, 1);
        bool done = level >= 2;
        for (int j = 0; j < count; ++j) {
            sum[j] += odd[j];
            Real ne = sum[j] * h;
            if (bmp::abs(Real(ne - est[j])) > Real(eps * 64) * bmp::abs(ne)) done = false;
            est[j] = ne;
        }
        if (done) break;
    }
    return est;
}

OrthoBasis orthobasis_from_moments(const std::vector<Real>& mom, int bits) {
    PrecisionGuard guard(bits);
    const int M = static_cast<int>(mom.size());
    if (M < 1) throw DomainError("need at least one moment");
    OrthoBasis ob;
    ob.bits = bits;
    ob.moments = mom;
    const int K = (M + 1) / 2;  // number of h_k available
    std::vector<Real> s_prev2(M, Real(0)), s_prev(mom.begin(), mom.end()), s_cur(M, Real(0));
    ob.h.push_back(mom[0]);
    ob.beta.push_back(mom[0]);
    if (mom[0] == 0) throw PrecisionError("zero total mass", bits * 2);
    if (M >= 2) ob.alpha.push_back(Real(mom[1] / mom[0]));
    for (int k = 1; k < K; ++k) {
        const Real& a = ob.alpha[k - 1];
        const Real& b = ob.beta[k - 1];
        for (int l = k; l <= M - 1 - k; ++l) {
            s_cur[l] = s_prev[l + 1] - a * s_prev[l] - (k >= 2 ? Real(b * s_prev2[l]) : Real(0));
        }
        Real hk = s_cur[k];
        Real bk = hk / ob.h[k - 1];
        if (!(bk > 0)) throw PrecisionError("recurrence lost positivity at degree " + std::to_string(k), bits * 2);
        ob.h.push_back(hk);
        ob.beta.push_back(bk);
        if (k + 1 <= M - 1 - k) ob.alpha.push_back(Real(s_cur[k + 1] / s_cur[k] - s_prev[k] / s_prev[k - 1]));
        std::swap(s_prev2, s_prev);
        std::swap(s_prev, s_cur);
    }
    return ob;
}

std::vector<Real> monic_coefficients(const OrthoBasis& basis, int k) {
    PrecisionGuard guard(basis.bits);
    if (k < 0 || k > static_cast<int>(basis.alpha.size())) throw DomainError("degree outside the basis");
    std::vector<Real> p0{Real(1)};
    if (k == 0) return p0;
    std::vector<Real> p1{Real(-basis.alpha[0]), Real(1)};
    for (int j = 1; j < k; ++j) {
        std::vector<Real> p2(j + 2, Real(0));
        for (int i = 0; i <= j; ++i) {
            p2[i + 1] += p1[i];
            p2[i] -= basis.alpha[j] * p1[i];
        }
        for (int i = 0; i < j; ++i) p2[i] -= basis.beta[j] * p0[i];
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

EquilibriumMeasure equilibrium(const PhaseParams& p) {
    check_params(p);
    EquilibriumMeasure eq{};
    eq.phase = p.phase;
    eq.t = p.t;
    eq.gamma = p.gamma;
    const double t = p.t, g = p.gamma;
    switch (p.phase) {
        case Phase::Ferro: {
            double e = std::exp(t - std::abs(g));
            eq.alpha = -2 * (e - 1) / (e + 1);
            eq.beta = -2 * (e + 1) / (e - 1);
            break;
        }
        case Phase::Disordered:
        case Phase::Boundary:
            eq.alpha = -(M_PI / g) * std::tan(M_PI / 4 * (1 - t / g));
            eq.beta = (M_PI / g) * std::tan(M_PI / 4 * (1 + t / g));
            break;
        case Phase::AntiFerro: {
            ThetaNome q = ThetaNome::from_gamma(g);
            double w = M_PI * (t + g) / (4 * g);
            eq.alpha = -(M_PI / g) * theta_logderiv(1, w, q);
            eq.alpha_prime = -(M_PI / g) * theta_logderiv(4, w, q);
            eq.beta = -(M_PI / g) * theta_logderiv(2, w, q);
            eq.beta_prime = -(M_PI / g) * theta_logderiv(3, w, q);
            double S = eq.alpha + eq.alpha_prime + eq.beta + eq.beta_prime;
            double Q = eq.alpha * eq.alpha + eq.alpha_prime * eq.alpha_prime + eq.beta * eq.beta +
                       eq.beta_prime * eq.beta_prime;
            eq.mu1 = S / 4;
            eq.mu2 = Q / 12 + S * S / 24;
            return eq;
        }
    }
    // same expansion of -1/(z sqrt((z-alpha)(z-beta))) for the two-endpoint cases
    eq.mu1 = (eq.alpha + eq.beta) / 4;
    eq.mu2 = (3 * eq.alpha * eq.alpha + 2 * eq.alpha * eq.beta + 3 * eq.beta * eq.beta) / 24;
    return eq;
}

namespace {

bool on_support(const EquilibriumMeasure& eq, cd z) {
    if (z.imag() != 0) return false;
    double lo = std::min(eq.alpha, eq.beta), hi = std::max(eq.alpha, eq.beta);
    if (eq.phase == Phase::Ferro) hi = 0;
    return z.real() >= lo && z.real() <= hi;
}

cd log_bracket(const EquilibriumMeasure& eq, cd z) {
    const double a = eq.alpha, b = eq.beta;
    // split roots keep the branch continued from large positive z; sqrt of the
    // product jumps on the real axis to the right of the support
    cd A = std::sqrt(cd(-a)) * std::sqrt(z - b);
    cd B = std::sqrt(cd(-b)) * std::sqrt(z - a);
    return std::log((A - B) * (A - B) / (z * (a - b)));
}

}  // namespace

cd stieltjes(const EquilibriumMeasure& eq, cd z) {
    if (on_support(eq, z)) throw DomainError("Stieltjes transform evaluated on the support");
    switch (eq.phase) {
        case Phase::Ferro: return (std::abs(eq.gamma) - eq.t) / 2 - 0.5 * log_bracket(eq, z);
        case Phase::Disordered:
        case Phase::Boundary: return (eq.gamma - eq.t) / 2 + cd(0, eq.gamma / M_PI) * log_bracket(eq, z);
        case Phase::AntiFerro: {
            // radial path zeta = z (1 + s/(1-s)), s in [0,1)
            auto integrand = [&](double s) -> cd {
                if (s >= 1) return 0.0;
                double u = s / (1 - s);
                cd zeta = z * (1 + u);
                cd root = std::sqrt(zeta - eq.alpha) * std::sqrt(zeta - eq.alpha_prime) *
                          std::sqrt(zeta - eq.beta) * std::sqrt(zeta - eq.beta_prime);
                return z / ((1 - s) * (1 - s)) / root;
            };
            using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
            double re = GK::integrate([&](double s) { return integrand(s).real(); }, 0.0, 1.0, 20, 1e-14);
            double im = GK::integrate([&](double s) { return integrand(s).imag(); }, 0.0, 1.0, 20, 1e-14);
            return {re, im};
        }
    }
    return 0.0;
}

cd stieltjes_derivative(const EquilibriumMeasure& eq, cd z) {
    if (on_support(eq, z)) throw DomainError("Stieltjes transform evaluated on the support");
    if (eq.phase == Phase::AntiFerro)
        return -1.0 / (std::sqrt(z - eq.alpha) * std::sqrt(z - eq.alpha_prime) * std::sqrt(z - eq.beta) *
                       std::sqrt(z - eq.beta_prime));
    return -1.0 / (z * std::sqrt(z - eq.alpha) * std::sqrt(z - eq.beta));
}

LogGasChain::LogGasChain(int n, const PhaseParams& p, Rng& rng) : n_(n), spec_(measure_spec(p)), rng_(rng) {
    x_.resize(n);
    for (int i = 0; i < n; ++i) {
        switch (spec_.support) {
            case SupportKind::Lattice2ZNeg: x_[i] = -2.0 * (i + 1); break;
            case SupportKind::Lattice2Z: x_[i] = 2.0 * (i - n / 2); break;
            case SupportKind::Continuum: x_[i] = (i - n / 2.0) + 0.5; break;
        }
    }
    lw_.resize(n);
    for (int i = 0; i < n; ++i) lw_[i] = log_weight(x_[i]);
}

void LogGasChain::sweep(bool adapt) {
    long acc = 0;
    for (int s = 0; s < n_; ++s) acc += move();
    if (adapt && spec_.support == SupportKind::Continuum) {
        double rate = static_cast<double>(acc) / n_;
        scale_ *= std::exp(rate - 0.3);
        scale_ = std::clamp(scale_, 1e-3, 1e3);
    }
}

std::vector<double> LogGasChain::sorted() const {
    auto v = x_;
    std::sort(v.begin(), v.end());
    return v;
}

double LogGasChain::log_weight(double x) const {
    const double t = spec_.t, g = spec_.gamma;
    switch (spec_.phase) {
        case Phase::Ferro:
            if (x >= 0) return -INFINITY;
            return std::log(4 * std::abs(std::sinh(g * x))) + t * x;
        case Phase::AntiFerro: return std::log(2.0) - g * std::abs(x) + t * x;
        case Phase::Boundary: return -g * std::abs(x) + t * x;
        case Phase::Disordered: {
            const double A = (M_PI - 2 * g) / 2, B = M_PI / 2;
            double ax = std::abs(x);
            if (ax < 1e-12) return std::log(A / B);
            return -g * ax + std::log(-std::expm1(-2 * A * ax)) - std::log(-std::expm1(-2 * B * ax)) + t * x;
        }
    }
    return 0;
}

int LogGasChain::move() {
    int i = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_)));
    double xn;
    if (spec_.support == SupportKind::Continuum) {
        xn = x_[i] + scale_ * rng_.normal();
    } else {
        long len = 1;
        if (rng_.uniform() < 0.1) len = static_cast<long>(rng_.geometric_trials(0.8));
        xn = x_[i] + (rng_.bernoulli(0.5) ? 2.0 : -2.0) * len;
    }
    double lwn = log_weight(xn);
    if (!std::isfinite(lwn)) return 0;
    double d = lwn - lw_[i];
    for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        double dn = std::abs(xn - x_[j]);
        if (dn == 0) return 0;
        d += 2 * (std::log(dn) - std::log(std::abs(x_[i] - x_[j])));
    }
    if (d >= 0 || rng_.uniform() < std::exp(d)) {
        x_[i] = xn;
        lw_[i] = lwn;
        return 1;
    }
    return 0;
}

std::vector<double> sample_loggas(int n, const PhaseParams& p, const ChainConfig& chain, Rng& rng) {
    if (n < 1) throw DomainError("n must be positive");
    chain.check();
    LogGasChain c(n, p, rng);
    for (long s = 0; s < chain.burn_in; ++s) c.sweep(true);
    for (long s = 0; s < chain.sweeps; ++s) c.sweep(false);
    return c.sorted();
}

std::vector<ProbeRow> conjecture_probe(const std::vector<int>& n_list, const PhaseParams& p,
                                       const std::vector<double>& f, const ChainConfig& chain, long draws, Rng& rng) {
    if (f.size() > 3) throw DomainError("probe supports polynomials of degree <= 2");
    chain.check();
    EquilibriumMeasure eq = equilibrium(p);
    auto coef = [&](std::size_t k) { return k < f.size() ? f[k] : 0.0; };
    const double mean_f = coef(0) + coef(1) * eq.mu1 + coef(2) * eq.mu2;
    std::vector<ProbeRow> out;
    for (int n : n_list) {
        LogGasChain c(n, p, rng);
        for (long s = 0; s < chain.burn_in; ++s) c.sweep(true);
        double s1 = 0, s2 = 0;
        for (long d = 0; d < draws; ++d) {
            for (long s = 0; s < chain.thinning; ++s) c.sweep(false);
            double lin = 0;
            for (double x : c.sorted()) {
                double y = x / n;
                lin += coef(0) + coef(1) * y + coef(2) * y * y;
            }
            double v = std::exp(std::abs(lin - n * mean_f));
            s1 += v;
            s2 += v * v;
        }
        double m = s1 / draws;
        double se = draws > 1 ? std::sqrt(std::max(0.0, (s2 / draws - m * m) / (draws - 1))) : 0.0;
        out.push_back({n, m, se});
    }
    return out;
}

}  // namespace sixv
