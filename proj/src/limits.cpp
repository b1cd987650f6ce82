#include "sixv/limits.hpp"

#include "sixv/errors.hpp"
#include "sixv/exactpf.hpp"
#include "sixv/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace sixv {

using cd = std::complex<double>;

namespace {

double cot(double x) { return std::cos(x) / std::sin(x); }
double coth(double x) { return std::cosh(x) / std::sinh(x); }
double sq(double x) { return x * x; }

// Theta log-derivatives entering the antiferroelectric constants.
struct AfTheta {
    double l2;    // theta_2'/theta_2 at pi t / (2 gamma)
    double sum4;  // sum over l of (theta_l'/theta_l)^2 at pi (t + gamma) / (4 gamma)
};

AfTheta af_theta(double t, double g) {
    ThetaNome nome = ThetaNome::from_gamma(g);
    AfTheta r{theta_logderiv(2, M_PI * t / (2 * g), nome), 0};
    for (int l = 1; l <= 4; ++l) r.sum4 += sq(theta_logderiv(l, M_PI * (t + g) / (4 * g), nome));
    return r;
}

}  // namespace

std::pair<double, double> gue_constants(const PhaseParams& p) {
    check_params(p);
    const double t = p.t, g = p.gamma;
    double m = 0, s2 = 0;
    switch (p.phase) {
        case Phase::Ferro: throw DomainError("Gaussian constants need Delta < 1");
        case Phase::Disordered: {
            double cp = cot(g + t), cm = cot(g - t), T = M_PI / (2 * g) * std::tan(M_PI * t / (2 * g));
            m = (cp + T) / (cm + cp);
            s2 = (-2.0 / 3 + M_PI * M_PI / (6 * g * g) - (cp + T) * (cm - T)) / sq(cm + cp);
            break;
        }
        case Phase::AntiFerro: {
            double cp = coth(g + t), cm = coth(g - t);
            AfTheta th = af_theta(t, g);
            double k = M_PI / (2 * g);
            m = (cp - k * th.l2) / (cm + cp);
            s2 = (2.0 / 3 - M_PI * M_PI / (12 * g * g) * sq(th.l2) + M_PI * M_PI / (12 * g * g) * th.sum4) / sq(cm + cp) +
                 (k * th.l2 * (cm - cp) - cp * cm) / sq(cm + cp);
            break;
        }
        case Phase::Boundary: {
            double T = M_PI / (2 * g) * std::tan(M_PI * t / (2 * g));
            m = (g - t) / (2 * g) + M_PI * (g * g - t * t) / (4 * g * g) * std::tan(M_PI * t / (2 * g));
            s2 = (M_PI * M_PI / (6 * g * g) - (1 / (g + t) + T) * (1 / (g - t) - T)) / sq(1 / (g - t) + 1 / (g + t));
            break;
        }
    }
    if (!(s2 > 0)) throw DomainError("variance constant is not positive");
    return {m, std::sqrt(s2)};
}

std::pair<double, double> gue_constants(double a, double b, double c) {
    return gue_constants(params_from_weights(a, b, c));
}

std::pair<double, double> stochastic_params(double a, double b, double c) {
    if (!(a > 0 && b > 0 && c >= 0)) throw DomainError("weights must be positive");
    if (a == b) throw DomainError("a = b has no stochastic limit");
    if (a < b) std::swap(a, b);
    double D = a * a + b * b - c * c;
    if (!(D > 2 * a * b)) throw DomainError("stochastic limit needs Delta > 1");
    double r = std::sqrt(D * D - 4 * a * a * b * b);
    // b1 b2 = b^2/a^2; the product form avoids cancellation in the small root
    double b2 = (D + r) / (2 * a * a);
    double b1 = (b * b) / (a * a) / b2;
    return {b1, b2};
}

StochasticMatch stochastic_weight_match(const PhaseParams& p) {
    check_params(p);
    if (p.phase != Phase::Ferro) throw DomainError("stochastic weights need the ferroelectric phase");
    if (!(p.gamma < 0)) throw DomainError("stochastic weights are positive only for gamma < 0");
    return {std::exp(-4 * p.gamma), std::expm1(2 * p.t + 2 * p.gamma) / std::expm1(2 * p.t - 2 * p.gamma)};
}

double sigma(const PhaseParams& p) {
    check_params(p);
    const double t = p.t, g = p.gamma;
    switch (p.phase) {
        case Phase::Disordered: return cot(g - t) + cot(g + t);
        case Phase::Ferro:
        case Phase::AntiFerro: return coth(g - t) + coth(g + t);
        case Phase::Boundary: return 1 / (g - t) + 1 / (g + t);
    }
    return 0;
}

LimitConstants limit_constants(double a, double b, double c) {
    LimitConstants lc;
    lc.mallows_q = b * b / (a * a);
    if (c == 0) {
        if (a != b) {
            auto [b1, b2] = stochastic_params(a, b, c);
            lc.b1 = b1;
            lc.b2 = b2;
        }
        return lc;
    }
    PhaseParams p = params_from_weights(a, b, c);
    lc.sigma = sigma(p);
    if (p.phase == Phase::Ferro) {
        auto [b1, b2] = stochastic_params(a, b, c);
        lc.b1 = b1;
        lc.b2 = b2;
    } else {
        auto [m, s] = gue_constants(p);
        lc.m_const = m;
        lc.s_const = s;
    }
    return lc;
}

std::complex<double> expansion_predict(Phase expected, int n, const std::vector<cd>& xi, const PhaseParams& p) {
    check_params(p);
    if (p.phase != expected) throw DomainError("weights are in the " + phase_name(p.phase) + " phase, not " +
                                               phase_name(expected));
    if (n < 1) throw SizeError("n must be positive");
    const double t = p.t, g = p.gamma, rn = std::sqrt(static_cast<double>(n));
    cd lg = 0;
    switch (p.phase) {
        case Phase::Ferro: {
            const double s = t + std::abs(g);
            for (cd x : xi) lg += static_cast<double>(n) * (std::log(std::sinh(s + x)) - std::log(std::sinh(s))) - x;
            break;
        }
        case Phase::Disordered: {
            double tn = std::tan(M_PI * t / (2 * g));
            double A = cot(g + t) - cot(g - t) + M_PI / (2 * g) * tn;
            double B = 5.0 / 3 - M_PI * M_PI / (6 * g * g) - M_PI * M_PI * tn * tn / (4 * g * g) + sq(cot(g + t)) +
                       sq(cot(g - t));
            for (cd x : xi) lg += rn * x * A - x * x / 2.0 * B;
            break;
        }
        case Phase::AntiFerro: {
            AfTheta th = af_theta(t, g);
            double A = coth(g + t) - coth(g - t) - M_PI / (2 * g) * th.l2;
            double B = 5.0 / 3 - M_PI * M_PI / (12 * g * g) * sq(th.l2) + M_PI * M_PI / (12 * g * g) * th.sum4 -
                       sq(coth(g + t)) - sq(coth(g - t));
            for (cd x : xi) lg += rn * x * A + x * x / 2.0 * B;
            break;
        }
        case Phase::Boundary: {
            // weights are homogeneous in (gamma, t, xi): reduce to gamma = 1
            double tau = t / g, tn = std::tan(M_PI * tau / 2);
            double A = 1 / (1 + tau) - 1 / (1 - tau) + M_PI / 2 * tn;
            double B = 1 / sq(1 - tau) + 1 / sq(1 + tau) - M_PI * M_PI / 6 - M_PI * M_PI * tn * tn / 4;
            // the quadratic term enters with a minus sign; see the README
            for (cd x : xi) {
                cd y = x / g;
                lg += rn * y * A - y * y / 2.0 * B;
            }
            break;
        }
    }
    return std::exp(lg);
}

std::complex<double> expansion_exact(int n, const std::vector<cd>& xi, const PhaseParams& p, const PrecisionCtx& prec) {
    std::vector<cd> z = xi;
    if (p.phase != Phase::Ferro)
        for (cd& v : z) v /= std::sqrt(static_cast<double>(n));
    if (z.size() == 1) return ztilde_k1(n, z[0], p, prec);
    return ztilde_k(n, z, p, prec);
}

Real f_sym(const Row& nu, const std::vector<double>& xi, const PhaseParams& p, int n, const PrecisionCtx& prec) {
    check_params(p);
    const std::size_t k = nu.size();
    if (k == 0 || xi.size() != k) throw SizeError("nu and xi must have the same positive length");
    for (std::size_t i = 0; i < k; ++i)
        if (nu[i] < 1 || (i > 0 && nu[i] <= nu[i - 1])) throw StructureError("nu must be strictly increasing and positive");
    if (n < nu.back()) throw SizeError("n must be at least nu_k");

    PrecisionGuard guard(prec.mantissa_bits);
    const Real g(p.gamma);
    const Real c = weight_c(p.phase, g);
    const Real c2 = c * c;
    std::vector<Real> a(k), b(k);
    for (std::size_t j = 0; j < k; ++j) {
        Real u = Real(p.t) + Real(xi[j]);
        a[j] = weight_a(p.phase, u, g);
        b[j] = weight_b(p.phase, u, g);
    }
    Real pref(1);
    for (std::size_t j = 1; j <= k; ++j)
        pref *= ipow(a[j - 1], n - 2 * static_cast<long>(j) + 1) * ipow(c, 2 * static_cast<long>(j) - 1);

    Real total(0);
    for_each_triangle_below(nu, [&](const std::vector<Row>& rows) {
        Real term(1);
        long prev_sum = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            const Row& cur = rows[j - 1];
            long sum = std::accumulate(cur.begin(), cur.end(), 0L);
            term *= ipow(Real(b[j - 1] / a[j - 1]), sum - prev_sum - static_cast<long>(j));
            prev_sum = sum;
            if (j == 1) continue;
            const Row& below = rows[j - 2];
            for (std::size_t i = 1; i <= j; ++i) {
                if (i >= 2 && cur[i - 1] == below[i - 2]) term *= b[j - 1] * b[j - 1] / c2;
                if (i <= j - 1 && cur[i - 1] == below[i - 1]) term *= a[j - 1] * a[j - 1] / c2;
            }
        }
        total += term;
    });
    return pref * total;
}

double f_sym_normalized(const Row& nu, const std::vector<double>& xi, const PhaseParams& p, const PrecisionCtx& prec) {
    PrecisionGuard guard(prec.mantissa_bits);
    const int n = nu.back();
    const std::size_t k = nu.size();
    Real num = f_sym(nu, xi, p, n, prec);
    Real den = f_sym(nu, std::vector<double>(k, 0.0), p, n, prec);
    const Real g(p.gamma);
    Real ratio = num / den;
    Real at = weight_a(p.phase, Real(p.t), g);
    for (std::size_t j = 0; j < k; ++j) ratio *= ipow(Real(at / weight_a(p.phase, Real(Real(p.t) + Real(xi[j])), g)), n);
    return to_d(ratio);
}

double f_to_bessel_ratio(const Row& nu, int M, const std::vector<double>& xi, double eps, const PhaseParams& p) {
    const std::size_t k = nu.size();
    std::vector<double> sxi(k);
    for (std::size_t j = 0; j < k; ++j) sxi[j] = eps * xi[j];
    double lhs = f_sym_normalized(nu, sxi, p);
    const double s = sigma(p);
    double pref = 1;
    for (double x : sxi) {
        double rho = weight_b(p.phase, p.t + x, p.gamma) * weight_a(p.phase, p.t, p.gamma) /
                     (weight_b(p.phase, p.t, p.gamma) * weight_a(p.phase, p.t + x, p.gamma));
        pref *= std::pow(rho, M);
    }
    std::vector<double> x(k);
    std::vector<cd> z(k);
    for (std::size_t j = 0; j < k; ++j) {
        x[j] = s * eps * (nu[j] - M);
        z[j] = xi[j];
    }
    return lhs / (pref * mv_bessel(x, z).real());
}

namespace {

template <class S>
S spow(S x, long e) {
    S r(cd(1));
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

template <class S>
S f_st_formula(const Row& nu, const std::vector<S>& w, double q) {
    const std::size_t k = nu.size();
    const S one{cd(1)}, qq{cd(q)}, q1{cd(1 + q)};
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    S sum(cd(0));
    do {
        S term(cd(1));
        for (std::size_t al = 0; al < k; ++al)
            for (std::size_t be = al + 1; be < k; ++be) {
                const S& wa = w[perm[al]];
                const S& wb = w[perm[be]];
                term *= (one - wa * q1 + qq * wa * wb) / (wb - wa);
            }
        for (std::size_t i = 0; i < k; ++i) term *= spow(w[perm[i]], nu[i] - 1);
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t i = 0; i < k; ++i) sum *= one - w[i];
    return sum;
}

template <class S>
cd to_complex(const S& z);
template <>
cd to_complex<cd>(const cd& z) {
    return z;
}
template <>
cd to_complex<CReal>(const CReal& z) {
    return to_cd(z);
}

// The formula is a polynomial, so its average over the circle
// w + r e^{i theta} zeta (zeta_j distinct, more nodes than the degree)
// reproduces the value at the center exactly.
template <class S>
cd f_st_confluent(const Row& nu, const std::vector<cd>& w, double q) {
    const std::size_t k = nu.size();
    long degree = std::accumulate(nu.begin(), nu.end(), 0L) + static_cast<long>(k * (k - 1) / 2);
    double scale = 0;
    for (cd v : w) scale = std::max(scale, std::abs(v));
    const double r = 0.05 * (scale + 0.1);
    const long M = degree + 1;
    S acc(cd(0));
    std::vector<S> pt(k);
    for (long m = 0; m < M; ++m) {
        double th = 2 * M_PI * (m + 0.25) / static_cast<double>(M);
        cd e(std::cos(th), std::sin(th));
        for (std::size_t j = 0; j < k; ++j) pt[j] = S(w[j] + r * static_cast<double>(j) * e);
        acc += f_st_formula(nu, pt, q);
    }
    return to_complex(acc) / static_cast<double>(M);
}

}  // namespace

std::complex<double> f_st(const Row& nu, const std::vector<cd>& w, double q) {
    const std::size_t k = nu.size();
    if (k == 0 || w.size() != k) throw SizeError("nu and w must have the same positive length");
    if (k > 6) throw SizeError("f_st symmetrizes over k!, k <= 6");
    for (std::size_t i = 0; i < k; ++i)
        if (nu[i] < 1 || (i > 0 && nu[i] <= nu[i - 1])) throw StructureError("nu must be strictly increasing and positive");

    double scale = 0, gap = HUGE_VAL;
    for (std::size_t i = 0; i < k; ++i) {
        scale = std::max(scale, std::abs(w[i]));
        for (std::size_t j = i + 1; j < k; ++j) gap = std::min(gap, std::abs(w[i] - w[j]));
    }
    if (gap > 1e-6 * (1 + scale)) return f_st_formula<cd>(nu, w, q);
    if (k <= 3) return f_st_confluent<cd>(nu, w, q);
    PrecisionGuard guard(192);
    return f_st_confluent<CReal>(nu, w, q);
}

std::complex<double> f_st_lattice(const Row& nu, const std::vector<cd>& w, double q) {
    const std::size_t k = nu.size();
    if (k == 0 || w.size() != k) throw SizeError("nu and w must have the same positive length");
    if (k > 12) throw SizeError("lattice route supports k <= 12");
    const unsigned full = (1u << k) - 1;
    // state: rows whose path is still travelling right
    std::vector<cd> dp(1u << k, 0.0), next(1u << k);
    dp[full] = 1.0;
    for (int x = 1; x <= nu.back(); ++x) {
        const bool exit_here = std::find(nu.begin(), nu.end(), x) != nu.end();
        std::fill(next.begin(), next.end(), cd(0));
        for (unsigned s = 0; s <= full; ++s) {
            if (dp[s] == cd(0)) continue;
            // walk the column bottom to top carrying the vertical occupancy
            std::function<void(std::size_t, int, unsigned, cd)> rec = [&](std::size_t y, int below, unsigned out, cd wt) {
                if (y == k) {
                    if (below == static_cast<int>(exit_here)) next[out] += wt;
                    return;
                }
                const int left = (s >> y) & 1u;
                const cd wy = w[y];
                if (left && below) rec(y + 1, 1, out | (1u << y), wt);
                else if (!left && !below) rec(y + 1, 0, out, wt);
                else if (left) {
                    rec(y + 1, 0, out | (1u << y), wt * wy);      // straight right
                    rec(y + 1, 1, out, wt * (1.0 - wy));          // turn up
                } else {
                    rec(y + 1, 1, out, wt * (q * wy));                // straight up
                    rec(y + 1, 0, out | (1u << y), wt * (1.0 - q * wy));  // turn right
                }
            };
            rec(0, 0, 0, dp[s]);
        }
        dp.swap(next);
    }
    return dp[0];
}

std::complex<double> ztilde_stochastic(int n, const std::vector<cd>& w_vec, double q, double w,
                                       const PrecisionCtx& prec) {
    if (!(q > 0)) throw DomainError("q must be positive");
    if (w_vec.empty() || static_cast<int>(w_vec.size()) > n) throw SizeError("need 1 <= k <= n");
    const double g = -std::log(q) / 4;
    const double E = (1 - w) / (std::exp(2 * g) - w * std::exp(-2 * g));
    if (!(E > 0)) throw DomainError("(q, w) has no real ferroelectric counterpart");
    PhaseParams p;
    p.phase = Phase::Ferro;
    p.gamma = g;
    p.t = std::log(E) / 2;
    p.c_sign = g < 0 ? -1 : 1;
    check_params(p);

    std::vector<cd> xi(w_vec.size());
    for (std::size_t j = 0; j < w_vec.size(); ++j) {
        cd wj = w_vec[j];
        xi[j] = std::log((1.0 - wj) / (std::exp(2 * g) - wj * std::exp(-2 * g))) / 2.0 - p.t;
    }
    cd z = xi.size() == 1 ? ztilde_k1(n, xi[0], p, prec) : ztilde_k(n, xi, p, prec);
    const double s = p.t - g;
    for (cd x : xi) z *= std::exp(x - static_cast<double>(n) * (std::log(std::sinh(s + x)) - std::log(std::sinh(s))));
    return z;
}

}  // namespace sixv
