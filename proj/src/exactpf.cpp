#include "sixv/exactpf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace sixv {

namespace bmp = boost::multiprecision;
using cd = std::complex<double>;

namespace {

thread_local int g_last_bits = 0;

CReal to_creal(cd z) { return CReal(Real(z.real()), Real(z.imag())); }

CReal clog(const CReal& z) {
    return CReal(Real(bmp::log(abs(z))), Real(bmp::atan2(z.im, z.re)));
}

CReal catanh(const CReal& w) {
    CReal one(Real(1));
    CReal l = clog((one + w) / (one - w));
    return CReal(Real(l.re / 2), Real(l.im / 2));
}

CReal catan(const CReal& w) {
    CReal iw(Real(-w.im), w.re);
    CReal a = catanh(iw);
    return CReal(a.im, Real(-a.re));  // -i * a
}

Real factorial(int k) {
    Real f(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Everything the orthogonal-polynomial route needs at one working precision.
struct OpContext {
    Phase phase;
    Real t, g;
    Real abt;
    OrthoBasis basis;
    std::map<int, std::vector<Real>> coeffs;  // degree -> monomial coefficients

    OpContext(const PhaseParams& p, int n, int bits)
        : phase(p.phase), t(p.t), g(p.gamma),
          abt(weight_a(p.phase, Real(p.t), Real(p.gamma)) * weight_b(p.phase, Real(p.t), Real(p.gamma))) {
        auto mom = phi_derivatives<Real>(phase, t, g, 2 * n - 1);
        basis = orthobasis_from_moments(mom, bits);
        if (basis.max_degree() < n - 1) throw PrecisionError("orthogonal basis too short", bits * 2);
    }

    const std::vector<Real>& coeff(int deg) {
        auto it = coeffs.find(deg);
        if (it != coeffs.end()) return it->second;
        return coeffs.emplace(deg, monic_coefficients(basis, deg)).first->second;
    }

    std::vector<CReal> derivs(const CReal& xi, int count) const {
        return phi_derivatives<CReal>(phase, CReal(t) + xi, g, count);
    }

    CReal ratio_R(const CReal& xi) const {
        CReal u = CReal(t) + xi;
        return weight_a(phase, u, CReal(g)) * weight_b(phase, u, CReal(g)) / CReal(abt);
    }

    // Z~_m(xi); d holds phi derivatives at t + xi (at least m of them)
    CReal ztilde(int m, const CReal& xi, const std::vector<CReal>& d) {
        if (sc_is_zero(xi)) return CReal(Real(1));
        const auto& p = coeff(m - 1);
        CReal I(Real(0));
        for (int j = 0; j < m; ++j) I += CReal(p[j]) * d[j];
        CReal bz = bzero(phase, xi);
        CReal v = ipow(ratio_R(xi), m) * ipow(bz, -(m - 1)) * I;
        return v * CReal(Real(factorial(m - 1) / basis.h[m - 1]));
    }
};

// Evaluates f at increasing precision until two consecutive results agree.
template <class F>
std::vector<CReal> adaptive(F f, const PrecisionCtx& prec, double tol, bool relative) {
    int bits = std::max(64, prec.mantissa_bits);
    std::vector<CReal> prev;
    bool have_prev = false;
    while (bits <= prec.max_bits) {
        std::vector<CReal> cur;
        bool ok = true;
        try {
            cur = f(bits);
        } catch (const PrecisionError&) {
            ok = false;
        }
        if (ok && have_prev) {
            PrecisionGuard guard(bits);
            Real scale(0), diff(0);
            for (std::size_t i = 0; i < cur.size(); ++i) {
                scale = bmp::max(scale, abs(cur[i]));
                diff = bmp::max(diff, abs(CReal(cur[i] - prev[i])));
            }
            Real lim = relative ? Real(tol * scale) : Real(tol);
            if (diff <= lim) {
                g_last_bits = bits;
                return cur;
            }
        }
        if (ok) {
            prev = std::move(cur);
            have_prev = true;
        }
        bits *= 2;
    }
    throw PrecisionError("no agreement between successive precisions up to " + std::to_string(prec.max_bits) +
                             " bits",
                         prec.max_bits * 2);
}

CReal ztilde_k_rec(OpContext& ctx, int n, std::vector<CReal> xi, int depth) {
    const int k = static_cast<int>(xi.size());
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (abs(CReal(xi[i] - xi[j])) < Real(1e-8)) {
                // mean value over a small circle in the colliding variable
                const Real r = Real(1e-6) * (depth + 1);
                const Real two_pi = 2 * real_pi();
                CReal acc(Real(0));
                const CReal base = xi[j];
                for (int m = 0; m < 8; ++m) {
                    Real th = two_pi * m / 8;
                    xi[j] = base + CReal(Real(r * bmp::cos(th)), Real(r * bmp::sin(th)));
                    acc += ztilde_k_rec(ctx, n, xi, depth + 1);
                }
                return acc / CReal(Real(8));
            }
        }
    }
    std::vector<std::vector<CReal>> M(k, std::vector<CReal>(k));
    for (int j = 0; j < k; ++j) {
        auto d = ctx.derivs(xi[j], n);
        CReal R = ctx.ratio_R(xi[j]);
        CReal bz = bzero(ctx.phase, xi[j]);
        for (int i = 1; i <= k; ++i) {
            CReal z = ctx.ztilde(n - k + i, xi[j], d);
            M[i - 1][j] = z * ipow(R, k - i) * ipow(bz, i - 1);
        }
    }
    CReal det = determinant(M);
    CReal den(Real(1));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) den *= bzero(ctx.phase, CReal(xi[j] - xi[i]));
    return det / den;
}

void check_n(int n) {
    if (n < 1) throw SizeError("n must be positive");
}

}  // namespace

int last_precision_bits() { return g_last_bits; }

std::vector<Configuration> dwbc_configurations(int n) {
    check_n(n);
    if (n > 6) throw SizeError("enumeration limited to n <= 6");
    Row top(n);
    for (int i = 0; i < n; ++i) top[i] = i + 1;
    std::vector<Configuration> out;
    for_each_triangle_below(top, [&](const std::vector<Row>& rows) {
        MonotoneTriangle t{n, rows};
        out.push_back(configuration_from_triangle(t));
    });
    return out;
}

DwbcEnumeration enumerate_dwbc(int n, const WeightTriple& w) {
    DwbcEnumeration e;
    e.configs = dwbc_configurations(n);
    for (const auto& c : e.configs) {
        double v = config_weight(c, w);
        e.weights.push_back(v);
        e.Z += v;
    }
    return e;
}

unsigned long long count_dwbc_transfer(int n) {
    check_n(n);
    if (n > 12) throw SizeError("transfer count limited to n <= 12");
    const unsigned full = (1u << n) - 1;
    std::vector<unsigned long long> cnt(1u << n, 0);
    cnt[0] = 1;
    for (int row = 1; row <= n; ++row) {
        std::vector<unsigned long long> next(1u << n, 0);
        for (unsigned below = 0; below <= full; ++below) {
            if (!cnt[below]) continue;
            for (unsigned up = 0; up <= full; ++up) {
                if (std::popcount(up) != row) continue;
                // scan with one path entering from the left
                int h = 1;
                bool ok = true;
                for (int x = 0; x < n && ok; ++x) {
                    h += static_cast<int>((below >> x) & 1u) - static_cast<int>((up >> x) & 1u);
                    ok = h == 0 || h == 1;
                }
                if (ok && h == 0) next[up] += cnt[below];
            }
        }
        cnt.swap(next);
    }
    return cnt[full];
}

Real inhom_brute_force(const InhomSpec& s, const PrecisionCtx& prec) {
    const int n = static_cast<int>(s.chi.size());
    if (static_cast<int>(s.psi.size()) != n) throw DomainError("chi and psi lengths differ");
    PrecisionGuard guard(prec.mantissa_bits);
    const Real g(s.gamma);
    std::vector<Real> A(n * n), B(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Real u = Real(s.psi[y]) - Real(s.chi[x]);
            A[y * n + x] = weight_a(s.phase, u, g);
            B[y * n + x] = weight_b(s.phase, u, g);
        }
    const Real C = weight_c(s.phase, g);
    Real Z(0);
    for (const auto& cfg : dwbc_configurations(n)) {
        Real w(1);
        for (int y = 1; y <= n; ++y)
            for (int x = 1; x <= n; ++x) {
                switch (weight_class(cfg.at(x, y))) {
                    case WeightClass::a: w *= A[(y - 1) * n + (x - 1)]; break;
                    case WeightClass::b: w *= B[(y - 1) * n + (x - 1)]; break;
                    case WeightClass::c: w *= C; break;
                }
            }
        Z += w;
    }
    return Z;
}

Real ik_determinant(const InhomSpec& s, const PrecisionCtx& prec) {
    const int n = static_cast<int>(s.chi.size());
    if (static_cast<int>(s.psi.size()) != n || n < 1) throw DomainError("chi and psi lengths differ");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(s.chi[i] - s.chi[j]) < 1e-8 || std::abs(s.psi[i] - s.psi[j]) < 1e-8)
                throw ConfluenceError("coinciding inhomogeneities; use the ztilde routes");
    PrecisionGuard guard(prec.mantissa_bits);
    const Real g(s.gamma);
    const Real C = weight_c(s.phase, g);
    Real num(1);
    std::vector<std::vector<Real>> M(n, std::vector<Real>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Real u = Real(s.psi[j]) - Real(s.chi[i]);
            Real ab = weight_a(s.phase, u, g) * weight_b(s.phase, u, g);
            num *= ab;
            M[i][j] = C / ab;
        }
    // psi_j - psi_i: the other order is off by (-1)^{n(n-1)/2} against the direct sum
    Real den(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            den *= bzero(s.phase, Real(Real(s.chi[i]) - Real(s.chi[j]))) *
                   bzero(s.phase, Real(Real(s.psi[j]) - Real(s.psi[i])));
    Real det = determinant(M);
    if (det == 0) throw PrecisionError("determinant underflow", prec.mantissa_bits * 2);
    return Real(num / den * det);
}

cd ztilde_k1(int n, cd xi, const PhaseParams& p, const PrecisionCtx& prec) {
    return ztilde_k(n, {xi}, p, prec);
}

cd ztilde_k(int n, const std::vector<cd>& xi, const PhaseParams& p, const PrecisionCtx& prec) {
    check_n(n);
    check_params(p);
    const int k = static_cast<int>(xi.size());
    if (k == 0) return 1.0;
    if (k > n) throw SizeError("more inhomogeneities than rows");
    if (std::all_of(xi.begin(), xi.end(), [](cd z) { return z == cd(0); })) return 1.0;
    auto res = adaptive(
        [&](int bits) {
            PrecisionGuard guard(bits);
            OpContext ctx(p, n, bits);
            std::vector<CReal> x;
            for (cd z : xi) x.push_back(to_creal(z));
            return std::vector<CReal>{ztilde_k_rec(ctx, n, x, 0)};
        },
        prec, std::max(prec.target_rel_err, 1e-30), true);
    return to_cd(res[0]);
}

Real z_homogeneous(int n, const PhaseParams& p, const PrecisionCtx& prec) {
    check_n(n);
    check_params(p);
    auto res = adaptive(
        [&](int bits) {
            PrecisionGuard guard(bits);
            auto mom = phi_derivatives<Real>(p.phase, Real(p.t), Real(p.gamma), 2 * n - 1);
            OrthoBasis b = orthobasis_from_moments(mom, bits);
            Real prod(1);
            Real fact(1);
            for (int k = 0; k < n; ++k) {
                if (k > 0) fact *= k;
                prod *= b.h[k] / (fact * fact);
            }
            Real ab = weight_a(p.phase, Real(p.t), Real(p.gamma)) * weight_b(p.phase, Real(p.t), Real(p.gamma));
            return std::vector<CReal>{CReal(Real(prod * bmp::pow(ab, n * n)))};
        },
        prec, std::max(prec.target_rel_err, 1e-30), true);
    return res[0].re;
}

std::vector<double> lambda11_distribution(int n, const PhaseParams& p, const PrecisionCtx& prec) {
    check_n(n);
    check_params(p);
    if (n == 1) return {1.0};
    auto res = adaptive(
        [&](int bits) {
            PrecisionGuard guard(bits);
            OpContext ctx(p, n, bits);
            const CReal g(ctx.g);
            const CReal at = weight_a(p.phase, CReal(ctx.t), g);
            const CReal bt = weight_b(p.phase, CReal(ctx.t), g);
            const CReal one(Real(1));
            const Real two_pi = 2 * real_pi();
            std::vector<CReal> G(n), r(n);
            for (int m = 0; m < n; ++m) {
                // nodes on the unit circle, kept away from r = +-1
                Real th = two_pi * (Real(m) + Real(0.25)) / n;
                r[m] = CReal(Real(bmp::cos(th)), Real(bmp::sin(th)));
                CReal R = r[m] * bt / at;
                CReal u;
                switch (p.phase) {
                    case Phase::Ferro: u = catanh(CReal(Real(bmp::tanh(ctx.g))) * (R + one) / (R - one)); break;
                    case Phase::Disordered: u = catan(CReal(Real(bmp::tan(ctx.g))) * (R - one) / (R + one)); break;
                    case Phase::AntiFerro: u = catanh(CReal(Real(bmp::tanh(ctx.g))) * (R - one) / (R + one)); break;
                    case Phase::Boundary: u = g * (R - one) / (R + one); break;
                }
                CReal xi = u - CReal(ctx.t);
                auto d = ctx.derivs(xi, n);
                CReal z = ctx.ztilde(n, xi, d);
                G[m] = z * ipow(at / weight_a(p.phase, u, g), n - 1);
            }
            std::vector<CReal> prob(n);
            for (int l = 0; l < n; ++l) {
                CReal s(Real(0));
                for (int m = 0; m < n; ++m) s += G[m] * ipow(conj(r[m]), l);
                prob[l] = s / CReal(Real(n));
            }
            return prob;
        },
        prec, 1e-14, false);
    std::vector<double> out(n);
    for (int l = 0; l < n; ++l) {
        cd v = to_cd(res[l]);
        if (std::abs(v.imag()) > 1e-10) throw PrecisionError("imaginary residue in lambda law", prec.mantissa_bits * 2);
        out[l] = v.real();
    }
    return out;
}

ZtildeMc ztilde_via_bessel_mc(int n, const std::vector<double>& xi, const PhaseParams& p, long samples,
                              const ChainConfig& chain, Rng& rng) {
    check_n(n);
    check_params(p);
    const int k = static_cast<int>(xi.size());
    if (k == 0) return {1.0, 0.0};
    if (k > n) throw SizeError("more inhomogeneities than rows");
    for (double v : xi)
        if (v == 0) throw DomainError("use nonzero xi; zeros reduce k");
    chain.check();
    const double abt = weight_a(p.phase, p.t, p.gamma) * weight_b(p.phase, p.t, p.gamma);
    double pref = 1;
    for (int j = 0; j < k; ++j) {
        double u = p.t + xi[j];
        double R = weight_a(p.phase, u, p.gamma) * weight_b(p.phase, u, p.gamma) / abt;
        pref *= std::pow(R, n) * std::pow(xi[j] / bzero(p.phase, xi[j]), n - k);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pref *= (xi[i] - xi[j]) / bzero(p.phase, xi[i] - xi[j]);
    std::vector<cd> z(n, 0.0);
    for (int j = 0; j < k; ++j) z[j] = xi[j];

    LogGasChain c(n, p, rng);
    for (long s = 0; s < chain.burn_in; ++s) c.sweep(true);
    // batch means for an honest standard error under autocorrelation
    const long batches = std::max<long>(2, std::min<long>(20, samples));
    const long per = std::max<long>(1, samples / batches);
    std::vector<double> bm;
    for (long b = 0; b < batches; ++b) {
        double acc = 0;
        for (long s = 0; s < per; ++s) {
            for (long th = 0; th < chain.thinning; ++th) c.sweep(false);
            acc += mv_bessel(c.sorted(), z).real();
        }
        bm.push_back(acc / per);
    }
    double mean = 0;
    for (double v : bm) mean += v;
    mean /= bm.size();
    double var = 0;
    for (double v : bm) var += (v - mean) * (v - mean);
    var /= (bm.size() - 1);
    return {pref * mean, std::abs(pref) * std::sqrt(var / bm.size())};
}

}  // namespace sixv
