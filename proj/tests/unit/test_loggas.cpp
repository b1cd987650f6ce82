#include "sixv/loggas.hpp"

#include <doctest.h>

#include <cmath>

using namespace sixv;
using cd = std::complex<double>;

namespace {

std::vector<PhaseParams> phases() {
    return {{Phase::Ferro, 1.4436354751788107, -0.48121182505960347, 1, -1},
            {Phase::Disordered, 0.2, 1.1, 1, 1},
            {Phase::AntiFerro, 0.3, 0.7, 1, 1},
            {Phase::Boundary, 0.3, 1.0, 1, 1}};
}

double d(const Real& x) { return x.convert_to<double>(); }

}  // namespace

TEST_CASE("phi values") {
    CHECK(phi(0, 1, Phase::Boundary) == doctest::Approx(2));
    CHECK(phi(0, M_PI / 4, Phase::Disordered) == doctest::Approx(2));
    // lattice series for Ferro
    const double t = 1.4436, g = -0.4812;
    double s = 0;
    for (int x = -2; x >= -400; x -= 2) s += std::exp(t * x) * 4 * std::sinh(-g * x);
    CHECK(std::abs(phi(t, g, Phase::Ferro) / s - 1) < 1e-15);
}

TEST_CASE("moments by two routes") {
    PrecisionCtx prec;
    for (const auto& p : phases()) {
        const std::string ph = phase_name(p.phase);
        CAPTURE(ph);
        MeasureSpec spec = measure_spec(p);
        auto m = measure_moments(spec, 8, prec);
        auto md = measure_moments_direct(spec, 8, prec);
        CHECK(std::abs(d(m[0]) / phi(p.t, p.gamma, p.phase) - 1) < 1e-14);
        for (int j = 0; j < 8; ++j) {
            CAPTURE(j);
            CHECK(d(abs(m[j] - md[j]) / (abs(md[j]) + 1e-30)) < 1e-20);
        }
    }
    // m_1 = d/dt phi
    const double h = 1e-6;
    auto m = measure_moments(measure_spec(Phase::Disordered, 0.2, 1.1), 2, prec);
    double fd = (phi(0.2 + h, 1.1, Phase::Disordered) - phi(0.2 - h, 1.1, Phase::Disordered)) / (2 * h);
    CHECK(d(m[1]) == doctest::Approx(fd).epsilon(1e-8));
    auto sym = measure_moments(measure_spec(Phase::AntiFerro, 0.0, 0.7), 9, prec);
    for (int j = 1; j < 9; j += 2) CHECK(d(abs(sym[j])) < 1e-60);
}

TEST_CASE("orthogonal polynomials") {
    PrecisionCtx prec;
    PrecisionGuard guard(prec.mantissa_bits);
    for (const auto& p : phases()) {
        const std::string ph = phase_name(p.phase);
        CAPTURE(ph);
        auto m = measure_moments(measure_spec(p), 16, prec);
        OrthoBasis B = orthobasis_from_moments(m, prec.mantissa_bits);
        REQUIRE(B.max_degree() >= 6);
        CHECK(B.h[0] == m[0]);
        CHECK(d(abs(B.alpha[0] - m[1] / m[0])) < 1e-60);
        // the Ferro measure with gamma < 0 is negative, and so are all h_k
        for (int k = 0; k <= 6; ++k) CHECK(B.h[k] * m[0] > 0);
        // orthogonality through the moment functional
        for (int j = 0; j <= 6; ++j)
            for (int k = 0; k < j; ++k) {
                auto cj = monic_coefficients(B, j), ck = monic_coefficients(B, k);
                Real s(0);
                for (std::size_t a = 0; a < cj.size(); ++a)
                    for (std::size_t b = 0; b < ck.size(); ++b) s += cj[a] * ck[b] * m[a + b];
                CHECK(d(abs(s) / sqrt(B.h[j] * B.h[k])) < 1e-15);
            }
        // beta_k against the Hankel determinant ratio
        for (int k = 1; k <= 5; ++k) {
            auto hankel = [&](int size) {
                std::vector<std::vector<Real>> H(size, std::vector<Real>(size));
                for (int i = 0; i < size; ++i)
                    for (int j = 0; j < size; ++j) H[i][j] = m[i + j];
                return determinant(H);
            };
            Real hk = hankel(k + 1) / hankel(k);
            CHECK(d(abs(hk / B.h[k] - 1)) < 1e-20);
        }
    }
    auto m = measure_moments(measure_spec(Phase::AntiFerro, 0.0, 0.7), 42, prec);
    OrthoBasis B = orthobasis_from_moments(m, prec.mantissa_bits);
    for (int k = 0; k <= std::min(20, B.max_degree()); ++k) CHECK(d(abs(B.alpha[k])) < 1e-25);
}

TEST_CASE("monic evaluation") {
    PrecisionCtx prec;
    PrecisionGuard guard(prec.mantissa_bits);
    auto m = measure_moments(measure_spec(Phase::Disordered, 0.2, 1.1), 12, prec);
    OrthoBasis B = orthobasis_from_moments(m, prec.mantissa_bits);
    CHECK(eval_monic(B, 0, Real(3.7)) == Real(1));
    const Real x(1e6);
    for (int k = 1; k <= 5; ++k) CHECK(d(eval_monic(B, k, x) / pow(x, k)) == doctest::Approx(1).epsilon(1e-4));
}

TEST_CASE("Heine formula at degree two") {
    // P_2(x) = E (x - x1)(x - x2) over the two-point ensemble, AntiFerro lattice
    PrecisionCtx prec;
    PrecisionGuard guard(prec.mantissa_bits);
    PhaseParams p{Phase::AntiFerro, 0.2, 0.9, 1, 1};
    MeasureSpec spec = measure_spec(p);
    auto m = measure_moments(spec, 8, prec);
    OrthoBasis B = orthobasis_from_moments(m, prec.mantissa_bits);
    const double x = 0.37;
    double Z = 0, E = 0;
    for (int i = -200; i <= 200; i += 2)
        for (int j = -200; j <= 200; j += 2) {
            double w = (i - j) * (i - j) * spec.mass(static_cast<double>(i)) * spec.mass(static_cast<double>(j));
            Z += w;
            E += w * (x - i) * (x - j);
        }
    CHECK(d(eval_monic(B, 2, Real(x))) == doctest::Approx(E / Z).epsilon(1e-12));
}

TEST_CASE("equilibrium measures") {
    PhaseParams dis{Phase::Disordered, 0.0, 1.1, 1, 1};
    auto e = equilibrium(dis);
    CHECK(e.alpha == doctest::Approx(-e.beta));
    CHECK(e.beta == doctest::Approx(M_PI / 1.1));
    CHECK(std::abs(e.mu1) < 1e-15);
    auto b = equilibrium(PhaseParams{Phase::Boundary, 0.0, 1.0, 1, 1});
    CHECK(b.beta == doctest::Approx(M_PI));

    for (const auto& p : phases()) {
        const std::string ph = phase_name(p.phase);
        CAPTURE(ph);
        auto eq = equilibrium(p);
        // large-z fit: z^2 (G - 1/z) -> mu1
        cd z1 = 1e4, z2 = 1e5;
        cd f1 = (stieltjes(eq, z1) - 1.0 / z1) * z1 * z1, f2 = (stieltjes(eq, z2) - 1.0 / z2) * z2 * z2;
        cd mu1 = (f2 * z2 - f1 * z1) / (z2 - z1);
        CHECK(std::abs(mu1 - eq.mu1) < 1e-6 * (1 + std::abs(eq.mu1)));
        // numerical derivative against the closed form
        cd z(eq.beta + 3.0, 1.5);
        cd h = 1e-5;
        cd num = (stieltjes(eq, z + h) - stieltjes(eq, z - h)) / (2.0 * h);
        CHECK(std::abs(num - stieltjes_derivative(eq, z)) < 1e-8);
    }
    // symmetric measure: G(-conj z) = -conj G(z)
    cd z(0.3, 2.0);
    CHECK(std::abs(stieltjes(e, -std::conj(z)) + std::conj(stieltjes(e, z))) < 1e-12);
}

TEST_CASE("log-gas sampler") {
    Rng rng(5, 1);
    ChainConfig ch;
    ch.burn_in = 50;
    ch.sweeps = 5;
    // n = 1 AntiFerro t = 0: symmetric law
    PhaseParams af{Phase::AntiFerro, 0.0, 0.7, 1, 1};
    double s = 0, s2 = 0;
    const int N = 20000;
    LogGasChain c(1, af, rng);
    for (int i = 0; i < 100; ++i) c.sweep();
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < 5; ++k) c.sweep();
        double x = c.sorted()[0];
        s += x;
        s2 += x * x;
    }
    double mean = s / N, var = s2 / N - mean * mean;
    CHECK(std::abs(mean) < 4 * std::sqrt(var * 5 / N));

    auto x = sample_loggas(5, af, ch, rng);
    CHECK(std::is_sorted(x.begin(), x.end()));
    ChainConfig bad;
    bad.sweeps = 0;
    CHECK_THROWS(sample_loggas(2, af, bad, rng));
}

TEST_CASE("conjecture probe reports") {
    Rng rng(3, 0);
    ChainConfig ch;
    ch.burn_in = 20;
    ch.sweeps = 2;
    auto rows = conjecture_probe({4}, PhaseParams{Phase::Disordered, 0.0, 1.1, 1, 1}, {1.0}, ch, 20, rng);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean_exp == doctest::Approx(1.0));
}
