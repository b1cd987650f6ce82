// One line per acceptance criterion; exit status is the number of failures.
#include "sixv/exactpf.hpp"
#include "sixv/limits.hpp"
#include "sixv/samplers.hpp"
#include "sixv/specialfn.hpp"
#include "sixv/stats.hpp"

#include <fmt/core.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <unistd.h>

using namespace sixv;
using cd = std::complex<double>;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

int failures = 0;

void run(int id, const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(s < budget_s, fmt::format("took {:.1f}s, budget {:.0f}s", s, budget_s));
    if (!o.pass) ++failures;
    fmt::print("{} [{:2d}] {} ({:.2f}s){}{}\n", o.pass ? "PASS" : "FAIL", id, name, s, o.detail.empty() ? "" : ": ",
               o.detail);
    std::fflush(stdout);
}

double rel(const Real& a, const Real& b) { return abs(a - b).convert_to<double>() / abs(b).convert_to<double>(); }

std::vector<PhaseParams> one_point_per_phase() {
    return {{Phase::Ferro, 1.0, 0.4, 1, 1},
            {Phase::Ferro, 1.0, -0.4, 1, -1},
            {Phase::Disordered, 0.2, 0.8, 1, 1},
            {Phase::AntiFerro, 0.3, 0.7, 1, 1},
            {Phase::Boundary, 0.3, 1.0, 1, 1}};
}

InhomSpec homogeneous(int n, const PhaseParams& p) {
    InhomSpec s;
    s.phase = p.phase;
    s.gamma = p.gamma;
    s.chi.assign(n, 0.0);
    s.psi.assign(n, p.t);
    return s;
}

PhaseParams random_params(Rng& rng) {
    auto U = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
    PhaseParams p;
    p.phase = static_cast<Phase>(rng.below(4));
    switch (p.phase) {
        case Phase::Ferro:
            p.t = U(0.5, 1.5);
            p.gamma = (rng.bernoulli(0.5) ? 1 : -1) * U(0.1, 0.8) * p.t;
            break;
        case Phase::Disordered: p.gamma = U(0.3, 1.4); break;
        case Phase::AntiFerro: p.gamma = U(0.3, 2.0); break;
        case Phase::Boundary: p.gamma = U(0.3, 2.0); break;
    }
    if (p.phase != Phase::Ferro) p.t = U(-0.8, 0.8) * p.gamma;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main() {
    run(1, "enumeration counts", 1, [](Outcome& o) {
        const unsigned long long expect[] = {1, 2, 7, 42};
        for (int n = 1; n <= 4; ++n) {
            const auto a = dwbc_configurations(n).size();
            const auto b = count_dwbc_transfer(n);
            o.require(a == expect[n - 1] && b == expect[n - 1],
                      fmt::format("n={}: {} / {} vs {}", n, a, b, expect[n - 1]));
            for (const auto& c : dwbc_configurations(n)) o.require(validate_configuration(c).empty(), "invalid config");
        }
    });

    run(2, "Izergin-Korepin determinant", 60, [](Outcome& o) {
        Rng rng(2024, 2);
        PrecisionCtx prec;
        double worst = 0;
        for (int draw = 0; draw < 50; ++draw) {
            const PhaseParams p = random_params(rng);
            for (int n = 2; n <= 5; ++n) {
                InhomSpec s = homogeneous(n, p);
                for (int i = 0; i < n; ++i) {
                    s.chi[i] = 0.1 * (rng.uniform() - 0.5) + 0.011 * i;
                    s.psi[i] = p.t + 0.1 * (rng.uniform() - 0.5) + 0.013 * i;
                }
                const double e = rel(ik_determinant(s, prec), inhom_brute_force(s, prec));
                worst = std::max(worst, e);
                o.require(e < 1e-18, fmt::format("draw {} {} n={}: {:.2e}", draw, phase_name(p.phase), n, e));
            }
        }
        fmt::print("     worst relative error {:.2e}\n", worst);
    });

    run(3, "orthogonal-polynomial route", 120, [](Outcome& o) {
        PrecisionCtx prec;
        for (const auto& p : one_point_per_phase()) {
            const WeightTriple w = weights_from_params(p);
            for (int n = 1; n <= 5; ++n) {
                const double zenum = enumerate_dwbc(n, w).Z;
                const double zh = z_homogeneous(n, p, prec).convert_to<double>() * std::pow(p.scale, n * n) *
                                  std::pow(static_cast<double>(p.c_sign), n);
                o.require(std::abs(zh / zenum - 1) < 1e-12, fmt::format("Z {} n={}", phase_name(p.phase), n));
                InhomSpec s = homogeneous(n, p);
                const Real z0 = inhom_brute_force(s, prec);
                for (double xi : {0.13, -0.07, 0.21}) {
                    InhomSpec t = s;
                    t.psi[0] += xi;
                    const double exact = (inhom_brute_force(t, prec) / z0).convert_to<double>();
                    const cd z = ztilde_k1(n, xi, p, prec);
                    o.require(std::abs(z / exact - 1.0) < 1e-12,
                              fmt::format("ztilde_k1 {} n={} xi={}", phase_name(p.phase), n, xi));
                }
                if (n >= 3) {
                    InhomSpec t = s;
                    t.psi[0] += 0.1;
                    t.psi[1] -= 0.15;
                    const double exact = (inhom_brute_force(t, prec) / z0).convert_to<double>();
                    const cd z2 = ztilde_k(n, {0.1, -0.15}, p, prec);
                    o.require(std::abs(z2 / exact - 1.0) < 1e-12, fmt::format("ztilde_k {} n={}", phase_name(p.phase), n));
                    o.require(std::abs(ztilde_k(n, {0.1, -0.15, 0.0}, p, prec) / z2 - 1.0) < 1e-12,
                              fmt::format("collapse {} n={}", phase_name(p.phase), n));
                }
            }
        }
    });

    run(4, "asymptotic expansions", 600, [](Outcome& o) {
        const std::vector<std::vector<cd>> xis{{0.3}, {-0.4}, {0.5}, {cd(0.2, 0.3)}, {0.3, 0.2}, {0.2, -0.4},
                                               {0.1, 0.2, 0.3}};
        const std::vector<WeightTriple> showcase{{3, 1, 1}, {1, 1, std::sqrt(2.0)}, {2, 1, 2}, {1, 1, std::sqrt(8.0)},
                                                 {1, 1, 2}};
        for (const auto& w : showcase) {
            const PhaseParams p = params_from_weights(w.a, w.b, w.c);
            for (const auto& xi : xis) {
                const VerifyReport r = verify_expansions(p.phase, p, xi, {8, 16, 32, 64});
                std::string stats;
                for (const auto& g : r.grid) stats += fmt::format(" {:.3g}", g["statistic"].get<double>());
                o.require(r.pass, fmt::format("({},{},{}) xi#{}:{}", w.a, w.b, w.c, &xi - xis.data(), stats));
            }
        }
    });

    run(5, "Gaussian boundary limit", 600, [](Outcome& o) {
        for (const WeightTriple& w : {WeightTriple(1, 1, std::sqrt(2.0)), WeightTriple(1, 1, std::sqrt(8.0)),
                                      WeightTriple(1, 1, 2)}) {
            const VerifyReport r = verify_gaussian_limit(w, {8, 16, 32, 48});
            std::string ks;
            for (const auto& g : r.grid) ks += fmt::format(" {:.3f}", g["ks"].get<double>());
            fmt::print("     ({:.4g},{:.4g},{:.4g}) KS:{}\n", w.a, w.b, w.c, ks);
            o.require(r.pass, fmt::format("c={}", w.c));
        }
    });

    run(6, "geometric boundary limit", 300, [](Outcome& o) {
        const auto cfg = nlohmann::json::parse(slurp(SIXV_THRESHOLDS));
        const double thr = cfg["geometric"]["final_threshold"].get<double>();
        const VerifyReport r = verify_geometric_limit(WeightTriple(3, 1, 1), {8, 16, 32, 48}, thr);
        std::string tv;
        for (const auto& g : r.grid) tv += fmt::format(" {:.2e}", g["tv"].get<double>());
        fmt::print("     TV:{} (threshold {:.0e})\n", tv, thr);
        o.require(r.pass, "TV not decreasing or above threshold");
    });

    run(7, "Mallows", 120, [](Outcome& o) {
        Rng rng(7, 0);
        std::vector<int> id{1, 2, 3, 4};
        std::vector<std::vector<int>> perms;
        do perms.push_back(id);
        while (std::next_permutation(id.begin(), id.end()));
        for (double q : {1.0 / 9, 1.0, 3.0}) {
            std::map<std::vector<int>, std::size_t> idx;
            std::vector<double> prob, counts(perms.size(), 0.0);
            for (const auto& p : perms) {
                int inv = 0;
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
                idx[p] = prob.size();
                prob.push_back(std::pow(q, inv));
            }
            for (int i = 0; i < 100000; ++i) counts[idx.at(sample_mallows_finite(4, q, rng))] += 1;
            const ChiSquare c = chi_square(counts, prob);
            fmt::print("     q={:.4g} chi2 p={:.3f}\n", q, c.p_value);
            o.require(c.p_value > 0.001, fmt::format("chi-square q={}", q));
        }
        MallowsOptions mo;
        const VerifyReport r = verify_mallows(3, 1, mo, rng);
        std::string tv;
        for (const auto& g : r.grid) tv += fmt::format(" {:.2e}", g["tv_exact"].get<double>());
        fmt::print("     prefix TV:{}\n", tv);
        o.require(r.pass, "prefix convergence");
    });

    run(8, "stochastic six-vertex", 120, [](Outcome& o) {
        Rng rng(8, 0);
        const auto [b1, b2] = stochastic_params(3, 1, 1);
        const int L = 40;
        std::vector<double> counts(L, 0.0), probs(L);
        for (int l = 1; l <= L; ++l) probs[l - 1] = (1 - b1) * std::pow(b1, l - 1);
        for (int i = 0; i < 100000; ++i) {
            const Array a = sample_stochastic_6v(2, default_stochastic_window(2, b2), b1, b2, rng);
            if (a[0][0] <= L) counts[a[0][0] - 1] += 1;
        }
        const ChiSquare c = chi_square(counts, probs);
        fmt::print("     row 1 chi2 p={:.3f}\n", c.p_value);
        o.require(c.p_value > 0.001, "row 1 law");

        // exact row-2 law from the sampling rule, truncated at column L
        const double q = b2 / b1, w = b1;
        std::map<Row, double> law;
        for (int m = 1; m <= L; ++m) {
            const double p1 = (1 - b1) * std::pow(b1, m - 1);
            for (int x = 1; x < m; ++x) {
                const double turn = (1 - b1) * std::pow(b1, x - 1);
                law[{x, m}] += p1 * turn * b2;
                for (int y = m + 1; y <= L; ++y)
                    law[{x, y}] += p1 * turn * (1 - b2) * (1 - b1) * std::pow(b1, y - m - 1);
            }
            const double reach = std::pow(b1, m - 1);
            for (int y = m + 1; y <= L; ++y) law[{m, y}] += p1 * reach * (1 - b1) * std::pow(b1, y - m - 1);
        }
        double mass = 0;
        for (const auto& [nu, pr] : law) mass += pr;
        const std::vector<cd> wv{w * 1.05, w * 0.97}, w0{w, w};
        double s = 0;
        for (const auto& [nu, pr] : law) s += pr * (f_st(nu, wv, q) / f_st(nu, w0, q)).real();
        fmt::print("     tail {:.1e}, sum - 1 = {:.1e}\n", 1 - mass, s - 1);
        o.require(1 - mass < 1e-10, "truncation tail");
        o.require(std::abs(s - 1) < 1e-6, "characterization sum");
    });

    run(9, "MCMC correctness", 300, [](Outcome& o) {
        for (const WeightTriple& w : {WeightTriple(1, 1, 1), WeightTriple(1, 1, std::sqrt(2.0))}) {
            const auto tm = dwbc_transition_matrix(3, w);
            double db = 0;
            for (std::size_t i = 0; i < tm.states.size(); ++i)
                for (std::size_t j = 0; j < tm.states.size(); ++j)
                    db = std::max(db, std::abs(tm.pi[i] * tm.P[i][j] - tm.pi[j] * tm.P[j][i]));
            o.require(db < 1e-14, fmt::format("detailed balance {:.1e}", db));

            ExactDwbcSampler ex(4, w);
            std::map<std::vector<Row>, std::size_t> idx;
            for (std::size_t i = 0; i < ex.configs().size(); ++i) idx[triangle_from_configuration(ex.configs()[i]).rows] = i;
            std::vector<double> emp(idx.size(), 0.0);
            Rng rng(9, 0);
            DwbcChain ch(4, w, rng);
            for (int s = 0; s < 1000; ++s) ch.sweep();
            const long sweeps = 1000000;
            for (long s = 0; s < sweeps; ++s) {
                ch.sweep();
                emp[idx.at(ch.triangle().rows)] += 1.0 / sweeps;
            }
            const double tv = tv_distance(emp, ex.probabilities());
            fmt::print("     c={:.4g}: TV {:.4f}, detailed balance {:.1e}\n", w.c, tv, db);
            o.require(tv <= 0.01, fmt::format("TV {:.4f}", tv));
        }
    });

    run(10, "special functions", 60, [](Outcome& o) {
        o.require(mv_bessel({0.3, -1.0, 2.0}, {0.0, 0.0, 0.0}) == cd(1.0), "B_x(0) != 1");
        const std::vector<double> x{0.3, -1.1, 2.0};
        const cd sum = mv_bessel(x, {0.7, 0.0, 0.0}, BesselRoute::Sum);
        const cd ser = mv_bessel(x, {0.7, 0.0, 0.0}, BesselRoute::Series);
        o.require(std::abs(sum / ser - 1.0) < 1e-12, "sum vs divided-difference determinant");
        const std::vector<cd> z{0.4, -0.2, 0.9};
        const cd det = mv_bessel(x, z, BesselRoute::Determinant);
        o.require(std::abs(det / mv_bessel(x, z, BesselRoute::Series) - 1.0) < 1e-12, "determinant vs series");

        Rng rng(10, 0);
        const auto mc = bessel_spherical_mc({1.0, -1.0}, {0.5, 0.0}, 100000, rng);
        const cd exact = mv_bessel({1.0, -1.0}, {0.5, 0.0});
        fmt::print("     HCIZ MC {:.5f} +- {:.5f}, exact {:.5f}\n", mc.mean.real(), mc.stderr_re, exact.real());
        o.require(std::abs(mc.mean.real() - exact.real()) < 3 * mc.stderr_re, "HCIZ Monte Carlo");

        for (double g : {0.7, 1.3, 2.5}) {
            const ThetaNome nome = ThetaNome::from_gamma(g);
            const double d1 = theta(1, 0.0, nome).deriv;
            o.require(std::abs(d1 - theta(2, 0, nome).value * theta(3, 0, nome).value * theta(4, 0, nome).value) < 1e-10,
                      "theta_1'(0)");
            for (double u : {0.3, 0.71}) {
                double prod = 1;
                for (int l = 1; l <= 4; ++l) prod *= theta(l, u, nome).value;
                o.require(std::abs(theta(1, 2 * u, nome).value * d1 - 2 * prod) < 1e-10, "duplication");
            }
        }
        for (double t : {0.0, 0.3, -0.5}) {
            const double g = 0.9;
            const auto e = equilibrium(PhaseParams{Phase::AntiFerro, t, g, 1, 1});
            const double rhs = -(2 * M_PI / g) * theta_logderiv(2, M_PI * t / (2 * g), ThetaNome::from_gamma(g));
            o.require(std::abs(e.alpha + e.alpha_prime + e.beta + e.beta_prime - rhs) < 1e-10, "endpoint sum");
        }
    });

    run(11, "GUE corners", 120, [](Outcome& o) {
        Rng rng(11, 0);
        const long N = 100000;
        std::vector<double> g11, bgf;
        bool inter = true;
        for (long i = 0; i < N; ++i) {
            const auto g = sample_gue_corners(2, rng);
            inter = inter && g[1][0] <= g[0][0] && g[0][0] <= g[1][1];
            g11.push_back(g[0][0]);
            bgf.push_back(mv_bessel(g[1], {0.2, 0.1}).real());
        }
        for (int i = 0; i < 2000; ++i) {
            const auto g = sample_gue_corners(6, rng);
            for (std::size_t k = 1; k < g.size(); ++k)
                for (std::size_t j = 0; j < k; ++j) inter = inter && g[k][j] <= g[k - 1][j] && g[k - 1][j] <= g[k][j + 1];
        }
        o.require(inter, "interlacing");
        const Moments m = moments(g11);
        o.require(std::abs(m.mean) < 4 * m.stderr_mean(N), "g11 mean");
        o.require(std::abs(m.var - 1) < 4 * std::sqrt(2.0 / N), "g11 variance");
        const Moments b = moments(bgf);
        const double target = std::exp((0.2 * 0.2 + 0.1 * 0.1) / 2);
        fmt::print("     g11 mean {:.4f} var {:.4f}; BGF {:.5f} +- {:.5f} vs {:.5f}\n", m.mean, m.var, b.mean,
                   b.stderr_mean(N), target);
        o.require(std::abs(b.mean - target) < 3 * b.stderr_mean(N), "Bessel generating function");
    });

    run(12, "CLI reproducibility", 300, [](Outcome& o) {
        const fs::path dir = fs::temp_directory_path() / fmt::format("sixv_accept_{}", ::getpid());
        fs::create_directories(dir);
        const std::vector<std::string> cmds{
            "enumerate --n 4 --weights 1,1,1.5",
            "enumerate --n 3 --weights 2,1,1 --format json",
            "sample --model dwbc-exact --n 5 --weights 1,1,1.4142 --draws 50 --seed 5",
            "sample --model dwbc-mcmc --n 8 --weights 1,1,2 --draws 5 --sweeps 20 --burn-in 100 --seed 5",
            "sample --model stochastic --k 3 --b1 0.6 --b2 0.3 --draws 200 --seed 5",
            "sample --model mallows --n 12 --q 0.4 --draws 100 --seed 5 --format json",
            "sample --model qshuffle --k 4 --q 0.4 --draws 100 --seed 5",
            "sample --model gue --k 3 --draws 100 --seed 5",
            "sample --model eta --theta 1.5 --draws 100 --seed 5",
            "constants --weights 3,1,1 --format json",
            "verify mallows --a 3 --b 1 --seed 5 --format json",
            "verify T2.5 --weights 1,1,1.4142135623730951 --xi 0.3 --format json",
            "lambda11 --n 6 --weights 1,1,2",
        };
        int i = 0;
        for (const auto& c : cmds) {
            std::string out[2];
            for (int rep = 0; rep < 2; ++rep) {
                const fs::path f = dir / fmt::format("out{}_{}", i, rep);
                const std::string line = fmt::format("\"{}\" {} --out \"{}\"", SIXV_CLI_PATH, c, f.string());
                const int rc = std::system(line.c_str());
                o.require(rc == 0, fmt::format("`{}` exited {}", c, rc));
                out[rep] = slurp(f);
            }
            o.require(!out[0].empty() && out[0] == out[1], fmt::format("`{}` differs between runs", c));
            ++i;
        }
        fs::remove_all(dir);
    });

    fmt::print("{} of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
