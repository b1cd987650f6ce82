#include "sixv/exactpf.hpp"
#include "sixv/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace sixv;

TEST_CASE("Kolmogorov-Smirnov distance") {
    auto unif = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_distance({0.0}, {1.0}, normal_cdf) == doctest::Approx(0.5));
    std::vector<double> xs, ps;
    for (int i = 0; i < 1000; ++i) {
        xs.push_back((i + 1) / 1000.0);
        ps.push_back(1e-3);
    }
    CHECK(ks_distance(xs, ps, unif) <= 1e-3 + 1e-12);

    // exact lambda_1^1 law at n = 3 against its own histogram
    PhaseParams p = params_from_weights(1, 1, 1);
    auto L = lambda11_distribution(3, p);
    Rng rng(1, 0);
    std::vector<double> sample;
    for (int i = 0; i < 100000; ++i) {
        double u = rng.uniform(), c = 0;
        int l = 1;
        for (; l < 3; ++l) {
            c += L[l - 1];
            if (u < c) break;
        }
        sample.push_back(l);
    }
    // refined alternating sign matrix counts 2, 3, 2
    CHECK(L[0] == doctest::Approx(2.0 / 7));
    CHECK(L[1] == doctest::Approx(3.0 / 7));
    auto step = [&](double x) {
        double c = 0;
        for (int l = 1; l <= 3; ++l)
            if (l <= x) c += L[l - 1];
        return c;
    };
    std::sort(sample.begin(), sample.end());
    double d = 0;
    for (int l = 1; l <= 3; ++l) {
        double emp = double(std::upper_bound(sample.begin(), sample.end(), double(l)) - sample.begin()) / sample.size();
        d = std::max(d, std::abs(emp - step(l)));
    }
    CHECK(d <= 0.01);
}

TEST_CASE("total variation") {
    CHECK(tv_distance(std::vector<double>{0.2, 0.8}, std::vector<double>{0.2, 0.8}) == 0);
    CHECK(tv_distance(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 1);
    // Geom(p) vs Geom(r) on {1,2,...}: sum |(1-p)p^{l-1} - (1-r)r^{l-1}| / 2
    const double p = 0.1273, r = 0.2;
    std::vector<double> a, b;
    for (int l = 1; l <= 200; ++l) {
        a.push_back((1 - p) * std::pow(p, l - 1));
        b.push_back((1 - r) * std::pow(r, l - 1));
    }
    // the two pmfs cross once; before the crossing Geom(p) is larger
    const double cross = std::log((1 - r) / (1 - p)) / std::log(p / r) + 1;
    const int L = static_cast<int>(std::floor(cross));
    const double closed = (1 - std::pow(p, L)) - (1 - std::pow(r, L));
    CHECK(tv_distance(a, b) == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("chi-square") {
    auto r = chi_square({50, 50}, {0.5, 0.5});
    CHECK(r.statistic == doctest::Approx(0));
    CHECK(r.p_value == doctest::Approx(1));
    auto bad = chi_square({90, 10}, {0.5, 0.5});
    CHECK(bad.p_value < 1e-10);
    CHECK(chi_square({0, 10}, {1.0, 0.0}).p_value == 0);
}

TEST_CASE("verification reports") {
    auto g = verify_geometric_limit(WeightTriple(3, 1, 1), {8, 16});
    CHECK(g.pass);
    auto j = g.to_json();
    CHECK(j["schema_version"] == "1");
    CHECK(j["grid"].size() == 2);
    CHECK(j["verdict"] == "pass");
    CHECK_THROWS_AS(verify_geometric_limit(WeightTriple(1, 3, 1), {8}), DomainError);
    CHECK_THROWS_AS(verify_gaussian_limit(WeightTriple(3, 1, 1), {8}), DomainError);

    auto e = verify_expansions(Phase::Boundary, params_from_weights(1, 1, 2), {0.5}, {8, 16});
    CHECK(e.theorem == "T2.7");
    CHECK(e.pass);
    CHECK(expansion_phase("T2.6") == Phase::AntiFerro);
    CHECK_THROWS(expansion_phase("T9"));

    Rng rng(3, 0);
    ChainConfig ch;
    ch.burn_in = 200;
    ch.thinning = 2;
    auto c = verify_corners_joint(WeightTriple(1, 1, std::sqrt(2.0)), 12, 300, ch, rng, 10.0);
    CHECK(c.grid[0]["interlacing"] == true);
    CHECK(c.pass);
}
