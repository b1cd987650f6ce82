#include "sixv/core.hpp"
#include "sixv/exactpf.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace sixv;

TEST_CASE("delta of the showcase weights") {
    CHECK(delta(1, 1, std::sqrt(2.0)) == doctest::Approx(0).epsilon(1e-15));
    CHECK(delta(3, 1, 1) == doctest::Approx(1.5));
    CHECK(delta(1, 1, std::sqrt(8.0)) == doctest::Approx(-3));
    CHECK(delta(2, 1, 2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(delta(0, 1, 1), DomainError);
    CHECK_THROWS_AS(delta(1, -1, 1), DomainError);
}

TEST_CASE("phase classification") {
    CHECK(classify_phase(1, 1, std::sqrt(2.0)) == Phase::Disordered);
    CHECK(classify_phase(3, 1, 1) == Phase::Ferro);
    CHECK(classify_phase(1, 1, std::sqrt(8.0)) == Phase::AntiFerro);
    CHECK(classify_phase(1, 1, 2) == Phase::Boundary);
    CHECK_THROWS_AS(classify_phase(1, 1, 0), UnsupportedDeltaOne);
}

TEST_CASE("weights from parameters") {
    PhaseParams p;
    p.phase = Phase::Disordered;
    p.t = 0;
    p.gamma = M_PI / 4;
    WeightTriple w = weights_from_params(p);
    CHECK(w.a == doctest::Approx(std::sin(M_PI / 4)));
    CHECK(w.b == doctest::Approx(std::sin(M_PI / 4)));
    CHECK(w.c == doctest::Approx(1));

    PhaseParams bd{Phase::Boundary, 0.3, 1.0, 1, 1};
    w = weights_from_params(bd);
    CHECK(w.a == doctest::Approx(0.7));
    CHECK(w.b == doctest::Approx(1.3));
    CHECK(w.c == doctest::Approx(2));

    PhaseParams f{Phase::Ferro, 0.5, 0.5, 1, 1};
    CHECK_THROWS_AS(weights_from_params(f), DomainError);
}

TEST_CASE("parameters from weights, round trip") {
    PhaseParams p = params_from_weights(3, 1, 1);
    CHECK(p.phase == Phase::Ferro);
    CHECK(p.gamma == doctest::Approx(-0.4812118).epsilon(1e-7));
    CHECK(p.t == doctest::Approx(1.4436355).epsilon(1e-7));
    CHECK(p.scale == doctest::Approx(0.8944272).epsilon(1e-7));
    CHECK(p.c_sign == -1);

    p = params_from_weights(1, 1, std::sqrt(2.0));
    CHECK(p.gamma == doctest::Approx(M_PI / 4));
    CHECK(std::abs(p.t) < 1e-14);
    CHECK(p.scale == doctest::Approx(std::sqrt(2.0)));

    p = params_from_weights(1, 1, 2);
    CHECK(p.phase == Phase::Boundary);
    CHECK(p.gamma == 1.0);
    CHECK(std::abs(p.t) < 1e-15);
    CHECK(p.scale == doctest::Approx(1));


    const double cases[][3] = {{3, 1, 1}, {1, 3, 1}, {1, 1, std::sqrt(2.0)}, {2, 1, 2}, {1, 1, std::sqrt(8.0)},
                               {1, 1, 2}, {0.7, 1.9, 2.6}, {5, 2, 0.3}, {1.2, 0.4, 2.5}};
    for (auto& c : cases) {
        CAPTURE(c[0]);
        CAPTURE(c[1]);
        CAPTURE(c[2]);
        PhaseParams q = params_from_weights(c[0], c[1], c[2]);
        WeightTriple w = weights_from_params(q);
        CHECK(std::abs(w.a / c[0] - 1) < 1e-12);
        CHECK(std::abs(w.b / c[1] - 1) < 1e-12);
        CHECK(std::abs(w.c / c[2] - 1) < 1e-12);
        CHECK(std::abs(w.delta() - delta(c[0], c[1], c[2])) < 1e-12);
    }
}

TEST_CASE("validation of small grids") {
    Configuration one(1, {VertexType::T5});
    CHECK(validate_configuration(one).empty());
    Configuration bad(1, {VertexType::T1});
    CHECK(validate_configuration(bad).size() >= 1);
}

TEST_CASE("triangle of the n = 5 sample configuration") {
    MonotoneTriangle t;
    t.n = 5;
    t.rows = {{3}, {1, 3}, {1, 3, 5}, {1, 2, 4, 5}, {1, 2, 3, 4, 5}};
    REQUIRE(is_monotone_triangle(t));
    Configuration cfg = configuration_from_triangle(t);
    CHECK(validate_configuration(cfg).empty());
    CHECK(triangle_from_configuration(cfg) == t);

    MonotoneTriangle broken = t;
    broken.rows[1] = {1, 2};  // does not interlace with {3}
    CHECK_THROWS_AS(configuration_from_triangle(broken), StructureError);
}

TEST_CASE("triangle bijection is exhaustive for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        std::set<std::vector<Row>> seen;
        for (const auto& cfg : dwbc_configurations(n)) {
            REQUIRE(validate_configuration(cfg).empty());
            MonotoneTriangle t = triangle_from_configuration(cfg);
            CHECK(is_monotone_triangle(t));
            CHECK(configuration_from_triangle(t) == cfg);
            seen.insert(t.rows);
        }
        Row top(n);
        for (int i = 0; i < n; ++i) top[i] = i + 1;
        std::size_t all = 0;
        for_each_triangle_below(top, [&](const std::vector<Row>&) { ++all; });
        CHECK(seen.size() == all);
    }
}

TEST_CASE("turn counting N5 - N6 = n") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& cfg : dwbc_configurations(n)) {
            auto c = cfg.counts();
            CHECK(c[5] - c[6] == n);
        }
}

TEST_CASE("xor reflection") {
    Configuration one(1, {VertexType::T5});
    CHECK(validate_configuration(xor_reflect(one)).empty());
    for (const auto& cfg : dwbc_configurations(3)) CHECK(xor_reflect(xor_reflect(cfg)) == cfg);
    WeightTriple w(1.7, 0.6, 1.1), s(0.6, 1.7, 1.1);
    for (const auto& cfg : dwbc_configurations(4)) {
        Configuration r = xor_reflect(cfg);
        CHECK(validate_configuration(r).empty());
        CHECK(config_weight(r, w) == doctest::Approx(config_weight(cfg, s)).epsilon(1e-13));
    }
}

TEST_CASE("text serialization round trip") {
    for (const auto& cfg : dwbc_configurations(4)) CHECK(from_text(to_text(cfg)) == cfg);
    MonotoneTriangle t = triangle_from_configuration(dwbc_configurations(3)[2]);
    std::string csv = triangle_csv(t);
    CHECK(csv.rfind("k,i,lambda\n", 0) == 0);
}
