#include <doctest.h>

#include <cmath>

#include "gldens/energy.hpp"
#include "gldens/rng.hpp"

using namespace gldens;

namespace {
EnergySpec canonical_2d() { return EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2)); }
} // namespace

TEST_CASE("parameter sanity and admissibility") {
    CHECK_THROWS(EnergyParams(0.5, 1.4, 3.0, 2)); // lambda < 1
    CHECK_THROWS(EnergyParams(1.0, 1.0, 3.0, 2)); // p = 1
    CHECK_THROWS(EnergyParams(1.0, 1.4, 0.0, 2)); // m = 0

    CHECK(EnergyParams(1.0, 1.4, 3.0, 2).admissible());
    CHECK(EnergyParams(2.0, 1.3, 2.0, 3).admissible());
    // p = 1.9 exceeds n/(n-1) = 1.5 in three dimensions
    auto errs = EnergyParams(1.0, 1.9, 3.0, 3).admissibility_errors();
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("p < n/(n-1)") != std::string::npos);
    // the 1D profile window p = m = 2 is constructible but not admissible
    CHECK_FALSE(EnergyParams(1.0, 2.0, 2.0, 1).admissible());
}

TEST_CASE("dirichlet term evaluation") {
    EnergySpec s = canonical_2d();
    CHECK(s.dirichlet({0.0, 0.0, 0.0}, 0.3, {0.1, 0.2, 0.0}) == 0.0);

    // |xi| = 2, p = 1.4: direct power evaluation
    CHECK(s.dirichlet({2.0, 0.0, 0.0}, 0.0, {0.0, 0.0, 0.0}) ==
          doctest::Approx(std::pow(2.0, 1.4)).epsilon(1e-14));
    CHECK(std::pow(2.0, 1.4) == doctest::Approx(2.6390158).epsilon(1e-7));

    // multiplicative coefficient at unit gradient: a = lambda = 2
    EnergySpec s2 = EnergySpec::canonical(EnergyParams(2.0, 1.4, 3.0, 2));
    s2.coeffs.a_samples.assign(s2.coeffs.a_samples.size(), 2.0);
    CHECK(s2.dirichlet({1.0, 0.0, 0.0}, 0.0, {0.0, 0.0, 0.0}) == doctest::Approx(2.0));

    CHECK_THROWS(s.dirichlet({1.0, 0.0, 0.0}, 1.5, {0.0, 0.0, 0.0}));
    CHECK_THROWS(s.dirichlet({1.0, 0.0, 0.0}, 0.0, {NAN, 0.0, 0.0}));
}

TEST_CASE("well evaluation") {
    EnergySpec s = canonical_2d();
    CHECK(s.well(1.0, {0.0, 0.0, 0.0}) == 0.0);
    CHECK(s.well(-1.0, {0.3, 0.4, 0.0}) == 0.0);
    CHECK(s.well(0.0, {0.0, 0.0, 0.0}) == 1.0);
    // tau = 0.5, m = 3: (0.75)^3
    CHECK(s.well(0.5, {0.0, 0.0, 0.0}) == doctest::Approx(0.421875).epsilon(1e-15));
    CHECK_THROWS(s.well(-1.01, {0.0, 0.0, 0.0}));
}

TEST_CASE("validator passes canonical and seeded specs") {
    CHECK(validate_spec(canonical_2d(), 2000).ok());

    EnergyParams params(2.0, 1.4, 3.0, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EnergySpec s = EnergySpec::seeded(params, 8, seed);
        CHECK(validate_spec(s, 2000, seed).ok());
        // generator correctness by exhaustive scan of the stored samples
        for (double v : s.coeffs.a_samples) CHECK((v >= 0.5 && v <= 2.0));
        for (double v : s.coeffs.b_samples) CHECK((v >= 0.5 && v <= 2.0));
    }
}

TEST_CASE("coefficient fields are deterministic in the seed") {
    EnergyParams params(2.0, 1.4, 3.0, 2);
    EnergySpec s1 = EnergySpec::seeded(params, 8, 77);
    EnergySpec s2 = EnergySpec::seeded(params, 8, 77);
    CHECK(s1.coeffs.a_samples == s2.coeffs.a_samples);
    CHECK(s1.coeffs.b_samples == s2.coeffs.b_samples);
    EnergySpec s3 = EnergySpec::seeded(params, 8, 78);
    CHECK(s1.coeffs.a_samples != s3.coeffs.a_samples);
}

TEST_CASE("validator catches constructed violations") {
    EnergyParams params(2.0, 1.4, 3.0, 2);

    SUBCASE("b sample above the sandwich") {
        EnergySpec s = EnergySpec::seeded(params, 4, 3);
        s.coeffs.b_samples[5] = 2.0 * params.lambda;
        ValidationReport rep = validate_spec(s, 5000);
        CHECK(rep.count('B') >= 1);
    }
    SUBCASE("a sample below the sandwich") {
        EnergySpec s = EnergySpec::seeded(params, 4, 3);
        s.coeffs.a_samples[2] = 0.2 / params.lambda;
        ValidationReport rep = validate_spec(s, 5000);
        CHECK(rep.count('A') >= 1);
    }
    SUBCASE("non-monotone well hook") {
        EnergySpec s = EnergySpec::canonical(params);
        s.well_hook = [](double tau, const Point&) {
            double w = std::pow(1.0 - tau * tau, 3.0);
            return w * (1.0 + 0.5 * std::sin(8.0 * tau));
        };
        ValidationReport rep = validate_spec(s, 5000);
        CHECK(rep.count('C') >= 1);
    }
}

TEST_CASE("sandwich and monotonicity over 1e4 samples") {
    EnergyParams params(3.0, 1.3, 2.5, 2);
    EnergySpec s = EnergySpec::seeded(params, 16, 77);
    RngStream rs(5, 1);
    for (int i = 0; i < 10000; ++i) {
        Point x{rs.uniform(0.0, 16.0), rs.uniform(0.0, 16.0), 0.0};
        double tau = rs.uniform(-1.0, 1.0);
        Point xi{rs.uniform(-3.0, 3.0), rs.uniform(-3.0, 3.0), 0.0};
        double base = std::pow(norm(xi, 2), params.p);
        double f = s.dirichlet(xi, tau, x);
        CHECK(f >= base / params.lambda - 1e-14 * base);
        CHECK(f <= base * params.lambda + 1e-14 * base);
        double wb = std::pow(1.0 - tau * tau, params.m);
        double w = s.well(tau, x);
        CHECK(w >= wb / params.lambda - 1e-14 * wb);
        CHECK(w <= wb * params.lambda + 1e-14 * wb);

        double t1 = rs.uniform(-1.0, 0.0), t2 = rs.uniform(-1.0, 0.0);
        if (t1 > t2) std::swap(t1, t2);
        CHECK(s.well(t1, x) <= s.well(t2, x));
        CHECK(s.well(-t1, x) <= s.well(-t2, x));
    }
}

TEST_CASE("elementary vector bound 2^{1-p}|xi-eta|^p <= |xi|^p + |eta|^p") {
    RngStream rs(17, 2);
    const double p = 1.4;
    for (int i = 0; i < 10000; ++i) {
        Point xi{rs.uniform(-5.0, 5.0), rs.uniform(-5.0, 5.0), rs.uniform(-5.0, 5.0)};
        Point eta{rs.uniform(-5.0, 5.0), rs.uniform(-5.0, 5.0), rs.uniform(-5.0, 5.0)};
        Point diff{xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]};
        double lhs = std::pow(2.0, 1.0 - p) * std::pow(norm(diff, 3), p);
        double rhs = std::pow(norm(xi, 3), p) + std::pow(norm(eta, 3), p);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("discrete energy basics") {
    EnergySpec s = canonical_2d();
    Grid g = Grid::cube(2, 4.0, 0.25);

    ScalarField ones(g, 1.0);
    CHECK(total_energy(s, ones) == 0.0);

    // u = 0: J = W(0) * measure(region) for b = 1
    ScalarField zeros(g, 0.0);
    RegionMask region = ball_mask(g, {0.0, 0.0, 0.0}, 2.0);
    CHECK(total_energy(s, zeros, region) == doctest::Approx(measure(region)).epsilon(1e-12));

    ScalarField bad(g, 0.0);
    bad.values[3] = 1.5;
    CHECK_THROWS(total_energy(s, bad));
}

TEST_CASE("1D linear ramp against the closed-form integral") {
    // u(x) = x on [0,1], p = 2, m = 2: J = 1 + 8/15
    EnergySpec s = EnergySpec::canonical(EnergyParams(1.0, 2.0, 2.0, 1));
    Grid g = Grid::cube(1, 0.5, 1.0 / 64.0);
    // box is [-1/2, 1/2]; shift so the values run over [0, 1]
    ScalarField u = ScalarField::from_function(g, [](const Point& x) { return x[0] + 0.5; });
    double expected = 1.0 + 8.0 / 15.0;
    CHECK(total_energy(s, u) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("energy additivity over disjoint regions") {
    EnergyParams params(2.0, 1.4, 3.0, 2);
    EnergySpec s = EnergySpec::seeded(params, 8, 12);
    Grid g = Grid::cube(2, 3.0, 0.25);
    ScalarField u = ScalarField::from_function(g, [](const Point& x) {
        return std::clamp(0.9 * std::sin(x[0] + 0.3) * std::cos(0.7 * x[1]), -1.0, 1.0);
    });
    RegionMask ball = ball_mask(g, {0.5, -0.25, 0.0}, 1.7);
    RegionMask rest = mask_sub(full_mask(g), ball);
    REQUIRE(masks_disjoint(ball, rest));
    double whole = total_energy(s, u);
    double parts = total_energy(s, u, ball) + total_energy(s, u, rest);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
}

TEST_CASE("scaling both coefficients scales the energy") {
    EnergyParams params(2.0, 1.4, 3.0, 2);
    EnergySpec s = EnergySpec::seeded(params, 8, 21);
    Grid g = Grid::cube(2, 2.0, 0.25);
    ScalarField u = ScalarField::from_function(g, [](const Point& x) {
        return std::clamp(std::tanh(x[0]), -1.0, 1.0);
    });
    double J = total_energy(s, u);

    // power-of-two scaling is exact in floating point
    EnergySpec s2 = s;
    for (double& v : s2.coeffs.a_samples) v *= 4.0;
    for (double& v : s2.coeffs.b_samples) v *= 4.0;
    CHECK(total_energy(s2, u) == 4.0 * J);

    EnergySpec s3 = s;
    for (double& v : s3.coeffs.a_samples) v *= 0.3;
    for (double& v : s3.coeffs.b_samples) v *= 0.3;
    CHECK(total_energy(s3, u) == doctest::Approx(0.3 * J).epsilon(1e-14));
}
