#include <doctest.h>

#include <cmath>

#include "gldens/competitors.hpp"
#include "gldens/rng.hpp"

using namespace gldens;

TEST_CASE("schedule identities") {
    IterationSchedule sched(-0.5, 4);
    CHECK(sched.R() == 16.0);
    CHECK(sched.level(0) == doctest::Approx((-0.5 - 1.0) / 2.0)); // (t_limit - 1)/2
    CHECK(sched.radius(0) == 16.0);

    double prev_t = sched.level(0), prev_r = sched.radius(0);
    for (int k = 1; k < 30; ++k) {
        CHECK(sched.level(k) > prev_t);
        CHECK(sched.radius(k) < prev_r);
        prev_t = sched.level(k);
        prev_r = sched.radius(k);
    }
    CHECK(sched.level(60) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sched.radius(60) == doctest::Approx(8.0).epsilon(1e-12));

    CHECK_THROWS(IterationSchedule(-0.5, 1));
    CHECK_THROWS(IterationSchedule(0.5, 3));
}

TEST_CASE("radial shell values") {
    Competitor v = radial_shell(10.0);
    CHECK(v.value_at_radius(10.0) == -1.0);
    CHECK(v.value_at_radius(12.0) == 1.0);
    CHECK(v.value_at_radius(11.5) == doctest::Approx(0.5));
    CHECK(v.value_at_radius(0.0) == -1.0);
    CHECK(v.value_at_radius(100.0) == 1.0);

    // med(-1, 1, s) is clamp(s, -1, 1)
    RngStream rs(1, 0);
    for (int i = 0; i < 1000; ++i) {
        double r = rs.uniform(0.0, 20.0);
        double s = r - 11.0;
        double med = std::max(-1.0, std::min(1.0, s));
        CHECK(v.value_at_radius(r) == med);
    }
}

TEST_CASE("outer ramp plateau identities") {
    IterationSchedule sched(-0.3, 4);
    for (int k = sched.L - 1; k < sched.L + 3; ++k) {
        Competitor phi = plateau_ramp(sched, k);
        double tk = sched.level(k), rk = sched.radius(k), rk1 = sched.radius(k + 1);
        CHECK(phi.value_at_radius(rk1) == doctest::Approx(tk).epsilon(1e-12));
        RngStream rs(7, k);
        for (int i = 0; i < 1000; ++i) {
            CHECK(phi.value_at_radius(rs.uniform(rk, 4.0 * rk)) == 1.0);
            CHECK(phi.value_at_radius(rs.uniform(0.0, rk1)) == doctest::Approx(tk).epsilon(1e-12));
        }
    }
}

TEST_CASE("inner ramp plateau identities and window validation") {
    IterationSchedule sched(-0.5, 5); // R = 32
    int k = 1;                        // window (r_2, r_1] = (20, 24]
    CHECK(sched.radius(1) == 24.0);
    CHECK(sched.radius(2) == 20.0);
    Competitor phi = plateau_ramp(sched, k, 22);
    CHECK(phi.value_at_radius(22.0) == 1.0);
    CHECK(phi.value_at_radius(21.0) == doctest::Approx(sched.level(1)).epsilon(1e-12));
    RngStream rs(8, 0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(phi.value_at_radius(rs.uniform(22.0, 50.0)) == 1.0);
        CHECK(phi.value_at_radius(rs.uniform(0.0, 21.0)) == doctest::Approx(sched.level(1)).epsilon(1e-12));
    }

    CHECK_THROWS(plateau_ramp(sched, k, 20));              // left-open endpoint
    CHECK_THROWS(plateau_ramp(sched, k, 25));              // above the window
    CHECK_THROWS(plateau_ramp(sched, 0, std::nullopt));    // inner branch needs N
    CHECK_NOTHROW(plateau_ramp(sched, k, 24));             // right-closed endpoint
}

TEST_CASE("plateau value for t_limit = -0.5 at k = 0") {
    IterationSchedule sched(-0.5, 3);
    Competitor phi = plateau_ramp(sched, 0, 7);
    CHECK(phi.plateau == doctest::Approx(-0.75));
}

TEST_CASE("shell choice: pigeonhole bound by exhaustive enumeration") {
    IterationSchedule sched(-0.5, 4); // R = 16, k = 0: window (12, 16]
    Grid g = Grid::cube(2, 18.0, 0.5);

    auto shell_measure = [&](const RegionMask& A, long long N) {
        double total = 0.0;
        for (std::size_t c = 0; c < g.cell_count(); ++c) {
            if (!A.member[c]) continue;
            double r = norm(g.center(c), 2);
            if (r > N - 1 && r <= N) total += g.cell_volume();
        }
        return total;
    };

    SUBCASE("empty mask") {
        RegionMask A(g);
        ShellChoice ch = choose_shell(A, sched, 0);
        CHECK(ch.shell_measure == 0.0);
        CHECK((ch.N >= 13 && ch.N <= 16));
    }

    SUBCASE("full ball") {
        RegionMask A = ball_mask(g, {0.0, 0.0, 0.0}, 16.0);
        ShellChoice ch = choose_shell(A, sched, 0);
        CHECK(ch.shell_measure <= ch.pigeonhole_bound);
        double best = 1e300;
        for (long long N = 13; N <= 16; ++N) best = std::min(best, shell_measure(A, N));
        CHECK(ch.shell_measure == doctest::Approx(best));
    }

    SUBCASE("mass concentrated in one shell is avoided") {
        RegionMask A(g);
        for (std::size_t c = 0; c < g.cell_count(); ++c) {
            double r = norm(g.center(c), 2);
            if (r > 13.0 && r <= 14.0) A.member[c] = 1;
        }
        ShellChoice ch = choose_shell(A, sched, 0);
        CHECK(ch.shell_measure == 0.0);
        CHECK(ch.N != 14);
    }

    SUBCASE("random masks, 100 trials") {
        RngStream rs(42, 0);
        for (int trial = 0; trial < 100; ++trial) {
            RegionMask A(g);
            double density = rs.uniform(0.05, 0.95);
            for (std::size_t c = 0; c < g.cell_count(); ++c)
                if (norm(g.center(c), 2) <= 16.0 && rs.u01() < density) A.member[c] = 1;
            int k = trial % 3; // windows of widths 4, 2, 1
            ShellChoice ch = choose_shell(A, sched, k);
            CHECK(ch.shell_measure <= ch.pigeonhole_bound);
            // exhaustive enumeration over the admissible window
            double best = 1e300;
            for (long long N = static_cast<long long>(sched.radius(k + 1)) + 1;
                 N <= static_cast<long long>(sched.radius(k)); ++N)
                best = std::min(best, shell_measure(A, N));
            CHECK(ch.shell_measure == doctest::Approx(best));
        }
    }
}

TEST_CASE("plateau level choice") {
    EnergyParams params(1.0, 1.4, 3.0, 2);
    EnergySpec canonical = EnergySpec::canonical(params);
    auto t = plateau_level(canonical, 0.1);
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(-0.9));
    // even potential: equality of the two well values
    CHECK(canonical.well(*t, {0.0, 0.0, 0.0}) ==
          doctest::Approx(canonical.well(0.9, {0.0, 0.0, 0.0})).epsilon(1e-15));

    EnergySpec rough = EnergySpec::seeded(EnergyParams(2.0, 1.4, 3.0, 2), 8, 5);
    auto t2 = plateau_level(rough, 0.25);
    REQUIRE(t2.has_value());
    CHECK(*t2 == doctest::Approx(-0.75));

    // a hook that dips near tau = 1 defeats every candidate
    EnergySpec bad = EnergySpec::canonical(params);
    bad.well_hook = [](double tau, const Point&) { return tau > 0.0 ? 0.0 : 1.0 - tau * tau; };
    CHECK_FALSE(plateau_level(bad, 0.1).has_value());
}

TEST_CASE("paraboloid cap identities") {
    const double h = 0.05, R = 12.0;
    RngStream rs(9, 0);
    for (double a : {h, 1.5 * h, 2.0 * h}) {
        Competitor phi = paraboloid_cap(a, h, R);
        CHECK(phi.value_at_radius(0.0) == doctest::Approx(1.0 - a));
        double cap_radius = a * R / (2.0 * h);
        CHECK(cap_radius <= R * (1.0 + 1e-12));
        CHECK(phi.value_at_radius(cap_radius) == doctest::Approx(1.0));
        CHECK(phi.value_at_radius(cap_radius * 0.999) < 1.0);

        for (int i = 0; i < 1000; ++i) {
            double r = rs.uniform(0.0, 2.0 * R);
            CHECK(phi.gradient_norm_at_radius(r) <= 8.0 * h / R + 1e-15);
        }
        // the maximum sits at the cap edge and equals 4h/R
        CHECK(phi.gradient_norm_at_radius(cap_radius * (1.0 - 1e-9)) ==
              doctest::Approx(4.0 * h / R).epsilon(1e-6));
    }
    CHECK_THROWS(paraboloid_cap(0.5 * h, h, R));
    CHECK_THROWS(paraboloid_cap(2.5 * h, h, R));
}

TEST_CASE("cap height formula") {
    EnergyParams params(1.0, 1.4, 3.0, 2);
    // (2^3 * 10^{1.4})^{-1/1.6}
    double expected = std::pow(8.0 * std::pow(10.0, 1.4), -1.0 / 1.6);
    CHECK(cap_height(params, 10.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.0363).epsilon(2e-3));

    // the 1/2 clamp never binds on lambda >= 1, R >= 1: the formula value is
    // bounded by 2^{-m/(m-p)} < 1/2, approached as m grows
    EnergyParams wide(1.0, 1.4, 100.0, 2);
    double almost = cap_height(wide, 1.0);
    CHECK(almost < 0.5);
    CHECK(almost == doctest::Approx(std::pow(2.0, -100.0 / 98.6)).epsilon(1e-12));
    EnergyParams tight(1.0, 1.4, 1.45, 2);
    CHECK(cap_height(tight, 1.0) <= 0.5);

    double prev = cap_height(params, 1.0);
    for (double R : {2.0, 4.0, 8.0, 16.0, 64.0}) {
        double h = cap_height(params, R);
        CHECK(h <= prev);
        prev = h;
    }
}

TEST_CASE("well smallness on the cap range") {
    EnergyParams params(1.0, 1.4, 3.0, 2);
    EnergySpec spec = EnergySpec::canonical(params);
    const double R = 10.0;

    // with the 2^m height the sandwich only gives W <= 2^m h^p R^{-p}
    double h = cap_height(params, R);
    CHECK(w_smallness_margin(spec, h, R) <= std::pow(2.0, params.m) + 1e-9);

    // the 4^m variant restores W <= h^p R^{-p} outright
    double hs = cap_height_strict(params, R);
    CHECK(w_smallness_margin(spec, hs, R) <= 1.0 + 1e-9);

    EnergySpec rough = EnergySpec::seeded(EnergyParams(2.0, 1.4, 3.0, 2), 8, 31);
    double hr = cap_height_strict(rough.params, R);
    CHECK(w_smallness_margin(rough, hr, R) <= 1.0 + 1e-9);
}
