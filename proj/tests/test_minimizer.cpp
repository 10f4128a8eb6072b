#include <doctest.h>

#include <cmath>

#include "gldens/heteroclinic.hpp"
#include "gldens/minimize.hpp"
#include "gldens/rng.hpp"

using namespace gldens;

namespace {

// 1D double-well relaxation toward the connection profile
std::pair<ScalarField, SolveTrace> solve_1d_tanh(double h, double X, int max_iters) {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 2.0, 2.0, 1));
    Grid g = Grid::cube(1, X, h);
    ScalarField init = planar_interface(g, 1.0);
    SolveOptions opts;
    opts.max_iters = max_iters;
    opts.tol_energy = 1e-10;
    return minimize(spec, init, interior_mask(g, 1), opts);
}

} // namespace

TEST_CASE("well state is returned unchanged") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 2.0, 0.25);
    ScalarField init(g, 1.0);
    auto [u, tr] = minimize(spec, init, interior_mask(g, 1), SolveOptions{});
    CHECK(tr.converged);
    CHECK(tr.energy.back() == 0.0);
    for (std::size_t c = 0; c < u.values.size(); ++c) CHECK(u.values[c] == 1.0);
}

TEST_CASE("1D minimizer matches the quadrature profile") {
    auto [u, tr] = solve_1d_tanh(0.05, 10.0, 20000);
    CHECK(tr.converged);
    Profile1D prof = quadrature_profile(2.0, 2.0, 1.0 - 1e-9, 1e-4);
    double worst = 0.0;
    for (std::size_t c = 0; c < u.values.size(); ++c)
        worst = std::max(worst, std::abs(u.values[c] - prof.value(u.grid.center(c)[0])));
    CHECK(worst <= 0.02);

    // energy trace is nonincreasing
    for (std::size_t i = 0; i + 1 < tr.energy.size(); ++i) CHECK(tr.energy[i + 1] <= tr.energy[i]);
}

TEST_CASE("boundary and pin fidelity are exact") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 4.0, 0.25);
    ScalarField init = planar_interface(g, 1.5);
    SolveOptions opts;
    opts.max_iters = 200;
    opts.pin = PinConstraint{{0.9, 0.7, 0.0}, 0.123};
    auto [u, tr] = minimize(spec, init, interior_mask(g, 1), opts);

    for (std::size_t c = 0; c < u.values.size(); ++c)
        if (g.on_boundary(c)) CHECK(u.values[c] == init.values[c]);
    CHECK(u.values[g.cell_at({0.9, 0.7, 0.0})] == 0.123);
}

TEST_CASE("pinned flat start only descends") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 3.0, 0.25);
    ScalarField init(g, 0.0);
    SolveOptions opts;
    opts.max_iters = 300;
    opts.pin = PinConstraint{{0.0, 0.0, 0.0}, 0.0};
    auto [u, tr] = minimize(spec, init, interior_mask(g, 1), opts);
    CHECK(tr.energy.back() <= tr.energy.front());
    CHECK(u.values[g.cell_at({0.0, 0.0, 0.0})] == 0.0);
}

TEST_CASE("iteration cap sets the flag and returns the best iterate") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 4.0, 0.25);
    ScalarField init = planar_interface(g, 2.0);
    SolveOptions opts;
    opts.max_iters = 3;
    auto [u, tr] = minimize(spec, init, interior_mask(g, 1), opts);
    CHECK(tr.hit_iter_cap);
    CHECK_FALSE(tr.converged);
    CHECK(tr.energy.back() <= tr.energy.front());
}

TEST_CASE("precondition violations throw") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 2.0, 0.25);
    ScalarField bad(g, 0.0);
    bad.values[5] = 1.7;
    CHECK_THROWS(minimize(spec, bad, interior_mask(g, 1), SolveOptions{}));

    ScalarField ok(g, 0.0);
    CHECK_THROWS(minimize(spec, ok, full_mask(g), SolveOptions{})); // free region hits the boundary
}

TEST_CASE("descent direction agrees with a finite difference") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 2.0, 0.25);
    RngStream rs(6, 0);
    const double eps_reg = 1e-3;
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField u = ScalarField::from_function(g, [&](const Point&) { return rs.uniform(-0.9, 0.9); });
        std::vector<double> grad = energy_gradient(spec, u, eps_reg);
        double alpha = std::pow(10.0, rs.uniform(-4.0, -2.0));

        // projected step restricted to the interior
        RegionMask interior = interior_mask(g, 1);
        ScalarField v = u;
        double dirdot = 0.0;
        for (std::size_t c = 0; c < u.values.size(); ++c) {
            if (!interior.member[c]) continue;
            v.values[c] = std::clamp(u.values[c] - alpha * grad[c], -1.0, 1.0);
            dirdot += grad[c] * (v.values[c] - u.values[c]);
        }
        CHECK(dirdot <= 0.0);

        // central difference of the regularized energy along the step
        ScalarField up = u, um = u;
        const double t = 1e-5;
        for (std::size_t c = 0; c < u.values.size(); ++c) {
            double d = v.values[c] - u.values[c];
            up.values[c] = u.values[c] + t * d;
            um.values[c] = u.values[c] - t * d;
        }
        double fd = (regularized_energy(spec, up, eps_reg) - regularized_energy(spec, um, eps_reg)) /
                    (2.0 * t);
        CHECK(fd == doctest::Approx(dirdot).epsilon(1e-4));
    }
}

TEST_CASE("minimality margin of the identical competitor") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 2.0, 0.25);
    ScalarField u = planar_interface(g, 1.0);
    MarginReport rep = minimality_check(spec, u, u, 1e-12);
    CHECK(rep.margin == 0.0);
    CHECK(rep.pass);
}

TEST_CASE("wells beat the well center on a large interior ball") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 8.0, 0.25);
    ScalarField u(g, 0.0);
    ScalarField v = u;
    RegionMask ball = ball_mask(g, {0.0, 0.0, 0.0}, 5.0);
    for (std::size_t c = 0; c < v.values.size(); ++c)
        if (ball.member[c]) v.values[c] = 1.0;
    MarginReport rep = minimality_check(spec, u, v, 0.0);
    CHECK(rep.margin > 0.0);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("boundary-touching competitor is rejected") {
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 1.4, 3.0, 2));
    Grid g = Grid::cube(2, 2.0, 0.25);
    ScalarField u(g, 0.0);
    ScalarField v = u;
    v.values[0] = 0.5; // corner cell
    CHECK_THROWS(minimality_check(spec, u, v, 0.0));
}

TEST_CASE("single-cell probes cannot beat a converged field") {
    auto [u, tr] = solve_1d_tanh(0.1, 6.0, 20000);
    REQUIRE(tr.converged);
    EnergySpec spec = EnergySpec::canonical(EnergyParams(1.0, 2.0, 2.0, 1));
    double J = tr.energy.back();
    double tol = 1e-8 * std::max(J, 1.0);

    RngStream rs(11, 0);
    RegionMask interior = interior_mask(u.grid, 1);
    for (int probe = 0; probe < 30; ++probe) {
        std::size_t c = static_cast<std::size_t>(rs.uniform(0.0, double(u.grid.cell_count())));
        if (c >= u.grid.cell_count() || !interior.member[c]) continue;
        ScalarField v = u;
        v.values[c] = rs.uniform(-1.0, 1.0);
        MarginReport rep = minimality_check(spec, u, v, tol);
        CHECK(rep.pass);
        // exactness of the stencil closure: margin equals the global difference
        double global = total_energy(spec, u) - total_energy(spec, v);
        CHECK(rep.margin == doctest::Approx(global).epsilon(1e-9).scale(std::max(1.0, std::abs(global))));
    }
}
