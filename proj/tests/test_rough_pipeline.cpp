// End-to-end tour with genuinely rough coefficients: seeded a(x), b(x) in
// [1/2, 2], planar pinned relaxation, cap sweep, constants assembly and
// the both-sided density verdict.

#include <doctest.h>

#include <cmath>

#include "gldens/degiorgi.hpp"
#include "gldens/density.hpp"
#include "gldens/minimize.hpp"

using namespace gldens;

TEST_CASE("rough-coefficient pipeline end to end") {
    EnergyParams params(2.0, 1.4, 3.0, 2);
    EnergySpec spec = EnergySpec::seeded(params, 8, 2718);
    REQUIRE(validate_spec(spec, 3000).ok());

    // pinned planar relaxation on a box holding B_8
    Grid g = Grid::cube(2, 10.0, 0.25);
    SolveOptions opts;
    opts.max_iters = 1500;
    opts.pin = PinConstraint{{0.0, 0.0, 0.0}, 0.0};
    auto [u, tr] = minimize(spec, planar_interface(g, 1.0), interior_mask(g, 1), opts);
    for (std::size_t i = 0; i + 1 < tr.energy.size(); ++i) CHECK(tr.energy[i + 1] <= tr.energy[i]);

    // cap sweep at R = 8 with the same rough spec
    CapSweepOptions copts;
    copts.spacing = 0.15625;
    copts.a_steps = 8;
    copts.solve.max_iters = 4000;
    CapSweepReport sweep = cap_sweep_experiment(spec, 8.0, copts);
    for (std::size_t j = 0; j + 1 < sweep.V.size(); ++j) CHECK(sweep.V[j + 1] >= sweep.V[j]);
    CHECK(sweep.sigma_hat > 0.0);
    CHECK(sweep.implied_density_ok);
    CHECK(sweep.min_fd_ratio >= 0.9);

    // constants assembly and the density verdict on the pinned field
    ConstantsLedger led = assemble_constants(spec, u, sweep.sigma_hat, 1.0);
    REQUIRE(led.witness_found);
    CHECK(led.delta == sweep.sigma_hat / 4.0);
    CHECK(led.R0 == 2.0 * (led.rho_tilde + led.r_tilde));
    TheoremReport rep = verify_density(u, led, {6.0, 8.0});
    CHECK(rep.hypothesis_met);
    for (const auto& e : rep.entries) {
        if (e.skipped) continue;
        CHECK(e.pass);
    }

    // the recursion fit stays finite on the relaxed field
    IterationSchedule sched(-0.5, 3);
    RecursionFit fit = fit_recursion(u, spec, sched, {0.0, 0.0, 0.0});
    CHECK(std::isfinite(fit.C_hat));
}
