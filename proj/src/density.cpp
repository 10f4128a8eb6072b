#include "gldens/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gldens/heteroclinic.hpp"

namespace gldens {

DensityCurve density_curve(const EnergySpec& spec, const ScalarField& field, const Point& center,
                           std::vector<double> radii) {
    std::sort(radii.begin(), radii.end());
    DensityCurve curve;
    curve.center = center;
    RegionMask pos = superlevel_mask(field, 0.0);
    RegionMask neg = sublevel_mask(field, 0.0);
    for (double R : radii) {
        RegionMask ball = ball_mask(field.grid, center, R);
        curve.radii.push_back(R);
        curve.pos_measure.push_back(measure(mask_and(ball, pos)));
        curve.neg_measure.push_back(measure(mask_and(ball, neg)));
        curve.energy.push_back(total_energy(spec, field, ball));
        curve.clipped.push_back(ball.clipped);
    }
    return curve;
}

GrowthReport energy_growth(const DensityCurve& curve, int n, double c_cap, double slope_margin) {
    if (curve.radii.size() < 3) throw std::invalid_argument("energy_growth: at least 3 radii required");
    GrowthReport rep;
    rep.c_cap = c_cap;
    rep.slope_cap = static_cast<double>(n - 1) + slope_margin;

    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        double norm = curve.energy[i] / std::pow(curve.radii[i], n - 1);
        rep.normalized.push_back(norm);
        rep.max_normalized = std::max(rep.max_normalized, norm);
        lo = std::min(lo, norm);
    }
    rep.ratio_max_over_min = lo > 0.0 ? rep.max_normalized / lo : (rep.max_normalized > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);

    // log-log slope over the radii with positive energy
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        if (curve.energy[i] <= 0.0) continue;
        double lx = std::log(curve.radii[i]), ly = std::log(curve.energy[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    rep.loglog_slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    rep.pass = rep.max_normalized <= c_cap && rep.loglog_slope <= rep.slope_cap;
    return rep;
}

bool seed_ball_check(const ScalarField& field, const Point& center, double r, double eps) {
    RegionMask ball = ball_mask(field.grid, center, r);
    double pos = measure(mask_and(ball, superlevel_mask(field, 0.0)));
    return pos >= eps * std::pow(r, field.grid.dim);
}

CapSweepReport cap_sweep_experiment(const EnergySpec& spec, double R, const CapSweepOptions& opts) {
    if (!(R >= 1.0)) throw std::invalid_argument("cap_sweep_experiment: R >= 1 required");
    const int n = spec.params.n;
    CapSweepReport rep;
    rep.R = R;
    rep.h = cap_height(spec.params, R);
    const double h = rep.h;

    Grid grid = Grid::cube(n, opts.box_factor * R, opts.spacing);
    double offset = opts.interface_offset >= 0.0 ? opts.interface_offset : 0.5 * R;

    ScalarField seed;
    if (opts.profile_boundary) {
        Profile1D prof = quadrature_profile(spec.params.p, spec.params.m, 1.0 - 1e-6, 1e-4);
        seed = ScalarField::from_function(grid, [&](const Point& x) { return prof.value(x[0] + offset); });
    } else {
        seed = planar_interface(grid, opts.interface_width, offset);
    }

    if (opts.skip_solver) {
        rep.field = std::move(seed);
        rep.solver_converged = true;
    } else {
        SolveOptions sopts = opts.solve;
        sopts.pin = PinConstraint{{0.0, 0.0, 0.0}, 1.0 - h};
        auto [field, trace] = minimize(spec, seed, interior_mask(grid, 1), sopts);
        rep.field = std::move(field);
        rep.solver_converged = trace.converged;
        rep.solver_hit_cap = trace.hit_iter_cap;
    }
    const ScalarField& u = rep.field;

    // sweep a over [h, 2h]
    const int steps = std::max(opts.a_steps, 2);
    const double vol = grid.cell_volume();
    const std::size_t nc = grid.cell_count();
    for (int j = 0; j <= steps; ++j) {
        double a = h + static_cast<double>(j) / steps * h;
        Competitor cap = paraboloid_cap(a, h, R);
        double V = 0.0;
        std::size_t cnt = 0;
        for (std::size_t c = 0; c < nc; ++c) {
            double phi = cap.value(grid.center(c), n);
            if (u.values[c] > phi) {
                V += (u.values[c] - phi) * vol;
                ++cnt;
            }
        }
        rep.a_values.push_back(a);
        rep.V.push_back(V);
        rep.omega_measure.push_back(static_cast<double>(cnt) * vol);
    }

    rep.fd_derivative.assign(rep.V.size(), NAN);
    rep.min_fd_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < rep.V.size(); ++j) {
        double fd = (rep.V[j + 1] - rep.V[j - 1]) / (rep.a_values[j + 1] - rep.a_values[j - 1]);
        rep.fd_derivative[j] = fd;
        if (rep.omega_measure[j] > 0.0)
            rep.min_fd_ratio = std::min(rep.min_fd_ratio, fd / rep.omega_measure[j]);
    }

    const double V2h = rep.V.back();
    rep.V2h_over_Rn_h = V2h / (std::pow(R, n) * h);
    rep.implied_density_lower = V2h / (2.0 * h);
    rep.sigma_proof = V2h / (2.0 * h * std::pow(R, n));

    RegionMask ball = ball_mask(grid, {0.0, 0.0, 0.0}, R);
    double pos = measure(mask_and(ball, superlevel_mask(u, 0.0)));
    rep.sigma_hat = pos / std::pow(R, n);

    // exact arithmetic chain: V_{2h} <= 2h |Omega_{2h}| cell by cell, and
    // Omega_{2h} ⊆ {u >= 0} ∩ B_R since phi_{2h} >= 1-2h >= 0
    double omega2h = rep.omega_measure.back();
    rep.implied_density_ok = V2h <= 2.0 * h * omega2h * (1.0 + 1e-12) && pos >= omega2h * (1.0 - 1e-12);
    return rep;
}

ConstantsLedger assemble_constants(const EnergySpec& spec, const ScalarField& field, double sigma_hat,
                                   double r_tilde, double delta_tilde) {
    ConstantsLedger led;
    led.sigma = sigma_hat;
    led.r_tilde = std::max(r_tilde, 1.0);
    led.h_tilde = cap_height(spec.params, led.r_tilde);
    led.delta_tilde = std::isnan(delta_tilde) ? sigma_hat : delta_tilde;
    led.delta = sigma_hat / std::pow(2.0, field.grid.dim);

    const Grid& g = field.grid;
    const double level = 1.0 - led.h_tilde;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) {
        if (field.values[c] < level) continue;
        Point x = g.center(c);
        double r = norm(x, g.dim);
        if (r < best) {
            best = r;
            led.witness = x;
            led.witness_value = field.values[c];
            led.witness_found = true;
        }
    }
    if (led.witness_found) {
        led.rho_tilde = best;
        led.R0 = 2.0 * (led.rho_tilde + led.r_tilde);
        led.seed_ball_ok = seed_ball_check(field, led.witness, led.r_tilde, led.sigma);
    }
    return led;
}

TheoremReport verify_density(const ScalarField& field, const ConstantsLedger& ledger,
                             const std::vector<double>& radii) {
    TheoremReport rep;
    const Grid& g = field.grid;
    rep.u0 = field.values[g.cell_at({0.0, 0.0, 0.0})];
    rep.hypothesis_met = std::abs(rep.u0) <= 1e-9;

    RegionMask pos = superlevel_mask(field, 0.0);
    RegionMask neg = sublevel_mask(field, 0.0);
    bool checked_any = false, all = true;
    for (double R : radii) {
        TheoremReport::Entry e;
        e.R = R;
        if (!(R >= ledger.R0) || std::isnan(ledger.R0)) {
            e.skipped = true;
            e.note = "below R0";
            rep.entries.push_back(e);
            continue;
        }
        RegionMask ball = ball_mask(g, {0.0, 0.0, 0.0}, R);
        if (ball.clipped) {
            e.skipped = true;
            e.note = "ball clipped by the box";
            rep.entries.push_back(e);
            continue;
        }
        e.pos = measure(mask_and(ball, pos));
        e.neg = measure(mask_and(ball, neg));
        e.bound = ledger.delta * std::pow(R, g.dim);
        e.pass = e.pos >= e.bound && e.neg >= e.bound;
        checked_any = true;
        all = all && e.pass;
        rep.entries.push_back(e);
    }
    rep.all_pass = checked_any && all;
    return rep;
}

} // namespace gldens
