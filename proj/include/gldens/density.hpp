#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gldens/competitors.hpp"
#include "gldens/energy.hpp"
#include "gldens/grid.hpp"
#include "gldens/minimize.hpp"

namespace gldens {

// Per-radius measures of both level sets and the energy in B_R.
struct DensityCurve {
    Point center{0.0, 0.0, 0.0};
    std::vector<double> radii;
    std::vector<double> pos_measure; // |{u >= 0} ∩ B_R|
    std::vector<double> neg_measure; // |{u <= 0} ∩ B_R|
    std::vector<double> energy;      // J(u, B_R)
    std::vector<bool> clipped;
};

DensityCurve density_curve(const EnergySpec& spec, const ScalarField& field, const Point& center,
                           std::vector<double> radii);

struct GrowthReport {
    std::vector<double> normalized; // J(u,B_R) / R^{n-1}
    double max_normalized = 0.0;
    double ratio_max_over_min = 1.0;
    double loglog_slope = 0.0;
    double c_cap = 0.0;
    double slope_cap = 0.0;
    bool pass = false;
};

// Pass iff the normalized energies stay below c_cap and the log-log slope
// of J against R is at most n-1+slope_margin.
GrowthReport energy_growth(const DensityCurve& curve, int n, double c_cap = 1e6,
                           double slope_margin = 0.15);

// |{u >= 0} ∩ B_r(center)| >= eps r^n.
bool seed_ball_check(const ScalarField& field, const Point& center, double r, double eps);

// Paraboloid cap sweep: pin u(0) = 1-h, relax, and for a in [h, 2h] measure
// the exceedance set Omega_a = {u > phi_a} and the trapped volume
// V_a = \int_{Omega_a} (u - phi_a).
struct CapSweepOptions {
    double box_factor = 1.25;       // grid half-width = box_factor * R
    double spacing = 0.15625;
    int a_steps = 8;                // sweep points = a_steps + 1
    double interface_offset = -1.0; // interface plane x_1 = -offset; < 0 means R/2
    double interface_width = 1.0;
    bool profile_boundary = true;   // seed with the 1D connection profile
    bool skip_solver = false;       // evaluate the sweep on the seed field as-is
    SolveOptions solve;
};

struct CapSweepReport {
    double R = 0.0;
    double h = 0.0;
    std::vector<double> a_values;
    std::vector<double> V;             // trapped volume per sweep point
    std::vector<double> omega_measure; // |Omega_a|
    std::vector<double> fd_derivative; // central dV/da (NaN at endpoints)
    double min_fd_ratio = 0.0;         // min over interior points of fd / |Omega_a|
    double V2h_over_Rn_h = 0.0;        // V_{2h} / (R^n h)
    double implied_density_lower = 0.0; // V_{2h} / (2h)
    bool implied_density_ok = false;   // |{u>=0} ∩ B_R| >= |Omega_{2h}| >= V_{2h}/(2h)
    double sigma_hat = 0.0;            // |{u>=0} ∩ B_R| / R^n
    double sigma_proof = 0.0;          // V_{2h} / (2h R^n)
    bool solver_converged = false;
    bool solver_hit_cap = false;
    ScalarField field; // the relaxed field, reusable downstream
};

CapSweepReport cap_sweep_experiment(const EnergySpec& spec, double R, const CapSweepOptions& opts);

// Fitted constants of the density estimate, assembled as
// R0 = 2(rho + r), delta = sigma / 2^n.
struct ConstantsLedger {
    double sigma = 0.0;       // fitted density constant from the cap sweep
    double h_tilde = 0.0;     // cap height at radius r_tilde
    double rho_tilde = NAN;   // smallest radius with max_{B_rho} u >= 1 - h_tilde
    double r_tilde = 1.0;     // seed-ball radius (input; propagation treated as a black box)
    double delta_tilde = 0.0; // propagated density (input; defaults to sigma)
    double R0 = NAN;
    double delta = 0.0;
    Point witness{0.0, 0.0, 0.0};
    double witness_value = 0.0;
    bool witness_found = false;
    bool seed_ball_ok = false;
};

// Locates the witness x* with u(x*) >= 1-h_tilde nearest the origin,
// verifies the seed-ball density at (x*, r_tilde, sigma), and assembles the
// derived constants.  witness_found stays false when no cell qualifies
// (hypothesis unmet at this box size).
ConstantsLedger assemble_constants(const EnergySpec& spec, const ScalarField& field, double sigma_hat,
                                   double r_tilde = 1.0, double delta_tilde = NAN);

struct TheoremReport {
    struct Entry {
        double R = 0.0;
        double pos = 0.0;
        double neg = 0.0;
        double bound = 0.0; // delta R^n
        bool pass = false;
        bool skipped = false;
        std::string note;
    };
    std::vector<Entry> entries;
    bool all_pass = false; // over checkable radii (and at least one checked)
    bool hypothesis_met = false;
    double u0 = 0.0;
};

// Both-sided density check |B_R ∩ {u >= 0}|, |B_R ∩ {u <= 0}| >= delta R^n
// for every checkable R >= R0; radii clipped by the box or below R0 are
// reported as skipped.
TheoremReport verify_density(const ScalarField& field, const ConstantsLedger& ledger,
                             const std::vector<double>& radii);

} // namespace gldens
