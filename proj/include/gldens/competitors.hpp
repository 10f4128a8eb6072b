#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "gldens/energy.hpp"
#include "gldens/grid.hpp"

namespace gldens {

// Dyadic truncation schedule on the ball of radius R = 2^L: plateau levels
// t_k increasing to t_limit in (-1,0) and radii r_k decreasing to R/2.
struct IterationSchedule {
    double t_limit; // in (-1,0)
    int L;          // >= 2

    IterationSchedule(double t_limit_, int L_);

    double R() const { return std::ldexp(1.0, L); }
    // t_k = (1 - 2^{-k-1}) t_limit - 2^{-k-1}
    double level(int k) const;
    // r_k = (1 + 2^{-k})/2 * R
    double radius(int k) const;
};

enum class CompetitorKind { Shell, RampOuter, RampInner, Paraboloid };

// Radial analytic profile, exact by construction and rasterizable on any
// grid.  Values always lie in [-1, 1].
struct Competitor {
    CompetitorKind kind = CompetitorKind::Shell;
    Point center{0.0, 0.0, 0.0};
    // kind-specific parameters
    double R = 0.0;       // Shell: inner radius.  Paraboloid: ball radius.
    double plateau = 0.0; // Ramp*: inner plateau value t_k
    double r_outer = 0.0; // RampOuter: r_k.  RampInner: integer radius N.
    double slope = 0.0;   // Ramp*: ramp slope in r
    double a = 0.0;       // Paraboloid: depth parameter
    double h = 0.0;       // Paraboloid: height scale

    double value_at_radius(double r) const;
    double value(const Point& x, int dim) const;
    // analytic |gradient| at radius r (the profiles are piecewise C^1)
    double gradient_norm_at_radius(double r) const;
    ScalarField rasterize(const Grid& g) const;
};

// v(x) = med(-1, 1, |x| - R - 1): -1 on the ball of radius R, +1 outside
// radius R+2, unit slope in between.
Competitor radial_shell(double R);

// Truncation competitor for step k of the schedule.  For k >= L-1 the ramp
// runs between r_{k+1} and r_k with slope (2^{k+2}/R)(1 - t_k).  For
// k <= L-2 a unit-width ramp is placed at an integer radius N in
// (r_{k+1}, r_k], which must be supplied (see choose_shell).
Competitor plateau_ramp(const IterationSchedule& sched, int k, std::optional<long long> shell_radius = std::nullopt);

// The admissible integer radius N in (r_{k+1}, r_k] minimizing the measure
// of (B_N \ B_{N-1}) ∩ A.  By pigeonhole over the 2^{L-k-2} admissible
// shells the minimized value is at most (2^{k+2}/R) * measure(A).
struct ShellChoice {
    long long N = 0;
    double shell_measure = 0.0;
    double pigeonhole_bound = 0.0;
};
ShellChoice choose_shell(const RegionMask& A, const IterationSchedule& sched, int k, const Point& center = {});

// A plateau level t in (-1,0) with W(t,x) <= W(1-h,x) at every sampled x.
// For the multiplicative well this is -(1-h) exactly (the coefficient
// cancels); with a user hook a grid of candidates is scanned and failure is
// reported as an empty optional.
std::optional<double> plateau_level(const EnergySpec& spec, double h, int x_samples = 256,
                                    std::uint64_t sample_seed = 7);

// phi_a(x) = min{(1-a) + 4 h^2 |x|^2 / (a R^2), 1} for h <= a <= 2h.
// The sublevel set {phi_a < 1} is the ball of radius a R/(2h) ⊆ B_R and
// |grad phi_a| <= 8h/R everywhere (the maximum, at the cap edge, is 4h/R).
Competitor paraboloid_cap(double a, double h, double R);

// h(R) = min{(2^m lambda R^p)^{-1/(m-p)}, 1/2}.  Requires m > p and R >= 1.
double cap_height(const EnergyParams& params, double R);
// Variant with 4^m in place of 2^m; this is the largest height for which
// the sandwich bound gives W(tau, x) <= h^p R^{-p} on [1-2h, 1] (with the
// 2^m formula that inequality can miss by a factor up to 2^m; see
// w_smallness_margin).
double cap_height_strict(const EnergyParams& params, double R);

// max over sampled (tau, x), tau in [1-2h, 1], of W(tau,x) / (h^p R^{-p}).
double w_smallness_margin(const EnergySpec& spec, double h, double R, int samples = 1000,
                          std::uint64_t sample_seed = 11);

} // namespace gldens
