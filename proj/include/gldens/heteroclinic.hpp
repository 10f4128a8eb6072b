#pragma once

#include <string>
#include <vector>

namespace gldens {

// One-dimensional connection profile between the wells -1 and +1 for the
// canonical energy  \int |u'|^p + (1-u^2)^m dx.
//
// Derivation of the quadrature formula: multiplying the Euler-Lagrange
// equation  p (|u'|^{p-2} u')' = W'(u)  by u' gives
//   p (p-1) |u'|^{p-2} u' u'' = W'(u) u',
// i.e.  d/dx [ (p-1)|u'|^p - W(u) ] = 0.  A monotone profile with
// u(+-inf) = +-1 and u'(+-inf) = 0 forces the constant to vanish, so
//   (p-1) |u'|^p = W(u)        (equipartition of energy).
// Solving for u' > 0 and separating variables:
//   x(u) = \int_0^u (p-1)^{1/p} (1-s^2)^{-m/p} ds,   u(0) = 0.
// The integrand is singular at s = 1; it is integrable exactly when m < p
// (contact with the well at finite x), log-divergent at m = p (exponential
// tail) and polynomially divergent for m > p (polynomial tail
// 1-u ~ x^{-p/(m-p)}).
struct Profile1D {
    std::vector<double> xs; // increasing, xs[0] = 0
    std::vector<double> us; // us[0] = 0, strictly increasing, < 1
    double p = 2.0;
    double m = 2.0;
    bool hit_x_budget = false;

    // Piecewise-linear evaluation; odd under x -> -x; clamps to the last
    // sample beyond the computed range.
    double value(double x) const;
    double max_x() const { return xs.empty() ? 0.0 : xs.back(); }
    double max_u() const { return us.empty() ? 0.0 : us.back(); }
};

// x(u) by adaptive midpoint quadrature (Richardson-refined); singularity at
// s = 1 handled by recursive subdivision.
double profile_position(double p, double m, double u);

// Profile sampled at u = k*du up to u_max (< 1), inverted to u(x).  When the
// accumulated x exceeds x_budget the profile is truncated and flagged.
Profile1D quadrature_profile(double p, double m, double u_max, double du, double x_budget = 1e9);

// |(p-1)|u'|^p - (1-u^2)^m| at interior samples (centered differences);
// entries align with sample indices 1..size-2 of the profile restricted to
// |u| <= 0.99.
std::vector<double> first_integral_residual(const Profile1D& prof, double u_interior_cap = 0.99);

enum class DecayClass { Polynomial, Exponential, FiniteInterval, Undetermined };

std::string to_string(DecayClass c);

struct DecayReport {
    DecayClass cls = DecayClass::Undetermined;
    // Polynomial: power q in 1-u ~ x^{-q}.  Exponential: rate in
    // 1-u ~ e^{-rate x}.  FiniteInterval: estimated contact point x*.
    double exponent = 0.0;
    double rss_poly = 0.0;
    double rss_exp = 0.0;
    std::string note;
};

// Classifies the tail of a computed profile.  Finite contact is detected
// from the summability of the x-increments over dyadic shells in 1-u; the
// polynomial/exponential split fits log(1-u) against log(x) and against x
// on the tail window (last third of the samples with u >= 0.99) and keeps
// the model whose residual sum is at least twice smaller.
DecayReport decay_classify(const Profile1D& prof);

} // namespace gldens
