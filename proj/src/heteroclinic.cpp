#include "gldens/heteroclinic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gldens {

namespace {

// The quadrature integrand (p-1)^{1/p} (1-s^2)^{-q}, q = m/p, rewritten
// with w = 1-s as  scale * w^{-q} (2-w)^{-q}.  The singular factor w^{-q}
// is integrated by exact moments; the smooth factor (2-w)^{-q} is matched
// linearly at the segment endpoints, so segments touching the endpoint
// cost O(1) evaluations.  Adaptive refinement splits at the geometric
// midpoint, which respects the singularity scale.
struct Integrand {
    double scale; // (p-1)^{1/p}
    double q;     // m/p

    // \int_{w1}^{w2} w^e dw = w1^{e+1} expm1((e+1) log1p((w2-w1)/w1)) / (e+1);
    // the expm1/log1p form keeps full relative accuracy on short segments,
    // where the naive difference of powers cancels catastrophically.
    static double moment(double e, double w1, double w2) {
        double lr = std::log1p((w2 - w1) / w1);
        if (std::abs(e + 1.0) < 1e-12) return lr;
        return std::pow(w1, e + 1.0) * std::expm1((e + 1.0) * lr) / (e + 1.0);
    }

    double segment(double w1, double w2) const {
        double v1 = std::pow(2.0 - w1, -q), v2 = std::pow(2.0 - w2, -q);
        double beta = (v2 - v1) / (w2 - w1);
        double alpha = v1 - beta * w1;
        return alpha * moment(-q, w1, w2) + beta * moment(1.0 - q, w1, w2);
    }

    double refine(double w1, double w2, double tol, int depth) const {
        double coarse = segment(w1, w2);
        double mid = std::sqrt(w1 * w2);
        if (!(mid > w1 && mid < w2) || (w2 - w1) <= 1e-12 * w2) return coarse;
        double fine = segment(w1, mid) + segment(mid, w2);
        if (depth <= 0 || std::abs(fine - coarse) <= tol * (std::abs(fine) + 1e-300)) return fine;
        return refine(w1, mid, tol, depth - 1) + refine(mid, w2, tol, depth - 1);
    }
};

// \int_a^b scale (1-s^2)^{-q} ds over 0 <= a < b < 1
double integrate(const Integrand& f, double a, double b, double tol = 1e-12) {
    if (b <= a) return 0.0;
    return f.scale * f.refine(1.0 - b, 1.0 - a, tol, 40);
}

void check_exponents(double p, double m) {
    if (!(p > 1.0)) throw std::invalid_argument("profile: p > 1 required");
    if (!(m > 0.0)) throw std::invalid_argument("profile: m > 0 required");
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, rss = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    double den = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.slope * x[i] + f.intercept);
        f.rss += r * r;
    }
    return f;
}

} // namespace

double Profile1D::value(double x) const {
    if (x < 0.0) return -value(-x);
    if (xs.empty()) return 0.0;
    if (x >= xs.back()) return us.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (hi == 0) return us.front();
    std::size_t lo = hi - 1;
    double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return us[lo] + t * (us[hi] - us[lo]);
}

double profile_position(double p, double m, double u) {
    check_exponents(p, m);
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("profile_position: u in [0,1) required");
    Integrand f{std::pow(p - 1.0, 1.0 / p), m / p};
    return integrate(f, 0.0, u);
}

Profile1D quadrature_profile(double p, double m, double u_max, double du, double x_budget) {
    check_exponents(p, m);
    if (!(u_max > 0.0 && u_max < 1.0)) throw std::invalid_argument("quadrature_profile: 0 < u_max < 1 required");
    if (!(du > 0.0)) throw std::invalid_argument("quadrature_profile: du > 0 required");

    Integrand f{std::pow(p - 1.0, 1.0 / p), m / p};
    Profile1D prof;
    prof.p = p;
    prof.m = m;
    prof.xs.push_back(0.0);
    prof.us.push_back(0.0);

    double x = 0.0, u = 0.0;
    while (u < u_max - 1e-15) {
        double next = std::min(u + du, u_max);
        x += integrate(f, u, next);
        u = next;
        if (x > x_budget) {
            prof.hit_x_budget = true;
            break;
        }
        prof.xs.push_back(x);
        prof.us.push_back(u);
    }
    return prof;
}

std::vector<double> first_integral_residual(const Profile1D& prof, double u_interior_cap) {
    std::vector<double> out;
    const double p = prof.p, m = prof.m;
    for (std::size_t k = 1; k + 1 < prof.us.size(); ++k) {
        if (prof.us[k] > u_interior_cap) break;
        double uprime = (prof.us[k + 1] - prof.us[k - 1]) / (prof.xs[k + 1] - prof.xs[k - 1]);
        double lhs = (p - 1.0) * std::pow(std::abs(uprime), p);
        double w = std::pow(1.0 - prof.us[k] * prof.us[k], m);
        out.push_back(std::abs(lhs - w));
    }
    return out;
}

std::string to_string(DecayClass c) {
    switch (c) {
        case DecayClass::Polynomial: return "polynomial";
        case DecayClass::Exponential: return "exponential";
        case DecayClass::FiniteInterval: return "finite-interval";
        default: return "undetermined";
    }
}

DecayReport decay_classify(const Profile1D& prof) {
    DecayReport rep;
    if (prof.us.empty() || prof.max_u() < 0.999) {
        rep.note = "tail too short: profile does not reach u = 0.999";
        return rep;
    }

    // x at u = 1 - w by linear interpolation in u (samples are monotone).
    auto x_at_u = [&](double u) {
        auto it = std::lower_bound(prof.us.begin(), prof.us.end(), u);
        std::size_t hi = static_cast<std::size_t>(it - prof.us.begin());
        if (hi == 0) return prof.xs.front();
        if (hi >= prof.us.size()) return prof.xs.back();
        std::size_t lo = hi - 1;
        double t = (u - prof.us[lo]) / (prof.us[hi] - prof.us[lo]);
        return prof.xs[lo] + t * (prof.xs[hi] - prof.xs[lo]);
    };

    // Contact reached numerically.
    if (prof.max_u() >= 1.0 - 1e-9) {
        rep.cls = DecayClass::FiniteInterval;
        rep.exponent = prof.max_x();
        rep.note = "profile reached the well within 1e-9";
        return rep;
    }

    // Dyadic-shell summability test: increments of x over 1-u in
    // [w/2, w] shrink geometrically exactly when the quadrature integrand
    // is integrable at s = 1, i.e. for finite contact.  Levels are only
    // used down to the scale the sampling resolves: interpolating inside a
    // single tail segment would fake shrinking increments.
    double w_top = 1.0 - prof.max_u();
    double sample_du = prof.us.size() >= 2 ? prof.us[1] - prof.us[0] : 1.0;
    std::vector<double> incr;
    for (double w = 0.01; w * 0.25 >= w_top && w * 0.5 >= 6.0 * sample_du; w *= 0.5)
        incr.push_back(x_at_u(1.0 - 0.5 * w) - x_at_u(1.0 - w));
    if (incr.size() >= 3) {
        double mean_ratio = 0.0;
        for (std::size_t i = 0; i + 1 < incr.size(); ++i) mean_ratio += incr[i + 1] / incr[i];
        mean_ratio /= static_cast<double>(incr.size() - 1);
        if (mean_ratio <= 0.95) {
            rep.cls = DecayClass::FiniteInterval;
            // geometric extrapolation of the remaining length
            rep.exponent = prof.max_x() + incr.back() * mean_ratio / (1.0 - mean_ratio);
            rep.note = "x-increments summable over dyadic shells";
            return rep;
        }
    }

    // Tail window: last third of the samples with u >= 0.99 (capped away
    // from the final sample so 1-u stays well-resolved).  A fit on fewer
    // than 10 window points classifies confidently from noise; refuse.
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < prof.us.size(); ++k)
        if (prof.us[k] >= 0.99 && prof.us[k] <= 1.0 - 1e-10 && prof.xs[k] > 0.0) idx.push_back(k);
    if (idx.size() < 30) {
        rep.note = "tail under-sampled: fewer than 30 samples above u = 0.99 (reduce du)";
        return rep;
    }
    std::vector<std::size_t> window(idx.begin() + 2 * idx.size() / 3, idx.end());

    std::vector<double> lx, xx, ly;
    for (std::size_t k : window) {
        lx.push_back(std::log(prof.xs[k]));
        xx.push_back(prof.xs[k]);
        ly.push_back(std::log(1.0 - prof.us[k]));
    }
    LineFit poly = least_squares(lx, ly);
    LineFit expf = least_squares(xx, ly);
    rep.rss_poly = poly.rss;
    rep.rss_exp = expf.rss;
    if (expf.rss >= 2.0 * poly.rss) {
        rep.cls = DecayClass::Polynomial;
        rep.exponent = -poly.slope;
    } else if (poly.rss >= 2.0 * expf.rss) {
        rep.cls = DecayClass::Exponential;
        rep.exponent = -expf.slope;
    } else {
        rep.note = "residual ratio below 2: no model preferred";
    }
    return rep;
}

} // namespace gldens
