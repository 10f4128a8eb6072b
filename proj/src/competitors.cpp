#include "gldens/competitors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gldens/rng.hpp"

namespace gldens {

IterationSchedule::IterationSchedule(double t_limit_, int L_) : t_limit(t_limit_), L(L_) {
    if (!(t_limit > -1.0 && t_limit < 0.0))
        throw std::invalid_argument("IterationSchedule: t_limit must lie in (-1,0)");
    if (L < 2) throw std::invalid_argument("IterationSchedule: L >= 2 required");
}

double IterationSchedule::level(int k) const {
    if (k < 0) throw std::invalid_argument("IterationSchedule::level: k >= 0 required");
    double half = std::ldexp(1.0, -k - 1); // 2^{-k-1}
    return (1.0 - half) * t_limit - half;
}

double IterationSchedule::radius(int k) const {
    if (k < 0) throw std::invalid_argument("IterationSchedule::radius: k >= 0 required");
    return 0.5 * (1.0 + std::ldexp(1.0, -k)) * R();
}

double Competitor::value_at_radius(double r) const {
    switch (kind) {
        case CompetitorKind::Shell:
            return std::clamp(r - R - 1.0, -1.0, 1.0);
        case CompetitorKind::RampOuter:
        case CompetitorKind::RampInner:
            return std::clamp(1.0 + slope * (r - r_outer), plateau, 1.0);
        case CompetitorKind::Paraboloid:
            return std::min((1.0 - a) + 4.0 * h * h * r * r / (a * R * R), 1.0);
    }
    return 0.0;
}

double Competitor::value(const Point& x, int dim) const {
    Point d{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) d[i] = x[i] - center[i];
    return value_at_radius(norm(d, dim));
}

double Competitor::gradient_norm_at_radius(double r) const {
    switch (kind) {
        case CompetitorKind::Shell:
            return (r > R + 1e-15 && r < R + 2.0 - 1e-15) ? 1.0 : 0.0;
        case CompetitorKind::RampOuter:
        case CompetitorKind::RampInner: {
            double lin = 1.0 + slope * (r - r_outer);
            return (lin > plateau && lin < 1.0) ? std::abs(slope) : 0.0;
        }
        case CompetitorKind::Paraboloid: {
            double lin = (1.0 - a) + 4.0 * h * h * r * r / (a * R * R);
            return lin < 1.0 ? 8.0 * h * h * r / (a * R * R) : 0.0;
        }
    }
    return 0.0;
}

ScalarField Competitor::rasterize(const Grid& g) const {
    ScalarField f(g);
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) f.values[c] = value(g.center(c), g.dim);
    return f;
}

Competitor radial_shell(double R) {
    if (R < 0.0) throw std::invalid_argument("radial_shell: R >= 0 required");
    Competitor c;
    c.kind = CompetitorKind::Shell;
    c.R = R;
    return c;
}

Competitor plateau_ramp(const IterationSchedule& sched, int k, std::optional<long long> shell_radius) {
    if (k < 0) throw std::invalid_argument("plateau_ramp: k >= 0 required");
    Competitor c;
    c.plateau = sched.level(k);
    if (k >= sched.L - 1) {
        c.kind = CompetitorKind::RampOuter;
        c.r_outer = sched.radius(k);
        c.slope = std::ldexp(1.0, k + 2) / sched.R() * (1.0 - c.plateau);
    } else {
        c.kind = CompetitorKind::RampInner;
        if (!shell_radius)
            throw std::invalid_argument("plateau_ramp: inner branch (k <= L-2) needs a shell radius");
        double lo = sched.radius(k + 1), hi = sched.radius(k);
        double N = static_cast<double>(*shell_radius);
        if (!(N > lo && N <= hi) || N != std::floor(N))
            throw std::invalid_argument("plateau_ramp: shell radius outside the admissible integer window");
        c.r_outer = N;
        c.slope = 1.0 - c.plateau;
    }
    return c;
}

ShellChoice choose_shell(const RegionMask& A, const IterationSchedule& sched, int k, const Point& center) {
    if (k < 0 || k > sched.L - 2)
        throw std::invalid_argument("choose_shell: 0 <= k <= L-2 required");
    const double r_in = sched.radius(k + 1), r_out = sched.radius(k);
    const long long N_lo = static_cast<long long>(std::floor(r_in)) + 1;
    const long long N_hi = static_cast<long long>(std::floor(r_out));
    if (N_hi < N_lo) throw std::logic_error("choose_shell: empty admissible window");

    // One pass over the mask: bucket member cells by the integer shell
    // (N-1, N] containing their radius.
    std::map<long long, std::size_t> counts;
    const Grid& g = A.grid;
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) {
        if (!A.member[c]) continue;
        Point x = g.center(c);
        double d2 = 0.0;
        for (int i = 0; i < g.dim; ++i) {
            double t = x[i] - center[i];
            d2 += t * t;
        }
        double r = std::sqrt(d2);
        if (r <= r_in || r > r_out) continue;
        long long N = static_cast<long long>(std::ceil(r));
        counts[N] += 1;
    }

    ShellChoice out;
    out.N = N_lo;
    std::size_t best = counts.count(N_lo) ? counts[N_lo] : 0;
    for (long long N = N_lo; N <= N_hi; ++N) {
        std::size_t cnt = counts.count(N) ? counts[N] : 0;
        if (cnt < best) {
            best = cnt;
            out.N = N;
        }
    }
    out.shell_measure = static_cast<double>(best) * g.cell_volume();
    out.pigeonhole_bound = std::ldexp(1.0, k + 2) / sched.R() * measure(A);
    if (out.shell_measure > out.pigeonhole_bound * (1.0 + 1e-12))
        throw std::logic_error("choose_shell: pigeonhole bound violated");
    return out;
}

std::optional<double> plateau_level(const EnergySpec& spec, double h, int x_samples, std::uint64_t sample_seed) {
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("plateau_level: 0 < h < 1 required");
    if (!spec.well_hook) return -(1.0 - h); // coefficient cancels in the comparison

    RngStream rs(sample_seed, 300);
    std::vector<Point> xs(static_cast<std::size_t>(x_samples));
    for (auto& x : xs)
        for (int i = 0; i < spec.params.n; ++i)
            x[i] = rs.uniform(0.0, static_cast<double>(spec.coeffs.resolution));

    // Scan candidates from the multiplicative answer toward 0.
    const int grid = 1024;
    for (int j = 0; j < grid; ++j) {
        double t = -(1.0 - h) + static_cast<double>(j) / grid * (1.0 - h - 1.0 / grid);
        if (!(t > -1.0 && t < 0.0)) continue;
        bool ok = true;
        for (const auto& x : xs) {
            if (spec.well(t, x) > spec.well(1.0 - h, x)) {
                ok = false;
                break;
            }
        }
        if (ok) return t;
    }
    return std::nullopt;
}

Competitor paraboloid_cap(double a, double h, double R) {
    if (!(h > 0.0 && h <= 0.5)) throw std::invalid_argument("paraboloid_cap: 0 < h <= 1/2 required");
    if (!(a >= h && a <= 2.0 * h)) throw std::invalid_argument("paraboloid_cap: a must lie in [h, 2h]");
    if (!(R > 0.0)) throw std::invalid_argument("paraboloid_cap: R > 0 required");
    Competitor c;
    c.kind = CompetitorKind::Paraboloid;
    c.a = a;
    c.h = h;
    c.R = R;
    return c;
}

double cap_height(const EnergyParams& params, double R) {
    if (!(R >= 1.0)) throw std::invalid_argument("cap_height: R >= 1 required");
    if (!(params.m > params.p)) throw std::invalid_argument("cap_height: m > p required");
    double v = std::pow(std::pow(2.0, params.m) * params.lambda * std::pow(R, params.p),
                        -1.0 / (params.m - params.p));
    return std::min(v, 0.5);
}

double cap_height_strict(const EnergyParams& params, double R) {
    if (!(R >= 1.0)) throw std::invalid_argument("cap_height_strict: R >= 1 required");
    if (!(params.m > params.p)) throw std::invalid_argument("cap_height_strict: m > p required");
    double v = std::pow(std::pow(4.0, params.m) * params.lambda * std::pow(R, params.p),
                        -1.0 / (params.m - params.p));
    return std::min(v, 0.5);
}

double w_smallness_margin(const EnergySpec& spec, double h, double R, int samples, std::uint64_t sample_seed) {
    RngStream rs(sample_seed, 400);
    const double bound = std::pow(h, spec.params.p) * std::pow(R, -spec.params.p);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        double tau = rs.uniform(1.0 - 2.0 * h, 1.0);
        Point x{};
        for (int i = 0; i < spec.params.n; ++i)
            x[i] = rs.uniform(0.0, static_cast<double>(spec.coeffs.resolution));
        worst = std::max(worst, spec.well(tau, x) / bound);
    }
    return worst;
}

} // namespace gldens
