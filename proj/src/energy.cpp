#include "gldens/energy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gldens/rng.hpp"

namespace gldens {

namespace {

// |v|^e with a fast path for small integer exponents (the double well is
// usually (1-tau^2)^m with integer m; pow dominates solver profiles).
double pow_pos(double base, double e) {
    if (base <= 0.0) return 0.0;
    double ri = std::nearbyint(e);
    if (ri == e && ri >= 0.0 && ri <= 8.0) {
        double r = 1.0;
        int k = static_cast<int>(ri);
        for (int i = 0; i < k; ++i) r *= base;
        return r;
    }
    return std::pow(base, e);
}

void require_tau(double tau) {
    if (!(tau >= -1.0 && tau <= 1.0))
        throw std::invalid_argument("tau must lie in [-1,1]");
}

void require_finite(const Point& x, int dim) {
    for (int i = 0; i < dim; ++i)
        if (!std::isfinite(x[i])) throw std::invalid_argument("non-finite coordinate");
}

} // namespace

EnergyParams::EnergyParams(double lambda_, double p_, double m_, int n_)
    : lambda(lambda_), p(p_), m(m_), n(n_) {
    if (!(lambda >= 1.0)) throw std::invalid_argument("EnergyParams: lambda >= 1 required");
    if (!(p > 1.0)) throw std::invalid_argument("EnergyParams: p > 1 required");
    if (!(m > 0.0)) throw std::invalid_argument("EnergyParams: m > 0 required");
    if (n < 1 || n > 3) throw std::invalid_argument("EnergyParams: n must be 1, 2 or 3");
}

std::vector<std::string> EnergyParams::admissibility_errors() const {
    std::vector<std::string> errs;
    if (n < 2) errs.push_back("n >= 2 violated");
    if (n >= 2) {
        double cap = static_cast<double>(n) / (n - 1);
        if (!(p < cap)) {
            std::ostringstream os;
            os << "p < n/(n-1) violated: p = " << p << ", n/(n-1) = " << cap;
            errs.push_back(os.str());
        }
    }
    if (!(m > p)) {
        std::ostringstream os;
        os << "m > p violated: m = " << m << ", p = " << p;
        errs.push_back(os.str());
    }
    return errs;
}

CoefficientField CoefficientField::make(int dim, int resolution, double lambda, std::uint64_t seed,
                                        CoeffMode a_mode, CoeffMode b_mode) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("CoefficientField: dim must be 1, 2 or 3");
    if (resolution < 1) throw std::invalid_argument("CoefficientField: resolution >= 1 required");
    CoefficientField f;
    f.dim = dim;
    f.resolution = resolution;
    f.seed = seed;
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(resolution);
    f.a_samples.assign(n, 1.0);
    f.b_samples.assign(n, 1.0);
    CounterRng rng{seed};
    const double lo = 1.0 / lambda, hi = lambda;
    if (a_mode == CoeffMode::Random)
        for (std::size_t i = 0; i < n; ++i) f.a_samples[i] = rng.uniform(1, i, lo, hi);
    if (b_mode == CoeffMode::Random)
        for (std::size_t i = 0; i < n; ++i) f.b_samples[i] = rng.uniform(2, i, lo, hi);
    return f;
}

std::size_t CoefficientField::cell_of(const Point& x) const {
    std::size_t c = 0;
    for (int i = 0; i < dim; ++i) {
        long long j = static_cast<long long>(std::floor(x[i]));
        long long r = resolution;
        j = ((j % r) + r) % r;
        c = c * static_cast<std::size_t>(r) + static_cast<std::size_t>(j);
    }
    return c;
}

EnergySpec EnergySpec::canonical(const EnergyParams& params) {
    EnergySpec s;
    s.params = params;
    s.coeffs = CoefficientField::make(params.n, 1, params.lambda, 0, CoeffMode::Constant, CoeffMode::Constant);
    return s;
}

EnergySpec EnergySpec::seeded(const EnergyParams& params, int resolution, std::uint64_t seed,
                              CoeffMode a_mode, CoeffMode b_mode) {
    EnergySpec s;
    s.params = params;
    s.coeffs = CoefficientField::make(params.n, resolution, params.lambda, seed, a_mode, b_mode);
    return s;
}

double EnergySpec::dirichlet(const Point& xi, double tau, const Point& x) const {
    require_tau(tau);
    require_finite(x, params.n);
    double g = norm(xi, params.n);
    return coeffs.a_at(x) * pow_pos(g, params.p);
}

double EnergySpec::well(double tau, const Point& x) const {
    require_tau(tau);
    require_finite(x, params.n);
    if (well_hook) return well_hook(tau, x);
    double s = 1.0 - tau * tau;
    if (s < 0.0) s = 0.0;
    return coeffs.b_at(x) * pow_pos(s, params.m);
}

int ValidationReport::count(char assumption) const {
    int n = 0;
    for (const auto& v : violations)
        if (v.assumption == assumption) ++n;
    return n;
}

ValidationReport validate_spec(const EnergySpec& spec, int samples, std::uint64_t sample_seed) {
    if (samples < 1) throw std::invalid_argument("validate_spec: samples >= 1 required");
    ValidationReport rep;
    rep.samples = samples;
    const auto& P = spec.params;
    RngStream rs(sample_seed, 100);

    auto sample_point = [&](Point& x) {
        for (int i = 0; i < P.n; ++i) x[i] = rs.uniform(0.0, static_cast<double>(spec.coeffs.resolution));
    };

    for (int s = 0; s < samples; ++s) {
        Point x{};
        sample_point(x);

        // (A): lambda^{-1}|xi|^p <= F <= lambda|xi|^p
        Point xi{};
        double mag = std::exp(rs.uniform(-6.0, 6.0));
        double n2 = 0.0;
        for (int i = 0; i < P.n; ++i) {
            xi[i] = rs.uniform(-1.0, 1.0);
            n2 += xi[i] * xi[i];
        }
        if (n2 > 0.0) {
            double inv = mag / std::sqrt(n2);
            for (int i = 0; i < P.n; ++i) xi[i] *= inv;
        }
        double tau = rs.uniform(-1.0, 1.0);
        double f = spec.dirichlet(xi, tau, x);
        double base = pow_pos(norm(xi, P.n), P.p);
        if (f < base / P.lambda || f > base * P.lambda) {
            Violation v{'A', tau, x, ""};
            std::ostringstream os;
            os << "F = " << f << " outside [" << base / P.lambda << ", " << base * P.lambda << "] at |xi| = "
               << norm(xi, P.n);
            v.detail = os.str();
            rep.violations.push_back(std::move(v));
        }

        // (B): lambda^{-1}(1-tau^2)^m <= W <= lambda(1-tau^2)^m
        double w = spec.well(tau, x);
        double wbase = pow_pos(1.0 - tau * tau, P.m);
        if (w < wbase / P.lambda || w > wbase * P.lambda) {
            Violation v{'B', tau, x, ""};
            std::ostringstream os;
            os << "W = " << w << " outside [" << wbase / P.lambda << ", " << wbase * P.lambda << "] at tau = " << tau;
            v.detail = os.str();
            rep.violations.push_back(std::move(v));
        }

        // (C): W nondecreasing on [-1,0], nonincreasing on [0,1]
        double lo = rs.uniform(-1.0, 0.0), hi = rs.uniform(-1.0, 0.0);
        if (lo > hi) std::swap(lo, hi);
        if (spec.well(lo, x) > spec.well(hi, x)) {
            Violation v{'C', lo, x, ""};
            std::ostringstream os;
            os << "W(" << lo << ") > W(" << hi << ") on [-1,0]";
            v.detail = os.str();
            rep.violations.push_back(std::move(v));
        }
        lo = rs.uniform(0.0, 1.0), hi = rs.uniform(0.0, 1.0);
        if (lo > hi) std::swap(lo, hi);
        if (spec.well(lo, x) < spec.well(hi, x)) {
            Violation v{'C', lo, x, ""};
            std::ostringstream os;
            os << "W(" << lo << ") < W(" << hi << ") on [0,1]";
            v.detail = os.str();
            rep.violations.push_back(std::move(v));
        }
    }
    return rep;
}

Point cell_gradient(const ScalarField& field, std::size_t c) {
    const Grid& g = field.grid;
    const double h = g.spacing;
    auto idx = g.unflatten(c);
    Point grad{0.0, 0.0, 0.0};
    for (int i = 0; i < g.dim; ++i) {
        std::size_t s = g.stride(i);
        if (idx[i] < g.dims[i] - 1)
            grad[i] = (field.values[c + s] - field.values[c]) / h;
        else
            grad[i] = (field.values[c] - field.values[c - s]) / h;
    }
    return grad;
}

double total_energy(const EnergySpec& spec, const ScalarField& field, const RegionMask& region) {
    if (!(field.grid == region.grid)) throw std::invalid_argument("total_energy: field/region grids differ");
    if (spec.params.n != field.grid.dim) throw std::invalid_argument("total_energy: spec dimension != grid dimension");
    if (!field.in_unit_range(1e-12)) throw std::invalid_argument("total_energy: field values outside [-1,1]");

    const double vol = field.grid.cell_volume();
    // Neumaier compensated sum
    double sum = 0.0, comp = 0.0;
    auto add = [&](double t) {
        double u = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - u) + t;
        else
            comp += (t - u) + sum;
        sum = u;
    };

    const std::size_t nc = field.grid.cell_count();
    for (std::size_t c = 0; c < nc; ++c) {
        if (!region.member[c]) continue;
        Point x = field.grid.center(c);
        double tau = std::clamp(field.values[c], -1.0, 1.0);
        Point grad = cell_gradient(field, c);
        double e = (spec.dirichlet(grad, tau, x) + spec.well(tau, x)) * vol;
        add(e);
    }
    double J = sum + comp;
    if (std::isnan(J)) throw std::runtime_error("total_energy: NaN energy");
    return J;
}

double total_energy(const EnergySpec& spec, const ScalarField& field) {
    return total_energy(spec, field, full_mask(field.grid));
}

} // namespace gldens
