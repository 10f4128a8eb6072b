#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gldens/grid.hpp"

namespace gldens {

// Universal constants of the energy.  Construction only enforces basic
// sanity (lambda >= 1, p > 1, m > 0, n in 1..3); the admissibility window
// used by the density theory (n >= 2, 1 < p < n/(n-1), m > p) is reported
// by admissibility_errors() and enforced at config-parse time.  The 1D
// profile tests legitimately run outside that window (e.g. p = m = 2).
struct EnergyParams {
    double lambda = 1.0;
    double p = 1.4;
    double m = 3.0;
    int n = 2;

    EnergyParams() = default;
    EnergyParams(double lambda_, double p_, double m_, int n_);

    std::vector<std::string> admissibility_errors() const;
    bool admissible() const { return admissibility_errors().empty(); }
};

enum class CoeffMode { Constant, Random };

// Rough coefficients a(x), b(x) in [1/lambda, lambda]: piecewise constant on
// unit cells, tiled periodically with period `resolution` along each axis.
// Piecewise-constant (nearest-cell) evaluation keeps the two-sided bounds
// exact at every point; any smooth interpolation could break them between
// samples.
struct CoefficientField {
    int dim = 2;
    int resolution = 1;
    std::uint64_t seed = 0;
    std::vector<double> a_samples; // size resolution^dim
    std::vector<double> b_samples;

    static CoefficientField make(int dim, int resolution, double lambda, std::uint64_t seed,
                                 CoeffMode a_mode, CoeffMode b_mode);

    std::size_t cell_of(const Point& x) const;
    double a_at(const Point& x) const { return a_samples[cell_of(x)]; }
    double b_at(const Point& x) const { return b_samples[cell_of(x)]; }
};

// F(xi,tau,x) = a(x)|xi|^p, W(tau,x) = b(x)(1-tau^2)^m.  A user-supplied
// well replaces W entirely (for non-multiplicative potentials) and is
// expected to pass validate_spec before use.
struct EnergySpec {
    EnergyParams params;
    CoefficientField coeffs;
    std::function<double(double, const Point&)> well_hook; // optional

    static EnergySpec canonical(const EnergyParams& params);
    static EnergySpec seeded(const EnergyParams& params, int resolution, std::uint64_t seed,
                             CoeffMode a_mode = CoeffMode::Random, CoeffMode b_mode = CoeffMode::Random);

    // a(x)|xi|^p; throws on |tau| > 1 or non-finite x.
    double dirichlet(const Point& xi, double tau, const Point& x) const;
    // b(x)(1-tau^2)^m, or the hook when set; throws on |tau| > 1.
    double well(double tau, const Point& x) const;
};

struct Violation {
    char assumption; // 'A', 'B' or 'C'
    double tau = 0.0;
    Point x{};
    std::string detail;
};

struct ValidationReport {
    int samples = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    int count(char assumption) const;
};

// Samples the two-sided bounds on F and W and the one-sided monotonicity of
// W on [-1,0] and [0,1].  Violations are report entries, never exceptions.
ValidationReport validate_spec(const EnergySpec& spec, int samples, std::uint64_t sample_seed = 1);

// Sum over region cells of [F(forward-difference gradient, u, x) + W(u, x)]
// times the cell volume.  One-sided differences at the box boundary.
// Neumaier-compensated summation makes the result independent of region
// splitting to ~1 ulp.  Throws when field values leave [-1,1] beyond 1e-12.
double total_energy(const EnergySpec& spec, const ScalarField& field, const RegionMask& region);
double total_energy(const EnergySpec& spec, const ScalarField& field);

// Forward-difference gradient at cell c (one-sided at the boundary).
Point cell_gradient(const ScalarField& field, std::size_t c);

} // namespace gldens
