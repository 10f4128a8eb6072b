#pragma once

#include <limits>
#include <vector>

#include "gldens/competitors.hpp"
#include "gldens/energy.hpp"
#include "gldens/grid.hpp"

namespace gldens {

// Cutoffs deciding the verdict of the measure recursion; arbitrary but
// documented and configurable.
struct RecursionOptions {
    double vanish_cutoff = 1e-300;
    double persist_cutoff = 1e6;
};

enum class Verdict { Vanishes, Persists, Undetermined };

std::string to_string(Verdict v);

struct IterationTrace {
    std::vector<double> beta;
    double C = 1.0;
    double p = 1.5;
    int n = 2;
    Verdict verdict = Verdict::Undetermined;
};

// Runs beta_{k+1} = C 2^{k(1+p)} beta_k^{1+p/n} (the extremal equality case
// of the measure recursion).  Overflow saturates at +infinity and counts as
// persisting.  Vanishes when the sequence drops below the cutoff and stays
// nonincreasing from some index on.
IterationTrace run_recursion(double beta0, double C, double p, int n, int k_max,
                             RecursionOptions opts = {});

// Geometric bisection between the two verdicts; the returned midpoint
// bracket has relative width rel_width, with vanishing below and
// persistence above.
double vanishing_threshold(double C, double p, int n, int k_max = 400, double rel_width = 1e-6,
                           RecursionOptions opts = {});

// Closed-form fixed-point ansatz 2^{-(1+p)(n/p)^2} for C = 1; a sanity band
// for the bisection, not an oracle.
double threshold_ansatz(double p, int n);

struct RecursionFit {
    std::vector<double> measures; // |A_k|, k = 0..L-1
    std::vector<double> beta;     // R^{-n/p} |A_k|
    std::vector<double> ratios;   // beta_{k+1} / (2^{k(1+p)} beta_k^{1+p/n})
    double C_hat = 0.0;           // max ratio; +inf when beta_k = 0 < beta_{k+1}
    int truncated_at = -1;        // first k with |A_k| = 0, or -1
    bool clipped = false;
};

// Measures A_k = B_{r_k}(center) ∩ {u >= t_k} on the field's grid and fits
// the smallest constant making the recursion inequality hold for every
// consecutive pair.
RecursionFit fit_recursion(const ScalarField& field, const EnergySpec& spec,
                           const IterationSchedule& sched, const Point& center = {});

} // namespace gldens
