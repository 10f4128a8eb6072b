#include "gldens/degiorgi.hpp"

#include <cmath>
#include <stdexcept>

namespace gldens {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Vanishes: return "vanishes";
        case Verdict::Persists: return "persists";
        default: return "undetermined";
    }
}

IterationTrace run_recursion(double beta0, double C, double p, int n, int k_max, RecursionOptions opts) {
    if (beta0 < 0.0) throw std::invalid_argument("run_recursion: beta0 >= 0 required");
    if (!(C > 0.0)) throw std::invalid_argument("run_recursion: C > 0 required");
    if (k_max < 1) throw std::invalid_argument("run_recursion: k_max >= 1 required");

    IterationTrace tr;
    tr.C = C;
    tr.p = p;
    tr.n = n;
    tr.beta.reserve(static_cast<std::size_t>(k_max) + 1);
    tr.beta.push_back(beta0);

    const double alpha = 1.0 + p / static_cast<double>(n);
    bool persists = beta0 > opts.persist_cutoff;
    for (int k = 0; k < k_max && !persists; ++k) {
        double b = tr.beta.back();
        double next;
        if (b == 0.0) {
            next = 0.0; // exact fixed point
        } else {
            // log2 form keeps 2^{k(1+p)} from overflowing against a
            // vanishing beta_k
            double l2 = std::log2(C) + static_cast<double>(k) * (1.0 + p) + alpha * std::log2(b);
            if (l2 <= -1074.0)
                next = 0.0;
            else if (l2 >= 1024.0)
                next = std::numeric_limits<double>::infinity();
            else
                next = std::exp2(l2);
        }
        if (!std::isfinite(next)) persists = true;
        tr.beta.push_back(next);
        if (next > opts.persist_cutoff) persists = true;
    }
    if (persists) {
        tr.verdict = Verdict::Persists;
        return tr;
    }
    // vanishes: below the cutoff at the end, with the descent into the
    // cutoff region part of a nonincreasing tail
    if (tr.beta.back() < opts.vanish_cutoff) {
        std::size_t i = tr.beta.size() - 1;
        while (i > 0 && tr.beta[i - 1] >= tr.beta[i]) --i;
        std::size_t j = 0;
        while (tr.beta[j] >= opts.vanish_cutoff) ++j;
        if (i <= j) {
            tr.verdict = Verdict::Vanishes;
            return tr;
        }
    }
    tr.verdict = Verdict::Undetermined;
    return tr;
}

double vanishing_threshold(double C, double p, int n, int k_max, double rel_width, RecursionOptions opts) {
    auto verdict = [&](double b0) { return run_recursion(b0, C, p, n, k_max, opts).verdict; };

    double lo = 1e-12;
    while (verdict(lo) != Verdict::Vanishes) {
        lo *= 1e-2;
        if (lo < 1e-280) throw std::runtime_error("vanishing_threshold: no vanishing bracket found");
    }
    double hi = 1.0;
    while (verdict(hi) != Verdict::Persists) {
        hi *= 1e2;
        if (hi > 1e12) throw std::runtime_error("vanishing_threshold: no persisting bracket found");
    }
    while ((hi - lo) / (0.5 * (hi + lo)) > rel_width) {
        double mid = std::sqrt(lo * hi);
        switch (verdict(mid)) {
            case Verdict::Vanishes: lo = mid; break;
            case Verdict::Persists: hi = mid; break;
            default: throw std::runtime_error("vanishing_threshold: undetermined verdict inside bracket");
        }
    }
    return 0.5 * (lo + hi);
}

double threshold_ansatz(double p, int n) {
    double r = static_cast<double>(n) / p;
    return std::exp2(-(1.0 + p) * r * r);
}

RecursionFit fit_recursion(const ScalarField& field, const EnergySpec& spec,
                           const IterationSchedule& sched, const Point& center) {
    RecursionFit fit;
    const int n = spec.params.n;
    const double p = spec.params.p;
    if (field.grid.dim != n) throw std::invalid_argument("fit_recursion: grid dimension != spec dimension");
    const double Rn_p = std::pow(sched.R(), -static_cast<double>(n) / p);

    for (int k = 0; k < sched.L; ++k) {
        RegionMask ball = ball_mask(field.grid, center, sched.radius(k));
        fit.clipped = fit.clipped || ball.clipped;
        RegionMask Ak = mask_and(ball, superlevel_mask(field, sched.level(k)));
        double mk = measure(Ak);
        fit.measures.push_back(mk);
        fit.beta.push_back(Rn_p * mk);
        if (mk == 0.0 && fit.truncated_at < 0) fit.truncated_at = k;
    }

    const double alpha = 1.0 + p / static_cast<double>(n);
    for (std::size_t k = 0; k + 1 < fit.beta.size(); ++k) {
        double denom = std::exp2(static_cast<double>(k) * (1.0 + p)) * std::pow(fit.beta[k], alpha);
        double ratio;
        if (fit.beta[k] > 0.0)
            ratio = fit.beta[k + 1] / denom;
        else
            ratio = fit.beta[k + 1] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        fit.ratios.push_back(ratio);
        fit.C_hat = std::max(fit.C_hat, ratio);
    }
    return fit;
}

} // namespace gldens
