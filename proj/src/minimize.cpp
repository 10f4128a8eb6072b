#include "gldens/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gldens {

namespace {

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

// Per-grid cache: coefficients sampled once per cell, stencil layout fixed.
struct Workspace {
    const Grid& grid;
    double p, m, vol, h;
    std::vector<double> a, b;

    Workspace(const EnergySpec& spec, const Grid& g) : grid(g) {
        if (spec.well_hook)
            throw std::invalid_argument("minimize: user well hooks are not supported by the solver");
        if (spec.params.n != g.dim)
            throw std::invalid_argument("minimize: spec dimension != grid dimension");
        p = spec.params.p;
        m = spec.params.m;
        vol = g.cell_volume();
        h = g.spacing;
        const std::size_t nc = g.cell_count();
        a.resize(nc);
        b.resize(nc);
        for (std::size_t c = 0; c < nc; ++c) {
            Point x = g.center(c);
            a[c] = spec.coeffs.a_at(x);
            b[c] = spec.coeffs.b_at(x);
        }
    }

    // J with |grad|^2 -> |grad|^2 + eps2 (eps2 = 0 gives the plain energy)
    double energy(const std::vector<double>& u, double eps2) const {
        double sum = 0.0, comp = 0.0;
        const std::size_t nc = grid.cell_count();
        for (std::size_t c = 0; c < nc; ++c) {
            auto idx = grid.unflatten(c);
            double g2 = eps2;
            for (int i = 0; i < grid.dim; ++i) {
                std::size_t s = grid.stride(i);
                double d = (idx[i] < grid.dims[i] - 1) ? (u[c + s] - u[c]) : (u[c] - u[c - s]);
                d /= h;
                g2 += d * d;
            }
            double uc = u[c];
            double w = 1.0 - uc * uc;
            if (w < 0.0) w = 0.0;
            double e = (a[c] * pow_pos(g2, 0.5 * p) + b[c] * pow_pos(w, m)) * vol;
            double t = sum + e;
            if (std::abs(sum) >= std::abs(e))
                comp += (sum - t) + e;
            else
                comp += (e - t) + sum;
            sum = t;
        }
        double J = sum + comp;
        if (std::isnan(J)) throw std::runtime_error("minimize: NaN energy encountered");
        return J;
    }

    void gradient(const std::vector<double>& u, double eps2, std::vector<double>& grad) const {
        const std::size_t nc = grid.cell_count();
        grad.assign(nc, 0.0);
        for (std::size_t c = 0; c < nc; ++c) {
            auto idx = grid.unflatten(c);
            double g2 = eps2;
            double d[3] = {0.0, 0.0, 0.0};
            bool fwd[3] = {false, false, false};
            for (int i = 0; i < grid.dim; ++i) {
                std::size_t s = grid.stride(i);
                fwd[i] = idx[i] < grid.dims[i] - 1;
                d[i] = (fwd[i] ? (u[c + s] - u[c]) : (u[c] - u[c - s])) / h;
                g2 += d[i] * d[i];
            }
            // d/dg_i of a (g^2 + eps^2)^{p/2} = a p (|g|^2+eps^2)^{(p-2)/2} g_i
            double scale = 0.0;
            if (g2 > 0.0) scale = a[c] * p * pow_pos(g2, 0.5 * p - 1.0);
            for (int i = 0; i < grid.dim; ++i) {
                std::size_t s = grid.stride(i);
                double w = scale * d[i] / h * vol;
                if (fwd[i]) {
                    grad[c + s] += w;
                    grad[c] -= w;
                } else {
                    grad[c] += w;
                    grad[c - s] -= w;
                }
            }
            // d/du of b (1-u^2)^m = -2 m u b (1-u^2)^{m-1}
            double uc = u[c];
            double w = 1.0 - uc * uc;
            if (w > 0.0) grad[c] += vol * b[c] * m * pow_pos(w, m - 1.0) * (-2.0 * uc);
        }
    }
};

} // namespace

double regularized_energy(const EnergySpec& spec, const ScalarField& field, double eps_reg) {
    Workspace ws(spec, field.grid);
    return ws.energy(field.values, eps_reg * eps_reg);
}

std::vector<double> energy_gradient(const EnergySpec& spec, const ScalarField& field, double eps_reg) {
    Workspace ws(spec, field.grid);
    std::vector<double> g;
    ws.gradient(field.values, eps_reg * eps_reg, g);
    return g;
}

std::pair<ScalarField, SolveTrace> minimize(const EnergySpec& spec, const ScalarField& init,
                                            const RegionMask& free_region, const SolveOptions& opts) {
    if (!(init.grid == free_region.grid)) throw std::invalid_argument("minimize: init/free grids differ");
    if (!init.in_unit_range(1e-12)) throw std::invalid_argument("minimize: init values outside [-1,1]");
    if (!(opts.tol_energy > 0.0)) throw std::invalid_argument("minimize: tol_energy > 0 required");
    if (opts.max_iters < 1) throw std::invalid_argument("minimize: max_iters >= 1 required");
    if (!(opts.backtrack > 0.0 && opts.backtrack < 1.0))
        throw std::invalid_argument("minimize: backtrack must lie in (0,1)");

    const Grid& g = init.grid;
    Workspace ws(spec, g);
    const double eps2 = opts.epsilon_reg * opts.epsilon_reg;

    ScalarField u = init;
    // clamp tiny excursions from input tolerance
    for (double& v : u.values) v = std::clamp(v, -1.0, 1.0);

    std::size_t pin_cell = 0;
    bool has_pin = false;
    if (opts.pin) {
        pin_cell = g.cell_at(opts.pin->where);
        has_pin = true;
        u.values[pin_cell] = std::clamp(opts.pin->value, -1.0, 1.0);
    }

    std::vector<std::size_t> free_cells;
    free_cells.reserve(free_region.count());
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) {
        if (!free_region.member[c]) continue;
        if (g.on_boundary(c))
            throw std::invalid_argument("minimize: free region must be strictly inside the grid");
        if (has_pin && c == pin_cell) continue;
        free_cells.push_back(c);
    }

    SolveTrace tr;
    double J = ws.energy(u.values, 0.0);
    tr.energy.push_back(J);

    std::vector<double> grad, trial(u.values.size());
    std::vector<double> prev_u, prev_grad;
    double step = opts.step0;

    for (int it = 0; it < opts.max_iters; ++it) {
        ws.gradient(u.values, eps2, grad);

        double gnorm2 = 0.0;
        for (std::size_t c : free_cells) gnorm2 += grad[c] * grad[c];
        if (gnorm2 == 0.0) {
            tr.converged = true;
            break;
        }

        // Barzilai-Borwein spectral step from the last accepted move; the
        // backtracking acceptance below still guards monotonicity.
        if (!prev_u.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t c : free_cells) {
                double s = u.values[c] - prev_u[c];
                ss += s * s;
                sy += s * (grad[c] - prev_grad[c]);
            }
            if (sy > 0.0 && ss > 0.0) step = std::clamp(ss / sy, 1e-12, 1e12);
        }
        prev_u = u.values;
        prev_grad = grad;

        // backtracking on the projected step; Armijo with the projected
        // increment keeps the accepted energy strictly below J
        bool accepted = false;
        double alpha = step;
        double Jnew = J, upd = 0.0;
        for (; alpha > 1e-14 * opts.step0; alpha *= opts.backtrack) {
            trial = u.values;
            double dirdot = 0.0;
            upd = 0.0;
            for (std::size_t c : free_cells) {
                double nv = std::clamp(u.values[c] - alpha * grad[c], -1.0, 1.0);
                trial[c] = nv;
                dirdot += grad[c] * (nv - u.values[c]);
                upd = std::max(upd, std::abs(nv - u.values[c]));
            }
            if (upd == 0.0) break; // projection annihilated the step
            Jnew = ws.energy(trial, 0.0);
            if (Jnew <= J + 1e-4 * dirdot) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // no descent along the projected gradient ray at any step size
            tr.converged = true;
            break;
        }

        u.values.swap(trial);
        J = Jnew;
        tr.energy.push_back(J);
        tr.step.push_back(alpha);
        tr.max_update.push_back(upd);
        tr.iterations = it + 1;
        step = (alpha == step) ? step * 1.6 : alpha * 1.6;

        int w = opts.stall_window;
        if (static_cast<int>(tr.energy.size()) > w) {
            double before = tr.energy[tr.energy.size() - 1 - w];
            if (before - J <= opts.tol_energy * std::max(std::abs(J), 1e-30)) {
                tr.converged = true;
                break;
            }
        }
    }
    if (!tr.converged && tr.iterations >= opts.max_iters) tr.hit_iter_cap = true;
    return {std::move(u), std::move(tr)};
}

MarginReport minimality_check(const EnergySpec& spec, const ScalarField& u, const ScalarField& v,
                              double tol) {
    if (!(u.grid == v.grid)) throw std::invalid_argument("minimality_check: grids differ");
    const Grid& g = u.grid;

    RegionMask closure(g);
    std::size_t changed = 0;
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) {
        if (u.values[c] == v.values[c]) continue;
        if (g.on_boundary(c))
            throw std::invalid_argument("minimality_check: {u != v} touches the grid boundary");
        ++changed;
        closure.member[c] = 1;
        auto idx = g.unflatten(c);
        for (int i = 0; i < g.dim; ++i) {
            std::size_t s = g.stride(i);
            if (idx[i] > 0) closure.member[c - s] = 1;
            // the last cell along an axis reads its lower neighbor
            if (idx[i] == g.dims[i] - 2) closure.member[c + s] = 1;
        }
    }

    MarginReport rep;
    rep.tol = tol;
    rep.changed_cells = changed;
    rep.closure_cells = closure.count();
    if (changed == 0) {
        rep.margin = 0.0;
        rep.pass = true;
        return rep;
    }
    rep.margin = total_energy(spec, u, closure) - total_energy(spec, v, closure);
    rep.pass = rep.margin <= tol;
    return rep;
}

ScalarField planar_interface(const Grid& g, double width, double offset) {
    if (!(width > 0.0)) throw std::invalid_argument("planar_interface: width > 0 required");
    return ScalarField::from_function(
        g, [&](const Point& x) { return std::clamp((x[0] + offset) / width, -1.0, 1.0); });
}

} // namespace gldens
