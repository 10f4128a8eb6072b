#include "gldens/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace gldens {

double norm(const Point& v, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

double unit_ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 3.14159265358979323846;
        case 3: return 4.0 / 3.0 * 3.14159265358979323846;
        default: throw std::invalid_argument("unit_ball_volume: dimension must be 1, 2 or 3");
    }
}

Grid::Grid(int n, const std::array<double, 3>& half_widths, double h) : dim(n), spacing(h) {
    if (n < 1 || n > 3) throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
    if (!(h > 0.0)) throw std::invalid_argument("Grid: spacing must be positive");
    for (int i = 0; i < dim; ++i) {
        if (!(half_widths[i] > 0.0)) throw std::invalid_argument("Grid: extent must be positive");
        int d = static_cast<int>(std::llround(2.0 * half_widths[i] / h));
        if (d < 2) throw std::invalid_argument("Grid: fewer than 2 cells along an axis");
        dims[i] = d;
        extent[i] = 0.5 * d * h; // snap so dims*h == 2*extent exactly
    }
    for (int i = dim; i < 3; ++i) {
        dims[i] = 1;
        extent[i] = 0.0;
    }
}

Grid Grid::cube(int n, double half_width, double h) {
    return Grid(n, {half_width, half_width, half_width}, h);
}

std::size_t Grid::cell_count() const {
    std::size_t c = 1;
    for (int i = 0; i < dim; ++i) c *= static_cast<std::size_t>(dims[i]);
    return c;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= spacing;
    return v;
}

std::size_t Grid::stride(int axis) const {
    std::size_t s = 1;
    for (int i = axis + 1; i < dim; ++i) s *= static_cast<std::size_t>(dims[i]);
    return s;
}

std::array<int, 3> Grid::unflatten(std::size_t c) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int i = dim - 1; i >= 0; --i) {
        idx[i] = static_cast<int>(c % static_cast<std::size_t>(dims[i]));
        c /= static_cast<std::size_t>(dims[i]);
    }
    return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
    std::size_t c = 0;
    for (int i = 0; i < dim; ++i) c = c * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(idx[i]);
    return c;
}

Point Grid::center(std::size_t c) const {
    auto idx = unflatten(c);
    Point x{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) x[i] = -extent[i] + (idx[i] + 0.5) * spacing;
    return x;
}

bool Grid::on_boundary(std::size_t c) const {
    auto idx = unflatten(c);
    for (int i = 0; i < dim; ++i)
        if (idx[i] == 0 || idx[i] == dims[i] - 1) return true;
    return false;
}

bool Grid::contains(const Point& x) const {
    for (int i = 0; i < dim; ++i)
        if (x[i] < -extent[i] || x[i] > extent[i]) return false;
    return true;
}

std::size_t Grid::cell_at(const Point& x) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int i = 0; i < dim; ++i) {
        int j = static_cast<int>(std::floor((x[i] + extent[i]) / spacing));
        if (j == dims[i] && x[i] <= extent[i]) j = dims[i] - 1; // right box face
        if (j < 0 || j >= dims[i]) throw std::out_of_range("Grid::cell_at: point outside the box");
        idx[i] = j;
    }
    return flatten(idx);
}

bool Grid::operator==(const Grid& o) const {
    if (dim != o.dim || spacing != o.spacing) return false;
    for (int i = 0; i < dim; ++i)
        if (dims[i] != o.dims[i] || extent[i] != o.extent[i]) return false;
    return true;
}

ScalarField::ScalarField(const Grid& g, double fill) : grid(g), values(g.cell_count(), fill) {}

ScalarField ScalarField::from_function(const Grid& g, const std::function<double(const Point&)>& f) {
    ScalarField out(g);
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) out.values[c] = f(g.center(c));
    return out;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

bool ScalarField::in_unit_range(double tol) const {
    for (double v : values)
        if (v < -1.0 - tol || v > 1.0 + tol) return false;
    return true;
}

RegionMask::RegionMask(const Grid& g, bool fill) : grid(g), member(g.cell_count(), fill ? 1 : 0) {}

std::size_t RegionMask::count() const {
    std::size_t n = 0;
    for (auto b : member) n += b;
    return n;
}

RegionMask ball_mask(const Grid& g, const Point& center, double R) {
    if (R < 0.0) throw std::invalid_argument("ball_mask: negative radius");
    RegionMask m(g);
    for (int i = 0; i < g.dim; ++i) {
        if (center[i] - R < -g.extent[i] || center[i] + R > g.extent[i]) m.clipped = true;
    }
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) {
        Point x = g.center(c);
        double d2 = 0.0;
        for (int i = 0; i < g.dim; ++i) {
            double t = x[i] - center[i];
            d2 += t * t;
        }
        if (d2 <= R * R) m.member[c] = 1;
    }
    return m;
}

RegionMask superlevel_mask(const ScalarField& f, double t) {
    RegionMask m(f.grid);
    for (std::size_t c = 0; c < f.values.size(); ++c) m.member[c] = f.values[c] >= t ? 1 : 0;
    return m;
}

RegionMask sublevel_mask(const ScalarField& f, double t) {
    RegionMask m(f.grid);
    for (std::size_t c = 0; c < f.values.size(); ++c) m.member[c] = f.values[c] <= t ? 1 : 0;
    return m;
}

double measure(const RegionMask& m) {
    return static_cast<double>(m.count()) * m.grid.cell_volume();
}

RegionMask full_mask(const Grid& g) { return RegionMask(g, true); }

RegionMask interior_mask(const Grid& g, int margin) {
    RegionMask m(g);
    const std::size_t nc = g.cell_count();
    for (std::size_t c = 0; c < nc; ++c) {
        auto idx = g.unflatten(c);
        bool in = true;
        for (int i = 0; i < g.dim; ++i)
            if (idx[i] < margin || idx[i] >= g.dims[i] - margin) in = false;
        m.member[c] = in ? 1 : 0;
    }
    return m;
}

namespace {
void check_same_grid(const RegionMask& a, const RegionMask& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("mask operation: grids differ");
}
} // namespace

RegionMask mask_and(const RegionMask& a, const RegionMask& b) {
    check_same_grid(a, b);
    RegionMask m(a.grid);
    m.clipped = a.clipped || b.clipped;
    for (std::size_t c = 0; c < m.member.size(); ++c) m.member[c] = a.member[c] & b.member[c];
    return m;
}

RegionMask mask_or(const RegionMask& a, const RegionMask& b) {
    check_same_grid(a, b);
    RegionMask m(a.grid);
    m.clipped = a.clipped || b.clipped;
    for (std::size_t c = 0; c < m.member.size(); ++c) m.member[c] = a.member[c] | b.member[c];
    return m;
}

RegionMask mask_sub(const RegionMask& a, const RegionMask& b) {
    check_same_grid(a, b);
    RegionMask m(a.grid);
    m.clipped = a.clipped || b.clipped;
    for (std::size_t c = 0; c < m.member.size(); ++c) m.member[c] = a.member[c] & static_cast<std::uint8_t>(1 - b.member[c]);
    return m;
}

bool mask_subset(const RegionMask& a, const RegionMask& b) {
    check_same_grid(a, b);
    for (std::size_t c = 0; c < a.member.size(); ++c)
        if (a.member[c] && !b.member[c]) return false;
    return true;
}

bool masks_disjoint(const RegionMask& a, const RegionMask& b) {
    check_same_grid(a, b);
    for (std::size_t c = 0; c < a.member.size(); ++c)
        if (a.member[c] && b.member[c]) return false;
    return true;
}

} // namespace gldens
