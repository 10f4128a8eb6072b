#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace gldens {

// Points and gradient vectors live in at most 3 dimensions; unused
// components stay zero.
using Point = std::array<double, 3>;

double norm(const Point& v, int dim);

// Volume of the unit ball in n dimensions (n = 1, 2, 3).
double unit_ball_volume(int n);

// Axis-aligned box [-extent_i, extent_i]^n sampled by cubic cells of side
// `spacing`.  dims[i] = round(2*extent[i]/spacing); extents are snapped so
// that dims[i]*spacing == 2*extent[i] holds exactly.  Cell centers sit at
// -extent[i] + (j + 1/2)*spacing.  Storage is row-major, last axis fastest.
struct Grid {
    int dim = 2;
    std::array<double, 3> extent{};
    double spacing = 1.0;
    std::array<int, 3> dims{};

    Grid() = default;
    Grid(int n, const std::array<double, 3>& half_widths, double h);
    static Grid cube(int n, double half_width, double h);

    std::size_t cell_count() const;
    double cell_volume() const; // spacing^dim

    std::array<int, 3> unflatten(std::size_t c) const;
    std::size_t flatten(const std::array<int, 3>& idx) const;
    std::size_t stride(int axis) const;

    Point center(std::size_t c) const;
    bool on_boundary(std::size_t c) const;
    bool contains(const Point& x) const;
    // Cell containing x; throws std::out_of_range when x is outside the box.
    std::size_t cell_at(const Point& x) const;

    bool operator==(const Grid& o) const;
};

// Lattice-sampled scalar field with values in [-1, 1] (up to 1e-12 slack).
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0);
    static ScalarField from_function(const Grid& g, const std::function<double(const Point&)>& f);

    double max_abs() const;
    // true when every value lies in [-1-tol, 1+tol]
    bool in_unit_range(double tol = 1e-12) const;
};

// Boolean membership per cell.  `clipped` is set when the requested region
// extended past the box and was truncated.
struct RegionMask {
    Grid grid;
    std::vector<std::uint8_t> member;
    bool clipped = false;

    RegionMask() = default;
    explicit RegionMask(const Grid& g, bool fill = false);
    std::size_t count() const;
};

// Cells whose centers satisfy |x - center| <= R.
RegionMask ball_mask(const Grid& g, const Point& center, double R);
// Cells with field value >= t.
RegionMask superlevel_mask(const ScalarField& f, double t);
// Cells with field value <= t.
RegionMask sublevel_mask(const ScalarField& f, double t);

// Counting measure: (number of member cells) * spacing^dim.
double measure(const RegionMask& m);

RegionMask full_mask(const Grid& g);
// Everything at least `margin` cells away from the box boundary.
RegionMask interior_mask(const Grid& g, int margin = 1);
RegionMask mask_and(const RegionMask& a, const RegionMask& b);
RegionMask mask_or(const RegionMask& a, const RegionMask& b);
RegionMask mask_sub(const RegionMask& a, const RegionMask& b);
bool mask_subset(const RegionMask& a, const RegionMask& b); // a ⊆ b
bool masks_disjoint(const RegionMask& a, const RegionMask& b);

} // namespace gldens
