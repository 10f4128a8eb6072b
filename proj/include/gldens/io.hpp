#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gldens/density.hpp"
#include "gldens/grid.hpp"
#include "gldens/heteroclinic.hpp"
#include "gldens/minimize.hpp"

namespace gldens {

// %.17g: shortest text that round-trips a double bit-exactly
std::string fmt17(double v);

// Field dump: "# dim=<n> dims=<d1,...> extent=<e1,...> spacing=<h>" header,
// then one value per line, row-major with the last axis fastest.
void write_field(const ScalarField& f, const std::filesystem::path& path);
ScalarField read_field(const std::filesystem::path& path);

// One line per cell center with the membership bit.
void write_mask_csv(const RegionMask& m, const std::filesystem::path& path);

void write_trace_csv(const SolveTrace& tr, const std::filesystem::path& path);

// Columns x, u, residual (first-integral defect at interior samples).
void write_profile_csv(const Profile1D& prof, const std::filesystem::path& path);

void write_density_csv(const DensityCurve& curve, const std::filesystem::path& path);

// Minimal log-log polyline plot; series = (name, points).
void write_svg_loglog(const std::filesystem::path& path, const std::string& title,
                      const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& series);

} // namespace gldens
