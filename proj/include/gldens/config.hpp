#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gldens/energy.hpp"
#include "gldens/grid.hpp"
#include "gldens/minimize.hpp"

namespace gldens {

// Flat key=value experiment configuration (dotted sections, '#' comments).
// Unknown keys are rejected so experiment files stay auditable; every
// admissibility constraint of the energy parameters is re-checked at parse
// time with the violated inequality named.
struct ExperimentConfig {
    // global
    std::uint64_t seed = 42;
    std::string output_dir = "out";

    // energy.*
    double lambda = 1.0;
    double p = 1.4;
    double m = 3.0;
    int n = 2;
    int coeff_resolution = 16;
    std::uint64_t energy_seed = 42;
    CoeffMode a_mode = CoeffMode::Constant;
    CoeffMode b_mode = CoeffMode::Constant;

    // grid.*
    std::array<double, 3> extent{20.0, 20.0, 20.0};
    double spacing = 0.25;

    // solver.*
    double epsilon_reg = 1e-6;
    double step0 = 1.0;
    double backtrack = 0.5;
    double tol_energy = 1e-8;
    int max_iters = 2000;
    bool deterministic = true;
    std::optional<double> pin_value;
    double interface_width = 1.0;
    double interface_offset = 0.0;

    // experiment.*
    std::vector<double> radii{8.0, 16.0, 32.0};
    int L = 4;
    double t_infty = -0.5;
    int a_steps = 8;
    double R = 16.0;
    double c_cap = 1e6;
    double slope_margin = 0.15;
    int validate_samples = 10000;

    bool operator==(const ExperimentConfig&) const = default;
};

struct ParseError {
    int line = 0; // 0 when the error is not tied to a line
    std::string key;
    std::string message;
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<ParseError> errors;
    bool ok() const { return config.has_value(); }
};

ParseResult parse_config(const std::string& text);
ParseResult parse_config_file(const std::string& path);

// Canonical form: fixed key order, %.17g numbers; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& c);

EnergySpec spec_from_config(const ExperimentConfig& c);
Grid grid_from_config(const ExperimentConfig& c);
SolveOptions solve_options_from_config(const ExperimentConfig& c);

} // namespace gldens
