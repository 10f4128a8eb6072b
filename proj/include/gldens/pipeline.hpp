#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gldens/config.hpp"
#include "gldens/density.hpp"
#include "gldens/grid.hpp"
#include "gldens/minimize.hpp"

namespace gldens::pipeline {

// Output tree of one run: <outdir>/<run-id>/{config.resolved, fields/,
// tables/, plots/, report.json, MANIFEST}.  The MANIFEST is written last.
struct RunDir {
    std::filesystem::path root;
    std::vector<std::string> artifacts;

    std::filesystem::path fields() const { return root / "fields"; }
    std::filesystem::path tables() const { return root / "tables"; }
    std::filesystem::path plots() const { return root / "plots"; }
    // record an artifact path (relative to root) for the MANIFEST
    void note(const std::filesystem::path& p);
};

RunDir prepare_run_dir(const std::filesystem::path& outdir, const std::string& run_id);
void write_manifest(const RunDir& rd, bool complete, const std::string& error = "");

// Builds grid/spec/seed field from the config (planar interface, optional
// origin pin) and relaxes it.
struct SolveOutput {
    EnergySpec spec;
    ScalarField field;
    SolveTrace trace;
};
SolveOutput solve_planar(const ExperimentConfig& c);

void save_ledger(const ConstantsLedger& led, const std::filesystem::path& path);
ConstantsLedger load_ledger(const std::filesystem::path& path);

// Subcommand bodies.  Each writes its artifacts plus report.json and the
// MANIFEST into rd and returns a process exit code.
int run_validate(const ExperimentConfig& c, RunDir& rd);
int run_solve(const ExperimentConfig& c, RunDir& rd);
int run_profile1d(double p, double m, double u_max, double du, bool classify, RunDir& rd);
int run_density(const ExperimentConfig& c, const std::optional<std::filesystem::path>& field_path,
                const Point& center, bool plots, RunDir& rd);
int run_lemma2(const ExperimentConfig& c, RunDir& rd);
int run_iterate(double beta0, double C, double p, int n, int k_max, bool find_threshold, RunDir& rd);
int run_fit(const ExperimentConfig& c, const std::optional<std::filesystem::path>& field_path,
            const Point& center, RunDir& rd);
int run_competitor(const ExperimentConfig& c, const std::string& kind, int k,
                   std::optional<long long> shell_radius, double a, RunDir& rd);
int run_theorem(const ExperimentConfig& c, const std::optional<std::filesystem::path>& field_path,
                const std::optional<std::filesystem::path>& ledger_path, RunDir& rd);
int run_report(const ExperimentConfig& c, bool plots, RunDir& rd);

} // namespace gldens::pipeline
