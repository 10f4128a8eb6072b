#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gldens/config.hpp"
#include "gldens/pipeline.hpp"

namespace {

using namespace gldens;

void print_errors(const std::vector<ParseError>& errors) {
    for (const auto& e : errors) {
        std::cerr << "config error";
        if (e.line > 0) std::cerr << " (line " << e.line << ")";
        if (!e.key.empty()) std::cerr << " [" << e.key << "]";
        std::cerr << ": " << e.message << "\n";
    }
}

// Overrides are applied through the text form so they pass exactly the same
// validation as file keys.
ExperimentConfig resolve_config(const std::string& config_path, const std::vector<std::string>& sets) {
    ExperimentConfig base;
    if (!config_path.empty()) {
        ParseResult res = parse_config_file(config_path);
        if (!res.ok()) {
            print_errors(res.errors);
            throw std::runtime_error("invalid config file");
        }
        base = *res.config;
    }
    if (sets.empty()) return base;

    std::map<std::string, std::string> kv;
    std::vector<std::string> order;
    {
        std::stringstream ss(serialize_config(base));
        std::string line;
        while (std::getline(ss, line)) {
            auto eq = line.find(" = ");
            if (eq == std::string::npos) continue;
            std::string k = line.substr(0, eq);
            kv[k] = line.substr(eq + 3);
            order.push_back(k);
        }
    }
    for (const std::string& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--set expects key=value, got '" + s + "'");
        std::string k = s.substr(0, eq), v = s.substr(eq + 1);
        if (!kv.count(k)) order.push_back(k); // unknown keys fall through to the parser
        kv[k] = v;
    }
    std::ostringstream text;
    for (const std::string& k : order) text << k << " = " << kv[k] << "\n";
    ParseResult res = parse_config(text.str());
    if (!res.ok()) {
        print_errors(res.errors);
        throw std::runtime_error("invalid configuration after overrides");
    }
    return *res.config;
}

Point parse_center(const std::string& s) {
    Point c{0.0, 0.0, 0.0};
    std::stringstream ss(s);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',') && i < 3) c[i++] = std::stod(item);
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for degenerate Ginzburg-Landau energies: constrained\n"
                 "minimizers, competitor constructions, level-set density and energy-growth\n"
                 "measurements, and the measure recursion behind the density estimate."};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::vector<std::string> sets;
    std::uint64_t cli_seed = 42;
    bool plots = false;
    app.add_option("--config", config_path, "key=value experiment config file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (default: out)");
    app.add_option("--set", sets, "override a config key, e.g. --set energy.p=1.3")->take_all();
    app.add_option("--seed", cli_seed, "seed for flag-driven subcommands");
    app.add_flag("--plots", plots, "write SVG log-log plots");

    auto sub = [&](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        s->fallthrough(); // global flags may follow the subcommand
        return s;
    };
    auto* validate = sub("validate", "sample the structural assumptions of the energy");
    auto* solve = sub("solve", "relax the planar-interface field");
    auto* profile1d = sub("profile1d", "1D connection profile by quadrature");
    auto* density = sub("density", "level-set measures and energy per radius");
    auto* lemma2 = sub("lemma2", "paraboloid cap sweep with a pinned relaxation");
    auto* iterate = sub("iterate", "run the measure recursion");
    auto* fit = sub("fit", "fit the recursion constant on a computed field");
    auto* competitor = sub("competitor", "rasterize a competitor profile");
    auto* theorem = sub("theorem", "both-sided density check with assembled constants");
    auto* report = sub("report", "full pipeline: solve, sweep, assemble, verify");

    double pf_p = 2.0, pf_m = 2.0, pf_umax = 1.0 - 1e-6, pf_du = 1e-4;
    bool pf_classify = false;
    profile1d->add_option("--p", pf_p, "Dirichlet exponent (> 1)");
    profile1d->add_option("--m", pf_m, "well exponent (> 0)");
    profile1d->add_option("--umax", pf_umax, "largest sampled value (< 1)");
    profile1d->add_option("--du", pf_du, "sample spacing on the u axis");
    profile1d->add_flag("--classify", pf_classify, "classify the tail decay");

    std::string field_path, ledger_path, center_str = "0,0,0";
    density->add_option("--field", field_path, "field dump to analyze (default: solve first)");
    density->add_option("--center", center_str, "ball center, comma-separated");
    std::string radii_str;
    density->add_option("--radii", radii_str, "override experiment.radii, comma-separated");

    double l2_R = 0.0;
    lemma2->add_option("--R", l2_R, "override experiment.R");

    double it_beta0 = 1e-3, it_C = 1.0, it_p = 1.5;
    int it_n = 2, it_kmax = 400;
    bool it_threshold = false;
    iterate->add_option("--beta0", it_beta0, "initial value");
    iterate->add_option("--C", it_C, "recursion constant");
    iterate->add_option("--p", it_p, "exponent p");
    iterate->add_option("--n", it_n, "dimension n");
    iterate->add_option("--kmax", it_kmax, "iterations");
    iterate->add_flag("--find-threshold", it_threshold, "bisect the vanishing threshold");

    int fit_L = 0;
    double fit_tinfty = 0.0;
    fit->add_option("--field", field_path, "field dump to analyze (default: solve first)");
    fit->add_option("--L", fit_L, "override experiment.L");
    fit->add_option("--tinfty", fit_tinfty, "override experiment.t_infty");
    fit->add_option("--center", center_str, "schedule center, comma-separated");

    std::string comp_kind = "shell";
    int comp_k = 0;
    long long comp_N = -1;
    double comp_a = 0.0;
    competitor->add_option("--kind", comp_kind, "shell|phik|phia")->required();
    competitor->add_option("--k", comp_k, "schedule step (phik)");
    competitor->add_option("--Nk", comp_N, "integer shell radius (phik, k <= L-2)");
    competitor->add_option("--a", comp_a, "cap depth (phia; default 2h)");
    competitor->add_option("--R", l2_R, "override experiment.R");

    theorem->add_option("--field", field_path, "field dump to check (default: solve first)");
    theorem->add_option("--ledger", ledger_path, "constants ledger JSON (default: assemble)");
    theorem->add_option("--radii", radii_str, "override experiment.radii");

    CLI11_PARSE(app, argc, argv);

    std::string subname = app.get_subcommands().front()->get_name();
    pipeline::RunDir rd;
    try {
        // subcommand flags are folded into the override list so every value
        // passes the same validation as file keys
        std::vector<std::string> overrides = sets;
        if (!radii_str.empty()) overrides.push_back("experiment.radii=" + radii_str);
        if ((lemma2->parsed() || competitor->parsed()) && l2_R > 0.0)
            overrides.push_back("experiment.R=" + std::to_string(l2_R));
        if (fit->parsed()) {
            if (fit_L > 0) overrides.push_back("experiment.L=" + std::to_string(fit_L));
            if (fit_tinfty != 0.0)
                overrides.push_back("experiment.t_infty=" + std::to_string(fit_tinfty));
        }
        ExperimentConfig cfg = resolve_config(config_path, overrides);
        if (config_path.empty() && overrides.empty()) cfg.seed = cli_seed;

        std::uint64_t run_seed = (profile1d->parsed() || iterate->parsed()) ? cli_seed : cfg.seed;
        rd = pipeline::prepare_run_dir(out_dir, subname + "-s" + std::to_string(run_seed));

        std::optional<std::filesystem::path> field =
            field_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(field_path);
        std::optional<std::filesystem::path> ledger =
            ledger_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(ledger_path);

        if (validate->parsed()) return pipeline::run_validate(cfg, rd);
        if (solve->parsed()) return pipeline::run_solve(cfg, rd);
        if (profile1d->parsed()) return pipeline::run_profile1d(pf_p, pf_m, pf_umax, pf_du, pf_classify, rd);
        if (density->parsed()) return pipeline::run_density(cfg, field, parse_center(center_str), plots, rd);
        if (lemma2->parsed()) return pipeline::run_lemma2(cfg, rd);
        if (iterate->parsed()) return pipeline::run_iterate(it_beta0, it_C, it_p, it_n, it_kmax, it_threshold, rd);
        if (fit->parsed()) return pipeline::run_fit(cfg, field, parse_center(center_str), rd);
        if (competitor->parsed())
            return pipeline::run_competitor(cfg, comp_kind, comp_k,
                                            comp_N >= 0 ? std::optional<long long>(comp_N) : std::nullopt,
                                            comp_a, rd);
        if (theorem->parsed()) return pipeline::run_theorem(cfg, field, ledger, rd);
        if (report->parsed()) return pipeline::run_report(cfg, plots, rd);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!rd.root.empty()) pipeline::write_manifest(rd, false, e.what());
        return 1;
    }
}
