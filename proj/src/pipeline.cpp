#include "gldens/pipeline.hpp"

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "gldens/competitors.hpp"
#include "gldens/degiorgi.hpp"
#include "gldens/heteroclinic.hpp"
#include "gldens/io.hpp"

namespace gldens::pipeline {

using nlohmann::json;

namespace {

constexpr const char* kFormatVersion = "gldens-report-1";

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_report(RunDir& rd, const ExperimentConfig& c, const std::string& subcommand, json results) {
    json rep;
    rep["format_version"] = kFormatVersion;
    rep["subcommand"] = subcommand;
    rep["config_resolved"] = serialize_config(c);
    rep["results"] = std::move(results);
    write_text(rd.root / "report.json", rep.dump(2) + "\n");
    rd.note("report.json");
}

void write_resolved_config(RunDir& rd, const ExperimentConfig& c) {
    write_text(rd.root / "config.resolved", serialize_config(c));
    rd.note("config.resolved");
}

json trace_summary(const SolveTrace& tr) {
    json j;
    j["iterations"] = tr.iterations;
    j["converged"] = tr.converged;
    j["hit_iter_cap"] = tr.hit_iter_cap;
    j["initial_energy"] = tr.energy.empty() ? 0.0 : tr.energy.front();
    j["final_energy"] = tr.energy.empty() ? 0.0 : tr.energy.back();
    return j;
}

} // namespace

void RunDir::note(const std::filesystem::path& p) { artifacts.push_back(p.generic_string()); }

RunDir prepare_run_dir(const std::filesystem::path& outdir, const std::string& run_id) {
    RunDir rd;
    rd.root = outdir / run_id;
    std::filesystem::create_directories(rd.root);
    std::filesystem::create_directories(rd.fields());
    std::filesystem::create_directories(rd.tables());
    std::filesystem::create_directories(rd.plots());
    return rd;
}

void write_manifest(const RunDir& rd, bool complete, const std::string& error) {
    std::ofstream out(rd.root / "MANIFEST");
    out << "complete: " << (complete ? "true" : "false") << "\n";
    if (!error.empty()) out << "error: " << error << "\n";
    for (const auto& a : rd.artifacts) out << a << "\n";
}

SolveOutput solve_planar(const ExperimentConfig& c) {
    SolveOutput out{spec_from_config(c), {}, {}};
    Grid grid = grid_from_config(c);
    ScalarField seed = planar_interface(grid, c.interface_width, c.interface_offset);
    auto [field, trace] = minimize(out.spec, seed, interior_mask(grid, 1), solve_options_from_config(c));
    out.field = std::move(field);
    out.trace = std::move(trace);
    return out;
}

void save_ledger(const ConstantsLedger& led, const std::filesystem::path& path) {
    json j;
    j["sigma"] = led.sigma;
    j["h_tilde"] = led.h_tilde;
    j["rho_tilde"] = led.rho_tilde;
    j["r_tilde"] = led.r_tilde;
    j["delta_tilde"] = led.delta_tilde;
    j["R0"] = led.R0;
    j["delta"] = led.delta;
    j["witness"] = {led.witness[0], led.witness[1], led.witness[2]};
    j["witness_value"] = led.witness_value;
    j["witness_found"] = led.witness_found;
    j["seed_ball_ok"] = led.seed_ball_ok;
    write_text(path, j.dump(2) + "\n");
}

ConstantsLedger load_ledger(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ledger: " + path.string());
    json j = json::parse(in);
    ConstantsLedger led;
    led.sigma = j.at("sigma");
    led.h_tilde = j.at("h_tilde");
    led.rho_tilde = j.at("rho_tilde");
    led.r_tilde = j.at("r_tilde");
    led.delta_tilde = j.at("delta_tilde");
    led.R0 = j.at("R0");
    led.delta = j.at("delta");
    led.witness = {j.at("witness")[0], j.at("witness")[1], j.at("witness")[2]};
    led.witness_value = j.at("witness_value");
    led.witness_found = j.at("witness_found");
    led.seed_ball_ok = j.at("seed_ball_ok");
    return led;
}

int run_validate(const ExperimentConfig& c, RunDir& rd) {
    write_resolved_config(rd, c);
    EnergySpec spec = spec_from_config(c);
    ValidationReport rep = validate_spec(spec, c.validate_samples, c.seed);

    json results;
    results["samples"] = rep.samples;
    results["violations"] = json::array();
    for (const auto& v : rep.violations) {
        json jv;
        jv["assumption"] = std::string(1, v.assumption);
        jv["tau"] = v.tau;
        jv["x"] = {v.x[0], v.x[1], v.x[2]};
        jv["detail"] = v.detail;
        results["violations"].push_back(jv);
    }
    results["ok"] = rep.ok();
    write_report(rd, c, "validate", results);
    write_manifest(rd, true);
    std::cout << "validate: " << rep.violations.size() << " violation(s) over " << rep.samples
              << " samples\n";
    return 0;
}

int run_solve(const ExperimentConfig& c, RunDir& rd) {
    write_resolved_config(rd, c);
    SolveOutput out = solve_planar(c);

    write_field(out.field, rd.fields() / "u.dat");
    rd.note("fields/u.dat");
    write_trace_csv(out.trace, rd.tables() / "trace.csv");
    rd.note("tables/trace.csv");

    write_report(rd, c, "solve", trace_summary(out.trace));
    write_manifest(rd, true);
    std::cout << "solve: J " << out.trace.energy.front() << " -> " << out.trace.energy.back() << " in "
              << out.trace.iterations << " iterations" << (out.trace.converged ? "" : " (not converged)")
              << "\n";
    return 0;
}

int run_profile1d(double p, double m, double u_max, double du, bool classify, RunDir& rd) {
    Profile1D prof = quadrature_profile(p, m, u_max, du);
    write_profile_csv(prof, rd.tables() / "profile.csv");
    rd.note("tables/profile.csv");

    json results;
    results["p"] = p;
    results["m"] = m;
    results["u_max"] = u_max;
    results["du"] = du;
    results["samples"] = prof.xs.size();
    results["x_max"] = prof.max_x();
    results["hit_x_budget"] = prof.hit_x_budget;
    if (classify) {
        DecayReport dec = decay_classify(prof);
        results["decay_class"] = to_string(dec.cls);
        results["decay_exponent"] = dec.exponent;
        results["rss_poly"] = dec.rss_poly;
        results["rss_exp"] = dec.rss_exp;
        std::cout << "profile1d: decay " << to_string(dec.cls) << ", exponent " << dec.exponent << "\n";
    }
    ExperimentConfig c; // profile runs are flag-driven; keep the defaults on record
    write_report(rd, c, "profile1d", results);
    write_manifest(rd, true);
    return 0;
}

int run_density(const ExperimentConfig& c, const std::optional<std::filesystem::path>& field_path,
                const Point& center, bool plots, RunDir& rd) {
    write_resolved_config(rd, c);
    EnergySpec spec = spec_from_config(c);
    ScalarField field;
    if (field_path) {
        field = read_field(*field_path);
    } else {
        field = solve_planar(c).field;
        write_field(field, rd.fields() / "u.dat");
        rd.note("fields/u.dat");
    }

    DensityCurve curve = density_curve(spec, field, center, c.radii);
    write_density_csv(curve, rd.tables() / "density.csv");
    rd.note("tables/density.csv");
    GrowthReport growth = energy_growth(curve, spec.params.n, c.c_cap, c.slope_margin);

    if (plots) {
        std::vector<std::pair<double, double>> epts, ppts, npts;
        for (std::size_t i = 0; i < curve.radii.size(); ++i) {
            epts.emplace_back(curve.radii[i], curve.energy[i]);
            ppts.emplace_back(curve.radii[i], curve.pos_measure[i]);
            npts.emplace_back(curve.radii[i], curve.neg_measure[i]);
        }
        write_svg_loglog(rd.plots() / "energy.svg", "J(u,B_R) vs R", {{"J", epts}});
        rd.note("plots/energy.svg");
        write_svg_loglog(rd.plots() / "density.svg", "level-set measures vs R",
                         {{"pos", ppts}, {"neg", npts}});
        rd.note("plots/density.svg");
    }

    json results;
    results["radii"] = curve.radii;
    results["pos_measure"] = curve.pos_measure;
    results["neg_measure"] = curve.neg_measure;
    results["energy"] = curve.energy;
    results["normalized_energy"] = growth.normalized;
    results["loglog_slope"] = growth.loglog_slope;
    results["normalized_ratio"] = growth.ratio_max_over_min;
    results["growth_pass"] = growth.pass;
    write_report(rd, c, "density", results);
    write_manifest(rd, true);
    std::cout << "density: slope " << growth.loglog_slope << ", normalized ratio "
              << growth.ratio_max_over_min << (growth.pass ? " (pass)" : " (fail)") << "\n";
    return growth.pass ? 0 : 2;
}

int run_lemma2(const ExperimentConfig& c, RunDir& rd) {
    write_resolved_config(rd, c);
    EnergySpec spec = spec_from_config(c);
    CapSweepOptions opts;
    opts.spacing = c.spacing;
    opts.a_steps = c.a_steps;
    opts.interface_width = c.interface_width;
    opts.solve = solve_options_from_config(c);
    CapSweepReport rep = cap_sweep_experiment(spec, c.R, opts);

    {
        std::ofstream out(rd.tables() / "cap_sweep.csv");
        out << "a,V,omega_measure,dV_da\n";
        for (std::size_t j = 0; j < rep.a_values.size(); ++j)
            out << fmt17(rep.a_values[j]) << "," << fmt17(rep.V[j]) << ","
                << fmt17(rep.omega_measure[j]) << "," << fmt17(rep.fd_derivative[j]) << "\n";
        rd.note("tables/cap_sweep.csv");
    }
    write_field(rep.field, rd.fields() / "u.dat");
    rd.note("fields/u.dat");

    json results;
    results["R"] = rep.R;
    results["h"] = rep.h;
    results["a"] = rep.a_values;
    results["V"] = rep.V;
    results["omega_measure"] = rep.omega_measure;
    results["V2h_over_Rn_h"] = rep.V2h_over_Rn_h;
    results["min_fd_ratio"] = rep.min_fd_ratio;
    results["implied_density_lower"] = rep.implied_density_lower;
    results["implied_density_ok"] = rep.implied_density_ok;
    results["sigma_hat"] = rep.sigma_hat;
    results["sigma_proof"] = rep.sigma_proof;
    results["solver_converged"] = rep.solver_converged;
    write_report(rd, c, "lemma2", results);
    write_manifest(rd, true);
    std::cout << "lemma2: sigma_hat " << rep.sigma_hat << ", min dV/da ratio " << rep.min_fd_ratio
              << ", implied density " << (rep.implied_density_ok ? "ok" : "violated") << "\n";
    return 0;
}

int run_iterate(double beta0, double C, double p, int n, int k_max, bool find_threshold, RunDir& rd) {
    IterationTrace tr = run_recursion(beta0, C, p, n, k_max);
    {
        std::ofstream out(rd.tables() / "recursion.csv");
        out << "k,beta\n";
        for (std::size_t k = 0; k < tr.beta.size(); ++k) out << k << "," << fmt17(tr.beta[k]) << "\n";
        rd.note("tables/recursion.csv");
    }
    json results;
    results["beta0"] = beta0;
    results["C"] = C;
    results["p"] = p;
    results["n"] = n;
    results["k_max"] = k_max;
    results["verdict"] = to_string(tr.verdict);
    if (find_threshold) {
        double thr = vanishing_threshold(C, p, n);
        results["threshold"] = thr;
        results["threshold_ansatz_c1"] = threshold_ansatz(p, n);
        std::cout << "iterate: verdict " << to_string(tr.verdict) << ", threshold " << thr << "\n";
    } else {
        std::cout << "iterate: verdict " << to_string(tr.verdict) << "\n";
    }
    ExperimentConfig c;
    write_report(rd, c, "iterate", results);
    write_manifest(rd, true);
    return 0;
}

int run_fit(const ExperimentConfig& c, const std::optional<std::filesystem::path>& field_path,
            const Point& center, RunDir& rd) {
    write_resolved_config(rd, c);
    EnergySpec spec = spec_from_config(c);
    ScalarField field;
    if (field_path) {
        field = read_field(*field_path);
    } else {
        field = solve_planar(c).field;
        write_field(field, rd.fields() / "u.dat");
        rd.note("fields/u.dat");
    }
    IterationSchedule sched(c.t_infty, c.L);
    RecursionFit fit = fit_recursion(field, spec, sched, center);

    {
        std::ofstream out(rd.tables() / "fit.csv");
        out << "k,measure,beta,ratio\n";
        for (std::size_t k = 0; k < fit.beta.size(); ++k) {
            out << k << "," << fmt17(fit.measures[k]) << "," << fmt17(fit.beta[k]) << ",";
            if (k < fit.ratios.size()) out << fmt17(fit.ratios[k]);
            out << "\n";
        }
        rd.note("tables/fit.csv");
    }
    json results;
    results["L"] = c.L;
    results["t_infty"] = c.t_infty;
    results["measures"] = fit.measures;
    results["beta"] = fit.beta;
    results["ratios"] = fit.ratios;
    results["C_hat"] = fit.C_hat;
    results["truncated_at"] = fit.truncated_at;
    results["clipped"] = fit.clipped;
    write_report(rd, c, "fit", results);
    write_manifest(rd, true);
    std::cout << "fit: C_hat " << fit.C_hat
              << (fit.truncated_at >= 0 ? " (sequence truncated at k = " + std::to_string(fit.truncated_at) + ")" : "")
              << "\n";
    return 0;
}

int run_competitor(const ExperimentConfig& c, const std::string& kind, int k,
                   std::optional<long long> shell_radius, double a, RunDir& rd) {
    write_resolved_config(rd, c);
    Grid grid = grid_from_config(c);
    Competitor comp;
    json results;
    if (kind == "shell") {
        comp = radial_shell(c.R);
    } else if (kind == "phik") {
        IterationSchedule sched(c.t_infty, c.L);
        comp = plateau_ramp(sched, k, shell_radius);
        results["k"] = k;
        results["t_k"] = sched.level(k);
        results["r_k"] = sched.radius(k);
    } else if (kind == "phia") {
        EnergyParams params(c.lambda, c.p, c.m, c.n);
        double h = cap_height(params, c.R);
        double aa = a > 0.0 ? a : 2.0 * h;
        comp = paraboloid_cap(aa, h, c.R);
        results["a"] = aa;
        results["h"] = h;
    } else {
        throw std::invalid_argument("competitor: kind must be shell|phik|phia");
    }
    ScalarField f = comp.rasterize(grid);
    write_field(f, rd.fields() / "competitor.dat");
    rd.note("fields/competitor.dat");
    results["kind"] = kind;
    results["R"] = c.R;
    write_report(rd, c, "competitor", results);
    write_manifest(rd, true);
    std::cout << "competitor: rasterized " << kind << " on " << grid.dims[0] << "-cell grid\n";
    return 0;
}

int run_theorem(const ExperimentConfig& c, const std::optional<std::filesystem::path>& field_path,
                const std::optional<std::filesystem::path>& ledger_path, RunDir& rd) {
    write_resolved_config(rd, c);
    ScalarField field = field_path ? read_field(*field_path) : solve_planar(c).field;

    ConstantsLedger led;
    if (ledger_path) {
        led = load_ledger(*ledger_path);
    } else {
        EnergySpec spec = spec_from_config(c);
        CapSweepOptions opts;
        opts.spacing = c.spacing;
        opts.a_steps = c.a_steps;
        opts.solve = solve_options_from_config(c);
        CapSweepReport sweep = cap_sweep_experiment(spec, c.R, opts);
        led = assemble_constants(spec, field, sweep.sigma_hat);
    }
    TheoremReport rep = verify_density(field, led, c.radii);

    json results;
    results["R0"] = led.R0;
    results["delta"] = led.delta;
    results["hypothesis_met"] = rep.hypothesis_met;
    results["u0"] = rep.u0;
    results["entries"] = json::array();
    for (const auto& e : rep.entries) {
        json je;
        je["R"] = e.R;
        je["pos"] = e.pos;
        je["neg"] = e.neg;
        je["bound"] = e.bound;
        je["pass"] = e.pass;
        je["skipped"] = e.skipped;
        je["note"] = e.note;
        results["entries"].push_back(je);
    }
    results["all_pass"] = rep.all_pass;
    write_report(rd, c, "theorem", results);
    write_manifest(rd, true);
    std::cout << "theorem: " << (rep.all_pass ? "pass" : "fail") << " (delta " << led.delta << ", R0 "
              << led.R0 << ")\n";
    return rep.all_pass ? 0 : 2;
}

int run_report(const ExperimentConfig& c, bool plots, RunDir& rd) {
    write_resolved_config(rd, c);
    EnergySpec spec = spec_from_config(c);

    // 1. pinned planar minimizer (the density-theorem field)
    ExperimentConfig cfield = c;
    if (!cfield.pin_value) cfield.pin_value = 0.0;
    SolveOutput solved = solve_planar(cfield);
    write_field(solved.field, rd.fields() / "u.dat");
    rd.note("fields/u.dat");
    write_trace_csv(solved.trace, rd.tables() / "trace.csv");
    rd.note("tables/trace.csv");

    // 2. density and growth curves
    DensityCurve curve = density_curve(spec, solved.field, {0.0, 0.0, 0.0}, c.radii);
    write_density_csv(curve, rd.tables() / "density.csv");
    rd.note("tables/density.csv");
    GrowthReport growth = energy_growth(curve, spec.params.n, c.c_cap, c.slope_margin);

    // 3. cap sweep at experiment.R (pin u(0) = 1-h)
    CapSweepOptions copts;
    copts.spacing = c.spacing;
    copts.a_steps = c.a_steps;
    copts.solve = solve_options_from_config(c);
    copts.solve.pin.reset();
    CapSweepReport sweep = cap_sweep_experiment(spec, c.R, copts);

    // 4. constants and the final check
    ConstantsLedger led = assemble_constants(spec, solved.field, sweep.sigma_hat);
    save_ledger(led, rd.root / "ledger.json");
    rd.note("ledger.json");
    TheoremReport thm = verify_density(solved.field, led, c.radii);

    if (plots) {
        std::vector<std::pair<double, double>> epts, ppts, npts;
        for (std::size_t i = 0; i < curve.radii.size(); ++i) {
            epts.emplace_back(curve.radii[i], curve.energy[i]);
            ppts.emplace_back(curve.radii[i], curve.pos_measure[i]);
            npts.emplace_back(curve.radii[i], curve.neg_measure[i]);
        }
        write_svg_loglog(rd.plots() / "energy.svg", "J(u,B_R) vs R", {{"J", epts}});
        rd.note("plots/energy.svg");
        write_svg_loglog(rd.plots() / "density.svg", "level-set measures vs R",
                         {{"pos", ppts}, {"neg", npts}});
        rd.note("plots/density.svg");
    }

    json results;
    results["solver"] = trace_summary(solved.trace);
    results["growth"] = {{"normalized", growth.normalized},
                         {"loglog_slope", growth.loglog_slope},
                         {"ratio", growth.ratio_max_over_min},
                         {"pass", growth.pass}};
    results["cap_sweep"] = {{"R", sweep.R},
                            {"h", sweep.h},
                            {"sigma_hat", sweep.sigma_hat},
                            {"sigma_proof", sweep.sigma_proof},
                            {"min_fd_ratio", sweep.min_fd_ratio},
                            {"implied_density_ok", sweep.implied_density_ok}};
    results["ledger"] = {{"sigma", led.sigma},       {"h_tilde", led.h_tilde},
                         {"rho_tilde", led.rho_tilde}, {"r_tilde", led.r_tilde},
                         {"R0", led.R0},             {"delta", led.delta},
                         {"witness_found", led.witness_found}, {"seed_ball_ok", led.seed_ball_ok}};
    results["theorem_pass"] = thm.all_pass;
    write_report(rd, c, "report", results);
    write_manifest(rd, true);
    std::cout << "report: theorem " << (thm.all_pass ? "pass" : "fail") << ", sigma_hat "
              << sweep.sigma_hat << ", R0 " << led.R0 << "\n";
    if (!led.witness_found) {
        std::cerr << "report: no witness cell with u >= 1 - h_tilde found inside the box\n";
        return 2;
    }
    return thm.all_pass ? 0 : 2;
}

} // namespace gldens::pipeline
