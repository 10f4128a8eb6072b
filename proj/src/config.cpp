#include "gldens/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace gldens {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Occurrence {
    int line;
    std::string value;
};

struct Reader {
    std::map<std::string, std::vector<Occurrence>> entries;
    std::vector<ParseError>& errors;
    std::vector<std::string> consumed;

    explicit Reader(std::vector<ParseError>& errs) : errors(errs) {}

    const Occurrence* take(const std::string& key) {
        consumed.push_back(key);
        auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        if (it->second.size() > 1) {
            std::ostringstream os;
            os << "duplicate key; also defined at line " << it->second[0].line;
            errors.push_back({it->second[1].line, key, os.str()});
            return nullptr;
        }
        return &it->second[0];
    }

    bool get(const std::string& key, double& out) {
        const Occurrence* o = take(key);
        if (!o) return false;
        char* end = nullptr;
        double v = std::strtod(o->value.c_str(), &end);
        if (end == o->value.c_str() || *end != '\0') {
            errors.push_back({o->line, key, "not a number: '" + o->value + "'"});
            return false;
        }
        out = v;
        return true;
    }

    bool get(const std::string& key, int& out) {
        double v;
        const Occurrence* o = entries.count(key) ? &entries[key][0] : nullptr;
        if (!get(key, v)) return false;
        if (v != std::floor(v)) {
            errors.push_back({o ? o->line : 0, key, "expected an integer"});
            return false;
        }
        out = static_cast<int>(v);
        return true;
    }

    bool get(const std::string& key, std::uint64_t& out) {
        const Occurrence* o = take(key);
        if (!o) return false;
        try {
            out = std::stoull(o->value);
        } catch (...) {
            errors.push_back({o->line, key, "not a 64-bit unsigned integer: '" + o->value + "'"});
            return false;
        }
        return true;
    }

    bool get(const std::string& key, bool& out) {
        const Occurrence* o = take(key);
        if (!o) return false;
        if (o->value == "true" || o->value == "1") {
            out = true;
        } else if (o->value == "false" || o->value == "0") {
            out = false;
        } else {
            errors.push_back({o->line, key, "expected true/false"});
            return false;
        }
        return true;
    }

    bool get(const std::string& key, std::string& out) {
        const Occurrence* o = take(key);
        if (!o) return false;
        out = o->value;
        return true;
    }

    bool get_list(const std::string& key, std::vector<double>& out) {
        const Occurrence* o = take(key);
        if (!o) return false;
        std::vector<double> vals;
        std::stringstream ss(o->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            char* end = nullptr;
            double v = std::strtod(item.c_str(), &end);
            if (item.empty() || end == item.c_str() || *end != '\0') {
                errors.push_back({o->line, key, "not a comma-separated number list: '" + o->value + "'"});
                return false;
            }
            vals.push_back(v);
        }
        if (vals.empty()) {
            errors.push_back({o->line, key, "empty list"});
            return false;
        }
        out = std::move(vals);
        return true;
    }

    int line_of(const std::string& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? 0 : it->second[0].line;
    }

    void reject_unknown() {
        for (const auto& [key, occs] : entries) {
            if (std::find(consumed.begin(), consumed.end(), key) == consumed.end())
                for (const auto& o : occs) errors.push_back({o.line, key, "unknown key"});
        }
    }
};

CoeffMode parse_mode(Reader& r, const std::string& key, CoeffMode dflt) {
    std::string s;
    if (!r.get(key, s)) return dflt;
    if (s == "constant") return CoeffMode::Constant;
    if (s == "random") return CoeffMode::Random;
    r.errors.push_back({r.line_of(key), key, "expected constant|random"});
    return dflt;
}

} // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult res;
    Reader r(res.errors);

    // tokenize
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        std::string s = raw;
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            res.errors.push_back({line, "", "expected key = value"});
            continue;
        }
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) {
            res.errors.push_back({line, "", "empty key"});
            continue;
        }
        r.entries[key].push_back({line, value});
    }

    ExperimentConfig c;
    bool energy_seed_given = false;

    r.get("seed", c.seed);
    r.get("output.dir", c.output_dir);

    r.get("energy.lambda", c.lambda);
    r.get("energy.p", c.p);
    r.get("energy.m", c.m);
    r.get("energy.n", c.n);
    r.get("energy.coeff_resolution", c.coeff_resolution);
    {
        std::uint64_t es = 0;
        if (r.get("energy.seed", es)) {
            c.energy_seed = es;
            energy_seed_given = true;
        }
    }
    c.a_mode = parse_mode(r, "energy.a_mode", c.a_mode);
    c.b_mode = parse_mode(r, "energy.b_mode", c.b_mode);

    {
        std::vector<double> ext;
        if (r.get_list("grid.extent", ext)) {
            if (ext.size() == 1) ext.assign(3, ext[0]);
            if (ext.size() == 2) ext.push_back(ext[1]);
            if (ext.size() > 3)
                res.errors.push_back({r.line_of("grid.extent"), "grid.extent", "at most 3 entries"});
            else
                for (std::size_t i = 0; i < 3; ++i) c.extent[i] = ext[std::min(i, ext.size() - 1)];
        }
    }
    r.get("grid.spacing", c.spacing);

    r.get("solver.epsilon_reg", c.epsilon_reg);
    r.get("solver.step0", c.step0);
    r.get("solver.backtrack", c.backtrack);
    r.get("solver.tol_energy", c.tol_energy);
    r.get("solver.max_iters", c.max_iters);
    r.get("solver.deterministic", c.deterministic);
    {
        double pv = 0.0;
        if (r.get("solver.pin_value", pv)) c.pin_value = pv;
    }
    r.get("solver.interface_width", c.interface_width);
    r.get("solver.interface_offset", c.interface_offset);

    r.get_list("experiment.radii", c.radii);
    r.get("experiment.L", c.L);
    r.get("experiment.t_infty", c.t_infty);
    r.get("experiment.a_steps", c.a_steps);
    r.get("experiment.R", c.R);
    r.get("experiment.c_cap", c.c_cap);
    r.get("experiment.slope_margin", c.slope_margin);
    r.get("experiment.validate_samples", c.validate_samples);

    r.reject_unknown();
    if (!energy_seed_given) c.energy_seed = c.seed;

    // admissibility constraints, each with the violated inequality named
    auto constraint = [&](bool ok, const std::string& key, const std::string& msg) {
        if (!ok) res.errors.push_back({r.line_of(key), key, msg});
    };
    constraint(c.lambda >= 1.0, "energy.lambda", "violates lambda >= 1");
    constraint(c.p > 1.0, "energy.p", "violates p > 1");
    constraint(c.n >= 2 && c.n <= 3, "energy.n", "violates 2 <= n <= 3");
    if (c.n >= 2) {
        double cap = static_cast<double>(c.n) / (c.n - 1);
        std::ostringstream os;
        os << "violates p < n/(n-1) = " << cap;
        constraint(c.p < cap, "energy.p", os.str());
    }
    constraint(c.m > c.p, "energy.m", "violates m > p");
    constraint(c.coeff_resolution >= 1, "energy.coeff_resolution", "violates coeff_resolution >= 1");
    constraint(c.spacing > 0.0, "grid.spacing", "violates spacing > 0");
    for (int i = 0; i < 3; ++i)
        constraint(c.extent[i] > 0.0, "grid.extent", "violates extent > 0");
    constraint(c.backtrack > 0.0 && c.backtrack < 1.0, "solver.backtrack", "violates 0 < backtrack < 1");
    constraint(c.tol_energy > 0.0, "solver.tol_energy", "violates tol_energy > 0");
    constraint(c.max_iters >= 1, "solver.max_iters", "violates max_iters >= 1");
    constraint(c.epsilon_reg >= 0.0, "solver.epsilon_reg", "violates epsilon_reg >= 0");
    constraint(c.interface_width > 0.0, "solver.interface_width", "violates interface_width > 0");
    constraint(c.L >= 2, "experiment.L", "violates L >= 2");
    constraint(c.t_infty > -1.0 && c.t_infty < 0.0, "experiment.t_infty", "violates -1 < t_infty < 0");
    constraint(c.a_steps >= 2, "experiment.a_steps", "violates a_steps >= 2");
    constraint(c.R >= 1.0, "experiment.R", "violates R >= 1");
    constraint(c.validate_samples >= 1, "experiment.validate_samples", "violates validate_samples >= 1");
    {
        bool ascending = true;
        for (std::size_t i = 0; i + 1 < c.radii.size(); ++i)
            if (!(c.radii[i] < c.radii[i + 1])) ascending = false;
        constraint(!c.radii.empty() && c.radii[0] > 0.0 && ascending, "experiment.radii",
                   "violates: radii must be positive and strictly increasing");
    }

    if (res.errors.empty()) res.config = c;
    return res;
}

ParseResult parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult res;
        res.errors.push_back({0, "", "cannot open config file: " + path});
        return res;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "seed = " << c.seed << "\n";
    os << "output.dir = " << c.output_dir << "\n";
    os << "energy.lambda = " << fmt_double(c.lambda) << "\n";
    os << "energy.p = " << fmt_double(c.p) << "\n";
    os << "energy.m = " << fmt_double(c.m) << "\n";
    os << "energy.n = " << c.n << "\n";
    os << "energy.coeff_resolution = " << c.coeff_resolution << "\n";
    os << "energy.seed = " << c.energy_seed << "\n";
    os << "energy.a_mode = " << (c.a_mode == CoeffMode::Random ? "random" : "constant") << "\n";
    os << "energy.b_mode = " << (c.b_mode == CoeffMode::Random ? "random" : "constant") << "\n";
    os << "grid.extent = " << fmt_double(c.extent[0]) << "," << fmt_double(c.extent[1]) << ","
       << fmt_double(c.extent[2]) << "\n";
    os << "grid.spacing = " << fmt_double(c.spacing) << "\n";
    os << "solver.epsilon_reg = " << fmt_double(c.epsilon_reg) << "\n";
    os << "solver.step0 = " << fmt_double(c.step0) << "\n";
    os << "solver.backtrack = " << fmt_double(c.backtrack) << "\n";
    os << "solver.tol_energy = " << fmt_double(c.tol_energy) << "\n";
    os << "solver.max_iters = " << c.max_iters << "\n";
    os << "solver.deterministic = " << (c.deterministic ? "true" : "false") << "\n";
    if (c.pin_value) os << "solver.pin_value = " << fmt_double(*c.pin_value) << "\n";
    os << "solver.interface_width = " << fmt_double(c.interface_width) << "\n";
    os << "solver.interface_offset = " << fmt_double(c.interface_offset) << "\n";
    os << "experiment.radii = ";
    for (std::size_t i = 0; i < c.radii.size(); ++i)
        os << (i ? "," : "") << fmt_double(c.radii[i]);
    os << "\n";
    os << "experiment.L = " << c.L << "\n";
    os << "experiment.t_infty = " << fmt_double(c.t_infty) << "\n";
    os << "experiment.a_steps = " << c.a_steps << "\n";
    os << "experiment.R = " << fmt_double(c.R) << "\n";
    os << "experiment.c_cap = " << fmt_double(c.c_cap) << "\n";
    os << "experiment.slope_margin = " << fmt_double(c.slope_margin) << "\n";
    os << "experiment.validate_samples = " << c.validate_samples << "\n";
    return os.str();
}

EnergySpec spec_from_config(const ExperimentConfig& c) {
    EnergyParams params(c.lambda, c.p, c.m, c.n);
    return EnergySpec::seeded(params, c.coeff_resolution, c.energy_seed, c.a_mode, c.b_mode);
}

Grid grid_from_config(const ExperimentConfig& c) {
    return Grid(c.n, c.extent, c.spacing);
}

SolveOptions solve_options_from_config(const ExperimentConfig& c) {
    SolveOptions o;
    o.epsilon_reg = c.epsilon_reg;
    o.step0 = c.step0;
    o.backtrack = c.backtrack;
    o.tol_energy = c.tol_energy;
    o.max_iters = c.max_iters;
    o.deterministic = c.deterministic;
    if (c.pin_value) o.pin = PinConstraint{{0.0, 0.0, 0.0}, *c.pin_value};
    return o;
}

} // namespace gldens
