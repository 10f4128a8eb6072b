#include "gldens/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gldens {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

} // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field(const ScalarField& f, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    const Grid& g = f.grid;
    out << "# dim=" << g.dim << " dims=";
    for (int i = 0; i < g.dim; ++i) out << (i ? "," : "") << g.dims[i];
    out << " extent=";
    for (int i = 0; i < g.dim; ++i) out << (i ? "," : "") << fmt17(g.extent[i]);
    out << " spacing=" << fmt17(g.spacing) << "\n";
    for (double v : f.values) out << fmt17(v) << "\n";
}

ScalarField read_field(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field dump: " + path.string());
    std::string header;
    std::getline(in, header);
    if (header.rfind("# ", 0) != 0) throw std::runtime_error("field dump: missing header");

    int dim = 0;
    std::array<int, 3> dims{1, 1, 1};
    std::array<double, 3> extent{0.0, 0.0, 0.0};
    double spacing = 0.0;
    for (const std::string& tok : split(header.substr(2), ' ')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "dim") {
            dim = std::stoi(val);
        } else if (key == "dims") {
            auto parts = split(val, ',');
            for (std::size_t i = 0; i < parts.size() && i < 3; ++i) dims[i] = std::stoi(parts[i]);
        } else if (key == "extent") {
            auto parts = split(val, ',');
            for (std::size_t i = 0; i < parts.size() && i < 3; ++i) extent[i] = std::stod(parts[i]);
        } else if (key == "spacing") {
            spacing = std::stod(val);
        }
    }
    if (dim < 1 || dim > 3 || !(spacing > 0.0)) throw std::runtime_error("field dump: bad header");

    Grid g(dim, extent, spacing);
    for (int i = 0; i < dim; ++i)
        if (g.dims[i] != dims[i]) throw std::runtime_error("field dump: dims/extent/spacing mismatch");

    ScalarField f(g);
    for (std::size_t c = 0; c < f.values.size(); ++c) {
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("field dump: truncated values");
        f.values[c] = std::stod(line);
    }
    return f;
}

void write_mask_csv(const RegionMask& m, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    const Grid& g = m.grid;
    out << "# ";
    for (int i = 0; i < g.dim; ++i) out << "x" << i + 1 << ",";
    out << "member\n";
    for (std::size_t c = 0; c < m.member.size(); ++c) {
        Point x = g.center(c);
        for (int i = 0; i < g.dim; ++i) out << fmt17(x[i]) << ",";
        out << int(m.member[c]) << "\n";
    }
}

void write_trace_csv(const SolveTrace& tr, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "iteration,energy,step,max_update\n";
    out << "0," << fmt17(tr.energy.empty() ? 0.0 : tr.energy[0]) << ",,\n";
    for (std::size_t i = 0; i < tr.step.size(); ++i)
        out << i + 1 << "," << fmt17(tr.energy[i + 1]) << "," << fmt17(tr.step[i]) << ","
            << fmt17(tr.max_update[i]) << "\n";
}

void write_profile_csv(const Profile1D& prof, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    std::vector<double> res = first_integral_residual(prof, 1.0);
    out << "x,u,residual\n";
    for (std::size_t k = 0; k < prof.xs.size(); ++k) {
        out << fmt17(prof.xs[k]) << "," << fmt17(prof.us[k]) << ",";
        if (k >= 1 && k - 1 < res.size()) out << fmt17(res[k - 1]);
        out << "\n";
    }
}

void write_density_csv(const DensityCurve& curve, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "R,pos_measure,neg_measure,energy,clipped\n";
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
        out << fmt17(curve.radii[i]) << "," << fmt17(curve.pos_measure[i]) << ","
            << fmt17(curve.neg_measure[i]) << "," << fmt17(curve.energy[i]) << ","
            << (curve.clipped[i] ? 1 : 0) << "\n";
}

void write_svg_loglog(const std::filesystem::path& path, const std::string& title,
                      const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& series) {
    const int W = 640, H = 480, M = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [name, pts] : series)
        for (auto [x, y] : pts) {
            if (x <= 0.0 || y <= 0.0) continue;
            xmin = std::min(xmin, std::log10(x));
            xmax = std::max(xmax, std::log10(x));
            ymin = std::min(ymin, std::log10(y));
            ymax = std::max(ymax, std::log10(y));
        }
    if (xmin > xmax) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (ymin > ymax) {
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

    auto px = [&](double lx) { return M + (lx - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double ly) { return H - M - (ly - ymin) / (ymax - ymin) * (H - 2 * M); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::ofstream out = open_out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << " (log-log)</text>\n";
    out << "<rect x='" << M << "' y='" << M << "' width='" << W - 2 * M << "' height='" << H - 2 * M
        << "' fill='none' stroke='black'/>\n";
    int si = 0;
    for (const auto& [name, pts] : series) {
        const char* col = colors[si % 4];
        out << "<polyline fill='none' stroke='" << col << "' stroke-width='1.5' points='";
        for (auto [x, y] : pts)
            if (x > 0.0 && y > 0.0) out << px(std::log10(x)) << "," << py(std::log10(y)) << " ";
        out << "'/>\n";
        for (auto [x, y] : pts)
            if (x > 0.0 && y > 0.0)
                out << "<circle cx='" << px(std::log10(x)) << "' cy='" << py(std::log10(y))
                    << "' r='3' fill='" << col << "'/>\n";
        out << "<text x='" << W - M + 4 << "' y='" << M + 16 * (si + 1) << "' font-size='11' fill='"
            << col << "'>" << name << "</text>\n";
        ++si;
    }
    // corner labels of the data window
    out << "<text x='" << M << "' y='" << H - M + 18 << "' font-size='11'>10^" << xmin << "</text>\n";
    out << "<text x='" << W - M << "' y='" << H - M + 18 << "' text-anchor='end' font-size='11'>10^"
        << xmax << "</text>\n";
    out << "<text x='" << M - 4 << "' y='" << H - M << "' text-anchor='end' font-size='11'>10^" << ymin
        << "</text>\n";
    out << "<text x='" << M - 4 << "' y='" << M + 10 << "' text-anchor='end' font-size='11'>10^" << ymax
        << "</text>\n";
    out << "</svg>\n";
}

} // namespace gldens
