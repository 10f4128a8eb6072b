// Python bindings for the main operations: energy evaluation and
// validation, lattice fields and measures, the constrained solver, 1D
// profiles, competitor constructions, the measure recursion, and the
// density/growth reports.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gldens/competitors.hpp"
#include "gldens/config.hpp"
#include "gldens/degiorgi.hpp"
#include "gldens/density.hpp"
#include "gldens/energy.hpp"
#include "gldens/grid.hpp"
#include "gldens/heteroclinic.hpp"
#include "gldens/minimize.hpp"

namespace py = pybind11;
using namespace gldens;

namespace {

Point to_point(const std::vector<double>& v) {
    Point p{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < v.size() && i < 3; ++i) p[i] = v[i];
    return p;
}

} // namespace

PYBIND11_MODULE(_gldens, m) {
    m.doc() = "Degenerate Ginzburg-Landau toolkit: constrained minimizers, competitors, "
              "level-set density measurements";

    py::class_<EnergyParams>(m, "EnergyParams")
        .def(py::init<double, double, double, int>(), py::arg("lambda_"), py::arg("p"), py::arg("m"),
             py::arg("n"))
        .def_readonly("lambda_", &EnergyParams::lambda)
        .def_readonly("p", &EnergyParams::p)
        .def_readonly("m", &EnergyParams::m)
        .def_readonly("n", &EnergyParams::n)
        .def("admissible", &EnergyParams::admissible)
        .def("admissibility_errors", &EnergyParams::admissibility_errors);

    py::class_<EnergySpec>(m, "EnergySpec")
        .def_static("canonical", &EnergySpec::canonical, py::arg("params"))
        .def_static(
            "seeded",
            [](const EnergyParams& params, int resolution, std::uint64_t seed) {
                return EnergySpec::seeded(params, resolution, seed);
            },
            py::arg("params"), py::arg("resolution"), py::arg("seed"))
        .def_property_readonly("params", [](const EnergySpec& s) { return s.params; })
        .def(
            "dirichlet",
            [](const EnergySpec& s, const std::vector<double>& xi, double tau,
               const std::vector<double>& x) { return s.dirichlet(to_point(xi), tau, to_point(x)); },
            py::arg("xi"), py::arg("tau"), py::arg("x"))
        .def(
            "well",
            [](const EnergySpec& s, double tau, const std::vector<double>& x) {
                return s.well(tau, to_point(x));
            },
            py::arg("tau"), py::arg("x"));

    m.def(
        "validate_spec",
        [](const EnergySpec& spec, int samples, std::uint64_t seed) {
            ValidationReport rep = validate_spec(spec, samples, seed);
            py::dict out;
            out["samples"] = rep.samples;
            out["ok"] = rep.ok();
            out["violations"] = rep.violations.size();
            out["A"] = rep.count('A');
            out["B"] = rep.count('B');
            out["C"] = rep.count('C');
            return out;
        },
        py::arg("spec"), py::arg("samples") = 10000, py::arg("seed") = 1);

    py::class_<Grid>(m, "Grid")
        .def(py::init([](int n, double half_width, double spacing) {
                 return Grid::cube(n, half_width, spacing);
             }),
             py::arg("n"), py::arg("half_width"), py::arg("spacing"))
        .def_readonly("dim", &Grid::dim)
        .def_readonly("spacing", &Grid::spacing)
        .def_property_readonly("dims",
                               [](const Grid& g) {
                                   return std::vector<int>(g.dims.begin(), g.dims.begin() + g.dim);
                               })
        .def("cell_count", &Grid::cell_count)
        .def("center", [](const Grid& g, std::size_t c) {
            Point x = g.center(c);
            return std::vector<double>(x.begin(), x.begin() + g.dim);
        });

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init([](const Grid& g, double fill) { return ScalarField(g, fill); }), py::arg("grid"),
             py::arg("fill") = 0.0)
        .def_static(
            "from_values",
            [](const Grid& g, const std::vector<double>& vals) {
                ScalarField f(g);
                if (vals.size() != f.values.size()) throw std::invalid_argument("value count mismatch");
                f.values = vals;
                return f;
            },
            py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", [](const ScalarField& f) { return f.grid; })
        .def_property_readonly("values", [](const ScalarField& f) { return f.values; });

    m.def("planar_interface", &planar_interface, py::arg("grid"), py::arg("width"),
          py::arg("offset") = 0.0);
    m.def(
        "ball_measure",
        [](const Grid& g, const std::vector<double>& center, double R) {
            return measure(ball_mask(g, to_point(center), R));
        },
        py::arg("grid"), py::arg("center"), py::arg("R"));
    m.def(
        "superlevel_measure",
        [](const ScalarField& f, double t) { return measure(superlevel_mask(f, t)); }, py::arg("field"),
        py::arg("t"));
    m.def(
        "total_energy",
        [](const EnergySpec& spec, const ScalarField& f) { return total_energy(spec, f); },
        py::arg("spec"), py::arg("field"));

    m.def(
        "minimize",
        [](const EnergySpec& spec, const ScalarField& init, double tol_energy, int max_iters,
           std::optional<std::pair<std::vector<double>, double>> pin) {
            SolveOptions opts;
            opts.tol_energy = tol_energy;
            opts.max_iters = max_iters;
            if (pin) opts.pin = PinConstraint{to_point(pin->first), pin->second};
            auto [field, trace] = minimize(spec, init, interior_mask(init.grid, 1), opts);
            py::dict tr;
            tr["iterations"] = trace.iterations;
            tr["converged"] = trace.converged;
            tr["energy"] = trace.energy;
            return py::make_tuple(field, tr);
        },
        py::arg("spec"), py::arg("init"), py::arg("tol_energy") = 1e-8, py::arg("max_iters") = 2000,
        py::arg("pin") = std::nullopt);

    py::class_<Profile1D>(m, "Profile1D")
        .def_readonly("xs", &Profile1D::xs)
        .def_readonly("us", &Profile1D::us)
        .def_readonly("hit_x_budget", &Profile1D::hit_x_budget)
        .def("value", &Profile1D::value, py::arg("x"))
        .def("max_x", &Profile1D::max_x);

    m.def("quadrature_profile", &quadrature_profile, py::arg("p"), py::arg("m"), py::arg("u_max"),
          py::arg("du"), py::arg("x_budget") = 1e9);
    m.def("profile_position", &profile_position, py::arg("p"), py::arg("m"), py::arg("u"));
    m.def(
        "decay_classify",
        [](const Profile1D& prof) {
            DecayReport rep = decay_classify(prof);
            py::dict out;
            out["class"] = to_string(rep.cls);
            out["exponent"] = rep.exponent;
            out["rss_poly"] = rep.rss_poly;
            out["rss_exp"] = rep.rss_exp;
            out["note"] = rep.note;
            return out;
        },
        py::arg("profile"));

    py::class_<IterationSchedule>(m, "IterationSchedule")
        .def(py::init<double, int>(), py::arg("t_limit"), py::arg("L"))
        .def_property_readonly("R", &IterationSchedule::R)
        .def("level", &IterationSchedule::level, py::arg("k"))
        .def("radius", &IterationSchedule::radius, py::arg("k"));

    py::class_<Competitor>(m, "Competitor")
        .def("value_at_radius", &Competitor::value_at_radius, py::arg("r"))
        .def(
            "value",
            [](const Competitor& comp, const std::vector<double>& x) {
                return comp.value(to_point(x), static_cast<int>(std::min<std::size_t>(x.size(), 3)));
            },
            py::arg("x"))
        .def("gradient_norm_at_radius", &Competitor::gradient_norm_at_radius, py::arg("r"))
        .def("rasterize", &Competitor::rasterize, py::arg("grid"));

    m.def("radial_shell", &radial_shell, py::arg("R"));
    m.def("plateau_ramp", &plateau_ramp, py::arg("schedule"), py::arg("k"),
          py::arg("shell_radius") = std::nullopt);
    m.def("paraboloid_cap", &paraboloid_cap, py::arg("a"), py::arg("h"), py::arg("R"));
    m.def("cap_height", &cap_height, py::arg("params"), py::arg("R"));
    m.def("cap_height_strict", &cap_height_strict, py::arg("params"), py::arg("R"));

    m.def(
        "run_recursion",
        [](double beta0, double C, double p, int n, int k_max) {
            IterationTrace tr = run_recursion(beta0, C, p, n, k_max);
            py::dict out;
            out["beta"] = tr.beta;
            out["verdict"] = to_string(tr.verdict);
            return out;
        },
        py::arg("beta0"), py::arg("C"), py::arg("p"), py::arg("n"), py::arg("k_max") = 400);
    m.def("vanishing_threshold", [](double C, double p, int n) { return vanishing_threshold(C, p, n); },
          py::arg("C"), py::arg("p"), py::arg("n"));
    m.def("threshold_ansatz", &threshold_ansatz, py::arg("p"), py::arg("n"));

    m.def(
        "density_curve",
        [](const EnergySpec& spec, const ScalarField& field, const std::vector<double>& center,
           const std::vector<double>& radii) {
            DensityCurve curve = density_curve(spec, field, to_point(center), radii);
            py::dict out;
            out["radii"] = curve.radii;
            out["pos_measure"] = curve.pos_measure;
            out["neg_measure"] = curve.neg_measure;
            out["energy"] = curve.energy;
            return out;
        },
        py::arg("spec"), py::arg("field"), py::arg("center"), py::arg("radii"));
    m.def(
        "seed_ball_check",
        [](const ScalarField& field, const std::vector<double>& center, double r, double eps) {
            return seed_ball_check(field, to_point(center), r, eps);
        },
        py::arg("field"), py::arg("center"), py::arg("r"), py::arg("eps"));

    m.attr("__version__") = "0.1.0";
}
