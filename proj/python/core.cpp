#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frachelm/config.hpp"
#include "frachelm/errors.hpp"
#include "frachelm/kernel.hpp"
#include "frachelm/numerics.hpp"
#include "frachelm/pipeline.hpp"
#include "frachelm/specfun.hpp"

namespace py = pybind11;
namespace fh = frachelm;
namespace sf = frachelm::specfun;

namespace {

template <class T, class Fn>
py::array_t<T> map_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& r, Fn&& fn) {
    py::array_t<T> out(r.request().shape);
    const double* in = r.data();
    T* dst = out.mutable_data();
    const auto n = r.size();
    for (py::ssize_t i = 0; i < n; ++i) dst[i] = fn(in[i]);
    return out;
}

py::dict grid_dict(const fh::Grid& g) {
    py::dict d;
    d["x_max"] = g.x_max;
    d["n"] = g.n;
    d["h"] = g.h;
    d["axis"] = g.axis;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fractional Helmholtz kernel, Lippmann-Schwinger solver and factorization-method imaging";
    m.attr("__version__") = fh::version();

    py::register_exception<fh::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<fh::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<fh::PoleError>(m, "PoleError", PyExc_ArithmeticError);
    py::register_exception<fh::SingularSystemError>(m, "SingularSystemError", PyExc_ArithmeticError);
    py::register_exception<fh::QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
    py::register_exception<fh::IoError>(m, "IoError", PyExc_OSError);

    // Special functions.
    m.def("bessel_j", &sf::bessel_j, py::arg("order"), py::arg("x"));
    m.def("bessel_y", &sf::bessel_y, py::arg("order"), py::arg("x"));
    m.def("hankel1_0", &sf::hankel1_0, py::arg("x"));
    m.def("struve_h0", &sf::struve_h0, py::arg("x"));
    m.def("struve_k0", &sf::struve_k0, py::arg("x"));
    m.def("bessel_k0", &sf::bessel_k0, py::arg("x"));
    m.def("bessel_k1", &sf::bessel_k1, py::arg("x"));
    m.def("gamma", &sf::gamma_fn, py::arg("x"));
    m.def("hyp1f1", [](double a, double b, double x) { return sf::hyp1f1(a, b, x).value; });
    m.def("hyp2f1", [](double a, double b, double c, double x) { return sf::hyp2f1(a, b, c, x).value; });

    // Kernel.
    py::class_<fh::KernelParams>(m, "KernelParams")
        .def(py::init(&fh::KernelParams::make), py::arg("s"), py::arg("k"), py::arg("d") = 2)
        .def_readonly("s", &fh::KernelParams::s)
        .def_readonly("k", &fh::KernelParams::k)
        .def_readonly("d", &fh::KernelParams::d)
        .def_readonly("m", &fh::KernelParams::m)
        .def_readonly("special", &fh::KernelParams::special)
        .def("__repr__", [](const fh::KernelParams& p) {
            return "KernelParams(s=" + std::to_string(p.s) + ", k=" + std::to_string(p.k) +
                   ", d=" + std::to_string(p.d) + ", m=" + std::to_string(p.m) + ")";
        });

    m.def("helm_fundamental", &fh::helm_fundamental, py::arg("d"), py::arg("k"), py::arg("r"));
    m.def("spectral_F", &fh::spectral_F, py::arg("rho"), py::arg("params"));
    m.def(
        "phi_delta",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& r, double s, double k, int d) {
            const auto p = fh::KernelParams::make(s, k, d);
            return map_array<double>(r, [&](double x) { return fh::phi_delta(x, p); });
        },
        py::arg("r"), py::arg("s"), py::arg("k"), py::arg("d") = 2, "Phi^Delta at radii r (rotated-contour route)");
    m.def(
        "phi",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& r, double s, double k, int d) {
            const auto p = fh::KernelParams::make(s, k, d);
            return map_array<std::complex<double>>(r, [&](double x) { return fh::phi_full(x, p); });
        },
        py::arg("r"), py::arg("s"), py::arg("k"), py::arg("d") = 2, "Full kernel Phi_{s,k} at radii r");
    m.def(
        "cell_mass",
        [](double s, double k, double h, const std::string& rule) -> std::complex<double> {
            const auto p = fh::KernelParams::make(s, k, 2);
            if (rule == "square") return fh::square_cell_mass(p, h);
            if (rule == "asymptotic") return fh::singular_cell_mass(p, h);
            if (rule == "disc_integral") {
                fh::KernelOptions o;
                o.mass = fh::CellMassRule::disc_integral;
                return fh::KernelEvaluator(p, o, h, 1.0).cell_mass();
            }
            throw fh::DomainError("cell_mass: rule must be square, asymptotic or disc_integral");
        },
        py::arg("s"), py::arg("k"), py::arg("h"), py::arg("rule") = "square");

    // Numerics.
    m.def("svd", [](const fh::DenseMatrix& a) {
        const auto t = fh::svd(a);
        return py::make_tuple(t.U, t.S, t.V);
    }, "A = U diag(S) V^T with a plain transpose");
    m.def("lu_solve", &fh::lu_solve, py::arg("A"), py::arg("B"));

    // Configuration and pipeline.
    py::class_<fh::RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("s", &fh::RunConfig::s)
        .def_readwrite("k", &fh::RunConfig::k)
        .def_readwrite("x_max", &fh::RunConfig::x_max)
        .def_readwrite("N_x", &fh::RunConfig::N_x)
        .def_readwrite("N_inc", &fh::RunConfig::N_inc)
        .def_readwrite("noise", &fh::RunConfig::noise)
        .def_readwrite("seed", &fh::RunConfig::seed)
        .def_readwrite("threshold", &fh::RunConfig::threshold)
        .def_readwrite("sample_points", &fh::RunConfig::sample_points)
        .def_readwrite("sample_extent", &fh::RunConfig::sample_extent)
        .def_readwrite("schedule", &fh::RunConfig::schedule)
        .def_property_readonly("n_shapes", [](const fh::RunConfig& c) { return c.shapes.size(); })
        .def("to_json", [](const fh::RunConfig& c) { return fh::to_json(c).dump(); });
    m.def("parse_config", [](const std::string& text) { return fh::parse_config(text); }, py::arg("text"));

    m.def(
        "forward",
        [](const fh::RunConfig& cfg, double s) {
            fh::validate(cfg);
            fh::ForwardResult fr;
            {
                py::gil_scoped_release release;
                fr = fh::run_forward(cfg, s);
            }
            py::dict d;
            d["F"] = fr.farfield.F;
            d["angles"] = fr.farfield.angles.angles;
            d["unitarity"] = fr.unitarity;
            d["reciprocity"] = fr.reciprocity;
            d["N_supp"] = fr.ls.support.size();
            d["n"] = fr.medium.n;
            d["grid"] = grid_dict(fr.grid);
            return d;
        },
        py::arg("config"), py::arg("s"), "Far-field matrix F(i, j) of the configured medium");

    m.def(
        "indicator_map",
        [](const fh::DenseMatrix& F, double s, const fh::RunConfig& cfg) {
            if (F.rows() != F.cols() || F.rows() != cfg.N_inc)
                throw fh::DomainError("indicator_map: F must be N_inc x N_inc");
            fh::FarFieldMatrix fm;
            fm.F = F;
            fm.angles = fh::make_angles(cfg.N_inc);
            fm.params = fh::KernelParams::make(s, cfg.k, 2);
            fh::ReconstructResult r;
            {
                py::gil_scoped_release release;
                if (cfg.shapes.empty()) {
                    r = fh::reconstruct(fm, cfg);
                } else {
                    const fh::Grid grid = fh::build_grid(cfg.x_max, cfg.N_x, 2);
                    const fh::Medium medium = fh::make_medium(grid, cfg.shapes);
                    r = fh::reconstruct(fm, cfg, &grid, &medium);
                }
            }
            py::dict d;
            d["W"] = r.map.W;
            d["W_normalized"] = r.map.W_normalized;
            d["grid"] = grid_dict(r.map.grid);
            d["components"] = r.components;
            d["floor"] = r.floor;
            if (r.has_truth) {
                d["jaccard"] = r.metrics.jaccard;
                d["area_ratio"] = r.metrics.area_ratio;
            }
            return d;
        },
        py::arg("F"), py::arg("s"), py::arg("config"));

    m.def(
        "validate_direct",
        [](const fh::RunConfig& cfg, double s, bool out_of_theory) {
            std::vector<fh::ValidationRow> rows;
            {
                py::gil_scoped_release release;
                rows = fh::validate_direct_schedule(cfg, s, out_of_theory);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["test"] = r.test;
                d["alpha"] = r.alpha;
                d["N_x"] = r.N_x;
                d["h"] = r.h;
                d["err_L2"] = r.errors.err_L2;
                d["err_Linf"] = r.errors.err_Linf;
                out.append(d);
            }
            return out;
        },
        py::arg("config"), py::arg("s"), py::arg("out_of_theory") = false);
}
