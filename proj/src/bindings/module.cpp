// Python bindings for the main operations.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mflift/analysis.hpp"
#include "mflift/harness.hpp"
#include "mflift/legendre.hpp"
#include "mflift/synth.hpp"

namespace py = pybind11;
using namespace mflift;

namespace {

std::vector<double> to_vec(const py::array_t<double, py::array::c_style |
                                                         py::array::forcecast>& a) {
    return std::vector<double>(a.data(), a.data() + a.size());
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict curve_dict(const SpectrumCurve& s) {
    py::dict d;
    d["estimator"] = s.estimator;
    d["d"] = s.dim;
    d["gamma"] = s.gamma;
    d["delta"] = s.delta;
    d["j1"] = s.j1;
    d["j2"] = s.j2;
    d["h"] = to_array(s.curve.grid());
    d["D"] = to_array(s.curve.values);
    return d;
}

} // namespace

PYBIND11_MODULE(_mflift, m) {
    m.doc() = "wavelet-leader multifractal analysis (C++ core)";
#ifdef MFLIFT_VERSION
    m.attr("__version__") = MFLIFT_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    py::class_<WaveletFilter>(m, "WaveletFilter")
        .def_readonly("lowpass", &WaveletFilter::lowpass)
        .def_readonly("vanishing_moments", &WaveletFilter::vanishing_moments)
        .def("highpass", &WaveletFilter::highpass);
    m.def("daubechies_filter", &daubechies_filter, py::arg("n"));

    py::class_<CoefficientPyramid>(m, "CoefficientPyramid")
        .def_property_readonly("dim",
                               [](const CoefficientPyramid& p) { return p.dim; })
        .def("scales",
             [](const CoefficientPyramid& p) {
                 std::vector<int> s;
                 for (const auto& lv : p.levels) s.push_back(lv.scale);
                 return s;
             })
        .def("band",
             [](const CoefficientPyramid& p, int scale, int band) {
                 const auto* lv = p.find(scale);
                 if (lv == nullptr) throw py::index_error("no such scale");
                 return to_array(lv->bands.at(static_cast<std::size_t>(band)));
             },
             py::arg("scale"), py::arg("band") = 0);

    py::class_<LeaderPyramid>(m, "LeaderPyramid")
        .def_property_readonly("dim",
                               [](const LeaderPyramid& p) { return p.dim; })
        .def("scales",
             [](const LeaderPyramid& p) {
                 std::vector<int> s;
                 for (const auto& lv : p.levels) s.push_back(lv.scale);
                 return s;
             })
        .def("values",
             [](const LeaderPyramid& p, int scale) {
                 const auto* lv = p.find(scale);
                 if (lv == nullptr) throw py::index_error("no such scale");
                 return to_array(lv->value);
             },
             py::arg("scale"))
        .def("n_valid", [](const LeaderPyramid& p, int scale) {
            const auto* lv = p.find(scale);
            if (lv == nullptr) throw py::index_error("no such scale");
            return lv->n_valid;
        });

    m.def(
        "dwt1d",
        [](const py::array_t<double, py::array::c_style |
                                         py::array::forcecast>& sig,
           int nvm, int levels) {
            const auto filter = daubechies_filter(nvm);
            const auto v = to_vec(sig);
            const int lv = levels > 0
                               ? levels
                               : default_levels(static_cast<int>(v.size()),
                                                filter);
            return dwt1d(v, filter, lv);
        },
        py::arg("signal"), py::arg("nvm") = 3, py::arg("levels") = 0);

    m.def(
        "dwt2d",
        [](const py::array_t<double, py::array::c_style |
                                         py::array::forcecast>& img,
           int nvm, int levels) {
            if (img.ndim() != 2) throw py::value_error("expected a 2D array");
            const int rows = static_cast<int>(img.shape(0));
            const int cols = static_cast<int>(img.shape(1));
            const auto filter = daubechies_filter(nvm);
            const int lv = levels > 0 ? levels
                                      : default_levels(rows, cols, filter);
            std::vector<double> v(img.data(), img.data() + img.size());
            return dwt2d(v, rows, cols, filter, lv);
        },
        py::arg("image"), py::arg("nvm") = 3, py::arg("levels") = 0);

    m.def(
        "leaders",
        [](const CoefficientPyramid& pyr, bool mask_wrapped) {
            LeaderOptions opts;
            opts.mask_wrapped = mask_wrapped;
            return compute_leaders(pyr, opts);
        },
        py::arg("pyramid"), py::arg("mask_wrapped") = false);

    m.def("gen_dwc", &gen_dwc, py::arg("depth"), py::arg("w"));
    m.def("threshold_dwc", &threshold_dwc, py::arg("pyramid"),
          py::arg("theta"));
    m.def(
        "gen_mrw1d",
        [](std::size_t n, double H, double lambda2, std::uint64_t seed) {
            return to_array(gen_mrw1d(n, H, lambda2, seed));
        },
        py::arg("n"), py::arg("H"), py::arg("lambda2"), py::arg("seed"));
    m.def(
        "gen_mrw2d",
        [](int rows, int cols, double H, double lambda2, std::uint64_t seed) {
            const Image img = gen_mrw2d(rows, cols, H, lambda2, seed);
            py::array_t<double> out({rows, cols});
            std::copy(img.pix.begin(), img.pix.end(), out.mutable_data());
            return out;
        },
        py::arg("rows"), py::arg("cols"), py::arg("H"), py::arg("lambda2"),
        py::arg("seed"));
    m.def(
        "gen_levy_brownian",
        [](std::size_t n, double alpha, std::uint64_t seed) {
            return to_array(gen_levy_brownian(n, alpha, seed));
        },
        py::arg("n"), py::arg("alpha"), py::arg("seed"));

    m.def(
        "theory_spectrum",
        [](const std::string& kind, py::kwargs kw) {
            ProcessSpec spec;
            spec.kind = process_kind_from_string(kind);
            if (kw.contains("alpha")) spec.alpha = kw["alpha"].cast<double>();
            if (kw.contains("w")) spec.w = kw["w"].cast<double>();
            if (kw.contains("theta")) spec.theta = kw["theta"].cast<double>();
            if (kw.contains("H")) spec.H = kw["H"].cast<double>();
            if (kw.contains("lambda2"))
                spec.lambda2 = kw["lambda2"].cast<double>();
            const TheorySpectrum th = theory(spec);
            return py::cpp_function(
                [th](double h) { return th.eval(h); });
        },
        py::arg("kind"));

    m.def(
        "analyze",
        [](py::object data, int nvm, int j1, int j2,
           const std::vector<double>& q_grid,
           const std::vector<double>& gammas,
           const std::vector<double>& deltas, double h_lo, double h_hi,
           double h_step, bool weighted, int threads) {
            AnalysisConfig cfg;
            cfg.nvm = nvm;
            cfg.j1 = j1;
            cfg.j2 = j2;
            cfg.q_grid = q_grid;
            cfg.gammas = gammas;
            cfg.deltas = deltas;
            cfg.h_lo = h_lo;
            cfg.h_hi = h_hi;
            if (h_step > 0) cfg.h_step = h_step;
            cfg.weighted = weighted;
            cfg.threads = threads;

            AnalysisResult res;
            if (py::isinstance<CoefficientPyramid>(data)) {
                res = analyze_pyramid(data.cast<const CoefficientPyramid&>(),
                                      cfg);
            } else {
                auto arr = data.cast<py::array_t<
                    double, py::array::c_style | py::array::forcecast>>();
                if (arr.ndim() == 1) {
                    res = analyze_signal(
                        std::span<const double>(arr.data(),
                                                static_cast<std::size_t>(
                                                    arr.size())),
                        cfg);
                } else if (arr.ndim() == 2) {
                    std::vector<double> v(arr.data(),
                                          arr.data() + arr.size());
                    res = analyze_image(v, static_cast<int>(arr.shape(0)),
                                        static_cast<int>(arr.shape(1)), cfg);
                } else {
                    throw py::value_error("expected 1D or 2D data");
                }
            }
            py::dict out;
            out["c10"] = res.centering.c10;
            out["h_mode"] = res.centering.h_mode;
            out["j1"] = res.j1;
            out["j2"] = res.j2;
            out["q"] = to_array(res.zeta.q_grid);
            out["zeta"] = to_array(res.zeta.zeta);
            out["legendre"] = curve_dict(res.legendre);
            out["envelope"] = curve_dict(res.envelope);
            py::list members;
            for (const auto& mcurve : res.members)
                members.append(curve_dict(mcurve));
            out["members"] = members;
            return out;
        },
        py::arg("data"), py::arg("nvm") = 3, py::arg("j1") = 0,
        py::arg("j2") = 0, py::arg("q_grid") = std::vector<double>{},
        py::arg("gammas") = std::vector<double>{},
        py::arg("deltas") = std::vector<double>{}, py::arg("h_lo") = 0.0,
        py::arg("h_hi") = 0.0, py::arg("h_step") = 0.0,
        py::arg("weighted") = false, py::arg("threads") = 0);

    m.def(
        "legendre_transform",
        [](const py::array_t<double>& h, const py::array_t<double>& v,
           const std::vector<double>& q, int d) {
            const GridFunction f = GridFunction::from_samples(
                std::vector<double>(h.data(), h.data() + h.size()),
                std::vector<double>(v.data(), v.data() + v.size()));
            return to_array(legendre_transform(f, q, d));
        },
        py::arg("h"), py::arg("values"), py::arg("q"), py::arg("d") = 1);

    m.def("analytic_double_parabola", &analytic_double_parabola,
          py::arg("gamma"), py::arg("h"));
}
