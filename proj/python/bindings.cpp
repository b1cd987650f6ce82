#include "sixv/exactpf.hpp"
#include "sixv/limits.hpp"
#include "sixv/samplers.hpp"
#include "sixv/stats.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sixv;

namespace {

PrecisionCtx prec(int bits) {
    PrecisionCtx p;
    p.mantissa_bits = bits;
    return p;
}

std::string report(const VerifyReport& r) { return r.to_json().dump(); }

}  // namespace

PYBIND11_MODULE(_sixv, m) {
    m.doc() = "six-vertex model with domain wall boundary conditions";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
    py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
    py::register_exception<UnsupportedDeltaOne>(m, "UnsupportedDeltaOne", PyExc_ValueError);
    py::register_exception<ErgodicityError>(m, "ErgodicityError", PyExc_ValueError);

    py::enum_<Phase>(m, "Phase")
        .value("Ferro", Phase::Ferro)
        .value("Disordered", Phase::Disordered)
        .value("AntiFerro", Phase::AntiFerro)
        .value("Boundary", Phase::Boundary);

    py::class_<WeightTriple>(m, "WeightTriple")
        .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"))
        .def_readonly("a", &WeightTriple::a)
        .def_readonly("b", &WeightTriple::b)
        .def_readonly("c", &WeightTriple::c)
        .def_property_readonly("delta", &WeightTriple::delta);

    py::class_<PhaseParams>(m, "PhaseParams")
        .def(py::init<>())
        .def_readwrite("phase", &PhaseParams::phase)
        .def_readwrite("t", &PhaseParams::t)
        .def_readwrite("gamma", &PhaseParams::gamma)
        .def_readwrite("scale", &PhaseParams::scale)
        .def_readwrite("c_sign", &PhaseParams::c_sign);

    m.def("delta", &delta);
    m.def("classify_phase", &classify_phase, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("eps") = 1e-9);
    m.def("params_from_weights", &params_from_weights, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("eps") = 1e-9);
    m.def("weights_from_params", &weights_from_params);

    m.def("enumerate_dwbc", [](int n, const WeightTriple& w) {
        auto e = enumerate_dwbc(n, w);
        std::vector<std::vector<Row>> tris;
        for (auto& c : e.configs) tris.push_back(triangle_from_configuration(c).rows);
        return py::make_tuple(tris, e.weights, e.Z);
    });
    m.def("count_dwbc_transfer", &count_dwbc_transfer);

    m.def("ztilde_k1", [](int n, std::complex<double> xi, const PhaseParams& p, int bits) {
        return ztilde_k1(n, xi, p, prec(bits));
    }, py::arg("n"), py::arg("xi"), py::arg("p"), py::arg("bits") = 256);
    m.def("ztilde_k", [](int n, const std::vector<std::complex<double>>& xi, const PhaseParams& p, int bits) {
        return ztilde_k(n, xi, p, prec(bits));
    }, py::arg("n"), py::arg("xi"), py::arg("p"), py::arg("bits") = 256);
    m.def("lambda11_distribution", [](int n, const PhaseParams& p, int bits) {
        return lambda11_distribution(n, p, prec(bits));
    }, py::arg("n"), py::arg("p"), py::arg("bits") = 256);

    m.def("gue_constants", py::overload_cast<double, double, double>(&gue_constants));
    m.def("stochastic_params", &stochastic_params);
    m.def("limit_constants", [](double a, double b, double c) {
        auto lc = limit_constants(a, b, c);
        py::dict d;
        d["m"] = lc.m_const ? py::cast(*lc.m_const) : py::none();
        d["s"] = lc.s_const ? py::cast(*lc.s_const) : py::none();
        d["b1"] = lc.b1 ? py::cast(*lc.b1) : py::none();
        d["b2"] = lc.b2 ? py::cast(*lc.b2) : py::none();
        d["mallows_q"] = lc.mallows_q ? py::cast(*lc.mallows_q) : py::none();
        d["sigma"] = lc.sigma ? py::cast(*lc.sigma) : py::none();
        return d;
    });
    m.def("expansion_predict", &expansion_predict);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed") = 1, py::arg("stream") = 0)
        .def("uniform", &Rng::uniform);

    m.def("sample_dwbc_exact", [](int n, const WeightTriple& w, Rng& rng) {
        return triangle_from_configuration(sample_dwbc_exact(n, w, rng)).rows;
    });
    m.def("sample_dwbc_mcmc", [](int n, const WeightTriple& w, long sweeps, long burn_in, Rng& rng) {
        ChainConfig ch;
        ch.sweeps = sweeps;
        ch.burn_in = burn_in;
        return triangle_from_configuration(sample_dwbc_mcmc(n, w, ch, rng)).rows;
    });
    m.def("sample_stochastic_6v", [](int k, double b1, double b2, Rng& rng) {
        return sample_stochastic_6v(k, default_stochastic_window(k, b2), b1, b2, rng);
    });
    m.def("sample_mallows_finite", &sample_mallows_finite);
    m.def("sample_qshuffle_prefix", &sample_qshuffle_prefix);
    m.def("sample_gue_corners", &sample_gue_corners);
    m.def("sample_eta", &sample_eta);

    m.def("_verify_gaussian_limit", [](const WeightTriple& w, const std::vector<int>& grid) {
        return report(verify_gaussian_limit(w, grid));
    });
    m.def("_verify_geometric_limit", [](const WeightTriple& w, const std::vector<int>& grid, double thr) {
        return report(verify_geometric_limit(w, grid, thr));
    });
    m.def("_verify_expansions", [](const std::string& theorem, const PhaseParams& p,
                                   const std::vector<std::complex<double>>& xi, const std::vector<int>& grid) {
        return report(verify_expansions(expansion_phase(theorem), p, xi, grid));
    });
}
