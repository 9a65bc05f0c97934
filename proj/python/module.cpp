#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "htau/cli.hpp"
#include "htau/gjv.hpp"
#include "htau/series_json.hpp"

namespace py = pybind11;
using namespace htau;

namespace {

// Results cross the boundary as JSON text; the Python side decodes them.
RunConfig config(int W, std::optional<int> mmax)
{
    RunConfig cfg;
    cfg.W = W;
    cfg.Mmax = mmax;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_htau, m)
{
    m.doc() = "Hurwitz numbers, intersection numbers and tau functions with exact rational arithmetic";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("hurwitz", [](int g, std::vector<int> parts) {
        return to_string(hurwitz_bruteforce(HurwitzIndex(g, std::move(parts)), 7).h);
    }, py::arg("g"), py::arg("parts"));

    m.def("hurwitz_series", [](int g, std::vector<int> parts) {
        const HurwitzIndex idx(g, std::move(parts));
        return to_string(extract_hurwitz(cutjoin_series(idx.d(), idx.m()), idx).h);
    }, py::arg("g"), py::arg("parts"));

    m.def("tbasis_json", [](int K, int W) {
        RunConfig cfg = config(W, std::nullopt);
        cfg.K = K;
        return tbasis_table(cfg).dump();
    }, py::arg("K"), py::arg("W"));

    m.def("intersections_json", [](int W, std::optional<int> mmax) {
        return intersections_table(config(W, mmax)).dump();
    }, py::arg("W") = 8, py::arg("mmax") = py::none());

    m.def("tau_json", [](const std::string& family, const std::string& c, int W) {
        return tau_dump(config(W, std::nullopt), family, UPoly::parse(c)).dump();
    }, py::arg("family") = "exponential", py::arg("c") = "0", py::arg("W") = 6);

    m.def("verify_json", [](int W) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : run_verify_suite(config(W, std::nullopt))) {
            out.push_back(r.to_json());
        }
        return out.dump();
    }, py::arg("W") = 8);
}
