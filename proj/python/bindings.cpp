// Python bindings. Structured results cross the boundary as JSON text and
// are decoded on the Python side (see mds22/__init__.py).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mds22/constructions.hpp"
#include "mds22/formulas.hpp"
#include "mds22/repair.hpp"
#include "mds22/search.hpp"

namespace py = pybind11;
using namespace mds22;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Optimal-repair (n, n-2, 2) MDS array codes";

    // Messages start with the error code name, e.g. "OutOfRange: ...".
    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def("beta_opt", &beta_opt, py::arg("q"), py::arg("n"));
    m.def("gamma_opt", &gamma_opt, py::arg("q"), py::arg("n"));
    m.def("verdict_json", [](int q, int n) { return to_json(verdict(q, n)); }, py::arg("q"), py::arg("n"));
    m.def(
        "construct_json",
        [](int q, int n, const std::string& metric) { return to_json(construct_optimal(q, n, parse_metric(metric))); },
        py::arg("q"), py::arg("n"), py::arg("metric"));
    m.def(
        "verify_json", [](const std::string& code) { return from_json(code).is_mds(); }, py::arg("code"));
    m.def(
        "cost_json",
        [](const std::string& code, const std::string& method) {
            const ArrayCode c = from_json(code);
            py::gil_scoped_release release;
            return to_json(cost_report(c, parse_method(method)));
        },
        py::arg("code"), py::arg("method") = "auto");
    m.def(
        "search_witness",
        [](const std::string& family, unsigned q) { return search_witness(parse_witness_family(family), q); },
        py::arg("family"), py::arg("q"));
    m.def(
        "exhaust_json",
        [](const std::string& name, const std::string& checkpoint) {
            SearchOptions opt;
            opt.checkpoint = checkpoint;
            py::gil_scoped_release release;
            if (name == "n5q5") return to_json(exhaust_n5_q5(opt));
            if (name == "n10q8") return to_json(exhaust_n10(8, opt));
            if (name == "n10q9") return to_json(exhaust_n10(9, opt));
            if (name == "n9q8") return to_json(exhaust_n9_q8(opt));
            raise(Errc::InvalidArgument, "unknown search '" + name + "'");
        },
        py::arg("name"), py::arg("checkpoint") = "");
}
