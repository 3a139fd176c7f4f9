#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circlepack/actionspace.hpp"
#include "circlepack/instance.hpp"
#include "circlepack/io.hpp"
#include "circlepack/model.hpp"
#include "circlepack/search.hpp"

namespace py = pybind11;
using namespace circlepack;

namespace {

Pattern make_pattern(std::vector<double> radii, std::vector<std::pair<double, double>> centers, double side) {
    if (radii.size() != centers.size()) throw std::invalid_argument("radii and centers differ in length");
    std::vector<double> coords;
    coords.reserve(2 * centers.size());
    for (auto [x, y] : centers) {
        coords.push_back(x);
        coords.push_back(y);
    }
    return Pattern(std::make_shared<const Radii>(std::move(radii)), std::move(coords), side);
}

std::vector<std::pair<double, double>> centers_of(const Pattern& p) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < p.size(); ++i) out.emplace_back(p.center(i).x, p.center(i).y);
    return out;
}

py::tuple rect_tuple(const Rect& r) { return py::make_tuple(r.lo.x, r.lo.y, r.hi.x, r.hi.y); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Unequal circle packing in a square container";

    py::enum_<Family>(m, "Family").value("LINEAR", Family::Linear).value("SQRT", Family::Sqrt);

    m.def("radii", [](Family f, int n) { return make_instance(f, n).radii; }, py::arg("family"), py::arg("n"));
    m.def("known_best", &known_best, py::arg("family"), py::arg("n"));
    m.def("shelf_upper_bound", [](const std::vector<double>& r) { return shelf_upper_bound(r); }, py::arg("radii"));

    py::class_<Pattern>(m, "Pattern")
        .def(py::init(&make_pattern), py::arg("radii"), py::arg("centers"), py::arg("side"))
        .def_property_readonly("side", &Pattern::side)
        .def_property_readonly("radii", &Pattern::radii)
        .def_property_readonly("centers", &centers_of)
        .def("__len__", &Pattern::size)
        .def("energy", [](const Pattern& p) { return energy(p).total; })
        .def("gradient", [](const Pattern& p) { return energy_gradient(p).values; })
        .def("pain", [](const Pattern& p) { return energy(p).pain; })
        .def("is_feasible", &is_feasible, py::arg("tol") = 1e-9)
        .def("action_spaces",
             [](const Pattern& p) {
                 py::list out;
                 for (const auto& r : compute_action_spaces(squares_of(p), p.side())) out.append(rect_tuple(r));
                 return out;
             })
        .def("to_json",
             [](const Pattern& p, std::optional<Family> family, std::uint64_t seed) {
                 return serialize_solution(to_solution_file(p, family, seed, std::nullopt));
             },
             py::arg("family") = py::none(), py::arg("seed") = 0)
        .def("to_svg", [](const Pattern& p) {
            return render_svg(to_solution_file(p, std::nullopt, 0, std::nullopt));
        });

    m.def("parse_solution", [](const std::string& text) { return to_pattern(parse_solution(text)); }, py::arg("text"));

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("best", &SolveResult::best)
        .def_readonly("L", &SolveResult::L)
        .def_readonly("seconds", &SolveResult::seconds)
        .def_property_readonly("lbfgs_calls", [](const SolveResult& r) { return r.counters.lbfgs_calls; })
        .def_property_readonly("restarts", [](const SolveResult& r) { return r.counters.restarts; });

    m.def(
        "solve",
        [](Family family, int n, std::optional<double> l0, double time_limit, std::uint64_t seed, int m_sel,
           int threads) {
            SolverConfig cfg;
            cfg.time_limit = time_limit;
            cfg.seed = seed;
            cfg.selected = m_sel;
            cfg.threads = threads;
            const auto inst = make_instance(family, n);
            const double L0 = l0 ? *l0 : default_container_size(inst);
            py::gil_scoped_release release;
            return solve(inst, L0, cfg);
        },
        py::arg("family"), py::arg("n"), py::arg("l0") = py::none(), py::arg("time_limit") = 60.0,
        py::arg("seed") = 0, py::arg("m") = 3, py::arg("threads") = 0);

    m.def(
        "post_process",
        [](const Pattern& p) {
            auto r = post_process(p, {});
            return py::make_tuple(r.pattern, r.L);
        },
        py::arg("pattern"));

    m.attr("__version__") = CIRCLEPACK_VERSION;
}
