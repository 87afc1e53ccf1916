#include "fillvol/qi_transfer.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace fillvol;

namespace {

Ring ring_by_name(const std::string& name) {
    if (name == "Z") return Ring::integers();
    if (name == "Q") return Ring::rationals();
    if (name.size() > 1 && name[0] == 'F') return Ring::prime_field(std::stol(name.substr(1)));
    if (name.size() > 1 && name[0] == 'Z' && name[1] == '/')
        return Ring::modular(std::stol(name.substr(2)));
    throw DomainError("unknown ring name: " + name);
}

Norm default_norm_for(const Ring& ring) {
    if (ring.kind() == RingKind::Integers || ring.kind() == RingKind::Rationals)
        return Norm::absolute();
    return Norm::discrete();
}

using ComplexPtr = std::shared_ptr<FreeComplex>;

Chain make_chain_py(const FreeComplex& cx, int degree,
                    const std::vector<std::tuple<std::string, std::vector<int>, std::string>>&
                        terms) {
    std::vector<std::pair<Cell, RElem>> out;
    for (const auto& [name, word, coeff] : terms) {
        int basis = -1;
        for (int b = 0; b < cx.rank(degree); ++b)
            if (cx.basis_name(degree, b) == name) basis = b;
        if (basis < 0) throw DomainError("unknown basis name: " + name);
        out.emplace_back(Cell{basis, cx.group().word(word)}, rat_from_string(coeff));
    }
    return cx.make_chain(degree, out);
}

py::dict result_to_dict(const FreeComplex& cx, const FillingResult& r) {
    py::dict d;
    d["found"] = r.found;
    d["norm"] = rat_to_string(r.achieved_norm);
    d["exact_minimum"] = r.exact_minimum;
    d["status"] = r.status;
    d["search_space"] = r.search_space;
    if (r.steps >= 0) d["thickening_steps"] = r.steps;
    if (r.found) d["filling"] = cx.chain_to_string(r.filling);
    return d;
}

}  // namespace

PYBIND11_MODULE(_fillvol, m) {
    m.doc() = "filling volumes of normed group chain complexes";

    py::class_<Chain>(m, "Chain")
        .def_property_readonly("degree", [](const Chain& c) { return c.degree; })
        .def("is_zero", &Chain::is_zero)
        .def("support_size", &Chain::support_size);

    py::class_<FreeComplex, ComplexPtr>(m, "Complex")
        .def_property_readonly("max_degree", &FreeComplex::max_degree)
        .def("rank", &FreeComplex::rank)
        .def("basis_name", &FreeComplex::basis_name)
        .def("verify_d_squared", &FreeComplex::verify_d_squared)
        .def("chain", &make_chain_py, py::arg("degree"), py::arg("terms"))
        .def("boundary", &FreeComplex::boundary)
        .def("add", &FreeComplex::add)
        .def("sub", &FreeComplex::sub)
        .def("translate",
             [](const FreeComplex& cx, const std::vector<int>& word, const Chain& c) {
                 return cx.translate(cx.group().word(word), c);
             })
        .def("chain_norm",
             [](const FreeComplex& cx, const Chain& c, bool weighted) {
                 return rat_to_string(cx.chain_norm(c, weighted));
             },
             py::arg("chain"), py::arg("weighted") = false)
        .def("chain_str", &FreeComplex::chain_to_string)
        .def("to_json", &complex_to_json_text);

    m.def("cyclic_resolution",
          [](long long k, int n_max, const std::string& ring) {
              Ring r = ring_by_name(ring);
              Norm norm = default_norm_for(r);
              return std::make_shared<FreeComplex>(builtin_cyclic_resolution(k, n_max, r, norm));
          },
          py::arg("k"), py::arg("n_max") = 3, py::arg("ring") = "F2");
    m.def("z2_complex",
          [](const std::string& ring) {
              Ring r = ring_by_name(ring);
              return std::make_shared<FreeComplex>(
                  builtin_z2_presentation_complex(r, default_norm_for(r)));
          },
          py::arg("ring") = "Z");
    m.def("load_complex",
          [](const std::string& path) { return std::make_shared<FreeComplex>(load_complex(path)); });
    m.def("complex_from_json",
          [](const std::string& text) {
              return std::make_shared<FreeComplex>(complex_from_json_text(text));
          });

    m.def("commutator_cycle",
          [](const ComplexPtr& cx, long long n, const std::string& r) {
              return commutator_cycle(*cx, n, rat_from_string(r));
          },
          py::arg("complex"), py::arg("n"), py::arg("r") = "1");

    m.def("graph_summary",
          [](const ComplexPtr& cx, int degree, long long radius) {
              std::vector<Cell> cells;
              long long reach = cx->group().finite() ? cx->group().order() : radius;
              for (const auto& g : cx->group().group_ball(reach))
                  for (int b = 0; b < cx->rank(degree); ++b) cells.push_back(Cell{b, g});
              GraphSummary s = summarize_graph(build_gr(*cx, degree, cells));
              py::dict d;
              d["vertices"] = s.vertex_count;
              d["edges"] = s.edge_count;
              d["regular"] = s.regular;
              d["regularity"] = s.regularity;
              switch (s.cls) {
                  case GraphClass::Edgeless: d["class"] = "edgeless"; break;
                  case GraphClass::Cycle: d["class"] = "cycle"; break;
                  case GraphClass::Complete: d["class"] = "complete"; break;
                  default: d["class"] = "other";
              }
              return d;
          },
          py::arg("complex"), py::arg("degree"), py::arg("radius") = 2);

    m.def("filling_volume",
          [](const ComplexPtr& cx, const Chain& c, bool weighted, long long box,
             long long denominator_lcm) {
              SolverBudget budget;
              if (box >= 0) budget.box_bound = box;
              budget.denominator_lcm = denominator_lcm;
              FillingProblem p(*cx, c, weighted, budget);
              return result_to_dict(*cx, filling_volume(p));
          },
          py::arg("complex"), py::arg("cycle"), py::arg("weighted") = false, py::arg("box") = -1,
          py::arg("denominator_lcm") = 1);
    m.def("fill_bruteforce",
          [](const ComplexPtr& cx, const Chain& c, bool weighted, long long box,
             long long window_radius) {
              SolverBudget budget;
              if (box >= 0) budget.box_bound = box;
              if (window_radius >= 0) budget.window_radius = window_radius;
              FillingProblem p(*cx, c, weighted, budget);
              return result_to_dict(*cx, fill_bruteforce(p));
          },
          py::arg("complex"), py::arg("cycle"), py::arg("weighted") = false, py::arg("box") = -1,
          py::arg("window_radius") = -1);
    m.def("fill_by_thickening",
          [](const ComplexPtr& cx, const Chain& c, bool weighted, int j_cap) {
              FillingProblem p(*cx, c, weighted);
              return result_to_dict(*cx, fill_by_thickening(p, j_cap));
          },
          py::arg("complex"), py::arg("cycle"), py::arg("weighted") = false, py::arg("j_cap") = 20);

    m.def("filling_function_table",
          [](const ComplexPtr& cx, int degree, long long l_max, const std::string& mode,
             bool weighted) {
              FillingFunctionTable t = filling_function_table(
                  *cx, degree, l_max, mode == "oracle" ? TableMode::Oracle : TableMode::Orbit,
                  weighted);
              py::list out;
              for (const auto& e : t.entries) {
                  py::dict d;
                  d["l"] = e.l;
                  d["value"] = rat_to_string(e.value);
                  d["status"] = e.status;
                  d["combine_upper"] = rat_to_string(e.combine_upper);
                  out.append(d);
              }
              return out;
          },
          py::arg("complex"), py::arg("degree"), py::arg("l_max"), py::arg("mode") = "orbit",
          py::arg("weighted") = false);

    m.def("orbit_count",
          [](const ComplexPtr& cx, int degree, long long l) {
              return orbit_representatives(*cx, degree, l).size();
          },
          py::arg("complex"), py::arg("degree"), py::arg("l"));

    m.def("exhaustion_report",
          [](const ComplexPtr& cx, int k) {
              ExhaustionReport rep = exhaustion_conditions(*cx, k);
              py::dict d;
              d["nonzero_boundaries"] = rep.nonzero_boundaries;
              d["connectivity"] = rep.connectivity;
              d["vertices_covered"] = rep.vertices_covered;
              d["all_pass"] = rep.all_pass();
              return d;
          },
          py::arg("complex"), py::arg("k"));

    py::register_exception<Error>(m, "FillvolError");
    py::register_exception<BudgetError>(m, "BudgetError");
    py::register_exception<RegionError>(m, "RegionError");
}
