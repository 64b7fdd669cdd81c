#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "c2wl/corpus.hpp"
#include "c2wl/evaluate.hpp"
#include "c2wl/experiment.hpp"
#include "c2wl/formula.hpp"
#include "c2wl/gnn.hpp"
#include "c2wl/graph.hpp"
#include "c2wl/normal_form.hpp"
#include "c2wl/wl.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const c2wl::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

c2wl::GnnClassifier model_by_name(const std::string& name) {
  if (name == "lin") return c2wl::lin_classifier();
  if (name == "gadlin") return c2wl::gadlin_classifier();
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace

PYBIND11_MODULE(_c2wl, m) {
  m.doc() = "bounded color refinement, two variable counting logic and exact"
            " integer network classifiers";
  m.attr("__version__") = c2wl::kVersion;

  py::class_<c2wl::Graph>(m, "Graph")
      .def(py::init([](const std::string& text) { return c2wl::parse_graph(text); }),
           py::arg("json_text"))
      .def(py::init<int, int, std::vector<std::vector<uint8_t>>,
                    std::vector<std::pair<int, int>>>(),
           py::arg("num_nodes"), py::arg("dimension"), py::arg("labels"), py::arg("edges"))
      .def("to_json", [](const c2wl::Graph& g) { return c2wl::serialize_graph(g); })
      .def_property_readonly("num_nodes", &c2wl::Graph::num_nodes)
      .def_property_readonly("dimension", &c2wl::Graph::dimension)
      .def_property_readonly("labels", &c2wl::Graph::labels)
      .def_property_readonly("edges", &c2wl::Graph::edges)
      .def("has_edge", &c2wl::Graph::has_edge, py::arg("u"), py::arg("w"))
      .def("is_undirected", [](const c2wl::Graph& g) { return c2wl::is_undirected(g); })
      .def("is_strict_linear_order",
           [](const c2wl::Graph& g) { return c2wl::is_strict_linear_order(g); })
      .def("__repr__", [](const c2wl::Graph& g) {
        return "Graph(num_nodes=" + std::to_string(g.num_nodes()) +
               ", dimension=" + std::to_string(g.dimension()) +
               ", edges=" + std::to_string(g.edges().size()) + ")";
      });

  m.def(
      "check_formula",
      [](const std::string& text) {
        c2wl::FormulaPtr f = c2wl::parse_formula(text);
        c2wl::FormulaMetrics mt = c2wl::metrics(f);
        py::dict d;
        d["formula"] = c2wl::print_formula(f);
        d["depth"] = mt.depth;
        d["counting_rank"] = mt.counting_rank;
        d["is_c2"] = mt.is_c2;
        return d;
      },
      py::arg("formula"), "Parse a formula; returns its canonical text and budgets.");

  m.def(
      "evaluate",
      [](const c2wl::Graph& g, const std::string& formula, const c2wl::Assignment& assignment) {
        return c2wl::evaluate(g, c2wl::parse_formula(formula), assignment);
      },
      py::arg("graph"), py::arg("formula"), py::arg("assignment") = c2wl::Assignment{});

  m.def(
      "classify",
      [](const c2wl::Graph& g, const std::string& formula) {
        return c2wl::classify(g, c2wl::parse_formula(formula));
      },
      py::arg("graph"), py::arg("formula"),
      "Evaluate a one free variable formula at every node.");

  m.def(
      "normalize",
      [](const std::string& formula, size_t max_disjuncts) {
        c2wl::NormalForm nf = c2wl::normalize_c2(c2wl::parse_formula(formula), max_disjuncts);
        py::list out;
        for (const auto& d : nf.disjuncts) {
          py::dict item;
          item["alpha"] = c2wl::print_formula(d.alpha);
          item["beta"] = c2wl::print_formula(d.beta);
          item["gamma"] = c2wl::gamma_kind_name(d.gamma);
          out.append(item);
        }
        return out;
      },
      py::arg("formula"), py::arg("max_disjuncts") = size_t{100000});

  m.def(
      "run_wl",
      [](const c2wl::Graph& g, int c, int rounds) {
        c2wl::WlResult res = c2wl::run_wl({&g}, c, rounds);
        py::list out;
        for (int r = 0; r <= rounds; ++r) {
          py::dict item;
          item["colors"] = res.colors[0][size_t(r)];
          item["partition_sizes"] = c2wl::partition_sizes(res.colors[0][size_t(r)]);
          out.append(item);
        }
        return out;
      },
      py::arg("graph"), py::arg("c"), py::arg("rounds"));

  m.def(
      "stable_round", [](const c2wl::Graph& g, int c) { return c2wl::stable_round(g, c); },
      py::arg("graph"), py::arg("c"));

  m.def(
      "distinguish",
      [](const c2wl::Graph& ga, int u, const c2wl::Graph& gb, int v, int ell,
         int c) -> std::optional<std::string> {
        auto f = c2wl::build_distinguishing_formula(ga, u, gb, v, ell, c);
        if (!f.has_value()) return std::nullopt;
        return c2wl::print_formula(*f);
      },
      py::arg("graph_a"), py::arg("node_a"), py::arg("graph_b"), py::arg("node_b"),
      py::arg("ell"), py::arg("c"),
      "Formula separating the two rooted graphs, or None when their colors match.");

  m.def("make_linear_order", &c2wl::make_linear_order, py::arg("n"));
  m.def("gadgetise", &c2wl::gadgetise, py::arg("graph"));
  m.def(
      "make_perturbed_order",
      [](int ell, int c) {
        c2wl::PerturbedPair p = c2wl::make_perturbed_order(ell, c);
        return py::make_tuple(p.base, p.variant, p.half);
      },
      py::arg("ell"), py::arg("c"), "Returns (base, variant, half).");
  m.def(
      "make_perturbed_gadget",
      [](int ell, int c) {
        c2wl::PerturbedGadgetPair p = c2wl::make_perturbed_gadget(ell, c);
        std::vector<int> cycle(p.cycle.begin(), p.cycle.end());
        return py::make_tuple(p.base, p.variant, cycle);
      },
      py::arg("ell"), py::arg("c"), "Returns (base, variant, cycle).");

  m.def(
      "run_gnn",
      [](const c2wl::Graph& g, const std::string& model) {
        return c2wl::run_classifier(g, model_by_name(model));
      },
      py::arg("graph"), py::arg("model"), "Per node verdicts of the named model.");

  m.def(
      "gnn_trace",
      [](const c2wl::Graph& g, const std::string& model) {
        c2wl::GnnClassifier cls = model_by_name(model);
        return json_to_py(c2wl::trace_to_json(cls, c2wl::run_classifier_trace(g, cls)));
      },
      py::arg("graph"), py::arg("model"));

  m.def("check_psi", &c2wl::check_psi, py::arg("graph"));

  m.def(
      "directed_counterexample",
      [](int ell, int c) { return json_to_py(c2wl::run_directed_counterexample(ell, c).to_json()); },
      py::arg("ell"), py::arg("c"));
  m.def(
      "undirected_counterexample",
      [](int ell, int c) {
        return json_to_py(c2wl::run_undirected_counterexample(ell, c).to_json());
      },
      py::arg("ell"), py::arg("c"));
  m.def(
      "gnn_soundness",
      [](int max_nodes) { return json_to_py(c2wl::run_gnn_soundness(max_nodes).to_json()); },
      py::arg("max_nodes"));
  m.def(
      "theorem1_check",
      [](int ell, int c, int graph_trials, int formula_samples, uint64_t seed) {
        return json_to_py(
            c2wl::run_theorem1_check(ell, c, graph_trials, formula_samples, seed).to_json());
      },
      py::arg("ell"), py::arg("c"), py::arg("graph_trials") = 50,
      py::arg("formula_samples") = 200, py::arg("seed") = uint64_t{42});
}
