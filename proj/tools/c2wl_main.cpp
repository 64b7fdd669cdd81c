#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c2wl/corpus.hpp"
#include "c2wl/evaluate.hpp"
#include "c2wl/experiment.hpp"
#include "c2wl/formula.hpp"
#include "c2wl/gnn.hpp"
#include "c2wl/graph.hpp"
#include "c2wl/normal_form.hpp"
#include "c2wl/wl.hpp"

namespace {

using c2wl::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

c2wl::Graph load_graph(const std::string& path) { return c2wl::parse_graph(slurp(path)); }

c2wl::FormulaPtr load_formula(const std::string& text, const std::string& file) {
  if (!text.empty() && !file.empty()) {
    throw std::runtime_error("give either --formula or --formula-file, not both");
  }
  if (!text.empty()) return c2wl::parse_formula(text);
  if (!file.empty()) return c2wl::parse_formula(slurp(file));
  throw std::runtime_error("a formula is required: --formula or --formula-file");
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + out_path);
  out << text;
}

c2wl::Assignment parse_bindings(const std::vector<std::string>& sets) {
  c2wl::Assignment a;
  for (const std::string& s : sets) {
    size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      throw std::runtime_error("binding must look like var=node: " + s);
    }
    a[s.substr(0, eq)] = std::stoi(s.substr(eq + 1));
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded color refinement, two variable counting logic and exact"
               " integer network classifiers"};
  app.set_version_flag("--version", c2wl::kVersion);
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON result to this file instead of stdout");

  json result;
  bool have_result = false;
  int rc = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "emit corpus graphs");
  gen->fallthrough();
  std::string gen_kind;
  int gen_n = 4, gen_ell = 1, gen_c = 1;
  gen->add_option("--kind", gen_kind, "linear | gadget | perturbed | perturbed-gadget")
      ->required()
      ->check(CLI::IsMember({"linear", "gadget", "perturbed", "perturbed-gadget"}));
  gen->add_option("-n,--nodes", gen_n, "node count for linear and gadget kinds");
  gen->add_option("--ell", gen_ell, "round budget for the perturbed kinds");
  gen->add_option("--c", gen_c, "count bound for the perturbed kinds");
  gen->callback([&] {
    if (gen_kind == "linear") {
      result = c2wl::graph_to_json(c2wl::make_linear_order(gen_n));
    } else if (gen_kind == "gadget") {
      result = c2wl::graph_to_json(c2wl::gadgetise(c2wl::make_linear_order(gen_n)));
    } else if (gen_kind == "perturbed") {
      c2wl::PerturbedPair p = c2wl::make_perturbed_order(gen_ell, gen_c);
      result = {{"base", c2wl::graph_to_json(p.base)},
                {"variant", c2wl::graph_to_json(p.variant)},
                {"half", p.half}};
    } else {
      c2wl::PerturbedGadgetPair p = c2wl::make_perturbed_gadget(gen_ell, gen_c);
      json cycle = json::array();
      for (int v : p.cycle) cycle.push_back(v);
      result = {{"base", c2wl::graph_to_json(p.base)},
                {"variant", c2wl::graph_to_json(p.variant)},
                {"cycle", cycle}};
    }
    have_result = true;
  });

  // wl
  auto* wl = app.add_subcommand("wl", "run the bounded color refinement");
  wl->fallthrough();
  std::string wl_graph;
  int wl_c = 1, wl_rounds = 1;
  wl->add_option("--graph", wl_graph, "graph JSON file")->required();
  wl->add_option("--c", wl_c, "count bound")->check(CLI::NonNegativeNumber);
  wl->add_option("--rounds", wl_rounds, "refinement rounds")->check(CLI::NonNegativeNumber);
  wl->callback([&] {
    c2wl::Graph g = load_graph(wl_graph);
    c2wl::WlResult res = c2wl::run_wl({&g}, wl_c, wl_rounds);
    json rounds = json::array();
    for (int r = 0; r <= wl_rounds; ++r) {
      json colors = json::array();
      for (c2wl::ColorId id : res.colors[0][size_t(r)]) colors.push_back(id);
      json sizes = json::array();
      for (int s : c2wl::partition_sizes(res.colors[0][size_t(r)])) sizes.push_back(s);
      rounds.push_back({{"colors", colors}, {"partition_sizes", sizes}});
    }
    result = {{"rounds", rounds}};
    have_result = true;
  });

  // gnn
  auto* gnn = app.add_subcommand("gnn", "run an exact integer network classifier");
  gnn->fallthrough();
  std::string gnn_graph, gnn_model;
  bool gnn_trace = false;
  gnn->add_option("--graph", gnn_graph, "graph JSON file")->required();
  gnn->add_option("--model", gnn_model, "lin | gadlin")
      ->required()
      ->check(CLI::IsMember({"lin", "gadlin"}));
  gnn->add_flag("--trace", gnn_trace, "dump per layer per node states");
  gnn->callback([&] {
    c2wl::Graph g = load_graph(gnn_graph);
    c2wl::GnnClassifier model =
        gnn_model == "lin" ? c2wl::lin_classifier() : c2wl::gadlin_classifier();
    if (gnn_trace) {
      result = c2wl::trace_to_json(model, c2wl::run_classifier_trace(g, model));
    } else {
      json outs = json::array();
      for (bool b : c2wl::run_classifier(g, model)) outs.push_back(b);
      result = {{"model", gnn_model}, {"outputs", outs}};
    }
    have_result = true;
  });

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a formula on a graph");
  eval->fallthrough();
  std::string eval_graph, eval_formula, eval_formula_file;
  std::vector<std::string> eval_sets;
  bool eval_classify = false;
  eval->add_option("--graph", eval_graph, "graph JSON file")->required();
  eval->add_option("--formula", eval_formula, "formula text");
  eval->add_option("--formula-file", eval_formula_file, "file holding the formula");
  eval->add_option("--set", eval_sets, "free variable binding, var=node (repeatable)");
  eval->add_flag("--classify", eval_classify,
                 "evaluate at every node of the single free variable");
  eval->callback([&] {
    c2wl::Graph g = load_graph(eval_graph);
    c2wl::FormulaPtr f = load_formula(eval_formula, eval_formula_file);
    result = {{"formula", c2wl::print_formula(f)}};
    if (eval_classify) {
      json outs = json::array();
      for (bool b : c2wl::classify(g, f)) outs.push_back(b);
      result["classified"] = outs;
    } else {
      result["value"] = c2wl::evaluate(g, f, parse_bindings(eval_sets));
    }
    have_result = true;
  });

  // normalize
  auto* norm = app.add_subcommand("normalize", "rewrite a two variable formula into"
                                               " its disjunct form");
  norm->fallthrough();
  std::string norm_formula, norm_formula_file;
  size_t norm_cap = 100000;
  norm->add_option("--formula", norm_formula, "formula text");
  norm->add_option("--formula-file", norm_formula_file, "file holding the formula");
  norm->add_option("--max-disjuncts", norm_cap, "expansion size cap");
  norm->callback([&] {
    c2wl::FormulaPtr f = load_formula(norm_formula, norm_formula_file);
    c2wl::NormalForm nf = c2wl::normalize_c2(f, norm_cap);
    json disjuncts = json::array();
    for (const auto& d : nf.disjuncts) {
      disjuncts.push_back({{"alpha", c2wl::print_formula(d.alpha)},
                           {"beta", c2wl::print_formula(d.beta)},
                           {"gamma", c2wl::gamma_kind_name(d.gamma)}});
    }
    result = {{"formula", c2wl::print_formula(f)},
              {"normal_form", c2wl::print_formula(c2wl::normal_form_to_formula(nf))},
              {"disjuncts", disjuncts}};
    have_result = true;
  });

  // distinguish
  auto* dist = app.add_subcommand("distinguish", "search for a formula separating two"
                                                 " rooted graphs within a budget");
  dist->fallthrough();
  std::string dist_a, dist_b;
  int dist_u = 0, dist_v = 0, dist_ell = 1, dist_c = 1;
  dist->add_option("--graph-a", dist_a, "first graph JSON file")->required();
  dist->add_option("--node-a", dist_u, "node of the first graph")->required();
  dist->add_option("--graph-b", dist_b, "second graph JSON file")->required();
  dist->add_option("--node-b", dist_v, "node of the second graph")->required();
  dist->add_option("--ell", dist_ell, "round budget");
  dist->add_option("--c", dist_c, "count bound");
  dist->callback([&] {
    c2wl::Graph ga = load_graph(dist_a);
    c2wl::Graph gb = load_graph(dist_b);
    auto found = c2wl::build_distinguishing_formula(ga, dist_u, gb, dist_v, dist_ell, dist_c);
    result = {{"found", found.has_value()}};
    if (found.has_value()) {
      c2wl::FormulaMetrics m = c2wl::metrics(*found);
      result["formula"] = c2wl::print_formula(*found);
      result["depth"] = m.depth;
      result["counting_rank"] = m.counting_rank;
    }
    have_result = true;
  });

  // soundness
  auto* sound = app.add_subcommand("soundness", "exhaustive order model agreement sweep");
  sound->fallthrough();
  int sound_max = 4;
  sound->add_option("--max-nodes", sound_max, "largest node count (at most 5)");
  sound->callback([&] {
    c2wl::Report rep = c2wl::run_gnn_soundness(sound_max);
    result = rep.to_json();
    have_result = true;
    rc = rep.separated ? 0 : 1;
  });

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a separation pipeline");
  exp->fallthrough();
  std::string exp_mode;
  int exp_ell = 1, exp_c = 1;
  exp->add_option("--mode", exp_mode, "directed | undirected")
      ->required()
      ->check(CLI::IsMember({"directed", "undirected"}));
  exp->add_option("--ell", exp_ell, "round budget")->required();
  exp->add_option("--c", exp_c, "count bound")->required();
  exp->callback([&] {
    c2wl::Report rep = exp_mode == "directed"
                           ? c2wl::run_directed_counterexample(exp_ell, exp_c)
                           : c2wl::run_undirected_counterexample(exp_ell, exp_c);
    result = rep.to_json();
    have_result = true;
    rc = rep.separated ? 0 : 1;
  });

  // theorem1
  auto* thm = app.add_subcommand("theorem1", "random round trip between refinement"
                                             " colors and formula behavior");
  thm->fallthrough();
  int thm_ell = 1, thm_c = 1, thm_trials = 50, thm_samples = 200;
  uint64_t thm_seed = 42;
  thm->add_option("--ell", thm_ell, "round budget")->required();
  thm->add_option("--c", thm_c, "count bound")->required();
  thm->add_option("--graph-trials", thm_trials, "random graph pairs to draw");
  thm->add_option("--formula-samples", thm_samples, "formulas sampled per matched pair");
  thm->add_option("--seed", thm_seed, "random seed");
  thm->callback([&] {
    c2wl::Report rep =
        c2wl::run_theorem1_check(thm_ell, thm_c, thm_trials, thm_samples, thm_seed);
    result = rep.to_json();
    have_result = true;
    rc = rep.separated ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (have_result) emit(result, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
