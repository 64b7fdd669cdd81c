#include "c2wl/experiment.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "c2wl/corpus.hpp"
#include "c2wl/evaluate.hpp"
#include "c2wl/formula.hpp"
#include "c2wl/gnn.hpp"
#include "c2wl/graph.hpp"
#include "c2wl/random_gen.hpp"
#include "c2wl/wl.hpp"

namespace c2wl {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string verdict_word(const std::vector<bool>& out) {
  bool any = false, all = true;
  for (bool b : out) {
    any = any || b;
    all = all && b;
  }
  if (all && !out.empty()) return "accept";
  if (!any) return "reject";
  return "mixed";
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << "]";
  return os.str();
}

CheckResult check_gnn_separation(const GnnClassifier& model, const Graph& base,
                                 const Graph& variant) {
  std::string b = verdict_word(run_classifier(base, model));
  std::string v = verdict_word(run_classifier(variant, model));
  CheckResult r;
  r.name = "gnn_separates";
  r.pass = b == "accept" && v == "reject";
  r.detail = "base=" + b + " variant=" + v;
  return r;
}

CheckResult check_formula_separation(const FormulaPtr& f, const Graph& base,
                                     const Graph& variant) {
  std::string b = verdict_word(classify(base, f));
  std::string v = verdict_word(classify(variant, f));
  CheckResult r;
  r.name = "formula_separates";
  r.pass = b == "accept" && v == "reject";
  r.detail = "base=" + b + " variant=" + v;
  return r;
}

std::string round_sizes(const std::vector<std::vector<ColorId>>& per_round) {
  std::string s = "[";
  for (size_t r = 0; r < per_round.size(); ++r) {
    if (r) s += ",";
    s += join_ints(partition_sizes(per_round[r]));
  }
  return s + "]";
}

CheckResult check_wl_agreement(const Graph& base, const Graph& variant, int ell, int c) {
  WlResult res = run_wl({&base, &variant}, c, ell);
  int n = base.num_nodes();
  int agree = 0;
  for (int i = 0; i < n; ++i) {
    if (res.colors[0][size_t(ell)][size_t(i)] == res.colors[1][size_t(ell)][size_t(i)]) {
      ++agree;
    }
  }
  CheckResult r;
  r.name = "wl_colors_agree";
  r.pass = agree == n;
  r.detail = "agree=" + std::to_string(agree) + "/" + std::to_string(n) +
             " base_rounds=" + round_sizes(res.colors[0]) +
             " variant_rounds=" + round_sizes(res.colors[1]);
  return r;
}

CheckResult check_no_distinguisher(const Graph& base, const Graph& variant, int ell, int c) {
  int n = base.num_nodes();
  int found = 0;
  for (int i = 0; i < n; ++i) {
    if (build_distinguishing_formula(base, i, variant, i, ell, c).has_value()) ++found;
  }
  CheckResult r;
  r.name = "no_distinguisher";
  r.pass = found == 0;
  r.detail = "distinguished=" + std::to_string(found) + "/" + std::to_string(n);
  return r;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& ch : checks) {
    if (!ch.pass) return false;
  }
  return true;
}

}  // namespace

json Report::to_json() const {
  json j;
  j["schema"] = 1;
  j["version"] = kVersion;
  j["command"] = command;
  j["params"] = params;
  j["separated"] = separated;
  j["checks"] = json::array();
  for (const auto& ch : checks) {
    j["checks"].push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
  }
  j["timings_ms"] = timings_ms;
  return j;
}

Report run_directed_counterexample(int ell, int c) {
  require(ell >= 1 && c >= 1, "round budget and count bound must be positive");
  Report rep;
  rep.command = "directed_counterexample";
  PerturbedPair pair = make_perturbed_order(ell, c);
  rep.params = {{"ell", ell},
                {"c", c},
                {"half", pair.half},
                {"num_nodes", pair.base.num_nodes()}};

  Stopwatch t_gnn;
  rep.checks.push_back(check_gnn_separation(lin_classifier(), pair.base, pair.variant));
  rep.timings_ms["gnn"] = t_gnn.elapsed_ms();

  Stopwatch t_formula;
  rep.checks.push_back(check_formula_separation(formula_phi_lin(), pair.base, pair.variant));
  rep.timings_ms["formula"] = t_formula.elapsed_ms();

  Stopwatch t_wl;
  rep.checks.push_back(check_wl_agreement(pair.base, pair.variant, ell, c));
  rep.timings_ms["wl"] = t_wl.elapsed_ms();

  Stopwatch t_dist;
  rep.checks.push_back(check_no_distinguisher(pair.base, pair.variant, ell, c));
  rep.timings_ms["distinguisher"] = t_dist.elapsed_ms();

  rep.separated = all_pass(rep.checks);
  return rep;
}

Report run_undirected_counterexample(int ell, int c) {
  require(ell >= 1 && c >= 1, "round budget and count bound must be positive");
  Report rep;
  rep.command = "undirected_counterexample";
  PerturbedGadgetPair pair = make_perturbed_gadget(ell, c);
  rep.params = {{"ell", ell}, {"c", c}, {"num_nodes", pair.base.num_nodes()}};

  Stopwatch t_gnn;
  rep.checks.push_back(check_gnn_separation(gadlin_classifier(), pair.base, pair.variant));
  rep.timings_ms["gnn"] = t_gnn.elapsed_ms();

  Stopwatch t_formula;
  rep.checks.push_back(
      check_formula_separation(formula_phi_gadlin_fo(), pair.base, pair.variant));
  rep.timings_ms["formula"] = t_formula.elapsed_ms();

  Stopwatch t_wl;
  rep.checks.push_back(check_wl_agreement(pair.base, pair.variant, ell, c));
  rep.timings_ms["wl"] = t_wl.elapsed_ms();

  Stopwatch t_dist;
  rep.checks.push_back(check_no_distinguisher(pair.base, pair.variant, ell, c));
  rep.timings_ms["distinguisher"] = t_dist.elapsed_ms();

  Stopwatch t_cycle;
  CheckResult cyc;
  cyc.name = "cycle_witness";
  cyc.pass = true;
  for (int k = 0; k < 9; ++k) {
    int u = pair.cycle[size_t(k)];
    int w = pair.cycle[size_t((k + 1) % 9)];
    if (!pair.variant.has_edge(u, w) || !pair.variant.has_edge(w, u)) cyc.pass = false;
    const auto& label = pair.variant.labels()[size_t(u)];
    for (int i = 0; i < 3; ++i) {
      if ((label[size_t(i)] != 0) != (i == k % 3)) cyc.pass = false;
    }
  }
  std::vector<int> walk(pair.cycle.begin(), pair.cycle.end());
  cyc.detail = std::string(cyc.pass ? "verified" : "broken") + " cycle=" + join_ints(walk);
  rep.checks.push_back(cyc);
  rep.timings_ms["cycle"] = t_cycle.elapsed_ms();

  rep.separated = all_pass(rep.checks);
  return rep;
}

Report run_gnn_soundness(int max_nodes) {
  require(max_nodes >= 1 && max_nodes <= 5, "supported node counts are 1 to 5");
  Report rep;
  rep.command = "gnn_soundness";
  rep.params = {{"max_nodes", max_nodes}};
  GnnClassifier model = lin_classifier();

  for (int n = 1; n <= max_nodes; ++n) {
    Stopwatch t_n;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
      for (int w = 0; w < n; ++w) {
        if (u != w) pairs.emplace_back(u, w);
      }
    }
    uint64_t total = uint64_t{1} << pairs.size();
    uint64_t accepted = 0;
    uint64_t mismatches = 0;
    uint64_t first_bad = 0;
    size_t num = size_t(n);
    std::vector<std::vector<uint8_t>> labels(num);
    for (uint64_t mask = 0; mask < total; ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (size_t i = 0; i < pairs.size(); ++i) {
        if ((mask >> i) & 1) edges.push_back(pairs[i]);
      }
      Graph g(n, 0, labels, edges);
      bool got = run_classifier(g, model)[0];
      if (got) ++accepted;
      if (got != is_strict_linear_order(g)) {
        if (mismatches == 0) first_bad = mask;
        ++mismatches;
      }
    }
    uint64_t orders = 1;
    for (int k = 2; k <= n; ++k) orders *= uint64_t(k);
    CheckResult r;
    r.name = "n=" + std::to_string(n);
    r.pass = mismatches == 0 && accepted == orders;
    r.detail = "graphs=" + std::to_string(total) + " orders=" + std::to_string(orders) +
               " accepted=" + std::to_string(accepted) +
               " mismatches=" + std::to_string(mismatches);
    if (mismatches > 0) r.detail += " first_bad_mask=" + std::to_string(first_bad);
    rep.checks.push_back(r);
    rep.timings_ms["n=" + std::to_string(n)] = t_n.elapsed_ms();
  }
  rep.separated = all_pass(rep.checks);
  return rep;
}

Report run_theorem1_check(int ell, int c, int graph_trials, int formula_samples,
                          uint64_t seed) {
  require(ell >= 1 && c >= 1, "round budget and count bound must be positive");
  require(graph_trials >= 1 && formula_samples >= 1, "trial counts must be positive");
  Report rep;
  rep.command = "theorem1_check";
  rep.params = {{"ell", ell},
                {"c", c},
                {"graph_trials", graph_trials},
                {"formula_samples", formula_samples},
                {"seed", seed}};

  std::mt19937_64 rng(seed);
  RandomGraphParams gp;
  gp.min_nodes = 1;
  gp.max_nodes = 7;
  gp.dimension = 1;
  gp.edge_prob = 0.35;
  RandomFormulaParams fp;
  fp.max_depth = ell;
  fp.max_rank = c;
  fp.max_pred = 1;
  fp.free_vars = {"x"};

  Stopwatch t_all;
  int matched = 0, split = 0;
  int disagreements = 0, unverified = 0, spurious = 0;
  for (int trial = 0; trial < graph_trials; ++trial) {
    Graph ga = random_graph(rng, gp);
    Graph gb = trial % 2 == 0 ? random_graph(rng, gp) : ga;
    int u = int(rng() % uint64_t(ga.num_nodes()));
    int v = int(rng() % uint64_t(gb.num_nodes()));

    WlResult res = run_wl({&ga, &gb}, c, ell);
    bool same = res.colors[0][size_t(ell)][size_t(u)] == res.colors[1][size_t(ell)][size_t(v)];
    std::optional<FormulaPtr> dist = build_distinguishing_formula(ga, u, gb, v, ell, c);

    if (same) {
      ++matched;
      if (dist.has_value()) ++spurious;
      for (int s = 0; s < formula_samples; ++s) {
        FormulaPtr f = random_c2_formula(rng, fp);
        if (evaluate(ga, f, {{"x", u}}) != evaluate(gb, f, {{"x", v}})) ++disagreements;
      }
    } else {
      ++split;
      bool ok = dist.has_value();
      if (ok) {
        FormulaPtr f = *dist;
        FormulaMetrics m = metrics(f);
        ok = m.is_c2 && m.depth <= ell && m.counting_rank <= c &&
             evaluate(ga, f, {{"x", u}}) && !evaluate(gb, f, {{"x", v}});
      }
      if (!ok) ++unverified;
    }
  }
  rep.timings_ms["trials"] = t_all.elapsed_ms();

  CheckResult agree;
  agree.name = "matched_pairs_agree";
  agree.pass = disagreements == 0 && spurious == 0;
  agree.detail = "matched=" + std::to_string(matched) +
                 " sampled=" + std::to_string(matched * formula_samples) +
                 " disagreements=" + std::to_string(disagreements) +
                 " spurious=" + std::to_string(spurious);
  rep.checks.push_back(agree);

  CheckResult dist;
  dist.name = "split_pairs_distinguished";
  dist.pass = unverified == 0;
  dist.detail = "split=" + std::to_string(split) +
                " unverified=" + std::to_string(unverified);
  rep.checks.push_back(dist);

  CheckResult cover;
  cover.name = "coverage";
  cover.pass = matched >= 1 && split >= 1;
  cover.detail = "matched=" + std::to_string(matched) + " split=" + std::to_string(split);
  rep.checks.push_back(cover);

  rep.separated = all_pass(rep.checks);
  return rep;
}

}  // namespace c2wl
