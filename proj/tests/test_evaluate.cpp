#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "c2wl/evaluate.hpp"
#include "c2wl/formula.hpp"
#include "c2wl/graph.hpp"
#include "c2wl/random_gen.hpp"

using namespace c2wl;

namespace {

Graph order_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) edges.emplace_back(u, w);
  return Graph(n, 0, std::vector<std::vector<uint8_t>>(n), edges);
}

}  // namespace

TEST_CASE("atoms evaluate against the graph") {
  Graph g(3, 2, {{1, 0}, {0, 1}, {0, 0}}, {{0, 1}, {1, 2}});
  CHECK(evaluate(g, parse_formula("E(x, y)"), {{"x", 0}, {"y", 1}}));
  CHECK_FALSE(evaluate(g, parse_formula("E(x, y)"), {{"x", 1}, {"y", 0}}));
  CHECK(evaluate(g, parse_formula("P1(x)"), {{"x", 0}}));
  CHECK_FALSE(evaluate(g, parse_formula("P2(x)"), {{"x", 0}}));
  // Predicates beyond the label width are false, not an error.
  CHECK_FALSE(evaluate(g, parse_formula("P7(x)"), {{"x", 0}}));
  CHECK(evaluate(g, parse_formula("x = y"), {{"x", 2}, {"y", 2}}));
  CHECK(evaluate(g, parse_formula("x != y"), {{"x", 0}, {"y", 2}}));
}

TEST_CASE("evaluation rejects bad assignments") {
  Graph g = order_graph(3);
  CHECK_THROWS_AS(evaluate(g, parse_formula("E(x, y)"), {{"x", 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate(g, parse_formula("P1(x)"), {{"x", 3}}),
                  std::invalid_argument);
  // Assignments for absent variables are ignored.
  CHECK(evaluate(g, parse_formula("E(x, y)"), {{"x", 0}, {"y", 1}, {"z", 0}}));
}

TEST_CASE("counting quantifiers on the 4 node total order") {
  Graph g = order_graph(4);
  FormulaPtr two_out = parse_formula("exists[=2] y. E(x, y)");
  std::vector<bool> expected{false, true, false, false};
  CHECK(classify(g, two_out) == expected);
  FormulaPtr some_out = parse_formula("exists y. E(x, y)");
  CHECK(classify(g, some_out) == std::vector<bool>{true, true, true, false});
  FormulaPtr total = parse_formula("forall y. (x = y | E(x, y) | E(y, x))");
  CHECK(classify(g, total) == std::vector<bool>{true, true, true, true});
  CHECK(evaluate(g, parse_formula("exists[4] x. (x = x)"), {}));
  CHECK_FALSE(evaluate(g, parse_formula("exists[5] x. (x = x)"), {}));
  CHECK(evaluate(g, parse_formula("exists[=0] y. (E(x, y) & E(y, x))"), {{"x", 0}}));
}

TEST_CASE("classification needs exactly one free variable") {
  Graph g = order_graph(3);
  CHECK_THROWS_AS(classify(g, parse_formula("E(x, y)")), std::invalid_argument);
  CHECK_THROWS_AS(classify(g, parse_formula("forall x. (x = x)")),
                  std::invalid_argument);
}

TEST_CASE("exact counts match witness enumeration") {
  std::mt19937_64 rng(13);
  RandomGraphParams gp;
  gp.min_nodes = 1;
  gp.max_nodes = 6;
  gp.dimension = 1;
  gp.edge_prob = 0.4;
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_graph(rng, gp);
    FormulaPtr witness = parse_formula("E(x, y) | P1(y)");
    for (int x = 0; x < g.num_nodes(); ++x) {
      int count = 0;
      for (int y = 0; y < g.num_nodes(); ++y)
        if (evaluate(g, witness, {{"x", x}, {"y", y}})) ++count;
      for (int k = 0; k <= g.num_nodes() + 1; ++k) {
        FormulaPtr exact =
            mk_count_exact(k, "y", parse_formula("E(x, y) | P1(y)"));
        CHECK(evaluate(g, exact, {{"x", x}}) == (count == k));
        if (k >= 1) {
          FormulaPtr at_least =
              mk_count_exists(k, "y", parse_formula("E(x, y) | P1(y)"));
          CHECK(evaluate(g, at_least, {{"x", x}}) == (count >= k));
        }
      }
    }
  }
}

TEST_CASE("memoized evaluator agrees with the naive one") {
  std::mt19937_64 rng(17);
  RandomGraphParams gp;
  gp.min_nodes = 1;
  gp.max_nodes = 5;
  gp.dimension = 2;
  gp.edge_prob = 0.35;
  RandomFormulaParams fp;
  fp.max_depth = 3;
  fp.max_rank = 3;
  fp.max_pred = 2;
  fp.free_vars = {"x"};
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(rng, gp);
    FormulaPtr f = random_c2_formula(rng, fp);
    for (int x = 0; x < g.num_nodes(); ++x) {
      Assignment asg{{"x", x}};
      CHECK(evaluate(g, f, asg) == evaluate_naive(g, f, asg));
    }
  }
}

TEST_CASE("evaluator handles formulas beyond two variables") {
  Graph g = order_graph(4);
  FormulaPtr trans = parse_formula(
      "forall x. forall y. forall z. (E(x, y) & E(y, z) -> E(x, z))");
  CHECK(evaluate(g, trans, {}));
  CHECK(evaluate_naive(g, trans, {}));
  Graph cyc(3, 0, {{}, {}, {}}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_FALSE(evaluate(cyc, trans, {}));
  CHECK_FALSE(evaluate_naive(cyc, trans, {}));
}

TEST_CASE("sugared and core forms evaluate alike") {
  std::mt19937_64 rng(23);
  RandomGraphParams gp;
  gp.min_nodes = 1;
  gp.max_nodes = 5;
  gp.dimension = 1;
  RandomFormulaParams fp;
  fp.free_vars = {"x", "y"};
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_graph(rng, gp);
    FormulaPtr f = random_c2_formula(rng, fp);
    // Wrap in sugar that must not change meaning.
    FormulaPtr sugared = mk_implies(mk_not(f), f);
    FormulaPtr core = desugar(sugared);
    for (int x = 0; x < g.num_nodes(); ++x)
      for (int y = 0; y < g.num_nodes(); ++y) {
        Assignment asg{{"x", x}, {"y", y}};
        CHECK(evaluate(g, sugared, asg) == evaluate(g, core, asg));
        CHECK(evaluate(g, sugared, asg) == evaluate(g, f, asg));
      }
  }
}

TEST_CASE("one evaluator instance reuses work across nodes") {
  Graph g = order_graph(6);
  FormulaPtr f = parse_formula(
      "exists y. (E(x, y) & forall x. (E(y, x) -> exists y. E(x, y)))");
  Evaluator ev(g, f);
  std::vector<bool> via_instance(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) via_instance[v] = ev.eval({{"x", v}});
  CHECK(via_instance == classify(g, f));
  for (int v = 0; v < g.num_nodes(); ++v)
    CHECK(via_instance[v] == evaluate_naive(g, f, {{"x", v}}));
}
