#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "c2wl/formula.hpp"
#include "c2wl/random_gen.hpp"

using namespace c2wl;

TEST_CASE("parser builds the expected shapes") {
  FormulaPtr f = parse_formula("exists[2] x. (x = x)");
  REQUIRE(f->kind == FormulaKind::CountExists);
  CHECK(f->index == 2);
  CHECK(f->var == "x");
  CHECK(f->lhs->kind == FormulaKind::Eq);

  f = parse_formula("forall x. ~E(x,x)");
  REQUIRE(f->kind == FormulaKind::Forall);
  REQUIRE(f->lhs->kind == FormulaKind::Not);
  CHECK(f->lhs->lhs->kind == FormulaKind::Edge);

  f = parse_formula("exists[=2] y. E(x,y)");
  REQUIRE(f->kind == FormulaKind::CountExistsExact);
  CHECK(f->index == 2);
  CHECK(f->var == "y");

  f = parse_formula("x != y");
  REQUIRE(f->kind == FormulaKind::Not);
  CHECK(f->lhs->kind == FormulaKind::Eq);

  f = parse_formula("P3(y)");
  CHECK(f->kind == FormulaKind::Pred);
  CHECK(f->index == 3);
  CHECK(f->var == "y");
}

TEST_CASE("operator precedence and associativity") {
  // Implication binds loosest and associates right.
  FormulaPtr f = parse_formula("P1(x) & P2(x) -> x = y | P3(x)");
  REQUIRE(f->kind == FormulaKind::Implies);
  CHECK(f->lhs->kind == FormulaKind::And);
  CHECK(f->rhs->kind == FormulaKind::Or);

  f = parse_formula("P1(x) -> P2(x) -> P3(x)");
  REQUIRE(f->kind == FormulaKind::Implies);
  CHECK(f->rhs->kind == FormulaKind::Implies);

  f = parse_formula("P1(x) & P2(x) & P3(x)");
  REQUIRE(f->kind == FormulaKind::And);
  CHECK(f->lhs->kind == FormulaKind::And);

  // Negation binds tighter than conjunction.
  f = parse_formula("~P1(x) & P2(x)");
  REQUIRE(f->kind == FormulaKind::And);
  CHECK(f->lhs->kind == FormulaKind::Not);

  // Quantifier bodies stop at the first binary operator.
  f = parse_formula("exists x. P1(x) & P2(y)");
  REQUIRE(f->kind == FormulaKind::And);
  CHECK(f->lhs->kind == FormulaKind::Exists);

  // Equivalence expands while parsing.
  f = parse_formula("P1(x) <-> P2(x)");
  REQUIRE(f->kind == FormulaKind::And);
  CHECK(f->lhs->kind == FormulaKind::Implies);
  CHECK(f->rhs->kind == FormulaKind::Implies);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("exists[0] x. x = x"), ParseError);
  CHECK_THROWS_AS(parse_formula("P0(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("E(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(x = y"), ParseError);
  CHECK_THROWS_AS(parse_formula("x = y)"), ParseError);
  CHECK_THROWS_AS(parse_formula("x & y"), ParseError);
  CHECK_THROWS_AS(parse_formula("exists x y = x"), ParseError);
  // exists[=0] is allowed.
  CHECK(parse_formula("exists[=0] y. E(x, y)")->kind == FormulaKind::CountExistsExact);
}

TEST_CASE("printer emits canonical text") {
  CHECK(print_formula(parse_formula("P1(x)&E(x,y)->x=y")) ==
        "P1(x) & E(x, y) -> x = y");
  CHECK(print_formula(parse_formula("exists[=2] y. E(x,y)")) ==
        "exists[=2] y. E(x, y)");
  CHECK(print_formula(parse_formula("~(P1(x)|P2(x))")) == "~(P1(x) | P2(x))");
  CHECK(print_formula(parse_formula("x!=y")) == "x != y");
  CHECK(print_formula(parse_formula("forall x. (P1(x) -> exists y. E(x, y))")) ==
        "forall x. (P1(x) -> exists y. E(x, y))");
  CHECK(print_formula(mk_not(mk_not(mk_pred(1, "x")))) == "~~P1(x)");
}

TEST_CASE("print then parse is the identity on shapes") {
  std::mt19937_64 rng(3);
  RandomFormulaParams params;
  params.max_depth = 3;
  params.max_rank = 3;
  params.max_pred = 2;
  params.free_vars = {"x", "y"};
  for (int trial = 0; trial < 300; ++trial) {
    FormulaPtr f = random_c2_formula(rng, params);
    FormulaPtr back = parse_formula(print_formula(f));
    CHECK(formulas_equal(f, back));
  }
  for (const char* text :
       {"P1(x) & E(x, y) -> x = y", "exists[=2] y. E(x, y)",
        "forall x. forall y. (x = y | E(x, y) | E(y, x))",
        "~(x = y) & ~~P2(x)", "exists[3] y. (E(x, y) & ~E(y, x))"}) {
    FormulaPtr f = parse_formula(text);
    CHECK(formulas_equal(parse_formula(print_formula(f)), f));
  }
}

TEST_CASE("free and bound variables") {
  FormulaPtr f = parse_formula("exists y. E(x, y)");
  CHECK(free_variables(f) == std::set<std::string>{"x"});
  CHECK(all_variables(f) == std::set<std::string>{"x", "y"});
  f = parse_formula("forall x. forall y. (x = y | E(x, y) | E(y, x))");
  CHECK(free_variables(f).empty());
  // Shadowing: the outer x stays free in the left conjunct only.
  f = parse_formula("P1(x) & exists x. P2(x)");
  CHECK(free_variables(f) == std::set<std::string>{"x"});
}

TEST_CASE("desugaring produces core connectives") {
  FormulaPtr f = desugar(parse_formula("forall x. P1(x)"));
  REQUIRE(f->kind == FormulaKind::Not);
  REQUIRE(f->lhs->kind == FormulaKind::CountExists);
  CHECK(f->lhs->index == 1);
  CHECK(f->lhs->lhs->kind == FormulaKind::Not);

  f = desugar(parse_formula("exists[=2] y. E(x, y)"));
  REQUIRE(f->kind == FormulaKind::And);
  CHECK(f->lhs->kind == FormulaKind::CountExists);
  CHECK(f->lhs->index == 2);
  REQUIRE(f->rhs->kind == FormulaKind::Not);
  CHECK(f->rhs->lhs->index == 3);

  f = desugar(parse_formula("exists[=0] y. E(x, y)"));
  REQUIRE(f->kind == FormulaKind::Not);
  CHECK(f->lhs->kind == FormulaKind::CountExists);

  f = desugar(parse_formula("P1(x) -> P2(x)"));
  REQUIRE(f->kind == FormulaKind::Or);
  CHECK(f->lhs->kind == FormulaKind::Not);
}

TEST_CASE("metrics count nesting and thresholds on the core form") {
  FormulaMetrics m = metrics(parse_formula("exists[2] x. (x = x)"));
  CHECK(m.depth == 1);
  CHECK(m.counting_rank == 2);
  CHECK(m.variables == std::set<std::string>{"x"});
  CHECK(m.is_c2);

  m = metrics(parse_formula("E(x, y)"));
  CHECK(m.depth == 0);
  CHECK(m.counting_rank == 0);
  CHECK(m.is_c2);

  // exists[=2] needs threshold 3 to refute a third witness.
  m = metrics(parse_formula("exists[=2] y. E(x, y)"));
  CHECK(m.depth == 1);
  CHECK(m.counting_rank == 3);

  // forall becomes a threshold 1 counting quantifier.
  m = metrics(parse_formula("forall x. exists y. E(x, y)"));
  CHECK(m.depth == 2);
  CHECK(m.counting_rank == 1);

  m = metrics(parse_formula("forall x. forall y. (x = y | E(x, y) | E(y, x)) & forall z. z = z"));
  CHECK_FALSE(m.is_c2);
  CHECK(m.variables == std::set<std::string>{"x", "y", "z"});
}

TEST_CASE("metrics never decrease under conjunction") {
  std::mt19937_64 rng(5);
  RandomFormulaParams params;
  params.free_vars = {"x", "y"};
  for (int trial = 0; trial < 100; ++trial) {
    FormulaPtr a = random_c2_formula(rng, params);
    FormulaPtr b = random_c2_formula(rng, params);
    FormulaMetrics ma = metrics(a);
    FormulaMetrics mb = metrics(b);
    FormulaMetrics mc = metrics(mk_and(a, b));
    CHECK(mc.depth == std::max(ma.depth, mb.depth));
    CHECK(mc.counting_rank == std::max(ma.counting_rank, mb.counting_rank));
  }
}

TEST_CASE("swapping x and y is an involution") {
  FormulaPtr f = parse_formula("exists y. (E(x, y) & ~E(y, x))");
  FormulaPtr swapped = swap_xy(f);
  CHECK(print_formula(swapped) == "exists x. (E(y, x) & ~E(x, y))");
  CHECK(formulas_equal(swap_xy(swapped), f));
}
