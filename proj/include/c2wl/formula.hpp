#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace c2wl {

enum class FormulaKind {
  Pred,              // P_i(var), i >= 1
  Edge,              // E(var, var2)
  Eq,                // var = var2
  Not,               // ~lhs
  And,               // lhs & rhs
  Or,                // lhs | rhs
  Implies,           // lhs -> rhs
  Exists,            // exists var. lhs
  Forall,            // forall var. lhs
  CountExists,       // exists[k] var. lhs, k >= 1
  CountExistsExact,  // exists[=k] var. lhs, k >= 0
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node; children are shared so subformulas may alias.
struct Formula {
  FormulaKind kind;
  int index = 0;     // predicate index for Pred, count k for counting kinds
  std::string var;   // bound variable, or first atom argument
  std::string var2;  // second atom argument
  FormulaPtr lhs;
  FormulaPtr rhs;
};

FormulaPtr mk_pred(int index, const std::string& var);
FormulaPtr mk_edge(const std::string& a, const std::string& b);
FormulaPtr mk_eq(const std::string& a, const std::string& b);
FormulaPtr mk_neq(const std::string& a, const std::string& b);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_exists(const std::string& var, FormulaPtr f);
FormulaPtr mk_forall(const std::string& var, FormulaPtr f);
FormulaPtr mk_count_exists(int k, const std::string& var, FormulaPtr f);
FormulaPtr mk_count_exact(int k, const std::string& var, FormulaPtr f);
// Left fold; empty input is rejected.
FormulaPtr mk_and_all(const std::vector<FormulaPtr>& fs);
FormulaPtr mk_or_all(const std::vector<FormulaPtr>& fs);

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  size_t position() const { return position_; }

private:
  size_t position_;
};

// Grammar, loosest binding first: "<->" (expanded while parsing),
// "->" (right associative), "|", "&", then "~" / quantifiers / atoms.
// Quantifier bodies extend to one unary item; use parens for more.
FormulaPtr parse_formula(const std::string& text);

// Canonical rendering; parse_formula(print_formula(f)) reproduces f.
std::string print_formula(const FormulaPtr& f);

std::set<std::string> free_variables(const FormulaPtr& f);
std::set<std::string> all_variables(const FormulaPtr& f);

// Rewrites to the core connectives ~, &, |, exists[k]:
//   a -> b          becomes ~a | b
//   forall v. f     becomes ~exists[1] v. ~f
//   exists v. f     becomes exists[1] v. f
//   exists[=k] v. f becomes exists[k] v. f & ~exists[k+1] v. f   (k >= 1)
//   exists[=0] v. f becomes ~exists[1] v. f
FormulaPtr desugar(const FormulaPtr& f);

struct FormulaMetrics {
  int depth = 0;          // deepest quantifier nesting, counted on the core form
  int counting_rank = 0;  // largest threshold k, 0 when quantifier-free
  std::set<std::string> variables;
  bool is_c2 = false;     // variables within {x, y}
};

FormulaMetrics metrics(const FormulaPtr& f);

// Swaps every occurrence of variables x and y, bound and free alike.
FormulaPtr swap_xy(const FormulaPtr& f);

}  // namespace c2wl
