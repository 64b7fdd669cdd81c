#include "c2wl/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

namespace c2wl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == FormulaKind::And) {
    flatten_and(f->lhs, out);
    flatten_and(f->rhs, out);
  } else {
    out.push_back(f);
  }
}

size_t formula_size(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + formula_size(f->lhs) + formula_size(f->rhs);
}

void flatten_and_chain(const FormulaPtr& f, FormulaKind kind,
                       std::vector<FormulaPtr>& out) {
  if (f->kind == kind) {
    flatten_and_chain(f->lhs, kind, out);
    flatten_and_chain(f->rhs, kind, out);
  } else {
    out.push_back(f);
  }
}

bool has_quantifier(const FormulaPtr& f) {
  if (!f) return false;
  if (f->kind == FormulaKind::CountExists) return true;
  return has_quantifier(f->lhs) || has_quantifier(f->rhs);
}

// Cheap conjuncts first so the counting loop prunes early; stable, so the
// order stays deterministic.
std::vector<FormulaPtr> order_atoms_first(std::vector<FormulaPtr> fs) {
  std::stable_sort(fs.begin(), fs.end(),
                   [](const FormulaPtr& a, const FormulaPtr& b) {
                     bool qa = has_quantifier(a);
                     bool qb = has_quantifier(b);
                     if (qa != qb) return !qa;
                     return formula_size(a) < formula_size(b);
                   });
  return fs;
}

// Narrows each counting quantifier to the conjuncts that mention its
// variable. exists[k] v. (a & b) with v not free in a equals
// a & exists[k] v. b for every k >= 1, because the per-v truth values are
// scaled by a fixed factor of 0 or 1.
FormulaPtr minimize_scopes(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Pred:
    case FormulaKind::Edge:
    case FormulaKind::Eq:
      return f;
    case FormulaKind::Not:
      return mk_not(minimize_scopes(f->lhs));
    case FormulaKind::And:
      return mk_and(minimize_scopes(f->lhs), minimize_scopes(f->rhs));
    case FormulaKind::Or:
      return mk_or(minimize_scopes(f->lhs), minimize_scopes(f->rhs));
    case FormulaKind::CountExists: {
      FormulaPtr body = minimize_scopes(f->lhs);
      std::vector<FormulaPtr> conjuncts;
      flatten_and(body, conjuncts);
      std::vector<FormulaPtr> dependent, independent;
      for (const auto& c : conjuncts) {
        if (free_variables(c).count(f->var))
          dependent.push_back(c);
        else
          independent.push_back(c);
      }
      if (independent.empty())
        return mk_count_exists(f->index, f->var,
                               mk_and_all(order_atoms_first(dependent)));
      // The quantifier still ranges over all nodes, so keep a dependent
      // placeholder when every conjunct was hoisted.
      FormulaPtr inner = dependent.empty() ? mk_eq(f->var, f->var)
                                           : mk_and_all(order_atoms_first(dependent));
      independent.push_back(mk_count_exists(f->index, f->var, inner));
      return mk_and_all(order_atoms_first(independent));
    }
    default:
      throw std::invalid_argument("scope minimization expects a core formula");
  }
}

}  // namespace

Evaluator::Evaluator(const Graph& g, FormulaPtr f) : g_(g) {
  require(f != nullptr, "null formula");
  free_ = free_variables(f);
  root_ = build(minimize_scopes(desugar(f)));
  env_.assign(var_names_.size(), -1);
}

int Evaluator::build(const FormulaPtr& f) {
  auto var_id = [this](const std::string& name) {
    auto it = var_ids_.find(name);
    if (it != var_ids_.end()) return it->second;
    int id = static_cast<int>(var_names_.size());
    var_names_.push_back(name);
    var_ids_[name] = id;
    return id;
  };
  Node n;
  n.kind = f->kind;
  n.index = f->index;
  switch (f->kind) {
    case FormulaKind::Pred:
      n.var_a = var_id(f->var);
      break;
    case FormulaKind::Edge:
    case FormulaKind::Eq:
      n.var_a = var_id(f->var);
      n.var_b = var_id(f->var2);
      break;
    case FormulaKind::Not:
      n.children.push_back(build(f->lhs));
      break;
    case FormulaKind::And:
    case FormulaKind::Or: {
      // Flatten chains so short-circuiting sees all siblings.
      std::vector<FormulaPtr> parts;
      if (f->kind == FormulaKind::And) {
        flatten_and_chain(f, FormulaKind::And, parts);
      } else {
        flatten_and_chain(f, FormulaKind::Or, parts);
      }
      for (const auto& p : parts) n.children.push_back(build(p));
      break;
    }
    case FormulaKind::CountExists:
      n.var_a = var_id(f->var);
      n.children.push_back(build(f->lhs));
      break;
    default:
      throw std::invalid_argument("evaluator expects a core formula");
  }
  for (const std::string& name : free_variables(f))
    n.free_vars.push_back(var_id(name));
  std::sort(n.free_vars.begin(), n.free_vars.end());
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

bool Evaluator::eval(const Assignment& assignment) {
  for (const std::string& v : free_)
    require(assignment.count(v) > 0, "unassigned free variable: " + v);
  std::fill(env_.begin(), env_.end(), -1);
  for (const auto& [name, value] : assignment) {
    require(0 <= value && value < g_.num_nodes(), "assignment out of range: " + name);
    auto it = var_ids_.find(name);
    if (it != var_ids_.end()) env_[it->second] = value;
  }
  return eval_node(root_);
}

bool Evaluator::eval_node(int id) {
  const Node& n = nodes_[id];
  switch (n.kind) {
    case FormulaKind::Pred: {
      int v = env_[n.var_a];
      const auto& lab = g_.label(v);
      return n.index <= static_cast<int>(lab.size()) && lab[n.index - 1] != 0;
    }
    case FormulaKind::Edge:
      return g_.has_edge(env_[n.var_a], env_[n.var_b]);
    case FormulaKind::Eq:
      return env_[n.var_a] == env_[n.var_b];
    case FormulaKind::Not:
      return !eval_node(n.children[0]);
    case FormulaKind::And:
      for (int c : n.children)
        if (!eval_node(c)) return false;
      return true;
    case FormulaKind::Or:
      for (int c : n.children)
        if (eval_node(c)) return true;
      return false;
    case FormulaKind::CountExists: {
      std::vector<int> key_vals;
      key_vals.reserve(n.free_vars.size());
      for (int v : n.free_vars) key_vals.push_back(env_[v]);
      auto key = std::make_pair(id, std::move(key_vals));
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
      int saved = env_[n.var_a];
      int count = 0;
      for (int node = 0; node < g_.num_nodes() && count < n.index; ++node) {
        env_[n.var_a] = node;
        if (eval_node(n.children[0])) ++count;
      }
      env_[n.var_a] = saved;
      bool result = count >= n.index;
      memo_.emplace(std::move(key), result);
      return result;
    }
    default:
      throw std::logic_error("unreachable formula kind");
  }
}

bool evaluate(const Graph& g, const FormulaPtr& f, const Assignment& assignment) {
  Evaluator ev(g, f);
  return ev.eval(assignment);
}

namespace {

bool eval_naive_rec(const Graph& g, const FormulaPtr& f, Assignment& env) {
  switch (f->kind) {
    case FormulaKind::Pred: {
      auto it = env.find(f->var);
      require(it != env.end(), "unassigned free variable: " + f->var);
      const auto& lab = g.label(it->second);
      return f->index <= static_cast<int>(lab.size()) && lab[f->index - 1] != 0;
    }
    case FormulaKind::Edge:
    case FormulaKind::Eq: {
      auto ia = env.find(f->var);
      auto ib = env.find(f->var2);
      require(ia != env.end(), "unassigned free variable: " + f->var);
      require(ib != env.end(), "unassigned free variable: " + f->var2);
      if (f->kind == FormulaKind::Eq) return ia->second == ib->second;
      return g.has_edge(ia->second, ib->second);
    }
    case FormulaKind::Not:
      return !eval_naive_rec(g, f->lhs, env);
    case FormulaKind::And:
      return eval_naive_rec(g, f->lhs, env) && eval_naive_rec(g, f->rhs, env);
    case FormulaKind::Or:
      return eval_naive_rec(g, f->lhs, env) || eval_naive_rec(g, f->rhs, env);
    case FormulaKind::CountExists: {
      bool had = env.count(f->var) > 0;
      int saved = had ? env[f->var] : -1;
      int count = 0;
      for (int node = 0; node < g.num_nodes() && count < f->index; ++node) {
        env[f->var] = node;
        if (eval_naive_rec(g, f->lhs, env)) ++count;
      }
      if (had)
        env[f->var] = saved;
      else
        env.erase(f->var);
      return count >= f->index;
    }
    default:
      throw std::logic_error("unreachable formula kind");
  }
}

}  // namespace

bool evaluate_naive(const Graph& g, const FormulaPtr& f, const Assignment& assignment) {
  require(f != nullptr, "null formula");
  FormulaPtr core = desugar(f);
  for (const std::string& v : free_variables(core))
    require(assignment.count(v) > 0, "unassigned free variable: " + v);
  Assignment env = assignment;
  for (const auto& [name, value] : env)
    require(0 <= value && value < g.num_nodes(), "assignment out of range: " + name);
  return eval_naive_rec(g, core, env);
}

std::vector<bool> classify(const Graph& g, const FormulaPtr& f) {
  require(f != nullptr, "null formula");
  auto free = free_variables(f);
  require(free.size() == 1, "classification needs exactly one free variable");
  const std::string& v = *free.begin();
  Evaluator ev(g, f);
  std::vector<bool> out(g.num_nodes());
  for (int node = 0; node < g.num_nodes(); ++node)
    out[node] = ev.eval({{v, node}});
  return out;
}

}  // namespace c2wl
