#include "c2wl/normal_form.hpp"

#include <array>
#include <optional>
#include <set>
#include <stdexcept>

namespace c2wl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Truth of (E(x,y), E(y,x), x = y) under each kind.
struct KindBits {
  GammaKind kind;
  bool forward;
  bool backward;
  bool equal;
};

// Enumeration order fixes the order of expanded disjuncts.
constexpr std::array<KindBits, 5> kKinds{{
    {GammaKind::Equal, false, false, true},
    {GammaKind::NoEdgeDistinct, false, false, false},
    {GammaKind::OnlyForward, true, false, false},
    {GammaKind::OnlyBackward, false, true, false},
    {GammaKind::BothEdges, true, true, false},
}};

bool is_atom_or_quantifier(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Pred:
    case FormulaKind::Edge:
    case FormulaKind::Eq:
    case FormulaKind::CountExists:
      return true;
    default:
      return false;
  }
}

// Negation normal form over the propositional skeleton; quantified
// subformulas stay opaque.
FormulaPtr to_nnf(const FormulaPtr& f, bool positive) {
  if (is_atom_or_quantifier(f)) return positive ? f : mk_not(f);
  switch (f->kind) {
    case FormulaKind::Not:
      return to_nnf(f->lhs, !positive);
    case FormulaKind::And:
      return positive ? mk_and(to_nnf(f->lhs, true), to_nnf(f->rhs, true))
                      : mk_or(to_nnf(f->lhs, false), to_nnf(f->rhs, false));
    case FormulaKind::Or:
      return positive ? mk_or(to_nnf(f->lhs, true), to_nnf(f->rhs, true))
                      : mk_and(to_nnf(f->lhs, false), to_nnf(f->rhs, false));
    default:
      throw std::invalid_argument("normal form expects a core formula");
  }
}

using Clause = std::vector<FormulaPtr>;  // conjunction of literals

// Distributes conjunction over disjunction; throws past the cap.
std::vector<Clause> to_dnf(const FormulaPtr& f, size_t cap) {
  if (f->kind == FormulaKind::Or) {
    std::vector<Clause> left = to_dnf(f->lhs, cap);
    std::vector<Clause> right = to_dnf(f->rhs, cap);
    if (left.size() + right.size() > cap)
      throw std::runtime_error("normal form exceeds the disjunct cap");
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
  if (f->kind == FormulaKind::And) {
    std::vector<Clause> left = to_dnf(f->lhs, cap);
    std::vector<Clause> right = to_dnf(f->rhs, cap);
    if (left.size() * right.size() > cap)
      throw std::runtime_error("normal form exceeds the disjunct cap");
    std::vector<Clause> out;
    out.reserve(left.size() * right.size());
    for (const Clause& a : left)
      for (const Clause& b : right) {
        Clause merged = a;
        merged.insert(merged.end(), b.begin(), b.end());
        out.push_back(std::move(merged));
      }
    return out;
  }
  return {Clause{f}};
}

// A literal over both variables must be a possibly negated binary atom.
struct BinaryLiteral {
  FormulaKind atom;  // Edge or Eq
  bool forward;      // atom argument order is (x, y)
  bool positive;
};

std::optional<BinaryLiteral> classify_binary(const FormulaPtr& lit) {
  bool positive = lit->kind != FormulaKind::Not;
  const FormulaPtr& atom = positive ? lit : lit->lhs;
  if (atom->kind != FormulaKind::Edge && atom->kind != FormulaKind::Eq)
    return std::nullopt;
  std::set<std::string> vars = free_variables(atom);
  if (vars != std::set<std::string>{"x", "y"}) return std::nullopt;
  return BinaryLiteral{atom->kind, atom->var == "x", positive};
}

}  // namespace

const char* gamma_kind_name(GammaKind kind) {
  switch (kind) {
    case GammaKind::BothEdges: return "both_edges";
    case GammaKind::Equal: return "equal";
    case GammaKind::OnlyForward: return "only_forward";
    case GammaKind::OnlyBackward: return "only_backward";
    case GammaKind::NoEdgeDistinct: return "no_edge_distinct";
  }
  throw std::invalid_argument("unknown gamma kind");
}

FormulaPtr gamma_formula(GammaKind kind) {
  FormulaPtr exy = mk_edge("x", "y");
  FormulaPtr eyx = mk_edge("y", "x");
  switch (kind) {
    case GammaKind::BothEdges:
      return mk_and_all({exy, eyx, mk_neq("x", "y")});
    case GammaKind::Equal:
      return mk_eq("x", "y");
    case GammaKind::OnlyForward:
      return mk_and(exy, mk_not(eyx));
    case GammaKind::OnlyBackward:
      return mk_and(mk_not(exy), eyx);
    case GammaKind::NoEdgeDistinct:
      return mk_and_all({mk_not(exy), mk_not(eyx), mk_neq("x", "y")});
  }
  throw std::invalid_argument("unknown gamma kind");
}

NormalForm normalize_c2(const FormulaPtr& f, size_t max_disjuncts) {
  require(f != nullptr, "null formula");
  FormulaMetrics m = metrics(f);
  require(m.is_c2, "normal form needs a formula over x and y only");

  FormulaPtr core = desugar(f);
  // Both variables take part in every disjunct; tie absent ones trivially.
  std::set<std::string> free = free_variables(core);
  if (!free.count("x")) core = mk_and(mk_eq("x", "x"), core);
  if (!free.count("y")) core = mk_and(mk_eq("y", "y"), core);

  std::vector<Clause> clauses = to_dnf(to_nnf(core, true), max_disjuncts);

  NormalForm nf;
  std::set<std::string> seen;
  size_t expanded = 0;
  for (const Clause& clause : clauses) {
    std::vector<FormulaPtr> alpha, beta;
    bool need_forward = false, forbid_forward = false;
    bool need_backward = false, forbid_backward = false;
    bool need_equal = false, forbid_equal = false;
    for (const FormulaPtr& lit : clause) {
      std::set<std::string> vars = free_variables(lit);
      if (vars == std::set<std::string>{"x", "y"}) {
        auto bin = classify_binary(lit);
        require(bin.has_value(),
                "a subformula over both variables must be a binary atom");
        if (bin->atom == FormulaKind::Eq) {
          (bin->positive ? need_equal : forbid_equal) = true;
        } else if (bin->forward) {
          (bin->positive ? need_forward : forbid_forward) = true;
        } else {
          (bin->positive ? need_backward : forbid_backward) = true;
        }
      } else if (vars == std::set<std::string>{"y"}) {
        beta.push_back(lit);
      } else {
        // Free variables within {x}, including closed subformulas.
        alpha.push_back(lit);
      }
    }
    FormulaPtr alpha_f = alpha.empty() ? mk_eq("x", "x") : mk_and_all(alpha);
    FormulaPtr beta_f = beta.empty() ? mk_eq("y", "y") : mk_and_all(beta);
    for (const KindBits& kb : kKinds) {
      if (need_forward && !kb.forward) continue;
      if (forbid_forward && kb.forward) continue;
      if (need_backward && !kb.backward) continue;
      if (forbid_backward && kb.backward) continue;
      if (need_equal && !kb.equal) continue;
      if (forbid_equal && kb.equal) continue;
      if (++expanded > max_disjuncts)
        throw std::runtime_error("normal form exceeds the disjunct cap");
      std::string key = print_formula(alpha_f) + '\x1f' + print_formula(beta_f) +
                        '\x1f' + gamma_kind_name(kb.kind);
      if (!seen.insert(key).second) continue;
      nf.disjuncts.push_back({alpha_f, beta_f, kb.kind});
    }
  }
  if (nf.disjuncts.empty()) {
    nf.disjuncts.push_back(
        {mk_neq("x", "x"), mk_neq("y", "y"), GammaKind::Equal});
  }
  return nf;
}

FormulaPtr normal_form_to_formula(const NormalForm& nf) {
  require(!nf.disjuncts.empty(), "empty normal form");
  std::vector<FormulaPtr> parts;
  for (const auto& d : nf.disjuncts)
    parts.push_back(mk_and(mk_and(d.alpha, d.beta), gamma_formula(d.gamma)));
  return mk_or_all(parts);
}

}  // namespace c2wl
