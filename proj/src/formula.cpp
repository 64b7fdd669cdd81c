#include "c2wl/formula.hpp"

#include <algorithm>
#include <cctype>

namespace c2wl {

namespace {

FormulaPtr node(FormulaKind kind, int index, std::string var, std::string var2,
                FormulaPtr lhs, FormulaPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->index = index;
  f->var = std::move(var);
  f->var2 = std::move(var2);
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

FormulaPtr mk_pred(int index, const std::string& var) {
  require(index >= 1, "predicate index must be >= 1");
  return node(FormulaKind::Pred, index, var, "", nullptr, nullptr);
}

FormulaPtr mk_edge(const std::string& a, const std::string& b) {
  return node(FormulaKind::Edge, 0, a, b, nullptr, nullptr);
}

FormulaPtr mk_eq(const std::string& a, const std::string& b) {
  return node(FormulaKind::Eq, 0, a, b, nullptr, nullptr);
}

FormulaPtr mk_neq(const std::string& a, const std::string& b) {
  return mk_not(mk_eq(a, b));
}

FormulaPtr mk_not(FormulaPtr f) {
  require(f != nullptr, "null formula");
  return node(FormulaKind::Not, 0, "", "", std::move(f), nullptr);
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  require(a && b, "null formula");
  return node(FormulaKind::And, 0, "", "", std::move(a), std::move(b));
}

FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  require(a && b, "null formula");
  return node(FormulaKind::Or, 0, "", "", std::move(a), std::move(b));
}

FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  require(a && b, "null formula");
  return node(FormulaKind::Implies, 0, "", "", std::move(a), std::move(b));
}

FormulaPtr mk_exists(const std::string& var, FormulaPtr f) {
  require(f != nullptr, "null formula");
  return node(FormulaKind::Exists, 0, var, "", std::move(f), nullptr);
}

FormulaPtr mk_forall(const std::string& var, FormulaPtr f) {
  require(f != nullptr, "null formula");
  return node(FormulaKind::Forall, 0, var, "", std::move(f), nullptr);
}

FormulaPtr mk_count_exists(int k, const std::string& var, FormulaPtr f) {
  require(k >= 1, "counting threshold must be >= 1");
  require(f != nullptr, "null formula");
  return node(FormulaKind::CountExists, k, var, "", std::move(f), nullptr);
}

FormulaPtr mk_count_exact(int k, const std::string& var, FormulaPtr f) {
  require(k >= 0, "exact count must be >= 0");
  require(f != nullptr, "null formula");
  return node(FormulaKind::CountExistsExact, k, var, "", std::move(f), nullptr);
}

FormulaPtr mk_and_all(const std::vector<FormulaPtr>& fs) {
  require(!fs.empty(), "empty conjunction");
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = mk_and(acc, fs[i]);
  return acc;
}

FormulaPtr mk_or_all(const std::vector<FormulaPtr>& fs) {
  require(!fs.empty(), "empty disjunction");
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = mk_or(acc, fs[i]);
  return acc;
}

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->index != b->index || a->var != b->var ||
      a->var2 != b->var2)
    return false;
  return formulas_equal(a->lhs, b->lhs) && formulas_equal(a->rhs, b->rhs);
}

namespace {

enum class Tok {
  End, LParen, RParen, Dot, Comma, Tilde, Amp, Pipe, Arrow, Iff,
  Eq, Neq, Exists, Forall, EdgeHead, Pred, Var, LBracket, RBracket, Int,
};

struct Token {
  Tok kind;
  size_t pos;
  std::string text;
  int value = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    current_.pos = pos_;
    current_.text.clear();
    current_.value = 0;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': current_.kind = Tok::LParen; ++pos_; return;
      case ')': current_.kind = Tok::RParen; ++pos_; return;
      case '[': current_.kind = Tok::LBracket; ++pos_; return;
      case ']': current_.kind = Tok::RBracket; ++pos_; return;
      case '.': current_.kind = Tok::Dot; ++pos_; return;
      case ',': current_.kind = Tok::Comma; ++pos_; return;
      case '~': current_.kind = Tok::Tilde; ++pos_; return;
      case '&': current_.kind = Tok::Amp; ++pos_; return;
      case '|': current_.kind = Tok::Pipe; ++pos_; return;
      case '=': current_.kind = Tok::Eq; ++pos_; return;
      default: break;
    }
    if (c == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        current_.kind = Tok::Arrow;
        pos_ += 2;
        return;
      }
      throw ParseError("expected '->'", pos_);
    }
    if (c == '<') {
      if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
        current_.kind = Tok::Iff;
        pos_ += 3;
        return;
      }
      throw ParseError("expected '<->'", pos_);
    }
    if (c == '!') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        current_.kind = Tok::Neq;
        pos_ += 2;
        return;
      }
      throw ParseError("expected '!='", pos_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      current_.kind = Tok::Int;
      current_.text = text_.substr(start, pos_ - start);
      current_.value = std::stoi(current_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      current_.text = word;
      if (word == "exists") { current_.kind = Tok::Exists; return; }
      if (word == "forall") { current_.kind = Tok::Forall; return; }
      if (word == "E") { current_.kind = Tok::EdgeHead; return; }
      if (word.size() >= 2 && word[0] == 'P' &&
          std::all_of(word.begin() + 1, word.end(),
                      [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
        current_.kind = Tok::Pred;
        current_.value = std::stoi(word.substr(1));
        return;
      }
      current_.kind = Tok::Var;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& text_;
  size_t pos_ = 0;
  Token current_;
};

class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_iff();
    expect(Tok::End, "unexpected trailing input");
    return f;
  }

private:
  Token expect(Tok kind, const std::string& msg) {
    if (lex_.peek().kind != kind) throw ParseError(msg, lex_.peek().pos);
    return lex_.take();
  }

  FormulaPtr parse_iff() {
    FormulaPtr lhs = parse_implies();
    if (lex_.peek().kind == Tok::Iff) {
      lex_.take();
      FormulaPtr rhs = parse_iff();
      return mk_and(mk_implies(lhs, rhs), mk_implies(rhs, lhs));
    }
    return lhs;
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return mk_implies(lhs, parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      lhs = mk_or(lhs, parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      lhs = mk_and(lhs, parse_unary());
    }
    return lhs;
  }

  std::string parse_var() {
    Token t = expect(Tok::Var, "expected a variable name");
    return t.text;
  }

  FormulaPtr parse_unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Tilde:
        lex_.take();
        return mk_not(parse_unary());
      case Tok::Forall: {
        lex_.take();
        std::string v = parse_var();
        expect(Tok::Dot, "expected '.' after quantified variable");
        return mk_forall(v, parse_unary());
      }
      case Tok::Exists: {
        lex_.take();
        bool exact = false;
        int k = 1;
        bool counted = false;
        if (lex_.peek().kind == Tok::LBracket) {
          lex_.take();
          counted = true;
          if (lex_.peek().kind == Tok::Eq) {
            lex_.take();
            exact = true;
          }
          Token kt = expect(Tok::Int, "expected a count");
          k = kt.value;
          if (!exact && k < 1)
            throw ParseError("count must be >= 1", kt.pos);
          expect(Tok::RBracket, "expected ']'");
        }
        std::string v = parse_var();
        expect(Tok::Dot, "expected '.' after quantified variable");
        FormulaPtr body = parse_unary();
        if (!counted) return mk_exists(v, body);
        return exact ? mk_count_exact(k, v, body) : mk_count_exists(k, v, body);
      }
      case Tok::LParen: {
        lex_.take();
        FormulaPtr f = parse_iff();
        expect(Tok::RParen, "expected ')'");
        return f;
      }
      case Tok::EdgeHead: {
        lex_.take();
        expect(Tok::LParen, "expected '(' after E");
        std::string a = parse_var();
        expect(Tok::Comma, "expected ','");
        std::string b = parse_var();
        expect(Tok::RParen, "expected ')'");
        return mk_edge(a, b);
      }
      case Tok::Pred: {
        Token p = lex_.take();
        if (p.value < 1) throw ParseError("predicate index must be >= 1", p.pos);
        expect(Tok::LParen, "expected '(' after predicate");
        std::string a = parse_var();
        expect(Tok::RParen, "expected ')'");
        return mk_pred(p.value, a);
      }
      case Tok::Var: {
        Token a = lex_.take();
        if (lex_.peek().kind == Tok::Eq) {
          lex_.take();
          return mk_eq(a.text, parse_var());
        }
        if (lex_.peek().kind == Tok::Neq) {
          lex_.take();
          return mk_neq(a.text, parse_var());
        }
        throw ParseError("expected '=' or '!=' after variable", lex_.peek().pos);
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  Lexer lex_;
};

// Precedence used by the printer; higher binds tighter.
constexpr int kPrecImplies = 1;
constexpr int kPrecOr = 2;
constexpr int kPrecAnd = 3;
constexpr int kPrecUnary = 4;
constexpr int kPrecAtom = 5;

void print_rec(const FormulaPtr& f, int min_prec, std::string& out) {
  auto wrap = [&](int prec, auto&& body) {
    bool parens = prec < min_prec;
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  };
  switch (f->kind) {
    case FormulaKind::Pred:
      out += 'P' + std::to_string(f->index) + '(' + f->var + ')';
      return;
    case FormulaKind::Edge:
      out += "E(" + f->var + ", " + f->var2 + ')';
      return;
    case FormulaKind::Eq:
      wrap(kPrecAtom, [&] { out += f->var + " = " + f->var2; });
      return;
    case FormulaKind::Not:
      if (f->lhs->kind == FormulaKind::Eq) {
        wrap(kPrecAtom, [&] { out += f->lhs->var + " != " + f->lhs->var2; });
        return;
      }
      wrap(kPrecUnary, [&] {
        out += '~';
        print_rec(f->lhs, kPrecUnary, out);
      });
      return;
    case FormulaKind::And:
      wrap(kPrecAnd, [&] {
        print_rec(f->lhs, kPrecAnd, out);
        out += " & ";
        print_rec(f->rhs, kPrecAnd + 1, out);
      });
      return;
    case FormulaKind::Or:
      wrap(kPrecOr, [&] {
        print_rec(f->lhs, kPrecOr, out);
        out += " | ";
        print_rec(f->rhs, kPrecOr + 1, out);
      });
      return;
    case FormulaKind::Implies:
      wrap(kPrecImplies, [&] {
        print_rec(f->lhs, kPrecImplies + 1, out);
        out += " -> ";
        print_rec(f->rhs, kPrecImplies, out);
      });
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    case FormulaKind::CountExists:
    case FormulaKind::CountExistsExact:
      wrap(kPrecUnary, [&] {
        if (f->kind == FormulaKind::Forall) {
          out += "forall ";
        } else {
          out += "exists";
          if (f->kind == FormulaKind::CountExists)
            out += '[' + std::to_string(f->index) + ']';
          if (f->kind == FormulaKind::CountExistsExact)
            out += "[=" + std::to_string(f->index) + ']';
          out += ' ';
        }
        out += f->var + ". ";
        print_rec(f->lhs, kPrecUnary, out);
      });
      return;
  }
}

bool is_quantifier(FormulaKind k) {
  return k == FormulaKind::Exists || k == FormulaKind::Forall ||
         k == FormulaKind::CountExists || k == FormulaKind::CountExistsExact;
}

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case FormulaKind::Pred:
      if (!bound.count(f->var)) out.insert(f->var);
      return;
    case FormulaKind::Edge:
    case FormulaKind::Eq:
      if (!bound.count(f->var)) out.insert(f->var);
      if (!bound.count(f->var2)) out.insert(f->var2);
      return;
    default:
      break;
  }
  if (is_quantifier(f->kind)) {
    bool was_bound = bound.count(f->var) > 0;
    bound.insert(f->var);
    collect_free(f->lhs, bound, out);
    if (!was_bound) bound.erase(f->var);
    return;
  }
  collect_free(f->lhs, bound, out);
  collect_free(f->rhs, bound, out);
}

void collect_all(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case FormulaKind::Pred:
      out.insert(f->var);
      return;
    case FormulaKind::Edge:
    case FormulaKind::Eq:
      out.insert(f->var);
      out.insert(f->var2);
      return;
    default:
      break;
  }
  if (is_quantifier(f->kind)) out.insert(f->var);
  collect_all(f->lhs, out);
  collect_all(f->rhs, out);
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  return p.parse();
}

std::string print_formula(const FormulaPtr& f) {
  require(f != nullptr, "null formula");
  std::string out;
  print_rec(f, 0, out);
  return out;
}

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

FormulaPtr desugar(const FormulaPtr& f) {
  require(f != nullptr, "null formula");
  switch (f->kind) {
    case FormulaKind::Pred:
    case FormulaKind::Edge:
    case FormulaKind::Eq:
      return f;
    case FormulaKind::Not:
      return mk_not(desugar(f->lhs));
    case FormulaKind::And:
      return mk_and(desugar(f->lhs), desugar(f->rhs));
    case FormulaKind::Or:
      return mk_or(desugar(f->lhs), desugar(f->rhs));
    case FormulaKind::Implies:
      return mk_or(mk_not(desugar(f->lhs)), desugar(f->rhs));
    case FormulaKind::Exists:
      return mk_count_exists(1, f->var, desugar(f->lhs));
    case FormulaKind::Forall:
      return mk_not(mk_count_exists(1, f->var, mk_not(desugar(f->lhs))));
    case FormulaKind::CountExists:
      return mk_count_exists(f->index, f->var, desugar(f->lhs));
    case FormulaKind::CountExistsExact: {
      FormulaPtr body = desugar(f->lhs);
      if (f->index == 0) return mk_not(mk_count_exists(1, f->var, body));
      return mk_and(mk_count_exists(f->index, f->var, body),
                    mk_not(mk_count_exists(f->index + 1, f->var, body)));
    }
  }
  throw std::invalid_argument("unknown formula kind");
}

namespace {

void metrics_rec(const FormulaPtr& f, int& depth, int& rank) {
  switch (f->kind) {
    case FormulaKind::Pred:
    case FormulaKind::Edge:
    case FormulaKind::Eq:
      depth = 0;
      rank = 0;
      return;
    case FormulaKind::Not:
      metrics_rec(f->lhs, depth, rank);
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      int dl, rl, dr, rr;
      metrics_rec(f->lhs, dl, rl);
      metrics_rec(f->rhs, dr, rr);
      depth = std::max(dl, dr);
      rank = std::max(rl, rr);
      return;
    }
    case FormulaKind::CountExists: {
      int d, r;
      metrics_rec(f->lhs, d, r);
      depth = d + 1;
      rank = std::max(r, f->index);
      return;
    }
    default:
      throw std::invalid_argument("metrics expects a core formula");
  }
}

}  // namespace

FormulaMetrics metrics(const FormulaPtr& f) {
  require(f != nullptr, "null formula");
  FormulaMetrics m;
  metrics_rec(desugar(f), m.depth, m.counting_rank);
  m.variables = all_variables(f);
  m.is_c2 = std::all_of(m.variables.begin(), m.variables.end(),
                        [](const std::string& v) { return v == "x" || v == "y"; });
  return m;
}

FormulaPtr swap_xy(const FormulaPtr& f) {
  if (!f) return nullptr;
  auto sw = [](const std::string& v) -> std::string {
    if (v == "x") return "y";
    if (v == "y") return "x";
    return v;
  };
  return node(f->kind, f->index, sw(f->var), sw(f->var2), swap_xy(f->lhs),
              swap_xy(f->rhs));
}

}  // namespace c2wl
