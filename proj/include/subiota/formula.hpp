#ifndef SUBIOTA_FORMULA_HPP
#define SUBIOTA_FORMULA_HPP

// Abstract syntax for the bipredicational first-order language with
// qualified identity and qualified definite descriptions, plus the basic
// syntactic operations (free variables, substitution, mirror atoms).

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "subiota/errors.hpp"

namespace subiota {

enum class Polarity { Positive, Negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

// Variables and constants live in disjoint, lexically separated namespaces:
// a name is a variable iff it is a single letter u..z followed by an
// optional digit suffix. Everything else names a constant.
inline bool is_variable_name(const std::string& s) {
  if (s.empty() || s[0] < 'u' || s[0] > 'z') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto tail = [&](char c) {
    return head(c) || (c >= '0' && c <= '9') || c == '-' || c == '\'';
  };
  if (!head(s[0])) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!tail(s[i])) return false;
  return s.back() != '-';
}

// A nominal term: either a nominal constant or a nominal variable.
struct Term {
  enum class Kind { Constant, Variable };
  Kind kind;
  std::string name;

  static Term constant(std::string n) {
    if (!is_identifier(n) || is_variable_name(n))
      throw Error("not a constant name: '" + n + "'");
    return Term{Kind::Constant, std::move(n)};
  }
  static Term variable(std::string n) {
    if (!is_variable_name(n)) throw Error("not a variable name: '" + n + "'");
    return Term{Kind::Variable, std::move(n)};
  }
  // Classify a bare name by the lexical convention.
  static Term from_name(std::string n) {
    return is_variable_name(n) ? variable(std::move(n)) : constant(std::move(n));
  }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.name < b.name;
  }
};

struct PredicateSymbol {
  std::string name;
  std::size_t arity = 1;

  PredicateSymbol() = default;
  PredicateSymbol(std::string n, std::size_t k) : name(std::move(n)), arity(k) {
    if (!is_identifier(name)) throw Error("bad predicate name: '" + name + "'");
    if (arity < 1) throw Error("predicate '" + name + "' must have arity >= 1");
  }

  friend bool operator==(const PredicateSymbol& a, const PredicateSymbol& b) {
    return a.name == b.name && a.arity == b.arity;
  }
  friend bool operator!=(const PredicateSymbol& a, const PredicateSymbol& b) { return !(a == b); }
  friend bool operator<(const PredicateSymbol& a, const PredicateSymbol& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.arity < b.arity;
  }
};

// A finite, nonempty set of predicate symbols, kept sorted by name so that
// structural equality of formulas coincides with set equality.
class QSet {
 public:
  QSet() = default;  // only as a transient; validated members come via of()

  static QSet of(std::vector<PredicateSymbol> preds) {
    if (preds.empty()) throw EmptyQSetError("qualified identity over the empty predicate set");
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    QSet q;
    q.preds_ = std::move(preds);
    return q;
  }

  const std::vector<PredicateSymbol>& preds() const { return preds_; }
  std::size_t size() const { return preds_.size(); }
  bool contains(const PredicateSymbol& p) const {
    return std::binary_search(preds_.begin(), preds_.end(), p);
  }
  std::optional<PredicateSymbol> find(const std::string& name) const {
    for (const auto& p : preds_)
      if (p.name == name) return p;
    return std::nullopt;
  }

  friend bool operator==(const QSet& a, const QSet& b) { return a.preds_ == b.preds_; }
  friend bool operator!=(const QSet& a, const QSet& b) { return !(a == b); }
  friend bool operator<(const QSet& a, const QSet& b) { return a.preds_ < b.preds_; }

 private:
  std::vector<PredicateSymbol> preds_;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// phi(x): an atomic or compound condition with a distinguished bound
// variable, used as the body of a definite description iota_Q x. phi.
struct DescriptionTerm {
  QSet q;
  std::string var;
  FormulaPtr phi;
};

// One argument slot of the predicate context psi(_) of a description
// predication: either the hole the description occupies, a fixed nominal
// term, or a further (nested) description.
struct PsiHole {};
using PsiSlot = std::variant<PsiHole, Term, DescriptionTerm>;

// ---- formula node payloads ----

// Predication phi(o1..on) or predication failure -phi(o1..on). The failure
// operator is primitive and only ever wraps atomic argument structure.
struct Predication {
  Polarity polarity;
  PredicateSymbol pred;
  std::vector<Term> args;
};

struct Bottom {};
struct And { FormulaPtr lhs, rhs; };
struct Or { FormulaPtr lhs, rhs; };
struct Implies { FormulaPtr lhs, rhs; };
struct Forall { std::string var; FormulaPtr body; };
struct Exists { std::string var; FormulaPtr body; };

// o1 =+_Q o2  /  o1 =-_Q o2 (contextually defined; kept as a node).
struct QIdent {
  Polarity sign;
  Term lhs, rhs;
  QSet q;
};

// psi(iota_Q x. phi) with outer polarity: a predication on a qualified
// definite description. The description occupies the hole slots of psi;
// further descriptions may sit in other slots (they elaborate recursively,
// outermost-leftmost first).
struct IotaPred {
  Polarity outer;
  PredicateSymbol psi;
  std::vector<PsiSlot> slots;
  QSet q;
  std::string var;
  FormulaPtr phi;
};

class Formula {
 public:
  using Node =
      std::variant<Predication, Bottom, And, Or, Implies, Forall, Exists, QIdent, IotaPred>;

  explicit Formula(Node n) : node(std::move(n)) {}
  Node node;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

// ---- constructors ----

inline FormulaPtr make_predication(Polarity pol, PredicateSymbol p, std::vector<Term> args) {
  if (args.size() != p.arity)
    throw Error("predicate '" + p.name + "' expects " + std::to_string(p.arity) +
                " argument(s), got " + std::to_string(args.size()));
  return std::make_shared<Formula>(Formula::Node(Predication{pol, std::move(p), std::move(args)}));
}
inline FormulaPtr make_atom(PredicateSymbol p, std::vector<Term> args) {
  return make_predication(Polarity::Positive, std::move(p), std::move(args));
}
inline FormulaPtr make_negpred(PredicateSymbol p, std::vector<Term> args) {
  return make_predication(Polarity::Negative, std::move(p), std::move(args));
}
inline FormulaPtr make_bottom() { return std::make_shared<Formula>(Formula::Node(Bottom{})); }
inline FormulaPtr make_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula::Node(And{std::move(a), std::move(b)}));
}
inline FormulaPtr make_or(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula::Node(Or{std::move(a), std::move(b)}));
}
inline FormulaPtr make_implies(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula::Node(Implies{std::move(a), std::move(b)}));
}
inline FormulaPtr make_forall(std::string var, FormulaPtr body) {
  if (!is_variable_name(var)) throw Error("binder variable '" + var + "' is not a variable name");
  return std::make_shared<Formula>(Formula::Node(Forall{std::move(var), std::move(body)}));
}
inline FormulaPtr make_exists(std::string var, FormulaPtr body) {
  if (!is_variable_name(var)) throw Error("binder variable '" + var + "' is not a variable name");
  return std::make_shared<Formula>(Formula::Node(Exists{std::move(var), std::move(body)}));
}
inline FormulaPtr make_qident(Polarity sign, Term lhs, Term rhs, QSet q) {
  return std::make_shared<Formula>(
      Formula::Node(QIdent{sign, std::move(lhs), std::move(rhs), std::move(q)}));
}
inline FormulaPtr make_iota_pred(Polarity outer, PredicateSymbol psi, std::vector<PsiSlot> slots,
                                 QSet q, std::string var, FormulaPtr phi);

// Notational sugar from the defined symbols: !A and A <-> B.
inline FormulaPtr make_not(FormulaPtr a) { return make_implies(std::move(a), make_bottom()); }
inline FormulaPtr make_iff(FormulaPtr a, FormulaPtr b) {
  return make_and(make_implies(a, b), make_implies(b, a));
}

// ---- comparison ----

int compare(const Formula& a, const Formula& b);

inline int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};
using FormulaSet = std::set<FormulaPtr, FormulaLess>;

namespace detail {

inline int cmp3(int c) { return c; }
template <typename T>
int scalar_cmp(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}
inline int cmp_term(const Term& a, const Term& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}
inline int cmp_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (int c = scalar_cmp(a.size(), b.size())) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = cmp_term(a[i], b[i])) return c;
  return 0;
}
inline int cmp_pred(const PredicateSymbol& a, const PredicateSymbol& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}
inline int cmp_qset(const QSet& a, const QSet& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}
int cmp_slot(const PsiSlot& a, const PsiSlot& b);

}  // namespace detail

inline int compare(const Formula& a, const Formula& b) {
  using namespace detail;
  if (int c = scalar_cmp(a.node.index(), b.node.index())) return c;
  struct V {
    const Formula& rhs;
    int operator()(const Predication& x) const {
      const auto& y = *rhs.as<Predication>();
      if (int c = scalar_cmp(static_cast<int>(x.polarity), static_cast<int>(y.polarity))) return c;
      if (int c = cmp_pred(x.pred, y.pred)) return c;
      return cmp_terms(x.args, y.args);
    }
    int operator()(const Bottom&) const { return 0; }
    int operator()(const And& x) const {
      const auto& y = *rhs.as<And>();
      if (int c = compare(x.lhs, y.lhs)) return c;
      return compare(x.rhs, y.rhs);
    }
    int operator()(const Or& x) const {
      const auto& y = *rhs.as<Or>();
      if (int c = compare(x.lhs, y.lhs)) return c;
      return compare(x.rhs, y.rhs);
    }
    int operator()(const Implies& x) const {
      const auto& y = *rhs.as<Implies>();
      if (int c = compare(x.lhs, y.lhs)) return c;
      return compare(x.rhs, y.rhs);
    }
    int operator()(const Forall& x) const {
      const auto& y = *rhs.as<Forall>();
      if (int c = scalar_cmp(x.var, y.var)) return c;
      return compare(x.body, y.body);
    }
    int operator()(const Exists& x) const {
      const auto& y = *rhs.as<Exists>();
      if (int c = scalar_cmp(x.var, y.var)) return c;
      return compare(x.body, y.body);
    }
    int operator()(const QIdent& x) const {
      const auto& y = *rhs.as<QIdent>();
      if (int c = scalar_cmp(static_cast<int>(x.sign), static_cast<int>(y.sign))) return c;
      if (int c = cmp_term(x.lhs, y.lhs)) return c;
      if (int c = cmp_term(x.rhs, y.rhs)) return c;
      return cmp_qset(x.q, y.q);
    }
    int operator()(const IotaPred& x) const {
      const auto& y = *rhs.as<IotaPred>();
      if (int c = scalar_cmp(static_cast<int>(x.outer), static_cast<int>(y.outer))) return c;
      if (int c = cmp_pred(x.psi, y.psi)) return c;
      if (int c = scalar_cmp(x.slots.size(), y.slots.size())) return c;
      for (std::size_t i = 0; i < x.slots.size(); ++i)
        if (int c = cmp_slot(x.slots[i], y.slots[i])) return c;
      if (int c = cmp_qset(x.q, y.q)) return c;
      if (int c = scalar_cmp(x.var, y.var)) return c;
      return compare(x.phi, y.phi);
    }
  };
  return std::visit(V{b}, a.node);
}

namespace detail {
inline int cmp_slot(const PsiSlot& a, const PsiSlot& b) {
  if (int c = scalar_cmp(a.index(), b.index())) return c;
  if (const auto* t = std::get_if<Term>(&a)) return cmp_term(*t, std::get<Term>(b));
  if (const auto* d = std::get_if<DescriptionTerm>(&a)) {
    const auto& e = std::get<DescriptionTerm>(b);
    if (int c = cmp_qset(d->q, e.q)) return c;
    if (int c = scalar_cmp(d->var, e.var)) return c;
    return compare(d->phi, e.phi);
  }
  return 0;
}
}  // namespace detail

inline FormulaPtr make_iota_pred(Polarity outer, PredicateSymbol psi, std::vector<PsiSlot> slots,
                                 QSet q, std::string var, FormulaPtr phi) {
  if (slots.size() != psi.arity)
    throw Error("predicate context '" + psi.name + "' expects " + std::to_string(psi.arity) +
                " slot(s), got " + std::to_string(slots.size()));
  if (!is_variable_name(var))
    throw Error("description variable '" + var + "' is not a variable name");
  bool has_hole = false;
  for (const auto& s : slots) has_hole |= std::holds_alternative<PsiHole>(s);
  if (!has_hole) throw Error("description predication needs at least one hole in psi");
  return std::make_shared<Formula>(Formula::Node(
      IotaPred{outer, std::move(psi), std::move(slots), std::move(q), std::move(var), std::move(phi)}));
}

// ---- variable occurrence / substitution ----

void collect_free_variables(const FormulaPtr& f, std::set<std::string>& out);

inline std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_free_variables(f, out);
  return out;
}

// Every variable name occurring in f, free or bound (binders included).
void collect_all_variables(const FormulaPtr& f, std::set<std::string>& out);

inline void collect_free_variables(const FormulaPtr& f, std::set<std::string>& out) {
  struct V {
    std::set<std::string>& out;
    void operator()(const Predication& p) const {
      for (const auto& t : p.args)
        if (t.is_variable()) out.insert(t.name);
    }
    void operator()(const Bottom&) const {}
    void operator()(const And& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Or& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Implies& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Forall& n) const { bound(n.var, n.body); }
    void operator()(const Exists& n) const { bound(n.var, n.body); }
    void operator()(const QIdent& n) const {
      if (n.lhs.is_variable()) out.insert(n.lhs.name);
      if (n.rhs.is_variable()) out.insert(n.rhs.name);
    }
    void operator()(const IotaPred& n) const {
      for (const auto& s : n.slots) {
        if (const auto* t = std::get_if<Term>(&s)) {
          if (t->is_variable()) out.insert(t->name);
        } else if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
          bound(d->var, d->phi);
        }
      }
      bound(n.var, n.phi);
    }
    void rec(const FormulaPtr& g) const { collect_free_variables(g, out); }
    void bound(const std::string& v, const FormulaPtr& body) const {
      std::set<std::string> inner;
      collect_free_variables(body, inner);
      inner.erase(v);
      out.insert(inner.begin(), inner.end());
    }
  };
  std::visit(V{out}, f->node);
}

inline void collect_all_variables(const FormulaPtr& f, std::set<std::string>& out) {
  struct V {
    std::set<std::string>& out;
    void operator()(const Predication& p) const {
      for (const auto& t : p.args)
        if (t.is_variable()) out.insert(t.name);
    }
    void operator()(const Bottom&) const {}
    void operator()(const And& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Or& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Implies& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Forall& n) const { out.insert(n.var); rec(n.body); }
    void operator()(const Exists& n) const { out.insert(n.var); rec(n.body); }
    void operator()(const QIdent& n) const {
      if (n.lhs.is_variable()) out.insert(n.lhs.name);
      if (n.rhs.is_variable()) out.insert(n.rhs.name);
    }
    void operator()(const IotaPred& n) const {
      for (const auto& s : n.slots) {
        if (const auto* t = std::get_if<Term>(&s)) {
          if (t->is_variable()) out.insert(t->name);
        } else if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
          out.insert(d->var);
          rec(d->phi);
        }
      }
      out.insert(n.var);
      rec(n.phi);
    }
    void rec(const FormulaPtr& g) const { collect_all_variables(g, out); }
  };
  std::visit(V{out}, f->node);
}

// Names of constants occurring anywhere in f.
void collect_constants(const FormulaPtr& f, std::set<std::string>& out);

inline void collect_constants(const FormulaPtr& f, std::set<std::string>& out) {
  struct V {
    std::set<std::string>& out;
    void operator()(const Predication& p) const {
      for (const auto& t : p.args)
        if (t.is_constant()) out.insert(t.name);
    }
    void operator()(const Bottom&) const {}
    void operator()(const And& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Or& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Implies& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Forall& n) const { rec(n.body); }
    void operator()(const Exists& n) const { rec(n.body); }
    void operator()(const QIdent& n) const {
      if (n.lhs.is_constant()) out.insert(n.lhs.name);
      if (n.rhs.is_constant()) out.insert(n.rhs.name);
    }
    void operator()(const IotaPred& n) const {
      for (const auto& s : n.slots) {
        if (const auto* t = std::get_if<Term>(&s)) {
          if (t->is_constant()) out.insert(t->name);
        } else if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
          rec(d->phi);
        }
      }
      rec(n.phi);
    }
    void rec(const FormulaPtr& g) const { collect_constants(g, out); }
  };
  std::visit(V{out}, f->node);
}

// Predicate symbols occurring anywhere in f (including QSets).
void collect_predicates(const FormulaPtr& f, std::set<PredicateSymbol>& out);

inline void collect_predicates(const FormulaPtr& f, std::set<PredicateSymbol>& out) {
  struct V {
    std::set<PredicateSymbol>& out;
    void operator()(const Predication& p) const { out.insert(p.pred); }
    void operator()(const Bottom&) const {}
    void operator()(const And& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Or& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Implies& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Forall& n) const { rec(n.body); }
    void operator()(const Exists& n) const { rec(n.body); }
    void operator()(const QIdent& n) const {
      out.insert(n.q.preds().begin(), n.q.preds().end());
    }
    void operator()(const IotaPred& n) const {
      out.insert(n.psi);
      out.insert(n.q.preds().begin(), n.q.preds().end());
      for (const auto& s : n.slots)
        if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
          out.insert(d->q.preds().begin(), d->q.preds().end());
          rec(d->phi);
        }
      rec(n.phi);
    }
    void rec(const FormulaPtr& g) const { collect_predicates(g, out); }
  };
  std::visit(V{out}, f->node);
}

inline bool occurs_free(const FormulaPtr& f, const std::string& var) {
  return free_variables(f).count(var) > 0;
}
inline bool mentions_constant(const FormulaPtr& f, const std::string& name) {
  std::set<std::string> cs;
  collect_constants(f, cs);
  return cs.count(name) > 0;
}

// Replaces every free occurrence of `var` by `to` (which may be a constant
// or a variable). Throws CaptureError when `to` is a variable that would be
// captured by a binder; bound occurrences are left untouched.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& to);

inline Term subst_term(const Term& t, const std::string& var, const Term& to) {
  if (t.is_variable() && t.name == var) return to;
  return t;
}

inline FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& to) {
  struct V {
    const std::string& var;
    const Term& to;
    FormulaPtr operator()(const Predication& p) const {
      std::vector<Term> args;
      args.reserve(p.args.size());
      for (const auto& t : p.args) args.push_back(subst_term(t, var, to));
      return make_predication(p.polarity, p.pred, std::move(args));
    }
    FormulaPtr operator()(const Bottom&) const { return make_bottom(); }
    FormulaPtr operator()(const And& n) const { return make_and(rec(n.lhs), rec(n.rhs)); }
    FormulaPtr operator()(const Or& n) const { return make_or(rec(n.lhs), rec(n.rhs)); }
    FormulaPtr operator()(const Implies& n) const { return make_implies(rec(n.lhs), rec(n.rhs)); }
    FormulaPtr operator()(const Forall& n) const {
      return make_forall(n.var, binder(n.var, n.body));
    }
    FormulaPtr operator()(const Exists& n) const {
      return make_exists(n.var, binder(n.var, n.body));
    }
    FormulaPtr operator()(const QIdent& n) const {
      return make_qident(n.sign, subst_term(n.lhs, var, to), subst_term(n.rhs, var, to), n.q);
    }
    FormulaPtr operator()(const IotaPred& n) const {
      std::vector<PsiSlot> slots;
      slots.reserve(n.slots.size());
      for (const auto& s : n.slots) {
        if (const auto* t = std::get_if<Term>(&s)) {
          slots.emplace_back(subst_term(*t, var, to));
        } else if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
          slots.emplace_back(DescriptionTerm{d->q, d->var, binder_of(d->var, d->phi)});
        } else {
          slots.emplace_back(PsiHole{});
        }
      }
      return make_iota_pred(n.outer, n.psi, std::move(slots), n.q, n.var,
                            binder_of(n.var, n.phi));
    }
    FormulaPtr rec(const FormulaPtr& g) const { return substitute(g, var, to); }
    FormulaPtr binder(const std::string& bv, const FormulaPtr& body) const {
      return binder_of(bv, body);
    }
    FormulaPtr binder_of(const std::string& bv, const FormulaPtr& body) const {
      if (bv == var) return body;  // occurrence is bound here
      if (to.is_variable() && to.name == bv && occurs_free(body, var))
        throw CaptureError("substituting '" + to.name + "' for '" + var +
                           "' would be captured by binder '" + bv + "'");
      return substitute(body, var, to);
    }
  };
  return std::visit(V{var, to}, f->node);
}

// True iff substituting `to` for free `var` in f captures no occurrence.
inline bool free_for(const FormulaPtr& f, const std::string& var, const Term& to) {
  if (!to.is_variable()) return true;
  try {
    substitute(f, var, to);
    return true;
  } catch (const CaptureError&) {
    return false;
  }
}

// ---- mirror atomic sentences (swap of two constants) ----

inline Term swap_constants_term(const Term& t, const std::string& c1, const std::string& c2) {
  if (t.is_constant()) {
    if (t.name == c1) return Term::constant(c2);
    if (t.name == c2) return Term::constant(c1);
  }
  return t;
}

// Swap all occurrences of constants c1 and c2 in a predication.
inline FormulaPtr swap_constants(const Predication& p, const std::string& c1,
                                 const std::string& c2) {
  std::vector<Term> args;
  args.reserve(p.args.size());
  for (const auto& t : p.args) args.push_back(swap_constants_term(t, c1, c2));
  return make_predication(p.polarity, p.pred, std::move(args));
}

// Two (possibly negative) predications are mirror atomic sentences for
// (c1, c2) iff swapping c1 and c2 throughout the first yields the second.
inline bool mirror(const FormulaPtr& a, const FormulaPtr& b, const Term& c1, const Term& c2) {
  const auto* pa = a->as<Predication>();
  const auto* pb = b->as<Predication>();
  if (!pa || !pb || !c1.is_constant() || !c2.is_constant()) return false;
  return equal(swap_constants(*pa, c1.name, c2.name), b);
}

// ---- fresh variable names ----

// Picks the first of hint, hint1, hint2, ... not contained in `avoid`.
inline std::string fresh_variable(const std::string& hint, const std::set<std::string>& avoid) {
  if (!avoid.count(hint)) return hint;
  for (int i = 1;; ++i) {
    std::string cand = hint + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace subiota

#endif
