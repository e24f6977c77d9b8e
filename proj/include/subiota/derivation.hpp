#ifndef SUBIOTA_DERIVATION_HPP
#define SUBIOTA_DERIVATION_HPP

// Derivation trees: assumption leaves, term-assumption leaves, and rule
// applications with explicit conclusions, discharge labels and
// instantiation data. Trees are immutable; rewriting builds new trees.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "subiota/formula.hpp"

namespace subiota {

enum class RuleId {
  AsI, AsE, NegAsI, NegAsE,
  PosQIdentI, PosQIdentE, NegQIdentI, NegQIdentE,
  AndI, AndE1, AndE2, OrI1, OrI2, OrE, ImpI, ImpE,
  ForallI, ForallE, ExistsI, ExistsE, BotI,
  IotaI, IotaE1, IotaE2, IotaE3
};

enum class QuantVariant { I, II, III };

inline const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::AsI: return "asI";
    case RuleId::AsE: return "asE";
    case RuleId::NegAsI: return "negAsI";
    case RuleId::NegAsE: return "negAsE";
    case RuleId::PosQIdentI: return "posQIdentI";
    case RuleId::PosQIdentE: return "posQIdentE";
    case RuleId::NegQIdentI: return "negQIdentI";
    case RuleId::NegQIdentE: return "negQIdentE";
    case RuleId::AndI: return "andI";
    case RuleId::AndE1: return "andE1";
    case RuleId::AndE2: return "andE2";
    case RuleId::OrI1: return "orI1";
    case RuleId::OrI2: return "orI2";
    case RuleId::OrE: return "orE";
    case RuleId::ImpI: return "impI";
    case RuleId::ImpE: return "impE";
    case RuleId::ForallI: return "forallI";
    case RuleId::ForallE: return "forallE";
    case RuleId::ExistsI: return "existsI";
    case RuleId::ExistsE: return "existsE";
    case RuleId::BotI: return "botI";
    case RuleId::IotaI: return "iotaI";
    case RuleId::IotaE1: return "iotaE1";
    case RuleId::IotaE2: return "iotaE2";
    case RuleId::IotaE3: return "iotaE3";
  }
  return "?";
}

inline std::optional<RuleId> rule_from_name(const std::string& s) {
  static const std::map<std::string, RuleId> table = {
      {"asI", RuleId::AsI}, {"asE", RuleId::AsE}, {"negAsI", RuleId::NegAsI},
      {"negAsE", RuleId::NegAsE}, {"posQIdentI", RuleId::PosQIdentI},
      {"posQIdentE", RuleId::PosQIdentE}, {"negQIdentI", RuleId::NegQIdentI},
      {"negQIdentE", RuleId::NegQIdentE}, {"andI", RuleId::AndI}, {"andE1", RuleId::AndE1},
      {"andE2", RuleId::AndE2}, {"orI1", RuleId::OrI1}, {"orI2", RuleId::OrI2},
      {"orE", RuleId::OrE}, {"impI", RuleId::ImpI}, {"impE", RuleId::ImpE},
      {"forallI", RuleId::ForallI}, {"forallE", RuleId::ForallE}, {"existsI", RuleId::ExistsI},
      {"existsE", RuleId::ExistsE}, {"botI", RuleId::BotI}, {"iotaI", RuleId::IotaI},
      {"iotaE1", RuleId::IotaE1}, {"iotaE2", RuleId::IotaE2}, {"iotaE3", RuleId::IotaE3}};
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

// The I-rules in the sense of canonicity; subatomic introductions count.
inline bool is_intro_rule(RuleId r) {
  switch (r) {
    case RuleId::AsI: case RuleId::NegAsI: case RuleId::PosQIdentI: case RuleId::NegQIdentI:
    case RuleId::AndI: case RuleId::OrI1: case RuleId::OrI2: case RuleId::ImpI:
    case RuleId::ForallI: case RuleId::ExistsI: case RuleId::IotaI:
      return true;
    default:
      return false;
  }
}

inline bool is_as_rule(RuleId r) {
  return r == RuleId::AsI || r == RuleId::AsE || r == RuleId::NegAsI || r == RuleId::NegAsE;
}

// Elimination rules whose first premise is the major premise.
inline bool is_elim_rule(RuleId r) {
  switch (r) {
    case RuleId::AsE: case RuleId::NegAsE: case RuleId::PosQIdentE: case RuleId::NegQIdentE:
    case RuleId::AndE1: case RuleId::AndE2: case RuleId::OrE: case RuleId::ImpE:
    case RuleId::ForallE: case RuleId::ExistsE:
    case RuleId::IotaE1: case RuleId::IotaE2: case RuleId::IotaE3:
      return true;
    default:
      return false;
  }
}

struct Instantiation {
  std::vector<std::string> discharges;
  std::optional<Term> term;
  std::optional<int> index;
  std::optional<int> side;
  std::optional<std::string> pred;
  std::optional<QuantVariant> variant;
  std::optional<Polarity> sign;
  std::optional<Polarity> outer;
};

// A derivation concludes either a formula or a term-assumption set tauGamma.
struct TermSetRef {
  std::string symbol;
  friend bool operator==(const TermSetRef& a, const TermSetRef& b) { return a.symbol == b.symbol; }
};
using Conclusion = std::variant<FormulaPtr, TermSetRef>;

inline bool conclusions_equal(const Conclusion& a, const Conclusion& b) {
  if (a.index() != b.index()) return false;
  if (const auto* f = std::get_if<FormulaPtr>(&a)) return equal(*f, std::get<FormulaPtr>(b));
  return std::get<TermSetRef>(a) == std::get<TermSetRef>(b);
}

class Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;
using Path = std::vector<int>;

struct Assumption {
  FormulaPtr formula;
  std::string label;  // empty = plain open assumption, never discharged
};

struct TermLeaf {
  std::string symbol;
};

struct RuleNode {
  RuleId rule;
  Instantiation inst;
  std::vector<DerivPtr> premises;
  Conclusion conclusion;
};

class Derivation {
 public:
  using Node = std::variant<Assumption, TermLeaf, RuleNode>;
  explicit Derivation(Node n) : node(std::move(n)) {}
  Node node;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

inline DerivPtr make_assumption(FormulaPtr f, std::string label = "") {
  return std::make_shared<Derivation>(Derivation::Node(Assumption{std::move(f), std::move(label)}));
}
inline DerivPtr make_term_leaf(std::string symbol) {
  return std::make_shared<Derivation>(Derivation::Node(TermLeaf{std::move(symbol)}));
}
inline DerivPtr make_rule(RuleId rule, Instantiation inst, std::vector<DerivPtr> premises,
                          Conclusion conclusion) {
  return std::make_shared<Derivation>(
      Derivation::Node(RuleNode{rule, std::move(inst), std::move(premises), std::move(conclusion)}));
}

inline Conclusion conclusion_of(const DerivPtr& d) {
  if (const auto* a = d->as<Assumption>()) return a->formula;
  if (const auto* t = d->as<TermLeaf>()) return TermSetRef{t->symbol};
  return d->as<RuleNode>()->conclusion;
}

inline FormulaPtr conclusion_formula(const DerivPtr& d) {
  Conclusion c = conclusion_of(d);
  if (const auto* f = std::get_if<FormulaPtr>(&c)) return *f;
  return nullptr;
}

// ---- structure ----

inline const DerivPtr* child_at(const DerivPtr& d, int i) {
  const auto* r = d->as<RuleNode>();
  if (!r || i < 0 || static_cast<std::size_t>(i) >= r->premises.size()) return nullptr;
  return &r->premises[i];
}

inline DerivPtr node_at(const DerivPtr& d, const Path& path) {
  DerivPtr cur = d;
  for (int i : path) {
    const DerivPtr* c = child_at(cur, i);
    if (!c) throw Error("derivation path out of range");
    cur = *c;
  }
  return cur;
}

inline DerivPtr replace_at(const DerivPtr& d, const Path& path, const DerivPtr& repl,
                           std::size_t depth = 0) {
  if (depth == path.size()) return repl;
  const auto* r = d->as<RuleNode>();
  if (!r) throw Error("derivation path out of range");
  std::vector<DerivPtr> premises = r->premises;
  int i = path[depth];
  if (i < 0 || static_cast<std::size_t>(i) >= premises.size())
    throw Error("derivation path out of range");
  premises[i] = replace_at(premises[i], path, repl, depth + 1);
  return make_rule(r->rule, r->inst, std::move(premises), r->conclusion);
}

template <typename Fn>
void for_each_node(const DerivPtr& d, Fn&& fn, Path& path) {
  if (const auto* r = d->as<RuleNode>()) {
    for (std::size_t i = 0; i < r->premises.size(); ++i) {
      path.push_back(static_cast<int>(i));
      for_each_node(r->premises[i], fn, path);
      path.pop_back();
    }
  }
  fn(path, d);  // post-order
}

template <typename Fn>
void for_each_node(const DerivPtr& d, Fn&& fn) {
  Path path;
  for_each_node(d, fn, path);
}

inline std::size_t node_count(const DerivPtr& d) {
  std::size_t n = 0;
  for_each_node(d, [&](const Path&, const DerivPtr&) { ++n; });
  return n;
}

// Rule-application nesting depth; leaves count 0.
inline std::size_t rule_depth(const DerivPtr& d) {
  const auto* r = d->as<RuleNode>();
  if (!r) return 0;
  std::size_t m = 0;
  for (const auto& p : r->premises) m = std::max(m, rule_depth(p));
  return m + 1;
}

inline std::string path_string(const Path& p) {
  std::string s;
  for (int i : p) s += "/" + std::to_string(i);
  return s.empty() ? "/" : s;
}

// ---- structural equality ----

inline bool instantiations_equal(const Instantiation& a, const Instantiation& b) {
  auto opt_term_eq = [](const std::optional<Term>& x, const std::optional<Term>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || *x == *y;
  };
  return a.discharges == b.discharges && opt_term_eq(a.term, b.term) && a.index == b.index &&
         a.side == b.side && a.pred == b.pred && a.variant == b.variant && a.sign == b.sign &&
         a.outer == b.outer;
}

inline bool equal(const DerivPtr& a, const DerivPtr& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* x = a->as<Assumption>()) {
    const auto* y = b->as<Assumption>();
    return x->label == y->label && equal(x->formula, y->formula);
  }
  if (const auto* x = a->as<TermLeaf>()) return x->symbol == b->as<TermLeaf>()->symbol;
  const auto* x = a->as<RuleNode>();
  const auto* y = b->as<RuleNode>();
  if (x->rule != y->rule || !instantiations_equal(x->inst, y->inst)) return false;
  if (!conclusions_equal(x->conclusion, y->conclusion)) return false;
  if (x->premises.size() != y->premises.size()) return false;
  for (std::size_t i = 0; i < x->premises.size(); ++i)
    if (!equal(x->premises[i], y->premises[i])) return false;
  return true;
}

// ---- labels ----

inline void collect_bound_labels(const DerivPtr& d, std::set<std::string>& out) {
  for_each_node(d, [&](const Path&, const DerivPtr& n) {
    if (const auto* r = n->as<RuleNode>())
      for (const auto& l : r->inst.discharges)
        if (!l.empty()) out.insert(l);
  });
}

inline DerivPtr rename_labels(const DerivPtr& d, const std::map<std::string, std::string>& ren) {
  if (const auto* a = d->as<Assumption>()) {
    auto it = ren.find(a->label);
    if (it == ren.end()) return d;
    return make_assumption(a->formula, it->second);
  }
  if (d->as<TermLeaf>()) return d;
  const auto* r = d->as<RuleNode>();
  std::vector<DerivPtr> premises;
  premises.reserve(r->premises.size());
  for (const auto& p : r->premises) premises.push_back(rename_labels(p, ren));
  Instantiation inst = r->inst;
  for (auto& l : inst.discharges) {
    auto it = ren.find(l);
    if (it != ren.end()) l = it->second;
  }
  return make_rule(r->rule, std::move(inst), std::move(premises), r->conclusion);
}

// Renames every label bound inside d to a fresh one; used when a
// subderivation is duplicated into several positions of one tree.
inline DerivPtr freshen_labels(const DerivPtr& d, int& counter) {
  std::set<std::string> bound;
  collect_bound_labels(d, bound);
  if (bound.empty()) return d;
  std::map<std::string, std::string> ren;
  for (const auto& l : bound) ren[l] = "g" + std::to_string(++counter);
  return rename_labels(d, ren);
}

// Deterministic renaming of all bound labels to L1, L2, ... in the order
// their binders appear in a pre-order walk.
inline DerivPtr canonicalize_labels(const DerivPtr& d) {
  std::map<std::string, std::string> ren;
  int next = 0;
  // pre-order over binders
  std::function<void(const DerivPtr&)> walk = [&](const DerivPtr& n) {
    if (const auto* r = n->as<RuleNode>()) {
      for (const auto& l : r->inst.discharges)
        if (!l.empty() && !ren.count(l)) ren[l] = "L" + std::to_string(++next);
      for (const auto& p : r->premises) walk(p);
    }
  };
  walk(d);
  return rename_labels(d, ren);
}

inline bool has_term_leaf(const DerivPtr& d, const std::string& symbol) {
  bool found = false;
  for_each_node(d, [&](const Path&, const DerivPtr& n) {
    if (const auto* t = n->as<TermLeaf>())
      if (t->symbol == symbol) found = true;
  });
  return found;
}

// Replaces every open assumption leaf labeled `label` by `replacement`.
// Labels bound inside the replacement are freshened per grafted copy.
inline DerivPtr graft(const DerivPtr& d, const std::string& label, const DerivPtr& replacement,
                      int& label_counter) {
  if (const auto* a = d->as<Assumption>()) {
    if (!label.empty() && a->label == label) return freshen_labels(replacement, label_counter);
    return d;
  }
  if (d->as<TermLeaf>()) return d;
  const auto* r = d->as<RuleNode>();
  // A rebinding of the same label deeper in the tree shadows nothing in
  // valid derivations (labels are bound once), but stop anyway.
  for (const auto& l : r->inst.discharges)
    if (l == label) return d;
  std::vector<DerivPtr> premises;
  premises.reserve(r->premises.size());
  bool changed = false;
  for (const auto& p : r->premises) {
    DerivPtr q = graft(p, label, replacement, label_counter);
    changed |= q != p;
    premises.push_back(q);
  }
  if (!changed) return d;
  return make_rule(r->rule, r->inst, std::move(premises), r->conclusion);
}

}  // namespace subiota

#endif
