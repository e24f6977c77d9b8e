#ifndef SUBIOTA_EXPAND_HPP
#define SUBIOTA_EXPAND_HPP

// Expansion of the contextually defined symbols: qualified identity
// (o1 =+_Q o2 / o1 =-_Q o2) into conjunctions of position-wise
// biconditionals, and description predications psi(iota_Q x. phi) into the
// existence & uniqueness & predication form. Multi-conjunct definientia
// associate to the right; expansion-introduced bound variables come from
// the reserved namespace (u, v, w, z1, z2, ...) and are renamed on
// collision.

#include <string>
#include <vector>

#include "subiota/base.hpp"
#include "subiota/formula.hpp"

namespace subiota {

namespace detail {

// z1..zn, shifted together until none collides with `avoid`.
inline std::vector<std::string> companion_variables(std::size_t n,
                                                    const std::set<std::string>& avoid) {
  for (std::size_t offset = 0;; ++offset) {
    std::vector<std::string> zs;
    bool ok = true;
    for (std::size_t i = 1; i <= n; ++i) {
      std::string z = "z" + std::to_string(i + offset);
      if (avoid.count(z)) {
        ok = false;
        break;
      }
      zs.push_back(z);
    }
    if (ok) return zs;
  }
}

inline FormulaPtr conjoin_right(std::vector<FormulaPtr> conjuncts) {
  FormulaPtr acc = conjuncts.back();
  for (std::size_t i = conjuncts.size() - 1; i-- > 0;) acc = make_and(conjuncts[i], acc);
  return acc;
}

}  // namespace detail

// The one-predicate template: for an n-ary predicate, the universally
// quantified conjunction of the n position-wise biconditionals; for n = 1
// the degenerate instance with no quantifier prefix and one biconditional.
inline FormulaPtr qident_template(Polarity sign, const PredicateSymbol& pred, const Term& o1,
                                  const Term& o2) {
  std::set<std::string> avoid;
  if (o1.is_variable()) avoid.insert(o1.name);
  if (o2.is_variable()) avoid.insert(o2.name);

  const std::size_t n = pred.arity;
  if (n == 1) {
    return make_iff(make_predication(sign, pred, {o1}), make_predication(sign, pred, {o2}));
  }
  std::vector<std::string> zs = detail::companion_variables(n, avoid);
  std::vector<FormulaPtr> conjuncts;
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<Term> left, right;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == p) {
        left.push_back(o1);
        right.push_back(o2);
      } else {
        left.push_back(Term::variable(zs[j]));
        right.push_back(Term::variable(zs[j]));
      }
    }
    conjuncts.push_back(make_iff(make_predication(sign, pred, std::move(left)),
                                 make_predication(sign, pred, std::move(right))));
  }
  FormulaPtr body = detail::conjoin_right(std::move(conjuncts));
  for (std::size_t i = n; i-- > 0;) body = make_forall(zs[i], body);
  return body;
}

// o1 =±_Q o2 as the right-associated conjunction of the per-predicate
// templates, in the canonical (sorted) order of Q.
inline FormulaPtr expand_qident(Polarity sign, const Term& o1, const Term& o2, const QSet& q) {
  std::vector<FormulaPtr> conjuncts;
  for (const auto& pred : q.preds()) conjuncts.push_back(qident_template(sign, pred, o1, o2));
  return detail::conjoin_right(std::move(conjuncts));
}

// ---- qualified definiteness ----

struct IotaClauses {
  FormulaPtr existence;    // exists x. phi(x)
  FormulaPtr uniqueness;   // forall u. forall v. phi(u) & phi(v) -> u =±_Q v
  FormulaPtr predication;  // forall w. phi(w) -> psi(w)
  Polarity sign;           // polarity of phi (the =±_Q sign)
};

// The sign of a description's condition: negative iff phi is a predication
// failure; compound conditions count as positive.
inline Polarity description_sign(const FormulaPtr& phi) {
  if (const auto* p = phi->as<Predication>())
    if (p->polarity == Polarity::Negative) return Polarity::Negative;
  return Polarity::Positive;
}

// psi applied to a term: holes are filled with `t`; if further descriptions
// sit in other slots the result is again a description predication with the
// leftmost of them distinguished.
inline FormulaPtr apply_psi(const IotaPred& ip, const Term& t) {
  const DescriptionTerm* next = nullptr;
  for (const auto& s : ip.slots)
    if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
      next = d;
      break;
    }
  if (!next) {
    std::vector<Term> args;
    for (const auto& s : ip.slots) {
      if (std::holds_alternative<PsiHole>(s))
        args.push_back(t);
      else
        args.push_back(std::get<Term>(s));
    }
    return make_predication(ip.outer, ip.psi, std::move(args));
  }
  std::vector<PsiSlot> slots;
  bool promoted = false;
  for (const auto& s : ip.slots) {
    if (std::holds_alternative<PsiHole>(s)) {
      slots.emplace_back(t);
    } else if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
      if (!promoted && d == next) {
        slots.emplace_back(PsiHole{});
        promoted = true;
      } else {
        slots.emplace_back(*d);
      }
    } else {
      slots.emplace_back(std::get<Term>(s));
    }
  }
  return make_iota_pred(ip.outer, ip.psi, std::move(slots), next->q, next->var, next->phi);
}

// The three defining clauses of psi(iota_Q x. phi), with canonical bound
// variables. These are exactly the premise (and E-rule conclusion) shapes
// of the iota rules.
inline IotaClauses iota_clauses(const IotaPred& ip) {
  Polarity sign = description_sign(ip.phi);

  std::set<std::string> avoid;
  collect_all_variables(ip.phi, avoid);
  avoid.insert(ip.var);
  for (const auto& s : ip.slots) {
    if (const auto* t = std::get_if<Term>(&s)) {
      if (t->is_variable()) avoid.insert(t->name);
    } else if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
      avoid.insert(d->var);
      collect_all_variables(d->phi, avoid);
    }
  }

  std::string u = fresh_variable("u", avoid);
  avoid.insert(u);
  std::string v = fresh_variable("v", avoid);
  avoid.insert(v);
  std::string w = fresh_variable("w", avoid);

  FormulaPtr existence = make_exists(ip.var, ip.phi);
  FormulaPtr phi_u = substitute(ip.phi, ip.var, Term::variable(u));
  FormulaPtr phi_v = substitute(ip.phi, ip.var, Term::variable(v));
  FormulaPtr uniqueness = make_forall(
      u, make_forall(v, make_implies(make_and(phi_u, phi_v),
                                     make_qident(sign, Term::variable(u), Term::variable(v),
                                                 ip.q))));
  FormulaPtr phi_w = substitute(ip.phi, ip.var, Term::variable(w));
  FormulaPtr predication = make_forall(w, make_implies(phi_w, apply_psi(ip, Term::variable(w))));
  return IotaClauses{existence, uniqueness, predication, sign};
}

// Recursively eliminates every description in f (qualified identities are
// left as nodes).
inline FormulaPtr elaborate(const FormulaPtr& f) {
  struct V {
    FormulaPtr operator()(const Predication&) const { return self; }
    FormulaPtr operator()(const Bottom&) const { return self; }
    FormulaPtr operator()(const And& n) const { return make_and(elaborate(n.lhs), elaborate(n.rhs)); }
    FormulaPtr operator()(const Or& n) const { return make_or(elaborate(n.lhs), elaborate(n.rhs)); }
    FormulaPtr operator()(const Implies& n) const {
      return make_implies(elaborate(n.lhs), elaborate(n.rhs));
    }
    FormulaPtr operator()(const Forall& n) const { return make_forall(n.var, elaborate(n.body)); }
    FormulaPtr operator()(const Exists& n) const { return make_exists(n.var, elaborate(n.body)); }
    FormulaPtr operator()(const QIdent&) const { return self; }
    FormulaPtr operator()(const IotaPred& ip) const {
      IotaClauses c = iota_clauses(ip);
      FormulaPtr expanded = make_and(c.existence, make_and(c.uniqueness, c.predication));
      return elaborate(expanded);
    }
    FormulaPtr self;
  };
  return std::visit(V{f}, f->node);
}

// The three-conjunct expansion of a description predication, associated as
// E & (QU & P); nested descriptions are elaborated recursively.
inline FormulaPtr elaborate_iota(const FormulaPtr& f) {
  if (!f->is<IotaPred>()) throw Error("elaborate_iota expects a description predication");
  return elaborate(f);
}

// ---- degrees of definiteness ----

enum class Degree { Maximal, Restricted, MinimalSingleton };

inline const char* to_string(Degree d) {
  switch (d) {
    case Degree::Maximal: return "maximal";
    case Degree::Restricted: return "restricted";
    case Degree::MinimalSingleton: return "minimal-singleton";
  }
  return "?";
}

inline Degree definiteness_degree(const QSet& q, const FormulaPtr& phi, const SubatomicBase& base) {
  for (const auto& p : q.preds())
    if (!base.find_predicate(p.name) || base.find_predicate(p.name)->arity != p.arity)
      throw UnknownSymbolError(p.name);
  if (q == base.full_qset()) return Degree::Maximal;
  if (q.size() == 1) {
    if (const auto* pred = phi->as<Predication>())
      if (pred->pred == q.preds().front()) return Degree::MinimalSingleton;
  }
  return Degree::Restricted;
}

inline Degree definiteness_degree(const IotaPred& ip, const SubatomicBase& base) {
  return definiteness_degree(ip.q, ip.phi, base);
}

}  // namespace subiota

#endif
