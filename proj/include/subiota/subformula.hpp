#ifndef SUBIOTA_SUBFORMULA_HPP
#define SUBIOTA_SUBFORMULA_HPP

// The instantiation-closed subformula relation used by the audits.
// Quantified formulas have each instance A(x/o) as a subformula, for every
// nominal term o in the given universe (the terms occurring in the
// derivation under audit). Contextually defined nodes (qualified identity,
// descriptions) contribute the subformulas of their expansions plus
// themselves.

#include <vector>

#include "subiota/expand.hpp"
#include "subiota/formula.hpp"

namespace subiota {

namespace detail {

inline void subformulas_into(const FormulaPtr& f, const std::vector<Term>& universe,
                             FormulaSet& out) {
  if (!out.insert(f).second) return;
  struct V {
    const FormulaPtr& self;
    const std::vector<Term>& universe;
    FormulaSet& out;
    void operator()(const Predication&) const {}
    void operator()(const Bottom&) const {}
    void operator()(const And& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Or& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Implies& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Forall& n) const { instances(n.var, n.body); }
    void operator()(const Exists& n) const { instances(n.var, n.body); }
    void operator()(const QIdent& n) const {
      rec(expand_qident(n.sign, n.lhs, n.rhs, n.q));
    }
    void operator()(const IotaPred& ip) const {
      IotaClauses c = iota_clauses(ip);
      rec(c.existence);
      rec(c.uniqueness);
      rec(c.predication);
    }
    void rec(const FormulaPtr& g) const { subformulas_into(g, universe, out); }
    void instances(const std::string& var, const FormulaPtr& body) const {
      for (const auto& o : universe) {
        if (!free_for(body, var, o)) continue;
        rec(substitute(body, var, o));
      }
    }
  };
  std::visit(V{f, universe, out}, f->node);
}

}  // namespace detail

inline FormulaSet subformulas(const FormulaPtr& f, const std::vector<Term>& universe) {
  FormulaSet out;
  detail::subformulas_into(f, universe, out);
  return out;
}

// Reflexive membership test against a precomputed closure set.
inline bool is_subformula_of(const FormulaPtr& f, const FormulaSet& closure) {
  return closure.count(f) > 0;
}

}  // namespace subiota

#endif
