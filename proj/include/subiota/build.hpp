#ifndef SUBIOTA_BUILD_HPP
#define SUBIOTA_BUILD_HPP

// Convenience constructors for derivation nodes. They compute the
// conclusion a rule yields from its premises and instantiation; the kernel
// still re-verifies everything.

#include <string>
#include <vector>

#include "subiota/derivation.hpp"
#include "subiota/expand.hpp"

namespace subiota::build {

inline DerivPtr assume(FormulaPtr f, std::string label = "") {
  return make_assumption(std::move(f), std::move(label));
}

inline DerivPtr term_leaf(std::string symbol) { return make_term_leaf(std::move(symbol)); }

// asI / negAsI with explicit premises deriving the term-assumption sets.
inline DerivPtr as_intro(FormulaPtr atom, std::vector<DerivPtr> premises) {
  const auto* p = atom->as<Predication>();
  RuleId rule = p && p->polarity == Polarity::Negative ? RuleId::NegAsI : RuleId::AsI;
  return make_rule(rule, {}, std::move(premises), atom);
}

// asI over plain term-assumption leaves, in rule order.
inline DerivPtr as_intro_leaves(FormulaPtr atom) {
  const auto* p = atom->as<Predication>();
  std::vector<DerivPtr> premises;
  premises.push_back(term_leaf(p->pred.name));
  for (const auto& t : p->args) premises.push_back(term_leaf(t.name));
  return as_intro(std::move(atom), std::move(premises));
}

inline DerivPtr as_elim(DerivPtr major, int index) {
  FormulaPtr f = conclusion_formula(major);
  const auto* p = f ? f->as<Predication>() : nullptr;
  if (!p) throw Error("as_elim: major premise must conclude a predication");
  RuleId rule = p->polarity == Polarity::Negative ? RuleId::NegAsE : RuleId::AsE;
  std::string tau = index == 0 ? p->pred.name : p->args.at(index - 1).name;
  Instantiation inst;
  inst.index = index;
  return make_rule(rule, std::move(inst), {std::move(major)}, TermSetRef{tau});
}

inline DerivPtr and_intro(DerivPtr a, DerivPtr b) {
  FormulaPtr concl = make_and(conclusion_formula(a), conclusion_formula(b));
  return make_rule(RuleId::AndI, {}, {std::move(a), std::move(b)}, concl);
}
inline DerivPtr and_elim1(DerivPtr d) {
  FormulaPtr concl = conclusion_formula(d)->as<And>()->lhs;
  return make_rule(RuleId::AndE1, {}, {std::move(d)}, concl);
}
inline DerivPtr and_elim2(DerivPtr d) {
  FormulaPtr concl = conclusion_formula(d)->as<And>()->rhs;
  return make_rule(RuleId::AndE2, {}, {std::move(d)}, concl);
}
inline DerivPtr or_intro1(DerivPtr d, FormulaPtr rhs) {
  FormulaPtr concl = make_or(conclusion_formula(d), std::move(rhs));
  return make_rule(RuleId::OrI1, {}, {std::move(d)}, concl);
}
inline DerivPtr or_intro2(FormulaPtr lhs, DerivPtr d) {
  FormulaPtr concl = make_or(std::move(lhs), conclusion_formula(d));
  return make_rule(RuleId::OrI2, {}, {std::move(d)}, concl);
}
inline DerivPtr or_elim(DerivPtr major, DerivPtr left, DerivPtr right, std::string u,
                        std::string v) {
  FormulaPtr concl = conclusion_formula(left);
  Instantiation inst;
  inst.discharges = {std::move(u), std::move(v)};
  return make_rule(RuleId::OrE, std::move(inst), {std::move(major), std::move(left), std::move(right)},
                   concl);
}
inline DerivPtr imp_intro(FormulaPtr antecedent, DerivPtr d, std::string label) {
  FormulaPtr concl = make_implies(std::move(antecedent), conclusion_formula(d));
  Instantiation inst;
  if (!label.empty()) inst.discharges = {std::move(label)};
  return make_rule(RuleId::ImpI, std::move(inst), {std::move(d)}, concl);
}
inline DerivPtr imp_elim(DerivPtr major, DerivPtr minor) {
  FormulaPtr concl = conclusion_formula(major)->as<Implies>()->rhs;
  return make_rule(RuleId::ImpE, {}, {std::move(major), std::move(minor)}, concl);
}
inline DerivPtr bot_intro(DerivPtr d, FormulaPtr concl) {
  return make_rule(RuleId::BotI, {}, {std::move(d)}, std::move(concl));
}

inline DerivPtr forall_iii(std::string var, FormulaPtr body, std::vector<DerivPtr> premises) {
  Instantiation inst;
  inst.variant = QuantVariant::III;
  FormulaPtr concl = make_forall(std::move(var), std::move(body));
  return make_rule(RuleId::ForallI, std::move(inst), std::move(premises), concl);
}
inline DerivPtr forall_ii(std::string var, FormulaPtr body, Term eigen, DerivPtr premise) {
  Instantiation inst;
  inst.variant = QuantVariant::II;
  inst.term = std::move(eigen);
  FormulaPtr concl = make_forall(std::move(var), std::move(body));
  return make_rule(RuleId::ForallI, std::move(inst), {std::move(premise)}, concl);
}
inline DerivPtr forall_i(std::string var, FormulaPtr body, Term proper, DerivPtr premise) {
  Instantiation inst;
  inst.variant = QuantVariant::I;
  inst.term = std::move(proper);
  FormulaPtr concl = make_forall(std::move(var), std::move(body));
  return make_rule(RuleId::ForallI, std::move(inst), {std::move(premise)}, concl);
}
inline DerivPtr forall_elim(DerivPtr major, Term t) {
  const auto* n = conclusion_formula(major)->as<Forall>();
  FormulaPtr concl = substitute(n->body, n->var, t);
  Instantiation inst;
  inst.term = std::move(t);
  return make_rule(RuleId::ForallE, std::move(inst), {std::move(major)}, concl);
}
inline DerivPtr exists_intro(std::string var, FormulaPtr body, Term witness, DerivPtr premise) {
  FormulaPtr concl = make_exists(var, body);
  Instantiation inst;
  inst.term = std::move(witness);
  return make_rule(RuleId::ExistsI, std::move(inst), {std::move(premise)}, concl);
}
inline DerivPtr exists_elim(DerivPtr major, DerivPtr branch, std::string label, Term eigen,
                            QuantVariant variant) {
  FormulaPtr concl = conclusion_formula(branch);
  Instantiation inst;
  if (!label.empty()) inst.discharges = {std::move(label)};
  inst.term = std::move(eigen);
  inst.variant = variant;
  return make_rule(RuleId::ExistsE, std::move(inst), {std::move(major), std::move(branch)}, concl);
}

inline DerivPtr qident_intro(Polarity sign, Term lhs, Term rhs, QSet q,
                             std::vector<DerivPtr> premises, std::vector<std::string> labels) {
  FormulaPtr concl = make_qident(sign, std::move(lhs), std::move(rhs), std::move(q));
  Instantiation inst;
  inst.discharges = std::move(labels);
  RuleId rule = sign == Polarity::Positive ? RuleId::PosQIdentI : RuleId::NegQIdentI;
  return make_rule(rule, std::move(inst), std::move(premises), concl);
}
inline DerivPtr qident_elim(DerivPtr major, DerivPtr minor, int side) {
  const auto* q = conclusion_formula(major)->as<QIdent>();
  FormulaPtr mf = conclusion_formula(minor);
  const auto* m = mf->as<Predication>();
  FormulaPtr concl = swap_constants(*m, q->lhs.name, q->rhs.name);
  Instantiation inst;
  inst.side = side;
  inst.pred = m->pred.name;
  RuleId rule = q->sign == Polarity::Positive ? RuleId::PosQIdentE : RuleId::NegQIdentE;
  return make_rule(rule, std::move(inst), {std::move(major), std::move(minor)}, concl);
}

// ---- canonical derivations of the description clauses ----
//
// Standard constructions of the existence, uniqueness and predication
// clauses over a base whose valuation supports them: uniqueness as
// forallI.iii families of implication introductions over identity
// introductions whose mirror pairs run through the subatomic rules.

// One half of a mirror pair: from [phi(from)] and the conjunction
// assumption, conclude phi(to), taking phiGamma from the pair's own
// assumption and toGamma from the conjunction.
inline DerivPtr mirror_pair_half(Polarity sign, const PredicateSymbol& phi, const FormulaPtr& conj,
                                 const std::string& conj_label, const std::string& own_label,
                                 const Term& from, const Term& to, bool to_is_right) {
  DerivPtr own = assume(make_predication(sign, phi, {from}), own_label);
  DerivPtr phi_ts = as_elim(own, 0);
  DerivPtr conj_leaf = assume(conj, conj_label);
  DerivPtr to_lit = to_is_right ? and_elim2(conj_leaf) : and_elim1(conj_leaf);
  DerivPtr to_ts = as_elim(to_lit, 1);
  return as_intro(make_predication(sign, phi, {to}), {phi_ts, to_ts});
}

// forall u. forall v. (phi(u) & phi(v)) -> u =±_Q v  over a unary phi.
inline DerivPtr derive_uniqueness(const SubatomicBase& base, Polarity sign,
                                  const PredicateSymbol& phi, const QSet& q,
                                  const std::string& uvar, const std::string& vvar) {
  std::vector<PredicateSymbol> ordered;
  for (const auto& p : base.predicates())
    if (q.contains(p)) ordered.push_back(p);

  auto lit = [&](const Term& t) { return make_predication(sign, phi, {t}); };
  std::vector<DerivPtr> outer;
  for (const auto& uc : base.constants()) {
    Term u = Term::constant(uc);
    std::vector<DerivPtr> inner;
    for (const auto& vc : base.constants()) {
      Term v = Term::constant(vc);
      FormulaPtr conj = make_and(lit(u), lit(v));
      std::string cl = "c_" + uc + vc;
      std::vector<DerivPtr> pairs;
      std::vector<std::string> labels;
      for (const auto& p : ordered) {
        std::string l1 = p.name + "1_" + uc + vc;
        std::string l2 = p.name + "2_" + uc + vc;
        pairs.push_back(mirror_pair_half(sign, p, conj, cl, l1, u, v, true));
        pairs.push_back(mirror_pair_half(sign, p, conj, cl, l2, v, u, false));
        labels.push_back(l1);
        labels.push_back(l2);
      }
      DerivPtr ident = qident_intro(sign, u, v, q, std::move(pairs), std::move(labels));
      inner.push_back(imp_intro(conj, ident, cl));
    }
    FormulaPtr inner_body = make_implies(make_and(lit(u), lit(Term::variable(vvar))),
                                         make_qident(sign, u, Term::variable(vvar), q));
    outer.push_back(forall_iii(vvar, inner_body, std::move(inner)));
  }
  FormulaPtr body = make_implies(make_and(lit(Term::variable(uvar)), lit(Term::variable(vvar))),
                                 make_qident(sign, Term::variable(uvar), Term::variable(vvar), q));
  return forall_iii(uvar, make_forall(vvar, body), std::move(outer));
}

// exists var. phi(var) from the term assumptions of one instance.
inline DerivPtr derive_existence(Polarity sign, const PredicateSymbol& phi, const std::string& c,
                                 const std::string& var) {
  DerivPtr inst = as_intro_leaves(make_predication(sign, phi, {Term::constant(c)}));
  return exists_intro(var, make_predication(sign, phi, {Term::variable(var)}), Term::constant(c),
                      inst);
}

// forall w. phi(w) -> psi(w), one impI instance per constant.
inline DerivPtr derive_predication(const SubatomicBase& base, Polarity sign,
                                   const PredicateSymbol& phi, Polarity outer,
                                   const PredicateSymbol& psi, const std::string& wvar) {
  std::vector<DerivPtr> instances;
  for (const auto& c : base.constants()) {
    Term o = Term::constant(c);
    FormulaPtr from = make_predication(sign, phi, {o});
    std::string h = "h_" + c;
    DerivPtr leaf = assume(from, h);
    DerivPtr inner;
    if (psi == phi && outer == sign) {
      inner = leaf;  // phi(o) -> phi(o) directly from the assumption
    } else {
      inner = as_intro(make_predication(outer, psi, {o}),
                       {term_leaf(psi.name), as_elim(leaf, 1)});
    }
    instances.push_back(imp_intro(from, inner, h));
  }
  FormulaPtr body = make_implies(make_predication(sign, phi, {Term::variable(wvar)}),
                                 make_predication(outer, psi, {Term::variable(wvar)}));
  return forall_iii(wvar, body, std::move(instances));
}

inline DerivPtr iota_intro(FormulaPtr target, DerivPtr d1, DerivPtr d2, DerivPtr d3) {
  const auto* ip = target->as<IotaPred>();
  if (!ip) throw Error("iota_intro: target must be a description predication");
  Instantiation inst;
  inst.sign = description_sign(ip->phi);
  inst.outer = ip->outer;
  return make_rule(RuleId::IotaI, std::move(inst), {std::move(d1), std::move(d2), std::move(d3)},
                   target);
}
inline DerivPtr iota_elim(DerivPtr major, int which) {
  FormulaPtr f = conclusion_formula(major);
  const auto* ip = f->as<IotaPred>();
  if (!ip) throw Error("iota_elim: major premise must conclude a description predication");
  IotaClauses c = iota_clauses(*ip);
  FormulaPtr concl = which == 1 ? c.existence : which == 2 ? c.uniqueness : c.predication;
  Instantiation inst;
  inst.sign = c.sign;
  inst.outer = ip->outer;
  RuleId rule = which == 1 ? RuleId::IotaE1 : which == 2 ? RuleId::IotaE2 : RuleId::IotaE3;
  return make_rule(rule, std::move(inst), {std::move(major)}, concl);
}

}  // namespace subiota::build

#endif
