#ifndef SUBIOTA_CONVERT_HPP
#define SUBIOTA_CONVERT_HPP

// Redex detection and the conversions (detour, permutation,
// simplification), realizing normalization as repeated leftmost-innermost
// rewriting. Conversions preserve the end conclusion and never enlarge the
// set of open assumptions.

#include <optional>
#include <string>
#include <vector>

#include "subiota/base.hpp"
#include "subiota/check.hpp"
#include "subiota/derivation.hpp"

namespace subiota {

struct StaleRedexError : Error {
  explicit StaleRedexError(const std::string& what) : Error(what) {}
};

enum class RedexKind {
  DetourConnective,
  DetourQuantifier,
  DetourAs,
  DetourQIdent,
  DetourIota,
  PermutationOrE,
  PermutationExistsE,
  Simplification
};

inline const char* to_string(RedexKind k) {
  switch (k) {
    case RedexKind::DetourConnective: return "detour(connective)";
    case RedexKind::DetourQuantifier: return "detour(quantifier)";
    case RedexKind::DetourAs: return "detour(as)";
    case RedexKind::DetourQIdent: return "detour(qident)";
    case RedexKind::DetourIota: return "detour(iota)";
    case RedexKind::PermutationOrE: return "permutation(orE)";
    case RedexKind::PermutationExistsE: return "permutation(existsE)";
    case RedexKind::Simplification: return "simplification";
  }
  return "?";
}

struct Redex {
  Path position;
  RedexKind kind;
};

namespace detail {

// ---- constant-for-term substitution in formulas and derivations ----

inline Term subst_const_term(const Term& t, const std::string& name, const Term& to) {
  if (t.is_constant() && t.name == name) return to;
  return t;
}

inline FormulaPtr subst_const(const FormulaPtr& f, const std::string& name, const Term& to) {
  struct V {
    const std::string& name;
    const Term& to;
    FormulaPtr operator()(const Predication& p) const {
      std::vector<Term> args;
      for (const auto& t : p.args) args.push_back(subst_const_term(t, name, to));
      return make_predication(p.polarity, p.pred, std::move(args));
    }
    FormulaPtr operator()(const Bottom&) const { return make_bottom(); }
    FormulaPtr operator()(const And& n) const { return make_and(rec(n.lhs), rec(n.rhs)); }
    FormulaPtr operator()(const Or& n) const { return make_or(rec(n.lhs), rec(n.rhs)); }
    FormulaPtr operator()(const Implies& n) const { return make_implies(rec(n.lhs), rec(n.rhs)); }
    FormulaPtr operator()(const Forall& n) const { return make_forall(n.var, rec(n.body)); }
    FormulaPtr operator()(const Exists& n) const { return make_exists(n.var, rec(n.body)); }
    FormulaPtr operator()(const QIdent& n) const {
      return make_qident(n.sign, subst_const_term(n.lhs, name, to),
                         subst_const_term(n.rhs, name, to), n.q);
    }
    FormulaPtr operator()(const IotaPred& n) const {
      std::vector<PsiSlot> slots;
      for (const auto& s : n.slots) {
        if (const auto* t = std::get_if<Term>(&s)) {
          slots.emplace_back(subst_const_term(*t, name, to));
        } else if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
          slots.emplace_back(DescriptionTerm{d->q, d->var, rec(d->phi)});
        } else {
          slots.emplace_back(PsiHole{});
        }
      }
      return make_iota_pred(n.outer, n.psi, std::move(slots), n.q, n.var, rec(n.phi));
    }
    FormulaPtr rec(const FormulaPtr& g) const { return subst_const(g, name, to); }
  };
  return std::visit(V{name, to}, f->node);
}

// Substitution throughout a derivation: formulas, instantiation terms and
// term-set symbols. `is_var` selects variable (capture-checked) or constant
// replacement.
inline DerivPtr subst_derivation(const DerivPtr& d, const std::string& name, const Term& to,
                                 bool is_var) {
  auto on_formula = [&](const FormulaPtr& f) {
    if (is_var) {
      try {
        return substitute(f, name, to);
      } catch (const CaptureError& e) {
        throw ConversionError(std::string("conversion substitution: ") + e.what());
      }
    }
    return subst_const(f, name, to);
  };
  if (const auto* a = d->as<Assumption>())
    return make_assumption(on_formula(a->formula), a->label);
  if (const auto* t = d->as<TermLeaf>()) {
    if (!is_var && t->symbol == name && to.is_constant()) return make_term_leaf(to.name);
    return d;
  }
  const auto* r = d->as<RuleNode>();
  std::vector<DerivPtr> premises;
  premises.reserve(r->premises.size());
  for (const auto& p : r->premises) premises.push_back(subst_derivation(p, name, to, is_var));
  Instantiation inst = r->inst;
  if (inst.term) {
    if (is_var) {
      if (inst.term->is_variable() && inst.term->name == name) inst.term = to;
    } else {
      inst.term = subst_const_term(*inst.term, name, to);
    }
  }
  Conclusion concl = r->conclusion;
  if (const auto* f = std::get_if<FormulaPtr>(&concl)) {
    concl = on_formula(*f);
  } else {
    auto ts = std::get<TermSetRef>(concl);
    if (!is_var && ts.symbol == name && to.is_constant()) concl = TermSetRef{to.name};
  }
  return make_rule(r->rule, std::move(inst), std::move(premises), std::move(concl));
}

inline bool subtree_has_label(const DerivPtr& d, const std::string& label) {
  if (label.empty()) return false;
  bool found = false;
  for_each_node(d, [&](const Path&, const DerivPtr& n) {
    if (const auto* a = n->as<Assumption>())
      if (a->label == label) found = true;
  });
  return found;
}

inline const RuleNode* rule_node(const DerivPtr& d) { return d->as<RuleNode>(); }

inline std::optional<RedexKind> match_redex(const DerivPtr& d) {
  const RuleNode* r = rule_node(d);
  if (!r) return std::nullopt;

  // Vacuous orE/existsE simplify away regardless of what feeds them.
  if (r->rule == RuleId::OrE && r->premises.size() == 3) {
    std::string u = r->inst.discharges.size() > 0 ? r->inst.discharges[0] : "";
    std::string v = r->inst.discharges.size() > 1 ? r->inst.discharges[1] : "";
    if (!subtree_has_label(r->premises[1], u) || !subtree_has_label(r->premises[2], v))
      return RedexKind::Simplification;
  }
  if (r->rule == RuleId::ExistsE && r->premises.size() == 2) {
    std::string u = r->inst.discharges.empty() ? "" : r->inst.discharges[0];
    if (!subtree_has_label(r->premises[1], u)) return RedexKind::Simplification;
  }

  if (!is_elim_rule(r->rule) || r->premises.empty()) return std::nullopt;
  const RuleNode* major = rule_node(r->premises[0]);
  if (!major) return std::nullopt;

  switch (r->rule) {
    case RuleId::AndE1:
    case RuleId::AndE2:
      if (major->rule == RuleId::AndI) return RedexKind::DetourConnective;
      break;
    case RuleId::OrE:
      if (major->rule == RuleId::OrI1 || major->rule == RuleId::OrI2)
        return RedexKind::DetourConnective;
      break;
    case RuleId::ImpE:
      if (major->rule == RuleId::ImpI) return RedexKind::DetourConnective;
      break;
    case RuleId::ForallE:
      if (major->rule == RuleId::ForallI) {
        // A variant-iii family has one premise per constant; an instance at
        // a variable has no premise to select and stays put.
        if (major->inst.variant == QuantVariant::III &&
            !(r->inst.term && r->inst.term->is_constant()))
          break;
        return RedexKind::DetourQuantifier;
      }
      break;
    case RuleId::ExistsE:
      if (major->rule == RuleId::ExistsI) return RedexKind::DetourQuantifier;
      break;
    case RuleId::AsE:
      if (major->rule == RuleId::AsI) return RedexKind::DetourAs;
      break;
    case RuleId::NegAsE:
      if (major->rule == RuleId::NegAsI) return RedexKind::DetourAs;
      break;
    case RuleId::PosQIdentE:
      if (major->rule == RuleId::PosQIdentI) return RedexKind::DetourQIdent;
      break;
    case RuleId::NegQIdentE:
      if (major->rule == RuleId::NegQIdentI) return RedexKind::DetourQIdent;
      break;
    case RuleId::IotaE1:
    case RuleId::IotaE2:
    case RuleId::IotaE3:
      if (major->rule == RuleId::IotaI) return RedexKind::DetourIota;
      break;
    default:
      break;
  }

  // Permutation: an elimination whose major premise is an orE/existsE.
  // asE/negAsE stay put (branch rules conclude formulas, never tauGamma).
  if (r->rule != RuleId::AsE && r->rule != RuleId::NegAsE) {
    if (major->rule == RuleId::OrE) return RedexKind::PermutationOrE;
    if (major->rule == RuleId::ExistsE) return RedexKind::PermutationExistsE;
  }
  return std::nullopt;
}

}  // namespace detail

// All convertible positions, leftmost-innermost first.
inline std::vector<Redex> find_redexes(const DerivPtr& d) {
  std::vector<Redex> out;
  for_each_node(d, [&](const Path& path, const DerivPtr& n) {
    if (auto k = detail::match_redex(n)) out.push_back(Redex{path, *k});
  });
  return out;
}

namespace detail {

inline int& graft_counter() {
  static thread_local int counter = 0;
  return counter;
}

inline FormulaPtr conclusion_formula_of(const RuleNode& r) {
  if (const auto* f = std::get_if<FormulaPtr>(&r.conclusion)) return *f;
  return nullptr;
}

inline DerivPtr convert_connective(const RuleNode& r) {
  const RuleNode& major = *rule_node(r.premises[0]);
  switch (r.rule) {
    case RuleId::AndE1: return major.premises[0];
    case RuleId::AndE2: return major.premises[1];
    case RuleId::ImpE: {
      std::string u = major.inst.discharges.empty() ? "" : major.inst.discharges[0];
      if (u.empty()) return major.premises[0];
      return graft(major.premises[0], u, r.premises[1], graft_counter());
    }
    case RuleId::OrE: {
      bool left = major.rule == RuleId::OrI1;
      const DerivPtr& branch = left ? r.premises[1] : r.premises[2];
      std::string label;
      if (left)
        label = r.inst.discharges.size() > 0 ? r.inst.discharges[0] : "";
      else
        label = r.inst.discharges.size() > 1 ? r.inst.discharges[1] : "";
      if (label.empty()) return branch;
      return graft(branch, label, major.premises[0], graft_counter());
    }
    default:
      throw StaleRedexError("not a connective detour");
  }
}

inline DerivPtr convert_quantifier(const RuleNode& r) {
  const RuleNode& major = *rule_node(r.premises[0]);
  if (r.rule == RuleId::ForallE) {
    const Term& t = *r.inst.term;
    switch (*major.inst.variant) {
      case QuantVariant::III: {
        FormulaPtr want = conclusion_formula_of(r);
        for (const auto& p : major.premises) {
          FormulaPtr c = conclusion_formula(p);
          if (c && want && equal(c, want)) return p;
        }
        throw StaleRedexError("forallI.iii family has no premise for the instance");
      }
      case QuantVariant::II:
        return subst_derivation(major.premises[0], major.inst.term->name, t, /*is_var=*/false);
      case QuantVariant::I:
        if (major.inst.term->name == t.name && t.is_variable()) return major.premises[0];
        return subst_derivation(major.premises[0], major.inst.term->name, t, /*is_var=*/true);
    }
    throw StaleRedexError("forallI variant missing");
  }
  // existsE over existsI
  const Term& witness = *major.inst.term;
  const Term& eigen = *r.inst.term;
  std::string u = r.inst.discharges.empty() ? "" : r.inst.discharges[0];
  DerivPtr branch = r.premises[1];
  if (!(eigen == witness))
    branch = subst_derivation(branch, eigen.name, witness, eigen.is_variable());
  if (u.empty()) return branch;
  return graft(branch, u, major.premises[0], graft_counter());
}

inline DerivPtr convert_as(const RuleNode& r) {
  const RuleNode& major = *rule_node(r.premises[0]);
  FormulaPtr atom = conclusion_formula_of(major);
  const auto* p = atom ? atom->as<Predication>() : nullptr;
  int i = r.inst.index.value_or(-1);
  if (!p || i < 0 || static_cast<std::size_t>(i) >= major.premises.size())
    throw StaleRedexError("asE index does not select an asI premise");
  return major.premises[i];
}

inline DerivPtr convert_qident(const RuleNode& r, const SubatomicBase& base) {
  const RuleNode& major = *rule_node(r.premises[0]);
  FormulaPtr ident = conclusion_formula_of(major);
  const auto* q = ident ? ident->as<QIdent>() : nullptr;
  FormulaPtr minor_f = conclusion_formula(r.premises[1]);
  const auto* m = minor_f ? minor_f->as<Predication>() : nullptr;
  if (!q || !m) throw StaleRedexError("qident detour premises have unexpected shapes");

  // Locate the mirror pair for (pred, position) among the intro premises,
  // which follow base declaration order.
  std::vector<PredicateSymbol> ordered;
  for (const auto& p : base.predicates())
    if (q->q.contains(p)) ordered.push_back(p);
  auto pair_index = [&](const PredicateSymbol& pred, std::size_t pos) -> std::size_t {
    std::size_t k = 0;
    for (const auto& p : ordered) {
      if (p == pred) return k + 2 * pos;
      k += 2 * p.arity;
    }
    throw StaleRedexError("minor predicate not among the intro pairs");
  };

  const std::string a1 = q->lhs.name, a2 = q->rhs.name;
  DerivPtr cur = r.premises[1];
  std::vector<Term> args = m->args;
  for (std::size_t j = 0; j < args.size(); ++j) {
    const std::string& c = args[j].name;
    if (c != a1 && c != a2) continue;
    if (a1 == a2) continue;  // swapping is the identity
    std::size_t k = pair_index(m->pred, j);
    bool from_a1 = c == a1;
    const DerivPtr& half = major.premises[from_a1 ? k : k + 1];
    const std::string& label = major.inst.discharges[from_a1 ? k : k + 1];
    FormulaPtr half_concl = conclusion_formula(half);
    const auto* hc = half_concl ? half_concl->as<Predication>() : nullptr;
    if (!hc) throw StaleRedexError("qident intro pair has unexpected shape");
    // Instantiate the pair's fresh companions at the minor's arguments.
    DerivPtr instantiated = half;
    for (std::size_t l = 0; l < args.size(); ++l) {
      if (l == j) continue;
      const std::string& comp = hc->args[l].name;
      if (comp != args[l].name)
        instantiated = subst_derivation(instantiated, comp, args[l], /*is_var=*/false);
    }
    // The discharged assumption of the instantiated half is the current
    // atom; graft the derivation so far onto it.
    cur = graft(instantiated, label, cur, graft_counter());
    args[j] = Term::constant(from_a1 ? a2 : a1);
  }
  return cur;
}

inline DerivPtr convert_iota(const RuleNode& r) {
  const RuleNode& major = *rule_node(r.premises[0]);
  switch (r.rule) {
    case RuleId::IotaE1: return major.premises[0];
    case RuleId::IotaE2: return major.premises[1];
    case RuleId::IotaE3: return major.premises[2];
    default: throw StaleRedexError("not an iota detour");
  }
}

inline DerivPtr simplify(const RuleNode& r) {
  if (r.rule == RuleId::OrE) {
    std::string u = r.inst.discharges.size() > 0 ? r.inst.discharges[0] : "";
    std::string v = r.inst.discharges.size() > 1 ? r.inst.discharges[1] : "";
    if (!subtree_has_label(r.premises[1], u)) return r.premises[1];
    if (!subtree_has_label(r.premises[2], v)) return r.premises[2];
    throw StaleRedexError("orE branches both use their assumptions");
  }
  std::string u = r.inst.discharges.empty() ? "" : r.inst.discharges[0];
  if (!subtree_has_label(r.premises[1], u)) return r.premises[1];
  throw StaleRedexError("existsE branch uses its assumption");
}

// Hoist the elimination r past the orE/existsE that feeds its major
// premise. The minor premises of r (and r's own labels) are duplicated per
// branch and freshened.
inline DerivPtr permute(const RuleNode& r, const SubatomicBase& base) {
  const RuleNode& major = *rule_node(r.premises[0]);

  auto rebuilt = [&](const DerivPtr& branch, bool freshen) -> DerivPtr {
    std::vector<DerivPtr> premises;
    premises.push_back(branch);
    Instantiation inst = r.inst;
    if (freshen) {
      std::map<std::string, std::string> ren;
      for (auto& l : inst.discharges)
        if (!l.empty()) {
          auto it = ren.find(l);
          if (it == ren.end()) it = ren.emplace(l, "g" + std::to_string(++graft_counter())).first;
          l = it->second;
        }
      for (std::size_t i = 1; i < r.premises.size(); ++i) {
        DerivPtr p = rename_labels(r.premises[i], ren);
        premises.push_back(freshen_labels(p, graft_counter()));
      }
    } else {
      for (std::size_t i = 1; i < r.premises.size(); ++i) premises.push_back(r.premises[i]);
    }
    return make_rule(r.rule, std::move(inst), std::move(premises), r.conclusion);
  };

  if (major.rule == RuleId::OrE) {
    std::vector<DerivPtr> premises;
    premises.push_back(major.premises[0]);
    premises.push_back(rebuilt(major.premises[1], false));
    premises.push_back(rebuilt(major.premises[2], true));
    return make_rule(RuleId::OrE, major.inst, std::move(premises), r.conclusion);
  }

  // existsE: the hoisted eliminator may bring the eigenterm into the new
  // conclusion or new open assumptions; rename it when that happens.
  DerivPtr branch = major.premises[1];
  Instantiation m_inst = major.inst;
  const Term eigen = *m_inst.term;
  FormulaPtr new_c = conclusion_formula_of(r);

  bool clash = false;
  if (new_c) {
    clash |= eigen.is_variable() ? occurs_free(new_c, eigen.name)
                                 : mentions_constant(new_c, eigen.name);
  }
  for (std::size_t i = 1; i < r.premises.size() && !clash; ++i) {
    for_each_node(r.premises[i], [&](const Path&, const DerivPtr& n) {
      if (const auto* a = n->as<Assumption>()) {
        if (eigen.is_variable() ? occurs_free(a->formula, eigen.name)
                                : mentions_constant(a->formula, eigen.name))
          clash = true;
      }
      if (!eigen.is_variable())
        if (const auto* t = n->as<TermLeaf>())
          if (t->symbol == eigen.name) clash = true;
    });
  }
  if (clash) {
    Term fresh = eigen;
    if (eigen.is_variable()) {
      std::set<std::string> avoid;
      for_each_node(branch, [&](const Path&, const DerivPtr& n) {
        if (FormulaPtr f = conclusion_formula(n)) collect_all_variables(f, avoid);
      });
      if (new_c) collect_all_variables(new_c, avoid);
      for (std::size_t i = 1; i < r.premises.size(); ++i)
        for_each_node(r.premises[i], [&](const Path&, const DerivPtr& n) {
          if (FormulaPtr f = conclusion_formula(n)) collect_all_variables(f, avoid);
        });
      fresh = Term::variable(fresh_variable("y", avoid));
    } else {
      std::set<std::string> used;
      auto collect_from = [&](const DerivPtr& n) {
        if (FormulaPtr f = conclusion_formula(n)) {
          std::set<std::string> cs;
          collect_constants(f, cs);
          used.insert(cs.begin(), cs.end());
        }
        if (const auto* t = n->as<TermLeaf>()) used.insert(t->symbol);
      };
      for_each_node(branch, [&](const Path&, const DerivPtr& n) { collect_from(n); });
      if (new_c) {
        std::set<std::string> cs;
        collect_constants(new_c, cs);
        used.insert(cs.begin(), cs.end());
      }
      for (std::size_t i = 1; i < r.premises.size(); ++i)
        for_each_node(r.premises[i], [&](const Path&, const DerivPtr& n) { collect_from(n); });
      std::optional<std::string> pick;
      for (const auto& c : base.constants())
        if (!used.count(c)) {
          pick = c;
          break;
        }
      if (!pick)
        throw ConversionError(
            "permutation past existsE: no fresh eigenconstant available in C");
      fresh = Term::constant(*pick);
    }
    branch = subst_derivation(branch, eigen.name, fresh, eigen.is_variable());
    m_inst.term = fresh;
  }

  std::vector<DerivPtr> premises;
  premises.push_back(major.premises[0]);
  premises.push_back(rebuilt(branch, false));
  return make_rule(RuleId::ExistsE, std::move(m_inst), std::move(premises), r.conclusion);
}

}  // namespace detail

// Rewrites the derivation at the redex position; the conclusion there is
// unchanged and open assumptions never grow.
inline DerivPtr apply_conversion(const SubatomicBase& base, const DerivPtr& d, const Redex& redex) {
  DerivPtr target = node_at(d, redex.position);
  if (auto k = detail::match_redex(target); !k || *k != redex.kind)
    throw StaleRedexError("no " + std::string(to_string(redex.kind)) + " at " +
                          path_string(redex.position));
  const RuleNode& r = *target->as<RuleNode>();
  DerivPtr replacement;
  switch (redex.kind) {
    case RedexKind::DetourConnective: replacement = detail::convert_connective(r); break;
    case RedexKind::DetourQuantifier: replacement = detail::convert_quantifier(r); break;
    case RedexKind::DetourAs: replacement = detail::convert_as(r); break;
    case RedexKind::DetourQIdent: replacement = detail::convert_qident(r, base); break;
    case RedexKind::DetourIota: replacement = detail::convert_iota(r); break;
    case RedexKind::PermutationOrE:
    case RedexKind::PermutationExistsE: replacement = detail::permute(r, base); break;
    case RedexKind::Simplification: replacement = detail::simplify(r); break;
  }
  return replace_at(d, redex.position, replacement);
}

struct ConversionStep {
  Redex redex;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

struct ConversionTrace {
  std::vector<ConversionStep> steps;
  DerivPtr result;
  bool fuel_exhausted = false;
  std::string diagnostic;
};

// Leftmost-innermost normalization. With `validate_each`, every
// intermediate derivation is re-checked and a failure aborts with a
// diagnostic (conversion soundness is a tested invariant, not an
// assumption).
inline ConversionTrace normalize(const SubatomicBase& base, const DerivPtr& d,
                                 Mode mode = Mode::I0, std::size_t fuel = 10000,
                                 bool validate_each = false) {
  ConversionTrace trace;
  trace.result = d;
  for (std::size_t step = 0;; ++step) {
    std::vector<Redex> redexes = find_redexes(trace.result);
    if (redexes.empty()) return trace;
    if (step >= fuel) {
      trace.fuel_exhausted = true;
      trace.diagnostic = "fuel exhausted after " + std::to_string(step) +
                         " conversions with " + std::to_string(redexes.size()) +
                         " redex(es) remaining";
      return trace;
    }
    const Redex& r = redexes.front();
    std::size_t before = node_count(trace.result);
    trace.result = apply_conversion(base, trace.result, r);
    trace.steps.push_back({r, before, node_count(trace.result)});
    if (validate_each) {
      CheckReport rep = check_derivation(base, trace.result, mode);
      if (!rep.valid) {
        trace.diagnostic = "conversion " + std::string(to_string(r.kind)) + " at " +
                           path_string(r.position) + " produced an invalid derivation";
        return trace;
      }
    }
  }
}

struct NotIdentityConclusionError : Error {
  explicit NotIdentityConclusionError(const std::string& what) : Error(what) {}
};

// Remark-style identity expansion: rederives an identity conclusion by an
// introduction whose mirror pairs are elimination instances of the original
// subderivation. Never invoked by normalize.
inline DerivPtr expand_identity(const SubatomicBase& base, const DerivPtr& d, const Path& pos) {
  DerivPtr target = node_at(d, pos);
  FormulaPtr f = conclusion_formula(target);
  const QIdent* q = f ? f->as<QIdent>() : nullptr;
  if (!q)
    throw NotIdentityConclusionError("expand_identity: node at " + path_string(pos) +
                                     " does not conclude a qualified identity");
  if (!q->lhs.is_constant() || !q->rhs.is_constant())
    throw NotIdentityConclusionError("expand_identity: identity must be between constants");

  std::vector<PredicateSymbol> ordered;
  for (const auto& p : base.predicates())
    if (q->q.contains(p)) ordered.push_back(p);
  if (ordered.size() != q->q.size())
    throw UnknownSymbolError("predicate set of the identity");

  // Fresh companion constants, when a predicate needs them.
  std::set<std::string> used;
  for_each_node(target, [&](const Path&, const DerivPtr& n) {
    if (FormulaPtr g = conclusion_formula(n)) {
      std::set<std::string> cs;
      collect_constants(g, cs);
      used.insert(cs.begin(), cs.end());
    }
    if (const auto* t = n->as<TermLeaf>()) used.insert(t->symbol);
  });
  used.insert(q->lhs.name);
  used.insert(q->rhs.name);

  bool elim_pos = q->sign == Polarity::Positive;
  RuleId elim = elim_pos ? RuleId::PosQIdentE : RuleId::NegQIdentE;
  RuleId intro = elim_pos ? RuleId::PosQIdentI : RuleId::NegQIdentI;

  std::vector<DerivPtr> premises;
  std::vector<std::string> labels;
  int& counter = detail::graft_counter();
  for (const auto& pred : ordered) {
    std::vector<Term> companions;
    for (std::size_t j = 0; j + 1 < pred.arity; ++j) {
      std::optional<std::string> pick;
      for (const auto& c : base.constants())
        if (!used.count(c)) {
          pick = c;
          break;
        }
      if (!pick)
        throw ConversionError("expand_identity: no fresh companion constant available in C");
      used.insert(*pick);
      companions.push_back(Term::constant(*pick));
    }
    for (std::size_t pos_i = 0; pos_i < pred.arity; ++pos_i) {
      auto args_with = [&](const Term& at) {
        std::vector<Term> args;
        std::size_t ci = 0;
        for (std::size_t j = 0; j < pred.arity; ++j)
          args.push_back(j == pos_i ? at : companions[ci++]);
        return args;
      };
      FormulaPtr a1_atom = make_predication(q->sign, pred, args_with(q->lhs));
      FormulaPtr a2_atom = make_predication(q->sign, pred, args_with(q->rhs));
      for (int side = 1; side <= 2; ++side) {
        std::string label = "e" + std::to_string(++counter);
        FormulaPtr assumed = side == 1 ? a1_atom : a2_atom;
        FormulaPtr derived = side == 1 ? a2_atom : a1_atom;
        Instantiation inst;
        inst.side = side;
        inst.pred = pred.name;
        DerivPtr node =
            make_rule(elim, std::move(inst),
                      {freshen_labels(target, counter), make_assumption(assumed, label)}, derived);
        premises.push_back(node);
        labels.push_back(label);
      }
    }
  }
  Instantiation intro_inst;
  intro_inst.discharges = labels;
  DerivPtr expansion = make_rule(intro, std::move(intro_inst), std::move(premises), f);
  return replace_at(d, pos, expansion);
}

}  // namespace subiota

#endif
