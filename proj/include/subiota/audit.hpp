#ifndef SUBIOTA_AUDIT_HPP
#define SUBIOTA_AUDIT_HPP

// Machine checks of the metatheory on concrete normal derivations: the
// subformula property (each formula in a normal derivation is a subformula
// of an open assumption or of the conclusion) and its generalization to
// units and expressions (term-assumption sets count, witnessed through
// their non-logical constant). Also the proof-theoretic classification of
// derivations (canonical / proof, thesis / theorem).

#include <optional>
#include <string>
#include <vector>

#include "subiota/check.hpp"
#include "subiota/convert.hpp"
#include "subiota/derivation.hpp"
#include "subiota/subformula.hpp"

namespace subiota {

// A unit is either a formula or a term assumption tauGamma; the expression
// of a tauGamma unit is its non-logical constant tau.
struct Unit {
  Path path;
  Conclusion value;
};

struct AuditEntry {
  Path path;
  std::string unit;
  bool ok = false;
  std::string witness;  // printed superexpression in Gamma u {U}
};

struct AuditReport {
  bool passed = false;
  std::vector<AuditEntry> entries;
  std::string diagnostic;  // NotNormal / invalid-input note, empty when run
};

namespace detail {

inline std::vector<Term> derivation_term_universe(const DerivPtr& d) {
  std::set<std::string> vars, consts;
  for_each_node(d, [&](const Path&, const DerivPtr& n) {
    if (FormulaPtr f = conclusion_formula(n)) {
      collect_all_variables(f, vars);
      collect_constants(f, consts);
    }
  });
  std::vector<Term> universe;
  for (const auto& c : consts) universe.push_back(Term::constant(c));
  for (const auto& v : vars) universe.push_back(Term::variable(v));
  return universe;
}

inline std::vector<Unit> units_of(const DerivPtr& d) {
  std::vector<Unit> out;
  for_each_node(d, [&](const Path& p, const DerivPtr& n) { out.push_back({p, conclusion_of(n)}); });
  return out;
}

struct WitnessIndex {
  // Closures of the expressions in Gamma u {U}, with their display names.
  std::vector<std::pair<std::string, FormulaSet>> formula_closures;
  std::set<std::string> symbol_expressions;  // tau of tauGamma members

  void add_formula(const FormulaPtr& f, const std::vector<Term>& universe) {
    formula_closures.emplace_back(to_string(f), subformulas(f, universe));
  }

  std::optional<std::string> witness_formula(const FormulaPtr& f) const {
    for (const auto& [name, closure] : formula_closures)
      if (closure.count(f)) return name;
    return std::nullopt;
  }

  // A symbol is a subexpression of a formula when it occurs in some member
  // of the formula's instantiation-closed subformula set.
  std::optional<std::string> witness_symbol(const std::string& tau) const {
    if (symbol_expressions.count(tau)) return tau + "Gamma";
    for (const auto& [name, closure] : formula_closures)
      for (const auto& g : closure) {
        std::set<std::string> cs;
        collect_constants(g, cs);
        if (cs.count(tau)) return name;
        std::set<PredicateSymbol> ps;
        collect_predicates(g, ps);
        for (const auto& p : ps)
          if (p.name == tau) return name;
      }
    return std::nullopt;
  }
};

inline std::optional<std::string> normality_diagnostic(const SubatomicBase& base,
                                                       const DerivPtr& d, Mode mode,
                                                       const CheckReport& report) {
  if (!report.valid) return "input derivation is not valid";
  if (!find_redexes(d).empty())
    return "NotNormal: input derivation still has conversion positions";
  (void)base;
  (void)mode;
  return std::nullopt;
}

}  // namespace detail

// Corollary-level audit: every formula in the normal derivation d must be
// a subformula of an open assumption or of the conclusion.
inline AuditReport audit_subformula(const SubatomicBase& base, const DerivPtr& d,
                                    Mode mode = Mode::I0) {
  AuditReport out;
  CheckReport report = check_derivation(base, d, mode);
  if (auto diag = detail::normality_diagnostic(base, d, mode, report)) {
    out.diagnostic = *diag;
    return out;
  }
  std::vector<Term> universe = detail::derivation_term_universe(d);
  detail::WitnessIndex index;
  for (const auto& oa : report.open_assumptions) index.add_formula(oa.formula, universe);
  if (FormulaPtr u = conclusion_formula(d)) {
    index.add_formula(u, universe);
  } else {
    out.diagnostic = "conclusion is a term-assumption set; use the subexpression audit";
    return out;
  }

  out.passed = true;
  for (const auto& unit : detail::units_of(d)) {
    const auto* f = std::get_if<FormulaPtr>(&unit.value);
    if (!f) continue;  // tauGamma units belong to the subexpression audit
    AuditEntry e;
    e.path = unit.path;
    e.unit = to_string(*f);
    if (auto w = index.witness_formula(*f)) {
      e.ok = true;
      e.witness = *w;
    } else {
      out.passed = false;
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

// Theorem-level audit over units and expressions; the subformula property
// is the special case restricted to formulas.
inline AuditReport audit_subexpression(const SubatomicBase& base, const DerivPtr& d,
                                       Mode mode = Mode::I0) {
  AuditReport out;
  CheckReport report = check_derivation(base, d, mode);
  if (auto diag = detail::normality_diagnostic(base, d, mode, report)) {
    out.diagnostic = *diag;
    return out;
  }
  std::vector<Term> universe = detail::derivation_term_universe(d);
  detail::WitnessIndex index;
  for (const auto& oa : report.open_assumptions) index.add_formula(oa.formula, universe);
  for (const auto& sym : report.open_term_symbols) index.symbol_expressions.insert(sym);
  Conclusion u = conclusion_of(d);
  if (const auto* f = std::get_if<FormulaPtr>(&u))
    index.add_formula(*f, universe);
  else
    index.symbol_expressions.insert(std::get<TermSetRef>(u).symbol);

  out.passed = true;
  for (const auto& unit : detail::units_of(d)) {
    AuditEntry e;
    e.path = unit.path;
    std::optional<std::string> w;
    if (const auto* f = std::get_if<FormulaPtr>(&unit.value)) {
      e.unit = to_string(*f);
      w = index.witness_formula(*f);
    } else {
      const std::string& tau = std::get<TermSetRef>(unit.value).symbol;
      e.unit = tau + "Gamma";
      w = index.witness_symbol(tau);
    }
    if (w) {
      e.ok = true;
      e.witness = *w;
    } else {
      out.passed = false;
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

// ---- classification ----

enum class Canonicity { CanonicalProof, CanonicalDerivation, Neither };
enum class ThesisStatus { Theorem, Thesis, None };

inline const char* to_string(Canonicity c) {
  switch (c) {
    case Canonicity::CanonicalProof: return "canonical-proof";
    case Canonicity::CanonicalDerivation: return "canonical-derivation";
    case Canonicity::Neither: return "neither";
  }
  return "?";
}
inline const char* to_string(ThesisStatus s) {
  switch (s) {
    case ThesisStatus::Theorem: return "theorem";
    case ThesisStatus::Thesis: return "thesis";
    case ThesisStatus::None: return "none";
  }
  return "?";
}

struct Classification {
  Canonicity canonicity = Canonicity::Neither;
  ThesisStatus status = ThesisStatus::None;
};

// Canonical derivations end with an I-rule (the subatomic introductions
// count); canonical proofs additionally use no as/-as rules anywhere and
// leave no assumption open.
inline Classification classify(const SubatomicBase& base, const DerivPtr& d, Mode mode = Mode::I0) {
  Classification out;
  const auto* root = d->as<RuleNode>();
  if (!root || !is_intro_rule(root->rule)) return out;
  out.canonicity = Canonicity::CanonicalDerivation;
  out.status = ThesisStatus::Thesis;

  bool uses_as = false;
  for_each_node(d, [&](const Path&, const DerivPtr& n) {
    if (const auto* r = n->as<RuleNode>()) uses_as |= is_as_rule(r->rule);
  });
  if (uses_as) return out;
  CheckReport report = check_derivation(base, d, mode);
  if (!report.open_assumptions.empty()) return out;
  out.canonicity = Canonicity::CanonicalProof;
  out.status = ThesisStatus::Theorem;
  return out;
}

}  // namespace subiota

#endif
