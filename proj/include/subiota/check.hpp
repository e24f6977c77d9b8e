#ifndef SUBIOTA_CHECK_HPP
#define SUBIOTA_CHECK_HPP

// The proof kernel: checks every rule of the subatomic natural deduction
// systems with qualified identity and qualified definiteness, including
// discharge bookkeeping and eigenvariable/eigenconstant side conditions.
// Checking is report-based: every node gets a verdict and failures carry a
// documented error kind.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "subiota/base.hpp"
#include "subiota/derivation.hpp"
#include "subiota/expand.hpp"
#include "subiota/print.hpp"

namespace subiota {

enum class Mode { I0, M0 };

inline const char* to_string(Mode m) { return m == Mode::I0 ? "i0" : "m0"; }

enum class ErrorKind {
  SideConditionViolation,
  ArityMismatch,
  IndexOutOfRange,
  MissingPredicatePair,
  NotMirrorAtoms,
  WrongPolarity,
  PredicateNotInQ,
  PolarityMismatch,
  NotInstanceOfPredicate,
  ShapeMismatch,
  UnboundDischargeLabel,
  RuleDisabledInMinimalMode,
  EigenConditionViolation,
  MissingInstance,
  ConjunctShapeMismatch,
  QSetMismatch,
  SignMismatch,
  NotIotaFormula,
  UnknownSymbol,
  NonGroundAtom,
  MalformedNode
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::SideConditionViolation: return "SideConditionViolation";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MissingPredicatePair: return "MissingPredicatePair";
    case ErrorKind::NotMirrorAtoms: return "NotMirrorAtoms";
    case ErrorKind::WrongPolarity: return "WrongPolarity";
    case ErrorKind::PredicateNotInQ: return "PredicateNotInQ";
    case ErrorKind::PolarityMismatch: return "PolarityMismatch";
    case ErrorKind::NotInstanceOfPredicate: return "NotInstanceOfPredicate";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnboundDischargeLabel: return "UnboundDischargeLabel";
    case ErrorKind::RuleDisabledInMinimalMode: return "RuleDisabledInMinimalMode";
    case ErrorKind::EigenConditionViolation: return "EigenConditionViolation";
    case ErrorKind::MissingInstance: return "MissingInstance";
    case ErrorKind::ConjunctShapeMismatch: return "ConjunctShapeMismatch";
    case ErrorKind::QSetMismatch: return "QSetMismatch";
    case ErrorKind::SignMismatch: return "SignMismatch";
    case ErrorKind::NotIotaFormula: return "NotIotaFormula";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::NonGroundAtom: return "NonGroundAtom";
    case ErrorKind::MalformedNode: return "MalformedNode";
  }
  return "?";
}

struct CheckError {
  ErrorKind kind;
  std::string message;
};

struct NodeVerdict {
  Path path;
  std::string rule;
  bool ok = true;
  std::vector<CheckError> errors;
};

struct OpenAssumption {
  FormulaPtr formula;
  std::string label;  // empty for plain assumptions
  Path path;
};

struct CheckReport {
  bool valid = false;
  std::vector<NodeVerdict> verdicts;  // post-order
  std::vector<OpenAssumption> open_assumptions;
  std::vector<std::string> open_term_symbols;  // term-assumption leaves
  std::optional<Conclusion> conclusion;

  const NodeVerdict* first_failure() const {
    for (const auto& v : verdicts)
      if (!v.ok) return &v;
    return nullptr;
  }
  std::vector<CheckError> all_errors() const {
    std::vector<CheckError> out;
    for (const auto& v : verdicts) out.insert(out.end(), v.errors.begin(), v.errors.end());
    return out;
  }
  bool has_error(ErrorKind k) const {
    for (const auto& v : verdicts)
      for (const auto& e : v.errors)
        if (e.kind == k) return true;
    return false;
  }
};

namespace detail {

struct SubInfo {
  Conclusion concl;
  std::vector<OpenAssumption> open;
  std::set<std::string> term_leaf_syms;
  std::set<std::string> bound_labels;
};

class Checker {
 public:
  Checker(const SubatomicBase& base, Mode mode) : base_(base), mode_(mode) {}

  CheckReport run(const DerivPtr& d) {
    Path path;
    SubInfo top = check(d, path);
    for (const auto& oa : top.open)
      if (!oa.label.empty())
        error_at(oa.path, "assume", ErrorKind::UnboundDischargeLabel,
                 "assumption label '" + oa.label + "' is never discharged by any rule");
    report_.conclusion = top.concl;
    for (const auto& oa : top.open) report_.open_assumptions.push_back(oa);
    report_.open_term_symbols.assign(top.term_leaf_syms.begin(), top.term_leaf_syms.end());
    report_.valid = true;
    for (const auto& v : report_.verdicts)
      if (!v.ok) report_.valid = false;
    return std::move(report_);
  }

 private:
  const SubatomicBase& base_;
  Mode mode_;
  CheckReport report_;
  NodeVerdict* current_ = nullptr;

  void error(ErrorKind k, std::string msg) {
    current_->ok = false;
    current_->errors.push_back({k, std::move(msg)});
  }
  void error_at(const Path& p, const char* rule, ErrorKind k, std::string msg) {
    NodeVerdict v;
    v.path = p;
    v.rule = rule;
    v.ok = false;
    v.errors.push_back({k, std::move(msg)});
    report_.verdicts.push_back(std::move(v));
  }

  // ---- helpers ----

  static std::string show(const Conclusion& c) {
    if (const auto* f = std::get_if<FormulaPtr>(&c)) return to_string(*f);
    return std::get<TermSetRef>(c).symbol + "Gamma";
  }

  FormulaPtr premise_formula(const SubInfo& s, const char* what) {
    if (const auto* f = std::get_if<FormulaPtr>(&s.concl)) return *f;
    error(ErrorKind::ShapeMismatch,
          std::string(what) + " must conclude a formula, not a term-assumption set");
    return nullptr;
  }

  // Removes the open assumptions labeled `label` from `open`, requiring
  // formula `required` on each. Zero occurrences (vacuous discharge) is
  // fine.
  void discharge(std::vector<OpenAssumption>& open, const std::string& label,
                 const FormulaPtr& required, ErrorKind mismatch_kind) {
    if (label.empty()) return;
    std::vector<OpenAssumption> rest;
    for (auto& oa : open) {
      if (oa.label == label) {
        if (required && !equal(oa.formula, required))
          error(mismatch_kind, "assumption [" + to_string(oa.formula) + "]^(" + label +
                                   ") does not match the dischargeable shape " +
                                   to_string(required));
      } else {
        rest.push_back(std::move(oa));
      }
    }
    open = std::move(rest);
  }

  static bool open_mentions_constant(const std::vector<OpenAssumption>& open,
                                     const std::string& name) {
    for (const auto& oa : open)
      if (mentions_constant(oa.formula, name)) return true;
    return false;
  }
  static bool open_has_free_variable(const std::vector<OpenAssumption>& open,
                                     const std::string& name) {
    for (const auto& oa : open)
      if (occurs_free(oa.formula, name)) return true;
    return false;
  }

  std::optional<FormulaPtr> try_substitute(const FormulaPtr& f, const std::string& var,
                                           const Term& t, const char* rule) {
    if (!free_for(f, var, t)) {
      error(ErrorKind::EigenConditionViolation,
            std::string(rule) + ": term '" + t.name + "' is not free for '" + var + "' in " +
                to_string(f));
      return std::nullopt;
    }
    return substitute(f, var, t);
  }

  // ---- node dispatch ----

  SubInfo check(const DerivPtr& d, Path& path) {
    if (const auto* a = d->as<Assumption>()) {
      NodeVerdict v;
      v.path = path;
      v.rule = "assume";
      report_.verdicts.push_back(std::move(v));
      SubInfo s;
      s.concl = a->formula;
      s.open.push_back({a->formula, a->label, path});
      return s;
    }
    if (const auto* t = d->as<TermLeaf>()) {
      NodeVerdict v;
      v.path = path;
      v.rule = "term";
      bool known = base_.has_symbol(t->symbol);
      if (!known) {
        v.ok = false;
        v.errors.push_back({ErrorKind::UnknownSymbol,
                            "term-assumption leaf for '" + t->symbol + "' not declared by base"});
      }
      report_.verdicts.push_back(std::move(v));
      SubInfo s;
      s.concl = TermSetRef{t->symbol};
      s.term_leaf_syms.insert(t->symbol);
      return s;
    }

    const auto* r = d->as<RuleNode>();
    std::vector<SubInfo> premises;
    premises.reserve(r->premises.size());
    for (std::size_t i = 0; i < r->premises.size(); ++i) {
      path.push_back(static_cast<int>(i));
      premises.push_back(check(r->premises[i], path));
      path.pop_back();
    }

    NodeVerdict verdict;
    verdict.path = path;
    verdict.rule = rule_name(r->rule);
    report_.verdicts.push_back(std::move(verdict));
    current_ = &report_.verdicts.back();

    SubInfo out;
    out.concl = r->conclusion;
    for (const auto& p : premises) {
      out.term_leaf_syms.insert(p.term_leaf_syms.begin(), p.term_leaf_syms.end());
      for (const auto& l : p.bound_labels) {
        if (!out.bound_labels.insert(l).second)
          error(ErrorKind::UnboundDischargeLabel,
                "label '" + l + "' is bound by more than one rule application");
      }
    }
    for (const auto& l : r->inst.discharges) {
      if (l.empty()) continue;
      if (!out.bound_labels.insert(l).second)
        error(ErrorKind::UnboundDischargeLabel,
              "label '" + l + "' is bound by more than one rule application");
    }

    check_rule(*r, premises, out);

    // Verdicts for premises may have been appended after ours; keep the
    // pointer valid by re-finding is unnecessary since premises were
    // checked before. Merge open assumptions not already handled.
    current_ = nullptr;
    return out;
  }

  void merge_open(SubInfo& out, std::vector<SubInfo>& premises) {
    for (auto& p : premises)
      for (auto& oa : p.open) out.open.push_back(std::move(oa));
  }

  void expect_formula_conclusion(const RuleNode& r, const char* rule) {
    if (!std::holds_alternative<FormulaPtr>(r.conclusion))
      error(ErrorKind::ShapeMismatch,
            std::string(rule) + " concludes a formula; term-assumption sets arise only from "
                                "asE/negAsE");
  }

  void check_conclusion_is(const RuleNode& r, const FormulaPtr& expected, ErrorKind kind,
                           const char* what) {
    const auto* f = std::get_if<FormulaPtr>(&r.conclusion);
    if (!f || !equal(*f, expected))
      error(kind, std::string(what) + ": expected conclusion " + to_string(expected) + ", got " +
                      show(r.conclusion));
  }

  void check_rule(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    switch (r.rule) {
      case RuleId::AsI: check_as_intro(r, premises, out, Polarity::Positive); break;
      case RuleId::NegAsI: check_as_intro(r, premises, out, Polarity::Negative); break;
      case RuleId::AsE: check_as_elim(r, premises, out, Polarity::Positive); break;
      case RuleId::NegAsE: check_as_elim(r, premises, out, Polarity::Negative); break;
      case RuleId::PosQIdentI: check_qident_intro(r, premises, out, Polarity::Positive); break;
      case RuleId::NegQIdentI: check_qident_intro(r, premises, out, Polarity::Negative); break;
      case RuleId::PosQIdentE: check_qident_elim(r, premises, out, Polarity::Positive); break;
      case RuleId::NegQIdentE: check_qident_elim(r, premises, out, Polarity::Negative); break;
      case RuleId::AndI: check_and_intro(r, premises, out); break;
      case RuleId::AndE1: check_and_elim(r, premises, out, 1); break;
      case RuleId::AndE2: check_and_elim(r, premises, out, 2); break;
      case RuleId::OrI1: check_or_intro(r, premises, out, 1); break;
      case RuleId::OrI2: check_or_intro(r, premises, out, 2); break;
      case RuleId::OrE: check_or_elim(r, premises, out); break;
      case RuleId::ImpI: check_imp_intro(r, premises, out); break;
      case RuleId::ImpE: check_imp_elim(r, premises, out); break;
      case RuleId::ForallI: check_forall_intro(r, premises, out); break;
      case RuleId::ForallE: check_forall_elim(r, premises, out); break;
      case RuleId::ExistsI: check_exists_intro(r, premises, out); break;
      case RuleId::ExistsE: check_exists_elim(r, premises, out); break;
      case RuleId::BotI: check_bot(r, premises, out); break;
      case RuleId::IotaI: check_iota_intro(r, premises, out); break;
      case RuleId::IotaE1: check_iota_elim(r, premises, out, 1); break;
      case RuleId::IotaE2: check_iota_elim(r, premises, out, 2); break;
      case RuleId::IotaE3: check_iota_elim(r, premises, out, 3); break;
    }
  }

  bool expect_premises(const RuleNode& r, std::vector<SubInfo>& premises, std::size_t n,
                       ErrorKind kind = ErrorKind::ShapeMismatch) {
    if (premises.size() == n) return true;
    error(kind, std::string(rule_name(r.rule)) + " takes " + std::to_string(n) +
                    " premise(s), got " + std::to_string(premises.size()));
    return false;
  }

  // ---- subatomic rules ----

  const Predication* conclusion_predication(const RuleNode& r, Polarity pol, const char* rule) {
    const auto* f = std::get_if<FormulaPtr>(&r.conclusion);
    if (!f || !(*f)->is<Predication>()) {
      error(ErrorKind::ShapeMismatch, std::string(rule) + " concludes a predication");
      return nullptr;
    }
    const auto* p = (*f)->as<Predication>();
    if (p->polarity != pol) {
      error(ErrorKind::WrongPolarity,
            std::string(rule) + ": conclusion has the wrong polarity: " + to_string(*f));
      return nullptr;
    }
    return p;
  }

  void check_as_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out,
                      Polarity pol) {
    merge_open(out, premises);
    const char* rn = rule_name(r.rule);
    const Predication* p = conclusion_predication(r, pol, rn);
    if (!p) return;
    FormulaPtr atom = make_predication(Polarity::Positive, p->pred, p->args);
    for (const auto& t : p->args)
      if (!t.is_constant()) {
        error(ErrorKind::NonGroundAtom,
              std::string(rn) + " concludes ground sentences; '" + t.name + "' is a variable");
        return;
      }
    if (premises.size() != p->pred.arity + 1) {
      error(ErrorKind::ArityMismatch, std::string(rn) + " on a " + std::to_string(p->pred.arity) +
                                          "-ary predicate takes " +
                                          std::to_string(p->pred.arity + 1) + " premises, got " +
                                          std::to_string(premises.size()));
      return;
    }
    for (std::size_t i = 0; i < premises.size(); ++i) {
      std::string expected = i == 0 ? p->pred.name : p->args[i - 1].name;
      const auto* ts = std::get_if<TermSetRef>(&premises[i].concl);
      if (!ts || ts->symbol != expected) {
        error(ErrorKind::ShapeMismatch, std::string(rn) + ": premise " + std::to_string(i) +
                                            " must conclude " + expected + "Gamma, got " +
                                            show(premises[i].concl));
        return;
      }
    }
    try {
      bool contained = base_.positively_contained(atom);
      if (pol == Polarity::Positive && !contained)
        error(ErrorKind::SideConditionViolation,
              to_string(atom) + " is not in the intersection of its term-assumption sets");
      if (pol == Polarity::Negative && contained)
        error(ErrorKind::SideConditionViolation,
              to_string(atom) + " is positively contained, so it is not negatively contained");
    } catch (const UnknownSymbolError& e) {
      error(ErrorKind::UnknownSymbol, e.what());
    } catch (const NonGroundAtomError& e) {
      error(ErrorKind::NonGroundAtom, e.what());
    }
  }

  void check_as_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out,
                     Polarity pol) {
    merge_open(out, premises);
    const char* rn = rule_name(r.rule);
    if (!expect_premises(r, premises, 1)) return;
    FormulaPtr major = premise_formula(premises[0], rn);
    if (!major) return;
    const auto* p = major->as<Predication>();
    if (!p || p->polarity != pol) {
      error(pol == Polarity::Positive ? ErrorKind::ShapeMismatch : ErrorKind::WrongPolarity,
            std::string(rn) + ": major premise must be a " +
                (pol == Polarity::Positive ? "positive" : "negative") + " predication, got " +
                to_string(major));
      return;
    }
    for (const auto& t : p->args)
      if (!t.is_constant()) {
        error(ErrorKind::NonGroundAtom, std::string(rn) + ": premise must be ground");
        return;
      }
    if (!r.inst.index) {
      error(ErrorKind::MalformedNode, std::string(rn) + " needs an index i in {0..n}");
      return;
    }
    int i = *r.inst.index;
    if (i < 0 || static_cast<std::size_t>(i) > p->args.size()) {
      error(ErrorKind::IndexOutOfRange, std::string(rn) + ": index " + std::to_string(i) +
                                            " out of range for arity " +
                                            std::to_string(p->args.size()));
      return;
    }
    std::string tau = i == 0 ? p->pred.name : p->args[i - 1].name;
    if (!base_.has_symbol(tau))
      error(ErrorKind::UnknownSymbol, std::string(rn) + ": '" + tau + "' not declared by base");
    const auto* ts = std::get_if<TermSetRef>(&r.conclusion);
    if (!ts || ts->symbol != tau)
      error(ErrorKind::ShapeMismatch,
            std::string(rn) + std::to_string(i) + " concludes " + tau + "Gamma, got " +
                show(r.conclusion));
  }

  // ---- qualified identity ----

  void check_qident_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out,
                          Polarity sign) {
    const char* rn = rule_name(r.rule);
    const auto* cf = std::get_if<FormulaPtr>(&r.conclusion);
    const QIdent* q = cf ? (*cf)->as<QIdent>() : nullptr;
    if (!q) {
      merge_open(out, premises);
      error(ErrorKind::ShapeMismatch, std::string(rn) + " concludes a qualified identity");
      return;
    }
    if (q->sign != sign) {
      merge_open(out, premises);
      error(ErrorKind::WrongPolarity, std::string(rn) + ": conclusion sign does not match rule");
      return;
    }
    if (!q->lhs.is_constant() || !q->rhs.is_constant()) {
      merge_open(out, premises);
      error(ErrorKind::ShapeMismatch,
            std::string(rn) + " introduces identities between nominal constants");
      return;
    }
    // Canonical premise order: Q's predicates in base declaration order,
    // one mirror pair per argument position, two subderivations per pair.
    std::vector<PredicateSymbol> ordered;
    for (const auto& p : base_.predicates())
      if (q->q.contains(p)) ordered.push_back(p);
    if (ordered.size() != q->q.size()) {
      for (const auto& p : q->q.preds())
        if (!base_.find_predicate(p.name))
          error(ErrorKind::UnknownSymbol, std::string(rn) + ": predicate '" + p.name +
                                              "' in Q is not declared by the base");
      merge_open(out, premises);
      return;
    }
    std::size_t expected = 0;
    for (const auto& p : ordered) expected += 2 * p.arity;
    if (premises.size() != expected || r.inst.discharges.size() != expected) {
      error(ErrorKind::MissingPredicatePair,
            std::string(rn) + " over this Q takes " + std::to_string(expected) +
                " subderivations (one mirror pair per argument position of each predicate in "
                "Q, in base declaration order) with one discharge label each; got " +
                std::to_string(premises.size()) + " premise(s) and " +
                std::to_string(r.inst.discharges.size()) + " label(s)");
      merge_open(out, premises);
      return;
    }

    const std::string a1 = q->lhs.name, a2 = q->rhs.name;
    std::size_t k = 0;
    for (const auto& pred : ordered) {
      for (std::size_t pos = 0; pos < pred.arity; ++pos) {
        SubInfo& d1 = premises[k];
        SubInfo& d2 = premises[k + 1];
        const std::string& l1 = r.inst.discharges[k];
        const std::string& l2 = r.inst.discharges[k + 1];
        k += 2;

        FormulaPtr c1 = std::get_if<FormulaPtr>(&d1.concl) ? std::get<FormulaPtr>(d1.concl)
                                                           : nullptr;
        const Predication* pc1 = c1 ? c1->as<Predication>() : nullptr;
        if (!pc1 || pc1->pred != pred) {
          error(ErrorKind::MissingPredicatePair,
                std::string(rn) + ": expected the mirror pair for '" + pred.name +
                    "' at position " + std::to_string(pos + 1));
          continue;
        }
        if (pc1->polarity != sign) {
          error(ErrorKind::WrongPolarity, std::string(rn) + ": subderivation for '" + pred.name +
                                              "' has the wrong polarity");
          continue;
        }
        // d1 concludes pred(..a2 at pos..); companions are constants shared
        // by both halves of the pair.
        if (!pc1->args[pos].is_constant() || pc1->args[pos].name != a2) {
          error(ErrorKind::NotMirrorAtoms,
                std::string(rn) + ": subderivation " + std::to_string(k - 1) + " must conclude '" +
                    pred.name + "' with '" + a2 + "' at position " + std::to_string(pos + 1) +
                    ", got " + to_string(c1));
          continue;
        }
        bool companions_ok = true;
        std::vector<Term> assumed_args = pc1->args;
        assumed_args[pos] = Term::constant(a1);
        for (std::size_t j = 0; j < pc1->args.size(); ++j) {
          if (j == pos) continue;
          const Term& c = pc1->args[j];
          if (!c.is_constant() || c.name == a1 || c.name == a2) {
            error(ErrorKind::EigenConditionViolation,
                  std::string(rn) + ": companion argument '" + c.name +
                      "' must be a fresh constant distinct from '" + a1 + "' and '" + a2 + "'");
            companions_ok = false;
          }
        }
        if (!companions_ok) continue;
        FormulaPtr assumed1 = make_predication(sign, pred, assumed_args);   // pred(..a1..)
        FormulaPtr concl2 = assumed1;
        FormulaPtr assumed2 = c1;
        if (!mirror(assumed1, c1, Term::constant(a1), Term::constant(a2)))
          error(ErrorKind::NotMirrorAtoms,
                std::string(rn) + ": " + to_string(assumed1) + " and " + to_string(c1) +
                    " are not mirror atomic sentences for (" + a1 + ", " + a2 + ")");
        FormulaPtr c2 = std::get_if<FormulaPtr>(&d2.concl) ? std::get<FormulaPtr>(d2.concl)
                                                           : nullptr;
        if (!c2 || !equal(c2, concl2)) {
          error(ErrorKind::NotMirrorAtoms,
                std::string(rn) + ": subderivation " + std::to_string(k) + " must conclude " +
                    to_string(concl2) + " (same companions as its pair), got " +
                    (c2 ? to_string(c2) : show(d2.concl)));
          continue;
        }
        discharge(d1.open, l1, assumed1, ErrorKind::NotMirrorAtoms);
        discharge(d2.open, l2, assumed2, ErrorKind::NotMirrorAtoms);
        // Variant-ii style conditions on the companions, against the open
        // assumptions that remain and the term leaves of the pair.
        for (std::size_t j = 0; j < pc1->args.size(); ++j) {
          if (j == pos) continue;
          const std::string& c = pc1->args[j].name;
          if (open_mentions_constant(d1.open, c) || open_mentions_constant(d2.open, c))
            error(ErrorKind::EigenConditionViolation,
                  std::string(rn) + ": companion constant '" + c +
                      "' occurs in an undischarged assumption of its pair");
          if (d1.term_leaf_syms.count(c) || d2.term_leaf_syms.count(c))
            error(ErrorKind::EigenConditionViolation,
                  std::string(rn) + ": companion constant '" + c +
                      "' occurs in a term-assumption leaf of its pair");
        }
      }
    }
    merge_open(out, premises);
  }

  void check_qident_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out,
                         Polarity sign) {
    merge_open(out, premises);
    const char* rn = rule_name(r.rule);
    if (!expect_premises(r, premises, 2)) return;
    FormulaPtr major = premise_formula(premises[0], rn);
    FormulaPtr minor = premise_formula(premises[1], rn);
    if (!major || !minor) return;
    const auto* q = major->as<QIdent>();
    if (!q) {
      error(ErrorKind::ShapeMismatch,
            std::string(rn) + ": major premise must be a qualified identity, got " +
                to_string(major));
      return;
    }
    if (q->sign != sign) {
      error(ErrorKind::PolarityMismatch,
            std::string(rn) + ": identity sign does not match the rule");
      return;
    }
    if (!q->lhs.is_constant() || !q->rhs.is_constant()) {
      error(ErrorKind::ShapeMismatch, std::string(rn) + ": identity must be between constants");
      return;
    }
    const auto* m = minor->as<Predication>();
    if (!m) {
      error(ErrorKind::NotInstanceOfPredicate,
            std::string(rn) + ": minor premise must be a predication, got " + to_string(minor));
      return;
    }
    if (m->polarity != sign) {
      error(ErrorKind::PolarityMismatch,
            std::string(rn) + ": minor premise polarity does not match the rule");
      return;
    }
    if (!q->q.contains(m->pred)) {
      error(ErrorKind::PredicateNotInQ,
            std::string(rn) + ": predicate '" + m->pred.name + "' is not in Q");
      return;
    }
    if (r.inst.pred && *r.inst.pred != m->pred.name) {
      error(ErrorKind::NotInstanceOfPredicate,
            std::string(rn) + ": minor premise is not an instance of '" + *r.inst.pred + "'");
      return;
    }
    for (const auto& t : m->args)
      if (!t.is_constant()) {
        error(ErrorKind::NonGroundAtom,
              std::string(rn) + ": minor premise must be a ground sentence");
        return;
      }
    int side = r.inst.side.value_or(1);
    if (side != 1 && side != 2) {
      error(ErrorKind::MalformedNode, std::string(rn) + ": side must be 1 or 2");
      return;
    }
    const std::string& about = side == 1 ? q->lhs.name : q->rhs.name;
    bool occurs = false;
    for (const auto& t : m->args) occurs |= t.name == about;
    if (!occurs) {
      error(ErrorKind::NotInstanceOfPredicate,
            std::string(rn) + " side " + std::to_string(side) + ": minor premise " +
                to_string(minor) + " does not contain '" + about + "'");
      return;
    }
    FormulaPtr expected = swap_constants(*m, q->lhs.name, q->rhs.name);
    check_conclusion_is(r, expected, ErrorKind::ShapeMismatch, rn);
  }

  // ---- connectives ----

  void check_and_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    merge_open(out, premises);
    if (!expect_premises(r, premises, 2)) return;
    FormulaPtr a = premise_formula(premises[0], "andI");
    FormulaPtr b = premise_formula(premises[1], "andI");
    if (!a || !b) return;
    check_conclusion_is(r, make_and(a, b), ErrorKind::ShapeMismatch, "andI");
  }

  void check_and_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out, int which) {
    merge_open(out, premises);
    const char* rn = rule_name(r.rule);
    if (!expect_premises(r, premises, 1)) return;
    FormulaPtr m = premise_formula(premises[0], rn);
    if (!m) return;
    const auto* n = m->as<And>();
    if (!n) {
      error(ErrorKind::ShapeMismatch,
            std::string(rn) + ": major premise must be a conjunction, got " + to_string(m));
      return;
    }
    check_conclusion_is(r, which == 1 ? n->lhs : n->rhs, ErrorKind::ShapeMismatch, rn);
  }

  void check_or_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out, int which) {
    merge_open(out, premises);
    const char* rn = rule_name(r.rule);
    if (!expect_premises(r, premises, 1)) return;
    FormulaPtr p = premise_formula(premises[0], rn);
    if (!p) return;
    const auto* cf = std::get_if<FormulaPtr>(&r.conclusion);
    const Or* n = cf ? (*cf)->as<Or>() : nullptr;
    if (!n) {
      error(ErrorKind::ShapeMismatch, std::string(rn) + " concludes a disjunction");
      return;
    }
    if (!equal(which == 1 ? n->lhs : n->rhs, p))
      error(ErrorKind::ShapeMismatch, std::string(rn) + ": premise " + to_string(p) +
                                          " is not the " + (which == 1 ? "left" : "right") +
                                          " disjunct of " + show(r.conclusion));
  }

  void check_or_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    if (!expect_premises(r, premises, 3)) {
      merge_open(out, premises);
      return;
    }
    FormulaPtr major = premise_formula(premises[0], "orE");
    FormulaPtr c1 = premise_formula(premises[1], "orE");
    FormulaPtr c2 = premise_formula(premises[2], "orE");
    if (r.inst.discharges.size() > 2)
      error(ErrorKind::MalformedNode, "orE discharges at most two labels (u, v)");
    std::string u = r.inst.discharges.size() > 0 ? r.inst.discharges[0] : "";
    std::string v = r.inst.discharges.size() > 1 ? r.inst.discharges[1] : "";
    const Or* n = major ? major->as<Or>() : nullptr;
    if (!n) {
      if (major)
        error(ErrorKind::ShapeMismatch,
              "orE: major premise must be a disjunction, got " + to_string(major));
      merge_open(out, premises);
      return;
    }
    if (c1 && c2) {
      if (!equal(c1, c2))
        error(ErrorKind::ShapeMismatch,
              "orE: both branches must conclude the same formula, got " + to_string(c1) + " / " +
                  to_string(c2));
      check_conclusion_is(r, c1, ErrorKind::ShapeMismatch, "orE");
    }
    discharge(premises[1].open, u, n->lhs, ErrorKind::ShapeMismatch);
    discharge(premises[2].open, v, n->rhs, ErrorKind::ShapeMismatch);
    merge_open(out, premises);
  }

  void check_imp_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    if (!expect_premises(r, premises, 1)) {
      merge_open(out, premises);
      return;
    }
    FormulaPtr b = premise_formula(premises[0], "impI");
    const auto* cf = std::get_if<FormulaPtr>(&r.conclusion);
    const Implies* n = cf ? (*cf)->as<Implies>() : nullptr;
    if (!n) {
      error(ErrorKind::ShapeMismatch, "impI concludes an implication");
      merge_open(out, premises);
      return;
    }
    if (b && !equal(n->rhs, b))
      error(ErrorKind::ShapeMismatch,
            "impI: premise must conclude the consequent " + to_string(n->rhs));
    if (r.inst.discharges.size() > 1)
      error(ErrorKind::MalformedNode, "impI discharges at most one label");
    if (!r.inst.discharges.empty())
      discharge(premises[0].open, r.inst.discharges[0], n->lhs, ErrorKind::ShapeMismatch);
    merge_open(out, premises);
  }

  void check_imp_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    merge_open(out, premises);
    if (!expect_premises(r, premises, 2)) return;
    FormulaPtr major = premise_formula(premises[0], "impE");
    FormulaPtr minor = premise_formula(premises[1], "impE");
    if (!major || !minor) return;
    const auto* n = major->as<Implies>();
    if (!n) {
      error(ErrorKind::ShapeMismatch,
            "impE: major premise must be an implication, got " + to_string(major));
      return;
    }
    if (!equal(n->lhs, minor)) {
      error(ErrorKind::ShapeMismatch, "impE: minor premise " + to_string(minor) +
                                          " does not match the antecedent of " + to_string(major));
      return;
    }
    check_conclusion_is(r, n->rhs, ErrorKind::ShapeMismatch, "impE");
  }

  void check_bot(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    merge_open(out, premises);
    if (mode_ == Mode::M0)
      error(ErrorKind::RuleDisabledInMinimalMode, "botI is not available in minimal (m0) mode");
    if (!expect_premises(r, premises, 1)) return;
    FormulaPtr p = premise_formula(premises[0], "botI");
    if (!p) return;
    if (!p->is<Bottom>())
      error(ErrorKind::ShapeMismatch, "botI: premise must be bot, got " + to_string(p));
    expect_formula_conclusion(r, "botI");
  }

  // ---- quantifiers ----

  void check_forall_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    const auto* cf = std::get_if<FormulaPtr>(&r.conclusion);
    const Forall* n = cf ? (*cf)->as<Forall>() : nullptr;
    if (!n) {
      error(ErrorKind::ShapeMismatch, "forallI concludes a universal formula");
      merge_open(out, premises);
      return;
    }
    if (!r.inst.variant) {
      error(ErrorKind::MalformedNode, "forallI needs a variant (i, ii or iii)");
      merge_open(out, premises);
      return;
    }
    switch (*r.inst.variant) {
      case QuantVariant::I: {
        if (!expect_premises(r, premises, 1)) break;
        if (!r.inst.term || !r.inst.term->is_variable()) {
          error(ErrorKind::MalformedNode, "forallI.i needs a proper variable");
          break;
        }
        const Term& y = *r.inst.term;
        if (!(y.name == n->var || !occurs_free(n->body, y.name)))
          error(ErrorKind::EigenConditionViolation,
                "forallI.i: '" + y.name + "' must be the bound variable or not free in the body");
        auto inst = try_substitute(n->body, n->var, y, "forallI.i");
        if (inst) {
          FormulaPtr p = premise_formula(premises[0], "forallI.i");
          if (p && !equal(p, *inst))
            error(ErrorKind::ShapeMismatch, "forallI.i: premise must conclude " + to_string(*inst));
        }
        if (open_has_free_variable(premises[0].open, y.name))
          error(ErrorKind::EigenConditionViolation,
                "forallI.i: '" + y.name + "' is free in an open assumption of the premise");
        break;
      }
      case QuantVariant::II: {
        if (!expect_premises(r, premises, 1)) break;
        if (!r.inst.term || !r.inst.term->is_constant()) {
          error(ErrorKind::MalformedNode, "forallI.ii needs a nominal constant");
          break;
        }
        const Term& o = *r.inst.term;
        FormulaPtr inst = substitute(n->body, n->var, o);
        FormulaPtr p = premise_formula(premises[0], "forallI.ii");
        if (p && !equal(p, inst))
          error(ErrorKind::ShapeMismatch, "forallI.ii: premise must conclude " + to_string(inst));
        if (open_mentions_constant(premises[0].open, o.name))
          error(ErrorKind::EigenConditionViolation,
                "forallI.ii: eigenconstant '" + o.name + "' occurs in an undischarged assumption");
        if (mentions_constant(*cf, o.name))
          error(ErrorKind::EigenConditionViolation,
                "forallI.ii: eigenconstant '" + o.name + "' occurs in the conclusion");
        if (premises[0].term_leaf_syms.count(o.name))
          error(ErrorKind::EigenConditionViolation, "forallI.ii: eigenconstant '" + o.name +
                                                        "' occurs in a term-assumption leaf " +
                                                        o.name + "Gamma");
        break;
      }
      case QuantVariant::III: {
        const auto& cs = base_.constants();
        for (std::size_t i = 0; i < cs.size(); ++i) {
          if (i >= premises.size()) {
            error(ErrorKind::MissingInstance,
                  "forallI.iii: missing the instance for constant '" + cs[i] + "'");
            continue;
          }
          FormulaPtr expect = substitute(n->body, n->var, Term::constant(cs[i]));
          FormulaPtr p = premise_formula(premises[i], "forallI.iii");
          if (p && !equal(p, expect))
            error(ErrorKind::MissingInstance, "forallI.iii: premise " + std::to_string(i) +
                                                  " must conclude " + to_string(expect) +
                                                  " (instance for '" + cs[i] + "'), got " +
                                                  to_string(p));
        }
        if (premises.size() > cs.size())
          error(ErrorKind::ShapeMismatch,
                "forallI.iii takes exactly one premise per constant in declaration order");
        break;
      }
    }
    merge_open(out, premises);
  }

  void check_forall_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    merge_open(out, premises);
    if (!expect_premises(r, premises, 1)) return;
    FormulaPtr m = premise_formula(premises[0], "forallE");
    if (!m) return;
    const auto* n = m->as<Forall>();
    if (!n) {
      error(ErrorKind::ShapeMismatch,
            "forallE: major premise must be universal, got " + to_string(m));
      return;
    }
    if (!r.inst.term) {
      error(ErrorKind::MalformedNode, "forallE needs an instance term");
      return;
    }
    auto inst = try_substitute(n->body, n->var, *r.inst.term, "forallE");
    if (inst) check_conclusion_is(r, *inst, ErrorKind::ShapeMismatch, "forallE");
  }

  void check_exists_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    merge_open(out, premises);
    if (!expect_premises(r, premises, 1)) return;
    const auto* cf = std::get_if<FormulaPtr>(&r.conclusion);
    const Exists* n = cf ? (*cf)->as<Exists>() : nullptr;
    if (!n) {
      error(ErrorKind::ShapeMismatch, "existsI concludes an existential formula");
      return;
    }
    if (!r.inst.term) {
      error(ErrorKind::MalformedNode, "existsI needs a witness term");
      return;
    }
    auto inst = try_substitute(n->body, n->var, *r.inst.term, "existsI");
    if (!inst) return;
    FormulaPtr p = premise_formula(premises[0], "existsI");
    if (p && !equal(p, *inst))
      error(ErrorKind::ShapeMismatch,
            "existsI: premise must conclude " + to_string(*inst) + ", got " + to_string(p));
  }

  void check_exists_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    if (!expect_premises(r, premises, 2)) {
      merge_open(out, premises);
      return;
    }
    FormulaPtr major = premise_formula(premises[0], "existsE");
    FormulaPtr c = premise_formula(premises[1], "existsE");
    const Exists* n = major ? major->as<Exists>() : nullptr;
    if (!n) {
      if (major)
        error(ErrorKind::ShapeMismatch,
              "existsE: major premise must be existential, got " + to_string(major));
      merge_open(out, premises);
      return;
    }
    if (c) check_conclusion_is(r, c, ErrorKind::ShapeMismatch, "existsE");
    if (!r.inst.term || !r.inst.variant) {
      error(ErrorKind::MalformedNode, "existsE needs a variant (i or ii) and an eigenterm");
      merge_open(out, premises);
      return;
    }
    const Term& o = *r.inst.term;
    std::string u = r.inst.discharges.empty() ? "" : r.inst.discharges[0];
    if (r.inst.discharges.size() > 1)
      error(ErrorKind::MalformedNode, "existsE discharges at most one label");
    auto witness = try_substitute(n->body, n->var, o, "existsE");
    if (witness) discharge(premises[1].open, u, *witness, ErrorKind::ShapeMismatch);

    if (*r.inst.variant == QuantVariant::I) {
      if (!o.is_variable()) {
        error(ErrorKind::MalformedNode, "existsE.i needs a proper variable");
      } else {
        if (!(o.name == n->var || !occurs_free(n->body, o.name)))
          error(ErrorKind::EigenConditionViolation,
                "existsE.i: '" + o.name + "' must be the bound variable or not free in the body");
        if (c && occurs_free(c, o.name))
          error(ErrorKind::EigenConditionViolation,
                "existsE.i: '" + o.name + "' is free in the conclusion");
        if (open_has_free_variable(premises[1].open, o.name))
          error(ErrorKind::EigenConditionViolation,
                "existsE.i: '" + o.name +
                    "' is free in an open assumption of the minor derivation");
      }
    } else if (*r.inst.variant == QuantVariant::II) {
      if (!o.is_constant()) {
        error(ErrorKind::MalformedNode, "existsE.ii needs a nominal constant");
      } else {
        if (open_mentions_constant(premises[1].open, o.name))
          error(ErrorKind::EigenConditionViolation,
                "existsE.ii: eigenconstant '" + o.name + "' occurs in an undischarged assumption");
        if (mentions_constant(major, o.name))
          error(ErrorKind::EigenConditionViolation,
                "existsE.ii: eigenconstant '" + o.name + "' occurs in the existential premise");
        if (c && mentions_constant(c, o.name))
          error(ErrorKind::EigenConditionViolation,
                "existsE.ii: eigenconstant '" + o.name + "' occurs in the conclusion");
        if (premises[1].term_leaf_syms.count(o.name))
          error(ErrorKind::EigenConditionViolation, "existsE.ii: eigenconstant '" + o.name +
                                                        "' occurs in a term-assumption leaf " +
                                                        o.name + "Gamma");
      }
    } else {
      error(ErrorKind::MalformedNode, "existsE variant must be i or ii");
    }
    merge_open(out, premises);
  }

  // ---- qualified definiteness ----

  // The description rules handle exactly the single-description case: the
  // condition is an atomic predication and the companion slots hold plain
  // terms (nested descriptions elaborate, they do not derive).
  const IotaPred* rule_iota_target(const FormulaPtr& f, const char* rn) {
    const auto* ip = f->as<IotaPred>();
    if (!ip) {
      error(ErrorKind::NotIotaFormula,
            std::string(rn) + ": expected a description predication, got " + to_string(f));
      return nullptr;
    }
    if (!ip->phi->is<Predication>()) {
      error(ErrorKind::ShapeMismatch,
            std::string(rn) + ": the description condition must be atomic");
      return nullptr;
    }
    for (const auto& s : ip->slots)
      if (std::holds_alternative<DescriptionTerm>(s)) {
        error(ErrorKind::ShapeMismatch,
              std::string(rn) + ": nested descriptions have no derivation rules");
        return nullptr;
      }
    return ip;
  }

  void check_iota_signs(const RuleNode& r, const IotaPred& ip, const char* rn) {
    if (r.inst.sign && *r.inst.sign != description_sign(ip.phi))
      error(ErrorKind::SignMismatch,
            std::string(rn) + ": rule sign does not match the condition's polarity");
    if (r.inst.outer && *r.inst.outer != ip.outer)
      error(ErrorKind::SignMismatch,
            std::string(rn) + ": outer-polarity flag does not match the conclusion");
  }

  void check_iota_intro(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out) {
    merge_open(out, premises);
    const auto* cf = std::get_if<FormulaPtr>(&r.conclusion);
    if (!cf) {
      error(ErrorKind::NotIotaFormula, "iotaI concludes a description predication");
      return;
    }
    const IotaPred* ip = rule_iota_target(*cf, "iotaI");
    if (!ip) return;
    check_iota_signs(r, *ip, "iotaI");
    if (!expect_premises(r, premises, 3)) return;
    IotaClauses clauses = iota_clauses(*ip);
    FormulaPtr d1 = premise_formula(premises[0], "iotaI");
    FormulaPtr d2 = premise_formula(premises[1], "iotaI");
    FormulaPtr d3 = premise_formula(premises[2], "iotaI");
    if (d1 && !equal(d1, clauses.existence))
      error(ErrorKind::ConjunctShapeMismatch, "iotaI: the (E) premise must conclude " +
                                                  to_string(clauses.existence) + ", got " +
                                                  to_string(d1));
    if (d2 && !equal(d2, clauses.uniqueness)) {
      // A uniqueness premise for the wrong Q is worth a sharper message.
      if (uniqueness_qset(d2, *ip))
        error(ErrorKind::QSetMismatch,
              "iotaI: the (QU) premise proves uniqueness for a different predicate set");
      else
        error(ErrorKind::ConjunctShapeMismatch, "iotaI: the (QU) premise must conclude " +
                                                    to_string(clauses.uniqueness) + ", got " +
                                                    to_string(d2));
    }
    if (d3 && !equal(d3, clauses.predication))
      error(ErrorKind::ConjunctShapeMismatch, "iotaI: the (P) premise must conclude " +
                                                  to_string(clauses.predication) + ", got " +
                                                  to_string(d3));
  }

  // If f looks like this target's uniqueness clause up to the predicate
  // set, returns its QSet.
  const QSet* uniqueness_qset(const FormulaPtr& f, const IotaPred& ip) {
    const auto* fa = f->as<Forall>();
    if (!fa) return nullptr;
    const auto* fb = fa->body->as<Forall>();
    if (!fb) return nullptr;
    const auto* imp = fb->body->as<Implies>();
    if (!imp) return nullptr;
    const auto* qi = imp->rhs->as<QIdent>();
    if (!qi || qi->q == ip.q) return nullptr;
    // Rebuild the expected clause with the candidate Q and compare.
    IotaPred probe = ip;
    probe.q = qi->q;
    if (equal(f, iota_clauses(probe).uniqueness)) return &qi->q;
    return nullptr;
  }

  void check_iota_elim(const RuleNode& r, std::vector<SubInfo>& premises, SubInfo& out,
                       int which) {
    merge_open(out, premises);
    const char* rn = rule_name(r.rule);
    if (!expect_premises(r, premises, 1)) return;
    FormulaPtr m = premise_formula(premises[0], rn);
    if (!m) return;
    const IotaPred* ip = rule_iota_target(m, rn);
    if (!ip) return;
    check_iota_signs(r, *ip, rn);
    IotaClauses clauses = iota_clauses(*ip);
    FormulaPtr expected =
        which == 1 ? clauses.existence : which == 2 ? clauses.uniqueness : clauses.predication;
    check_conclusion_is(r, expected, ErrorKind::ShapeMismatch, rn);
  }
};

}  // namespace detail

inline CheckReport check_derivation(const SubatomicBase& base, const DerivPtr& d,
                                    Mode mode = Mode::I0) {
  return detail::Checker(base, mode).run(d);
}

}  // namespace subiota

#endif
