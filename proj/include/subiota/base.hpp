#ifndef SUBIOTA_BASE_HPP
#define SUBIOTA_BASE_HPP

// The subatomic base <C, P, v>: finite sets of nominal constants and
// predicate symbols together with a valuation assigning every symbol its
// set of term assumptions (ground atoms). Term assumptions are the
// proof-theoretic semantic values of the non-logical constants, and the
// containment conditions below are the side conditions of the asI/-asI
// rules.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subiota/formula.hpp"
#include "subiota/print.hpp"

namespace subiota {

struct UnknownSymbolError : Error {
  explicit UnknownSymbolError(const std::string& sym)
      : Error("unknown symbol '" + sym + "' (not in C or P)") {}
};

struct NonGroundAtomError : Error {
  explicit NonGroundAtomError(const std::string& what) : Error(what) {}
};

struct BaseDiagnostic {
  std::string symbol;
  std::string message;
};

inline bool is_ground_atom(const FormulaPtr& f) {
  const auto* p = f->as<Predication>();
  if (!p || p->polarity != Polarity::Positive) return false;
  for (const auto& t : p->args)
    if (!t.is_constant()) return false;
  return true;
}

class SubatomicBase {
 public:
  SubatomicBase() = default;
  SubatomicBase(std::vector<std::string> constants, std::vector<PredicateSymbol> predicates,
                std::vector<std::pair<std::string, FormulaPtr>> valuation)
      : constants_(std::move(constants)), predicates_(std::move(predicates)) {
    for (const auto& c : constants_) valuation_[c];
    for (const auto& p : predicates_) valuation_[p.name];
    for (auto& [sym, atom] : valuation) valuation_[sym].insert(std::move(atom));
  }

  const std::vector<std::string>& constants() const { return constants_; }
  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const std::map<std::string, FormulaSet>& valuation() const { return valuation_; }

  bool has_constant(const std::string& name) const {
    for (const auto& c : constants_)
      if (c == name) return true;
    return false;
  }
  std::optional<PredicateSymbol> find_predicate(const std::string& name) const {
    for (const auto& p : predicates_)
      if (p.name == name) return p;
    return std::nullopt;
  }
  bool has_symbol(const std::string& name) const {
    return has_constant(name) || find_predicate(name).has_value();
  }

  QSet full_qset() const {
    return QSet::of(std::vector<PredicateSymbol>(predicates_.begin(), predicates_.end()));
  }

  // tau-Gamma: the term assumptions for a constant or predicate symbol.
  const FormulaSet& term_assumptions(const std::string& symbol) const {
    if (!has_symbol(symbol)) throw UnknownSymbolError(symbol);
    return valuation_.at(symbol);
  }

  // Atom lies in the intersection of the term-assumption sets of its
  // predicate and of each argument constant.
  bool positively_contained(const FormulaPtr& atom) const {
    const auto* p = atom->as<Predication>();
    if (!p || p->polarity != Polarity::Positive || !is_ground_atom(atom))
      throw NonGroundAtomError("containment is defined for ground atoms, got '" +
                               to_string(atom) + "'");
    if (!find_predicate(p->pred.name)) throw UnknownSymbolError(p->pred.name);
    for (const auto& t : p->args)
      if (!has_constant(t.name)) throw UnknownSymbolError(t.name);
    if (!term_assumptions(p->pred.name).count(atom)) return false;
    for (const auto& t : p->args)
      if (!term_assumptions(t.name).count(atom)) return false;
    return true;
  }

  bool negatively_contained(const FormulaPtr& atom) const { return !positively_contained(atom); }

 private:
  std::vector<std::string> constants_;
  std::vector<PredicateSymbol> predicates_;
  std::map<std::string, FormulaSet> valuation_;
};

// Structural well-formedness of a base; one diagnostic per violation.
inline std::vector<BaseDiagnostic> validate_base(const SubatomicBase& b) {
  std::vector<BaseDiagnostic> out;
  auto report = [&](const std::string& sym, std::string msg) {
    out.push_back({sym, std::move(msg)});
  };

  if (b.constants().empty())
    report("", "C must be finite and nonempty (the forallI.iii rule quantifies over it)");

  std::map<std::string, int> seen;
  for (const auto& c : b.constants()) {
    if (!is_identifier(c) || is_variable_name(c))
      report(c, "constant name must be an identifier outside the variable namespace");
    if (++seen[c] == 2) report(c, "duplicate constant declaration");
  }
  std::map<std::string, int> seen_p;
  for (const auto& p : b.predicates()) {
    if (++seen_p[p.name] == 2) report(p.name, "duplicate predicate declaration");
    if (seen.count(p.name)) report(p.name, "name is declared both as constant and as predicate");
  }

  for (const auto& [sym, atoms] : b.valuation()) {
    bool is_const = b.has_constant(sym);
    auto pred = b.find_predicate(sym);
    if (!is_const && !pred) {
      report(sym, "valuation entry for a symbol not in C or P");
      continue;
    }
    for (const auto& atom : atoms) {
      const auto* a = atom->as<Predication>();
      if (!a || a->polarity != Polarity::Positive || !is_ground_atom(atom)) {
        report(sym, "valuation atom '" + to_string(atom) + "' is not a ground atomic sentence");
        continue;
      }
      auto decl = b.find_predicate(a->pred.name);
      if (!decl) {
        report(sym, "valuation atom '" + to_string(atom) + "' uses undeclared predicate '" +
                        a->pred.name + "'");
        continue;
      }
      if (decl->arity != a->args.size()) {
        report(sym, "valuation atom '" + to_string(atom) + "' has wrong arity for '" +
                        a->pred.name + "'");
        continue;
      }
      bool args_ok = true;
      for (const auto& t : a->args)
        if (!b.has_constant(t.name)) {
          report(sym, "valuation atom '" + to_string(atom) + "' uses undeclared constant '" +
                          t.name + "'");
          args_ok = false;
        }
      if (!args_ok) continue;
      if (is_const) {
        bool mentions = false;
        for (const auto& t : a->args) mentions |= t.name == sym;
        if (!mentions)
          report(sym, "atom '" + to_string(atom) + "' in v(" + sym +
                          ") does not contain an occurrence of '" + sym + "' (Atm(" + sym + "))");
      } else {
        if (a->pred.name != sym)
          report(sym, "atom '" + to_string(atom) + "' in v(" + sym + ") is not a '" + sym +
                          "' atom (Atm(" + sym + "))");
      }
    }
  }
  return out;
}

}  // namespace subiota

#endif
