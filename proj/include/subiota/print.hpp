#ifndef SUBIOTA_PRINT_HPP
#define SUBIOTA_PRINT_HPP

// Canonical ASCII rendering of formulas. The grammar round-trips:
// parse(print(f)) == f for every constructible formula.
//
// Precedence, loosest to tightest: -> (right associative), |, & (both right
// associative), prefix !/- and quantifiers, then atoms. Quantifier and
// description bodies extend as far to the right as possible, so a
// quantified formula is parenthesized whenever anything follows it.

#include <functional>
#include <sstream>
#include <string>

#include "subiota/formula.hpp"

namespace subiota {

namespace detail {

enum Prec { PrecImp = 0, PrecOr = 1, PrecAnd = 2, PrecUnary = 3 };

// `tail` is true iff the rendered text is followed only by closing
// delimiters, so that a maximal-extent body cannot absorb a later operator.
void print_formula(std::ostream& os, const FormulaPtr& f, int min_prec, bool tail);

inline void print_qset(std::ostream& os, const QSet& q) {
  os << '[';
  bool first = true;
  for (const auto& p : q.preds()) {
    if (!first) os << ',';
    os << p.name;
    first = false;
  }
  os << ']';
}

inline void print_description(std::ostream& os, const QSet& q, const std::string& var,
                              const FormulaPtr& phi) {
  os << "iota";
  print_qset(os, q);
  os << ' ' << var << ". ";
  print_formula(os, phi, PrecImp, true);
}

inline void print_formula(std::ostream& os, const FormulaPtr& f, int min_prec, bool tail) {
  struct V {
    std::ostream& os;
    int min_prec;
    bool tail;
    void binary(int prec, const FormulaPtr& lhs, const char* op, const FormulaPtr& rhs) const {
      bool parens = prec < min_prec;
      if (parens) os << '(';
      print_formula(os, lhs, prec + 1, false);
      os << op;
      print_formula(os, rhs, prec, parens || tail);
      if (parens) os << ')';
    }
    void operator()(const Predication& p) const {
      if (p.polarity == Polarity::Negative) os << '-';
      os << p.pred.name << '(';
      for (std::size_t i = 0; i < p.args.size(); ++i) {
        if (i) os << ", ";
        os << p.args[i].name;
      }
      os << ')';
    }
    void operator()(const Bottom&) const { os << "bot"; }
    void operator()(const And& n) const { binary(PrecAnd, n.lhs, " & ", n.rhs); }
    void operator()(const Or& n) const { binary(PrecOr, n.lhs, " | ", n.rhs); }
    void operator()(const Implies& n) const { binary(PrecImp, n.lhs, " -> ", n.rhs); }
    void operator()(const Forall& n) const { quant("forall", n.var, n.body); }
    void operator()(const Exists& n) const { quant("exists", n.var, n.body); }
    void operator()(const QIdent& n) const {
      os << n.lhs.name << " =" << (n.sign == Polarity::Positive ? '+' : '-');
      print_qset(os, n.q);
      os << ' ' << n.rhs.name;
    }
    void operator()(const IotaPred& n) const {
      if (n.outer == Polarity::Negative) os << '-';
      os << n.psi.name << '(';
      for (std::size_t i = 0; i < n.slots.size(); ++i) {
        if (i) os << ", ";
        const auto& s = n.slots[i];
        if (std::holds_alternative<PsiHole>(s)) {
          print_description(os, n.q, n.var, n.phi);
        } else if (const auto* t = std::get_if<Term>(&s)) {
          os << t->name;
        } else {
          const auto& d = std::get<DescriptionTerm>(s);
          print_description(os, d.q, d.var, d.phi);
        }
      }
      os << ')';
    }
    void quant(const char* kw, const std::string& var, const FormulaPtr& body) const {
      bool parens = PrecUnary < min_prec || !tail;
      if (parens) os << '(';
      os << kw << ' ' << var << ". ";
      print_formula(os, body, PrecImp, true);
      if (parens) os << ')';
    }
  };
  std::visit(V{os, min_prec, tail}, f->node);
}

}  // namespace detail

inline std::string to_string(const FormulaPtr& f) {
  std::ostringstream os;
  detail::print_formula(os, f, detail::PrecImp, true);
  return os.str();
}

inline std::string to_string(const Term& t) { return t.name; }

}  // namespace subiota

#endif
