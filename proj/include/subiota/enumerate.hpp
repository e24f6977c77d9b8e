#ifndef SUBIOTA_ENUMERATE_HPP
#define SUBIOTA_ENUMERATE_HPP

// Bounded goal-directed enumeration of derivations, and the meaning sample
// built on it. The meaning of a formula is the set of its canonical
// derivations; that set is only semi-decidable, so what we expose is an
// exhaustive enumeration *within* a depth bound and a documented search
// space, never the meaning itself.
//
// Search space: introduction rules by goal shape (with forallI families
// over the finite constant set, identity intros for unary predicates), and
// elimination steps impE/andE/forallE/qidentE/botI whose major premises
// are drawn from the subformula universe of the query. orE/existsE and the
// proper-variable quantifier variants are not searched.

#include <map>
#include <string>
#include <vector>

#include "subiota/build.hpp"
#include "subiota/check.hpp"
#include "subiota/subformula.hpp"

namespace subiota {

struct EnumLimits {
  std::size_t depth = 3;
  std::size_t max_per_goal = 64;   // cap on distinct derivations kept per subgoal
  std::size_t max_results = 4096;  // overall safety cap
};

namespace detail {

inline std::string deriv_key(const DerivPtr& d) {
  std::string s;
  for_each_node(d, [&](const Path&, const DerivPtr& n) {
    if (const auto* a = n->as<Assumption>()) {
      s += "A(" + to_string(a->formula) + ")";
    } else if (const auto* t = n->as<TermLeaf>()) {
      s += "T(" + t->symbol + ")";
    } else {
      const auto* r = n->as<RuleNode>();
      s += rule_name(r->rule);
      if (r->inst.term) s += ":" + r->inst.term->name;
      if (r->inst.index) s += "#" + std::to_string(*r->inst.index);
      if (const auto* f = std::get_if<FormulaPtr>(&r->conclusion)) s += "=" + to_string(*f);
      s += ";";
    }
  });
  return s;
}

// Labels every unlabeled open assumption of formula `f` in d.
inline DerivPtr label_open(const DerivPtr& d, const FormulaPtr& f, const std::string& label) {
  if (const auto* a = d->as<Assumption>()) {
    if (a->label.empty() && equal(a->formula, f)) return make_assumption(a->formula, label);
    return d;
  }
  if (d->as<TermLeaf>()) return d;
  const auto* r = d->as<RuleNode>();
  std::vector<DerivPtr> premises;
  bool changed = false;
  for (const auto& p : r->premises) {
    DerivPtr q = label_open(p, f, label);
    changed |= q != p;
    premises.push_back(q);
  }
  if (!changed) return d;
  return make_rule(r->rule, r->inst, std::move(premises), r->conclusion);
}

inline bool uses_open(const DerivPtr& d, const FormulaPtr& f) {
  bool found = false;
  for_each_node(d, [&](const Path&, const DerivPtr& n) {
    if (const auto* a = n->as<Assumption>())
      if (a->label.empty() && equal(a->formula, f)) found = true;
  });
  return found;
}

// All combinations (capped) of one derivation per option slot.
template <typename Fn>
void product(const std::vector<std::vector<DerivPtr>>& options, Fn fn, std::size_t cap = 256) {
  for (const auto& o : options)
    if (o.empty()) return;
  std::vector<std::size_t> idx(options.size(), 0);
  std::size_t count = 0;
  while (count < cap) {
    std::vector<DerivPtr> pick;
    pick.reserve(options.size());
    for (std::size_t i = 0; i < options.size(); ++i) pick.push_back(options[i][idx[i]]);
    fn(std::move(pick));
    ++count;
    std::size_t i = 0;
    for (; i < options.size(); ++i) {
      if (++idx[i] < options[i].size()) break;
      idx[i] = 0;
    }
    if (i == options.size()) break;
  }
}

class Enumerator {
 public:
  Enumerator(const SubatomicBase& base, Mode mode, EnumLimits limits)
      : base_(base), mode_(mode), limits_(limits) {}

  std::vector<DerivPtr> derive(const FormulaPtr& goal, const FormulaSet& hyps,
                               std::size_t depth) {
    std::string key = to_string(goal) + "|" + std::to_string(depth) + "|";
    for (const auto& h : hyps) key += to_string(h) + ",";
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    memo_[key] = {};  // cut cycles

    std::vector<DerivPtr> results;
    std::set<std::string> seen;
    auto add = [&](const DerivPtr& d) {
      if (results.size() >= limits_.max_per_goal) return;
      std::string k = deriv_key(d);
      if (seen.insert(k).second) results.push_back(d);
    };

    if (hyps.count(goal)) add(build::assume(goal));
    if (depth > 0) {
      intro_rules(goal, hyps, depth, add);
      elim_rules(goal, hyps, depth, add);
    }
    memo_[key] = results;
    return results;
  }

  // The formula universe for elimination majors: subformulas of the query
  // and hypotheses plus all ground literals over the base.
  void seed_universe(const std::vector<FormulaPtr>& roots) {
    std::vector<Term> terms;
    for (const auto& c : base_.constants()) terms.push_back(Term::constant(c));
    std::set<std::string> vars;
    for (const auto& r : roots) collect_all_variables(r, vars);
    for (const auto& v : vars) terms.push_back(Term::variable(v));

    FormulaSet u;
    for (const auto& r : roots) {
      FormulaSet s = subformulas(r, terms);
      u.insert(s.begin(), s.end());
    }
    for (const auto& g : ground_literals()) u.insert(g);
    u.insert(make_bottom());
    universe_.assign(u.begin(), u.end());
  }

  std::vector<FormulaPtr> ground_literals() const {
    std::vector<FormulaPtr> out;
    for (const auto& p : base_.predicates()) {
      std::vector<std::vector<Term>> tuples{{}};
      for (std::size_t i = 0; i < p.arity; ++i) {
        std::vector<std::vector<Term>> next;
        for (const auto& t : tuples)
          for (const auto& c : base_.constants()) {
            auto e = t;
            e.push_back(Term::constant(c));
            next.push_back(std::move(e));
          }
        tuples = std::move(next);
      }
      for (const auto& t : tuples) {
        out.push_back(make_atom(p, t));
        out.push_back(make_negpred(p, t));
      }
    }
    return out;
  }

 private:
  const SubatomicBase& base_;
  Mode mode_;
  EnumLimits limits_;
  std::vector<FormulaPtr> universe_;
  std::map<std::string, std::vector<DerivPtr>> memo_;
  int label_counter_ = 0;

  template <typename Add>
  void intro_rules(const FormulaPtr& goal, const FormulaSet& hyps, std::size_t depth, Add add) {
    struct V {
      Enumerator& e;
      const FormulaPtr& goal;
      const FormulaSet& hyps;
      std::size_t depth;
      Add add;

      void operator()(const Predication& p) {
        if (!is_ground_atom(p.polarity == Polarity::Positive
                                ? goal
                                : make_atom(p.pred, p.args)))
          return;
        FormulaPtr atom = make_atom(p.pred, p.args);
        try {
          bool contained = e.base_.positively_contained(atom);
          if ((p.polarity == Polarity::Positive) != contained) return;
        } catch (const Error&) {
          return;
        }
        // Premise families: every way to derive each term-assumption set.
        std::vector<std::vector<DerivPtr>> options;
        options.push_back(e.derive_termset(p.pred.name, hyps, depth - 1));
        for (const auto& t : p.args) options.push_back(e.derive_termset(t.name, hyps, depth - 1));
        product(options, [&](std::vector<DerivPtr> premises) {
          add(build::as_intro(goal, std::move(premises)));
        });
      }
      void operator()(const Bottom&) {}
      void operator()(const And& n) {
        for (const auto& a : e.derive(n.lhs, hyps, depth - 1))
          for (const auto& b : e.derive(n.rhs, hyps, depth - 1)) add(build::and_intro(a, b));
      }
      void operator()(const Or& n) {
        for (const auto& a : e.derive(n.lhs, hyps, depth - 1)) add(build::or_intro1(a, n.rhs));
        for (const auto& b : e.derive(n.rhs, hyps, depth - 1)) add(build::or_intro2(n.lhs, b));
      }
      void operator()(const Implies& n) {
        FormulaSet hyps2 = hyps;
        hyps2.insert(n.lhs);
        for (const auto& b : e.derive(n.rhs, hyps2, depth - 1)) {
          std::string label = "h" + std::to_string(++e.label_counter_);
          DerivPtr body = label_open(b, n.lhs, label);
          bool vacuous = equal(body, b) && !uses_open(b, n.lhs);
          add(build::imp_intro(n.lhs, body, vacuous ? "" : label));
        }
      }
      void operator()(const Forall& n) {
        // variant iii: one subderivation per constant, in declaration order
        std::vector<std::vector<DerivPtr>> options;
        for (const auto& c : e.base_.constants()) {
          if (!free_for(n.body, n.var, Term::constant(c))) return;
          options.push_back(e.derive(substitute(n.body, n.var, Term::constant(c)), hyps, depth - 1));
        }
        product(options, [&](std::vector<DerivPtr> premises) {
          add(build::forall_iii(n.var, n.body, std::move(premises)));
        });
        // variant ii: a single eigenconstant subderivation
        for (const auto& c : e.base_.constants()) {
          Term o = Term::constant(c);
          if (mentions_constant(goal, c)) continue;
          for (const auto& d : e.derive(substitute(n.body, n.var, o), hyps, depth - 1)) {
            CheckReport rep = check_derivation(e.base_, d, e.mode_);
            bool ok = true;
            for (const auto& oa : rep.open_assumptions)
              if (mentions_constant(oa.formula, c)) ok = false;
            if (ok && !has_term_leaf(d, c)) add(build::forall_ii(n.var, n.body, o, d));
          }
        }
      }
      void operator()(const Exists& n) {
        for (const auto& c : e.base_.constants()) {
          Term t = Term::constant(c);
          if (!free_for(n.body, n.var, t)) continue;
          for (const auto& d : e.derive(substitute(n.body, n.var, t), hyps, depth - 1))
            add(build::exists_intro(n.var, n.body, t, d));
        }
      }
      void operator()(const QIdent& n) {
        if (!n.lhs.is_constant() || !n.rhs.is_constant()) return;
        for (const auto& p : n.q.preds())
          if (p.arity != 1) return;  // searched for unary predicates only
        std::vector<PredicateSymbol> ordered;
        for (const auto& p : e.base_.predicates())
          if (n.q.contains(p)) ordered.push_back(p);
        if (ordered.size() != n.q.size()) return;
        std::vector<std::vector<DerivPtr>> options;
        std::vector<FormulaPtr> assumed;
        for (const auto& p : ordered) {
          FormulaPtr fa = make_predication(n.sign, p, {n.lhs});
          FormulaPtr fb = make_predication(n.sign, p, {n.rhs});
          FormulaSet h1 = hyps, h2 = hyps;
          h1.insert(fa);
          h2.insert(fb);
          options.push_back(e.derive(fb, h1, depth - 1));
          assumed.push_back(fa);
          options.push_back(e.derive(fa, h2, depth - 1));
          assumed.push_back(fb);
        }
        product(options, [&](std::vector<DerivPtr> premises) {
          std::vector<std::string> labels;
          for (std::size_t i = 0; i < premises.size(); ++i) {
            std::string label = "h" + std::to_string(++e.label_counter_);
            premises[i] = label_open(premises[i], assumed[i], label);
            labels.push_back(label);
          }
          add(build::qident_intro(n.sign, n.lhs, n.rhs, n.q, std::move(premises),
                                  std::move(labels)));
        });
      }
      void operator()(const IotaPred& ip) {
        if (!ip.phi->is<Predication>()) return;
        for (const auto& s : ip.slots)
          if (std::holds_alternative<DescriptionTerm>(s)) return;
        IotaClauses c = iota_clauses(ip);
        for (const auto& d1 : e.derive(c.existence, hyps, depth - 1))
          for (const auto& d2 : e.derive(c.uniqueness, hyps, depth - 1))
            for (const auto& d3 : e.derive(c.predication, hyps, depth - 1))
              add(build::iota_intro(goal, d1, d2, d3));
      }

    };
    std::visit(V{*this, goal, hyps, depth, add}, goal->node);
  }

  std::vector<DerivPtr> derive_termset(const std::string& tau, const FormulaSet& hyps,
                                       std::size_t depth) {
    std::vector<DerivPtr> out;
    out.push_back(build::term_leaf(tau));
    if (depth == 0) return out;
    // asE/negAsE from any literal over the base that mentions tau.
    for (const auto& lit : universe_) {
      const auto* p = lit->as<Predication>();
      if (!p || !is_ground_atom(p->polarity == Polarity::Positive
                                    ? lit
                                    : make_atom(p->pred, p->args)))
        continue;
      std::vector<int> indices;
      if (p->pred.name == tau) indices.push_back(0);
      for (std::size_t i = 0; i < p->args.size(); ++i)
        if (p->args[i].name == tau) indices.push_back(static_cast<int>(i) + 1);
      if (indices.empty()) continue;
      for (const auto& d : derive(lit, hyps, depth - 1))
        for (int i : indices) {
          out.push_back(build::as_elim(d, i));
          if (out.size() >= limits_.max_per_goal) return out;
        }
    }
    return out;
  }

  template <typename Add>
  void elim_rules(const FormulaPtr& goal, const FormulaSet& hyps, std::size_t depth, Add add) {
    for (const auto& m : universe_) {
      if (const auto* imp = m->as<Implies>()) {
        if (equal(imp->rhs, goal))
          for (const auto& dm : derive(m, hyps, depth - 1))
            for (const auto& dx : derive(imp->lhs, hyps, depth - 1))
              add(build::imp_elim(dm, dx));
      } else if (const auto* an = m->as<And>()) {
        if (equal(an->lhs, goal))
          for (const auto& dm : derive(m, hyps, depth - 1)) add(build::and_elim1(dm));
        if (equal(an->rhs, goal))
          for (const auto& dm : derive(m, hyps, depth - 1)) add(build::and_elim2(dm));
      } else if (const auto* fa = m->as<Forall>()) {
        for (const auto& c : base_.constants()) {
          Term t = Term::constant(c);
          if (!free_for(fa->body, fa->var, t)) continue;
          if (equal(substitute(fa->body, fa->var, t), goal))
            for (const auto& dm : derive(m, hyps, depth - 1)) add(build::forall_elim(dm, t));
        }
      } else if (const auto* qi = m->as<QIdent>()) {
        const auto* g = goal->as<Predication>();
        if (!g || g->polarity != qi->sign || !qi->q.contains(g->pred)) continue;
        if (!qi->lhs.is_constant() || !qi->rhs.is_constant()) continue;
        FormulaPtr minor = swap_constants(*g, qi->lhs.name, qi->rhs.name);
        bool mentions = false;
        for (const auto& t : g->args)
          mentions |= t.name == qi->lhs.name || t.name == qi->rhs.name;
        if (!mentions || equal(minor, goal)) continue;
        const auto* mm = minor->as<Predication>();
        int side = 0;
        for (const auto& t : mm->args) {
          if (t.name == qi->lhs.name) side = 1;
          if (side == 0 && t.name == qi->rhs.name) side = 2;
        }
        if (side == 0) continue;
        for (const auto& dm : derive(m, hyps, depth - 1))
          for (const auto& dn : derive(minor, hyps, depth - 1))
            add(build::qident_elim(dm, dn, side));
      }
    }
    if (mode_ == Mode::I0 && !goal->is<Bottom>())
      for (const auto& db : derive(make_bottom(), hyps, depth - 1))
        add(build::bot_intro(db, goal));
  }
};

}  // namespace detail

// All derivations of `goal` found in the bounded search, with open
// assumptions drawn from `hyps`.
inline std::vector<DerivPtr> enumerate_derivations(const SubatomicBase& base,
                                                   const FormulaPtr& goal, const FormulaSet& hyps,
                                                   EnumLimits limits, Mode mode = Mode::I0) {
  detail::Enumerator e(base, mode, limits);
  std::vector<FormulaPtr> roots{goal};
  for (const auto& h : hyps) roots.push_back(h);
  e.seed_universe(roots);
  return e.derive(goal, hyps, limits.depth);
}

// The bounded sample of a formula's meaning: canonical derivations (ending
// in an introduction) up to the depth bound. With `allow_open`, assumptions
// may remain open and are drawn from the subformulas of f.
inline std::vector<DerivPtr> meaning_sample(const SubatomicBase& base, const FormulaPtr& f,
                                            std::size_t depth_bound, bool allow_open = false,
                                            Mode mode = Mode::I0) {
  FormulaSet hyps;
  if (allow_open) {
    std::vector<Term> terms;
    for (const auto& c : base.constants()) terms.push_back(Term::constant(c));
    hyps = subformulas(f, terms);
  }
  EnumLimits limits;
  limits.depth = depth_bound;
  std::vector<DerivPtr> all = enumerate_derivations(base, f, hyps, limits, mode);
  std::vector<DerivPtr> canonical;
  for (const auto& d : all) {
    const auto* r = d->as<RuleNode>();
    if (r && is_intro_rule(r->rule)) canonical.push_back(d);
  }
  return canonical;
}

}  // namespace subiota

#endif
