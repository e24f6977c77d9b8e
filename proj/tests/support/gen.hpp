#ifndef SUBIOTA_TESTS_GEN_HPP
#define SUBIOTA_TESTS_GEN_HPP

// Random generation of valid derivations over random toy bases (up to 3
// constants, up to 3 unary predicates). The generator grows a pool of
// derivations by applying rules whose side conditions it checks up front;
// introduction/elimination combinations are deliberately frequent so that
// normalization has work to do.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "subiota/build.hpp"
#include "subiota/check.hpp"

namespace subiota::testgen {

inline SubatomicBase random_base(std::mt19937& rng) {
  std::uniform_int_distribution<int> d2(2, 3);
  int nc = d2(rng), np = d2(rng);
  std::vector<std::string> names = {"a", "b", "c"};
  std::vector<std::string> pnames = {"P", "B", "W"};
  std::vector<std::string> constants(names.begin(), names.begin() + nc);
  std::vector<PredicateSymbol> preds;
  for (int i = 0; i < np; ++i) preds.emplace_back(pnames[i], 1);
  std::vector<std::pair<std::string, FormulaPtr>> v;
  std::bernoulli_distribution keep(0.7);
  for (const auto& p : preds)
    for (const auto& c : constants) {
      if (!keep(rng)) continue;
      FormulaPtr atom = make_atom(p, {Term::constant(c)});
      v.emplace_back(p.name, atom);
      v.emplace_back(c, atom);
    }
  return SubatomicBase(std::move(constants), std::move(preds), std::move(v));
}

class DerivationGen {
 public:
  DerivationGen(SubatomicBase base, std::mt19937& rng, std::size_t max_depth = 8)
      : base_(std::move(base)), rng_(rng), max_depth_(max_depth) {}

  const SubatomicBase& base() const { return base_; }

  DerivPtr generate(int rounds = 6) {
    seed_pool();
    for (int i = 0; i < rounds; ++i) grow();
    return pool_[pick(pool_.size())];
  }

 private:
  SubatomicBase base_;
  std::mt19937& rng_;
  std::size_t max_depth_;
  std::vector<DerivPtr> pool_;
  int labels_ = 0;

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::string fresh_label() { return "g" + std::to_string(++labels_); }

  FormulaPtr random_literal() {
    const auto& ps = base_.predicates();
    const auto& cs = base_.constants();
    const auto& p = ps[pick(ps.size())];
    Term t = Term::constant(cs[pick(cs.size())]);
    return make_predication(coin(0.3) ? Polarity::Negative : Polarity::Positive, p, {t});
  }

  void add(DerivPtr d) {
    if (rule_depth(d) > max_depth_) return;
    pool_.push_back(std::move(d));
    if (pool_.size() > 64) pool_.erase(pool_.begin(), pool_.begin() + 16);
  }

  DerivPtr any() { return pool_[pick(pool_.size())]; }

  DerivPtr any_with(const std::function<bool(const FormulaPtr&)>& want) {
    std::vector<DerivPtr> hits;
    for (const auto& d : pool_) {
      FormulaPtr f = conclusion_formula(d);
      if (f && want(f)) hits.push_back(d);
    }
    if (hits.empty()) return nullptr;
    return hits[pick(hits.size())];
  }

  void seed_pool() {
    pool_.clear();
    for (const auto& p : base_.predicates())
      for (const auto& c : base_.constants()) {
        FormulaPtr atom = make_atom(p, {Term::constant(c)});
        bool contained = base_.positively_contained(atom);
        pool_.push_back(build::as_intro_leaves(
            make_predication(contained ? Polarity::Positive : Polarity::Negative, p,
                             {Term::constant(c)})));
      }
    pool_.push_back(build::assume(random_literal()));
  }

  void grow() {
    switch (pick(12)) {
      case 0: {  // andI, often followed later by andE
        add(build::and_intro(any(), any()));
        break;
      }
      case 1: {  // andE on a conjunction (detour when it came from andI)
        DerivPtr d = any_with([](const FormulaPtr& f) { return f->is<And>(); });
        if (d) add(coin() ? build::and_elim1(d) : build::and_elim2(d));
        break;
      }
      case 2: {  // impI then sometimes impE (detour)
        FormulaPtr a = random_literal();
        DerivPtr body = coin() ? build::assume(a, "") : any();
        std::string label;
        if (const auto* leaf = body->as<Assumption>(); leaf && equal(leaf->formula, a) && coin()) {
          label = fresh_label();
          body = build::assume(a, label);
        }
        DerivPtr imp = build::imp_intro(a, body, label);
        add(imp);
        DerivPtr minor = any_with([&](const FormulaPtr& f) { return equal(f, a); });
        if (minor && coin(0.8)) add(build::imp_elim(imp, minor));
        break;
      }
      case 3: {  // orI then orE over it (detour with a used assumption)
        DerivPtr d = any();
        FormulaPtr a = conclusion_formula(d);
        if (!a) break;
        FormulaPtr b = random_literal();
        DerivPtr major = coin() ? build::or_intro1(d, b) : build::or_intro2(b, d);
        const auto* o = conclusion_formula(major)->as<Or>();
        std::string u = fresh_label(), v = fresh_label();
        FormulaPtr c = coin() ? o->lhs : conclusion_formula(any());
        if (!c) break;
        DerivPtr left = equal(o->lhs, c) ? build::assume(o->lhs, u) : nullptr;
        DerivPtr right = equal(o->rhs, c) ? build::assume(o->rhs, v) : nullptr;
        if (!left) left = any_with([&](const FormulaPtr& f) { return equal(f, c); });
        if (!right) right = any_with([&](const FormulaPtr& f) { return equal(f, c); });
        if (left && right) add(build::or_elim(major, left, right, u, v));
        break;
      }
      case 4: {  // forallI.iii over a fully contained predicate
        std::vector<PredicateSymbol> full;
        for (const auto& p : base_.predicates()) {
          bool all = true;
          for (const auto& c : base_.constants())
            all &= base_.positively_contained(make_atom(p, {Term::constant(c)}));
          if (all) full.push_back(p);
        }
        if (full.empty()) break;
        const auto& p = full[pick(full.size())];
        std::vector<DerivPtr> family;
        for (const auto& c : base_.constants())
          family.push_back(build::as_intro_leaves(make_atom(p, {Term::constant(c)})));
        add(build::forall_iii("x", make_atom(p, {Term::variable("x")}), std::move(family)));
        break;
      }
      case 5: {  // forallE (detour when the major is a forallI)
        DerivPtr d = any_with([](const FormulaPtr& f) { return f->is<Forall>(); });
        if (d) {
          const auto& cs = base_.constants();
          add(build::forall_elim(d, Term::constant(cs[pick(cs.size())])));
        }
        break;
      }
      case 6: {  // existsI
        DerivPtr d = any_with([](const FormulaPtr& f) {
          const auto* p = f->as<Predication>();
          return p && p->args[0].is_constant();
        });
        if (!d) break;
        const auto* p = conclusion_formula(d)->as<Predication>();
        add(build::exists_intro("x", make_predication(p->polarity, p->pred, {Term::variable("x")}),
                                p->args[0], d));
        break;
      }
      case 7: {  // existsE with a safe eigenconstant (detour over existsI)
        DerivPtr major = any_with([](const FormulaPtr& f) { return f->is<Exists>(); });
        if (!major) break;
        const auto* ex = conclusion_formula(major)->as<Exists>();
        std::string eigen;
        for (const auto& c : base_.constants())
          if (!mentions_constant(conclusion_formula(major), c)) {
            eigen = c;
            break;
          }
        if (eigen.empty()) break;
        std::string u = fresh_label();
        FormulaPtr inst = substitute(ex->body, ex->var, Term::constant(eigen));
        DerivPtr branch =
            build::exists_intro(ex->var, ex->body, Term::constant(eigen), build::assume(inst, u));
        add(build::exists_elim(major, branch, u, Term::constant(eigen), QuantVariant::II));
        break;
      }
      case 8: {  // identity introduction over a fully symmetric Q
        const auto& cs = base_.constants();
        std::string a1 = cs[pick(cs.size())], a2 = cs[pick(cs.size())];
        std::vector<PredicateSymbol> good;
        for (const auto& p : base_.predicates()) {
          bool both = base_.positively_contained(make_atom(p, {Term::constant(a1)})) &&
                      base_.positively_contained(make_atom(p, {Term::constant(a2)}));
          bool neither = !base_.positively_contained(make_atom(p, {Term::constant(a1)})) &&
                         !base_.positively_contained(make_atom(p, {Term::constant(a2)}));
          if (both || neither) good.push_back(p);
        }
        if (good.empty()) break;
        std::size_t take = 1 + pick(good.size());
        std::shuffle(good.begin(), good.end(), rng_);
        std::vector<PredicateSymbol> qs(good.begin(), good.begin() + take);
        QSet q = QSet::of(qs);
        std::vector<PredicateSymbol> ordered;
        for (const auto& p : base_.predicates())
          if (q.contains(p)) ordered.push_back(p);
        Polarity sign =
            base_.positively_contained(make_atom(ordered[0], {Term::constant(a1)}))
                ? Polarity::Positive
                : Polarity::Negative;
        bool uniform = true;
        for (const auto& p : ordered)
          uniform &= base_.positively_contained(make_atom(p, {Term::constant(a1)})) ==
                     (sign == Polarity::Positive);
        if (!uniform) break;
        std::vector<DerivPtr> pairs;
        std::vector<std::string> labels;
        for (const auto& p : ordered) {
          pairs.push_back(build::as_intro_leaves(make_predication(sign, p, {Term::constant(a2)})));
          pairs.push_back(build::as_intro_leaves(make_predication(sign, p, {Term::constant(a1)})));
          labels.push_back(fresh_label());
          labels.push_back(fresh_label());
        }
        DerivPtr ident = build::qident_intro(sign, Term::constant(a1), Term::constant(a2), q,
                                             std::move(pairs), std::move(labels));
        add(ident);
        // often eliminate straight away (identity detour)
        FormulaPtr minor_f = make_predication(sign, ordered[pick(ordered.size())],
                                              {Term::constant(coin() ? a1 : a2)});
        bool minor_ok = sign == Polarity::Positive
                            ? base_.positively_contained(
                                  make_atom(minor_f->as<Predication>()->pred,
                                            minor_f->as<Predication>()->args))
                            : base_.negatively_contained(
                                  make_atom(minor_f->as<Predication>()->pred,
                                            minor_f->as<Predication>()->args));
        if (minor_ok && coin(0.7)) {
          int side = minor_f->as<Predication>()->args[0].name == a1 ? 1 : 2;
          if (a1 == a2) side = 1;
          add(build::qident_elim(ident, build::as_intro_leaves(minor_f), side));
        }
        break;
      }
      case 9: {  // description introduction, then often an elimination
        std::vector<PredicateSymbol> full;
        for (const auto& p : base_.predicates()) {
          bool all = true;
          for (const auto& c : base_.constants())
            all &= base_.positively_contained(make_atom(p, {Term::constant(c)}));
          if (all) full.push_back(p);
        }
        if (full.size() < 1) break;
        const auto& phi = full[pick(full.size())];
        const auto& psi = full[pick(full.size())];
        std::vector<PredicateSymbol> qs{phi};
        if (full.size() > 1 && coin()) qs.push_back(psi);
        QSet q = QSet::of(qs);
        FormulaPtr target =
            make_iota_pred(Polarity::Positive, psi, {PsiSlot{PsiHole{}}}, q, "x",
                           make_atom(phi, {Term::variable("x")}));
        DerivPtr d1 = build::derive_existence(Polarity::Positive, phi,
                                              base_.constants()[pick(base_.constants().size())],
                                              "x");
        DerivPtr d2 = build::derive_uniqueness(base_, Polarity::Positive, phi, q, "u", "v");
        DerivPtr d3 =
            build::derive_predication(base_, Polarity::Positive, phi, Polarity::Positive, psi, "w");
        DerivPtr intro = build::iota_intro(target, d1, d2, d3);
        add(intro);
        if (coin(0.7)) add(build::iota_elim(intro, 1 + static_cast<int>(pick(3))));
        break;
      }
      case 10: {  // permutation fodder: an elimination over orE/existsE
        DerivPtr d = any_with([](const FormulaPtr& f) { return f->is<And>(); });
        if (!d) break;
        const auto* r = d->as<RuleNode>();
        if (r && (r->rule == RuleId::OrE || r->rule == RuleId::ExistsE))
          add(coin() ? build::and_elim1(d) : build::and_elim2(d));
        break;
      }
      default: {  // fresh seeds keep the pool varied
        FormulaPtr lit = random_literal();
        const auto* p = lit->as<Predication>();
        FormulaPtr atom = make_atom(p->pred, p->args);
        bool contained = base_.positively_contained(atom);
        if ((p->polarity == Polarity::Positive) == contained)
          add(build::as_intro_leaves(lit));
        else
          add(build::assume(lit));
        break;
      }
    }
  }
};

}  // namespace subiota::testgen

#endif
