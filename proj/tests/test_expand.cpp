#include <catch_amalgamated.hpp>

#include <functional>

#include "subiota/expand.hpp"
#include "subiota/parse.hpp"
#include "subiota/print.hpp"

using namespace subiota;

namespace {
SubatomicBase toy_base() {
  return SubatomicBase({"a", "b", "France"},
                       {PredicateSymbol("P", 1), PredicateSymbol("B", 1), PredicateSymbol("R", 2)},
                       {});
}
}  // namespace

TEST_CASE("unary qualified identity is the degenerate biconditional") {
  SubatomicBase base = toy_base();
  FormulaPtr e = expand_qident(Polarity::Positive, Term::constant("a"), Term::constant("b"),
                               QSet::of({PredicateSymbol("P", 1)}));
  CHECK(equal(e, parse_formula("(P(a) -> P(b)) & (P(b) -> P(a))", &base)));
}

TEST_CASE("negative qualified identity uses predication failures") {
  SubatomicBase base = toy_base();
  FormulaPtr e = expand_qident(Polarity::Negative, Term::constant("a"), Term::constant("b"),
                               QSet::of({PredicateSymbol("P", 1)}));
  CHECK(equal(e, parse_formula("(-P(a) -> -P(b)) & (-P(b) -> -P(a))", &base)));
}

TEST_CASE("binary predicate template quantifies companion positions") {
  SubatomicBase base = toy_base();
  FormulaPtr e = expand_qident(Polarity::Positive, Term::constant("a"), Term::constant("b"),
                               QSet::of({PredicateSymbol("R", 2)}));
  FormulaPtr want = parse_formula(
      "forall z1. forall z2. "
      "((R(a, z2) -> R(b, z2)) & (R(b, z2) -> R(a, z2))) & "
      "(R(z1, a) -> R(z1, b)) & (R(z1, b) -> R(z1, a))",
      &base);
  CHECK(to_string(e) == to_string(want));
  CHECK(equal(e, want));
}

TEST_CASE("multi-predicate identity conjoins templates right-associated in canonical order") {
  SubatomicBase base = toy_base();
  FormulaPtr e = expand_qident(Polarity::Positive, Term::constant("a"), Term::constant("b"),
                               QSet::of({PredicateSymbol("P", 1), PredicateSymbol("B", 1)}));
  const auto* n = e->as<And>();
  REQUIRE(n != nullptr);
  // canonical (sorted) order: B before P
  CHECK(to_string(n->lhs) == "(B(a) -> B(b)) & (B(b) -> B(a))");
  CHECK(to_string(n->rhs) == "(P(a) -> P(b)) & (P(b) -> P(a))");
}

TEST_CASE("identity of a term with itself expands to biconditionals between equal sides") {
  for (const auto& pred : {PredicateSymbol("P", 1), PredicateSymbol("R", 2)}) {
    FormulaPtr e = qident_template(Polarity::Positive, pred, Term::constant("a"),
                                   Term::constant("a"));
    // strip the quantifier prefix
    FormulaPtr body = e;
    while (const auto* fa = body->as<Forall>()) body = fa->body;
    std::vector<FormulaPtr> conjuncts{body};
    while (const auto* an = conjuncts.back()->as<And>()) {
      FormulaPtr l = an->lhs, r = an->rhs;
      if (l->as<Implies>() && r->as<Implies>() && conjuncts.size() == 1 &&
          equal(l->as<Implies>()->lhs, r->as<Implies>()->rhs))
        break;  // reached a biconditional
      conjuncts.pop_back();
      conjuncts.push_back(l);
      conjuncts.push_back(r);
    }
    for (const auto& c : conjuncts) {
      if (const auto* iff = c->as<And>()) {
        const auto* fwd = iff->lhs->as<Implies>();
        REQUIRE(fwd != nullptr);
        CHECK(equal(fwd->lhs, fwd->rhs));
      }
    }
  }
}

TEST_CASE("companion variables avoid the identified terms") {
  FormulaPtr e = qident_template(Polarity::Positive, PredicateSymbol("R", 2),
                                 Term::variable("z1"), Term::variable("v"));
  const auto* fa = e->as<Forall>();
  REQUIRE(fa != nullptr);
  CHECK(fa->var != "z1");
  CHECK(fa->var != "v");
}

TEST_CASE("iota elaboration has the three clauses in order, right-associated") {
  SubatomicBase base = toy_base();
  FormulaPtr f = parse_formula("B(iota[P] x. P(x))", &base);
  FormulaPtr e = elaborate_iota(f);
  FormulaPtr want = parse_formula(
      "(exists x. P(x)) & "
      "(forall u. forall v. P(u) & P(v) -> u =+[P] v) & "
      "forall w. P(w) -> B(w)",
      &base);
  CHECK(to_string(e) == to_string(want));
  const auto* top = e->as<And>();
  REQUIRE(top != nullptr);
  CHECK(top->lhs->is<Exists>());          // existence first
  REQUIRE(top->rhs->is<And>());           // then (uniqueness & predication)
  CHECK(top->rhs->as<And>()->lhs->is<Forall>());
  CHECK(top->rhs->as<And>()->rhs->is<Forall>());
}

TEST_CASE("negative inner polarity elaborates with failures and negative identity") {
  SubatomicBase base = toy_base();
  FormulaPtr f = parse_formula("B(iota[P] x. -P(x))", &base);
  FormulaPtr want = parse_formula(
      "(exists x. -P(x)) & "
      "(forall u. forall v. -P(u) & -P(v) -> u =-[P] v) & "
      "forall w. -P(w) -> B(w)",
      &base);
  CHECK(equal(elaborate_iota(f), want));
}

TEST_CASE("negative outer polarity lands on the predication clause") {
  SubatomicBase base = toy_base();
  FormulaPtr f = parse_formula("-B(iota[P] x. P(x))", &base);
  FormulaPtr e = elaborate_iota(f);
  FormulaPtr want = parse_formula(
      "(exists x. P(x)) & "
      "(forall u. forall v. P(u) & P(v) -> u =+[P] v) & "
      "forall w. P(w) -> -B(w)",
      &base);
  CHECK(equal(e, want));
}

TEST_CASE("the king of France is not real") {
  SubatomicBase base({"France"}, {PredicateSymbol("King-of", 2), PredicateSymbol("Real", 1)}, {});
  FormulaPtr f = parse_formula("-Real(iota[*] x. King-of(x, France))", &base);
  FormulaPtr e = elaborate_iota(f);
  // the predication clause carries the failure
  FormulaPtr want_p = parse_formula("forall w. King-of(w, France) -> -Real(w)", &base);
  const auto* top = e->as<And>();
  REQUIRE(top != nullptr);
  CHECK(equal(top->lhs, parse_formula("exists x. King-of(x, France)", &base)));
  CHECK(equal(top->rhs->as<And>()->rhs, want_p));
}

TEST_CASE("nested descriptions elaborate recursively, leftmost outermost") {
  SubatomicBase base({"rex"},
                     {PredicateSymbol("Dog", 1), PredicateSymbol("Wolf", 1),
                      PredicateSymbol("Descends-from", 2)},
                     {});
  FormulaPtr f =
      parse_formula("Descends-from(iota[Dog] x. Dog(x), iota[Wolf] y. Wolf(y))", &base);
  FormulaPtr e = elaborate_iota(f);
  // outermost expansion is about Dog; its predication clause elaborates the
  // Wolf description in place
  const auto* top = e->as<And>();
  REQUIRE(top != nullptr);
  CHECK(equal(top->lhs, parse_formula("exists x. Dog(x)", &base)));
  const auto* pred_clause = top->rhs->as<And>()->rhs->as<Forall>();
  REQUIRE(pred_clause != nullptr);
  // forall w. Dog(w) -> [expansion of Descends-from(w, iota Wolf ...)]
  const auto* inner = pred_clause->body->as<Implies>();
  REQUIRE(inner != nullptr);
  const auto* wolf_part = inner->rhs->as<And>();
  REQUIRE(wolf_part != nullptr);
  CHECK(equal(wolf_part->lhs, parse_formula("exists y. Wolf(y)", &base)));
  // no description survives anywhere
  std::function<bool(const FormulaPtr&)> clean = [&](const FormulaPtr& g) -> bool {
    if (g->is<IotaPred>()) return false;
    if (const auto* n = g->as<And>()) return clean(n->lhs) && clean(n->rhs);
    if (const auto* n = g->as<Or>()) return clean(n->lhs) && clean(n->rhs);
    if (const auto* n = g->as<Implies>()) return clean(n->lhs) && clean(n->rhs);
    if (const auto* n = g->as<Forall>()) return clean(n->body);
    if (const auto* n = g->as<Exists>()) return clean(n->body);
    return true;
  };
  CHECK(clean(e));
}

TEST_CASE("bound variables of the clauses avoid collisions with the condition") {
  SubatomicBase base = toy_base();
  // phi mentions u and w free; the clause binders must pick fresh names
  FormulaPtr f = make_iota_pred(Polarity::Positive, PredicateSymbol("B", 1), {PsiSlot{PsiHole{}}},
                                QSet::of({PredicateSymbol("R", 2)}), "x",
                                parse_formula("R(x, u)", &base));
  IotaClauses c = iota_clauses(*f->as<IotaPred>());
  const auto* uq = c.uniqueness->as<Forall>();
  REQUIRE(uq != nullptr);
  CHECK(uq->var != "u");
  CHECK(to_string(c.existence) == "exists x. R(x, u)");
}

TEST_CASE("degrees of definiteness") {
  SubatomicBase base = toy_base();  // P = {B, P, R}
  auto degree_of = [&](const char* text) {
    FormulaPtr f = parse_formula(text, &base);
    return definiteness_degree(*f->as<IotaPred>(), base);
  };
  CHECK(degree_of("B(iota[*] x. P(x))") == Degree::Maximal);
  CHECK(degree_of("B(iota[P,B] x. P(x))") == Degree::Restricted);
  CHECK(degree_of("B(iota[P] x. P(x))") == Degree::MinimalSingleton);
  // singleton set that is not the description's own predicate
  CHECK(degree_of("B(iota[B] x. P(x))") == Degree::Restricted);
  // unknown predicate in Q
  FormulaPtr f = make_iota_pred(Polarity::Positive, PredicateSymbol("B", 1), {PsiSlot{PsiHole{}}},
                                QSet::of({PredicateSymbol("Zebra", 1)}), "x",
                                parse_formula("P(x)", &base));
  CHECK_THROWS_AS(definiteness_degree(*f->as<IotaPred>(), base), UnknownSymbolError);
}
