// Regenerates the shipped corpus: bases, proof scripts, elaboration
// queries and mutation fixtures. Output is deterministic; run with the
// corpus directory as the only argument.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "subiota/subiota.hpp"

using namespace subiota;
using nlohmann::json;

namespace {

const PredicateSymbol kP{"P", 1};
const PredicateSymbol kB{"B", 1};
const PredicateSymbol kW{"W", 1};
const PredicateSymbol kN{"N", 1};
const PredicateSymbol kM{"M", 1};

FormulaPtr lit(Polarity sign, const PredicateSymbol& p, const Term& t) {
  return make_predication(sign, p, {t});
}

// The two-popes base: every predicate holds of both constants, so the two
// are indiscernible in every respect.
SubatomicBase schism_base() {
  std::vector<std::pair<std::string, FormulaPtr>> v;
  for (const auto& p : {kP, kB, kW})
    for (const std::string c : {"a", "b"}) {
      FormulaPtr atom = lit(Polarity::Positive, p, Term::constant(c));
      v.emplace_back(p.name, atom);
      v.emplace_back(c, atom);
    }
  return SubatomicBase({"a", "b"}, {kP, kB, kW}, v);
}

// A base with gaps: N holds of nothing, M only of c.
SubatomicBase gaps_base() {
  FormulaPtr mc = lit(Polarity::Positive, kM, Term::constant("c"));
  return SubatomicBase({"c", "d"}, {kN, kM}, {{"M", mc}, {"c", mc}});
}

FormulaPtr iota_target(Polarity outer, const PredicateSymbol& psi, const QSet& q,
                       const std::string& var, Polarity sign, const PredicateSymbol& phi) {
  return make_iota_pred(outer, psi, {PsiSlot{PsiHole{}}}, q, var,
                        lit(sign, phi, Term::variable(var)));
}

void save_script(const std::filesystem::path& dir, const std::string& name,
                 const std::string& base_ref, const std::string& description,
                 std::map<std::string, DerivPtr> derivations) {
  io::ProofScript s;
  s.base_ref = base_ref;
  s.mode = Mode::I0;
  s.description = description;
  s.derivations = std::move(derivations);
  io::save_json_file((dir / (name + ".json")).string(), io::script_to_json(s));
}

json mutation(const std::string& name, const std::string& script, const std::string& derivation,
              std::vector<int> path, const std::string& op, json value,
              const std::string& expect) {
  json m{{"name", name},     {"script", script}, {"derivation", derivation},
         {"path", path},     {"op", op},         {"expect", expect}};
  if (!value.is_null()) m["value"] = value;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  fs::path root = argc > 1 ? argv[1] : "corpus";
  fs::create_directories(root / "bases");
  fs::create_directories(root / "scripts");

  SubatomicBase schism = schism_base();
  SubatomicBase gaps = gaps_base();

  io::save_json_file((root / "bases" / "schism.json").string(),
                     io::base_to_json(schism, "two indiscernible popes: P, B, W all hold of a and b"));
  io::save_json_file((root / "bases" / "gaps.json").string(),
                     io::base_to_json(gaps, "a base with predication failures: N holds of nothing"));

  // pope: a single pope, for the maximal reading
  {
    std::vector<std::pair<std::string, FormulaPtr>> v;
    PredicateSymbol pope{"Pope", 1}, bald{"Bald", 1};
    for (const auto& p : {pope, bald}) {
      FormulaPtr atom = lit(Polarity::Positive, p, Term::constant("francis"));
      v.emplace_back(p.name, atom);
      v.emplace_back("francis", atom);
    }
    io::save_json_file((root / "bases" / "pope.json").string(),
                       io::base_to_json(SubatomicBase({"francis"}, {pope, bald}, v),
                                        "one pope, used for the strict reading"));
  }
  // schism_pope: two popes with a distinguishing predicate
  {
    std::vector<std::pair<std::string, FormulaPtr>> v;
    PredicateSymbol pope{"Pope", 1}, bald{"Bald", 1}, wears{"Wears-white", 1};
    for (const std::string c : {"francis", "benedict"})
      for (const auto& p : {pope, bald}) {
        FormulaPtr atom = lit(Polarity::Positive, p, Term::constant(c));
        v.emplace_back(p.name, atom);
        v.emplace_back(c, atom);
      }
    FormulaPtr ww = lit(Polarity::Positive, wears, Term::constant("francis"));
    v.emplace_back(wears.name, ww);
    v.emplace_back("francis", ww);
    io::save_json_file(
        (root / "bases" / "schism_pope.json").string(),
        io::base_to_json(SubatomicBase({"francis", "benedict"}, {pope, bald, wears}, v),
                         "two popes, discernible only by Wears-white"));
  }
  // kings: a binary predicate, no king of France
  {
    PredicateSymbol king{"King-of", 2}, real{"Real", 1};
    io::save_json_file((root / "bases" / "kings.json").string(),
                       io::base_to_json(SubatomicBase({"France", "louis"}, {king, real}, {}),
                                        "nobody is king of France"));
  }
  // dogs, zucchetti, berets: bases for the outlook elaborations
  {
    PredicateSymbol dog{"Dog", 1}, wolf{"Wolf", 1}, desc{"Descends-from", 2};
    io::save_json_file((root / "bases" / "dogs.json").string(),
                       io::base_to_json(SubatomicBase({"rex", "lupo"}, {dog, wolf, desc}, {}),
                                        "generic kinds for the dog/wolf reading"));
    PredicateSymbol pope{"Pope", 1}, zuc{"Zucchetto", 1}, put{"Put-on", 3};
    io::save_json_file(
        (root / "bases" / "zucchetti.json").string(),
        io::base_to_json(SubatomicBase({"francis", "cap1", "cap2"}, {pope, zuc, put}, {}),
                         "one pope, two zucchettos"));
    PredicateSymbol man{"Man", 1}, beret{"Beret", 1}, button{"Button", 1}, fr{"French", 1},
        wears{"Wears", 2}, has{"Has", 2};
    io::save_json_file(
        (root / "bases" / "berets.json").string(),
        io::base_to_json(SubatomicBase({"pierre"}, {man, beret, button, fr, wears, has}, {}),
                         "the man wearing the beret with the button"));
  }

  QSet qPB = QSet::of({kP, kB});
  QSet qP = QSet::of({kP});
  QSet qN = QSet::of({kN});
  QSet qFull = schism.full_qset();

  // Example derivations: existence, uniqueness, predication, and the
  // introduction of the description predication from all three.
  DerivPtr d1 = build::derive_existence(Polarity::Positive, kP, "a", "x");
  DerivPtr d2 = build::derive_uniqueness(schism, Polarity::Positive, kP, qPB, "u", "v");
  DerivPtr d3 = build::derive_predication(schism, Polarity::Positive, kP, Polarity::Positive, kB, "w");
  DerivPtr d4 = build::iota_intro(iota_target(Polarity::Positive, kB, qPB, "x", Polarity::Positive, kP),
                                  d1, d2, d3);
  save_script(root / "scripts", "example_3_1", "../bases/schism.json",
              "existence, uniqueness and predication for the B-unique description of P",
              {{"d1", d1}, {"d2", d2}, {"d3", d3}, {"d4", d4}});

  // Degrees of qualified uniqueness: maximal, intermediate, minimal. The
  // minimal display binds x and y; its alpha-variant with u, v feeds the
  // introduction below.
  DerivPtr d2_i = build::derive_uniqueness(schism, Polarity::Positive, kP, qFull, "u", "v");
  DerivPtr d2_ii = d2;
  DerivPtr d2_iii = build::derive_uniqueness(schism, Polarity::Positive, kP, qP, "x", "y");
  save_script(root / "scripts", "remark_5_1", "../bases/schism.json",
              "qualified uniqueness at maximal, intermediate and minimal degree",
              {{"d2_i", d2_i}, {"d2_ii", d2_ii}, {"d2_iii", d2_iii}});

  DerivPtr d6 = build::iota_intro(iota_target(Polarity::Positive, kB, qFull, "x", Polarity::Positive, kP),
                                  d1, d2_i, d3);
  DerivPtr d7 = build::iota_intro(iota_target(Polarity::Positive, kB, qPB, "x", Polarity::Positive, kP),
                                  d1, d2_ii, d3);
  DerivPtr d8 = build::iota_intro(
      iota_target(Polarity::Positive, kB, qP, "x", Polarity::Positive, kP), d1,
      build::derive_uniqueness(schism, Polarity::Positive, kP, qP, "u", "v"), d3);
  save_script(root / "scripts", "remark_5_2", "../bases/schism.json",
              "maximal, intermediate and minimal qualified definiteness",
              {{"d6", d6}, {"d7", d7}, {"d8", d8}});

  // Auxiliary fixtures over the schism base.
  {
    FormulaPtr pa = lit(Polarity::Positive, kP, Term::constant("a"));
    DerivPtr imp_theorem = build::imp_intro(pa, build::assume(pa, "h"), "h");
    DerivPtr leaf = build::assume(pa);
    FormulaPtr imp_aa = make_implies(pa, pa);
    DerivPtr fa_ii_body = build::and_elim1(build::and_intro(
        build::imp_intro(pa, build::assume(pa, "k"), "k"),
        build::assume(lit(Polarity::Positive, kW, Term::constant("b")))));
    DerivPtr forall_ii_example = build::forall_ii(
        "x", make_implies(lit(Polarity::Positive, kP, Term::variable("x")),
                          lit(Polarity::Positive, kP, Term::variable("x"))),
        Term::constant("a"), fa_ii_body);
    FormulaPtr px = lit(Polarity::Positive, kP, Term::variable("x"));
    DerivPtr exists_e_example = build::exists_elim(
        d1,
        build::exists_intro("x", px, Term::constant("b"),
                            build::assume(lit(Polarity::Positive, kP, Term::constant("b")), "h")),
        "h", Term::constant("b"), QuantVariant::II);
    DerivPtr bot_example = build::bot_intro(build::assume(make_bottom()), pa);
    // major: a =+[P] b by vacuously discharged pairs; minor: P(a)
    DerivPtr qident_major = build::qident_intro(
        Polarity::Positive, Term::constant("a"), Term::constant("b"), qP,
        {build::as_intro_leaves(lit(Polarity::Positive, kP, Term::constant("b"))),
         build::as_intro_leaves(lit(Polarity::Positive, kP, Term::constant("a")))},
        {"m1", "m2"});
    DerivPtr qident_elim_example = build::qident_elim(
        qident_major, build::as_intro_leaves(lit(Polarity::Positive, kP, Term::constant("a"))), 1);
    save_script(root / "scripts", "aux", "../bases/schism.json",
                "small classification and side-condition fixtures",
                {{"imp_theorem", imp_theorem},
                 {"leaf", leaf},
                 {"forall_ii_example", forall_ii_example},
                 {"exists_e_example", exists_e_example},
                 {"bot_example", bot_example},
                 {"qident_elim_example", qident_elim_example}});
  }

  // Negative qualified definiteness over the gaps base: the N-unique
  // non-N fails to be N.
  {
    DerivPtr nd1 = build::derive_existence(Polarity::Negative, kN, "c", "x");
    DerivPtr nd2 = build::derive_uniqueness(gaps, Polarity::Negative, kN, qN, "u", "v");
    DerivPtr nd3 =
        build::derive_predication(gaps, Polarity::Negative, kN, Polarity::Negative, kN, "w");
    DerivPtr neg_iota = build::iota_intro(
        iota_target(Polarity::Negative, kN, qN, "x", Polarity::Negative, kN), nd1, nd2, nd3);
    save_script(root / "scripts", "aux_gaps", "../bases/gaps.json",
                "negative existence, uniqueness and definiteness",
                {{"neg_d1", nd1}, {"neg_d2", nd2}, {"neg_d3", nd3}, {"neg_iota", neg_iota}});
  }

  // Detour fixtures for the normalizer goldens.
  {
    FormulaPtr pa = lit(Polarity::Positive, kP, Term::constant("a"));
    DerivPtr body = build::and_elim1(build::and_intro(
        build::assume(pa, "h"),
        build::as_intro_leaves(lit(Polarity::Positive, kB, Term::constant("b")))));
    DerivPtr double_detour =
        build::imp_elim(build::imp_intro(pa, body, "h"), build::as_intro_leaves(pa));
    DerivPtr iota_e2_detour = build::iota_elim(d4, 2);
    save_script(root / "scripts", "redexes", "../bases/schism.json",
                "derivations with conversion positions, for the normalizer",
                {{"double_detour", double_detour},
                 {"iota_e2_detour", iota_e2_detour},
                 {"already_normal", d1}});
  }

  // Elaboration queries for the description readings.
  {
    json elabs = json::array();
    auto add = [&](const std::string& name, const std::string& base, const std::string& formula) {
      elabs.push_back({{"name", name}, {"base", base}, {"formula", formula}});
    };
    add("e11_maximal", "bases/pope.json", "the[*] Pope is Bald");
    add("e11_restricted", "bases/schism_pope.json", "the[Pope,Bald] Pope is Bald");
    add("e13_king", "bases/kings.json", "-Real(iota[*] x. King-of(x, France))");
    add("e14_dogs", "bases/dogs.json",
        "Descends-from(iota[{Dog}] x. Dog(x), iota[{Wolf}] y. Wolf(y))");
    add("e15_zucchetto", "bases/zucchetti.json",
        "Put-on(iota[*] x. Pope(x), iota[Pope,Zucchetto] y. Zucchetto(y), iota[Zucchetto] z. "
        "Zucchetto(z))");
    add("e16_beret", "bases/berets.json",
        "French(iota[Man,Beret,Button] x. Man(x) & Wears(x, iota[Man,Beret,Button] y. Beret(y) & "
        "Has(y, iota[Man,Beret,Button] z. Button(z))))");
    json doc{{"version", 1}, {"elaborations", elabs}};
    io::save_json_file((root / "elaborations.json").string(), doc);
  }

  // Mutation fixtures: single-node edits that must each be rejected with
  // the stated error kind.
  {
    json ms = json::array();
    const std::string ex = "scripts/example_3_1.json";
    const std::string r51 = "scripts/remark_5_1.json";
    const std::string r52 = "scripts/remark_5_2.json";
    const std::string aux = "scripts/aux.json";
    const std::string auxg = "scripts/aux_gaps.json";

    ms.push_back(mutation("negAsI_on_contained", ex, "d1", {0}, "negate_as", json(),
                          "SideConditionViolation"));
    ms.push_back(mutation("existsI_wrong_witness", ex, "d1", {}, "set_term", "b", "ShapeMismatch"));
    ms.push_back(mutation("asI_missing_premise", ex, "d1", {0}, "drop_premise", 1, "ArityMismatch"));
    ms.push_back(mutation("asI_premises_swapped", ex, "d1", {0}, "swap_premises",
                          json::array({0, 1}), "ShapeMismatch"));
    ms.push_back(mutation("iotaI_qset_mismatch", ex, "d4", {}, "set_conclusion",
                          "B(iota[P] x. P(x))", "QSetMismatch"));
    ms.push_back(mutation("iotaI_missing_premise", ex, "d4", {}, "drop_premise", 2, "ShapeMismatch"));
    ms.push_back(mutation("iotaI_sign_flag", ex, "d4", {}, "set_sign", "neg", "SignMismatch"));
    ms.push_back(mutation("iotaI_outer_flag", ex, "d4", {}, "set_outer", "neg", "SignMismatch"));
    ms.push_back(
        mutation("forallIII_missing_instance", ex, "d3", {}, "drop_premise", 1, "MissingInstance"));
    ms.push_back(mutation("impI_label_changed", ex, "d3", {0}, "set_discharge",
                          json::array({0, "zz"}), "UnboundDischargeLabel"));
    ms.push_back(
        mutation("impI_label_deleted", ex, "d3", {0}, "drop_discharge", 0, "UnboundDischargeLabel"));
    ms.push_back(mutation("qidentI_missing_pair", ex, "d2", {0, 0, 0}, "drop_premise", 0,
                          "MissingPredicatePair"));
    ms.push_back(mutation("qidentI_not_mirror", ex, "d2", {0, 0, 0, 0, 0}, "set_formula", "B(a)",
                          "NotMirrorAtoms"));
    ms.push_back(mutation("qidentI_wrong_sign_rule", ex, "d2", {0, 0, 0}, "set_rule", "negQIdentI",
                          "WrongPolarity"));
    ms.push_back(mutation("asE_index_out_of_range", ex, "d2", {0, 0, 0, 0, 1}, "set_index", 2,
                          "IndexOutOfRange"));
    ms.push_back(mutation("asE_wrong_index", ex, "d2", {0, 0, 0, 0, 1}, "set_index", 0,
                          "ShapeMismatch"));
    ms.push_back(
        mutation("forallIII_as_variant_ii", ex, "d3", {}, "set_variant", "ii", "ShapeMismatch"));
    ms.push_back(mutation("existsI_wrong_conclusion", ex, "d1", {}, "set_conclusion",
                          "exists x. B(x)", "ShapeMismatch"));

    ms.push_back(mutation("qidentI_label_list_short", r51, "d2_iii", {0, 0, 0}, "drop_discharge", 0,
                          "MissingPredicatePair"));
    ms.push_back(mutation("forallIII_as_variant_i", r51, "d2_iii", {}, "set_variant", "i",
                          "MalformedNode"));
    ms.push_back(mutation("pair_asI_as_andI", r51, "d2_i", {0, 0, 0, 0}, "set_rule", "andI",
                          "ShapeMismatch"));
    ms.push_back(mutation("iotaI_premises_swapped", r52, "d6", {}, "swap_premises",
                          json::array({0, 1}), "ConjunctShapeMismatch"));
    ms.push_back(mutation("iotaI_minimal_as_intermediate", r52, "d8", {}, "set_conclusion",
                          "B(iota[P,B] x. P(x))", "QSetMismatch"));

    ms.push_back(
        mutation("theorem_label_deleted", aux, "imp_theorem", {}, "drop_discharge", 0,
                 "UnboundDischargeLabel"));
    ms.push_back(mutation("impI_as_andI", aux, "imp_theorem", {}, "set_rule", "andI",
                          "ShapeMismatch"));
    ms.push_back(mutation("forallII_eigen_clash", aux, "forall_ii_example", {0, 0, 1},
                          "set_formula", "W(a)", "EigenConditionViolation"));
    ms.push_back(mutation("forallII_wrong_instance", aux, "forall_ii_example", {}, "set_term", "b",
                          "ShapeMismatch"));
    ms.push_back(mutation("existsEII_variant_i_on_constant", aux, "exists_e_example", {},
                          "set_variant", "i", "MalformedNode"));
    ms.push_back(mutation("existsE_witness_mismatch", aux, "exists_e_example", {}, "set_term", "a",
                          "ShapeMismatch"));
    ms.push_back(mutation("botI_in_minimal_mode", aux, "bot_example", {}, "run_mode", "m0",
                          "RuleDisabledInMinimalMode"));
    ms.push_back(mutation("botI_as_impE", aux, "bot_example", {}, "set_rule", "impE",
                          "ShapeMismatch"));
    ms.push_back(mutation("qidentE_wrong_pred", aux, "qident_elim_example", {}, "set_pred", "B",
                          "NotInstanceOfPredicate"));
    ms.push_back(mutation("qidentE_wrong_side", aux, "qident_elim_example", {}, "set_side", 2,
                          "NotInstanceOfPredicate"));
    ms.push_back(mutation("qidentE_pred_not_in_q", aux, "qident_elim_example", {0},
                          "set_conclusion", "a =+[B] b", "PredicateNotInQ"));

    ms.push_back(mutation("negIota_sign_flag", auxg, "neg_iota", {}, "set_sign", "pos",
                          "SignMismatch"));
    ms.push_back(mutation("asI_on_gap", auxg, "neg_d1", {0}, "negate_as", json(),
                          "SideConditionViolation"));
    ms.push_back(mutation("negQIdentI_as_positive", auxg, "neg_d2", {0, 0, 0}, "set_rule",
                          "posQIdentI", "WrongPolarity"));

    json doc{{"version", 1}, {"mutations", ms}};
    io::save_json_file((root / "mutations.json").string(), doc);
  }

  std::cout << "corpus written to " << root.string() << "\n";
  return 0;
}
