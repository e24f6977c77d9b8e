// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria. Pass --bless to (re)write the elaboration and
// classification goldens instead of comparing.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subiota/subiota.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"

using namespace subiota;
using namespace subiota::testsupport;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& note = "") {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what;
  if (!note.empty()) std::cout << " (" << note << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

std::multiset<std::string> open_multiset(const SubatomicBase& base, const DerivPtr& d) {
  CheckReport r = check_derivation(base, d);
  std::multiset<std::string> out;
  for (const auto& oa : r.open_assumptions) out.insert(to_string(oa.formula));
  return out;
}

bool subset_of(const std::multiset<std::string>& small, const std::multiset<std::string>& big) {
  for (const auto& s : small)
    if (small.count(s) > big.count(s)) return false;
  return true;
}

// ---- criterion 1: corpus validity under i0, under a second ----

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;
  const std::vector<std::pair<std::string, std::vector<std::string>>> wanted = {
      {"scripts/example_3_1.json", {"d1", "d2", "d3", "d4"}},
      {"scripts/remark_5_1.json", {"d2_i", "d2_ii", "d2_iii"}},
      {"scripts/remark_5_2.json", {"d6", "d7", "d8"}},
  };
  for (const auto& [rel, names] : wanted) {
    LoadedCorpusScript in = load_script(rel);
    for (const auto& name : names) {
      auto it = in.script.derivations.find(name);
      if (it == in.script.derivations.end()) {
        ok = false;
        note = rel + " lacks " + name;
        continue;
      }
      CheckReport r = check_derivation(in.base, it->second, Mode::I0);
      if (!r.valid) {
        ok = false;
        note = rel + "/" + name + " invalid";
      }
    }
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  if (ms >= 1000) {
    ok = false;
    note = "took " + std::to_string(ms) + " ms";
  }
  report(1, "all paper derivations check valid in under a second", ok,
         note.empty() ? std::to_string(ms) + " ms" : note);
}

// ---- criterion 2: the three iota conversions, tree-exact ----

void criterion_2() {
  LoadedCorpusScript in = load_script("scripts/example_3_1.json");
  DerivPtr d4 = in.script.derivations.at("d4");
  bool ok = true;
  std::string note;
  for (int which = 1; which <= 3; ++which) {
    DerivPtr appended = build::iota_elim(d4, which);
    if (!check_derivation(in.base, appended).valid) {
      ok = false;
      note = "appended elimination " + std::to_string(which) + " is invalid";
      continue;
    }
    ConversionTrace t = normalize(in.base, appended, Mode::I0, 10000, true);
    DerivPtr expected = in.script.derivations.at("d" + std::to_string(which));
    if (!t.diagnostic.empty() ||
        !equal(canonicalize_labels(t.result), canonicalize_labels(expected))) {
      ok = false;
      note = "elimination " + std::to_string(which) + " did not reduce to its premise";
    }
  }
  report(2, "iotaE1/E2/E3 after the introduction normalize to D1/D2/D3", ok, note);
}

// ---- criteria 3-5: random normalization at desk scale ----

struct GeneratedCase {
  SubatomicBase base;
  DerivPtr derivation;
  ConversionTrace trace;
};

std::vector<GeneratedCase> criterion_3(int count) {
  std::mt19937 rng(20240810);
  bool ok = true;
  std::string note;
  std::vector<GeneratedCase> cases;
  for (int i = 0; i < count && ok; ++i) {
    SubatomicBase base = testgen::random_base(rng);
    testgen::DerivationGen gen(base, rng);
    DerivPtr d = gen.generate();
    if (!check_derivation(base, d, Mode::I0).valid) {
      ok = false;
      note = "generator produced an invalid derivation at case " + std::to_string(i);
      break;
    }
    if (rule_depth(d) > 8) {
      ok = false;
      note = "generator exceeded depth 8";
      break;
    }
    ConversionTrace t = normalize(base, d, Mode::I0, 10000);
    if (t.fuel_exhausted) {
      ok = false;
      note = "fuel exhausted at case " + std::to_string(i);
      break;
    }
    if (!find_redexes(t.result).empty()) {
      ok = false;
      note = "normal form still has redexes at case " + std::to_string(i);
      break;
    }
    if (!check_derivation(base, t.result, Mode::I0).valid) {
      ok = false;
      note = "normal form invalid at case " + std::to_string(i);
      break;
    }
    cases.push_back({std::move(base), std::move(d), std::move(t)});
  }
  report(3, std::to_string(count) + " random valid derivations normalize within fuel", ok, note);
  return cases;
}

void criterion_4(const std::vector<GeneratedCase>& cases) {
  bool ok = true;
  std::string note;
  int audited = 0;
  // corpus derivations from criteria 1-2
  for (const char* rel : {"scripts/example_3_1.json", "scripts/remark_5_1.json",
                          "scripts/remark_5_2.json"}) {
    LoadedCorpusScript in = load_script(rel);
    for (const auto& [name, d] : in.script.derivations) {
      ConversionTrace t = normalize(in.base, d);
      AuditReport sub = audit_subformula(in.base, t.result);
      AuditReport subex = audit_subexpression(in.base, t.result);
      ++audited;
      if (!sub.passed || !subex.passed) {
        ok = false;
        note = std::string(rel) + "/" + name;
      }
    }
  }
  for (std::size_t i = 0; i < cases.size() && ok; ++i) {
    AuditReport sub = audit_subformula(cases[i].base, cases[i].trace.result);
    AuditReport subex = audit_subexpression(cases[i].base, cases[i].trace.result);
    ++audited;
    if (!sub.passed || !subex.passed) {
      ok = false;
      note = "generated case " + std::to_string(i);
    }
  }
  report(4, "subformula and subexpression audits pass on every normal form", ok,
         note.empty() ? std::to_string(audited) + " derivations audited" : note);
}

void criterion_5(const std::vector<GeneratedCase>& cases) {
  bool ok = true;
  std::string note;
  long steps_checked = 0;
  for (std::size_t i = 0; i < cases.size() && ok; ++i) {
    const auto& c = cases[i];
    FormulaPtr end = conclusion_formula(c.derivation);
    std::multiset<std::string> open = open_multiset(c.base, c.derivation);
    DerivPtr cur = c.derivation;
    for (const auto& step : c.trace.steps) {
      cur = apply_conversion(c.base, cur, step.redex);
      ++steps_checked;
      FormulaPtr f = conclusion_formula(cur);
      if (!f || !equal(f, end)) {
        ok = false;
        note = "conclusion changed in case " + std::to_string(i);
        break;
      }
      std::multiset<std::string> now = open_multiset(c.base, cur);
      if (!subset_of(now, open)) {
        ok = false;
        note = "open assumptions grew in case " + std::to_string(i);
        break;
      }
      open = std::move(now);
    }
  }
  report(5, "conversions preserve the conclusion and never grow the open assumptions", ok,
         note.empty() ? std::to_string(steps_checked) + " steps replayed" : note);
}

// ---- criterion 6: identity rule vs contextual definition, exhaustively ----

std::vector<SubatomicBase> coherence_bases() {
  const PredicateSymbol P{"P", 1}, B{"B", 1};
  auto atoms = [&](std::vector<std::pair<const PredicateSymbol*, const char*>> entries) {
    std::vector<std::pair<std::string, FormulaPtr>> v;
    for (const auto& [p, c] : entries) {
      FormulaPtr atom = make_atom(*p, {Term::constant(c)});
      v.emplace_back(p->name, atom);
      v.emplace_back(c, atom);
    }
    return v;
  };
  return {
      SubatomicBase({"a", "b"}, {P, B},
                    atoms({{&P, "a"}, {&P, "b"}, {&B, "a"}, {&B, "b"}})),  // symmetric
      SubatomicBase({"a", "b"}, {P, B}, atoms({{&P, "a"}, {&B, "a"}, {&B, "b"}})),  // asymmetric
      SubatomicBase({"a", "b"}, {P, B}, atoms({})),                                  // empty
  };
}

void criterion_6() {
  bool ok = true;
  std::string note;
  int checked = 0;
  for (const auto& base : coherence_bases()) {
    EnumLimits limits;
    limits.depth = 5;
    for (const auto& c1 : base.constants()) {
      for (const auto& c2 : base.constants()) {
        Term a1 = Term::constant(c1), a2 = Term::constant(c2);
        // all nonempty subsets of the (unary) predicates
        const auto& ps = base.predicates();
        for (unsigned mask = 1; mask < (1u << ps.size()); ++mask) {
          std::vector<PredicateSymbol> qs;
          for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask & (1u << i)) qs.push_back(ps[i]);
          QSet q = QSet::of(qs);
          FormulaPtr ident = make_qident(Polarity::Positive, a1, a2, q);
          ++checked;

          bool ident_derivable =
              !enumerate_derivations(base, ident, {}, limits, Mode::I0).empty();

          // mirror pairs, via the enumeration oracle with one hypothesis
          bool pairs_derivable = true;
          std::vector<DerivPtr> halves;
          std::vector<std::string> labels;
          int label_n = 0;
          for (const auto& p : q.preds()) {
            FormulaPtr fa = make_atom(p, {a1});
            FormulaPtr fb = make_atom(p, {a2});
            EnumLimits pair_limits;
            pair_limits.depth = 4;
            auto d1s = enumerate_derivations(base, fb, FormulaSet{{fa}}, pair_limits);
            auto d2s = enumerate_derivations(base, fa, FormulaSet{{fb}}, pair_limits);
            if (d1s.empty() || d2s.empty()) {
              pairs_derivable = false;
              break;
            }
            std::string l1 = "p" + std::to_string(++label_n);
            std::string l2 = "p" + std::to_string(++label_n);
            halves.push_back(subiota::detail::label_open(d1s.front(), fa, l1));
            halves.push_back(subiota::detail::label_open(d2s.front(), fb, l2));
            labels.push_back(l1);
            labels.push_back(l2);
          }

          // (a) a derivable identity has every definitional conjunct
          // derivable at each instance
          if (ident_derivable) {
            for (const auto& p : q.preds()) {
              FormulaPtr conjunct = qident_template(Polarity::Positive, p, a1, a2);
              if (enumerate_derivations(base, conjunct, {}, limits).empty()) {
                ok = false;
                note = "identity derivable but conjunct is not: " + to_string(conjunct);
              }
            }
          }

          // (b) the introduction applies exactly when all pairs are
          // derivable
          if (pairs_derivable) {
            DerivPtr intro = build::qident_intro(Polarity::Positive, a1, a2, q, halves, labels);
            if (!check_derivation(base, intro).valid) {
              ok = false;
              note = "pairs derivable but the introduction is rejected for " + to_string(ident);
            }
          }
          if (ident_derivable && !pairs_derivable) {
            ok = false;
            note = "identity derivable without derivable mirror pairs: " + to_string(ident);
          }
        }
      }
    }
  }
  report(6, "identity rule and contextual definition agree on derivability", ok,
         note.empty() ? std::to_string(checked) + " (base, pair, Q) cases" : note);
}

// ---- criterion 7: desk-scale consistency ----

void criterion_7() {
  bool ok = true;
  std::string note;
  for (const char* rel : {"bases/schism.json", "bases/gaps.json", "bases/pope.json",
                          "bases/schism_pope.json", "bases/kings.json", "bases/dogs.json",
                          "bases/zucchetti.json", "bases/berets.json"}) {
    SubatomicBase base = io::load_base((corpus_dir() / rel).string());
    auto sample = meaning_sample(base, make_bottom(), 4, /*allow_open=*/false);
    if (!sample.empty()) {
      ok = false;
      note = std::string(rel) + " yields a canonical derivation of bot";
    }
  }
  report(7, "no base yields a canonical derivation of bot at bound 4", ok, note);
}

// ---- criterion 8: mutation suite ----

void criterion_8() {
  io::json doc = io::load_json_file((corpus_dir() / "mutations.json").string());
  bool ok = doc.at("mutations").size() >= 30;
  std::string note = ok ? std::to_string(doc.at("mutations").size()) + " mutations" : "fewer than 30 mutations";
  for (const auto& m : doc.at("mutations")) {
    MutationOutcome o = run_mutation(m);
    if (!outcome_matches(o)) {
      ok = false;
      note = o.name + " not rejected with " + o.expect;
      break;
    }
  }
  report(8, "every single-node mutation is rejected with its documented error kind", ok, note);
}

// ---- criterion 9: elaboration goldens ----

std::string run_elaborate(const std::string& base_rel, const std::string& formula) {
  cli::Options opt;
  opt.base_file = (corpus_dir() / base_rel).string();
  opt.formula_text = formula;
  std::ostringstream out, err;
  int code = cli::cmd_elaborate(opt, out, err);
  if (code != 0) return "ERROR: " + err.str();
  return out.str();
}

void criterion_9(bool bless) {
  io::json doc = io::load_json_file((corpus_dir() / "elaborations.json").string());
  bool ok = true;
  std::string note;
  for (const auto& e : doc.at("elaborations")) {
    std::string name = e.at("name").get<std::string>();
    std::string got = run_elaborate(e.at("base").get<std::string>(),
                                    e.at("formula").get<std::string>());
    auto golden_path = golden_dir() / ("elab_" + name + ".txt");
    if (bless) {
      std::ofstream f(golden_path);
      f << got;
      continue;
    }
    std::ifstream f(golden_path);
    if (!f) {
      ok = false;
      note = "missing golden " + golden_path.string();
      continue;
    }
    std::stringstream want;
    want << f.rdbuf();
    if (want.str() != got) {
      ok = false;
      note = name + " differs from its golden";
    }
  }
  report(9, std::string("elaboration output is byte-exact against the goldens"), ok,
         bless ? "goldens rewritten" : note);
}

// ---- criterion 10: degrees of definiteness ----

void criterion_10() {
  bool ok = true;
  std::string note;
  auto expect = [&](const char* base_rel, const char* formula, Degree want) {
    SubatomicBase base = io::load_base((corpus_dir() / base_rel).string());
    FormulaPtr f = parse_formula(formula, &base);
    const auto* ip = f->as<IotaPred>();
    if (!ip || definiteness_degree(*ip, base) != want) {
      ok = false;
      note = std::string(formula) + " on " + base_rel;
    }
  };
  expect("bases/schism.json", "B(iota[*] x. P(x))", Degree::Maximal);
  expect("bases/schism.json", "B(iota[P,B] x. P(x))", Degree::Restricted);
  expect("bases/schism.json", "B(iota[P] x. P(x))", Degree::MinimalSingleton);
  expect("bases/schism.json", "B(iota[B] x. P(x))", Degree::Restricted);
  expect("bases/pope.json", "the[*] Pope is Bald", Degree::Maximal);
  expect("bases/schism_pope.json", "the[Pope,Bald] Pope is Bald", Degree::Restricted);
  expect("bases/schism_pope.json", "the[Pope] Pope is Bald", Degree::MinimalSingleton);
  expect("bases/gaps.json", "-N(iota[N] x. -N(x))", Degree::MinimalSingleton);
  report(10, "definiteness degrees classify maximal/restricted/minimal-singleton", ok, note);
}

}  // namespace

int main(int argc, char** argv) {
  bool bless = argc > 1 && std::string(argv[1]) == "--bless";
  criterion_1();
  criterion_2();
  std::vector<GeneratedCase> cases = criterion_3(500);
  criterion_4(cases);
  criterion_5(cases);
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(bless);
  criterion_10();
  if (failures == 0)
    std::cout << "all acceptance criteria passed\n";
  else
    std::cout << failures << " acceptance criteria FAILED\n";
  return failures;
}
