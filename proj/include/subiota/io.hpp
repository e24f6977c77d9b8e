#ifndef SUBIOTA_IO_HPP
#define SUBIOTA_IO_HPP

// JSON schemas for bases, proof scripts, reports and traces. Files are
// UTF-8 JSON with a required "version" field; formulas appear as surface
// text and term-assumption-set conclusions as "term:SYMBOL" strings.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subiota/audit.hpp"
#include "subiota/base.hpp"
#include "subiota/check.hpp"
#include "subiota/convert.hpp"
#include "subiota/derivation.hpp"
#include "subiota/parse.hpp"

namespace subiota::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

inline void require_version(const json& j, const std::string& what) {
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw ParseError(what + ": missing required \"version\" field", 0);
  if (j["version"].get<int>() != kFormatVersion)
    throw ParseError(what + ": unsupported version " + j["version"].dump(), 0);
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= it.key() == k;
    if (!ok) throw ParseError(where + ": unknown field \"" + it.key() + "\"", 0);
  }
}

// ---- bases ----

inline SubatomicBase base_from_json(const json& j) {
  require_version(j, "base");
  reject_unknown_keys(j, {"version", "constants", "predicates", "valuation", "description"},
                      "base");
  std::vector<std::string> constants;
  for (const auto& c : j.at("constants")) constants.push_back(c.get<std::string>());
  std::vector<PredicateSymbol> predicates;
  for (const auto& p : j.at("predicates")) {
    reject_unknown_keys(p, {"name", "arity"}, "predicate");
    predicates.emplace_back(p.at("name").get<std::string>(), p.at("arity").get<std::size_t>());
  }
  SubatomicBase shell(constants, predicates, {});
  std::vector<std::pair<std::string, FormulaPtr>> valuation;
  if (j.contains("valuation"))
    for (const auto& entry : j.at("valuation")) {
      reject_unknown_keys(entry, {"symbol", "atom"}, "valuation entry");
      valuation.emplace_back(entry.at("symbol").get<std::string>(),
                             parse_formula(entry.at("atom").get<std::string>(), &shell));
    }
  return SubatomicBase(std::move(constants), std::move(predicates), std::move(valuation));
}

inline json base_to_json(const SubatomicBase& b, const std::string& description = "") {
  json j;
  j["version"] = kFormatVersion;
  if (!description.empty()) j["description"] = description;
  j["constants"] = b.constants();
  j["predicates"] = json::array();
  for (const auto& p : b.predicates())
    j["predicates"].push_back({{"name", p.name}, {"arity", p.arity}});
  j["valuation"] = json::array();
  for (const auto& [sym, atoms] : b.valuation())
    for (const auto& a : atoms)
      j["valuation"].push_back({{"symbol", sym}, {"atom", to_string(a)}});
  return j;
}

// ---- derivations ----

inline const char* variant_name(QuantVariant v) {
  switch (v) {
    case QuantVariant::I: return "i";
    case QuantVariant::II: return "ii";
    case QuantVariant::III: return "iii";
  }
  return "?";
}

inline QuantVariant variant_from(const std::string& s) {
  if (s == "i") return QuantVariant::I;
  if (s == "ii") return QuantVariant::II;
  if (s == "iii") return QuantVariant::III;
  throw ParseError("variant must be \"i\", \"ii\" or \"iii\", got \"" + s + "\"", 0);
}

inline const char* polarity_name(Polarity p) {
  return p == Polarity::Positive ? "pos" : "neg";
}
inline Polarity polarity_from(const std::string& s) {
  if (s == "pos") return Polarity::Positive;
  if (s == "neg") return Polarity::Negative;
  throw ParseError("polarity must be \"pos\" or \"neg\", got \"" + s + "\"", 0);
}

inline std::string conclusion_text(const Conclusion& c) {
  if (const auto* f = std::get_if<FormulaPtr>(&c)) return to_string(*f);
  return "term:" + std::get<TermSetRef>(c).symbol;
}

inline Conclusion conclusion_from_text(const std::string& s, const SubatomicBase& base) {
  if (s.rfind("term:", 0) == 0) return TermSetRef{s.substr(5)};
  return parse_formula(s, &base);
}

namespace detail {

// Instantiation fields a rule may carry, besides premises/conclusion.
inline void allowed_fields_for(RuleId rule, std::vector<const char*>& out) {
  switch (rule) {
    case RuleId::AsE:
    case RuleId::NegAsE:
      out = {"index"};
      break;
    case RuleId::PosQIdentI:
    case RuleId::NegQIdentI:
      out = {"discharge"};
      break;
    case RuleId::PosQIdentE:
    case RuleId::NegQIdentE:
      out = {"side", "pred"};
      break;
    case RuleId::OrE:
    case RuleId::ImpI:
      out = {"discharge"};
      break;
    case RuleId::ForallI:
      out = {"variant", "term"};
      break;
    case RuleId::ForallE:
    case RuleId::ExistsI:
      out = {"term"};
      break;
    case RuleId::ExistsE:
      out = {"variant", "term", "discharge"};
      break;
    case RuleId::IotaI:
    case RuleId::IotaE1:
    case RuleId::IotaE2:
    case RuleId::IotaE3:
      out = {"sign", "outer"};
      break;
    default:
      out = {};
      break;
  }
}

}  // namespace detail

inline json derivation_to_json(const DerivPtr& d) {
  if (const auto* a = d->as<Assumption>()) {
    json j{{"rule", "assume"}, {"formula", to_string(a->formula)}};
    if (!a->label.empty()) j["label"] = a->label;
    return j;
  }
  if (const auto* t = d->as<TermLeaf>()) return json{{"rule", "term"}, {"symbol", t->symbol}};
  const auto* r = d->as<RuleNode>();
  json j;
  j["rule"] = rule_name(r->rule);
  j["conclusion"] = conclusion_text(r->conclusion);
  if (!r->inst.discharges.empty()) j["discharge"] = r->inst.discharges;
  if (r->inst.term) j["term"] = r->inst.term->name;
  if (r->inst.index) j["index"] = *r->inst.index;
  if (r->inst.side) j["side"] = *r->inst.side;
  if (r->inst.pred) j["pred"] = *r->inst.pred;
  if (r->inst.variant) j["variant"] = variant_name(*r->inst.variant);
  if (r->inst.sign) j["sign"] = polarity_name(*r->inst.sign);
  if (r->inst.outer) j["outer"] = polarity_name(*r->inst.outer);
  j["premises"] = json::array();
  for (const auto& p : r->premises) j["premises"].push_back(derivation_to_json(p));
  return j;
}

inline DerivPtr derivation_from_json(const json& j, const SubatomicBase& base) {
  if (!j.is_object() || !j.contains("rule"))
    throw ParseError("derivation node must be an object with a \"rule\" field", 0);
  std::string rule = j.at("rule").get<std::string>();
  if (rule == "assume") {
    reject_unknown_keys(j, {"rule", "formula", "label"}, "assume node");
    std::string label = j.value("label", "");
    return make_assumption(parse_formula(j.at("formula").get<std::string>(), &base), label);
  }
  if (rule == "term") {
    reject_unknown_keys(j, {"rule", "symbol"}, "term node");
    return make_term_leaf(j.at("symbol").get<std::string>());
  }
  auto id = rule_from_name(rule);
  if (!id) throw ParseError("unknown rule \"" + rule + "\"", 0);

  std::vector<const char*> extra;
  detail::allowed_fields_for(*id, extra);
  std::vector<const char*> allowed = {"rule", "conclusion", "premises"};
  allowed.insert(allowed.end(), extra.begin(), extra.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= it.key() == k;
    if (!ok)
      throw ParseError("rule \"" + rule + "\" does not take a \"" + it.key() + "\" field", 0);
  }

  Instantiation inst;
  if (j.contains("discharge"))
    for (const auto& l : j.at("discharge")) inst.discharges.push_back(l.get<std::string>());
  if (j.contains("term")) inst.term = parse_term(j.at("term").get<std::string>());
  if (j.contains("index")) inst.index = j.at("index").get<int>();
  if (j.contains("side")) inst.side = j.at("side").get<int>();
  if (j.contains("pred")) inst.pred = j.at("pred").get<std::string>();
  if (j.contains("variant")) inst.variant = variant_from(j.at("variant").get<std::string>());
  if (j.contains("sign")) inst.sign = polarity_from(j.at("sign").get<std::string>());
  if (j.contains("outer")) inst.outer = polarity_from(j.at("outer").get<std::string>());

  std::vector<DerivPtr> premises;
  if (j.contains("premises"))
    for (const auto& p : j.at("premises")) premises.push_back(derivation_from_json(p, base));
  if (!j.contains("conclusion"))
    throw ParseError("rule \"" + rule + "\" needs an explicit \"conclusion\"", 0);
  Conclusion concl = conclusion_from_text(j.at("conclusion").get<std::string>(), base);
  return make_rule(*id, std::move(inst), std::move(premises), std::move(concl));
}

// ---- proof scripts ----

struct ProofScript {
  std::string base_ref;  // optional path hint, resolved relative to the script
  Mode mode = Mode::I0;
  std::string description;
  std::map<std::string, DerivPtr> derivations;  // name -> tree, name-sorted
};

inline Mode mode_from(const std::string& s) {
  if (s == "i0") return Mode::I0;
  if (s == "m0") return Mode::M0;
  throw ParseError("mode must be \"i0\" or \"m0\", got \"" + s + "\"", 0);
}

inline ProofScript script_from_json(const json& j, const SubatomicBase& base) {
  require_version(j, "script");
  reject_unknown_keys(j, {"version", "base", "mode", "description", "derivations"}, "script");
  ProofScript s;
  s.base_ref = j.value("base", "");
  s.mode = mode_from(j.value("mode", "i0"));
  s.description = j.value("description", "");
  for (auto it = j.at("derivations").begin(); it != j.at("derivations").end(); ++it)
    s.derivations[it.key()] = derivation_from_json(it.value(), base);
  return s;
}

inline json script_to_json(const ProofScript& s) {
  json j;
  j["version"] = kFormatVersion;
  if (!s.base_ref.empty()) j["base"] = s.base_ref;
  j["mode"] = to_string(s.mode);
  if (!s.description.empty()) j["description"] = s.description;
  j["derivations"] = json::object();
  for (const auto& [name, d] : s.derivations) j["derivations"][name] = derivation_to_json(d);
  return j;
}

// ---- reports and traces ----

inline json check_report_to_json(const CheckReport& r) {
  json j;
  j["valid"] = r.valid;
  if (r.conclusion) j["conclusion"] = conclusion_text(*r.conclusion);
  j["openAssumptions"] = json::array();
  for (const auto& oa : r.open_assumptions) {
    json e{{"formula", to_string(oa.formula)}};
    if (!oa.label.empty()) e["label"] = oa.label;
    j["openAssumptions"].push_back(e);
  }
  j["openTermAssumptions"] = r.open_term_symbols;
  j["failures"] = json::array();
  for (const auto& v : r.verdicts) {
    if (v.ok) continue;
    json f{{"position", path_string(v.path)}, {"rule", v.rule}, {"errors", json::array()}};
    for (const auto& e : v.errors)
      f["errors"].push_back({{"kind", to_string(e.kind)}, {"message", e.message}});
    j["failures"].push_back(f);
  }
  return j;
}

inline json trace_to_json(const ConversionTrace& t) {
  json j;
  j["steps"] = json::array();
  for (const auto& s : t.steps)
    j["steps"].push_back({{"kind", to_string(s.redex.kind)},
                          {"position", path_string(s.redex.position)},
                          {"sizeBefore", s.size_before},
                          {"sizeAfter", s.size_after}});
  j["fuelExhausted"] = t.fuel_exhausted;
  if (!t.diagnostic.empty()) j["diagnostic"] = t.diagnostic;
  return j;
}

inline json audit_report_to_json(const AuditReport& r) {
  json j;
  j["passed"] = r.passed;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  j["violations"] = json::array();
  for (const auto& e : r.entries)
    if (!e.ok)
      j["violations"].push_back({{"position", path_string(e.path)}, {"unit", e.unit}});
  j["unitsChecked"] = r.entries.size();
  return j;
}

// ---- files ----

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

inline SubatomicBase load_base(const std::string& path) {
  return base_from_json(load_json_file(path));
}

inline ProofScript load_script(const std::string& path, const SubatomicBase& base) {
  return script_from_json(load_json_file(path), base);
}

}  // namespace subiota::io

#endif
