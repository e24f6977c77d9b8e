#ifndef SUBIOTA_CLI_HPP
#define SUBIOTA_CLI_HPP

// The batch front-end behind the subiota executable: check, normalize,
// audit, elaborate and classify over base/script files. Exit codes:
// 0 success, 1 semantic failure, 2 parse failure, 3 resource/fuel.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "subiota/enumerate.hpp"
#include "subiota/io.hpp"

namespace subiota::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitResource = 3;

inline constexpr const char* kCorpusEnvVar = "SUBIOTA_CORPUS_DIR";

struct Options {
  std::string base_file;
  std::string script_file;
  std::optional<Mode> mode;  // overrides the script's mode
  bool trace = false;
  bool json = false;
  std::size_t fuel = 10000;
  std::string output_file;   // normalize: where to write the result script
  std::string formula_text;  // elaborate
};

// Paths resolve as given, then relative to the corpus directory override.
inline std::string resolve_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::exists(path)) return path;
  if (const char* corpus = std::getenv(kCorpusEnvVar)) {
    fs::path candidate = fs::path(corpus) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

struct LoadedScript {
  SubatomicBase base;
  io::ProofScript script;
  Mode mode = Mode::I0;
};

inline LoadedScript load_inputs(const Options& opt) {
  namespace fs = std::filesystem;
  std::string script_path = resolve_path(opt.script_file);
  io::json sj = io::load_json_file(script_path);

  std::string base_path = opt.base_file;
  if (base_path.empty()) {
    if (!sj.is_object() || !sj.contains("base") || !sj["base"].is_string())
      throw Error("no --base given and the script names none");
    fs::path rel = fs::path(script_path).parent_path() / sj["base"].get<std::string>();
    base_path = fs::exists(rel) ? rel.string() : resolve_path(sj["base"].get<std::string>());
  } else {
    base_path = resolve_path(base_path);
  }

  LoadedScript out{io::load_base(base_path), {}, Mode::I0};
  out.script = io::script_from_json(sj, out.base);
  out.mode = opt.mode.value_or(out.script.mode);
  return out;
}

// ---- check ----

inline int cmd_check(const Options& opt, std::ostream& out, std::ostream& err) {
  LoadedScript in;
  try {
    in = load_inputs(opt);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  bool all_valid = true;
  io::json doc{{"command", "check"}, {"mode", to_string(in.mode)}, {"derivations", io::json::object()}};
  for (const auto& [name, d] : in.script.derivations) {
    CheckReport report = check_derivation(in.base, d, in.mode);
    all_valid &= report.valid;
    if (opt.json) {
      doc["derivations"][name] = io::check_report_to_json(report);
    } else {
      out << name << ": " << (report.valid ? "valid" : "INVALID");
      if (report.conclusion) out << "  |- " << io::conclusion_text(*report.conclusion);
      out << "\n";
      for (const auto& v : report.verdicts) {
        if (v.ok) continue;
        for (const auto& e : v.errors)
          out << "  at " << path_string(v.path) << " (" << v.rule << "): " << to_string(e.kind)
              << ": " << e.message << "\n";
      }
    }
  }
  if (opt.json) {
    doc["valid"] = all_valid;
    out << doc.dump(2) << "\n";
  }
  return all_valid ? kExitOk : kExitSemantic;
}

// ---- normalize ----

inline int cmd_normalize(const Options& opt, std::ostream& out, std::ostream& err) {
  LoadedScript in;
  try {
    in = load_inputs(opt);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  io::ProofScript result = in.script;
  io::json doc{{"command", "normalize"}, {"mode", to_string(in.mode)},
               {"traces", io::json::object()}};
  bool fuel_exhausted = false;
  bool all_valid = true;
  for (auto& [name, d] : result.derivations) {
    CheckReport pre = check_derivation(in.base, d, in.mode);
    if (!pre.valid) {
      all_valid = false;
      if (!opt.json) out << name << ": INVALID input, not normalized\n";
      continue;
    }
    ConversionTrace trace = normalize(in.base, d, in.mode, opt.fuel);
    if (trace.fuel_exhausted) {
      fuel_exhausted = true;
      err << name << ": FuelExhausted: " << trace.diagnostic << "\n";
    }
    d = trace.result;
    if (opt.json) {
      if (opt.trace) doc["traces"][name] = io::trace_to_json(trace);
    } else {
      out << name << ": " << trace.steps.size() << " conversion step(s)\n";
      if (opt.trace)
        for (const auto& s : trace.steps)
          out << "  " << to_string(s.redex.kind) << " at " << path_string(s.redex.position)
              << " (" << s.size_before << " -> " << s.size_after << " nodes)\n";
    }
  }
  if (!opt.output_file.empty())
    io::save_json_file(opt.output_file, io::script_to_json(result));
  if (opt.json) {
    doc["script"] = io::script_to_json(result);
    out << doc.dump(2) << "\n";
  }
  if (fuel_exhausted) return kExitResource;
  return all_valid ? kExitOk : kExitSemantic;
}

// ---- audit ----

inline int cmd_audit(const Options& opt, std::ostream& out, std::ostream& err) {
  LoadedScript in;
  try {
    in = load_inputs(opt);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  bool all_pass = true;
  io::json doc{{"command", "audit"}, {"derivations", io::json::object()}};
  for (const auto& [name, d] : in.script.derivations) {
    CheckReport pre = check_derivation(in.base, d, in.mode);
    if (!pre.valid) {
      all_pass = false;
      if (opt.json)
        doc["derivations"][name] = {{"valid", false}};
      else
        out << name << ": INVALID, audits skipped\n";
      continue;
    }
    ConversionTrace trace = normalize(in.base, d, in.mode, opt.fuel);
    if (trace.fuel_exhausted) {
      err << name << ": FuelExhausted during normalization\n";
      return kExitResource;
    }
    AuditReport sub = audit_subformula(in.base, trace.result, in.mode);
    AuditReport subex = audit_subexpression(in.base, trace.result, in.mode);
    all_pass &= sub.passed && subex.passed;
    if (opt.json) {
      doc["derivations"][name] = {{"valid", true},
                                  {"normalizationSteps", trace.steps.size()},
                                  {"subformula", io::audit_report_to_json(sub)},
                                  {"subexpression", io::audit_report_to_json(subex)}};
    } else {
      out << name << ": subformula " << (sub.passed ? "pass" : "FAIL") << ", subexpression "
          << (subex.passed ? "pass" : "FAIL") << " (" << trace.steps.size()
          << " normalization step(s))\n";
      for (const auto& e : sub.entries)
        if (!e.ok) out << "  subformula violation at " << path_string(e.path) << ": " << e.unit << "\n";
      for (const auto& e : subex.entries)
        if (!e.ok)
          out << "  subexpression violation at " << path_string(e.path) << ": " << e.unit << "\n";
    }
  }
  if (opt.json) {
    doc["passed"] = all_pass;
    out << doc.dump(2) << "\n";
  }
  return all_pass ? kExitOk : kExitSemantic;
}

// ---- elaborate ----

namespace detail {

struct FoundDescription {
  QSet q;
  std::string var;
  FormulaPtr phi;
};

inline void collect_descriptions(const FormulaPtr& f, std::vector<FoundDescription>& out) {
  struct V {
    std::vector<FoundDescription>& out;
    void operator()(const Predication&) const {}
    void operator()(const Bottom&) const {}
    void operator()(const And& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Or& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Implies& n) const { rec(n.lhs); rec(n.rhs); }
    void operator()(const Forall& n) const { rec(n.body); }
    void operator()(const Exists& n) const { rec(n.body); }
    void operator()(const QIdent&) const {}
    void operator()(const IotaPred& ip) const {
      out.push_back({ip.q, ip.var, ip.phi});
      for (const auto& s : ip.slots)
        if (const auto* d = std::get_if<DescriptionTerm>(&s)) {
          out.push_back({d->q, d->var, d->phi});
          rec(d->phi);
        }
      rec(ip.phi);
    }
    void rec(const FormulaPtr& g) const { collect_descriptions(g, out); }
  };
  std::visit(V{out}, f->node);
}

}  // namespace detail

inline int cmd_elaborate(const Options& opt, std::ostream& out, std::ostream& err) {
  SubatomicBase base;
  FormulaPtr f;
  try {
    base = io::load_base(resolve_path(opt.base_file));
    f = parse_formula(opt.formula_text, &base);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  FormulaPtr result;
  if (const auto* q = f->as<QIdent>())
    result = expand_qident(q->sign, q->lhs, q->rhs, q->q);
  else
    result = elaborate(f);

  std::vector<detail::FoundDescription> descs;
  detail::collect_descriptions(f, descs);

  if (opt.json) {
    io::json doc{{"command", "elaborate"},
                 {"formula", to_string(f)},
                 {"elaboration", to_string(result)},
                 {"degrees", io::json::array()}};
    for (const auto& d : descs) {
      Degree deg = definiteness_degree(d.q, d.phi, base);
      io::json desc{{"description", "iota"}, {"degree", to_string(deg)}};
      std::ostringstream os;
      subiota::detail::print_description(os, d.q, d.var, d.phi);
      desc["description"] = os.str();
      doc["degrees"].push_back(desc);
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  out << "formula: " << to_string(f) << "\n";
  out << "elaboration: " << to_string(result) << "\n";
  for (const auto& d : descs) {
    Degree deg = definiteness_degree(d.q, d.phi, base);
    std::ostringstream os;
    subiota::detail::print_description(os, d.q, d.var, d.phi);
    out << "degree: " << os.str() << " : " << to_string(deg) << "\n";
  }
  return kExitOk;
}

// ---- classify ----

inline int cmd_classify(const Options& opt, std::ostream& out, std::ostream& err) {
  LoadedScript in;
  try {
    in = load_inputs(opt);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  bool all_valid = true;
  io::json doc{{"command", "classify"}, {"derivations", io::json::object()}};
  for (const auto& [name, d] : in.script.derivations) {
    CheckReport pre = check_derivation(in.base, d, in.mode);
    if (!pre.valid) {
      all_valid = false;
      if (opt.json)
        doc["derivations"][name] = {{"valid", false}};
      else
        out << name << ": INVALID\n";
      continue;
    }
    Classification c = classify(in.base, d, in.mode);
    if (opt.json)
      doc["derivations"][name] = {{"canonicity", to_string(c.canonicity)},
                                  {"status", to_string(c.status)}};
    else
      out << name << ": " << to_string(c.canonicity) << "; " << to_string(c.status) << "\n";
  }
  if (opt.json) {
    doc["valid"] = all_valid;
    out << doc.dump(2) << "\n";
  }
  return all_valid ? kExitOk : kExitSemantic;
}

}  // namespace subiota::cli

#endif
