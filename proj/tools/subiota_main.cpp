// subiota: batch checker, normalizer and auditor for subatomic natural
// deduction with qualified definite descriptions.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "subiota/cli.hpp"

namespace {

void add_common(CLI::App* cmd, subiota::cli::Options& opt, bool needs_script) {
  cmd->add_option("--base", opt.base_file, "base definition file (JSON)");
  if (needs_script)
    cmd->add_option("--script", opt.script_file, "proof script file (JSON)")->required();
  std::map<std::string, subiota::Mode> modes{{"i0", subiota::Mode::I0},
                                             {"m0", subiota::Mode::M0}};
  cmd->add_option("--mode", opt.mode, "proof system mode (i0 = intuitionistic, m0 = minimal)")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  cmd->add_flag("--json", opt.json, "emit one machine-readable JSON document");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "subiota - proof kernel, normalizer and metatheory auditor for subatomic natural\n"
      "deduction systems with qualified identity and qualified definite descriptions"};
  app.require_subcommand(1);

  subiota::cli::Options opt;

  CLI::App* check = app.add_subcommand("check", "check every derivation in a proof script");
  add_common(check, opt, true);

  CLI::App* normalize =
      app.add_subcommand("normalize", "rewrite derivations to normal form");
  add_common(normalize, opt, true);
  normalize->add_flag("--trace", opt.trace, "list the conversion steps");
  normalize->add_option("--fuel", opt.fuel, "conversion step budget")->capture_default_str();
  normalize->add_option("-o,--output", opt.output_file, "write the normalized script here");

  CLI::App* audit = app.add_subcommand(
      "audit", "normalize, then check the subformula and subexpression properties");
  add_common(audit, opt, true);
  audit->add_option("--fuel", opt.fuel, "conversion step budget")->capture_default_str();

  CLI::App* elaborate =
      app.add_subcommand("elaborate", "expand defined symbols and report definiteness degrees");
  elaborate->add_option("--base", opt.base_file, "base definition file (JSON)")->required();
  elaborate->add_flag("--json", opt.json, "emit one machine-readable JSON document");
  elaborate->add_option("formula", opt.formula_text, "formula text")->required();

  CLI::App* classify = app.add_subcommand(
      "classify", "classify derivations (canonical / proof, thesis / theorem)");
  add_common(classify, opt, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return subiota::cli::cmd_check(opt, std::cout, std::cerr);
    if (normalize->parsed()) return subiota::cli::cmd_normalize(opt, std::cout, std::cerr);
    if (audit->parsed()) return subiota::cli::cmd_audit(opt, std::cout, std::cerr);
    if (elaborate->parsed()) return subiota::cli::cmd_elaborate(opt, std::cout, std::cerr);
    if (classify->parsed()) return subiota::cli::cmd_classify(opt, std::cout, std::cerr);
  } catch (const subiota::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return subiota::cli::kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return subiota::cli::kExitSemantic;
  }
  return subiota::cli::kExitParse;
}
