/// amlc — command-line front end: check programs, synthesize modifiers,
/// dump scope graphs, and generate/run the conformance matrix.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aml/aml.hpp"
#include "aml/synthesis.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Options {
  std::string preset;
  std::string internal_variant;
  std::string private_variant;
  std::string resolution;
  bool inheritance_modifiers = false;
  std::string format = "text";
  std::string out;
  std::string target = "aml";
  std::string file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("file", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Pragmas configure first; explicit command-line flags override them.
aml::VariantConfig build_config(const Options& opt, const aml::Program& prog) {
  aml::VariantConfig cfg = aml::preset_csharp();
  for (const auto& p : prog.pragmas)
    if (!aml::apply_config_pragma(cfg, p.key, p.value))
      throw CLI::ValidationError("pragma", "unknown pragma '" + p.key + "=" + p.value + "'");
  if (!opt.preset.empty()) {
    auto preset = aml::preset_by_name(opt.preset);
    if (!preset) throw CLI::ValidationError("--preset", "unknown preset '" + opt.preset + "'");
    cfg = *preset;
  }
  if (!opt.internal_variant.empty()) {
    if (opt.internal_variant == "base") {
      cfg.internal_args_must_be_ancestors = false;
      cfg.internal_reference_rule = aml::InternalReferenceRule::AnyEnclosing;
      cfg.internal_whole_path = false;
    } else if (opt.internal_variant == "ancestor") {
      cfg.internal_args_must_be_ancestors = true;
      cfg.internal_reference_rule = aml::InternalReferenceRule::AnyEnclosing;
      cfg.internal_whole_path = false;
    } else if (opt.internal_variant == "innermost") {
      cfg.internal_reference_rule = aml::InternalReferenceRule::Innermost;
    } else if (opt.internal_variant == "whole-path") {
      cfg.internal_reference_rule = aml::InternalReferenceRule::AnyEnclosing;
      cfg.internal_whole_path = true;
    } else {
      throw CLI::ValidationError("--internal-variant",
                                 "expected base|ancestor|innermost|whole-path");
    }
  }
  if (!opt.private_variant.empty()) {
    if (opt.private_variant == "java") {
      cfg.private_path_must_be_lexical = true;
      cfg.private_shared_enclosing = true;
    } else if (opt.private_variant == "csharp") {
      cfg.private_path_must_be_lexical = false;
      cfg.private_shared_enclosing = false;
    } else {
      throw CLI::ValidationError("--private", "expected java|csharp");
    }
  }
  if (!opt.resolution.empty()) {
    if (opt.resolution == "label-order")
      cfg.resolution_mode = aml::ResolutionMode::LabelOrder;
    else if (opt.resolution == "full-path-order")
      cfg.resolution_mode = aml::ResolutionMode::FullPathOrder;
    else
      throw CLI::ValidationError("--resolution", "expected label-order|full-path-order");
  }
  if (opt.inheritance_modifiers) cfg.inheritance_modifiers = true;
  return cfg;
}

json diagnostic_json(const aml::Diagnostic& d) {
  return json{{"line", d.span.line},
              {"col", d.span.col},
              {"code", aml::code_name(d.code)},
              {"message", d.message}};
}

int cmd_check(const Options& opt) {
  aml::Program prog = aml::parse_program(read_file(opt.file));
  aml::VariantConfig cfg = build_config(opt, prog);
  aml::CheckResult res = aml::elaborate(prog, cfg);
  if (opt.format == "structured") {
    json out{{"ok", !res.has_errors()}, {"diagnostics", json::array()}};
    for (const auto& d : res.diagnostics) out["diagnostics"].push_back(diagnostic_json(d));
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& d : res.diagnostics) std::cout << aml::diagnostic_line(d) << "\n";
    if (res.diagnostics.empty()) std::cout << "ok\n";
  }
  return res.has_errors() ? kExitFindings : kExitOk;
}

int cmd_verify(const Options& opt) {
  aml::Program prog = aml::parse_program(read_file(opt.file));
  aml::VariantConfig cfg = build_config(opt, prog);
  aml::CheckResult res = aml::elaborate(prog, cfg);
  std::vector<aml::Violation> violations =
      aml::verify_all(res.graph, cfg, res.bindings);
  if (opt.format == "structured") {
    json out{{"ok", violations.empty() && !res.has_errors()},
             {"diagnostics", json::array()},
             {"violations", json::array()}};
    for (const auto& d : res.diagnostics) out["diagnostics"].push_back(diagnostic_json(d));
    for (const auto& v : violations)
      out["violations"].push_back(json{{"property", v.property}, {"message", v.message}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& d : res.diagnostics) std::cout << aml::diagnostic_line(d) << "\n";
    for (const auto& v : violations)
      std::cout << "violation " << v.property << ": " << v.message << "\n";
    if (res.diagnostics.empty() && violations.empty()) std::cout << "ok\n";
  }
  return (res.has_errors() || !violations.empty()) ? kExitFindings : kExitOk;
}

int cmd_synth(const Options& opt) {
  aml::Program prog = aml::parse_program(read_file(opt.file), /*allow_holes=*/true);
  aml::VariantConfig cfg = build_config(opt, prog);
  aml::SynthesisResult res = aml::synthesize(prog, cfg);
  auto name_of = [](aml::ScopeId) { return std::string(); };
  (void)name_of;
  if (opt.format == "structured") {
    json out = json::array();
    for (const auto& h : res.holes) {
      json valid = json::array(), minimal = json::array();
      for (const auto& [kw, pol] : h.valid) valid.push_back(aml::policy_to_string(pol));
      for (const auto& [kw, pol] : h.minimal)
        minimal.push_back(aml::policy_to_string(pol));
      out.push_back(json{{"field", h.field_name}, {"valid", valid}, {"minimal", minimal}});
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& h : res.holes) {
      std::cout << h.field_name << ":";
      if (h.minimal.empty()) {
        std::cout << " (no valid modifier)\n";
        continue;
      }
      for (const auto& [kw, pol] : h.minimal)
        std::cout << " " << aml::policy_to_string(pol);
      std::cout << "\n";
    }
  }
  bool all_solvable = true;
  for (const auto& h : res.holes)
    if (h.minimal.empty()) all_solvable = false;
  return all_solvable ? kExitOk : kExitFindings;
}

int cmd_graph(const Options& opt) {
  aml::Program prog = aml::parse_program(read_file(opt.file));
  aml::VariantConfig cfg = build_config(opt, prog);
  aml::CheckResult res = aml::elaborate(prog, cfg);
  std::cout << aml::graph_to_dot(res.graph);
  return kExitOk;
}

int cmd_gen_tests(const Options& opt) {
  auto target = aml::target_by_name(opt.target);
  if (!target) throw CLI::ValidationError("--target", "expected java|csharp|rust|aml");
  std::vector<aml::TestCase> cases = aml::generate_matrix(*target);
  fs::path out = opt.out.empty() ? fs::path("conformance-out") : fs::path(opt.out);
  fs::create_directories(out);
  std::ofstream(out / (opt.target + ".manifest")) << aml::manifest_text(cases);
  std::ofstream(out / (opt.target + ".spt")) << aml::spt_text(cases, *target);
  for (const auto& c : cases) {
    fs::path dir = out / "cases" / c.id;
    fs::create_directories(dir);
    std::ofstream(dir / "program.aml") << c.source;
    if (*target != aml::Target::Aml) {
      aml::TranslationResult tr = aml::translate(aml::parse_program(c.source), *target);
      if (tr.unsupported) {
        std::ofstream(dir / "UNSUPPORTED") << tr.reason << "\n";
      } else {
        for (const auto& [rel, text] : tr.files) {
          fs::path p = dir / rel;
          fs::create_directories(p.parent_path());
          std::ofstream(p) << text;
        }
      }
    }
  }
  std::cout << "generated " << cases.size() << " cases for " << opt.target << " in "
            << out.string() << "\n";
  return kExitOk;
}

int cmd_diff(const Options& opt) {
  auto target = aml::target_by_name(opt.target);
  if (!target || *target == aml::Target::Aml)
    throw CLI::ValidationError("--target", "expected java|csharp|rust");
  std::vector<aml::TestCase> cases = aml::generate_matrix(*target);
  fs::path out = opt.out.empty() ? fs::path("diff-out") : fs::path(opt.out);
  fs::create_directories(out);
  aml::DifferentialReport report = aml::run_differential(cases, *target, out);
  if (opt.format == "structured") {
    json arr = json::array();
    for (const auto& o : report.outcomes) {
      const char* st = o.status == aml::CaseOutcome::Status::Pass ? "PASS"
                       : o.status == aml::CaseOutcome::Status::Fail
                           ? "FAIL"
                           : o.status == aml::CaseOutcome::Status::SkipUnsupported
                                 ? "SKIP_UNSUPPORTED"
                                 : "SKIP_GOLDEN";
      arr.push_back(json{{"id", o.id}, {"status", st}, {"detail", o.detail}});
    }
    json doc{{"compiler_available", report.compiler_available},
             {"passed", report.passed},
             {"failed", report.failed},
             {"skipped", report.skipped},
             {"cases", arr}};
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& o : report.outcomes) {
      const char* st = o.status == aml::CaseOutcome::Status::Pass ? "PASS"
                       : o.status == aml::CaseOutcome::Status::Fail
                           ? "FAIL"
                           : o.status == aml::CaseOutcome::Status::SkipUnsupported
                                 ? "SKIP(unsupported)"
                                 : "SKIP(no compiler)";
      std::cout << st << " " << o.id << "\n";
    }
    std::cout << report.passed << " passed, " << report.failed << " failed, "
              << report.skipped << " skipped\n";
  }
  return report.failed == 0 ? kExitOk : kExitFindings;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scope-graph access-modifier checker"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_file) {
    cmd->add_option("--preset", opt.preset, "configuration preset (java|csharp|rust-modules|cpp-inheritance)");
    cmd->add_option("--internal-variant", opt.internal_variant,
                    "internal rule variant (base|ancestor|innermost|whole-path)");
    cmd->add_option("--private", opt.private_variant, "private rule variant (java|csharp)");
    cmd->add_option("--resolution", opt.resolution,
                    "candidate ordering (label-order|full-path-order)");
    cmd->add_flag("--inheritance-modifiers", opt.inheritance_modifiers,
                  "enable extends-clause access modifiers");
    cmd->add_option("--format", opt.format, "output format (text|structured)")
        ->check(CLI::IsMember({"text", "structured"}));
    if (needs_file) cmd->add_option("file", opt.file, "AML source file")->required();
  };

  CLI::App* check = app.add_subcommand("check", "type- and access-check a program");
  add_common(check, true);
  CLI::App* synth = app.add_subcommand("synth", "synthesize modifiers for holes (?)");
  add_common(synth, true);
  CLI::App* graph = app.add_subcommand("graph", "emit the scope graph as DOT");
  add_common(graph, true);
  CLI::App* verify = app.add_subcommand("verify", "check soundness properties of all bindings");
  add_common(verify, true);
  CLI::App* gen = app.add_subcommand("gen-tests", "generate the conformance matrix");
  add_common(gen, false);
  gen->add_option("--target", opt.target, "target language (java|csharp|rust|aml)");
  gen->add_option("--out", opt.out, "output directory");
  CLI::App* diff = app.add_subcommand("diff", "run the differential compiler comparison");
  add_common(diff, false);
  diff->add_option("--target", opt.target, "target language (java|csharp|rust)");
  diff->add_option("--out", opt.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(opt);
    if (synth->parsed()) return cmd_synth(opt);
    if (graph->parsed()) return cmd_graph(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (gen->parsed()) return cmd_gen_tests(opt);
    if (diff->parsed()) return cmd_diff(opt);
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const aml::ParseError& e) {
    std::cerr << opt.file << ":" << e.line << ":" << e.col << ": error: " << e.what()
              << "\n";
    return kExitFindings;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
