#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "aml/ast.hpp"
#include "aml/checker.hpp"
#include "aml/config.hpp"
#include "aml/policy.hpp"

namespace aml {

namespace detail {

inline void collect_module_qnames(const std::vector<Member>& members,
                                  const std::string& prefix,
                                  std::vector<std::string>& out) {
  for (const auto& m : members) {
    if (const auto* mod = std::get_if<std::shared_ptr<const ModuleDef>>(&m)) {
      std::string q = prefix.empty() ? (*mod)->name : prefix + "." + (*mod)->name;
      out.push_back(q);
      collect_module_qnames((*mod)->members, q, out);
    }
  }
}

inline void collect_holes(const ClassDef& cls, std::vector<const Field*>& out) {
  for (const auto& m : cls.members) {
    if (const auto* f = std::get_if<Field>(&m)) {
      if (f->acc.kind == AccKeyword::Kind::Hole) out.push_back(f);
    } else {
      collect_holes(*std::get<std::shared_ptr<const ClassDef>>(m), out);
    }
  }
}

inline void collect_holes(const std::vector<Member>& members,
                          std::vector<const Field*>& out) {
  for (const auto& m : members) {
    if (const auto* mod = std::get_if<std::shared_ptr<const ModuleDef>>(&m))
      collect_holes((*mod)->members, out);
    else if (const auto* cls = std::get_if<std::shared_ptr<const ClassDef>>(&m))
      collect_holes(**cls, out);
  }
}

inline std::shared_ptr<const ClassDef> substitute_in_class(
    const ClassDef& cls, const std::map<NodeId, AccKeyword>& subst) {
  auto copy = std::make_shared<ClassDef>(cls);
  for (auto& m : copy->members) {
    if (auto* f = std::get_if<Field>(&m)) {
      auto it = subst.find(f->id);
      if (it != subst.end()) f->acc = it->second;
    } else {
      auto& inner = std::get<std::shared_ptr<const ClassDef>>(m);
      m = substitute_in_class(*inner, subst);
    }
  }
  return copy;
}

inline std::vector<Member> substitute_in_members(
    const std::vector<Member>& members, const std::map<NodeId, AccKeyword>& subst) {
  std::vector<Member> out;
  for (const auto& m : members) {
    if (const auto* mod = std::get_if<std::shared_ptr<const ModuleDef>>(&m)) {
      auto copy = std::make_shared<ModuleDef>(**mod);
      copy->members = substitute_in_members(copy->members, subst);
      out.push_back(std::shared_ptr<const ModuleDef>(copy));
    } else if (const auto* cls = std::get_if<std::shared_ptr<const ClassDef>>(&m)) {
      out.push_back(substitute_in_class(**cls, subst));
    } else {
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace detail

/// Node ids and spans are preserved, so scope construction is identical
/// across substitutions.
inline Program substitute_modifiers(const Program& prog,
                                    const std::map<NodeId, AccKeyword>& subst) {
  Program out = prog;
  out.members = detail::substitute_in_members(prog.members, subst);
  return out;
}

/// The finite candidate universe: keyword bases plus singleton-module
/// forms for every module declared in the program.
inline std::vector<AccKeyword> candidate_keywords(const Program& prog) {
  std::vector<AccKeyword> out;
  out.push_back({AccKeyword::Kind::Private, {}});
  out.push_back({AccKeyword::Kind::Protected, {}});
  out.push_back({AccKeyword::Kind::Public, {}});
  std::vector<std::string> qnames;
  detail::collect_module_qnames(prog.members, "", qnames);
  for (const auto& q : qnames) {
    out.push_back({AccKeyword::Kind::Internal, {q}});
    out.push_back({AccKeyword::Kind::ProtectedInternal, {q}});
    out.push_back({AccKeyword::Kind::PrivateProtected, {q}});
  }
  return out;
}

struct HoleSynthesis {
  NodeId field = 0;
  std::string field_name;
  std::vector<std::pair<AccKeyword, Policy>> valid;    // normalized, deduplicated
  std::vector<std::pair<AccKeyword, Policy>> minimal;  // policy_lt-minimal subset
};

struct SynthesisResult {
  std::vector<HoleSynthesis> holes;
};

/// Fills each modifier hole with every candidate whose substitution
/// checks without accessibility errors attributable to that declaration;
/// minimal keeps the most restrictive ones under the policy order.
inline SynthesisResult synthesize(const Program& prog, const VariantConfig& cfg) {
  SynthesisResult result;
  std::vector<const Field*> holes;
  detail::collect_holes(prog.members, holes);
  if (holes.empty()) return result;

  // Baseline elaboration (holes permissive) fixes scope ids and the
  // declaring scope of each hole.
  CheckResult base = elaborate(prog, cfg);
  std::vector<AccKeyword> candidates = candidate_keywords(prog);

  for (const Field* hole : holes) {
    HoleSynthesis hs;
    hs.field = hole->id;
    hs.field_name = hole->name;
    // Declaring scope: the VarDecl with this node id lives in exactly one scope.
    ScopeId declaring;
    for (std::uint32_t i = 0; i < base.graph.scope_count() && !declaring.valid(); ++i)
      for (const auto& [l, d] : base.graph.decls_at(ScopeId{i}))
        if (const auto* v = std::get_if<VarDecl>(&d))
          if (v->node == hole->id) {
            declaring = ScopeId{i};
            break;
          }
    std::set<Policy> seen;
    for (const AccKeyword& cand : candidates) {
      std::vector<Diagnostic> scratch;
      Policy pol =
          normalize(translate_modifier(base.graph, declaring, cand, cfg, &scratch));
      if (!scratch.empty()) continue;  // invalid argument under this config
      if (seen.contains(pol)) continue;
      seen.insert(pol);
      Program substituted = substitute_modifiers(prog, {{hole->id, cand}});
      CheckResult check = elaborate(substituted, cfg);
      bool clean = true;
      for (const auto& d : check.diagnostics) {
        if (d.code != Diagnostic::Code::Inaccessible &&
            d.code != Diagnostic::Code::PathHidden)
          continue;
        auto it = check.bindings.find(d.node);
        if (it == check.bindings.end()) {
          clean = false;  // unattributed accessibility error: be conservative
          break;
        }
        const auto* v = std::get_if<VarDecl>(&it->second.decl);
        if (v && v->node == hole->id) {
          clean = false;
          break;
        }
      }
      if (clean) hs.valid.emplace_back(cand, pol);
    }
    for (const auto& [kw, pol] : hs.valid) {
      bool is_minimal = true;
      for (const auto& [kw2, pol2] : hs.valid)
        if (policy_lt(pol2, pol)) {
          is_minimal = false;
          break;
        }
      if (is_minimal) hs.minimal.emplace_back(kw, pol);
    }
    result.holes.push_back(std::move(hs));
  }
  return result;
}

}  // namespace aml
