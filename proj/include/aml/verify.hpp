#pragma once

#include <map>
#include <string>
#include <vector>

#include "aml/checker.hpp"
#include "aml/policy.hpp"
#include "aml/scope_graph.hpp"

namespace aml {

struct Violation {
  NodeId node = 0;
  std::string property;
  std::string message;
};

/// s_c is s_d or a class reaching s_d through extension edges.
inline bool sub_class(const ScopeGraph& g, ScopeId s_c, ScopeId s_d) {
  static const LabelRegex r = parse_regex("(EXT|EXT_PRT|EXT_PRV)* THIS_C");
  return !g.resolve(s_c, r, DataPredicate::is_scope(s_d), NoOrder{}).empty();
}

namespace detail {

inline bool fallback_holds(const ScopeGraph& g, const VariantConfig& cfg, ScopeId ref,
                           ScopeId tgt) {
  std::set<ScopeId> enc_ref = enclosing_classes(g, ref);
  if (cfg.private_shared_enclosing)
    return intersects(enc_ref, enclosing_classes(g, tgt));
  return enc_ref.contains(tgt);
}

}  // namespace detail

/// Every binding of a private field must target an enclosing class of the
/// reference (a shared enclosing class under that configuration).
inline std::vector<Violation> verify_private_soundness(
    const ScopeGraph& g, const VariantConfig& cfg,
    const std::map<NodeId, Binding>& bindings) {
  std::vector<Violation> out;
  for (const auto& [id, b] : bindings) {
    const auto* v = std::get_if<VarDecl>(&b.decl);
    if (!v || v->policy.kind != Policy::Kind::Prv) continue;
    if (!detail::fallback_holds(g, cfg, b.ref_scope, b.path.tgt()))
      out.push_back({id, "private-soundness",
                     "private field '" + v->name +
                         "' bound outside the enclosing classes of its reference"});
  }
  return out;
}

/// Every binding of a protected field must be reached from a subclass of
/// the defining class enclosing the reference (or via the private
/// fallback).
inline std::vector<Violation> verify_protected_soundness(
    const ScopeGraph& g, const VariantConfig& cfg,
    const std::map<NodeId, Binding>& bindings) {
  std::vector<Violation> out;
  for (const auto& [id, b] : bindings) {
    const auto* v = std::get_if<VarDecl>(&b.decl);
    if (!v || v->policy.kind != Policy::Kind::Prt) continue;
    ScopeId tgt = b.path.tgt();
    bool ok = false;
    for (ScopeId s_c : enclosing_classes(g, b.ref_scope))
      if (sub_class(g, s_c, tgt)) {
        ok = true;
        break;
      }
    if (!ok) ok = detail::fallback_holds(g, cfg, b.ref_scope, tgt);
    if (!ok)
      out.push_back({id, "protected-soundness",
                     "protected field '" + v->name +
                         "' bound without an enclosing subclass of its definer"});
  }
  return out;
}

/// Every binding of an internal field must come from a scope whose
/// enclosing module (innermost under that rule) is among the modifier's
/// arguments, or satisfy the private fallback.
inline std::vector<Violation> verify_internal_soundness(
    const ScopeGraph& g, const VariantConfig& cfg,
    const std::map<NodeId, Binding>& bindings) {
  std::vector<Violation> out;
  for (const auto& [id, b] : bindings) {
    const auto* v = std::get_if<VarDecl>(&b.decl);
    if (!v || v->policy.kind != Policy::Kind::Mod) continue;
    std::set<ScopeId> mods =
        cfg.internal_reference_rule == InternalReferenceRule::Innermost
            ? innermost_enclosing_modules(g, b.ref_scope)
            : enclosing_modules(g, b.ref_scope);
    bool ok = detail::intersects(mods, v->policy.scopes) ||
              detail::fallback_holds(g, cfg, b.ref_scope, b.path.tgt());
    if (!ok)
      out.push_back({id, "internal-soundness",
                     "internal field '" + v->name +
                         "' bound outside its argument modules"});
  }
  return out;
}

/// All three soundness properties over one checked program.
inline std::vector<Violation> verify_all(const ScopeGraph& g, const VariantConfig& cfg,
                                         const std::map<NodeId, Binding>& bindings) {
  std::vector<Violation> out = verify_private_soundness(g, cfg, bindings);
  for (auto& v : verify_protected_soundness(g, cfg, bindings)) out.push_back(std::move(v));
  for (auto& v : verify_internal_soundness(g, cfg, bindings)) out.push_back(std::move(v));
  return out;
}

}  // namespace aml
