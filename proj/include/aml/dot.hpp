#pragma once

#include <string>

#include "aml/policy.hpp"
#include "aml/scope_graph.hpp"

namespace aml {

namespace detail {

inline std::string decl_label_text(const ScopeGraph& g, Label l, const DeclData& d) {
  std::string text = std::string(to_string(l)) + " ";
  if (const auto* m = std::get_if<ModDecl>(&d)) return text + m->name;
  if (const auto* c = std::get_if<ClsDecl>(&d)) return text + c->name;
  if (const auto* v = std::get_if<VarDecl>(&d)) {
    std::string ty = v->type.kind == Type::Kind::Int
                         ? "int"
                         : "inst " + g.debug_name(v->type.cls);
    return text + v->name + " : " + ty + " @ " +
           policy_to_string(v->policy, [&](ScopeId s) { return g.debug_name(s); });
  }
  return text + g.debug_name(std::get<ScopeData>(d).scope);
}

}  // namespace detail

/// Deterministic DOT rendering: scopes as circles, declarations as boxes.
inline std::string graph_to_dot(const ScopeGraph& g) {
  std::string out = "digraph scopes {\n  rankdir=BT;\n";
  for (std::uint32_t i = 0; i < g.scope_count(); ++i) {
    ScopeId s{i};
    out += "  n" + std::to_string(i) + " [shape=circle, label=\"" + g.debug_name(s) +
           "\"];\n";
  }
  std::size_t decl_idx = 0;
  for (std::uint32_t i = 0; i < g.scope_count(); ++i) {
    ScopeId s{i};
    for (const auto& [l, t] : g.edges_from(s))
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(t.index) +
             " [label=\"" + std::string(to_string(l)) + "\"];\n";
    for (const auto& [l, d] : g.decls_at(s)) {
      std::string id = "d" + std::to_string(decl_idx++);
      out += "  " + id + " [shape=box, label=\"" + detail::decl_label_text(g, l, d) +
             "\"];\n";
      out += "  n" + std::to_string(i) + " -> " + id + " [label=\"" +
             std::string(to_string(l)) +
             "\", style=dashed];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace aml
