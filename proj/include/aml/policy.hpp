#pragma once

#include <functional>
#include <set>
#include <string>

#include "aml/config.hpp"
#include "aml/scope_graph.hpp"

namespace aml {

namespace detail {

inline std::set<ScopeId> scope_data_of(const QueryResult& r) {
  std::set<ScopeId> out;
  for (const auto& c : r)
    if (const auto* s = std::get_if<ScopeData>(&c.data)) out.insert(s->scope);
  return out;
}

inline const LabelRegex& re_enc_mod() {
  static const LabelRegex r = parse_regex("LEX* THIS_M");
  return r;
}
inline const LabelRegex& re_enc_cls() {
  static const LabelRegex r = parse_regex("LEX* THIS_C");
  return r;
}

}  // namespace detail

/// All modules whose scope lexically encloses s (including s itself when
/// s is a module scope).
inline std::set<ScopeId> enclosing_modules(const ScopeGraph& g, ScopeId s) {
  return detail::scope_data_of(
      g.resolve(s, detail::re_enc_mod(), DataPredicate::top(), NoOrder{}));
}

/// Nearest enclosing modules of s (a set: arbitrary graphs may have
/// several lexical parents).
inline std::set<ScopeId> innermost_enclosing_modules(const ScopeGraph& g, ScopeId s) {
  static const LabelOrder order({{Label::ThisM, Label::Lex}});
  return detail::scope_data_of(
      g.resolve(s, detail::re_enc_mod(), DataPredicate::top(), order));
}

/// All classes whose scope lexically encloses s (including s itself when
/// s is a class scope).
inline std::set<ScopeId> enclosing_classes(const ScopeGraph& g, ScopeId s) {
  return detail::scope_data_of(
      g.resolve(s, detail::re_enc_cls(), DataPredicate::top(), NoOrder{}));
}

/// Nearest enclosing classes of s.
inline std::set<ScopeId> innermost_enclosing_classes(const ScopeGraph& g, ScopeId s) {
  static const LabelOrder order({{Label::ThisC, Label::Lex}});
  return detail::scope_data_of(
      g.resolve(s, detail::re_enc_cls(), DataPredicate::top(), order));
}

namespace detail {

inline bool intersects(const std::set<ScopeId>& a, const std::set<ScopeId>& b) {
  for (ScopeId s : a)
    if (b.contains(s)) return true;
  return false;
}

/// Internal-access check against argument modules S.
inline bool mod_check(const ScopeGraph& g, const VariantConfig& cfg, ScopeId ref,
                      const Path& path, const std::set<ScopeId>& args,
                      bool whole_path) {
  bool ref_ok = false;
  if (cfg.internal_reference_rule == InternalReferenceRule::Innermost)
    ref_ok = intersects(innermost_enclosing_modules(g, ref), args);
  else
    ref_ok = intersects(enclosing_modules(g, ref), args);
  if (!ref_ok) return false;
  if (whole_path) {
    ScopeId tgt = path.tgt();
    for (ScopeId s : path.scopes()) {
      if (s == tgt) continue;
      if (!intersects(enclosing_modules(g, s), args)) return false;
    }
  }
  return true;
}

/// Protected-access check: some enclosing class of ref lies on the path.
inline bool prt_check(const ScopeGraph& g, ScopeId ref, const Path& path) {
  for (ScopeId s_c : enclosing_classes(g, ref))
    if (path.visits(s_c)) return true;
  return false;
}

/// Private fallback, available under every policy.
inline bool prv_check(const ScopeGraph& g, const VariantConfig& cfg, ScopeId ref,
                      const Path& path) {
  if (cfg.private_path_must_be_lexical) {
    for (Label l : path.labels())
      if (l != Label::Lex) return false;
  }
  std::set<ScopeId> enc_ref = enclosing_classes(g, ref);
  if (cfg.private_shared_enclosing)
    return intersects(enc_ref, enclosing_classes(g, path.tgt()));
  return enc_ref.contains(path.tgt());
}

}  // namespace detail

/// Does the policy permit a reference in scope ref reaching the
/// declaration along path?
inline bool permits(const ScopeGraph& g, const VariantConfig& cfg, ScopeId ref,
                    const Path& path, const Policy& policy) {
  using K = Policy::Kind;
  bool head = false;
  switch (policy.kind) {
    case K::Pub:
      head = true;
      break;
    case K::Mod:
      head = detail::mod_check(g, cfg, ref, path, policy.scopes,
                               cfg.internal_whole_path);
      break;
    case K::Prt:
      head = detail::prt_check(g, ref, path);
      break;
    case K::Prv:
      head = false;
      break;
    case K::Smc:
      head = detail::mod_check(g, cfg, ref, path, policy.scopes,
                               cfg.internal_whole_path) &&
             detail::prt_check(g, ref, path);
      break;
    case K::Smd:
      // The internal half never constrains the whole path here.
      head = detail::prt_check(g, ref, path) ||
             detail::mod_check(g, cfg, ref, path, policy.scopes,
                               /*whole_path=*/false);
      break;
  }
  return head || detail::prv_check(g, cfg, ref, path);
}

/// With inheritance modifiers on, non-public extension edges restrict
/// which reference scopes may use a path at all.
inline bool path_permits(const ScopeGraph& g, const VariantConfig& cfg, ScopeId ref,
                         const Path& path) {
  if (!cfg.inheritance_modifiers) return true;
  static const LabelRegex pub_shape = parse_regex("LEX* EXT*");
  static const LabelRegex tail_shape = parse_regex("EXT_PRV? (EXT|EXT_PRT)*");
  if (pub_shape.matches(path.labels())) return true;
  for (ScopeId s_c : enclosing_classes(g, ref)) {
    auto parts = split_at(s_c, path);
    if (!parts) continue;
    if (pub_shape.matches(parts->first.labels()) &&
        tail_shape.matches(parts->second.labels()))
      return true;
  }
  return false;
}

/// Degenerate argument sets collapse to their conjunction-free kin.
inline Policy normalize(Policy p) {
  using K = Policy::Kind;
  if (p.scopes.empty()) {
    if (p.kind == K::Smd) return Policy::prt();
    if (p.kind == K::Smc || p.kind == K::Mod) return Policy::prv();
  }
  if (p.kind == K::Pub || p.kind == K::Prt || p.kind == K::Prv) p.scopes.clear();
  return p;
}

/// Strict partial order: a grants strictly less access than b.
inline bool policy_lt(Policy a, Policy b) {
  using K = Policy::Kind;
  a = normalize(a);
  b = normalize(b);
  if (a == b) return false;
  auto subset = [](const std::set<ScopeId>& x, const std::set<ScopeId>& y) {
    return std::includes(y.begin(), y.end(), x.begin(), x.end());
  };
  switch (a.kind) {
    case K::Prv:
      return b.kind != K::Prv;
    case K::Pub:
      return false;
    case K::Smc:
      switch (b.kind) {
        case K::Smc:
          return subset(a.scopes, b.scopes);
        case K::Mod:
          return subset(a.scopes, b.scopes);
        case K::Prt:
        case K::Smd:
        case K::Pub:
          return true;
        default:
          return false;
      }
    case K::Prt:
      return b.kind == K::Smd || b.kind == K::Pub;
    case K::Mod:
      switch (b.kind) {
        case K::Mod:
        case K::Smd:
          return subset(a.scopes, b.scopes);
        case K::Pub:
          return true;
        default:
          return false;
      }
    case K::Smd:
      if (b.kind == K::Smd) return subset(a.scopes, b.scopes);
      return b.kind == K::Pub;
  }
  return false;
}

/// Textual form: PUB, PRT, PRV, MOD{a,b}, SMD{...}, SMC{...}.
inline std::string policy_to_string(
    const Policy& p,
    const std::function<std::string(ScopeId)>& name = {}) {
  using K = Policy::Kind;
  auto scope_name = [&](ScopeId s) {
    if (name) return name(s);
    return "s" + std::to_string(s.index);
  };
  auto set_text = [&]() {
    std::string out = "{";
    bool first = true;
    for (ScopeId s : p.scopes) {
      if (!first) out += ",";
      out += scope_name(s);
      first = false;
    }
    return out + "}";
  };
  switch (p.kind) {
    case K::Pub:
      return "PUB";
    case K::Prt:
      return "PRT";
    case K::Prv:
      return "PRV";
    case K::Mod:
      return "MOD" + set_text();
    case K::Smd:
      return "SMD" + set_text();
    case K::Smc:
      return "SMC" + set_text();
  }
  return "PUB";
}

}  // namespace aml
