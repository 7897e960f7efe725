#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aml/ast.hpp"
#include "aml/config.hpp"
#include "aml/policy.hpp"
#include "aml/scope_graph.hpp"

namespace aml {

struct Diagnostic {
  enum class Code {
    Unresolved,
    Ambiguous,
    Inaccessible,
    PathHidden,
    CyclicType,
    TypeMismatch,
    BadInternalArg,
    Unsupported
  };
  SourceSpan span;
  Code code = Code::Unresolved;
  std::string message;
  std::optional<Policy> policy;    // Inaccessible only
  std::vector<Label> path_labels;  // Inaccessible / PathHidden
  NodeId node = 0;                 // offending expression, when known
};

inline const char* code_name(Diagnostic::Code c) {
  switch (c) {
    case Diagnostic::Code::Unresolved: return "E_UNRESOLVED";
    case Diagnostic::Code::Ambiguous: return "E_AMBIGUOUS";
    case Diagnostic::Code::Inaccessible: return "E_INACCESSIBLE";
    case Diagnostic::Code::PathHidden: return "E_PATH_HIDDEN";
    case Diagnostic::Code::CyclicType: return "E_CYCLIC_TYPE";
    case Diagnostic::Code::TypeMismatch: return "E_TYPE_MISMATCH";
    case Diagnostic::Code::BadInternalArg: return "E_BAD_INTERNAL_ARG";
    case Diagnostic::Code::Unsupported: return "E_UNSUPPORTED";
  }
  return "E_UNKNOWN";
}

inline std::string diagnostic_line(const Diagnostic& d) {
  return std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + ":" +
         code_name(d.code) + ":" + d.message;
}

struct Binding {
  NodeId node = 0;
  ScopeId ref_scope;  // scope of the referring expression
  Path path;          // path.src() is the resolution start scope
  DeclData decl;
};

struct CheckResult {
  ScopeGraph graph;
  ScopeId root;
  std::map<NodeId, Binding> bindings;
  std::vector<Diagnostic> diagnostics;
  std::map<NodeId, std::optional<Type>> expr_types;  // per expression node
  std::map<NodeId, Policy> field_policies;           // per field node
  std::map<NodeId, ScopeId> class_scopes;            // ClassDef node -> scope
  std::map<NodeId, ScopeId> module_scopes;           // ModuleDef node -> scope

  bool has_errors() const { return !diagnostics.empty(); }
  std::size_t count(Diagnostic::Code c) const {
    std::size_t n = 0;
    for (const auto& d : diagnostics) n += d.code == c;
    return n;
  }
};

namespace detail {

inline const LabelRegex& re_q_mod() {
  static const LabelRegex r = parse_regex("LEX* MOD");
  return r;
}
inline const LabelRegex& re_q_cls() {
  static const LabelRegex r = parse_regex("LEX* IMP? CLS");
  return r;
}
inline const LabelRegex& re_var_lexical(bool inheritance_modifiers) {
  static const LabelRegex plain = parse_regex("LEX* EXT* VAR");
  static const LabelRegex extended = parse_regex("LEX* (EXT|EXT_PRT|EXT_PRV)* VAR");
  return inheritance_modifiers ? extended : plain;
}
inline const LabelRegex& re_var_member(bool inheritance_modifiers) {
  static const LabelRegex plain = parse_regex("EXT* VAR");
  static const LabelRegex extended = parse_regex("(EXT|EXT_PRT|EXT_PRV)* VAR");
  return inheritance_modifiers ? extended : plain;
}

inline const LabelOrder& order_q_mod() {
  static const LabelOrder o({{Label::Mod, Label::Lex}});
  return o;
}
inline const LabelOrder& order_q_cls() {
  static const LabelOrder o(
      {{Label::Cls, Label::Imp}, {Label::Imp, Label::Lex}});
  return o;
}
inline const LabelOrder& order_var_lexical() {
  static const LabelOrder o({{Label::Var, Label::Ext},
                             {Label::Var, Label::ExtPrt},
                             {Label::Var, Label::ExtPrv},
                             {Label::Ext, Label::Lex},
                             {Label::ExtPrt, Label::Lex},
                             {Label::ExtPrv, Label::Lex}});
  return o;
}
inline const LabelOrder& order_var_member() {
  static const LabelOrder o({{Label::Var, Label::Ext},
                             {Label::Var, Label::ExtPrt},
                             {Label::Var, Label::ExtPrv}});
  return o;
}

inline Policy policy_of(const DeclData& d) {
  if (const auto* v = std::get_if<VarDecl>(&d)) return v->policy;
  return Policy::pub();
}

}  // namespace detail

/// Candidate comparison under the path order: ended paths shadow
/// continuations, identical steps recurse, and at a LEX/EXT divergence the
/// inherited candidate wins exactly when it is accessible from s_r.
inline Ordering full_path_compare(const ScopeGraph& g, const VariantConfig& cfg,
                                  ScopeId s_r, const QueryCandidate& a,
                                  const QueryCandidate& b) {
  auto accessible = [&](const QueryCandidate& c) {
    return permits(g, cfg, s_r, c.path, detail::policy_of(c.data)) &&
           path_permits(g, cfg, s_r, c.path);
  };
  std::size_t k = 0;
  for (;;) {
    bool a_end = k == a.path.steps.size();
    bool b_end = k == b.path.steps.size();
    if (a_end && b_end) return Ordering::Equivalent;
    if (a_end) return Ordering::Precedes;
    if (b_end) return Ordering::Succeeds;
    const auto& [la, ta] = a.path.steps[k];
    const auto& [lb, tb] = b.path.steps[k];
    if (la == lb && ta == tb) {
      ++k;
      continue;
    }
    if (is_ext_family(la) && lb == Label::Lex)
      return accessible(a) ? Ordering::Precedes : Ordering::Succeeds;
    if (is_ext_family(lb) && la == Label::Lex)
      return accessible(b) ? Ordering::Succeeds : Ordering::Precedes;
    return Ordering::Incomparable;
  }
}

inline CandidateOrder make_var_order(const ScopeGraph& g, const VariantConfig& cfg,
                                     bool member_query) {
  if (cfg.resolution_mode == ResolutionMode::LabelOrder)
    return member_query ? detail::order_var_member() : detail::order_var_lexical();
  const ScopeGraph* gp = &g;
  VariantConfig c = cfg;
  return CustomComparator(
      [gp, c](ScopeId s_r, const QueryCandidate& a, const QueryCandidate& b) {
        return full_path_compare(*gp, c, s_r, a, b);
      });
}

/// T-Var: variable lookup from the reference scope through lexical and
/// extension edges.
inline QueryResult resolve_var_lexical(const ScopeGraph& g, const VariantConfig& cfg,
                                       ScopeId s, const std::string& name) {
  return g.resolve(s, detail::re_var_lexical(cfg.inheritance_modifiers),
                   DataPredicate::is_var(name), make_var_order(g, cfg, false));
}

/// T-Fld: member lookup from the receiver's class scope; accessibility is
/// judged later against the reference scope, not the receiver.
inline QueryResult resolve_var_member(const ScopeGraph& g, const VariantConfig& cfg,
                                      ScopeId receiver_cls, const std::string& name) {
  return g.resolve(receiver_cls, detail::re_var_member(cfg.inheritance_modifiers),
                   DataPredicate::is_var(name), make_var_order(g, cfg, true));
}

namespace detail {

/// Resolves a dotted module name: head via lexical module lookup, each
/// further segment inside the previous module's scope.
inline std::optional<ScopeId> resolve_module_qname(const ScopeGraph& g, ScopeId from,
                                                   const std::string& qname,
                                                   bool* ambiguous = nullptr) {
  static const LabelRegex inner = parse_regex("MOD");
  if (ambiguous) *ambiguous = false;
  std::size_t pos = 0;
  bool first = true;
  ScopeId cur = from;
  while (pos <= qname.size()) {
    std::size_t dot = qname.find('.', pos);
    std::string seg = qname.substr(pos, dot == std::string::npos ? std::string::npos
                                                                 : dot - pos);
    QueryResult r = first ? g.resolve(cur, re_q_mod(), DataPredicate::is_mod(seg),
                                      order_q_mod())
                          : g.resolve(cur, inner, DataPredicate::is_mod(seg), NoOrder{});
    if (r.size() != 1) {
      if (ambiguous && r.size() > 1) *ambiguous = true;
      return std::nullopt;
    }
    cur = std::get<ModDecl>(r[0].data).body;
    first = false;
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return cur;
}

}  // namespace detail

/// Maps a surface modifier keyword to its policy, resolving and validating
/// module arguments from the declaring scope.
inline Policy translate_modifier(const ScopeGraph& g, ScopeId declaring,
                                 const AccKeyword& acc, const VariantConfig& cfg,
                                 std::vector<Diagnostic>* diags = nullptr,
                                 SourceSpan span = {}) {
  using K = AccKeyword::Kind;
  auto diag = [&](Diagnostic::Code c, std::string msg) {
    if (diags) diags->push_back({span, c, std::move(msg), {}, {}});
  };
  auto resolve_args = [&]() {
    std::set<ScopeId> s;
    for (const auto& q : acc.names) {
      auto m = detail::resolve_module_qname(g, declaring, q);
      if (!m) {
        diag(Diagnostic::Code::BadInternalArg, "unresolved module argument '" + q + "'");
        continue;
      }
      if (cfg.internal_args_must_be_ancestors &&
          !enclosing_modules(g, declaring).contains(*m)) {
        diag(Diagnostic::Code::BadInternalArg,
             "module '" + q + "' is not an ancestor of the declaration");
        continue;
      }
      s.insert(*m);
    }
    return s;
  };
  switch (acc.kind) {
    case K::Public:
      return Policy::pub();
    case K::Protected:
      return Policy::prt();
    case K::Private:
      return Policy::prv();
    case K::Internal:
      return Policy::mod(resolve_args());
    case K::ProtectedInternal:
      return Policy::smd(resolve_args());
    case K::PrivateProtected:
      return Policy::smc(resolve_args());
    case K::Hole:
      // Holes are substituted before checking; a leftover hole is permissive.
      return Policy::pub();
  }
  return Policy::pub();
}

namespace detail {

struct ImportSite {
  const Import* node;
  ScopeId scope;  // scope containing the import
};
struct ExtendsSite {
  const ClassDef* cls;
  ScopeId scope;  // class body scope
};
struct FieldSite {
  const Field* field;
  ScopeId scope;  // owning class body scope
};

class Elaborator {
 public:
  Elaborator(const Program& prog, const VariantConfig& cfg) : prog_(prog), cfg_(cfg) {}

  CheckResult run() {
    CheckResult& r = result_;
    // Stage 1: scopes, lexical edges, module/class declarations.
    r.root = r.graph.add_scope("s_0");
    r.graph.add_decl(r.root, Label::ThisM, ScopeData{r.root});
    for (const auto& m : prog_.members) declare_member(m, r.root);
    r.graph.freeze();
    // Stage 2: imports.
    for (const auto& site : imports_) {
      bool amb = false;
      auto m = resolve_module_qname(r.graph, site.scope, site.node->qname, &amb);
      if (!m) {
        diag(site.node->span,
             amb ? Diagnostic::Code::Ambiguous : Diagnostic::Code::Unresolved,
             (amb ? "ambiguous module '" : "unresolved module '") + site.node->qname +
                 "'");
        continue;
      }
      r.graph.thaw();
      r.graph.add_edge(site.scope, Label::Imp, *m);
      r.graph.freeze();
    }
    // Stage 3: extends clauses.
    for (const auto& site : extends_) {
      const auto& ext = *site.cls->extends;
      QueryResult c = r.graph.resolve(site.scope, re_q_cls(),
                                      DataPredicate::is_cls(ext.super), order_q_cls());
      if (c.empty()) {
        diag(ext.span, Diagnostic::Code::Unresolved,
             "unresolved superclass '" + ext.super + "'");
        continue;
      }
      if (c.size() > 1) {
        diag(ext.span, Diagnostic::Code::Ambiguous,
             "ambiguous superclass '" + ext.super + "'");
        continue;
      }
      Label l = Label::Ext;
      if (ext.acc != ExtendsClause::Acc::Public) {
        if (!cfg_.inheritance_modifiers) {
          diag(ext.span, Diagnostic::Code::Unsupported,
               "extends-clause modifier requires inheritance_modifiers");
        } else {
          l = ext.acc == ExtendsClause::Acc::Protected ? Label::ExtPrt : Label::ExtPrv;
        }
      }
      r.graph.thaw();
      r.graph.add_edge(site.scope, l, std::get<ClsDecl>(c[0].data).body);
      r.graph.freeze();
    }
    // Stage 4: field policies, demand-driven typing, variable declarations.
    for (const auto& site : fields_) {
      r.field_policies.emplace(
          site.field->id, translate_modifier(r.graph, site.scope, site.field->acc, cfg_,
                                             &r.diagnostics, site.field->span));
      field_by_node_.emplace(site.field->id, &site);
    }
    typing_graph_ = r.graph;
    typing_graph_.thaw();
    for (const auto& site : fields_)
      typing_graph_.add_decl(site.scope, Label::Var,
                             VarDecl{site.field->name, Type::integer(),
                                     r.field_policies.at(site.field->id),
                                     site.field->id});
    typing_graph_.freeze();
    for (const auto& site : fields_) type_of_field(site);
    r.graph.thaw();
    for (const auto& site : fields_) {
      auto t = r.expr_types.at(site.field->init->id);
      r.graph.add_decl(site.scope, Label::Var,
                       VarDecl{site.field->name, t.value_or(Type::integer()),
                               r.field_policies.at(site.field->id), site.field->id});
    }
    r.graph.freeze();
    // Stage 5: resolve and check every reference.
    for (const auto& site : fields_) check_expr(*site.field->init, site.scope);
    std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                       if (a.span.line != b.span.line) return a.span.line < b.span.line;
                       return a.span.col < b.span.col;
                     });
    return std::move(result_);
  }

 private:
  const Program& prog_;
  VariantConfig cfg_;
  CheckResult result_;
  ScopeGraph typing_graph_;
  std::vector<ImportSite> imports_;
  std::vector<ExtendsSite> extends_;
  std::vector<FieldSite> fields_;
  std::map<NodeId, const FieldSite*> field_by_node_;
  std::set<NodeId> typing_stack_;
  std::set<NodeId> typed_fields_;

  void diag(SourceSpan span, Diagnostic::Code c, std::string msg,
            std::optional<Policy> pol = {}, std::vector<Label> labels = {},
            NodeId node = 0) {
    result_.diagnostics.push_back(
        {span, c, std::move(msg), std::move(pol), std::move(labels), node});
  }

  void declare_member(const Member& m, ScopeId parent) {
    if (const auto* modp = std::get_if<std::shared_ptr<const ModuleDef>>(&m)) {
      const ModuleDef& mod = **modp;
      ScopeId s = result_.graph.add_scope("s_" + mod.name);
      result_.graph.add_edge(s, Label::Lex, parent);
      result_.graph.add_decl(parent, Label::Mod, ModDecl{mod.name, s});
      result_.graph.add_decl(s, Label::ThisM, ScopeData{s});
      result_.module_scopes.emplace(mod.id, s);
      for (const auto& inner : mod.members) declare_member(inner, s);
    } else if (const auto* imp = std::get_if<Import>(&m)) {
      imports_.push_back({imp, parent});
    } else {
      declare_class(*std::get<std::shared_ptr<const ClassDef>>(m), parent);
    }
  }

  void declare_class(const ClassDef& cls, ScopeId parent) {
    ScopeId s = result_.graph.add_scope("s_" + cls.name);
    result_.graph.add_edge(s, Label::Lex, parent);
    result_.graph.add_decl(parent, Label::Cls, ClsDecl{cls.name, s});
    result_.graph.add_decl(s, Label::ThisC, ScopeData{s});
    result_.class_scopes.emplace(cls.id, s);
    if (cls.extends) extends_.push_back({&cls, s});
    for (const auto& m : cls.members) {
      if (const auto* f = std::get_if<Field>(&m))
        fields_.push_back({f, s});
      else
        declare_class(*std::get<std::shared_ptr<const ClassDef>>(m), s);
    }
  }

  // ---- typing (over typing_graph_; resolution failures stay silent and
  // are re-diagnosed in stage 5) ----

  std::optional<Type> type_of_field(const FieldSite& site) {
    NodeId id = site.field->id;
    if (typed_fields_.contains(id)) return result_.expr_types.at(site.field->init->id);
    if (typing_stack_.contains(id)) {
      diag(site.field->span, Diagnostic::Code::CyclicType,
           "cyclic type dependency through field '" + site.field->name + "'");
      return std::nullopt;
    }
    typing_stack_.insert(id);
    std::optional<Type> t = type_expr(*site.field->init, site.scope);
    typing_stack_.erase(id);
    typed_fields_.insert(id);
    return t;
  }

  std::optional<Type> type_expr(const Expr& e, ScopeId scope) {
    std::optional<Type> t = type_expr_inner(e, scope);
    result_.expr_types[e.id] = t;
    return t;
  }

  std::optional<Type> type_expr_inner(const Expr& e, ScopeId scope) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return Type::integer();
      case Expr::Kind::Add: {
        auto l = type_expr(*e.lhs, scope);
        auto r = type_expr(*e.rhs, scope);
        bool ok = true;
        if (l && l->kind != Type::Kind::Int) {
          diag(e.lhs->span, Diagnostic::Code::TypeMismatch, "'+' requires int operands");
          ok = false;
        }
        if (r && r->kind != Type::Kind::Int) {
          diag(e.rhs->span, Diagnostic::Code::TypeMismatch, "'+' requires int operands");
          ok = false;
        }
        if (!l || !r || !ok) return std::nullopt;
        return Type::integer();
      }
      case Expr::Kind::New: {
        QueryResult c = typing_graph_.resolve(scope, detail::re_q_cls(),
                                              DataPredicate::is_cls(e.name),
                                              detail::order_q_cls());
        if (c.size() != 1) return std::nullopt;
        return Type::instance(std::get<ClsDecl>(c[0].data).body);
      }
      case Expr::Kind::Ref: {
        QueryResult c = resolve_var_lexical(typing_graph_, cfg_, scope, e.name);
        if (c.size() != 1) return std::nullopt;
        return type_of_bound_field(std::get<VarDecl>(c[0].data));
      }
      case Expr::Kind::FieldAccess: {
        auto recv = type_expr(*e.lhs, scope);
        if (!recv) return std::nullopt;
        if (recv->kind != Type::Kind::Inst) {
          diag(e.span, Diagnostic::Code::TypeMismatch,
               "field access on a non-class value");
          return std::nullopt;
        }
        QueryResult c = resolve_var_member(typing_graph_, cfg_, recv->cls, e.name);
        if (c.size() != 1) return std::nullopt;
        return type_of_bound_field(std::get<VarDecl>(c[0].data));
      }
    }
    return std::nullopt;
  }

  std::optional<Type> type_of_bound_field(const VarDecl& v) {
    auto it = field_by_node_.find(v.node);
    if (it == field_by_node_.end()) return v.type;  // synthetic declaration
    return type_of_field(*it->second);
  }

  // ---- stage 5: binding and accessibility ----

  void record_binding(const Expr& e, ScopeId ref_scope, const QueryCandidate& c) {
    result_.bindings.emplace(e.id, Binding{e.id, ref_scope, c.path, c.data});
  }

  void check_access(const Expr& e, ScopeId ref_scope, const QueryCandidate& c) {
    Policy pol = detail::policy_of(c.data);
    if (!permits(result_.graph, cfg_, ref_scope, c.path, pol)) {
      diag(e.span, Diagnostic::Code::Inaccessible,
           "'" + e.name + "' with policy " +
               policy_to_string(pol,
                                [&](ScopeId s) { return result_.graph.debug_name(s); }) +
               " is not accessible here",
           pol, c.path.labels(), e.id);
      return;
    }
    if (!path_permits(result_.graph, cfg_, ref_scope, c.path)) {
      diag(e.span, Diagnostic::Code::PathHidden,
           "'" + e.name + "' is hidden by a non-public extension on its path", pol,
           c.path.labels(), e.id);
    }
  }

  void check_expr(const Expr& e, ScopeId scope) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return;
      case Expr::Kind::Add:
        check_expr(*e.lhs, scope);
        check_expr(*e.rhs, scope);
        return;
      case Expr::Kind::New: {
        QueryResult c = result_.graph.resolve(scope, detail::re_q_cls(),
                                              DataPredicate::is_cls(e.name),
                                              detail::order_q_cls());
        if (c.empty())
          diag(e.span, Diagnostic::Code::Unresolved, "unresolved class '" + e.name + "'");
        else if (c.size() > 1)
          diag(e.span, Diagnostic::Code::Ambiguous, "ambiguous class '" + e.name + "'");
        else
          record_binding(e, scope, c[0]);
        return;
      }
      case Expr::Kind::Ref: {
        QueryResult c = resolve_var_lexical(result_.graph, cfg_, scope, e.name);
        if (c.empty())
          diag(e.span, Diagnostic::Code::Unresolved, "unresolved name '" + e.name + "'");
        else if (c.size() > 1)
          diag(e.span, Diagnostic::Code::Ambiguous, "ambiguous name '" + e.name + "'");
        else {
          record_binding(e, scope, c[0]);
          check_access(e, scope, c[0]);
        }
        return;
      }
      case Expr::Kind::FieldAccess: {
        check_expr(*e.lhs, scope);
        auto it = result_.expr_types.find(e.lhs->id);
        if (it == result_.expr_types.end() || !it->second ||
            it->second->kind != Type::Kind::Inst)
          return;  // typing already diagnosed or cascaded
        QueryResult c =
            resolve_var_member(result_.graph, cfg_, it->second->cls, e.name);
        if (c.empty())
          diag(e.span, Diagnostic::Code::Unresolved,
               "no member '" + e.name + "' on receiver");
        else if (c.size() > 1)
          diag(e.span, Diagnostic::Code::Ambiguous, "ambiguous member '" + e.name + "'");
        else {
          record_binding(e, scope, c[0]);
          check_access(e, scope, c[0]);
        }
        return;
      }
    }
  }
};

}  // namespace detail

/// Full pipeline: staged graph construction, typing, binding,
/// accessibility checks.
inline CheckResult elaborate(const Program& prog, const VariantConfig& cfg) {
  return detail::Elaborator(prog, cfg).run();
}

}  // namespace aml
