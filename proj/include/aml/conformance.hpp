#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aml/ast.hpp"
#include "aml/checker.hpp"
#include "aml/config.hpp"
#include "aml/parser.hpp"

namespace aml {

enum class Inheritance { Same, Unrelated, RefInheritsDef, DefInheritsRef };
enum class ModulePos { Same, Parent, Sibling, Child };
enum class Nesting { Toplevel, RefInDef, DefInRef, SharedEnclosing };
enum class Receiver { Lexical, DefInstance, SubclassInstance };

inline const char* to_string(Inheritance v) {
  switch (v) {
    case Inheritance::Same: return "same";
    case Inheritance::Unrelated: return "unrelated";
    case Inheritance::RefInheritsDef: return "refinhdef";
    case Inheritance::DefInheritsRef: return "definhref";
  }
  return "?";
}
inline const char* to_string(ModulePos v) {
  switch (v) {
    case ModulePos::Same: return "same";
    case ModulePos::Parent: return "parent";
    case ModulePos::Sibling: return "sibling";
    case ModulePos::Child: return "child";
  }
  return "?";
}
inline const char* to_string(Nesting v) {
  switch (v) {
    case Nesting::Toplevel: return "toplevel";
    case Nesting::RefInDef: return "refindef";
    case Nesting::DefInRef: return "definref";
    case Nesting::SharedEnclosing: return "sharedenc";
  }
  return "?";
}
inline const char* to_string(Receiver v) {
  switch (v) {
    case Receiver::Lexical: return "lexical";
    case Receiver::DefInstance: return "definstance";
    case Receiver::SubclassInstance: return "subinstance";
  }
  return "?";
}

/// One entry of the systematic matrix: a tiny program with a definition
/// class Def holding field x and a referencing class Ref reading it.
struct TestCase {
  std::string id;
  Inheritance inheritance;
  ModulePos module_pos;
  Nesting nesting;
  Receiver receiver;
  std::string modifier_name;  // dimension tag, e.g. "protint"
  std::string modifier_text;  // concrete AML keyword, e.g. "protected internal(M)"
  std::string source;
  bool expected_accept = false;
};

enum class Target { Java, Csharp, Rust, Aml };

inline const char* to_string(Target t) {
  switch (t) {
    case Target::Java: return "java";
    case Target::Csharp: return "csharp";
    case Target::Rust: return "rust";
    case Target::Aml: return "aml";
  }
  return "?";
}

inline std::optional<Target> target_by_name(std::string_view s) {
  if (s == "java") return Target::Java;
  if (s == "csharp") return Target::Csharp;
  if (s == "rust") return Target::Rust;
  if (s == "aml") return Target::Aml;
  return std::nullopt;
}

inline VariantConfig target_config(Target t) {
  switch (t) {
    case Target::Java: return preset_java();
    case Target::Csharp: return preset_csharp();
    case Target::Rust: return preset_rust_modules();
    case Target::Aml: return preset_csharp();
  }
  return preset_csharp();
}

namespace detail {

struct CaseModifier {
  std::string tag;                 // dimension value name
  AccKeyword::Kind kind;
  enum class Arg { None, Declaring, Ancestor } arg = Arg::None;
};

inline std::vector<CaseModifier> target_modifiers(Target t) {
  using K = AccKeyword::Kind;
  using A = CaseModifier::Arg;
  switch (t) {
    case Target::Java:
      return {{"public", K::Public},
              {"private", K::Private},
              {"internal", K::Internal, A::Declaring},
              {"protint", K::ProtectedInternal, A::Declaring}};
    case Target::Csharp:
    case Target::Aml:
      return {{"public", K::Public},
              {"private", K::Private},
              {"protected", K::Protected},
              {"internal", K::Internal, A::Declaring},
              {"protint", K::ProtectedInternal, A::Declaring},
              {"privprot", K::PrivateProtected, A::Declaring}};
    case Target::Rust:
      return {{"public", K::Public},
              {"internal-decl", K::Internal, A::Declaring},
              {"internal-anc", K::Internal, A::Ancestor}};
  }
  return {};
}

/// Dimension-level exclusions: (1) impossible combinations, (2) target
/// feature gaps, (3) otherwise-invalid programs, (4) references that
/// cannot bind (re-checked semantically after generation).
inline bool excluded(Target t, Inheritance inh, ModulePos mp, Nesting ns, Receiver rc,
                     const CaseModifier& mod) {
  // (1) impossible: one class / nested classes live in a single module.
  if (inh == Inheritance::Same &&
      (mp != ModulePos::Same || ns != Nesting::Toplevel))
    return true;
  if (ns != Nesting::Toplevel && mp != ModulePos::Same) return true;
  // nested-class pruning: one module, restrictive modifiers only.
  if (ns != Nesting::Toplevel && mod.kind != AccKeyword::Kind::Private &&
      mod.kind != AccKeyword::Kind::Protected &&
      mod.kind != AccKeyword::Kind::ProtectedInternal)
    return true;
  // (3) otherwise invalid: a class extending a class nested inside it.
  if (inh == Inheritance::RefInheritsDef && ns == Nesting::DefInRef) return true;
  if (inh == Inheritance::DefInheritsRef && ns == Nesting::RefInDef) return true;
  // (4) lexical references bind only within/under the defining class.
  if (rc == Receiver::Lexical && inh != Inheritance::Same &&
      inh != Inheritance::RefInheritsDef && ns != Nesting::RefInDef)
    return true;
  switch (t) {
    case Target::Java:
      // inner classes with inheritance between Def and Ref are pruned.
      if (ns != Nesting::Toplevel && inh != Inheritance::Unrelated) return true;
      break;
    case Target::Csharp:
      // (2) C# nested classes have no enclosing instance to read from.
      if (rc == Receiver::Lexical && ns == Nesting::RefInDef) return true;
      // (3) Def extending Ref across projects creates a reference cycle.
      if (inh == Inheritance::DefInheritsRef && mp != ModulePos::Same) return true;
      break;
    case Target::Rust:
      // (2) no classes/inheritance; accesses go through a function param.
      if (inh != Inheritance::Same && inh != Inheritance::Unrelated) return true;
      if (ns != Nesting::Toplevel) return true;
      if (rc != Receiver::DefInstance) return true;
      break;
    case Target::Aml:
      break;
  }
  return false;
}

inline std::string indent_block(const std::string& block, int levels) {
  std::string pad(static_cast<std::size_t>(levels) * 2, ' ');
  std::string out;
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out += pad + line;
    out += "\n";
  }
  return out;
}

inline std::string modifier_text(const CaseModifier& mod,
                                 const std::string& declaring_module,
                                 const std::string& ancestor_module) {
  std::string arg;
  if (mod.arg == CaseModifier::Arg::Declaring) arg = declaring_module;
  if (mod.arg == CaseModifier::Arg::Ancestor) arg = ancestor_module;
  switch (mod.kind) {
    case AccKeyword::Kind::Public: return "public";
    case AccKeyword::Kind::Private: return "private";
    case AccKeyword::Kind::Protected: return "protected";
    case AccKeyword::Kind::Internal: return "internal(" + arg + ")";
    case AccKeyword::Kind::ProtectedInternal: return "protected internal(" + arg + ")";
    case AccKeyword::Kind::PrivateProtected: return "private protected(" + arg + ")";
    case AccKeyword::Kind::Hole: return "?";
  }
  return "public";
}

/// Assembles the AML source for one dimension combination. The modifier
/// text is a placeholder token replaced afterwards, so the same builder
/// also produces the all-public bindability probe.
inline std::string build_case_source(Inheritance inh, ModulePos mp, Nesting ns,
                                     Receiver rc, const std::string& mod_text,
                                     bool wrap_root) {
  std::string access;
  switch (rc) {
    case Receiver::Lexical: access = "x"; break;
    case Receiver::DefInstance: access = "new Def().x"; break;
    case Receiver::SubclassInstance: access = "new Sub().x"; break;
  }
  bool need_sub = rc == Receiver::SubclassInstance;
  std::string sub_cls = "class Sub : public Def {\n}\n";

  std::string def_ext =
      inh == Inheritance::DefInheritsRef ? " : public Ref" : "";
  std::string ref_ext =
      inh == Inheritance::RefInheritsDef ? " : public Def" : "";

  // def_block lives in Def's module; ref_block in Ref's module.
  std::string def_block, ref_block;
  if (inh == Inheritance::Same) {
    def_block = "class Def {\n  " + mod_text + " var x = 1\n  public var y = " +
                access + "\n}\n";
    if (need_sub) def_block += sub_cls;
    ref_block.clear();
  } else {
    std::string def_cls_open = "class Def" + def_ext + " {\n";
    std::string ref_cls = "class Ref" + ref_ext + " {\n  public var y = " + access +
                          "\n}\n";
    switch (ns) {
      case Nesting::Toplevel:
        def_block = def_cls_open + "  " + mod_text + " var x = 1\n}\n";
        if (need_sub) def_block += sub_cls;
        ref_block = ref_cls;
        break;
      case Nesting::RefInDef:
        def_block = def_cls_open + "  " + mod_text + " var x = 1\n" +
                    indent_block(ref_cls, 1) + "}\n";
        if (need_sub) def_block += sub_cls;
        ref_block.clear();
        break;
      case Nesting::DefInRef:
        def_block = "class Ref" + ref_ext + " {\n" +
                    indent_block("class Def" + def_ext + " {\n  " + mod_text +
                                     " var x = 1\n}\n" + (need_sub ? sub_cls : ""),
                                 1) +
                    "  public var y = " + access + "\n}\n";
        ref_block.clear();
        break;
      case Nesting::SharedEnclosing:
        def_block = "class Outer {\n" +
                    indent_block(def_cls_open + "  " + mod_text + " var x = 1\n}\n" +
                                     (need_sub ? sub_cls : "") + ref_cls,
                                 1) +
                    "}\n";
        ref_block.clear();
        break;
    }
  }

  std::string body;
  if (ref_block.empty()) {
    body = "module M {\n" + indent_block(def_block, 1) + "}\n";
  } else {
    switch (mp) {
      case ModulePos::Same:
        body = "module M {\n" + indent_block(def_block + ref_block, 1) + "}\n";
        break;
      case ModulePos::Parent:
        body = "module M {\n  module D {\n" + indent_block(def_block, 2) +
               "  }\n  import D\n" + indent_block(ref_block, 1) + "}\n";
        break;
      case ModulePos::Sibling:
        body = "module M {\n  module D {\n" + indent_block(def_block, 2) +
               "  }\n  module R {\n    import D\n" + indent_block(ref_block, 2) +
               "  }\n}\n";
        break;
      case ModulePos::Child:
        body = "module M {\n" + indent_block(def_block, 1) + "  module C {\n" +
               indent_block(ref_block, 2) + "  }\n}\n";
        break;
    }
  }
  if (wrap_root) body = "module Root {\n" + indent_block(body, 1) + "}\n";
  return body;
}

inline std::string declaring_module_name(ModulePos mp, Nesting ns, Inheritance inh) {
  // Def sits in module D only for toplevel parent/sibling splits.
  bool split = ns == Nesting::Toplevel && inh != Inheritance::Same &&
               (mp == ModulePos::Parent || mp == ModulePos::Sibling);
  return split ? "D" : "M";
}

}  // namespace detail

/// The target's applicable dimension product, minus the exclusion rules;
/// each surviving case carries its frozen checker verdict.
inline std::vector<TestCase> generate_matrix(Target target) {
  using namespace detail;
  VariantConfig cfg = target_config(target);
  bool wrap_root = target == Target::Rust;
  std::vector<TestCase> cases;
  int index = 0;
  for (Inheritance inh : {Inheritance::Same, Inheritance::Unrelated,
                          Inheritance::RefInheritsDef, Inheritance::DefInheritsRef})
    for (ModulePos mp :
         {ModulePos::Same, ModulePos::Parent, ModulePos::Sibling, ModulePos::Child})
      for (Nesting ns : {Nesting::Toplevel, Nesting::RefInDef, Nesting::DefInRef,
                         Nesting::SharedEnclosing})
        for (Receiver rc :
             {Receiver::Lexical, Receiver::DefInstance, Receiver::SubclassInstance})
          for (const CaseModifier& mod : target_modifiers(target)) {
            if (excluded(target, inh, mp, ns, rc, mod)) continue;
            std::string declaring = declaring_module_name(mp, ns, inh);
            std::string mod_text = modifier_text(mod, declaring, "Root");
            std::string source =
                build_case_source(inh, mp, ns, rc, mod_text, wrap_root);
            // (4) semantic bindability probe: the all-public twin must be clean.
            std::string probe_src =
                build_case_source(inh, mp, ns, rc, "public", wrap_root);
            CheckResult probe = elaborate(parse_program(probe_src), cfg);
            if (probe.has_errors()) continue;
            CheckResult check = elaborate(parse_program(source), cfg);
            TestCase tc;
            char num[16];
            std::snprintf(num, sizeof num, "%03d", ++index);
            tc.id = std::string(to_string(target)) + "-" + num + "-" +
                    to_string(inh) + "-" + to_string(mp) + "-" + to_string(ns) + "-" +
                    to_string(rc) + "-" + mod.tag;
            tc.inheritance = inh;
            tc.module_pos = mp;
            tc.nesting = ns;
            tc.receiver = rc;
            tc.modifier_name = mod.tag;
            tc.modifier_text = mod_text;
            tc.source = source;
            tc.expected_accept = !check.has_errors();
            cases.push_back(std::move(tc));
          }
  return cases;
}

/// Deterministic golden manifest: dimensions, verdicts, and full sources.
inline std::string manifest_text(const std::vector<TestCase>& cases) {
  std::string out;
  for (const TestCase& c : cases) {
    out += "case " + c.id + "\n";
    out += std::string("dims inheritance=") + to_string(c.inheritance) +
           " module=" + to_string(c.module_pos) + " nesting=" + to_string(c.nesting) +
           " receiver=" + to_string(c.receiver) + " modifier=" + c.modifier_name + "\n";
    out += std::string("expect ") + (c.expected_accept ? "Accept" : "Reject") + "\n";
    out += "--- aml\n" + c.source + "--- end\n\n";
  }
  return out;
}

/// Companion test-suite format: one block per case with an analysis
/// expectation and a target-compatibility tag.
inline std::string spt_text(const std::vector<TestCase>& cases, Target target) {
  std::string out;
  for (const TestCase& c : cases) {
    out += "test " + c.id + " [[\n" + c.source + "]] analysis " +
           (c.expected_accept ? "succeeds" : "fails") + "\n" +
           to_string(target) + "-compat\n\n";
  }
  return out;
}

// ------------------------- translation ----------------------------------

struct TranslationResult {
  bool unsupported = false;
  std::string reason;
  std::map<std::string, std::string> files;  // relative path -> contents
  std::string entry;  // build entry point (directory or file), if relevant

  static TranslationResult no(std::string why) {
    TranslationResult r;
    r.unsupported = true;
    r.reason = std::move(why);
    return r;
  }
};

namespace detail {

/// Lexical module tree over the AST, for qualified-name resolution during
/// translation.
struct ModNode {
  std::string name;
  std::vector<std::string> path;  // segments from the root
  ModNode* parent = nullptr;
  std::vector<std::unique_ptr<ModNode>> children;
  std::vector<const ClassDef*> classes;
  std::vector<std::string> imports;  // raw qnames

  std::string dotted() const {
    std::string s;
    for (const auto& seg : path) {
      if (!s.empty()) s += ".";
      s += seg;
    }
    return s;
  }
};

inline void build_mod_tree(const std::vector<Member>& members, ModNode& node) {
  for (const auto& m : members) {
    if (const auto* mod = std::get_if<std::shared_ptr<const ModuleDef>>(&m)) {
      auto child = std::make_unique<ModNode>();
      child->name = (*mod)->name;
      child->path = node.path;
      child->path.push_back((*mod)->name);
      child->parent = &node;
      build_mod_tree((*mod)->members, *child);
      node.children.push_back(std::move(child));
    } else if (const auto* imp = std::get_if<Import>(&m)) {
      node.imports.push_back(imp->qname);
    } else {
      node.classes.push_back(std::get<std::shared_ptr<const ClassDef>>(m).get());
    }
  }
}

inline ModNode* find_child(ModNode& n, const std::string& name) {
  for (auto& c : n.children)
    if (c->name == name) return c.get();
  return nullptr;
}

/// Mirrors the lexical module query: nearest enclosing scope declaring the
/// first segment, then descend.
inline ModNode* resolve_mod_qname(ModNode* from, const std::string& qname) {
  std::size_t pos = 0, dot = qname.find('.');
  std::string head = qname.substr(0, dot);
  ModNode* cur = nullptr;
  for (ModNode* s = from; s; s = s->parent)
    if ((cur = find_child(*s, head))) break;
  while (cur && dot != std::string::npos) {
    pos = dot + 1;
    dot = qname.find('.', pos);
    cur = find_child(*cur, qname.substr(pos, dot == std::string::npos
                                                 ? std::string::npos
                                                 : dot - pos));
  }
  return cur;
}

/// Nearest module (lexically, then via imports) declaring a class of this
/// name; good enough for the shapes the matrix emits.
inline ModNode* find_class_module(ModNode* from, const std::string& cls,
                                  const ClassDef** out_cls = nullptr) {
  for (ModNode* s = from; s; s = s->parent) {
    for (const ClassDef* c : s->classes)
      if (c->name == cls) {
        if (out_cls) *out_cls = c;
        return s;
      }
    for (const auto& q : s->imports) {
      ModNode* m = resolve_mod_qname(s, q);
      if (!m) continue;
      for (const ClassDef* c : m->classes)
        if (c->name == cls) {
          if (out_cls) *out_cls = c;
          return m;
        }
    }
  }
  return nullptr;
}

inline bool is_method_field(const Field& f) {
  return f.init->kind != Expr::Kind::IntLit;
}

/// Expression emission shared by the Java and C# backends; fields whose
/// initializers are non-literal are emitted as methods, so accesses to
/// them become calls.
inline std::optional<std::string> emit_expr_javaish(
    const Expr& e, const std::map<std::string, bool>& method_fields) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      return std::to_string(e.value);
    case Expr::Kind::Ref: {
      auto it = method_fields.find(e.name);
      return e.name + (it != method_fields.end() && it->second ? "()" : "");
    }
    case Expr::Kind::New:
      return "new " + e.name + "()";
    case Expr::Kind::FieldAccess: {
      auto base = emit_expr_javaish(*e.lhs, method_fields);
      if (!base) return std::nullopt;
      auto it = method_fields.find(e.name);
      return *base + "." + e.name +
             (it != method_fields.end() && it->second ? "()" : "");
    }
    case Expr::Kind::Add: {
      auto l = emit_expr_javaish(*e.lhs, method_fields);
      auto r = emit_expr_javaish(*e.rhs, method_fields);
      if (!l || !r) return std::nullopt;
      return *l + " + " + *r;
    }
  }
  return std::nullopt;
}

inline void collect_method_fields(const ClassDef& cls,
                                  std::map<std::string, bool>& out) {
  for (const auto& m : cls.members) {
    if (const auto* f = std::get_if<Field>(&m))
      out[f->name] = is_method_field(*f);
    else
      collect_method_fields(*std::get<std::shared_ptr<const ClassDef>>(m), out);
  }
}

// ---- Java ----

inline std::optional<std::string> java_modifier(const AccKeyword& acc, ModNode* declaring,
                                                ModNode* root, std::string* why) {
  using K = AccKeyword::Kind;
  switch (acc.kind) {
    case K::Public:
      return "public ";
    case K::Private:
      return "private ";
    case K::Internal:
      if (acc.names.size() == 1 &&
          resolve_mod_qname(declaring, acc.names[0]) == declaring)
        return "";  // package-private
      *why = "internal beyond the declaring package has no Java keyword";
      return std::nullopt;
    case K::ProtectedInternal:
      if (acc.names.size() == 1 &&
          resolve_mod_qname(declaring, acc.names[0]) == declaring)
        return "protected ";
      *why = "protected internal beyond the declaring package has no Java keyword";
      return std::nullopt;
    case K::Protected:
      *why = "Java protected also grants package access; no exact keyword";
      return std::nullopt;
    case K::PrivateProtected:
      *why = "Java does not support private protected";
      return std::nullopt;
    case K::Hole:
      *why = "modifier hole";
      return std::nullopt;
  }
  return std::nullopt;
}

inline bool java_emit_class(const ClassDef& cls, ModNode* mod, ModNode* root,
                            const std::map<std::string, bool>& method_fields,
                            int depth, std::string& out, std::string* why) {
  std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  out += pad + "public class " + cls.name;
  if (cls.extends) {
    if (cls.extends->acc != ExtendsClause::Acc::Public) {
      *why = "Java has no extends-clause access modifiers";
      return false;
    }
    out += " extends " + cls.extends->super;
  }
  out += " {\n";
  for (const auto& m : cls.members) {
    if (const auto* f = std::get_if<Field>(&m)) {
      auto vis = java_modifier(f->acc, mod, root, why);
      if (!vis) return false;
      auto expr = emit_expr_javaish(*f->init, method_fields);
      if (!expr) {
        *why = "expression not translatable";
        return false;
      }
      if (is_method_field(*f))
        out += pad + "    " + *vis + "int " + f->name + "() { return " + *expr +
               "; }\n";
      else
        out += pad + "    " + *vis + "int " + f->name + " = " + *expr + ";\n";
    } else {
      const auto& nested = std::get<std::shared_ptr<const ClassDef>>(m);
      if (!java_emit_class(*nested, mod, root, method_fields, depth + 1, out, why))
        return false;
    }
  }
  out += pad + "}\n";
  return true;
}

// ---- C# ----

inline std::optional<std::string> csharp_modifier(const AccKeyword& acc,
                                                  ModNode* declaring, std::string* why) {
  using K = AccKeyword::Kind;
  auto arg_is_declaring = [&]() {
    return acc.names.size() == 1 &&
           resolve_mod_qname(declaring, acc.names[0]) == declaring;
  };
  switch (acc.kind) {
    case K::Public:
      return "public ";
    case K::Private:
      return "private ";
    case K::Protected:
      return "protected ";
    case K::Internal:
      if (arg_is_declaring()) return "internal ";
      *why = "internal beyond the declaring assembly has no C# keyword";
      return std::nullopt;
    case K::ProtectedInternal:
      if (arg_is_declaring()) return "protected internal ";
      *why = "protected internal beyond the declaring assembly has no C# keyword";
      return std::nullopt;
    case K::PrivateProtected:
      if (arg_is_declaring()) return "private protected ";
      *why = "private protected beyond the declaring assembly has no C# keyword";
      return std::nullopt;
    case K::Hole:
      *why = "modifier hole";
      return std::nullopt;
  }
  return std::nullopt;
}

inline bool csharp_emit_class(const ClassDef& cls, ModNode* mod,
                              const std::map<std::string, bool>& method_fields,
                              int depth, std::string& out, std::string* why) {
  std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  out += pad + "public class " + cls.name;
  if (cls.extends) {
    if (cls.extends->acc != ExtendsClause::Acc::Public) {
      *why = "C# has no extends-clause access modifiers";
      return false;
    }
    out += " : " + cls.extends->super;
  }
  out += " {\n";
  for (const auto& m : cls.members) {
    if (const auto* f = std::get_if<Field>(&m)) {
      auto vis = csharp_modifier(f->acc, mod, why);
      if (!vis) return false;
      auto expr = emit_expr_javaish(*f->init, method_fields);
      if (!expr) {
        *why = "expression not translatable";
        return false;
      }
      if (is_method_field(*f))
        out += pad + "    " + *vis + "int " + f->name + "() { return " + *expr +
               "; }\n";
      else
        out += pad + "    " + *vis + "int " + f->name + " = " + *expr + ";\n";
    } else {
      const auto& nested = std::get<std::shared_ptr<const ClassDef>>(m);
      if (!csharp_emit_class(*nested, mod, method_fields, depth + 1, out, why))
        return false;
    }
  }
  out += pad + "}\n";
  return true;
}

// ---- Rust ----

inline std::string rust_mod_path(const ModNode& m) {
  std::string p = "crate";
  for (const auto& seg : m.path) p += "::" + seg;
  return p;
}

inline bool rust_emit_module(const ModNode& mod, int depth, std::string& out,
                             std::string* why) {
  std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  for (const ClassDef* cls : mod.classes) {
    if (cls->extends) {
      *why = "Rust has no inheritance";
      return false;
    }
    std::string struct_fields, fns;
    for (const auto& m : cls->members) {
      const auto* f = std::get_if<Field>(&m);
      if (!f) {
        *why = "Rust translation has no nested classes";
        return false;
      }
      if (!is_method_field(*f)) {
        std::string vis;
        switch (f->acc.kind) {
          case AccKeyword::Kind::Public:
            vis = "pub ";
            break;
          case AccKeyword::Kind::Internal: {
            if (f->acc.names.size() != 1) {
              *why = "Rust pub(in ...) takes exactly one module";
              return false;
            }
            ModNode* target = resolve_mod_qname(const_cast<ModNode*>(&mod),
                                                f->acc.names[0]);
            if (!target) {
              *why = "unresolved module argument";
              return false;
            }
            // pub(in ...) demands an ancestor of the declaring module.
            bool ancestor = false;
            for (const ModNode* s = &mod; s; s = s->parent)
              if (s == target) ancestor = true;
            if (!ancestor) {
              *why = "Rust pub(in ...) only accepts ancestor modules";
              return false;
            }
            vis = "pub(in " + rust_mod_path(*target) + ") ";
            break;
          }
          default:
            *why = "modifier has no Rust visibility equivalent";
            return false;
        }
        struct_fields += pad + "        " + vis + f->name + ": i32,\n";
      } else {
        // accessor field: a function taking the receiver by reference
        const Expr& e = *f->init;
        if (e.kind != Expr::Kind::FieldAccess || e.lhs->kind != Expr::Kind::New) {
          *why = "only receiver field accesses translate to Rust";
          return false;
        }
        ModNode* recv_mod =
            find_class_module(const_cast<ModNode*>(&mod), e.lhs->name);
        if (!recv_mod) {
          *why = "unresolved receiver class";
          return false;
        }
        fns += pad + "    pub fn " + cls->name + "_" + f->name + "(r: &" +
               rust_mod_path(*recv_mod) + "::" + e.lhs->name + ") -> i32 { r." +
               e.name + " }\n";
      }
    }
    if (!struct_fields.empty())
      out += pad + "    pub struct " + cls->name + " {\n" + struct_fields + pad +
             "    }\n";
    else if (fns.empty())
      out += pad + "    pub struct " + cls->name + " {}\n";
    out += fns;
  }
  for (const auto& child : mod.children) {
    out += pad + "    pub mod " + child->name + " {\n";
    if (!rust_emit_module(*child, depth + 1, out, why)) return false;
    out += pad + "    }\n";
  }
  return true;
}

}  // namespace detail

/// AML→target source emission; Unsupported exactly when the program uses
/// a feature the target cannot express.
inline TranslationResult translate(const Program& prog, Target target) {
  using namespace detail;
  ModNode root;
  build_mod_tree(prog.members, root);
  TranslationResult result;
  std::string why;

  if (target == Target::Aml)
    return TranslationResult::no("aml is not an external translation target");

  if (target == Target::Rust) {
    std::string body;
    if (!root.classes.empty())
      return TranslationResult::no("Rust translation requires module-wrapped classes");
    for (const auto& child : root.children) {
      body += "pub mod " + child->name + " {\n";
      if (!rust_emit_module(*child, 0, body, &why)) return TranslationResult::no(why);
      body += "}\n";
    }
    result.files["lib.rs"] = body;
    result.entry = "lib.rs";
    return result;
  }

  // Java / C#: walk every module, one file per top-level class.
  std::vector<ModNode*> mods;
  std::vector<ModNode*> queue{&root};
  while (!queue.empty()) {
    ModNode* m = queue.back();
    queue.pop_back();
    mods.push_back(m);
    for (auto& c : m->children) queue.push_back(c.get());
  }
  std::sort(mods.begin(), mods.end(),
            [](ModNode* a, ModNode* b) { return a->path < b->path; });

  std::map<std::string, bool> method_fields;
  for (ModNode* m : mods)
    for (const ClassDef* c : m->classes) collect_method_fields(*c, method_fields);

  if (target == Target::Java) {
    for (ModNode* m : mods) {
      if (m->classes.empty()) continue;
      if (m->path.empty())
        return TranslationResult::no("top-level classes would land in Java's default package");
      std::string pkg = m->dotted();
      std::string dir;
      for (const auto& seg : m->path) dir += seg + "/";
      std::string header = "package " + pkg + ";\n";
      // lexical visibility of enclosing packages
      for (const ModNode* anc = m->parent; anc && !anc->path.empty(); anc = anc->parent)
        header += "import " + anc->dotted() + ".*;\n";
      for (const auto& q : m->imports) {
        ModNode* t = resolve_mod_qname(m, q);
        if (!t) return TranslationResult::no("unresolved import '" + q + "'");
        header += "import " + t->dotted() + ".*;\n";
      }
      for (const ClassDef* cls : m->classes) {
        std::string body = header + "\n";
        if (!java_emit_class(*cls, m, &root, method_fields, 0, body, &why))
          return TranslationResult::no(why);
        result.files[dir + cls->name + ".java"] = body;
      }
    }
    result.entry = ".";
    return result;
  }

  // C#: one project per module carrying classes, referencing ancestors and
  // imports.
  std::string entry_proj;
  for (ModNode* m : mods) {
    if (m->classes.empty()) continue;
    if (m->path.empty())
      return TranslationResult::no("top-level classes need an enclosing module/project");
    std::string proj = m->dotted();
    std::set<std::string> deps;
    for (const ModNode* anc = m->parent; anc && !anc->path.empty(); anc = anc->parent)
      if (!anc->classes.empty()) deps.insert(anc->dotted());
    for (const auto& q : m->imports) {
      ModNode* t = resolve_mod_qname(m, q);
      if (!t) return TranslationResult::no("unresolved import '" + q + "'");
      if (!t->classes.empty()) deps.insert(t->dotted());
    }
    std::string csproj =
        "<Project Sdk=\"Microsoft.NET.Sdk\">\n"
        "  <PropertyGroup>\n"
        "    <TargetFramework>net8.0</TargetFramework>\n"
        "    <Nullable>disable</Nullable>\n"
        "    <AssemblyName>" + proj + "</AssemblyName>\n"
        "  </PropertyGroup>\n"
        "  <ItemGroup>\n";
    for (const auto& d : deps)
      csproj += "    <ProjectReference Include=\"../" + d + "/" + d + ".csproj\" />\n";
    csproj += "  </ItemGroup>\n</Project>\n";
    result.files[proj + "/" + proj + ".csproj"] = csproj;
    std::string body = "namespace " + proj + ";\n";
    for (const auto& d : deps) body += "using " + d + ";\n";
    body += "\n";
    bool has_ref = false;
    for (const ClassDef* cls : m->classes) {
      if (!csharp_emit_class(*cls, m, method_fields, 0, body, &why))
        return TranslationResult::no(why);
      if (cls->name == "Ref" || cls->name == "Outer") has_ref = true;
    }
    result.files[proj + "/Classes.cs"] = body;
    if (has_ref || entry_proj.empty()) entry_proj = proj;
  }
  result.entry = entry_proj + "/" + entry_proj + ".csproj";
  return result;
}

// ------------------------ differential lane ------------------------------

struct CaseOutcome {
  std::string id;
  enum class Status { Pass, Fail, SkipUnsupported, SkipGolden } status;
  std::string detail;
};

struct DifferentialReport {
  std::vector<CaseOutcome> outcomes;
  std::size_t passed = 0, failed = 0, skipped = 0;
  bool compiler_available = false;
};

namespace detail {

inline std::string compiler_command(Target t) {
  const char* env = nullptr;
  std::string fallback;
  switch (t) {
    case Target::Java:
      env = std::getenv("AMLC_JAVAC");
      fallback = "javac";
      break;
    case Target::Csharp:
      env = std::getenv("AMLC_DOTNET");
      fallback = "dotnet";
      break;
    case Target::Rust:
      env = std::getenv("AMLC_RUSTC");
      fallback = "rustc";
      break;
    case Target::Aml:
      return "";
  }
  return env && *env ? env : fallback;
}

inline bool command_exists(const std::string& cmd) {
  std::string probe = "command -v " + cmd + " >/dev/null 2>&1";
  return std::system(probe.c_str()) == 0;
}

}  // namespace detail

/// Translates and compiles each case, comparing compiler success with the
/// frozen verdict; degrades to golden-only skips when the compiler is
/// missing.
inline DifferentialReport run_differential(const std::vector<TestCase>& cases,
                                           Target target,
                                           const std::filesystem::path& workdir) {
  namespace fs = std::filesystem;
  DifferentialReport report;
  std::string compiler = detail::compiler_command(target);
  report.compiler_available =
      !compiler.empty() && detail::command_exists(compiler);

  for (const TestCase& c : cases) {
    Program prog = parse_program(c.source);
    TranslationResult tr = translate(prog, target);
    if (tr.unsupported) {
      report.outcomes.push_back(
          {c.id, CaseOutcome::Status::SkipUnsupported, tr.reason});
      ++report.skipped;
      continue;
    }
    if (!report.compiler_available) {
      report.outcomes.push_back({c.id, CaseOutcome::Status::SkipGolden,
                                 "compiler '" + compiler + "' not found"});
      ++report.skipped;
      continue;
    }
    fs::path dir = workdir / c.id;
    fs::create_directories(dir);
    for (const auto& [rel, text] : tr.files) {
      fs::path p = dir / rel;
      fs::create_directories(p.parent_path());
      std::ofstream(p) << text;
    }
    std::string cmd;
    switch (target) {
      case Target::Java: {
        cmd = "cd '" + dir.string() + "' && " + compiler + " ";
        for (const auto& [rel, _] : tr.files) cmd += "'" + rel + "' ";
        break;
      }
      case Target::Csharp:
        cmd = "cd '" + dir.string() + "' && " + compiler + " build '" + tr.entry +
              "' -nologo -v q";
        break;
      case Target::Rust:
        cmd = "cd '" + dir.string() + "' && " + compiler +
              " --edition 2021 --crate-type lib lib.rs";
        break;
      case Target::Aml:
        continue;
    }
    cmd += " >compile.out 2>&1";
    bool compiled = std::system(cmd.c_str()) == 0;
    if (compiled == c.expected_accept) {
      report.outcomes.push_back({c.id, CaseOutcome::Status::Pass, ""});
      ++report.passed;
    } else {
      std::ifstream log(dir / "compile.out");
      std::stringstream buf;
      buf << log.rdbuf();
      report.outcomes.push_back({c.id, CaseOutcome::Status::Fail, buf.str()});
      ++report.failed;
    }
  }
  return report;
}

}  // namespace aml
