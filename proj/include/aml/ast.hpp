#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace aml {

using NodeId = std::uint32_t;  // unique per program, 0 = none

struct SourceSpan {
  std::uint32_t line = 0, col = 0;
  std::uint32_t end_line = 0, end_col = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { IntLit, Ref, New, FieldAccess, Add };
  NodeId id = 0;
  SourceSpan span;
  Kind kind = Kind::IntLit;
  long value = 0;     // IntLit
  std::string name;   // Ref / New / FieldAccess member
  ExprPtr lhs, rhs;   // FieldAccess base in lhs; Add uses both
};

/// Surface access modifier; Hole is the synthesis placeholder `?`.
struct AccKeyword {
  enum class Kind {
    Public,
    Internal,
    Protected,
    ProtectedInternal,
    Private,
    PrivateProtected,
    Hole
  };
  Kind kind = Kind::Public;
  std::vector<std::string> names;  // dotted qualified module names
};

struct ClassDef;
struct ModuleDef;

struct Field {
  NodeId id = 0;
  SourceSpan span;
  AccKeyword acc;
  std::string name;
  ExprPtr init;
};

using ClassMember = std::variant<Field, std::shared_ptr<const ClassDef>>;

struct ExtendsClause {
  enum class Acc { Public, Protected, Private };
  Acc acc = Acc::Public;
  std::string super;
  SourceSpan span;
};

struct ClassDef {
  NodeId id = 0;
  SourceSpan span;
  std::string name;
  std::optional<ExtendsClause> extends;
  std::vector<ClassMember> members;
};

struct Import {
  NodeId id = 0;
  SourceSpan span;
  std::string qname;  // dotted
};

using Member = std::variant<std::shared_ptr<const ModuleDef>, Import,
                            std::shared_ptr<const ClassDef>>;

struct ModuleDef {
  NodeId id = 0;
  SourceSpan span;
  std::string name;
  std::vector<Member> members;
};

struct Pragma {
  SourceSpan span;
  std::string key, value;
};

struct Program {
  std::vector<Pragma> pragmas;
  std::vector<Member> members;  // top level admits modules, imports, classes
  NodeId max_node_id = 0;
};

// ---- structural equality, ignoring spans and node ids -------------------

inline bool ast_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name) return false;
  auto sub = [](const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    return ast_equal(*x, *y);
  };
  return sub(a.lhs, b.lhs) && sub(a.rhs, b.rhs);
}

inline bool ast_equal(const AccKeyword& a, const AccKeyword& b) {
  return a.kind == b.kind && a.names == b.names;
}

bool ast_equal(const ClassDef& a, const ClassDef& b);

inline bool ast_equal(const Field& a, const Field& b) {
  if (!ast_equal(a.acc, b.acc) || a.name != b.name) return false;
  if (!a.init || !b.init) return !a.init && !b.init;
  return ast_equal(*a.init, *b.init);
}

inline bool ast_equal(const ClassMember& a, const ClassMember& b) {
  if (a.index() != b.index()) return false;
  if (const auto* f = std::get_if<Field>(&a)) return ast_equal(*f, std::get<Field>(b));
  return ast_equal(*std::get<std::shared_ptr<const ClassDef>>(a),
                   *std::get<std::shared_ptr<const ClassDef>>(b));
}

inline bool ast_equal(const ClassDef& a, const ClassDef& b) {
  if (a.name != b.name) return false;
  if (a.extends.has_value() != b.extends.has_value()) return false;
  if (a.extends &&
      (a.extends->acc != b.extends->acc || a.extends->super != b.extends->super))
    return false;
  if (a.members.size() != b.members.size()) return false;
  for (std::size_t i = 0; i < a.members.size(); ++i)
    if (!ast_equal(a.members[i], b.members[i])) return false;
  return true;
}

bool ast_equal(const ModuleDef& a, const ModuleDef& b);

inline bool ast_equal(const Member& a, const Member& b) {
  if (a.index() != b.index()) return false;
  if (const auto* m = std::get_if<std::shared_ptr<const ModuleDef>>(&a))
    return ast_equal(**m, *std::get<std::shared_ptr<const ModuleDef>>(b));
  if (const auto* i = std::get_if<Import>(&a))
    return i->qname == std::get<Import>(b).qname;
  return ast_equal(*std::get<std::shared_ptr<const ClassDef>>(a),
                   *std::get<std::shared_ptr<const ClassDef>>(b));
}

inline bool ast_equal(const ModuleDef& a, const ModuleDef& b) {
  if (a.name != b.name || a.members.size() != b.members.size()) return false;
  for (std::size_t i = 0; i < a.members.size(); ++i)
    if (!ast_equal(a.members[i], b.members[i])) return false;
  return true;
}

inline bool ast_equal(const Program& a, const Program& b) {
  if (a.members.size() != b.members.size()) return false;
  for (std::size_t i = 0; i < a.members.size(); ++i)
    if (!ast_equal(a.members[i], b.members[i])) return false;
  if (a.pragmas.size() != b.pragmas.size()) return false;
  for (std::size_t i = 0; i < a.pragmas.size(); ++i)
    if (a.pragmas[i].key != b.pragmas[i].key || a.pragmas[i].value != b.pragmas[i].value)
      return false;
  return true;
}

}  // namespace aml
