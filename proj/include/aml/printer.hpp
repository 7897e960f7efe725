#pragma once

#include <string>

#include "aml/ast.hpp"

namespace aml {

namespace detail {

inline void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      out += std::to_string(e.value);
      break;
    case Expr::Kind::Ref:
      out += e.name;
      break;
    case Expr::Kind::New:
      out += "new " + e.name + "()";
      break;
    case Expr::Kind::FieldAccess:
      print_expr(*e.lhs, out);
      out += "." + e.name;
      break;
    case Expr::Kind::Add:
      print_expr(*e.lhs, out);
      out += " + ";
      print_expr(*e.rhs, out);
      break;
  }
}

inline std::string acc_text(const AccKeyword& acc) {
  auto args = [&]() {
    std::string s = "(";
    for (std::size_t i = 0; i < acc.names.size(); ++i) {
      if (i) s += ", ";
      s += acc.names[i];
    }
    return s + ")";
  };
  switch (acc.kind) {
    case AccKeyword::Kind::Public:
      return "public";
    case AccKeyword::Kind::Internal:
      return "internal" + args();
    case AccKeyword::Kind::Protected:
      return "protected";
    case AccKeyword::Kind::ProtectedInternal:
      return "protected internal" + args();
    case AccKeyword::Kind::Private:
      return "private";
    case AccKeyword::Kind::PrivateProtected:
      return "private protected" + args();
    case AccKeyword::Kind::Hole:
      return "?";
  }
  return "public";
}

inline void indent(std::string& out, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

inline void print_class(const ClassDef& cls, std::string& out, int depth);

inline void print_member(const Member& m, std::string& out, int depth);

inline void print_class(const ClassDef& cls, std::string& out, int depth) {
  indent(out, depth);
  out += "class " + cls.name;
  if (cls.extends) {
    out += " : ";
    switch (cls.extends->acc) {
      case ExtendsClause::Acc::Public:
        out += "public ";
        break;
      case ExtendsClause::Acc::Protected:
        out += "protected ";
        break;
      case ExtendsClause::Acc::Private:
        out += "private ";
        break;
    }
    out += cls.extends->super;
  }
  out += " {\n";
  for (const auto& m : cls.members) {
    if (const auto* f = std::get_if<Field>(&m)) {
      indent(out, depth + 1);
      out += acc_text(f->acc) + " var " + f->name + " = ";
      print_expr(*f->init, out);
      out += "\n";
    } else {
      print_class(*std::get<std::shared_ptr<const ClassDef>>(m), out, depth + 1);
    }
  }
  indent(out, depth);
  out += "}\n";
}

inline void print_member(const Member& m, std::string& out, int depth) {
  if (const auto* mod = std::get_if<std::shared_ptr<const ModuleDef>>(&m)) {
    indent(out, depth);
    out += "module " + (*mod)->name + " {\n";
    for (const auto& inner : (*mod)->members) print_member(inner, out, depth + 1);
    indent(out, depth);
    out += "}\n";
  } else if (const auto* imp = std::get_if<Import>(&m)) {
    indent(out, depth);
    out += "import " + imp->qname + "\n";
  } else {
    print_class(*std::get<std::shared_ptr<const ClassDef>>(m), out, depth);
  }
}

}  // namespace detail

/// Deterministic source emission; parses back to a structurally equal
/// program.
inline std::string pretty_print(const Program& prog) {
  std::string out;
  for (const auto& p : prog.pragmas) out += "#pragma " + p.key + "=" + p.value + "\n";
  for (const auto& m : prog.members) detail::print_member(m, out, 0);
  return out;
}

}  // namespace aml
