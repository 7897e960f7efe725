#pragma once

/// Seeded random generators for graphs, policies, paths, and programs.

#include <random>
#include <string>
#include <vector>

#include "aml/parser.hpp"
#include "aml/scope_graph.hpp"

namespace support {

using Rng = std::mt19937;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool rand_bool(Rng& rng) { return rand_int(rng, 0, 1) == 1; }

inline aml::Label rand_edge_label(Rng& rng) {
  static const aml::Label edge_labels[] = {aml::Label::Lex, aml::Label::Imp,
                                           aml::Label::Ext, aml::Label::ExtPrt,
                                           aml::Label::ExtPrv};
  return edge_labels[rand_int(rng, 0, 4)];
}

inline std::set<aml::ScopeId> rand_scope_set(Rng& rng, std::size_t scope_count) {
  std::set<aml::ScopeId> s;
  int n = rand_int(rng, 0, 2);
  for (int i = 0; i < n; ++i)
    s.insert(aml::ScopeId{static_cast<std::uint32_t>(
        rand_int(rng, 0, static_cast<int>(scope_count) - 1))});
  return s;
}

inline aml::Policy rand_policy(Rng& rng, std::size_t scope_count) {
  switch (rand_int(rng, 0, 5)) {
    case 0: return aml::Policy::pub();
    case 1: return aml::Policy::prt();
    case 2: return aml::Policy::prv();
    case 3: return aml::Policy::mod(rand_scope_set(rng, scope_count));
    case 4: return aml::Policy::smd(rand_scope_set(rng, scope_count));
    default: return aml::Policy::smc(rand_scope_set(rng, scope_count));
  }
}

/// Arbitrary small graph: up to 8 scopes, 16 edges, 6 declarations.
inline aml::ScopeGraph rand_graph(Rng& rng) {
  aml::ScopeGraph g;
  int n = rand_int(rng, 1, 8);
  std::vector<aml::ScopeId> scopes;
  for (int i = 0; i < n; ++i) scopes.push_back(g.add_scope());
  auto rand_scope = [&]() { return scopes[rand_int(rng, 0, n - 1)]; };
  int m = rand_int(rng, 0, 16);
  for (int i = 0; i < m; ++i) g.add_edge(rand_scope(), rand_edge_label(rng), rand_scope());
  static const char* names[] = {"a", "b", "c"};
  int k = rand_int(rng, 0, 6);
  for (int i = 0; i < k; ++i) {
    aml::ScopeId at = rand_scope();
    std::string name = names[rand_int(rng, 0, 2)];
    switch (rand_int(rng, 0, 4)) {
      case 0:
        g.add_decl(at, aml::Label::Mod, aml::ModDecl{name, rand_scope()});
        break;
      case 1:
        g.add_decl(at, aml::Label::Cls, aml::ClsDecl{name, rand_scope()});
        break;
      case 2:
        g.add_decl(at, aml::Label::Var,
                   aml::VarDecl{name, aml::Type::integer(),
                                rand_policy(rng, static_cast<std::size_t>(n)), 0});
        break;
      case 3:
        g.add_decl(at, aml::Label::ThisM, aml::ScopeData{at});
        break;
      default:
        g.add_decl(at, aml::Label::ThisC, aml::ScopeData{at});
        break;
    }
  }
  g.freeze();
  return g;
}

/// A cycle-free walk along the graph's edges.
inline aml::Path rand_path(Rng& rng, const aml::ScopeGraph& g) {
  aml::ScopeId at{static_cast<std::uint32_t>(
      rand_int(rng, 0, static_cast<int>(g.scope_count()) - 1))};
  aml::Path p = aml::Path::at(at);
  int len = rand_int(rng, 0, 5);
  for (int i = 0; i < len; ++i) {
    auto edges = g.edges_from(at);
    std::vector<std::pair<aml::Label, aml::ScopeId>> usable;
    for (const auto& e : edges)
      if (!p.visits(e.second)) usable.push_back(e);
    if (usable.empty()) break;
    auto [l, tgt] = usable[rand_int(rng, 0, static_cast<int>(usable.size()) - 1)];
    p.steps.emplace_back(l, tgt);
    at = tgt;
  }
  return p;
}

// ---- random programs -----------------------------------------------------

struct ProgramGen {
  Rng& rng;
  std::vector<std::string> module_names;  // declared so far, innermost last
  std::vector<std::string> class_names;
  int class_counter = 0;
  int field_counter = 0;
  bool all_public = false;

  std::string modifier() {
    if (all_public || module_names.empty()) return "public";
    switch (rand_int(rng, 0, 5)) {
      case 0: return "public";
      case 1: return "private";
      case 2: return "protected";
      case 3: return "internal(" + module_names[static_cast<std::size_t>(rand_int(
                         rng, 0, static_cast<int>(module_names.size()) - 1))] + ")";
      case 4: return "protected internal(" + module_names.back() + ")";
      default: return "private protected(" + module_names.back() + ")";
    }
  }

  std::string expr() {
    switch (rand_int(rng, 0, 3)) {
      case 0:
      case 1:
        return std::to_string(rand_int(rng, 0, 9));
      case 2:
        if (!field_names.empty())
          return field_names[static_cast<std::size_t>(
              rand_int(rng, 0, static_cast<int>(field_names.size()) - 1))];
        return std::to_string(rand_int(rng, 0, 9));
      default:
        if (!class_names.empty() && !field_names.empty())
          return "new " +
                 class_names[static_cast<std::size_t>(rand_int(
                     rng, 0, static_cast<int>(class_names.size()) - 1))] +
                 "()." +
                 field_names[static_cast<std::size_t>(
                     rand_int(rng, 0, static_cast<int>(field_names.size()) - 1))];
        return std::to_string(rand_int(rng, 0, 9));
    }
  }

  std::vector<std::string> field_names;

  std::string cls(int depth, const std::string& indent) {
    std::string name = "C" + std::to_string(++class_counter);
    std::string out = indent + "class " + name;
    if (!class_names.empty() && rand_bool(rng))
      out += " : public " +
             class_names[static_cast<std::size_t>(
                 rand_int(rng, 0, static_cast<int>(class_names.size()) - 1))];
    class_names.push_back(name);
    out += " {\n";
    int nf = rand_int(rng, 1, 3);
    for (int i = 0; i < nf; ++i) {
      std::string fname = "f" + std::to_string(++field_counter);
      out += indent + "  " + modifier() + " var " + fname + " = " + expr() + "\n";
      field_names.push_back(fname);
    }
    if (depth < 2 && rand_int(rng, 0, 3) == 0) out += cls(depth + 1, indent + "  ");
    out += indent + "}\n";
    return out;
  }

  std::string mod(int depth, const std::string& indent, int index) {
    std::string name = std::string(1, static_cast<char>('M' + index));
    module_names.push_back(name);
    std::string out = indent + "module " + name + " {\n";
    int nc = rand_int(rng, 1, 2);
    for (int i = 0; i < nc; ++i) out += cls(0, indent + "  ");
    if (depth < 1 && rand_bool(rng)) out += mod(depth + 1, indent + "  ", index + 1);
    out += indent + "}\n";
    module_names.pop_back();
    return out;
  }
};

/// Small well-formed-looking program text; references may still fail to
/// resolve or be inaccessible, which is the point of the corpus.
inline std::string rand_program_text(Rng& rng, bool all_public = false) {
  ProgramGen gen{rng};
  gen.all_public = all_public;
  std::string out;
  int nm = rand_int(rng, 1, 2);
  for (int i = 0; i < nm; ++i) out += gen.mod(0, "", i * 2);
  return out;
}

}  // namespace support
