#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aml/scope_graph.hpp"
#include "support/oracle.hpp"
#include "support/random_gen.hpp"

using namespace aml;

namespace {

/// Two nested modules, each declaring a variable of the same name:
/// lexical lookup from the inner scope must shadow the outer declaration.
struct NestedModules {
  ScopeGraph g;
  ScopeId root, outer, inner;

  NestedModules() {
    root = g.add_scope("root");
    outer = g.add_scope("outer");
    inner = g.add_scope("inner");
    g.add_edge(outer, Label::Lex, root);
    g.add_edge(inner, Label::Lex, outer);
    g.add_decl(root, Label::Mod, ModDecl{"A", outer});
    g.add_decl(outer, Label::Mod, ModDecl{"B", inner});
    g.add_decl(outer, Label::Var, VarDecl{"x", Type::integer(), Policy::pub(), 1});
    g.add_decl(inner, Label::Var, VarDecl{"x", Type::integer(), Policy::pub(), 2});
    g.freeze();
  }
};

}  // namespace

TEST_CASE("lexical shadowing keeps the nearest declaration") {
  NestedModules f;
  QueryResult r = f.g.resolve(f.inner, parse_regex("LEX* VAR"),
                              DataPredicate::is_var("x"),
                              LabelOrder({{Label::Var, Label::Lex}}));
  REQUIRE(r.size() == 1);
  CHECK(std::get<VarDecl>(r[0].data).node == 2);
  CHECK(r[0].path.steps.empty());
}

TEST_CASE("without an order both declarations are visible") {
  NestedModules f;
  QueryResult r =
      f.g.resolve(f.inner, parse_regex("LEX* VAR"), DataPredicate::is_var("x"));
  CHECK(r.size() == 2);
}

TEST_CASE("module lookup walks lexical edges and stops at the declaration") {
  NestedModules f;
  QueryResult r = f.g.resolve(f.inner, parse_regex("LEX* MOD"),
                              DataPredicate::is_mod("A"),
                              LabelOrder({{Label::Mod, Label::Lex}}));
  REQUIRE(r.size() == 1);
  CHECK(std::get<ModDecl>(r[0].data).body == f.outer);
}

TEST_CASE("imports open a one-hop side door") {
  // use-site scope imports a library module; names resolve through IMP
  // but not transitively (regex allows at most one IMP).
  ScopeGraph g;
  ScopeId root = g.add_scope(), lib = g.add_scope(), lib2 = g.add_scope(),
          use = g.add_scope();
  g.add_edge(lib, Label::Lex, root);
  g.add_edge(lib2, Label::Lex, root);
  g.add_edge(use, Label::Lex, root);
  g.add_edge(use, Label::Imp, lib);
  g.add_edge(lib, Label::Imp, lib2);
  g.add_decl(lib, Label::Var, VarDecl{"v", Type::integer(), Policy::pub(), 1});
  g.add_decl(lib2, Label::Var, VarDecl{"v", Type::integer(), Policy::pub(), 2});
  g.freeze();
  QueryResult r =
      g.resolve(use, parse_regex("LEX* IMP? VAR"), DataPredicate::is_var("v"));
  REQUIRE(r.size() == 1);
  CHECK(std::get<VarDecl>(r[0].data).node == 1);
}

TEST_CASE("cycle-free traversal terminates on cyclic graphs") {
  ScopeGraph g;
  ScopeId a = g.add_scope(), b = g.add_scope();
  g.add_edge(a, Label::Lex, b);
  g.add_edge(b, Label::Lex, a);
  g.add_decl(b, Label::Var, VarDecl{"x", Type::integer(), Policy::pub(), 0});
  g.freeze();
  QueryResult r = g.resolve(a, parse_regex("LEX* VAR"), DataPredicate::is_var("x"));
  REQUIRE(r.size() == 1);
  CHECK(r[0].path.steps.size() == 1);
}

TEST_CASE("build-time misuse raises errors") {
  ScopeGraph g;
  ScopeId s = g.add_scope();
  CHECK_THROWS_AS(g.add_decl(s, Label::Lex, ScopeData{s}), GraphError);
  CHECK_THROWS_AS(g.add_edge(s, Label::Lex, ScopeId{7}), GraphError);
  CHECK_THROWS_AS(g.resolve(s, parse_regex("VAR"), DataPredicate::top()), GraphError);
  g.freeze();
  CHECK_THROWS_AS(g.add_scope(), GraphError);
  CHECK_THROWS_AS(g.add_edge(s, Label::Lex, s), GraphError);
  g.thaw();
  CHECK_NOTHROW(g.add_scope());
  CHECK_THROWS_AS(LabelOrder({{Label::Lex, Label::Imp}, {Label::Imp, Label::Lex}}),
                  GraphError);
}

TEST_CASE("duplicate edges and declarations are deduplicated") {
  ScopeGraph g;
  ScopeId a = g.add_scope(), b = g.add_scope();
  g.add_edge(a, Label::Lex, b);
  g.add_edge(a, Label::Lex, b);
  g.add_decl(a, Label::ThisM, ScopeData{a});
  g.add_decl(a, Label::ThisM, ScopeData{a});
  CHECK(g.edge_count() == 1);
  CHECK(g.decl_count() == 1);
}

TEST_CASE("split_at divides a path at a visited scope") {
  Path p = Path::at(ScopeId{0});
  p.steps = {{Label::Lex, ScopeId{1}}, {Label::Ext, ScopeId{2}},
             {Label::Ext, ScopeId{3}}};
  auto parts = split_at(ScopeId{1}, p);
  REQUIRE(parts.has_value());
  CHECK(parts->first.labels() == std::vector<Label>{Label::Lex});
  CHECK(parts->first.tgt() == ScopeId{1});
  CHECK(parts->second.src() == ScopeId{1});
  CHECK(parts->second.labels() == std::vector<Label>({Label::Ext, Label::Ext}));

  auto at_src = split_at(ScopeId{0}, p);
  REQUIRE(at_src.has_value());
  CHECK(at_src->first.steps.empty());
  CHECK(at_src->second.steps.size() == 3);

  CHECK_FALSE(split_at(ScopeId{9}, p).has_value());
}

TEST_CASE("label order lifts to words lexicographically") {
  LabelOrder o = LabelOrder::chain({Label::Var, Label::Ext, Label::Lex});
  CHECK(o.less(Label::Var, Label::Lex));  // transitive closure
  using W = std::vector<Label>;
  CHECK(lexicographic_compare(o, W{Label::Var}, W{Label::Ext, Label::Var}) ==
        Ordering::Precedes);
  CHECK(lexicographic_compare(o, W{Label::Lex, Label::Var}, W{Label::Ext, Label::Var}) ==
        Ordering::Succeeds);
  CHECK(lexicographic_compare(o, W{Label::Lex, Label::Var}, W{Label::Lex, Label::Var}) ==
        Ordering::Equivalent);
  CHECK(lexicographic_compare(o, W{Label::Lex}, W{Label::Lex, Label::Var}) ==
        Ordering::Incomparable);
  LabelOrder empty;
  CHECK(lexicographic_compare(empty, W{Label::Lex}, W{Label::Ext}) ==
        Ordering::Incomparable);
}

TEST_CASE("resolve agrees with brute force on random graphs") {
  static const char* queries[] = {"LEX* MOD", "LEX* IMP? CLS", "LEX* EXT* VAR",
                                  "EXT* VAR", "LEX* (EXT|EXT_PRT|EXT_PRV)* VAR",
                                  "LEX* THIS_M"};
  support::Rng rng2(20260826);
  for (int trial = 0; trial < 1000; ++trial) {
    ScopeGraph g = support::rand_graph(rng2);
    const char* q = queries[trial % 6];
    DataPredicate pred =
        trial % 3 == 0 ? DataPredicate::top() : DataPredicate::is_var("a");
    CandidateOrder order;
    switch (trial % 4) {
      case 0:
        order = NoOrder{};
        break;
      case 1:
        order = LabelOrder::chain({Label::Var, Label::Ext, Label::Lex});
        break;
      case 2:
        order = LabelOrder({{Label::Mod, Label::Lex},
                            {Label::Cls, Label::Imp},
                            {Label::Imp, Label::Lex}});
        break;
      default:
        // arbitrary custom comparator: shorter paths win
        order = CustomComparator([](ScopeId, const QueryCandidate& a,
                                    const QueryCandidate& b) {
          if (a.path.steps.size() < b.path.steps.size()) return Ordering::Precedes;
          if (b.path.steps.size() < a.path.steps.size()) return Ordering::Succeeds;
          return Ordering::Incomparable;
        });
        break;
    }
    for (std::uint32_t s = 0; s < g.scope_count(); ++s) {
      QueryResult expect =
          support::brute_force_resolve(g, ScopeId{s}, q, pred, order);
      QueryResult got = g.resolve(ScopeId{s}, parse_regex(q), pred, order);
      CAPTURE(trial);
      CHECK(got == expect);
    }
  }
}
