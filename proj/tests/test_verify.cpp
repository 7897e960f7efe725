#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aml/conformance.hpp"
#include "aml/parser.hpp"
#include "aml/verify.hpp"
#include "support/random_gen.hpp"

using namespace aml;

TEST_CASE("subclass relation follows extension edges of every strength") {
  ScopeGraph g;
  ScopeId a = g.add_scope(), b = g.add_scope(), c = g.add_scope(), d = g.add_scope();
  g.add_edge(b, Label::Ext, a);
  g.add_edge(c, Label::ExtPrv, b);
  for (ScopeId s : {a, b, c, d}) g.add_decl(s, Label::ThisC, ScopeData{s});
  g.freeze();
  CHECK(sub_class(g, a, a));
  CHECK(sub_class(g, b, a));
  CHECK(sub_class(g, c, a));  // transitively, through the private extension
  CHECK_FALSE(sub_class(g, a, b));
  CHECK_FALSE(sub_class(g, d, a));
}

TEST_CASE("accepted conformance programs verify clean under their preset") {
  for (Target t : {Target::Java, Target::Csharp, Target::Rust, Target::Aml}) {
    VariantConfig cfg = target_config(t);
    std::size_t verified = 0;
    for (const TestCase& c : generate_matrix(t)) {
      if (!c.expected_accept) continue;
      CheckResult r = elaborate(parse_program(c.source), cfg);
      REQUIRE(r.diagnostics.empty());
      CAPTURE(c.id);
      CHECK(verify_all(r.graph, cfg, r.bindings).empty());
      ++verified;
    }
    CHECK(verified > 10);
  }
}

TEST_CASE("randomly generated accepted programs verify clean") {
  const VariantConfig presets[] = {preset_csharp(), preset_java(),
                                   preset_rust_modules(), preset_cpp_inheritance()};
  support::Rng rng(99);
  int clean = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string text = support::rand_program_text(rng);
    const VariantConfig& cfg = presets[i % 4];
    CheckResult r = elaborate(parse_program(text), cfg);
    if (r.has_errors()) continue;
    ++clean;
    CAPTURE(text);
    CHECK(verify_all(r.graph, cfg, r.bindings).empty());
  }
  CHECK(clean > 1000);  // the corpus must actually exercise the verifiers
}

TEST_CASE("an injected unsound binding is caught") {
  const char* text = R"(module M {
  class A {
    private var x = 1
    public var y = x
  }
  class Elsewhere {
    public var z = 1
  }
}
)";
  CheckResult r = elaborate(parse_program(text), preset_csharp());
  REQUIRE(r.diagnostics.empty());
  REQUIRE(verify_all(r.graph, preset_csharp(), r.bindings).empty());
  // pretend the private access came from the unrelated class
  ScopeId elsewhere;
  for (std::uint32_t s = 0; s < r.graph.scope_count(); ++s)
    if (r.graph.debug_name(ScopeId{s}) == "s_Elsewhere") elsewhere = ScopeId{s};
  REQUIRE(elsewhere.valid());
  for (auto& [id, b] : r.bindings)
    if (const auto* v = std::get_if<VarDecl>(&b.decl);
        v && v->policy.kind == Policy::Kind::Prv)
      b.ref_scope = elsewhere;
  std::vector<Violation> violations = verify_all(r.graph, preset_csharp(), r.bindings);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].property == "private-soundness");
}

TEST_CASE("injected faults are caught for protected and internal too") {
  const char* text = R"(module M {
  class A {
    protected var p = 1
    internal(M) var i = 2
  }
  class B : public A {
    public var u = p
    public var v = i
  }
}
)";
  CheckResult r = elaborate(parse_program(text), preset_csharp());
  REQUIRE(r.diagnostics.empty());
  ScopeId root = r.root;
  auto tampered = r.bindings;
  for (auto& [id, b] : tampered) b.ref_scope = root;  // the root is no class
  std::vector<Violation> violations = verify_all(r.graph, preset_csharp(), tampered);
  std::set<std::string> props;
  for (const auto& v : violations) props.insert(v.property);
  CHECK(props == std::set<std::string>({"protected-soundness", "internal-soundness"}));
}
