#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "aml/label.hpp"
#include "aml/regex.hpp"

namespace aml {

/// Opaque scope identifier, unique within one graph.
struct ScopeId {
  std::uint32_t index = UINT32_MAX;

  bool valid() const { return index != UINT32_MAX; }
  friend auto operator<=>(const ScopeId&, const ScopeId&) = default;
};

/// Field type: int or an instance of a class scope.
struct Type {
  enum class Kind { Int, Inst } kind = Kind::Int;
  ScopeId cls;  // Inst only

  static Type integer() { return {Kind::Int, {}}; }
  static Type instance(ScopeId s) { return {Kind::Inst, s}; }
  friend auto operator<=>(const Type&, const Type&) = default;
};

/// Accessibility policy attached to a variable declaration.
struct Policy {
  enum class Kind { Pub, Mod, Prt, Prv, Smd, Smc } kind = Kind::Pub;
  std::set<ScopeId> scopes;  // Mod/Smd/Smc only

  static Policy pub() { return {Kind::Pub, {}}; }
  static Policy prt() { return {Kind::Prt, {}}; }
  static Policy prv() { return {Kind::Prv, {}}; }
  static Policy mod(std::set<ScopeId> s) { return {Kind::Mod, std::move(s)}; }
  static Policy smd(std::set<ScopeId> s) { return {Kind::Smd, std::move(s)}; }
  static Policy smc(std::set<ScopeId> s) { return {Kind::Smc, std::move(s)}; }
  friend auto operator<=>(const Policy&, const Policy&) = default;
};

struct ModDecl {
  std::string name;
  ScopeId body;
  friend auto operator<=>(const ModDecl&, const ModDecl&) = default;
};

struct ClsDecl {
  std::string name;
  ScopeId body;
  friend auto operator<=>(const ClsDecl&, const ClsDecl&) = default;
};

struct VarDecl {
  std::string name;
  Type type;
  Policy policy;
  std::uint32_t node = 0;  // AST node of the declaration, 0 if synthetic
  friend auto operator<=>(const VarDecl&, const VarDecl&) = default;
};

/// THIS_M / THIS_C declarations carry the owning scope itself.
struct ScopeData {
  ScopeId scope;
  friend auto operator<=>(const ScopeData&, const ScopeData&) = default;
};

using DeclData = std::variant<ModDecl, ClsDecl, VarDecl, ScopeData>;

/// Cycle-free alternating scope/label sequence.
struct Path {
  ScopeId source;
  std::vector<std::pair<Label, ScopeId>> steps;

  static Path at(ScopeId s) { return {s, {}}; }

  ScopeId src() const { return source; }
  ScopeId tgt() const { return steps.empty() ? source : steps.back().second; }

  std::vector<ScopeId> scopes() const {
    std::vector<ScopeId> out{source};
    for (const auto& [l, s] : steps) out.push_back(s);
    return out;
  }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    out.reserve(steps.size());
    for (const auto& [l, s] : steps) out.push_back(l);
    return out;
  }

  bool visits(ScopeId s) const {
    if (source == s) return true;
    for (const auto& [l, t] : steps)
      if (t == s) return true;
    return false;
  }

  Path extended(Label l, ScopeId tgt) const {
    Path p = *this;
    p.steps.emplace_back(l, tgt);
    return p;
  }

  friend auto operator<=>(const Path&, const Path&) = default;
};

/// Splits p at the unique occurrence of s (unique by cycle-freedom).
inline std::optional<std::pair<Path, Path>> split_at(ScopeId s, const Path& p) {
  if (!p.visits(s)) return std::nullopt;
  Path p1{p.source, {}};
  Path p2{s, {}};
  bool in_tail = (p.source == s);
  for (const auto& step : p.steps) {
    (in_tail ? p2 : p1).steps.push_back(step);
    if (!in_tail && step.second == s) in_tail = true;
  }
  return std::make_pair(std::move(p1), std::move(p2));
}

struct GraphError : std::logic_error {
  using std::logic_error::logic_error;
};

struct QueryCandidate {
  Path path;
  Label decl_label = Label::Var;
  DeclData data;
  friend auto operator<=>(const QueryCandidate&, const QueryCandidate&) = default;
};

using QueryResult = std::vector<QueryCandidate>;

enum class Ordering { Precedes, Succeeds, Incomparable, Equivalent };

inline Ordering flip(Ordering o) {
  if (o == Ordering::Precedes) return Ordering::Succeeds;
  if (o == Ordering::Succeeds) return Ordering::Precedes;
  return o;
}

/// Strict partial order on labels, closed under transitivity.
/// Irreflexivity is checked at construction.
class LabelOrder {
 public:
  LabelOrder() = default;

  explicit LabelOrder(std::vector<std::pair<Label, Label>> lt_pairs) {
    for (auto [a, b] : lt_pairs) lt_.insert({a, b});
    // transitive closure
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto [a, b] : std::set<std::pair<Label, Label>>(lt_)) {
        for (auto [c, d] : std::set<std::pair<Label, Label>>(lt_)) {
          if (b == c && !lt_.contains({a, d})) {
            lt_.insert({a, d});
            changed = true;
          }
        }
      }
    }
    for (auto [a, b] : lt_)
      if (a == b) throw GraphError("label order is not irreflexive");
  }

  /// Chain shorthand: order({a, b, c}) means a < b < c.
  static LabelOrder chain(std::initializer_list<Label> labels) {
    std::vector<std::pair<Label, Label>> pairs;
    const Label* prev = nullptr;
    for (const Label& l : labels) {
      if (prev) pairs.emplace_back(*prev, l);
      prev = &l;
    }
    return LabelOrder(std::move(pairs));
  }

  bool less(Label a, Label b) const { return lt_.contains({a, b}); }

 private:
  std::set<std::pair<Label, Label>> lt_;
};

/// Lifts a label order to words position-wise. Words are always compared
/// with the declaration label as final symbol, so proper prefixes cannot
/// arise in well-formed queries; they compare incomparable.
inline Ordering lexicographic_compare(const LabelOrder& order,
                                      const std::vector<Label>& a,
                                      const std::vector<Label>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    if (order.less(a[i], b[i])) return Ordering::Precedes;
    if (order.less(b[i], a[i])) return Ordering::Succeeds;
    return Ordering::Incomparable;
  }
  if (a.size() == b.size()) return Ordering::Equivalent;
  return Ordering::Incomparable;
}

/// Comparator over candidates, parameterized by the query source scope.
using CustomComparator =
    std::function<Ordering(ScopeId start, const QueryCandidate&, const QueryCandidate&)>;

struct NoOrder {};

using CandidateOrder = std::variant<NoOrder, LabelOrder, CustomComparator>;

/// Data predicates of the query judgment.
class DataPredicate {
 public:
  static DataPredicate top() { return DataPredicate{Kind::Top, "", {}}; }
  static DataPredicate is_mod(std::string name) {
    return DataPredicate{Kind::Mod, std::move(name), {}};
  }
  static DataPredicate is_cls(std::string name) {
    return DataPredicate{Kind::Cls, std::move(name), {}};
  }
  static DataPredicate is_var(std::string name) {
    return DataPredicate{Kind::Var, std::move(name), {}};
  }
  static DataPredicate is_scope(ScopeId s) {
    return DataPredicate{Kind::Scope, "", s};
  }

  bool operator()(const DeclData& d) const {
    switch (kind_) {
      case Kind::Top:
        return true;
      case Kind::Mod:
        if (auto* m = std::get_if<ModDecl>(&d)) return m->name == name_;
        return false;
      case Kind::Cls:
        if (auto* c = std::get_if<ClsDecl>(&d)) return c->name == name_;
        return false;
      case Kind::Var:
        if (auto* v = std::get_if<VarDecl>(&d)) return v->name == name_;
        return false;
      case Kind::Scope:
        if (auto* s = std::get_if<ScopeData>(&d)) return s->scope == scope_;
        return false;
    }
    return false;
  }

 private:
  enum class Kind { Top, Mod, Cls, Var, Scope };
  DataPredicate(Kind k, std::string n, ScopeId s) : kind_(k), name_(std::move(n)), scope_(s) {}
  Kind kind_;
  std::string name_;
  ScopeId scope_;
};

/// The scope-graph model: scopes, labeled scope edges, labeled
/// declarations. Built in a staged fashion, then frozen before queries.
class ScopeGraph {
 public:
  ScopeId add_scope(std::string debug_name = "") {
    require_mutable();
    scopes_.push_back(std::move(debug_name));
    edges_out_.emplace_back();
    decls_.emplace_back();
    return ScopeId{static_cast<std::uint32_t>(scopes_.size() - 1)};
  }

  void add_edge(ScopeId src, Label label, ScopeId tgt) {
    require_mutable();
    require_scope(src);
    require_scope(tgt);
    auto& out = edges_out_[src.index];
    std::pair<Label, ScopeId> e{label, tgt};
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }

  void add_decl(ScopeId scope, Label label, DeclData data) {
    require_mutable();
    require_scope(scope);
    if (!is_declaration_label(label))
      throw GraphError("declaration label required");
    auto& ds = decls_[scope.index];
    std::pair<Label, DeclData> d{label, std::move(data)};
    if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(std::move(d));
  }

  void freeze() {
    for (auto& out : edges_out_) std::sort(out.begin(), out.end());
    for (auto& ds : decls_) std::sort(ds.begin(), ds.end());
    frozen_ = true;
  }

  /// Build stages mutate and re-freeze; queries in between require a
  /// frozen graph.
  void thaw() { frozen_ = false; }

  bool frozen() const { return frozen_; }
  std::size_t scope_count() const { return scopes_.size(); }
  const std::string& debug_name(ScopeId s) const {
    require_scope(s);
    return scopes_[s.index];
  }

  std::span<const std::pair<Label, ScopeId>> edges_from(ScopeId s) const {
    require_scope(s);
    return edges_out_[s.index];
  }

  std::span<const std::pair<Label, DeclData>> decls_at(ScopeId s) const {
    require_scope(s);
    return decls_[s.index];
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& out : edges_out_) n += out.size();
    return n;
  }

  std::size_t decl_count() const {
    std::size_t n = 0;
    for (const auto& ds : decls_) n += ds.size();
    return n;
  }

  /// Query resolution: all minimal (path, decl) candidates whose label
  /// word (including the declaration label) matches the regex and whose
  /// data satisfies the predicate.
  QueryResult resolve(ScopeId start, const LabelRegex& regex,
                      const DataPredicate& pred,
                      const CandidateOrder& order = NoOrder{}) const {
    if (!frozen_) throw GraphError("resolve on unfrozen graph");
    require_scope(start);
    QueryResult all;
    Path path = Path::at(start);
    collect(start, regex, pred, path, all);
    return minimize(start, std::move(all), order);
  }

 private:
  std::vector<std::string> scopes_;
  std::vector<std::vector<std::pair<Label, ScopeId>>> edges_out_;
  std::vector<std::vector<std::pair<Label, DeclData>>> decls_;
  bool frozen_ = false;

  void require_mutable() const {
    if (frozen_) throw GraphError("graph is frozen");
  }
  void require_scope(ScopeId s) const {
    if (!s.valid() || s.index >= scopes_.size()) throw GraphError("unknown scope id");
  }

  void collect(ScopeId at, const LabelRegex& residual, const DataPredicate& pred,
               Path& path, QueryResult& out) const {
    for (const auto& [dl, data] : decls_[at.index]) {
      if (!pred(data)) continue;
      if (residual.step(dl).nullable()) out.push_back({path, dl, data});
    }
    for (const auto& [el, tgt] : edges_out_[at.index]) {
      if (is_declaration_label(el)) continue;
      LabelRegex next = residual.step(el);
      if (!next.nonempty_continuation()) continue;
      if (path.visits(tgt)) continue;  // cycle-free paths only
      path.steps.emplace_back(el, tgt);
      collect(tgt, next, pred, path, out);
      path.steps.pop_back();
    }
  }

  static std::vector<Label> word_of(const QueryCandidate& c) {
    std::vector<Label> w = c.path.labels();
    w.push_back(c.decl_label);
    return w;
  }

  static Ordering compare(ScopeId start, const CandidateOrder& order,
                          const QueryCandidate& a, const QueryCandidate& b) {
    if (std::holds_alternative<NoOrder>(order)) return Ordering::Incomparable;
    if (const auto* lo = std::get_if<LabelOrder>(&order))
      return lexicographic_compare(*lo, word_of(a), word_of(b));
    return std::get<CustomComparator>(order)(start, a, b);
  }

  static QueryResult minimize(ScopeId start, QueryResult all,
                              const CandidateOrder& order) {
    QueryResult kept;
    for (const auto& c : all) {
      bool shadowed = false;
      for (const auto& other : all) {
        if (&other == &c) continue;
        if (compare(start, order, other, c) == Ordering::Precedes) {
          shadowed = true;
          break;
        }
      }
      if (!shadowed) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return kept;
  }
};

}  // namespace aml
