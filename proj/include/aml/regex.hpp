#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aml/label.hpp"

namespace aml {

/// Regular expressions over edge labels. Values are immutable and shared;
/// smart constructors keep them in a canonical form so that residuals
/// produced by step() compare equal whenever traversal must treat them as
/// the same state.
class LabelRegex {
 public:
  enum class Kind { Empty, Epsilon, Symbol, Concat, Alternate, Star, Optional };

  struct Node;
  using Ptr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    Label symbol = Label::Lex;      // Symbol only
    std::vector<Ptr> children;      // Concat/Alternate/Star/Optional
    std::string key;                // canonical text, used for equality
  };

  LabelRegex() : node_(empty_node()) {}
  explicit LabelRegex(Ptr node) : node_(std::move(node)) {}

  // -- constructors -----------------------------------------------------

  static LabelRegex empty() { return LabelRegex(empty_node()); }
  static LabelRegex epsilon() { return LabelRegex(epsilon_node()); }

  static LabelRegex symbol(Label l) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Symbol;
    n->symbol = l;
    n->key = std::string(aml::to_string(l));
    return LabelRegex(std::move(n));
  }

  static LabelRegex concat(std::vector<LabelRegex> parts) {
    std::vector<Ptr> flat;
    for (auto& p : parts) {
      if (p.kind() == Kind::Empty) return empty();
      if (p.kind() == Kind::Epsilon) continue;
      if (p.kind() == Kind::Concat)
        flat.insert(flat.end(), p.node_->children.begin(), p.node_->children.end());
      else
        flat.push_back(p.node_);
    }
    if (flat.empty()) return epsilon();
    if (flat.size() == 1) return LabelRegex(flat.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Concat;
    n->children = std::move(flat);
    n->key = join_key(n->children, " ");
    return LabelRegex(std::move(n));
  }

  static LabelRegex concat(LabelRegex a, LabelRegex b) {
    std::vector<LabelRegex> v;
    v.push_back(std::move(a));
    v.push_back(std::move(b));
    return concat(std::move(v));
  }

  static LabelRegex alternate(std::vector<LabelRegex> parts) {
    std::vector<Ptr> flat;
    for (auto& p : parts) {
      if (p.kind() == Kind::Empty) continue;
      if (p.kind() == Kind::Alternate)
        flat.insert(flat.end(), p.node_->children.begin(), p.node_->children.end());
      else
        flat.push_back(p.node_);
    }
    std::sort(flat.begin(), flat.end(),
              [](const Ptr& a, const Ptr& b) { return a->key < b->key; });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const Ptr& a, const Ptr& b) { return a->key == b->key; }),
               flat.end());
    if (flat.empty()) return empty();
    if (flat.size() == 1) return LabelRegex(flat.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Alternate;
    n->children = std::move(flat);
    n->key = "(" + join_key(n->children, "|") + ")";
    return LabelRegex(std::move(n));
  }

  static LabelRegex alternate(LabelRegex a, LabelRegex b) {
    std::vector<LabelRegex> v;
    v.push_back(std::move(a));
    v.push_back(std::move(b));
    return alternate(std::move(v));
  }

  static LabelRegex star(LabelRegex r) {
    switch (r.kind()) {
      case Kind::Empty:
      case Kind::Epsilon:
        return epsilon();
      case Kind::Star:
        return r;
      case Kind::Optional:
        return star(LabelRegex(r.node_->children.front()));
      default:
        break;
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Star;
    n->children = {r.node_};
    n->key = wrap_key(r) + "*";
    return LabelRegex(std::move(n));
  }

  static LabelRegex optional(LabelRegex r) {
    switch (r.kind()) {
      case Kind::Empty:
      case Kind::Epsilon:
        return epsilon();
      case Kind::Star:
      case Kind::Optional:
        return r;
      default:
        break;
    }
    if (r.nullable()) return r;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Optional;
    n->children = {r.node_};
    n->key = wrap_key(r) + "?";
    return LabelRegex(std::move(n));
  }

  // -- queries ----------------------------------------------------------

  Kind kind() const { return node_->kind; }

  /// The empty word is in the language.
  bool nullable() const { return nullable(*node_); }

  /// The language is nonempty. Canonicalization guarantees the only
  /// empty-language value is the Empty node itself.
  bool nonempty_continuation() const { return node_->kind != Kind::Empty; }

  /// Residual language after consuming label l (Brzozowski derivative).
  LabelRegex step(Label l) const { return step(node_, l); }

  bool matches(std::span<const Label> word) const {
    LabelRegex r = *this;
    for (Label l : word) {
      r = r.step(l);
      if (!r.nonempty_continuation()) return false;
    }
    return r.nullable();
  }

  bool matches(const std::vector<Label>& word) const {
    return matches(std::span<const Label>(word));
  }

  const std::string& to_string() const { return node_->key; }

  friend bool operator==(const LabelRegex& a, const LabelRegex& b) {
    return a.node_->key == b.node_->key;
  }
  friend bool operator<(const LabelRegex& a, const LabelRegex& b) {
    return a.node_->key < b.node_->key;
  }

 private:
  Ptr node_;

  static Ptr empty_node() {
    static const Ptr n = [] {
      auto p = std::make_shared<Node>();
      p->kind = Kind::Empty;
      p->key = "<empty>";
      return p;
    }();
    return n;
  }

  static Ptr epsilon_node() {
    static const Ptr n = [] {
      auto p = std::make_shared<Node>();
      p->kind = Kind::Epsilon;
      p->key = "<eps>";
      return p;
    }();
    return n;
  }

  static std::string join_key(const std::vector<Ptr>& children, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out += sep;
      const Node& c = *children[i];
      if (c.kind == Kind::Alternate || c.kind == Kind::Concat)
        out += "(" + c.key + ")";
      else
        out += c.key;
    }
    return out;
  }

  static std::string wrap_key(const LabelRegex& r) {
    if (r.kind() == Kind::Symbol || r.kind() == Kind::Star ||
        r.kind() == Kind::Optional)
      return r.node_->key;
    return "(" + r.node_->key + ")";
  }

  static bool nullable(const Node& n) {
    switch (n.kind) {
      case Kind::Empty:
      case Kind::Symbol:
        return false;
      case Kind::Epsilon:
      case Kind::Star:
      case Kind::Optional:
        return true;
      case Kind::Concat:
        for (const auto& c : n.children)
          if (!nullable(*c)) return false;
        return true;
      case Kind::Alternate:
        for (const auto& c : n.children)
          if (nullable(*c)) return true;
        return false;
    }
    return false;
  }

  static LabelRegex step(const Ptr& n, Label l) {
    switch (n->kind) {
      case Kind::Empty:
      case Kind::Epsilon:
        return empty();
      case Kind::Symbol:
        return n->symbol == l ? epsilon() : empty();
      case Kind::Star:
        return concat(step(n->children.front(), l), LabelRegex(n));
      case Kind::Optional:
        return step(n->children.front(), l);
      case Kind::Alternate: {
        std::vector<LabelRegex> parts;
        parts.reserve(n->children.size());
        for (const auto& c : n->children) parts.push_back(step(c, l));
        return alternate(std::move(parts));
      }
      case Kind::Concat: {
        // d(r1 r2..rn) = d(r1) r2..rn | [r1 nullable] d(r2..rn)
        std::vector<LabelRegex> rest;
        for (std::size_t i = 1; i < n->children.size(); ++i)
          rest.push_back(LabelRegex(n->children[i]));
        LabelRegex head = step(n->children.front(), l);
        std::vector<LabelRegex> first;
        first.push_back(head);
        first.insert(first.end(), rest.begin(), rest.end());
        LabelRegex d = concat(std::move(first));
        if (nullable(*n->children.front())) {
          LabelRegex tail = rest.size() == 1 ? rest.front() : concat(rest);
          d = alternate(d, tail.step(l));
        }
        return d;
      }
    }
    return empty();
  }
};

struct RegexParseError : std::runtime_error {
  std::size_t position;
  RegexParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg)), position(pos) {}
};

/// Parses the textual notation: label tokens, postfix `*`/`?`, infix `|`,
/// juxtaposition for concatenation, parentheses.
inline LabelRegex parse_regex(std::string_view text) {
  struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at_end() {
      skip_ws();
      return pos >= text.size();
    }
    char peek() {
      skip_ws();
      return pos < text.size() ? text[pos] : '\0';
    }

    LabelRegex parse_alt() {
      LabelRegex lhs = parse_cat();
      while (peek() == '|') {
        ++pos;
        lhs = LabelRegex::alternate(lhs, parse_cat());
      }
      return lhs;
    }

    LabelRegex parse_cat() {
      std::vector<LabelRegex> parts;
      while (true) {
        char c = peek();
        if (c == '\0' || c == ')' || c == '|') break;
        parts.push_back(parse_postfix());
      }
      if (parts.empty())
        throw RegexParseError("expected label or '('", pos);
      return LabelRegex::concat(std::move(parts));
    }

    LabelRegex parse_postfix() {
      LabelRegex r = parse_atom();
      while (true) {
        char c = peek();
        if (c == '*') {
          ++pos;
          r = LabelRegex::star(r);
        } else if (c == '?') {
          ++pos;
          r = LabelRegex::optional(r);
        } else {
          break;
        }
      }
      return r;
    }

    LabelRegex parse_atom() {
      char c = peek();
      if (c == '(') {
        ++pos;
        LabelRegex r = parse_alt();
        if (peek() != ')') throw RegexParseError("expected ')'", pos);
        ++pos;
        return r;
      }
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      if (pos == start) throw RegexParseError("expected label or '('", pos);
      std::string_view tok = text.substr(start, pos - start);
      auto l = label_from_string(tok);
      if (!l) throw RegexParseError("unknown label '" + std::string(tok) + "'", start);
      return LabelRegex::symbol(*l);
    }
  };

  Parser p{text};
  LabelRegex r = p.parse_alt();
  if (!p.at_end()) throw RegexParseError("trailing input", p.pos);
  return r;
}

inline LabelRegex step(const LabelRegex& r, Label l) { return r.step(l); }

inline bool matches(const LabelRegex& r, const std::vector<Label>& word) {
  return r.matches(word);
}

inline bool nonempty_continuation(const LabelRegex& r) {
  return r.nonempty_continuation();
}

}  // namespace aml
