#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "aml/regex.hpp"
#include "support/oracle.hpp"

using aml::Label;
using aml::LabelRegex;

namespace {

/// All words over {LEX, EXT, VAR, MOD} up to the given length.
std::vector<std::vector<Label>> all_words(int max_len) {
  static const Label alphabet[] = {Label::Lex, Label::Ext, Label::Var, Label::Mod};
  std::vector<std::vector<Label>> out{{}};
  std::size_t level_start = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i)
      for (Label l : alphabet) {
        auto w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    level_start = level_end;
  }
  return out;
}

void check_against_oracle(const std::string& text) {
  LabelRegex r = aml::parse_regex(text);
  support::RxPtr rx = support::rx_parse(text);
  for (const auto& w : all_words(6)) {
    CAPTURE(text);
    CHECK(r.matches(w) == support::rx_matches(rx, w));
  }
}

}  // namespace

TEST_CASE("derivative matching agrees with the structural oracle") {
  for (const char* text :
       {"LEX* MOD", "LEX* IMP? CLS", "LEX* EXT* VAR", "EXT* VAR",
        "LEX* (EXT|EXT_PRT|EXT_PRV)* VAR", "EXT_PRV? (EXT|EXT_PRT)*", "LEX* THIS_M",
        "LEX", "LEX LEX", "(LEX|EXT)*", "(LEX EXT)* VAR?", "MOD|CLS|VAR",
        "LEX? LEX? LEX?", "((LEX|EXT) (VAR|MOD))*"})
    check_against_oracle(text);
}

TEST_CASE("nullable and continuation basics") {
  CHECK(aml::parse_regex("LEX*").nullable());
  CHECK(aml::parse_regex("LEX?").nullable());
  CHECK_FALSE(aml::parse_regex("LEX").nullable());
  CHECK_FALSE(aml::parse_regex("LEX* VAR").nullable());
  CHECK(aml::parse_regex("LEX* VAR").nonempty_continuation());
  CHECK(LabelRegex::epsilon().nullable());
  CHECK_FALSE(LabelRegex::empty().nonempty_continuation());
}

TEST_CASE("step soundness: w matches step(r,l) iff l·w matches r") {
  for (const char* text : {"LEX* EXT* VAR", "LEX* IMP? CLS", "(LEX|EXT)* MOD"}) {
    LabelRegex r = aml::parse_regex(text);
    for (Label l : {Label::Lex, Label::Ext, Label::Var, Label::Imp, Label::Cls}) {
      LabelRegex d = r.step(l);
      for (const auto& w : all_words(4)) {
        std::vector<Label> lw{l};
        lw.insert(lw.end(), w.begin(), w.end());
        CHECK(d.matches(w) == r.matches(lw));
      }
    }
  }
}

TEST_CASE("canonicalization gives equal keys for equal constructions") {
  CHECK(aml::parse_regex("LEX|EXT") == aml::parse_regex("EXT|LEX"));
  CHECK(aml::parse_regex("LEX|LEX") == aml::parse_regex("LEX"));
  CHECK(aml::parse_regex("(LEX*)*") == aml::parse_regex("LEX*"));
  CHECK(aml::parse_regex("(LEX?)*") == aml::parse_regex("LEX*"));
  CHECK(aml::parse_regex("(LEX*)?") == aml::parse_regex("LEX*"));
  CHECK(LabelRegex::concat(LabelRegex::epsilon(), LabelRegex::symbol(Label::Lex)) ==
        LabelRegex::symbol(Label::Lex));
  CHECK(LabelRegex::concat(LabelRegex::empty(), LabelRegex::symbol(Label::Lex)) ==
        LabelRegex::empty());
}

TEST_CASE("residual states are finite along repeated stepping") {
  LabelRegex r = aml::parse_regex("LEX* (EXT|EXT_PRT|EXT_PRV)* VAR");
  std::set<std::string> seen;
  std::vector<LabelRegex> frontier{r};
  seen.insert(r.to_string());
  while (!frontier.empty()) {
    LabelRegex cur = frontier.back();
    frontier.pop_back();
    for (Label l : aml::all_labels) {
      LabelRegex d = cur.step(l);
      if (seen.insert(d.to_string()).second) frontier.push_back(d);
    }
  }
  CHECK(seen.size() <= 16);  // small DFA, not an exploding term
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(aml::parse_regex("LEX |"), aml::RegexParseError);
  CHECK_THROWS_AS(aml::parse_regex("(LEX"), aml::RegexParseError);
  CHECK_THROWS_AS(aml::parse_regex("BOGUS"), aml::RegexParseError);
  CHECK_THROWS_AS(aml::parse_regex(""), aml::RegexParseError);
  try {
    aml::parse_regex("LEX FOO");
  } catch (const aml::RegexParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("label names round-trip") {
  for (aml::Label l : aml::all_labels)
    CHECK(aml::label_from_string(aml::to_string(l)) == l);
  CHECK_FALSE(aml::label_from_string("nope").has_value());
}
