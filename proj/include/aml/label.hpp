#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace aml {

/// Edge and declaration labels of the scope-graph alphabet.
/// LEX/IMP/EXT/EXT_PRT/EXT_PRV connect scopes; MOD/CLS/VAR/THIS_M/THIS_C
/// attach declarations.
enum class Label : std::uint8_t {
  Lex,
  Imp,
  Ext,
  ExtPrt,
  ExtPrv,
  Mod,
  Cls,
  Var,
  ThisM,
  ThisC,
};

inline constexpr std::size_t kLabelCount = 10;

inline constexpr std::array<Label, kLabelCount> all_labels = {
    Label::Lex,    Label::Imp, Label::Ext, Label::ExtPrt, Label::ExtPrv,
    Label::Mod,    Label::Cls, Label::Var, Label::ThisM,  Label::ThisC,
};

constexpr std::string_view to_string(Label l) {
  switch (l) {
    case Label::Lex: return "LEX";
    case Label::Imp: return "IMP";
    case Label::Ext: return "EXT";
    case Label::ExtPrt: return "EXT_PRT";
    case Label::ExtPrv: return "EXT_PRV";
    case Label::Mod: return "MOD";
    case Label::Cls: return "CLS";
    case Label::Var: return "VAR";
    case Label::ThisM: return "THIS_M";
    case Label::ThisC: return "THIS_C";
  }
  return "?";
}

constexpr std::optional<Label> label_from_string(std::string_view s) {
  for (Label l : all_labels)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

/// True for labels that attach declaration data rather than scope edges.
constexpr bool is_declaration_label(Label l) {
  switch (l) {
    case Label::Mod:
    case Label::Cls:
    case Label::Var:
    case Label::ThisM:
    case Label::ThisC:
      return true;
    default:
      return false;
  }
}

constexpr bool is_ext_family(Label l) {
  return l == Label::Ext || l == Label::ExtPrt || l == Label::ExtPrv;
}

}  // namespace aml
