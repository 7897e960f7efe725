#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace aml {

/// How a reference scope is related to the argument scopes of an
/// internal modifier.
enum class InternalReferenceRule { AnyEnclosing, Innermost };

enum class ResolutionMode { LabelOrder, FullPathOrder };

/// Semantic dials distinguishing language families. Defaults match the
/// C# preset.
struct VariantConfig {
  /// Arguments of mod(...) must be ancestors of the declaring module.
  bool internal_args_must_be_ancestors = false;
  InternalReferenceRule internal_reference_rule = InternalReferenceRule::Innermost;
  /// Every scope on the access path (except the target) must also sit in
  /// one of the argument modules.
  bool internal_whole_path = false;
  /// Private access additionally requires a purely lexical path.
  bool private_path_must_be_lexical = false;
  /// Private access accepted when reference and target share an
  /// enclosing class.
  bool private_shared_enclosing = false;
  ResolutionMode resolution_mode = ResolutionMode::LabelOrder;
  /// Extension clauses may carry protected/private, weakening inherited
  /// members along the path.
  bool inheritance_modifiers = false;

  friend bool operator==(const VariantConfig&, const VariantConfig&) = default;
};

inline VariantConfig preset_csharp() { return VariantConfig{}; }

inline VariantConfig preset_java() {
  VariantConfig c;
  c.internal_whole_path = true;
  c.private_path_must_be_lexical = true;
  c.private_shared_enclosing = true;
  c.resolution_mode = ResolutionMode::FullPathOrder;
  return c;
}

inline VariantConfig preset_rust_modules() {
  VariantConfig c;
  c.internal_args_must_be_ancestors = true;
  c.internal_reference_rule = InternalReferenceRule::AnyEnclosing;
  return c;
}

inline VariantConfig preset_cpp_inheritance() {
  VariantConfig c;
  c.inheritance_modifiers = true;
  return c;
}

inline std::optional<VariantConfig> preset_by_name(std::string_view name) {
  if (name == "java") return preset_java();
  if (name == "csharp") return preset_csharp();
  if (name == "rust-modules") return preset_rust_modules();
  if (name == "cpp-inheritance") return preset_cpp_inheritance();
  return std::nullopt;
}

/// Applies one `#pragma key=value` override; false on unknown key/value.
inline bool apply_config_pragma(VariantConfig& cfg, std::string_view key,
                                std::string_view value) {
  auto as_bool = [&](bool& out) {
    if (value == "true") return out = true, true;
    if (value == "false") return out = false, true;
    return false;
  };
  if (key == "preset") {
    auto p = preset_by_name(value);
    if (!p) return false;
    cfg = *p;
    return true;
  }
  if (key == "internal_args_must_be_ancestors")
    return as_bool(cfg.internal_args_must_be_ancestors);
  if (key == "internal_reference_rule") {
    if (value == "any_enclosing") {
      cfg.internal_reference_rule = InternalReferenceRule::AnyEnclosing;
      return true;
    }
    if (value == "innermost") {
      cfg.internal_reference_rule = InternalReferenceRule::Innermost;
      return true;
    }
    return false;
  }
  if (key == "internal_whole_path") return as_bool(cfg.internal_whole_path);
  if (key == "private_path_must_be_lexical")
    return as_bool(cfg.private_path_must_be_lexical);
  if (key == "private_shared_enclosing")
    return as_bool(cfg.private_shared_enclosing);
  if (key == "resolution_mode") {
    if (value == "label_order") {
      cfg.resolution_mode = ResolutionMode::LabelOrder;
      return true;
    }
    if (value == "full_path_order") {
      cfg.resolution_mode = ResolutionMode::FullPathOrder;
      return true;
    }
    return false;
  }
  if (key == "inheritance_modifiers") return as_bool(cfg.inheritance_modifiers);
  return false;
}

}  // namespace aml
