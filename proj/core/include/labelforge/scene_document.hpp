#pragma once

#include "labelforge/scene.hpp"
#include "labelforge/tex.hpp"

#include <string_view>

namespace labelforge {

inline constexpr int kSceneDocumentVersion = 1;

// Reads a version 1 scene document (JSON). Malformed JSON and expression
// syntax errors throw ParseError; schema violations, unknown keys and invalid
// values throw SemanticError. Text directions are normalized to unit length.
Scene parse_scene_document(std::string_view text);

// Reads a hook file: per-class ("text", "math", "numeric") lists of built-in
// pre_apply transform names and post_replace [find, replace] pairs.
HookSet parse_hook_document(std::string_view text);

} // namespace labelforge
