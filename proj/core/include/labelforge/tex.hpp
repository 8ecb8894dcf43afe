#pragma once

#include "labelforge/expr.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace labelforge {

enum class LabelClass { Text = 0, Math = 1, Numeric = 2 };

const char* to_string(LabelClass c);

// Str -> Text, numeric_q -> Numeric, anything else -> Math.
LabelClass classify(const Expr& expr);

using ExprTransform = std::function<Expr(const Expr&)>;
using Replacement = std::pair<std::string, std::string>;

// Per-class hooks run around LaTeX conversion. pre_apply transforms run on
// the expression before rendering; post_replace pairs are literal string
// substitutions on the rendered result. Both run in list order.
struct HookSet {
    std::array<std::vector<ExprTransform>, 3> pre_apply;
    std::array<std::vector<Replacement>, 3> post_replace;

    std::vector<ExprTransform>& pre(LabelClass c) { return pre_apply[static_cast<int>(c)]; }
    const std::vector<ExprTransform>& pre(LabelClass c) const { return pre_apply[static_cast<int>(c)]; }
    std::vector<Replacement>& post(LabelClass c) { return post_replace[static_cast<int>(c)]; }
    const std::vector<Replacement>& post(LabelClass c) const { return post_replace[static_cast<int>(c)]; }
};

// Built-in named transforms usable from hook files: "hold" and
// "expand_negations". Throws SemanticError for unknown names.
ExprTransform builtin_transform(const std::string& name);

// Non-fatal notes raised during conversion (unknown heads and the like).
using Diagnostics = std::vector<std::string>;

// LaTeX math rendering of an expression. Outside a Hold, Plus and Times
// operands print in canonical order (numbers first, then symbols
// lexicographically, then everything else as written).
std::string to_tex(const Expr& expr, Diagnostics* warnings = nullptr);

// Escapes a string for LaTeX text mode.
std::string escape_tex_text(const std::string& text);

// Replaces every occurrence of find with replace, left to right, without
// rescanning inserted text.
std::string replace_all(std::string subject, const std::string& find, const std::string& replace);

// Full label body: pre_apply hooks, rendering, style/scale template, then
// post_replace. The scale hook macro is only included when scaling is left
// automatic.
std::string guess_tex(const Expr& expr, const HookSet& hooks, bool automatic_scaling = true,
                      Diagnostics* warnings = nullptr);

} // namespace labelforge
