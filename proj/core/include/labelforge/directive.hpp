#pragma once

#include "labelforge/expr.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace labelforge {

enum class VAlign { Top, Center, Bottom, Baseline };
enum class HAlign { Left, Center, Right };

// psfrag alignment code, written vertical first: "tl", "Bc", "cr", ...
struct PosCode {
    VAlign vertical = VAlign::Bottom;
    HAlign horizontal = HAlign::Center;

    std::string str() const;
    // Throws SemanticError on anything but the 12 valid codes.
    static PosCode parse(std::string_view code);
    static std::optional<PosCode> try_parse(std::string_view code);

    friend bool operator==(PosCode, PosCode) = default;
};

// Per-label overrides. Unset optionals mean Automatic; an unset ps_position
// means "copy position".
struct LabelDirective {
    Expr expr;
    std::optional<std::string> tex_command;
    std::optional<std::string> psfrag_tag;
    std::optional<PosCode> position;
    std::optional<PosCode> ps_position;
    double rotation = 0.0;
    std::optional<double> scaling;

    explicit LabelDirective(Expr e = {}) : expr(std::move(e)) {}

    friend bool operator==(const LabelDirective&, const LabelDirective&) = default;
};

bool is_valid_tag(std::string_view tag);

// Throws SemanticError when an explicit tag is not alphanumeric or the scaling
// is not positive.
void validate(const LabelDirective& directive);

} // namespace labelforge
