#include "labelforge/directive.hpp"

#include "labelforge/errors.hpp"

#include <cmath>

namespace labelforge {

std::string PosCode::str() const
{
    std::string s(2, ' ');
    switch (vertical) {
    case VAlign::Top:
        s[0] = 't';
        break;
    case VAlign::Center:
        s[0] = 'c';
        break;
    case VAlign::Bottom:
        s[0] = 'b';
        break;
    case VAlign::Baseline:
        s[0] = 'B';
        break;
    }
    switch (horizontal) {
    case HAlign::Left:
        s[1] = 'l';
        break;
    case HAlign::Center:
        s[1] = 'c';
        break;
    case HAlign::Right:
        s[1] = 'r';
        break;
    }
    return s;
}

std::optional<PosCode> PosCode::try_parse(std::string_view code)
{
    if (code.size() != 2)
        return std::nullopt;
    PosCode p;
    switch (code[0]) {
    case 't':
        p.vertical = VAlign::Top;
        break;
    case 'c':
        p.vertical = VAlign::Center;
        break;
    case 'b':
        p.vertical = VAlign::Bottom;
        break;
    case 'B':
        p.vertical = VAlign::Baseline;
        break;
    default:
        return std::nullopt;
    }
    switch (code[1]) {
    case 'l':
        p.horizontal = HAlign::Left;
        break;
    case 'c':
        p.horizontal = HAlign::Center;
        break;
    case 'r':
        p.horizontal = HAlign::Right;
        break;
    default:
        return std::nullopt;
    }
    return p;
}

PosCode PosCode::parse(std::string_view code)
{
    if (auto p = try_parse(code))
        return *p;
    throw SemanticError("invalid position code '" + std::string(code) +
                        "' (expected vertical t/c/b/B followed by horizontal l/c/r)");
}

bool is_valid_tag(std::string_view tag)
{
    if (tag.empty())
        return false;
    for (char c : tag) {
        const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (!alnum)
            return false;
    }
    return true;
}

void validate(const LabelDirective& directive)
{
    if (directive.psfrag_tag && !is_valid_tag(*directive.psfrag_tag))
        throw SemanticError("psfrag tag '" + *directive.psfrag_tag + "' must be nonempty and alphanumeric");
    if (directive.scaling && !(*directive.scaling > 0.0 && std::isfinite(*directive.scaling)))
        throw SemanticError("scaling must be a positive number");
    if (!std::isfinite(directive.rotation))
        throw SemanticError("rotation must be finite");
}

} // namespace labelforge
