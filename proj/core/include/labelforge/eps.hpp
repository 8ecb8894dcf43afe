#pragma once

#include "labelforge/geometry.hpp"
#include "labelforge/labeling.hpp"
#include "labelforge/scene.hpp"
#include "labelforge/tex.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace labelforge {

//------------------------------------------------------------------------
// Tokens

enum class TokenKind {
    Number,
    Name,        // executable name, also "<<" and ">>"
    LiteralName, // /name, text excludes the slash
    String,      // (...), <hex> or <~ascii85~>
    ArrayOpen,
    ArrayClose,
    ProcOpen,
    ProcClose,
    Comment,     // text includes the leading '%'
    Whitespace,  // only for whitespace trailing the last token
};

// Every token owns the whitespace in front of it, so the raw spans
// [begin, end) of consecutive tokens tile the input.
struct PsToken {
    TokenKind kind = TokenKind::Name;
    std::size_t begin = 0; // start of leading whitespace
    std::size_t start = 0; // first byte of the token itself
    std::size_t end = 0;
    std::string text;    // source bytes of the token (without leading '/')
    std::string decoded; // string contents after escape processing
    double number = 0.0;
};

// Throws ParseError on unterminated strings or procedures and unbalanced
// closing delimiters.
std::vector<PsToken> tokenize(std::string_view bytes);

//------------------------------------------------------------------------
// Tag scanning

struct TagOccurrence {
    std::string tag;
    Vec2 device_position; // current point at show, device space
    double rotation = 0.0; // slope of the CTM x axis, degrees in (-180, 180]
    double scale = 1.0;    // length of the CTM x column
    double font_size = 0.0;
    Affine ctm;
    std::size_t string_start = 0; // byte span of the string literal
    std::size_t string_end = 0;
    std::size_t show_start = 0; // byte span of the show operator
    std::size_t show_end = 0;
};

// Runs a small PostScript subset over the file and reports every string
// passed to show, in byte order. Procedures are not executed; unknown
// operators are skipped. Throws ParseError for tokenizer errors and for
// operand underflow or singular matrices on the handled graphics operators.
std::vector<TagOccurrence> scan_tags(std::string_view bytes, Diagnostics* warnings = nullptr);

//------------------------------------------------------------------------
// Writing

// Device placement of one text primitive as written.
struct Placement {
    std::size_t primitive_index = 0;
    std::string text;
    bool tagged = false;
    Vec2 anchor_point;    // device image of the text primitive position
    Vec2 device_position; // baseline start passed to show
    double rotation = 0.0;
    double font_size = 0.0;
    LabelBox box;
};

struct EpsOutput {
    std::string bytes;
    std::vector<Placement> placements;
};

inline constexpr double kArrowHeadLength = 8.0;
inline constexpr double kArrowHalfAngle = 25.0;

// Serializes an expanded scene as EPSF-3.0. tag_text maps primitive indices
// of tagged text primitives to the tag to show; other text shows its plain
// rendering. Throws SemanticError for non-finite coordinates.
EpsOutput write_eps(const Scene& scene, const std::map<std::size_t, std::string>& tag_text);

// PostScript string literal, parentheses included.
std::string ps_string_literal(std::string_view text);

// Number formatting used by the writer: at most 4 decimals, no trailing zeros.
std::string ps_number(double value);

//------------------------------------------------------------------------
// Rewriting

// Replaces each shown string equal to a key of tag_map by its value; every
// other byte is preserved. Throws MissingTagsError if a key never occurs.
std::string rewrite_tags(std::string_view bytes, const TagMap& tag_map);

} // namespace labelforge
