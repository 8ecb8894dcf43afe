#pragma once

#include "labelforge/directive.hpp"
#include "labelforge/geometry.hpp"
#include "labelforge/scene.hpp"
#include "labelforge/tex.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace labelforge {

// One \psfrag{tag}[posn][psposn][scale][rot]{body} line.
struct PsfragEntry {
    std::string tag;
    PosCode posn;
    PosCode psposn;
    double scale = 1.0;
    double rot = 0.0;
    std::string body;

    friend bool operator==(const PsfragEntry&, const PsfragEntry&) = default;
};

// Insertion-ordered, tag-unique collection of entries. Tags can also be
// reserved up front so derived tags steer around explicit ones.
class TagRegistry {
public:
    bool contains(std::string_view tag) const;
    bool has_entry(std::string_view tag) const;
    const PsfragEntry* find(std::string_view tag) const;

    void reserve(const std::string& tag);
    // Throws DuplicateTagError when an entry with the same tag exists.
    void insert(PsfragEntry entry);

    const std::vector<PsfragEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<PsfragEntry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_set<std::string> reserved_;
};

using TagMap = std::map<std::string, std::string>;

// Alphanumeric tag from the expression's source form; "tag" if nothing
// survives; the smallest numeric suffix >= 2 resolves collisions.
std::string derive_tag(const Expr& expr, const TagRegistry& registry);

// index-th string (0-based) in shortlex order over a-z then A-Z.
std::string shortlex_tag(std::size_t index);

struct RenumberResult {
    TagRegistry registry;
    TagMap tag_map; // old -> new
};

RenumberResult renumber(const TagRegistry& registry);

PosCode pos_from_anchor(Vec2 anchor);

struct Alignment {
    PosCode posn;
    PosCode psposn;
};

// Alignment when nothing else decides: bottom line, centered horizontally.
inline constexpr PosCode kFallbackPosition{VAlign::Bottom, HAlign::Center};

Alignment resolve_alignment(const LabelDirective& directive, std::optional<Vec2> anchor, bool auto_position);

PsfragEntry build_entry(const LabelDirective& directive, std::optional<Vec2> anchor, const HookSet& hooks,
                        const ExportOptions& opts, const TagRegistry& registry, Diagnostics* warnings = nullptr);

// Shortest decimal form that reads back to the same double ("1", "0.75").
std::string format_number(double value);

std::string format_entry(const PsfragEntry& entry);

// The companion .tex file: header comment, \providecommand defaults for the
// six style/scale hooks, then one \psfrag line per entry.
std::string emit_tex(const TagRegistry& registry, Diagnostics* warnings = nullptr);

// Reads \psfrag lines back. Omitted optional arguments take psfrag's
// defaults ([Bl], psposn = posn, scale 1, rotation 0). Other lines are
// ignored. Throws ParseError.
std::vector<PsfragEntry> parse_tex(std::string_view text);

// Renames the tag of every \psfrag line found in tag_map; all other bytes
// are kept.
std::string rewrite_tex_tags(std::string_view text, const TagMap& tag_map);

} // namespace labelforge
