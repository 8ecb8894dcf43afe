#include "labelforge/labeling.hpp"

#include "labelforge/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace labelforge {

//------------------------------------------------------------------------
// TagRegistry

bool TagRegistry::contains(std::string_view tag) const
{
    const std::string key(tag);
    return index_.contains(key) || reserved_.contains(key);
}

bool TagRegistry::has_entry(std::string_view tag) const { return index_.contains(std::string(tag)); }

const PsfragEntry* TagRegistry::find(std::string_view tag) const
{
    const auto it = index_.find(std::string(tag));
    return it == index_.end() ? nullptr : &entries_[it->second];
}

void TagRegistry::reserve(const std::string& tag) { reserved_.insert(tag); }

void TagRegistry::insert(PsfragEntry entry)
{
    if (index_.contains(entry.tag))
        throw DuplicateTagError("duplicate psfrag tag '" + entry.tag + "'");
    index_.emplace(entry.tag, entries_.size());
    entries_.push_back(std::move(entry));
}

//------------------------------------------------------------------------
// Tags

std::string derive_tag(const Expr& expr, const TagRegistry& registry)
{
    std::string base;
    for (char c : print_source(expr)) {
        const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (alnum)
            base += c;
    }
    if (base.empty())
        base = "tag";
    if (!registry.contains(base))
        return base;
    for (std::size_t suffix = 2;; ++suffix) {
        std::string candidate = base + std::to_string(suffix);
        if (!registry.contains(candidate))
            return candidate;
    }
}

std::string shortlex_tag(std::size_t index)
{
    static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    std::string out;
    std::size_t n = index + 1;
    while (n > 0) {
        --n;
        out.insert(out.begin(), kAlphabet[n % kAlphabet.size()]);
        n /= kAlphabet.size();
    }
    return out;
}

RenumberResult renumber(const TagRegistry& registry)
{
    RenumberResult result;
    std::size_t i = 0;
    for (const auto& entry : registry.entries()) {
        PsfragEntry renamed = entry;
        renamed.tag = shortlex_tag(i++);
        result.tag_map.emplace(entry.tag, renamed.tag);
        result.registry.insert(std::move(renamed));
    }
    return result;
}

//------------------------------------------------------------------------
// Alignment

PosCode pos_from_anchor(Vec2 anchor)
{
    PosCode code;
    code.horizontal = anchor.x < -0.5 ? HAlign::Left : anchor.x > 0.5 ? HAlign::Right : HAlign::Center;
    code.vertical = anchor.y > 0.5 ? VAlign::Top : anchor.y < -0.5 ? VAlign::Bottom : VAlign::Center;
    return code;
}

Alignment resolve_alignment(const LabelDirective& directive, std::optional<Vec2> anchor, bool auto_position)
{
    Alignment a;
    if (directive.position)
        a.posn = *directive.position;
    else if (auto_position && anchor)
        a.posn = pos_from_anchor(*anchor);
    else
        a.posn = kFallbackPosition;
    a.psposn = directive.ps_position.value_or(a.posn);
    return a;
}

PsfragEntry build_entry(const LabelDirective& directive, std::optional<Vec2> anchor, const HookSet& hooks,
                        const ExportOptions& opts, const TagRegistry& registry, Diagnostics* warnings)
{
    validate(directive);

    PsfragEntry entry;
    if (directive.psfrag_tag) {
        if (const PsfragEntry* existing = registry.find(*directive.psfrag_tag)) {
            throw DuplicateTagError("duplicate psfrag tag '" + *directive.psfrag_tag + "' used by label " +
                                    existing->body + " and label " + print_source(directive.expr));
        }
        entry.tag = *directive.psfrag_tag;
    } else {
        entry.tag = derive_tag(directive.expr, registry);
    }

    if (directive.tex_command)
        entry.body = *directive.tex_command;
    else
        entry.body = guess_tex(directive.expr, hooks, !directive.scaling.has_value(), warnings);

    const Alignment align = resolve_alignment(directive, anchor, opts.auto_position);
    entry.posn = align.posn;
    entry.psposn = align.psposn;
    entry.rot = directive.rotation;
    entry.scale = directive.scaling.value_or(1.0);
    return entry;
}

//------------------------------------------------------------------------
// .tex emission

std::string format_number(double value)
{
    if (value == 0.0)
        return "0";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc())
        return "0";
    return std::string(buf, ptr);
}

std::string format_entry(const PsfragEntry& e)
{
    return "\\psfrag{" + e.tag + "}[" + e.posn.str() + "][" + e.psposn.str() + "][" + format_number(e.scale) + "][" +
           format_number(e.rot) + "]{" + e.body + "}";
}

namespace {

bool braces_balanced(std::string_view s)
{
    long depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\') {
            ++i;
            continue;
        }
        if (s[i] == '{')
            ++depth;
        else if (s[i] == '}' && --depth < 0)
            return false;
    }
    return depth == 0;
}

constexpr const char* kHookMacros[] = {
    "psfragtextstyle", "psfragmathstyle", "psfragnumericstyle",
    "psfragscaletext", "psfragscalemath", "psfragscalenumeric",
};

} // namespace

std::string emit_tex(const TagRegistry& registry, Diagnostics* warnings)
{
    std::string out = "% psfrag replacements generated by labelforge; \\input inside a psfrags environment\n";
    for (const char* macro : kHookMacros)
        out += std::string("\\providecommand{\\") + macro + "}{}\n";
    for (const auto& entry : registry.entries()) {
        if (warnings && !braces_balanced(entry.body))
            warnings->push_back("unbalanced braces in body of tag '" + entry.tag + "'");
        if (warnings && entry.body.find('\n') != std::string::npos)
            warnings->push_back("body of tag '" + entry.tag + "' contains a line break");
        out += format_entry(entry);
        out += '\n';
    }
    return out;
}

//------------------------------------------------------------------------
// .tex parsing

std::vector<PsfragEntry> parse_tex(std::string_view text)
{
    static constexpr std::string_view kPrefix = "\\psfrag{";
    std::vector<PsfragEntry> entries;
    std::size_t line_start = 0;
    while (line_start < text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos)
            line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        std::size_t indent = 0;
        while (indent < line.size() && (line[indent] == ' ' || line[indent] == '\t'))
            ++indent;
        const std::size_t base = line_start + indent;
        line.remove_prefix(indent);
        line_start = line_end + 1;
        if (!line.starts_with(kPrefix))
            continue;

        PsfragEntry entry;
        std::size_t pos = kPrefix.size();
        const std::size_t tag_end = line.find('}', pos);
        if (tag_end == std::string_view::npos)
            throw ParseError(base + pos, "unterminated \\psfrag tag");
        entry.tag = std::string(line.substr(pos, tag_end - pos));
        pos = tag_end + 1;

        std::vector<std::string_view> options;
        while (pos < line.size() && line[pos] == '[') {
            const std::size_t close = line.find(']', pos);
            if (close == std::string_view::npos)
                throw ParseError(base + pos, "unterminated optional argument");
            options.push_back(line.substr(pos + 1, close - pos - 1));
            pos = close + 1;
        }
        if (options.size() > 4)
            throw ParseError(base + pos, "too many optional arguments to \\psfrag");
        if (pos >= line.size() || line[pos] != '{')
            throw ParseError(base + pos, "expected '{' starting the replacement");
        const std::size_t body_end = line.rfind('}');
        if (body_end == std::string_view::npos || body_end <= pos)
            throw ParseError(base + pos, "unterminated replacement body");
        entry.body = std::string(line.substr(pos + 1, body_end - pos - 1));

        auto code = [&](std::size_t i, PosCode fallback) {
            if (i >= options.size() || options[i].empty())
                return fallback;
            if (auto p = PosCode::try_parse(options[i]))
                return *p;
            throw ParseError(base, "invalid position code '" + std::string(options[i]) + "'");
        };
        auto number = [&](std::size_t i, double fallback) {
            if (i >= options.size() || options[i].empty())
                return fallback;
            double v = 0.0;
            const auto opt = options[i];
            const auto [ptr, ec] = std::from_chars(opt.data(), opt.data() + opt.size(), v);
            if (ec != std::errc() || ptr != opt.data() + opt.size())
                throw ParseError(base, "invalid number '" + std::string(opt) + "'");
            return v;
        };
        entry.posn = code(0, PosCode{VAlign::Baseline, HAlign::Left});
        entry.psposn = code(1, entry.posn);
        entry.scale = number(2, 1.0);
        entry.rot = number(3, 0.0);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string rewrite_tex_tags(std::string_view text, const TagMap& tag_map)
{
    static constexpr std::string_view kPrefix = "\\psfrag{";
    std::string out;
    out.reserve(text.size());
    std::size_t line_start = 0;
    while (line_start < text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        line_end = line_end == std::string_view::npos ? text.size() : line_end + 1;
        const std::string_view line = text.substr(line_start, line_end - line_start);
        line_start = line_end;

        std::size_t indent = 0;
        while (indent < line.size() && (line[indent] == ' ' || line[indent] == '\t'))
            ++indent;
        const std::size_t tag_begin = indent + kPrefix.size();
        const std::size_t tag_end = line.find('}', tag_begin);
        if (line.substr(indent).starts_with(kPrefix) && tag_end != std::string_view::npos) {
            const auto it = tag_map.find(std::string(line.substr(tag_begin, tag_end - tag_begin)));
            if (it != tag_map.end()) {
                out.append(line.substr(0, tag_begin));
                out += it->second;
                out.append(line.substr(tag_end));
                continue;
            }
        }
        out.append(line);
    }
    return out;
}

} // namespace labelforge
