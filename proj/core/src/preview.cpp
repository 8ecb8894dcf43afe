#include "labelforge/preview.hpp"

#include "labelforge/errors.hpp"
#include "labelforge/font_metrics.hpp"

#include <algorithm>
#include <set>

namespace labelforge {

Vec2 reference_point(const LabelBox& box, PosCode code)
{
    Vec2 r;
    switch (code.horizontal) {
    case HAlign::Left:
        r.x = 0.0;
        break;
    case HAlign::Center:
        r.x = box.width / 2.0;
        break;
    case HAlign::Right:
        r.x = box.width;
        break;
    }
    switch (code.vertical) {
    case VAlign::Bottom:
        r.y = 0.0;
        break;
    case VAlign::Baseline:
        r.y = box.depth;
        break;
    case VAlign::Center:
        r.y = box.height / 2.0;
        break;
    case VAlign::Top:
        r.y = box.height;
        break;
    }
    return r;
}

LabelBox tag_box_for(const TagOccurrence& occ) { return estimate_text_box(occ.tag, occ.font_size * occ.scale); }

Vec2 psposn_device_point(const PsfragEntry& entry, const TagOccurrence& occ, const LabelBox& tag_box)
{
    const Vec2 r = reference_point(tag_box, entry.psposn);
    return occ.device_position + Affine::rotation(occ.rotation).apply_linear({r.x, r.y - tag_box.depth});
}

Affine place(const LabelBox& replacement, const PsfragEntry& entry, const TagOccurrence& occ,
             const LabelBox& tag_box)
{
    if (!(entry.scale > 0.0))
        throw SemanticError("psfrag scale must be positive for tag '" + entry.tag + "'");
    const Vec2 pinned = psposn_device_point(entry, occ, tag_box);
    const Vec2 r_latex = reference_point(replacement, entry.posn);
    return Affine::translation(pinned.x, pinned.y) * Affine::rotation(occ.rotation + entry.rot) *
           Affine::scaling(entry.scale, entry.scale) * Affine::translation(-r_latex.x, -r_latex.y);
}

LabelBox default_measure(std::string_view body)
{
    static constexpr std::string_view kMacros[] = {
        "\\psfragtextstyle", "\\psfragmathstyle", "\\psfragnumericstyle",
        "\\psfragscaletext", "\\psfragscalemath", "\\psfragscalenumeric",
    };
    std::string text(body);
    for (std::string_view macro : kMacros)
        text = replace_all(std::move(text), std::string(macro), "");
    std::size_t visible = 0;
    for (char c : text)
        if (c != '$' && c != '{' && c != '}' && c != ' ')
            ++visible;
    visible = std::max<std::size_t>(visible, 1);
    return {0.5 * kPreviewFontSize * static_cast<double>(visible), kPreviewFontSize, 0.2 * kPreviewFontSize};
}

namespace {

std::string matrix_literal(const Affine& m)
{
    return "[" + format_number(m.a) + " " + format_number(m.b) + " " + format_number(m.c) + " " +
           format_number(m.d) + " " + format_number(m.e) + " " + format_number(m.f) + "]";
}

std::string box_drawing(const LabelBox& box, const Affine& local, const std::string& tag)
{
    const std::string w = ps_number(box.width);
    const std::string h = ps_number(box.height);
    const std::string b = ps_number(box.depth);
    return "pop gsave " + matrix_literal(local) + " concat 0.3 setlinewidth newpath 0 0 moveto " + w +
           " 0 lineto " + w + " " + h + " lineto 0 " + h + " lineto closepath stroke newpath 0 " + b +
           " moveto " + w + " " + b + " lineto stroke /Times-Roman findfont " + ps_number(kPreviewTagFontSize) +
           " scalefont setfont 0.5 " + b + " moveto " + ps_string_literal(tag) + " show grestore";
}

void insert_banner(std::string& bytes)
{
    static constexpr std::string_view kBanner = "%%Creator: labelforge-preview\n";
    const std::size_t nl = bytes.find('\n');
    if (nl == std::string::npos) {
        if (!bytes.empty())
            bytes += '\n';
        bytes += kBanner;
    } else {
        bytes.insert(nl + 1, kBanner);
    }
}

} // namespace

PreviewResult substitute_preview(std::string_view eps, const TagRegistry& registry, const MeasureFn& measure)
{
    PreviewResult result;
    const auto occurrences = scan_tags(eps, &result.warnings);

    std::set<std::string> shown;
    std::size_t copied = 0;
    for (const auto& occ : occurrences) {
        const PsfragEntry* entry = registry.find(occ.tag);
        if (!entry) {
            result.unmatched_occurrences.push_back(occ.tag);
            result.warnings.push_back("no psfrag entry for shown string '" + occ.tag + "'");
            continue;
        }
        shown.insert(occ.tag);
        const LabelBox tag_box = tag_box_for(occ);
        const LabelBox replacement = measure(entry->body);
        const Affine device = place(replacement, *entry, occ, tag_box);
        const Affine local = occ.ctm.inverse() * device;
        result.bytes.append(eps.substr(copied, occ.show_start - copied));
        result.bytes += box_drawing(replacement, local, occ.tag);
        copied = occ.show_end;
        ++result.substituted;
    }
    result.bytes.append(eps.substr(copied));

    for (const auto& entry : registry.entries()) {
        if (!shown.contains(entry.tag)) {
            result.unused_entries.push_back(entry.tag);
            result.warnings.push_back("tag '" + entry.tag + "' does not occur in the EPS");
        }
    }
    insert_banner(result.bytes);
    return result;
}

} // namespace labelforge
