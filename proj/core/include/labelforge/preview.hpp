#pragma once

#include "labelforge/directive.hpp"
#include "labelforge/eps.hpp"
#include "labelforge/geometry.hpp"
#include "labelforge/labeling.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace labelforge {

// Reference point of a box for a psfrag code, in the box frame (origin at
// the bottom-left corner, baseline at y = depth).
Vec2 reference_point(const LabelBox& box, PosCode code);

// Estimated box of the tag string as shown at the occurrence, device units.
LabelBox tag_box_for(const TagOccurrence& occ);

// Device image of the tag box point selected by psposn. The tag frame has its
// baseline start at occ.device_position and is rotated by occ.rotation.
Vec2 psposn_device_point(const PsfragEntry& entry, const TagOccurrence& occ, const LabelBox& tag_box);

// Transform taking the replacement box frame to device space:
//   Translate(P_ps) * Rotate(occ.rotation + entry.rot) * Scale(entry.scale) * Translate(-r_latex)
// with r_latex the posn reference point of the replacement box. Throws
// SemanticError when entry.scale is not positive.
Affine place(const LabelBox& replacement, const PsfragEntry& entry, const TagOccurrence& occ,
             const LabelBox& tag_box);

using MeasureFn = std::function<LabelBox(std::string_view body)>;

inline constexpr double kPreviewFontSize = 10.0;
inline constexpr double kPreviewTagFontSize = 4.0;

// Character-count estimate: hook macro names and the characters $ { } are
// dropped, each remaining character is half the font size wide.
LabelBox default_measure(std::string_view body);

struct PreviewResult {
    std::string bytes;
    std::size_t substituted = 0;
    std::vector<std::string> unmatched_occurrences; // shown strings without an entry
    std::vector<std::string> unused_entries;        // entries whose tag never shows
    Diagnostics warnings;
};

// Replaces every show of a registered tag by the outline of its placed
// replacement box, a baseline segment and the tag name in small type.
// Unregistered strings pass through with a warning.
PreviewResult substitute_preview(std::string_view eps, const TagRegistry& registry,
                                 const MeasureFn& measure = default_measure);

} // namespace labelforge
