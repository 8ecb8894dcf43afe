#pragma once

#include "labelforge/directive.hpp"
#include "labelforge/expr.hpp"
#include "labelforge/geometry.hpp"

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace labelforge {

struct Range {
    double min = 0.0;
    double max = 1.0;
    double extent() const { return max - min; }
    double mid() const { return 0.5 * (min + max); }
    friend bool operator==(Range, Range) = default;
};

struct StrokeStyle {
    double width = 0.5;
    std::vector<double> dash;
    std::optional<double> gray;
    std::optional<double> hue;
    friend bool operator==(const StrokeStyle&, const StrokeStyle&) = default;
};

struct Polyline {
    std::vector<Vec2> points;
    StrokeStyle style;
    friend bool operator==(const Polyline&, const Polyline&) = default;
};

struct Circle {
    Vec2 center;
    double radius = 1.0;
    double start_degrees = 0.0;
    double end_degrees = 360.0;
    StrokeStyle style;
    friend bool operator==(const Circle&, const Circle&) = default;
};

struct Arrow {
    Vec2 from;
    Vec2 to;
    StrokeStyle style;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Either a bare expression or an expression carrying psfrag overrides.
using TextContent = std::variant<Expr, LabelDirective>;

const Expr& content_expr(const TextContent& content);

// Text placed at a plot-space position. anchor names the point of the label
// box sitting on position (-1 left/bottom, 0 center, +1 right/top). direction
// is the device-space reading direction.
struct TextPrimitive {
    TextContent content;
    Vec2 position;
    Vec2 anchor{0.0, 0.0};
    Vec2 direction{1.0, 0.0};

    const Expr& expr() const { return content_expr(content); }
    const LabelDirective* directive() const { return std::get_if<LabelDirective>(&content); }
    friend bool operator==(const TextPrimitive&, const TextPrimitive&) = default;
};

using Primitive = std::variant<Polyline, Circle, Arrow, TextPrimitive>;

struct Tick {
    double value = 0.0;
    TextContent label;
    friend bool operator==(const Tick&, const Tick&) = default;
};

enum class Edge { Bottom = 0, Left = 1, Top = 2, Right = 3 };

struct DecorationSpec {
    std::optional<TextContent> plot_label;
    std::optional<std::pair<TextContent, TextContent>> axes_labels;
    // Indexed by Edge. A present (possibly empty) list also draws the frame.
    std::array<std::optional<std::vector<Tick>>, 4> frame_ticks;
    std::optional<std::vector<double>> grid_x;
    std::optional<std::vector<double>> grid_y;

    bool empty() const;
    std::optional<std::vector<Tick>>& ticks(Edge e) { return frame_ticks[static_cast<int>(e)]; }
    const std::optional<std::vector<Tick>>& ticks(Edge e) const { return frame_ticks[static_cast<int>(e)]; }
    friend bool operator==(const DecorationSpec&, const DecorationSpec&) = default;
};

struct Scene {
    Range x_range;
    Range y_range;
    double width = 360.0;
    double height = 223.0;
    std::vector<Primitive> primitives;
    DecorationSpec decorations;
    friend bool operator==(const Scene&, const Scene&) = default;
};

struct ExportOptions {
    std::string tex_suffix = "-psfrag.tex";
    std::string eps_suffix = "-psfrag.eps";
    bool renumber_tags = false;
    bool auto_convert_text = true;
    bool auto_position = true;

    // Disabling auto_position also disables auto conversion.
    bool effective_auto_convert_text() const { return auto_position && auto_convert_text; }
};

// Throws SemanticError when ranges, size, points, anchors, directions, or
// tick orderings are invalid.
void validate(const Scene& scene);

// Fraction of the page left blank on each side of the plot area.
inline constexpr double kPlotMargin = 0.05;

// Maps plot coordinates onto (0,0)-(width,height) leaving kPlotMargin on
// every side.
Affine plot_to_device(const Scene& scene);

// Tick mark length as a fraction of the shorter plot-range extent.
inline constexpr double kTickLengthFraction = 0.02;

// Turns frame ticks, gridlines, axes labels and the plot label into explicit
// primitives appended after the existing ones. Returns a scene with empty
// decorations.
Scene expand_decorations(const Scene& scene);

// Wraps every bare-expression text primitive in a default LabelDirective.
Scene auto_wrap(const Scene& scene);

// Ticks from `from` to `to` (inclusive) every `step`, labelled with their value.
std::vector<Tick> linear_ticks(double from, double to, double step);

} // namespace labelforge
