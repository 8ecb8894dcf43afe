#include "labelforge/scene.hpp"

#include "labelforge/errors.hpp"
#include "labelforge/font_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace labelforge {

const Expr& content_expr(const TextContent& content)
{
    if (const auto* d = std::get_if<LabelDirective>(&content))
        return d->expr;
    return std::get<Expr>(content);
}

bool DecorationSpec::empty() const
{
    if (plot_label || axes_labels || grid_x || grid_y)
        return false;
    return std::none_of(frame_ticks.begin(), frame_ticks.end(), [](const auto& t) { return t.has_value(); });
}

namespace {

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void check_content(const TextContent& content)
{
    if (const auto* d = std::get_if<LabelDirective>(&content))
        validate(*d);
}

void check_ticks(const std::vector<Tick>& ticks, const char* edge)
{
    for (std::size_t i = 0; i < ticks.size(); ++i) {
        if (!std::isfinite(ticks[i].value))
            throw SemanticError(std::string(edge) + " tick value is not finite");
        if (i > 0 && !(ticks[i - 1].value < ticks[i].value))
            throw SemanticError(std::string(edge) + " tick values must be strictly increasing");
        check_content(ticks[i].label);
    }
}

StrokeStyle grid_style()
{
    StrokeStyle s;
    s.width = 0.5;
    s.gray = 0.5;
    s.dash = {1.0, 2.0};
    return s;
}

std::string plain_label(const TextContent& content) { return display_text(content_expr(content)); }

} // namespace

void validate(const Scene& scene)
{
    if (!(std::isfinite(scene.x_range.min) && std::isfinite(scene.x_range.max) && scene.x_range.min < scene.x_range.max))
        throw SemanticError("plot range requires xmin < xmax");
    if (!(std::isfinite(scene.y_range.min) && std::isfinite(scene.y_range.max) && scene.y_range.min < scene.y_range.max))
        throw SemanticError("plot range requires ymin < ymax");
    if (!(scene.width > 0.0 && scene.height > 0.0 && std::isfinite(scene.width) && std::isfinite(scene.height)))
        throw SemanticError("target size must be positive");

    for (const auto& prim : scene.primitives) {
        if (const auto* pl = std::get_if<Polyline>(&prim)) {
            if (pl->points.size() < 2)
                throw SemanticError("polyline needs at least two points");
            for (const auto& p : pl->points)
                if (!finite(p))
                    throw SemanticError("polyline point is not finite");
        } else if (const auto* c = std::get_if<Circle>(&prim)) {
            if (!(c->radius > 0.0) || !finite(c->center))
                throw SemanticError("circle needs a finite center and positive radius");
        } else if (const auto* a = std::get_if<Arrow>(&prim)) {
            if (!finite(a->from) || !finite(a->to))
                throw SemanticError("arrow endpoint is not finite");
        } else {
            const auto& t = std::get<TextPrimitive>(prim);
            if (!finite(t.position))
                throw SemanticError("text position is not finite");
            if (!(std::fabs(t.anchor.x) <= 1.0 && std::fabs(t.anchor.y) <= 1.0))
                throw SemanticError("text anchor components must lie in [-1, 1]");
            if (!(std::fabs(t.direction.norm() - 1.0) <= 1e-9))
                throw SemanticError("text direction must be a unit vector");
            check_content(t.content);
        }
    }

    static constexpr const char* kEdgeNames[] = {"bottom", "left", "top", "right"};
    for (int e = 0; e < 4; ++e)
        if (scene.decorations.frame_ticks[e])
            check_ticks(*scene.decorations.frame_ticks[e], kEdgeNames[e]);
    if (scene.decorations.plot_label)
        check_content(*scene.decorations.plot_label);
    if (scene.decorations.axes_labels) {
        check_content(scene.decorations.axes_labels->first);
        check_content(scene.decorations.axes_labels->second);
    }
}

Affine plot_to_device(const Scene& scene)
{
    const double sx = (1.0 - 2.0 * kPlotMargin) * scene.width / scene.x_range.extent();
    const double sy = (1.0 - 2.0 * kPlotMargin) * scene.height / scene.y_range.extent();
    return {sx, 0.0, 0.0, sy, kPlotMargin * scene.width - sx * scene.x_range.min,
            kPlotMargin * scene.height - sy * scene.y_range.min};
}

Scene expand_decorations(const Scene& scene)
{
    const DecorationSpec& deco = scene.decorations;
    if (deco.empty())
        return scene;

    Scene out = scene;
    out.decorations = {};
    auto& prims = out.primitives;

    const Range xr = scene.x_range;
    const Range yr = scene.y_range;
    const Affine dev = plot_to_device(scene);
    // One label height in plot units along each axis.
    const double label_h_y = kDefaultFontSize / dev.d;
    const double label_h_x = kDefaultFontSize / dev.a;
    const double tick_len = kTickLengthFraction * std::min(xr.extent(), yr.extent());

    if (deco.grid_x)
        for (double v : *deco.grid_x)
            prims.emplace_back(Polyline{{{v, yr.min}, {v, yr.max}}, grid_style()});
    if (deco.grid_y)
        for (double v : *deco.grid_y)
            prims.emplace_back(Polyline{{{xr.min, v}, {xr.max, v}}, grid_style()});

    const bool framed =
        std::any_of(deco.frame_ticks.begin(), deco.frame_ticks.end(), [](const auto& t) { return t.has_value(); });
    if (framed) {
        prims.emplace_back(Polyline{
            {{xr.min, yr.min}, {xr.max, yr.min}, {xr.max, yr.max}, {xr.min, yr.max}, {xr.min, yr.min}}, {}});
    }

    // Tick marks point inward from the frame edge.
    auto marks = [&](Edge edge, auto make) {
        if (const auto& ticks = deco.ticks(edge))
            for (const auto& t : *ticks)
                prims.emplace_back(make(t.value));
    };
    marks(Edge::Bottom, [&](double v) { return Polyline{{{v, yr.min}, {v, yr.min + tick_len}}, {}}; });
    marks(Edge::Left, [&](double v) { return Polyline{{{xr.min, v}, {xr.min + tick_len, v}}, {}}; });
    marks(Edge::Top, [&](double v) { return Polyline{{{v, yr.max}, {v, yr.max - tick_len}}, {}}; });
    marks(Edge::Right, [&](double v) { return Polyline{{{xr.max, v}, {xr.max - tick_len, v}}, {}}; });

    auto labels = [&](Edge edge, Vec2 anchor, auto position) {
        if (const auto& ticks = deco.ticks(edge))
            for (const auto& t : *ticks)
                prims.emplace_back(TextPrimitive{t.label, position(t.value), anchor, {1.0, 0.0}});
    };
    labels(Edge::Bottom, {0.0, 1.0}, [&](double v) { return Vec2{v, yr.min}; });
    labels(Edge::Left, {1.0, 0.0}, [&](double v) { return Vec2{xr.min, v}; });
    labels(Edge::Top, {0.0, -1.0}, [&](double v) { return Vec2{v, yr.max}; });
    labels(Edge::Right, {-1.0, 0.0}, [&](double v) { return Vec2{xr.max, v}; });

    auto has_labels = [&](Edge edge) {
        const auto& t = deco.ticks(edge);
        return t && !t->empty();
    };

    if (deco.axes_labels) {
        const double below = has_labels(Edge::Bottom) ? 2.0 * label_h_y : 0.5 * label_h_y;
        prims.emplace_back(TextPrimitive{deco.axes_labels->first, {xr.mid(), yr.min - below}, {0.0, 1.0}, {1.0, 0.0}});

        double left = 0.5 * label_h_x;
        if (has_labels(Edge::Left)) {
            double widest = 0.0;
            for (const auto& t : *deco.ticks(Edge::Left))
                widest = std::max(widest, times_roman_width(plain_label(t.label), kDefaultFontSize));
            left = widest / dev.a + label_h_x;
        }
        prims.emplace_back(TextPrimitive{deco.axes_labels->second, {xr.min - left, yr.mid()}, {0.0, -1.0}, {0.0, 1.0}});
    }

    if (deco.plot_label) {
        const double above = has_labels(Edge::Top) ? 2.0 * label_h_y : 0.5 * label_h_y;
        prims.emplace_back(TextPrimitive{*deco.plot_label, {xr.mid(), yr.max + above}, {0.0, -1.0}, {1.0, 0.0}});
    }
    return out;
}

Scene auto_wrap(const Scene& scene)
{
    Scene out = scene;
    for (auto& prim : out.primitives) {
        auto* text = std::get_if<TextPrimitive>(&prim);
        if (!text)
            continue;
        if (const auto* e = std::get_if<Expr>(&text->content))
            text->content = LabelDirective(*e);
    }
    return out;
}

std::vector<Tick> linear_ticks(double from, double to, double step)
{
    if (!(step > 0.0) || !(from <= to) || !std::isfinite(from) || !std::isfinite(to))
        throw SemanticError("linear ticks need from <= to and a positive step");
    int decimals = 0;
    while (decimals < 6 && std::fabs(step * std::pow(10.0, decimals) - std::round(step * std::pow(10.0, decimals))) > 1e-9)
        ++decimals;
    while (decimals < 6 &&
           std::fabs(from * std::pow(10.0, decimals) - std::round(from * std::pow(10.0, decimals))) > 1e-9)
        ++decimals;

    std::vector<Tick> ticks;
    const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
        const double v = from + static_cast<double>(i) * step;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
        std::string text = buf;
        if (text == "-0" || (text.starts_with("-0.") && std::strtod(buf, nullptr) == 0.0))
            text.erase(0, 1);
        Expr label = parse_expr(text);
        ticks.push_back({v, label});
    }
    return ticks;
}

} // namespace labelforge
