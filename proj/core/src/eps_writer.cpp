#include "labelforge/eps.hpp"

#include "labelforge/errors.hpp"
#include "labelforge/font_metrics.hpp"

#include <cmath>
#include <cstdio>

namespace labelforge {

namespace {

constexpr int kEllipseSegments = 72;

const char* const kProlog = "/n {newpath} bind def\n"
                            "/m {moveto} bind def\n"
                            "/l {lineto} bind def\n"
                            "/s {stroke} bind def\n"
                            "/w {setlinewidth} bind def\n"
                            "/g {setgray} bind def\n"
                            "/hsb {sethsbcolor} bind def\n"
                            "/d {setdash} bind def\n";

void require_finite(Vec2 p, const char* what)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw SemanticError(std::string("non-finite coordinate in ") + what);
}

std::string point(Vec2 p) { return ps_number(p.x) + " " + ps_number(p.y); }

class Writer {
public:
    Writer(const Scene& scene, const std::map<std::size_t, std::string>& tag_text)
        : scene_(scene), tag_text_(tag_text), to_device_(plot_to_device(scene))
    {
    }

    EpsOutput run()
    {
        out_.bytes += "%!PS-Adobe-3.0 EPSF-3.0\n";
        out_.bytes += "%%BoundingBox: 0 0 " + std::to_string(static_cast<long>(std::ceil(scene_.width))) + " " +
                      std::to_string(static_cast<long>(std::ceil(scene_.height))) + "\n";
        out_.bytes += "%%Creator: labelforge\n";
        out_.bytes += "%%EndComments\n";
        out_.bytes += kProlog;
        out_.bytes += "gsave\n";
        out_.bytes += "/Times-Roman findfont " + ps_number(kDefaultFontSize) + " scalefont setfont\n";
        for (std::size_t i = 0; i < scene_.primitives.size(); ++i) {
            std::visit([&](const auto& p) { emit(i, p); }, scene_.primitives[i]);
        }
        out_.bytes += "grestore\n";
        out_.bytes += "showpage\n";
        out_.bytes += "%%EOF\n";
        return std::move(out_);
    }

private:
    std::string style_prefix(const StrokeStyle& style) const
    {
        std::string s = "gsave " + ps_number(style.width) + " w";
        if (!style.dash.empty()) {
            s += " [";
            for (std::size_t i = 0; i < style.dash.size(); ++i)
                s += (i ? " " : "") + ps_number(style.dash[i]);
            s += "] 0 d";
        }
        if (style.gray)
            s += " " + ps_number(*style.gray) + " g";
        else if (style.hue)
            s += " " + ps_number(*style.hue) + " 1 1 hsb";
        return s + "\n";
    }

    void stroke_path(const std::vector<Vec2>& device_points, const StrokeStyle& style, const char* what)
    {
        for (const Vec2& p : device_points)
            require_finite(p, what);
        out_.bytes += style_prefix(style);
        out_.bytes += "n " + point(device_points.front()) + " m";
        for (std::size_t i = 1; i < device_points.size(); ++i)
            out_.bytes += " " + point(device_points[i]) + " l";
        out_.bytes += " s\ngrestore\n";
    }

    void emit(std::size_t, const Polyline& line)
    {
        if (line.points.empty())
            return;
        std::vector<Vec2> pts;
        pts.reserve(line.points.size());
        for (const Vec2& p : line.points)
            pts.push_back(to_device_.apply(p));
        stroke_path(pts, line.style, "polyline");
    }

    void emit(std::size_t, const Circle& circle)
    {
        const Vec2 c = to_device_.apply(circle.center);
        const double rx = circle.radius * std::fabs(to_device_.a);
        const double ry = circle.radius * std::fabs(to_device_.d);
        require_finite(c, "circle");
        if (!std::isfinite(rx) || !std::isfinite(ry))
            throw SemanticError("non-finite circle radius");
        if (std::fabs(rx - ry) <= 1e-9 * std::max(rx, ry)) {
            out_.bytes += style_prefix(circle.style);
            out_.bytes += "n " + point(c) + " " + ps_number(rx) + " " + ps_number(circle.start_degrees) + " " +
                          ps_number(circle.end_degrees) + " arc s\ngrestore\n";
            return;
        }
        std::vector<Vec2> pts;
        const double span = circle.end_degrees - circle.start_degrees;
        for (int k = 0; k <= kEllipseSegments; ++k) {
            const double t = deg_to_rad(circle.start_degrees + span * k / kEllipseSegments);
            pts.push_back({c.x + rx * std::cos(t), c.y + ry * std::sin(t)});
        }
        stroke_path(pts, circle.style, "circle");
    }

    void emit(std::size_t, const Arrow& arrow)
    {
        const Vec2 from = to_device_.apply(arrow.from);
        const Vec2 to = to_device_.apply(arrow.to);
        stroke_path({from, to}, arrow.style, "arrow");
        const Vec2 delta = to - from;
        const double len = delta.norm();
        if (!(len > 0.0))
            return;
        const Vec2 back = (-kArrowHeadLength / len) * delta;
        for (double sign : {1.0, -1.0}) {
            const Vec2 wing = Affine::rotation(sign * kArrowHalfAngle).apply_linear(back);
            stroke_path({to + wing, to}, arrow.style, "arrow");
        }
    }

    void emit(std::size_t index, const TextPrimitive& text)
    {
        Placement pl;
        pl.primitive_index = index;
        if (const auto it = tag_text_.find(index); it != tag_text_.end()) {
            pl.text = it->second;
            pl.tagged = true;
        } else {
            pl.text = display_text(text.expr());
        }
        pl.font_size = kDefaultFontSize;
        pl.box = estimate_text_box(pl.text, pl.font_size);
        pl.anchor_point = to_device_.apply(text.position);
        require_finite(pl.anchor_point, "text position");
        pl.rotation = normalize_degrees(rad_to_deg(std::atan2(text.direction.y, text.direction.x)));

        const Vec2 offset{-(text.anchor.x + 1.0) / 2.0 * pl.box.width,
                          pl.box.depth - (text.anchor.y + 1.0) / 2.0 * pl.box.height};
        pl.device_position = pl.anchor_point + Affine::rotation(pl.rotation).apply_linear(offset);

        out_.bytes += "gsave " + point(pl.anchor_point) + " translate " + ps_number(pl.rotation) + " rotate " +
                      point(offset) + " m " + ps_string_literal(pl.text) + " show grestore\n";
        out_.placements.push_back(std::move(pl));
    }

    const Scene& scene_;
    const std::map<std::size_t, std::string>& tag_text_;
    Affine to_device_;
    EpsOutput out_;
};

} // namespace

std::string ps_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0')
            s.pop_back();
        if (s.back() == '.')
            s.pop_back();
    }
    if (s == "-0")
        s = "0";
    return s;
}

std::string ps_string_literal(std::string_view text)
{
    std::string out = "(";
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (c == '(' || c == ')' || c == '\\') {
            out += '\\';
            out += ch;
        } else if (c < 0x20 || c >= 0x7f) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\%03o", c);
            out += buf;
        } else {
            out += ch;
        }
    }
    return out + ")";
}

EpsOutput write_eps(const Scene& scene, const std::map<std::size_t, std::string>& tag_text)
{
    return Writer(scene, tag_text).run();
}

} // namespace labelforge
