#include "labelforge/scene_document.hpp"

#include "labelforge/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <initializer_list>
#include <set>

namespace labelforge {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what)
{
    throw SemanticError(path + ": " + what);
}

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys)
{
    if (!obj.is_object())
        schema_error(path, "expected an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            schema_error(path, "unknown key '" + item.key() + "'");
}

const json& require(const json& obj, const std::string& path, const char* key)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        schema_error(path, std::string("missing key '") + key + "'");
    return *it;
}

double number(const json& v, const std::string& path)
{
    if (!v.is_number())
        schema_error(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        schema_error(path, "expected a finite number");
    return d;
}

const std::string& string(const json& v, const std::string& path)
{
    if (!v.is_string())
        schema_error(path, "expected a string");
    return v.get_ref<const std::string&>();
}

Vec2 pair(const json& v, const std::string& path)
{
    if (!v.is_array() || v.size() != 2)
        schema_error(path, "expected a two-element array");
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

Expr expression(const std::string& source, const std::string& path)
{
    try {
        return parse_expr(source);
    } catch (const ParseError& e) {
        throw ParseError(e.offset(), "in " + path + " '" + source + "': " + e.what());
    }
}

StrokeStyle stroke_style(const json& v, const std::string& path)
{
    allow_keys(v, path, {"width", "dash", "gray", "hue"});
    StrokeStyle s;
    if (v.contains("width"))
        s.width = number(v["width"], path + ".width");
    if (v.contains("dash")) {
        const json& dash = v["dash"];
        if (!dash.is_array())
            schema_error(path + ".dash", "expected an array");
        for (std::size_t i = 0; i < dash.size(); ++i)
            s.dash.push_back(number(dash[i], path + ".dash[" + std::to_string(i) + "]"));
    }
    if (v.contains("gray"))
        s.gray = number(v["gray"], path + ".gray");
    if (v.contains("hue"))
        s.hue = number(v["hue"], path + ".hue");
    if (s.gray && s.hue)
        schema_error(path, "gray and hue are mutually exclusive");
    return s;
}

StrokeStyle optional_style(const json& obj, const std::string& path)
{
    return obj.contains("style") ? stroke_style(obj["style"], path + ".style") : StrokeStyle{};
}

PosCode pos_code(const json& v, const std::string& path)
{
    const std::string& code = string(v, path);
    if (auto p = PosCode::try_parse(code))
        return *p;
    schema_error(path, "invalid position code '" + code + "'");
}

LabelDirective directive(const Expr& expr, const json& v, const std::string& path)
{
    allow_keys(v, path, {"position", "ps_position", "tex", "tag", "rotation", "scaling"});
    LabelDirective d(expr);
    if (v.contains("position") && !(v["position"].is_string() && v["position"] == "auto"))
        d.position = pos_code(v["position"], path + ".position");
    if (v.contains("ps_position") && !(v["ps_position"].is_string() && v["ps_position"] == "copy"))
        d.ps_position = pos_code(v["ps_position"], path + ".ps_position");
    if (v.contains("tex"))
        d.tex_command = string(v["tex"], path + ".tex");
    if (v.contains("tag"))
        d.psfrag_tag = string(v["tag"], path + ".tag");
    if (v.contains("rotation"))
        d.rotation = number(v["rotation"], path + ".rotation");
    if (v.contains("scaling") && !(v["scaling"].is_string() && v["scaling"] == "auto"))
        d.scaling = number(v["scaling"], path + ".scaling");
    try {
        validate(d);
    } catch (const SemanticError& e) {
        schema_error(path, e.what());
    }
    return d;
}

// Label content from an object holding "expr" or "text" and an optional
// "psfrag" directive.
TextContent content(const json& obj, const std::string& path)
{
    const bool has_expr = obj.contains("expr");
    const bool has_text = obj.contains("text");
    if (has_expr == has_text)
        schema_error(path, "exactly one of 'expr' and 'text' is required");
    const Expr expr = has_expr ? expression(string(obj["expr"], path + ".expr"), path + ".expr")
                               : Expr::string(string(obj["text"], path + ".text"));
    if (obj.contains("psfrag"))
        return directive(expr, obj["psfrag"], path + ".psfrag");
    return expr;
}

// A label is either an expression source string or an object.
TextContent label(const json& v, const std::string& path)
{
    if (v.is_string())
        return expression(v.get<std::string>(), path);
    allow_keys(v, path, {"expr", "text", "psfrag"});
    return content(v, path);
}

Primitive primitive(const json& v, const std::string& path)
{
    if (!v.is_object())
        schema_error(path, "expected an object");
    const std::string& type = string(require(v, path, "type"), path + ".type");
    if (type == "polyline") {
        allow_keys(v, path, {"type", "points", "style"});
        const json& pts = require(v, path, "points");
        if (!pts.is_array())
            schema_error(path + ".points", "expected an array");
        Polyline line;
        for (std::size_t i = 0; i < pts.size(); ++i)
            line.points.push_back(pair(pts[i], path + ".points[" + std::to_string(i) + "]"));
        line.style = optional_style(v, path);
        return line;
    }
    if (type == "circle") {
        allow_keys(v, path, {"type", "center", "radius", "arc", "style"});
        Circle c;
        c.center = pair(require(v, path, "center"), path + ".center");
        c.radius = number(require(v, path, "radius"), path + ".radius");
        if (v.contains("arc")) {
            const Vec2 arc = pair(v["arc"], path + ".arc");
            c.start_degrees = arc.x;
            c.end_degrees = arc.y;
        }
        c.style = optional_style(v, path);
        return c;
    }
    if (type == "arrow") {
        allow_keys(v, path, {"type", "from", "to", "style"});
        Arrow a;
        a.from = pair(require(v, path, "from"), path + ".from");
        a.to = pair(require(v, path, "to"), path + ".to");
        a.style = optional_style(v, path);
        return a;
    }
    if (type == "text") {
        allow_keys(v, path, {"type", "expr", "text", "pos", "anchor", "dir", "psfrag"});
        TextPrimitive t{content(v, path), pair(require(v, path, "pos"), path + ".pos")};
        if (v.contains("anchor"))
            t.anchor = pair(v["anchor"], path + ".anchor");
        if (v.contains("dir")) {
            const Vec2 dir = pair(v["dir"], path + ".dir");
            const double len = dir.norm();
            if (!(len > 0.0))
                schema_error(path + ".dir", "direction must be nonzero");
            t.direction = (1.0 / len) * dir;
        }
        return t;
    }
    schema_error(path + ".type", "unknown primitive type '" + type + "'");
}

// Numeric value of a tick given as a number or as an expression string;
// the default label is the value as written.
Tick tick_from_value(const json& v, const std::string& path)
{
    if (v.is_number()) {
        const double value = number(v, path);
        return {value, expression(v.dump(), path)};
    }
    const Expr e = expression(string(v, path), path);
    const auto value = numeric_value(e);
    if (!value || !std::isfinite(*value))
        schema_error(path, "tick value is not numeric");
    return {*value, e};
}

std::vector<Tick> ticks(const json& v, const std::string& path)
{
    if (v.is_object() && v.contains("linear")) {
        allow_keys(v, path, {"linear"});
        const json& lin = v["linear"];
        if (!lin.is_array() || lin.size() != 3)
            schema_error(path + ".linear", "expected [from, to, step]");
        try {
            return linear_ticks(number(lin[0], path + ".linear[0]"), number(lin[1], path + ".linear[1]"),
                                number(lin[2], path + ".linear[2]"));
        } catch (const SemanticError& e) {
            schema_error(path + ".linear", e.what());
        }
    }
    if (!v.is_array())
        schema_error(path, "expected an array of ticks or {\"linear\": [from, to, step]}");
    std::vector<Tick> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const json& item = v[i];
        if (!item.is_object()) {
            out.push_back(tick_from_value(item, p));
            continue;
        }
        allow_keys(item, p, {"value", "label", "psfrag"});
        Tick t = tick_from_value(require(item, p, "value"), p + ".value");
        if (item.contains("label"))
            t.label = label(item["label"], p + ".label");
        if (item.contains("psfrag"))
            t.label = directive(content_expr(t.label), item["psfrag"], p + ".psfrag");
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<double> values(const json& v, const std::string& path)
{
    if (!v.is_array())
        schema_error(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        if (v[i].is_string()) {
            const auto value = numeric_value(expression(v[i].get<std::string>(), p));
            if (!value)
                schema_error(p, "value is not numeric");
            out.push_back(*value);
        } else {
            out.push_back(number(v[i], p));
        }
    }
    return out;
}

DecorationSpec decorations(const json& v, const std::string& path)
{
    allow_keys(v, path, {"plot_label", "axes_labels", "frame_ticks", "gridlines"});
    DecorationSpec d;
    if (v.contains("plot_label"))
        d.plot_label = label(v["plot_label"], path + ".plot_label");
    if (v.contains("axes_labels")) {
        const json& axes = v["axes_labels"];
        if (!axes.is_array() || axes.size() != 2)
            schema_error(path + ".axes_labels", "expected [x label, y label]");
        d.axes_labels.emplace(label(axes[0], path + ".axes_labels[0]"), label(axes[1], path + ".axes_labels[1]"));
    }
    if (v.contains("frame_ticks")) {
        const std::string p = path + ".frame_ticks";
        const json& ft = v["frame_ticks"];
        allow_keys(ft, p, {"bottom", "left", "top", "right"});
        const std::pair<const char*, Edge> edges[] = {
            {"bottom", Edge::Bottom}, {"left", Edge::Left}, {"top", Edge::Top}, {"right", Edge::Right}};
        for (const auto& [name, edge] : edges)
            if (ft.contains(name))
                d.ticks(edge) = ticks(ft[name], p + "." + name);
    }
    if (v.contains("gridlines")) {
        const std::string p = path + ".gridlines";
        const json& g = v["gridlines"];
        allow_keys(g, p, {"x", "y"});
        if (g.contains("x"))
            d.grid_x = values(g["x"], p + ".x");
        if (g.contains("y"))
            d.grid_y = values(g["y"], p + ".y");
    }
    return d;
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
}

void check_version(const json& doc)
{
    const json& version = require(doc, "document", "version");
    if (!version.is_number_integer() || version.get<long long>() != kSceneDocumentVersion)
        schema_error("version", "unsupported document version " + version.dump() + ", expected " +
                                    std::to_string(kSceneDocumentVersion));
}

} // namespace

Scene parse_scene_document(std::string_view text)
{
    const json doc = parse_json(text);
    allow_keys(doc, "document", {"version", "plot_range", "size", "primitives", "decorations"});
    check_version(doc);

    Scene scene;
    const json& range = require(doc, "document", "plot_range");
    if (!range.is_array() || range.size() != 2)
        schema_error("plot_range", "expected [[xmin, xmax], [ymin, ymax]]");
    const Vec2 xr = pair(range[0], "plot_range[0]");
    const Vec2 yr = pair(range[1], "plot_range[1]");
    scene.x_range = {xr.x, xr.y};
    scene.y_range = {yr.x, yr.y};
    if (doc.contains("size")) {
        const Vec2 size = pair(doc["size"], "size");
        scene.width = size.x;
        scene.height = size.y;
    }
    if (doc.contains("primitives")) {
        const json& prims = doc["primitives"];
        if (!prims.is_array())
            schema_error("primitives", "expected an array");
        for (std::size_t i = 0; i < prims.size(); ++i)
            scene.primitives.push_back(primitive(prims[i], "primitives[" + std::to_string(i) + "]"));
    }
    if (doc.contains("decorations"))
        scene.decorations = decorations(doc["decorations"], "decorations");

    validate(scene);
    return scene;
}

HookSet parse_hook_document(std::string_view text)
{
    const json doc = parse_json(text);
    allow_keys(doc, "hooks", {"version", "text", "math", "numeric"});
    check_version(doc);

    HookSet hooks;
    const std::pair<const char*, LabelClass> classes[] = {
        {"text", LabelClass::Text}, {"math", LabelClass::Math}, {"numeric", LabelClass::Numeric}};
    for (const auto& [name, cls] : classes) {
        if (!doc.contains(name))
            continue;
        const std::string path = std::string("hooks.") + name;
        const json& entry = doc[name];
        allow_keys(entry, path, {"pre_apply", "post_replace"});
        if (entry.contains("pre_apply")) {
            const json& list = entry["pre_apply"];
            if (!list.is_array())
                schema_error(path + ".pre_apply", "expected an array of transform names");
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string p = path + ".pre_apply[" + std::to_string(i) + "]";
                try {
                    hooks.pre(cls).push_back(builtin_transform(string(list[i], p)));
                } catch (const SemanticError& e) {
                    schema_error(p, e.what());
                }
            }
        }
        if (entry.contains("post_replace")) {
            const json& list = entry["post_replace"];
            if (!list.is_array())
                schema_error(path + ".post_replace", "expected an array of [find, replace] pairs");
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string p = path + ".post_replace[" + std::to_string(i) + "]";
                if (!list[i].is_array() || list[i].size() != 2)
                    schema_error(p, "expected [find, replace]");
                const std::string& find = string(list[i][0], p + "[0]");
                if (find.empty())
                    schema_error(p, "find string must not be empty");
                hooks.post(cls).emplace_back(find, string(list[i][1], p + "[1]"));
            }
        }
    }
    return hooks;
}

} // namespace labelforge
