#include "labelforge/export.hpp"

#include "labelforge/errors.hpp"
#include "labelforge/io.hpp"

namespace labelforge {

ExportResult render_export(const Scene& scene, const ExportOptions& opts, const HookSet& hooks)
{
    validate(scene);
    ExportResult result;
    Scene expanded = expand_decorations(scene);
    if (opts.effective_auto_convert_text())
        expanded = auto_wrap(expanded);

    for (const auto& prim : expanded.primitives) {
        if (const auto* text = std::get_if<TextPrimitive>(&prim))
            if (const LabelDirective* d = text->directive(); d && d->psfrag_tag)
                result.registry.reserve(*d->psfrag_tag);
    }

    std::map<std::size_t, std::string> tag_text;
    for (std::size_t i = 0; i < expanded.primitives.size(); ++i) {
        const auto* text = std::get_if<TextPrimitive>(&expanded.primitives[i]);
        if (!text)
            continue;
        ++result.label_count;
        const LabelDirective* directive = text->directive();
        if (!directive)
            continue;
        const std::optional<Vec2> anchor = opts.auto_position ? std::optional<Vec2>(text->anchor) : std::nullopt;
        PsfragEntry entry = build_entry(*directive, anchor, hooks, opts, result.registry, &result.warnings);
        tag_text.emplace(i, entry.tag);
        result.registry.insert(std::move(entry));
    }
    result.tagged_count = tag_text.size();

    if (opts.renumber_tags) {
        RenumberResult r = renumber(result.registry);
        for (auto& [index, tag] : tag_text)
            tag = r.tag_map.at(tag);
        result.registry = std::move(r.registry);
        result.renumbered = std::move(r.tag_map);
    }

    EpsOutput eps = write_eps(expanded, tag_text);
    result.eps = std::move(eps.bytes);
    result.placements = std::move(eps.placements);
    result.tex = emit_tex(result.registry, &result.warnings);
    result.expanded = std::move(expanded);
    return result;
}

ExportPaths export_paths(const std::string& basename, const ExportOptions& opts)
{
    return {basename + opts.eps_suffix, basename + opts.tex_suffix};
}

ExportResult psfrag_export(const Scene& scene, const std::string& basename, const ExportOptions& opts,
                           const HookSet& hooks)
{
    if (basename.empty())
        throw SemanticError("export basename must not be empty");
    ExportResult result = render_export(scene, opts, hooks);
    const ExportPaths paths = export_paths(basename, opts);
    if (paths.eps == paths.tex)
        throw SemanticError("EPS and TeX outputs resolve to the same path '" + paths.eps + "'");
    write_files_atomically({{paths.eps, result.eps}, {paths.tex, result.tex}});
    return result;
}

} // namespace labelforge
