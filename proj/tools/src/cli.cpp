#include "labelforge_cli/cli.hpp"

#include "labelforge/eps.hpp"
#include "labelforge/errors.hpp"
#include "labelforge/export.hpp"
#include "labelforge/io.hpp"
#include "labelforge/labeling.hpp"
#include "labelforge/preview.hpp"
#include "labelforge/scene_document.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>

namespace labelforge::cli {

namespace {

constexpr const char* kHooksEnv = "LABELFORGE_HOOKS";

struct ExportArgs {
    std::string scene;
    std::string basename;
    std::string hooks;
    ExportOptions opts;
    bool no_auto_convert = false;
    bool no_auto_position = false;
};

struct InspectArgs {
    std::string eps;
    std::string format = "tsv";
};

struct RenumberArgs {
    std::string eps;
    std::string tex;
};

struct PreviewArgs {
    std::string eps;
    std::string tex;
    std::string out;
    bool strict = false;
};

std::string fixed3(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000")
        s = "0.000";
    return s;
}

void print_warnings(const Diagnostics& warnings, std::ostream& err)
{
    for (const auto& w : warnings)
        err << "warning: " << w << '\n';
}

TagRegistry registry_from_tex(std::string_view tex)
{
    TagRegistry registry;
    for (auto& entry : parse_tex(tex))
        registry.insert(std::move(entry));
    return registry;
}

int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err)
{
    ExportOptions opts = args.opts;
    opts.auto_convert_text = !args.no_auto_convert;
    opts.auto_position = !args.no_auto_position;

    std::string hooks_path = args.hooks;
    if (hooks_path.empty())
        if (const char* env = std::getenv(kHooksEnv))
            hooks_path = env;
    HookSet hooks;
    if (!hooks_path.empty())
        hooks = parse_hook_document(read_file(hooks_path));

    const Scene scene = parse_scene_document(read_file(args.scene));
    std::string basename = args.basename;
    if (basename.empty())
        basename = std::filesystem::path(args.scene).replace_extension().string();

    const ExportResult result = psfrag_export(scene, basename, opts, hooks);
    print_warnings(result.warnings, err);
    out << result.label_count << " labels, " << result.tagged_count << " tagged\n";
    return kOk;
}

int cmd_inspect(const InspectArgs& args, std::ostream& out, std::ostream& err)
{
    Diagnostics warnings;
    const auto occurrences = scan_tags(read_file(args.eps), &warnings);
    print_warnings(warnings, err);
    if (args.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& occ : occurrences) {
            arr.push_back({{"tag", occ.tag},
                           {"x", occ.device_position.x},
                           {"y", occ.device_position.y},
                           {"rotation", occ.rotation},
                           {"scale", occ.scale}});
        }
        out << arr.dump(2) << '\n';
        return kOk;
    }
    for (const auto& occ : occurrences) {
        out << occ.tag << '\t' << fixed3(occ.device_position.x) << '\t' << fixed3(occ.device_position.y) << '\t'
            << fixed3(occ.rotation) << '\t' << fixed3(occ.scale) << '\n';
    }
    return kOk;
}

int cmd_renumber(const RenumberArgs& args, std::ostream& out, std::ostream&)
{
    const std::string eps = read_file(args.eps);
    const std::string tex = read_file(args.tex);
    const RenumberResult r = renumber(registry_from_tex(tex));
    const std::string new_eps = rewrite_tags(eps, r.tag_map);
    const std::string new_tex = rewrite_tex_tags(tex, r.tag_map);
    write_files_atomically({{args.eps + ".bak", eps}, {args.tex + ".bak", tex}});
    write_files_atomically({{args.eps, new_eps}, {args.tex, new_tex}});
    out << r.tag_map.size() << " tags renumbered\n";
    return kOk;
}

int cmd_preview(const PreviewArgs& args, std::ostream& out, std::ostream& err)
{
    const std::string eps = read_file(args.eps);
    const TagRegistry registry = registry_from_tex(read_file(args.tex));
    const PreviewResult result = substitute_preview(eps, registry);
    print_warnings(result.warnings, err);
    if (args.strict && (!result.unmatched_occurrences.empty() || !result.unused_entries.empty())) {
        err << "error: unmatched tags in strict mode\n";
        return kSemanticFailure;
    }
    write_files_atomically({{args.out, result.bytes}});
    out << result.substituted << " substituted\n";
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Export plot scenes as tagged EPS with psfrag replacements"};
    app.name("labelforge");
    app.require_subcommand(1);

    ExportArgs export_args;
    auto* exp = app.add_subcommand("export", "Write <basename><eps-suffix> and <basename><tex-suffix>");
    exp->add_option("scene", export_args.scene, "Scene document")->required();
    exp->add_option("--basename", export_args.basename, "Output basename (default: scene path without extension)");
    exp->add_option("--tex-suffix", export_args.opts.tex_suffix, "Suffix of the psfrag file")
        ->capture_default_str();
    exp->add_option("--eps-suffix", export_args.opts.eps_suffix, "Suffix of the EPS file")->capture_default_str();
    exp->add_flag("--renumber-tags", export_args.opts.renumber_tags, "Replace tags by a, b, ..., Z, aa, ...");
    exp->add_flag("--no-auto-convert", export_args.no_auto_convert, "Only tag labels carrying a psfrag directive");
    exp->add_flag("--no-auto-position", export_args.no_auto_position,
                  "Do not derive alignment from anchors (implies --no-auto-convert)");
    exp->add_option("--hooks", export_args.hooks, "Hook file (default: $LABELFORGE_HOOKS)");

    InspectArgs inspect_args;
    auto* inspect = app.add_subcommand("inspect", "List strings shown in an EPS file");
    inspect->add_option("eps", inspect_args.eps, "EPS file")->required();
    inspect->add_option("--format", inspect_args.format, "Output format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();

    RenumberArgs renumber_args;
    auto* renum = app.add_subcommand("renumber", "Renumber the tags of an EPS/TeX pair in place");
    renum->add_option("eps", renumber_args.eps, "EPS file")->required();
    renum->add_option("tex", renumber_args.tex, "psfrag file")->required();

    PreviewArgs preview_args;
    auto* prev = app.add_subcommand("preview", "Draw placed replacement boxes in place of tags");
    prev->add_option("eps", preview_args.eps, "EPS file")->required();
    prev->add_option("tex", preview_args.tex, "psfrag file")->required();
    prev->add_option("out", preview_args.out, "Preview EPS to write")->required();
    prev->add_flag("--strict", preview_args.strict, "Fail when tags and entries do not match");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseFailure;
    }

    try {
        if (*exp)
            return cmd_export(export_args, out, err);
        if (*inspect)
            return cmd_inspect(inspect_args, out, err);
        if (*renum)
            return cmd_renumber(renumber_args, out, err);
        return cmd_preview(preview_args, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << '\n';
        return kSemanticFailure;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoFailure;
    }
}

} // namespace labelforge::cli
