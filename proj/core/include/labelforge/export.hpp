#pragma once

#include "labelforge/eps.hpp"
#include "labelforge/labeling.hpp"
#include "labelforge/scene.hpp"
#include "labelforge/tex.hpp"

#include <string>

namespace labelforge {

struct ExportResult {
    std::string eps;
    std::string tex;
    TagRegistry registry;
    TagMap renumbered; // old -> new, empty unless renumbering ran
    Scene expanded;    // scene as written, decorations expanded
    std::vector<Placement> placements;
    std::size_t label_count = 0;  // text primitives written
    std::size_t tagged_count = 0; // text primitives shown as tags
    Diagnostics warnings;
};

// Builds both output files in memory without touching the file system.
ExportResult render_export(const Scene& scene, const ExportOptions& opts, const HookSet& hooks);

struct ExportPaths {
    std::string eps;
    std::string tex;
};

ExportPaths export_paths(const std::string& basename, const ExportOptions& opts);

// render_export followed by an all-or-nothing write of basename + eps_suffix
// and basename + tex_suffix.
ExportResult psfrag_export(const Scene& scene, const std::string& basename, const ExportOptions& opts,
                           const HookSet& hooks);

} // namespace labelforge
