#include "labelforge/eps.hpp"
#include "labelforge/export.hpp"
#include "labelforge/io.hpp"
#include "labelforge/preview.hpp"
#include "labelforge/scene_document.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

using namespace labelforge;

const Scene& auto_scene()
{
    static const Scene scene =
        parse_scene_document(read_file(std::string(LABELFORGE_FIXTURE_DIR) + "/ex_auto.scene"));
    return scene;
}

const ExportResult& auto_export()
{
    static const ExportResult result = render_export(auto_scene(), ExportOptions{}, HookSet{});
    return result;
}

void BM_ParseScene(benchmark::State& state)
{
    const std::string text = read_file(std::string(LABELFORGE_FIXTURE_DIR) + "/ex_auto.scene");
    for (auto _ : state)
        benchmark::DoNotOptimize(parse_scene_document(text));
}
BENCHMARK(BM_ParseScene);

void BM_RenderExport(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(render_export(auto_scene(), ExportOptions{}, HookSet{}));
}
BENCHMARK(BM_RenderExport);

void BM_Tokenize(benchmark::State& state)
{
    const std::string& eps = auto_export().eps;
    for (auto _ : state)
        benchmark::DoNotOptimize(tokenize(eps));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * eps.size()));
}
BENCHMARK(BM_Tokenize);

void BM_ScanTags(benchmark::State& state)
{
    const std::string& eps = auto_export().eps;
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_tags(eps));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * eps.size()));
}
BENCHMARK(BM_ScanTags);

void BM_RenumberRewrite(benchmark::State& state)
{
    const ExportResult& r = auto_export();
    for (auto _ : state) {
        const RenumberResult renumbered = renumber(r.registry);
        benchmark::DoNotOptimize(rewrite_tags(r.eps, renumbered.tag_map));
    }
}
BENCHMARK(BM_RenumberRewrite);

void BM_Preview(benchmark::State& state)
{
    const ExportResult& r = auto_export();
    for (auto _ : state)
        benchmark::DoNotOptimize(substitute_preview(r.eps, r.registry));
}
BENCHMARK(BM_Preview);

} // namespace

BENCHMARK_MAIN();
