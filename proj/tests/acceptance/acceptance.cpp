// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include "labelforge/eps.hpp"
#include "labelforge/errors.hpp"
#include "labelforge/export.hpp"
#include "labelforge/io.hpp"
#include "labelforge/labeling.hpp"
#include "labelforge/preview.hpp"
#include "labelforge/tex.hpp"
#include "labelforge_cli/cli.hpp"

#include "support.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace lf = labelforge;
using lf::testing::fixture_path;
using lf::testing::load_scene;

namespace {

// Collects failure messages of one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok && failures_.size() < 5)
            failures_.push_back(what);
        failed_ = failed_ || !ok;
    }
    bool failed() const { return failed_; }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    bool failed_ = false;
    std::vector<std::string> failures_;
};

const std::array<const char*, 6> kFixtures = {"ex_auto.scene", "ex_manual.scene", "ex_rot.scene",
                                              "ex_3d.scene",   "ex_hold.scene",   "placement_grid.scene"};

lf::ExportResult export_fixture(const char* name, lf::ExportOptions opts = {})
{
    return lf::render_export(load_scene(name), opts, lf::HookSet{});
}

int cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "labelforge");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    return lf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::set<std::string> eps_tag_set(const std::string& eps)
{
    std::set<std::string> s;
    for (const auto& occ : lf::scan_tags(eps))
        s.insert(occ.tag);
    return s;
}

std::set<std::string> tex_tag_set(const std::string& tex)
{
    std::set<std::string> s;
    for (const auto& e : lf::parse_tex(tex))
        s.insert(e.tag);
    return s;
}

void auto_example(Check& c)
{
    const lf::ExportResult r = export_fixture("ex_auto.scene");
    c.expect(r.registry.size() == 13, "entry count " + std::to_string(r.registry.size()) + " != 13");
    c.expect(lf::parse_tex(r.tex).size() == 13, "tex file does not hold 13 \\psfrag lines");
    bool found = false;
    for (const auto& e : r.registry.entries())
        found = found || e.body.find("\\sqrt[3]{\\cos ^2(2 \\sqrt{x})}") != std::string::npos;
    c.expect(found, "no entry body contains the cube-root form");
    c.expect(r.tex == lf::read_file(lf::testing::golden_path("ex_auto-psfrag.tex")), "tex differs from golden file");
}

void alignment_correspondence(Check& c)
{
    c.expect(lf::pos_from_anchor({0, 1}).str() == "tc", "anchor (0,1) is not tc");
    c.expect(lf::pos_from_anchor({-1, 0}).str() == "cl", "anchor (-1,0) is not cl");
    c.expect(lf::pos_from_anchor({1, 0}).str() == "cr", "anchor (1,0) is not cr");
    const lf::ExportResult automatic = export_fixture("ex_auto.scene");
    const lf::ExportResult manual = export_fixture("ex_manual.scene");
    c.expect(automatic.registry.size() == manual.registry.size(), "registries differ in size");
    for (std::size_t i = 0; i < std::min(automatic.registry.size(), manual.registry.size()); ++i) {
        const auto& a = automatic.registry.entries()[i];
        const auto& m = manual.registry.entries()[i];
        c.expect(a.posn == m.posn && a.psposn == m.psposn,
                 a.tag + ": automatic " + a.posn.str() + " vs manual " + m.posn.str());
    }
}

void fallback_and_implication(Check& c)
{
    lf::ExportOptions off;
    off.auto_position = false;
    lf::ExportOptions both = off;
    both.auto_convert_text = false;
    for (const char* name : kFixtures) {
        const lf::ExportResult a = export_fixture(name, off);
        const lf::ExportResult b = export_fixture(name, both);
        c.expect(a.eps == b.eps && a.tex == b.tex, std::string(name) + ": outputs differ");
        std::size_t checked = 0;
        for (const auto& p : a.placements) {
            if (!p.tagged)
                continue;
            const auto& text = std::get<lf::TextPrimitive>(a.expanded.primitives[p.primitive_index]);
            const lf::PsfragEntry* e = a.registry.find(p.text);
            if (e == nullptr || text.directive() == nullptr) {
                c.expect(false, std::string(name) + ": tagged placement " + p.text + " has no entry or directive");
                continue;
            }
            // Explicit positions are kept; every Automatic one falls back.
            const auto& d = *text.directive();
            const std::string want_posn = d.position ? d.position->str() : "bc";
            const std::string want_psposn = d.ps_position ? d.ps_position->str() : want_posn;
            c.expect(e->posn.str() == want_posn && e->psposn.str() == want_psposn,
                     std::string(name) + ": " + e->tag + " resolves to " + e->posn.str() + e->psposn.str());
            ++checked;
        }
        c.expect(checked == a.registry.size(), std::string(name) + ": not every entry was checked");
    }
    lf::LabelDirective plain(lf::Expr::symbol("x"));
    c.expect(lf::resolve_alignment(plain, lf::Vec2{0, 1}, false).posn.str() == "bc", "resolve_alignment fallback");
    c.expect(lf::resolve_alignment(plain, std::nullopt, true).posn.str() == "bc", "resolve_alignment without anchor");
}

std::vector<std::string> brute_force_shortlex(std::size_t count)
{
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    std::vector<std::string> out;
    std::vector<std::string> level = {""};
    while (out.size() < count) {
        std::vector<std::string> next;
        for (const auto& prefix : level)
            for (const char ch : alphabet)
                next.push_back(prefix + ch);
        for (const auto& s : next)
            if (out.size() < count)
                out.push_back(s);
        level = std::move(next);
    }
    return out;
}

void renumbering(Check& c)
{
    lf::Scene s;
    s.x_range = {0, 60};
    s.y_range = {0, 1};
    for (int i = 0; i < 60; ++i)
        s.primitives.push_back(lf::TextPrimitive{lf::Expr::symbol("label" + std::to_string(i)), {i + 0.5, 0.5}});
    lf::ExportOptions opts;
    opts.renumber_tags = true;
    const lf::ExportResult r = lf::render_export(s, opts, lf::HookSet{});
    const auto oracle = brute_force_shortlex(60);
    c.expect(r.registry.size() == 60, "registry size " + std::to_string(r.registry.size()));
    std::size_t longest = 0;
    for (std::size_t i = 0; i < r.registry.size(); ++i) {
        const std::string& tag = r.registry.entries()[i].tag;
        longest = std::max(longest, tag.size());
        c.expect(i < oracle.size() && tag == oracle[i], "tag " + std::to_string(i) + " is " + tag);
    }
    c.expect(longest == 2, "longest tag has length " + std::to_string(longest));
    c.expect(r.registry.entries().back().tag == "ah", "last tag is not ah");
    c.expect(eps_tag_set(r.eps) == tex_tag_set(r.tex), "synthetic export tag sets differ");

    lf::testing::TempDir dir;
    c.expect(cli({"export", fixture_path("ex_3d.scene"), "--basename", dir.file("k")}) == 0, "export failed");
    const std::string eps = dir.file("k-psfrag.eps");
    const std::string tex = dir.file("k-psfrag.tex");
    c.expect(cli({"renumber", eps, tex}) == 0, "renumber failed");
    const std::string eps1 = lf::read_file(eps);
    const std::string tex1 = lf::read_file(tex);
    c.expect(eps_tag_set(eps1) == tex_tag_set(tex1), "renumbered files disagree on tags");
    c.expect(cli({"renumber", eps, tex}) == 0, "second renumber failed");
    c.expect(lf::read_file(eps) == eps1 && lf::read_file(tex) == tex1, "renumber is not idempotent");
}

void geometry(Check& c)
{
    const std::array<const char*, 12> codes = {"tl", "tc", "tr", "cl", "cc", "cr",
                                               "bl", "bc", "br", "Bl", "Bc", "Br"};
    const lf::LabelBox replacement{31.0, 11.0, 3.0};
    lf::TagOccurrence occ;
    occ.tag = "gA";
    occ.device_position = {120.0, 80.0};
    occ.rotation = 20.0;
    occ.font_size = 10.0;
    occ.ctm = lf::Affine::translation(120, 80) * lf::Affine::rotation(20);
    const lf::LabelBox tag_box = lf::tag_box_for(occ);
    int cases = 0;
    for (const char* posn : codes)
        for (const char* psposn : codes)
            for (const double rot : {-90.0, 0.0, 30.0, 45.0, 180.0})
                for (const double scale : {0.5, 1.0, 2.0}) {
                    const lf::PsfragEntry e{"gA", lf::PosCode::parse(posn), lf::PosCode::parse(psposn), scale, rot,
                                            "x"};
                    const lf::Vec2 pinned =
                        lf::place(replacement, e, occ, tag_box).apply(lf::reference_point(replacement, e.posn));
                    const double err = (pinned - lf::psposn_device_point(e, occ, tag_box)).norm();
                    c.expect(err < 1e-9, std::string(posn) + "/" + psposn + " misses by " + std::to_string(err));
                    ++cases;
                }
    c.expect(cases >= 180, "too few pinning cases");

    for (const char* code : codes) {
        const lf::PsfragEntry e{"gA", lf::PosCode::parse(code), lf::PosCode::parse(code), 1.0, 0.0, "x"};
        const lf::Affine t = lf::place(tag_box, e, occ, tag_box);
        const lf::Affine frame = lf::Affine::translation(120, 80) * lf::Affine::rotation(20) *
                                 lf::Affine::translation(0, -tag_box.depth);
        for (const lf::Vec2 corner : {lf::Vec2{0, 0}, lf::Vec2{tag_box.width, 0}, lf::Vec2{0, tag_box.height},
                                      lf::Vec2{tag_box.width, tag_box.height}})
            c.expect((t.apply(corner) - frame.apply(corner)).norm() < 1e-9, std::string("identity placement ") + code);
    }

    const lf::ExportResult grid = export_fixture("placement_grid.scene");
    const lf::PreviewResult preview = lf::substitute_preview(grid.eps, grid.registry);
    c.expect(preview.substituted == 15, "preview substituted " + std::to_string(preview.substituted));
    const auto occs = lf::scan_tags(grid.eps);
    c.expect(occs.size() == 15, "placement grid shows " + std::to_string(occs.size()) + " tags");
    for (const auto& o : occs) {
        c.expect((o.device_position - occs.front().device_position).norm() < 1e-9, o.tag + " has another anchor");
        const lf::PsfragEntry* e = grid.registry.find(o.tag);
        if (e == nullptr) {
            c.expect(false, o.tag + " has no entry");
            continue;
        }
        const lf::LabelBox box = lf::default_measure(e->body);
        const lf::LabelBox tb = lf::tag_box_for(o);
        const lf::Vec2 pinned = lf::place(box, *e, o, tb).apply(lf::reference_point(box, e->posn));
        c.expect((pinned - lf::psposn_device_point(*e, o, tb)).norm() < 1e-9, o.tag + " box is not pinned");
    }
}

void round_trip(Check& c)
{
    for (const char* name : {"ex_rot.scene", "ex_auto.scene"}) {
        const lf::ExportResult r = export_fixture(name);
        const auto occs = lf::scan_tags(r.eps);
        std::vector<const lf::Placement*> tagged;
        for (const auto& p : r.placements)
            if (p.tagged)
                tagged.push_back(&p);
        c.expect(!tagged.empty(), std::string(name) + ": nothing tagged");
        c.expect(occs.size() == r.placements.size(), std::string(name) + ": occurrence count differs");
        std::size_t recovered = 0;
        for (std::size_t i = 0; i < std::min(occs.size(), r.placements.size()); ++i) {
            const lf::Placement& p = r.placements[i];
            if (!p.tagged)
                continue;
            const double pos_err = (occs[i].device_position - p.device_position).norm();
            const double rot_err = std::abs(lf::normalize_degrees(occs[i].rotation - p.rotation));
            if (occs[i].tag == p.text && pos_err < 0.5 && rot_err < 0.1)
                ++recovered;
        }
        c.expect(recovered == tagged.size(), std::string(name) + ": recovered " + std::to_string(recovered) + " of " +
                                                 std::to_string(tagged.size()));
        if (std::string(name) == "ex_rot.scene") {
            c.expect(occs.size() == 12, "rotation fixture shows " + std::to_string(occs.size()) + " strings");
            for (std::size_t k = 0; k < occs.size(); ++k)
                c.expect(std::abs(lf::normalize_degrees(occs[k].rotation - 30.0 * static_cast<double>(k))) < 0.1,
                         "rotation step " + std::to_string(k));
        }
    }
}

// True when after equals before with exactly the listed spans replaced.
bool only_spans_changed(const std::string& before, const std::string& after, const std::vector<lf::TagOccurrence>& occs,
                        const lf::TagMap& map)
{
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const auto& o : occs) {
        const auto it = map.find(o.tag);
        if (it == map.end())
            continue;
        rebuilt.append(before, cursor, o.string_start - cursor);
        rebuilt += lf::ps_string_literal(it->second);
        cursor = o.string_end;
    }
    rebuilt.append(before, cursor, std::string::npos);
    return rebuilt == after;
}

void rewrite_safety(Check& c)
{
    for (const char* name : kFixtures) {
        const std::string eps = export_fixture(name).eps;
        const auto occs = lf::scan_tags(eps);
        c.expect(lf::rewrite_tags(eps, {}) == eps, std::string(name) + ": empty map changed bytes");
        lf::TagMap full;
        lf::TagMap single;
        for (std::size_t i = 0; i < occs.size(); ++i) {
            full[occs[i].tag] = "re" + lf::shortlex_tag(i);
            if (i == occs.size() / 2)
                single[occs[i].tag] = "only";
        }
        for (const auto* map : {&full, &single}) {
            if (map->empty())
                continue;
            const std::string out = lf::rewrite_tags(eps, *map);
            c.expect(only_spans_changed(eps, out, occs, *map), std::string(name) + ": bytes outside tag spans changed");
            c.expect(lf::scan_tags(out).size() == occs.size(), std::string(name) + ": occurrence count changed");
        }
    }
}

void hold_semantics(Check& c)
{
    const std::string held = lf::to_tex(lf::parse_expr("HoldForm[(3*x-1)^3]"));
    const std::string plain = lf::to_tex(lf::parse_expr("(3*x-1)^3"));
    c.expect(held == "(3 x-1)^3", "held form renders as " + held);
    c.expect(plain == "(-1+3 x)^3", "canonical form renders as " + plain);
}

void parser_fuzz(Check& c)
{
    std::vector<std::string> corpus;
    for (const char* name : kFixtures)
        corpus.push_back(export_fixture(name).eps);
    std::mt19937 rng(20261016);
    const std::string alphabet = "()[]{}<>/%\\ \n\t0123456789.-+#eE~abcmoveto";
    int tokenized = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string m = corpus[static_cast<std::size_t>(i) % corpus.size()];
        const int edits = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < edits && !m.empty(); ++k) {
            const std::size_t at = rng() % m.size();
            switch (rng() % 4) {
            case 0:
                m[at] = alphabet[rng() % alphabet.size()];
                break;
            case 1:
                m.erase(at, 1 + rng() % 8);
                break;
            case 2:
                m.insert(at, 1, static_cast<char>(rng() % 256));
                break;
            default:
                m.resize(at);
                break;
            }
        }
        try {
            const auto tokens = lf::tokenize(m);
            std::string joined;
            for (const auto& t : tokens)
                joined.append(m, t.begin, t.end - t.begin);
            c.expect(joined == m, "lossless property broken on mutation " + std::to_string(i));
            ++tokenized;
        } catch (const lf::ParseError&) {
        } catch (const std::exception& e) {
            c.expect(false, "tokenizer threw " + std::string(e.what()));
        }
        try {
            lf::scan_tags(m);
        } catch (const lf::ParseError&) {
        } catch (const std::exception& e) {
            c.expect(false, "scanner threw " + std::string(e.what()));
        }
    }
    c.expect(tokenized > 1000, "only " + std::to_string(tokenized) + " mutations tokenized");
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
        {"1 auto example: 13 entries, cube-root body, golden tex", auto_example},
        {"2 alignment codes match the manual clone", alignment_correspondence},
        {"3 fallback bc and option implication", fallback_and_implication},
        {"4 shortlex renumbering and renumber command", renumbering},
        {"5 placement geometry", geometry},
        {"6 write/scan round trip", round_trip},
        {"7 rewrite touches only tag spans", rewrite_safety},
        {"8 hold semantics", hold_semantics},
        {"9 tokenizer fuzz", parser_fuzz},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.failed() ? "FAIL " : "PASS ") << name << '\n';
        for (const auto& f : c.failures())
            std::cout << "     " << f << '\n';
        failed += c.failed();
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
