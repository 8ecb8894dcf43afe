#include "labelforge/errors.hpp"
#include "labelforge/labeling.hpp"
#include "labelforge/scene.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace labelforge {
namespace {

Scene base_scene()
{
    Scene s;
    s.x_range = {0.0, 2 * M_PI};
    s.y_range = {-1.0, 3.0};
    s.primitives.push_back(Polyline{{{0, 0}, {1, 1}}, {}});
    s.primitives.push_back(TextPrimitive{Expr::string("note"), {1.0, 1.0}});
    return s;
}

std::vector<const TextPrimitive*> texts(const Scene& s)
{
    std::vector<const TextPrimitive*> out;
    for (const auto& p : s.primitives)
        if (const auto* t = std::get_if<TextPrimitive>(&p))
            out.push_back(t);
    return out;
}

TEST(ExpandDecorations, EmptyDecorationsIsIdentity)
{
    const Scene s = base_scene();
    EXPECT_EQ(expand_decorations(s), s);
}

TEST(ExpandDecorations, TickLabelAnchorsPerEdge)
{
    Scene s = base_scene();
    const Expr half_pi = parse_expr("Pi/2");
    s.decorations.ticks(Edge::Bottom) = std::vector<Tick>{{M_PI / 2, half_pi}};
    s.decorations.ticks(Edge::Left) = std::vector<Tick>{{1.0, Expr::integer(1)}};
    s.decorations.ticks(Edge::Top) = std::vector<Tick>{{1.0, Expr::integer(1)}};
    s.decorations.ticks(Edge::Right) = std::vector<Tick>{{2.0, Expr::integer(2)}};
    const Scene out = expand_decorations(s);
    EXPECT_TRUE(out.decorations.empty());

    const auto t = texts(out);
    ASSERT_EQ(t.size(), 5u);
    EXPECT_EQ(t[1]->expr(), half_pi);
    EXPECT_EQ(t[1]->position, (Vec2{M_PI / 2, -1.0}));
    EXPECT_EQ(t[1]->anchor, (Vec2{0, 1}));
    EXPECT_EQ(t[2]->anchor, (Vec2{1, 0}));
    EXPECT_EQ(t[2]->position, (Vec2{0.0, 1.0}));
    EXPECT_EQ(t[3]->anchor, (Vec2{0, -1}));
    EXPECT_EQ(t[4]->anchor, (Vec2{-1, 0}));

    // The codes the anchors map to are the ones a manual clone would write.
    EXPECT_EQ(pos_from_anchor(t[1]->anchor).str(), "tc");
    EXPECT_EQ(pos_from_anchor(t[2]->anchor).str(), "cr");
    EXPECT_EQ(pos_from_anchor(t[3]->anchor).str(), "bc");
    EXPECT_EQ(pos_from_anchor(t[4]->anchor).str(), "cl");
}

TEST(ExpandDecorations, AxesAndPlotLabels)
{
    Scene s = base_scene();
    s.decorations.axes_labels.emplace(Expr::symbol("x"), Expr::symbol("y"));
    s.decorations.plot_label = Expr::string("title");
    const auto t = texts(expand_decorations(s));
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[1]->anchor, (Vec2{0, 1}));
    EXPECT_LT(t[1]->position.y, s.y_range.min);
    EXPECT_DOUBLE_EQ(t[1]->position.x, s.x_range.mid());
    EXPECT_EQ(t[2]->anchor, (Vec2{0, -1}));
    EXPECT_EQ(t[2]->direction, (Vec2{0, 1}));
    EXPECT_LT(t[2]->position.x, s.x_range.min);
    EXPECT_EQ(t[3]->anchor, (Vec2{0, -1}));
    EXPECT_GT(t[3]->position.y, s.y_range.max);
}

TEST(ExpandDecorations, AxesLabelClearsTickLabels)
{
    const auto x_label_y = [](const Scene& s) {
        for (const auto* t : texts(expand_decorations(s)))
            if (t->expr() == Expr::symbol("x"))
                return t->position.y;
        ADD_FAILURE() << "no x axis label";
        return 0.0;
    };
    Scene s = base_scene();
    s.decorations.axes_labels.emplace(Expr::symbol("x"), Expr::symbol("y"));
    const double bare = x_label_y(s);
    s.decorations.ticks(Edge::Bottom) = std::vector<Tick>{{1.0, Expr::integer(1)}};
    const double with_ticks = x_label_y(s);
    EXPECT_LT(bare, s.y_range.min);
    EXPECT_LT(with_ticks, bare);
}

TEST(ExpandDecorations, GridlinesFrameAndTickMarks)
{
    Scene s = base_scene();
    s.decorations.grid_x = std::vector<double>{1.0, 2.0};
    s.decorations.grid_y = std::vector<double>{0.5};
    s.decorations.ticks(Edge::Bottom) = std::vector<Tick>{{1.0, Expr::integer(1)}, {2.0, Expr::integer(2)}};
    const Scene out = expand_decorations(s);
    // 2 original + 3 gridlines + frame + 2 marks + 2 labels
    ASSERT_EQ(out.primitives.size(), 10u);
    const auto& grid = std::get<Polyline>(out.primitives[2]);
    EXPECT_EQ(grid.style.gray, 0.5);
    const auto& mark = std::get<Polyline>(out.primitives[6]);
    const double len = kTickLengthFraction * std::min(s.x_range.extent(), s.y_range.extent());
    EXPECT_DOUBLE_EQ(mark.points[1].y - mark.points[0].y, len);
}

TEST(ExpandDecorations, PreservesPrefixAndIsIdempotent)
{
    Scene s = base_scene();
    s.decorations.ticks(Edge::Left) = linear_ticks(-1, 3, 1);
    s.decorations.axes_labels.emplace(Expr::symbol("x"), Expr::symbol("y"));
    const Scene once = expand_decorations(s);
    ASSERT_GE(once.primitives.size(), s.primitives.size());
    for (std::size_t i = 0; i < s.primitives.size(); ++i)
        EXPECT_EQ(once.primitives[i], s.primitives[i]);
    EXPECT_EQ(expand_decorations(once), once);
}

TEST(AutoWrap, WrapsBareExpressions)
{
    Scene s = base_scene();
    LabelDirective keep(Expr::symbol("z"));
    keep.position = PosCode::parse("Br");
    s.primitives.push_back(TextPrimitive{keep, {0, 0}});
    const Scene out = auto_wrap(s);
    ASSERT_EQ(out.primitives.size(), s.primitives.size());
    const auto t = texts(out);
    ASSERT_NE(t[0]->directive(), nullptr);
    EXPECT_EQ(*t[0]->directive(), LabelDirective(Expr::string("note")));
    EXPECT_EQ(*t[1]->directive(), keep);
    EXPECT_EQ(auto_wrap(out), out);
}

TEST(AutoWrap, NoTextIsIdentity)
{
    Scene s;
    s.primitives.push_back(Circle{{0, 0}, 0.5});
    EXPECT_EQ(auto_wrap(s), s);
}

TEST(Validate, RejectsBadScenes)
{
    Scene s = base_scene();
    EXPECT_NO_THROW(validate(s));

    Scene bad = s;
    bad.x_range = {1, 1};
    EXPECT_THROW(validate(bad), SemanticError);

    bad = s;
    bad.width = 0;
    EXPECT_THROW(validate(bad), SemanticError);

    bad = s;
    bad.primitives.push_back(Polyline{{{0, 0}}, {}});
    EXPECT_THROW(validate(bad), SemanticError);

    bad = s;
    bad.primitives.push_back(Circle{{0, 0}, 0.0});
    EXPECT_THROW(validate(bad), SemanticError);

    bad = s;
    bad.primitives.push_back(TextPrimitive{Expr::symbol("x"), {0, 0}, {0, 0}, {1, 1}});
    EXPECT_THROW(validate(bad), SemanticError);

    bad = s;
    bad.primitives.push_back(TextPrimitive{Expr::symbol("x"), {0, 0}, {1.5, 0}});
    EXPECT_THROW(validate(bad), SemanticError);

    bad = s;
    bad.primitives.push_back(TextPrimitive{Expr::symbol("x"), {NAN, 0}});
    EXPECT_THROW(validate(bad), SemanticError);

    bad = s;
    bad.decorations.ticks(Edge::Bottom) = std::vector<Tick>{{1.0, Expr::integer(1)}, {1.0, Expr::integer(1)}};
    EXPECT_THROW(validate(bad), SemanticError);
}

TEST(PlotToDevice, LeavesMargin)
{
    Scene s = base_scene();
    const Affine m = plot_to_device(s);
    const Vec2 lo = m.apply({s.x_range.min, s.y_range.min});
    const Vec2 hi = m.apply({s.x_range.max, s.y_range.max});
    EXPECT_NEAR(lo.x, 0.05 * s.width, 1e-9);
    EXPECT_NEAR(lo.y, 0.05 * s.height, 1e-9);
    EXPECT_NEAR(hi.x, 0.95 * s.width, 1e-9);
    EXPECT_NEAR(hi.y, 0.95 * s.height, 1e-9);
}

TEST(LinearTicks, KeepsDecimalPlaces)
{
    const auto ticks = linear_ticks(-0.5, 2.5, 0.5);
    ASSERT_EQ(ticks.size(), 7u);
    EXPECT_EQ(print_source(content_expr(ticks[1].label)), "0.0");
    EXPECT_EQ(print_source(content_expr(ticks[3].label)), "1.0");
    EXPECT_EQ(print_source(content_expr(ticks[0].label)), "-0.5");
    EXPECT_EQ(linear_ticks(-15, 15, 5).size(), 7u);
    EXPECT_THROW(linear_ticks(0, 1, 0), SemanticError);
}

} // namespace
} // namespace labelforge
