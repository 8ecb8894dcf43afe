#include "labelforge/errors.hpp"
#include "labelforge/expr.hpp"

#include <gtest/gtest.h>

#include <random>

namespace labelforge {
namespace {

Expr sym(const char* name) { return Expr::symbol(name); }
Expr num(std::int64_t n) { return Expr::integer(n); }
Expr call(const char* head, std::vector<Expr> args) { return Expr::call(head, std::move(args)); }

TEST(ParseExpr, SimpleCall)
{
    EXPECT_EQ(parse_expr("Sin[x]"), call("Sin", {sym("x")}));
}

TEST(ParseExpr, NestedPowerWithExactFraction)
{
    const Expr expected = call(
        "Times", {num(3), call("Power", {call("Power", {call("Cos", {call("Times", {num(2), call("Sqrt", {sym("x")})})}),
                                                        num(2)}),
                                         Expr::rational(1, 3)})});
    EXPECT_EQ(parse_expr("3*((Cos[2*Sqrt[x]])^2)^(1/3)"), expected);
}

TEST(ParseExpr, HoldFormBecomesHold)
{
    const Expr e = parse_expr("HoldForm[(3*x - 1)^3]");
    ASSERT_TRUE(e.is<Hold>());
    const Expr inner = e.as<Hold>()->inner;
    EXPECT_EQ(inner, call("Power", {call("Plus", {call("Times", {num(3), sym("x")}), num(-1)}), num(3)}));
}

TEST(ParseExpr, NestedHoldCollapses)
{
    EXPECT_EQ(parse_expr("HoldForm[HoldForm[x]]"), Expr::hold(sym("x")));
}

TEST(ParseExpr, PrecedenceAndAssociativity)
{
    EXPECT_EQ(parse_expr("a+b*c"), call("Plus", {sym("a"), call("Times", {sym("b"), sym("c")})}));
    EXPECT_EQ(parse_expr("a^b^c"), call("Power", {sym("a"), call("Power", {sym("b"), sym("c")})}));
    EXPECT_EQ(parse_expr("-x^2"), call("Times", {num(-1), call("Power", {sym("x"), num(2)})}));
    EXPECT_EQ(parse_expr("a - b"), call("Plus", {sym("a"), call("Times", {num(-1), sym("b")})}));
    EXPECT_EQ(parse_expr("2^-1"), call("Power", {num(2), num(-1)}));
}

TEST(ParseExpr, IntegerDivisionFoldsToRational)
{
    EXPECT_EQ(parse_expr("6/4"), Expr::rational(3, 2));
    EXPECT_EQ(parse_expr("Pi/2"), call("Divide", {sym("Pi"), num(2)}));
}

TEST(ParseExpr, DecimalKeepsLiteral)
{
    const Expr e = parse_expr("0.50");
    ASSERT_TRUE(e.is<Num>());
    EXPECT_EQ(e.as<Num>()->literal, "0.50");
    EXPECT_DOUBLE_EQ(e.as<Num>()->value(), 0.5);
}

TEST(ParseExpr, StringsWithEscapes)
{
    EXPECT_EQ(parse_expr(R"("say \"hi\"\n")"), Expr::string("say \"hi\"\n"));
}

TEST(ParseExpr, WhitespaceIsInsignificant)
{
    EXPECT_EQ(parse_expr("  Sin [ x ] + 1 "), parse_expr("Sin[x]+1"));
}

TEST(ParseExpr, ErrorsCarryOffsets)
{
    try {
        parse_expr("Sin[x");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("unbalanced"), std::string::npos) << e.what();
    }
    try {
        parse_expr("1 + * 2");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
    EXPECT_THROW(parse_expr(""), ParseError);
    EXPECT_THROW(parse_expr("(a]"), ParseError);
    EXPECT_THROW(parse_expr("a)"), ParseError);
    EXPECT_THROW(parse_expr("\"open"), ParseError);
    EXPECT_THROW(parse_expr("2 x"), ParseError);
}

TEST(ParseExpr, ZeroDenominatorStaysSymbolic)
{
    const Expr e = parse_expr("1/0");
    EXPECT_EQ(e, call("Divide", {num(1), num(0)}));
    EXPECT_EQ(parse_expr(print_source(e)), e);
    EXPECT_FALSE(numeric_value(e).has_value());
    EXPECT_THROW(Expr::rational(1, 0), SemanticError);
}

TEST(PrintSource, RoundTripsFixtureExpressions)
{
    const char* sources[] = {
        "Sin[x]",
        "3*((Cos[2*Sqrt[x]])^2)^(1/3)",
        "HoldForm[(3*x - 1)^3]",
        "(3*x - 1)^3",
        "Pi/2",
        "3*Pi/2",
        "2*Pi",
        "-0.5",
        "\"local maximum\"",
        "\"Example 30\"",
        "x",
        "-1",
        "a - b*c + d^e^f",
        "f[g[x, y], -z]",
        "(a + b)*(c - d)",
        "-(a + b)",
        "(-2)^x",
        "(a^b)^c",
    };
    for (const char* src : sources) {
        const Expr e = parse_expr(src);
        EXPECT_EQ(parse_expr(print_source(e)), e) << src << " printed as " << print_source(e);
    }
}

TEST(PrintSource, Forms)
{
    EXPECT_EQ(print_source(parse_expr("Sin[x]")), "Sin[x]");
    EXPECT_EQ(print_source(parse_expr("a - b")), "a - b");
    EXPECT_EQ(print_source(parse_expr("\"local maximum\"")), "\"local maximum\"");
}

// Random trees of bounded depth over a small vocabulary.
Expr random_expr(std::mt19937& rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 10);
    const char* symbols[] = {"x", "y", "alpha", "Pi", "E"};
    switch (pick(rng)) {
    case 0:
        return num(std::uniform_int_distribution<int>(-9, 9)(rng));
    case 1:
        return Expr::rational(std::uniform_int_distribution<int>(1, 7)(rng), std::uniform_int_distribution<int>(2, 9)(rng));
    case 2:
        return Expr::number(Num::from_decimal("1.25"));
    case 3:
        return sym(symbols[std::uniform_int_distribution<int>(0, 4)(rng)]);
    case 4:
        return call("Plus", {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 5:
        return call("Times", {random_expr(rng, depth - 1), random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 6:
        return call("Power", {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 7:
        return call("Sin", {random_expr(rng, depth - 1)});
    case 8:
        return call("Divide", {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    case 9:
        return Expr::hold(random_expr(rng, depth - 1));
    default:
        return call("Abs", {random_expr(rng, depth - 1)});
    }
}

TEST(PrintSource, ParseOfPrintIsAFixedPoint)
{
    std::mt19937 rng(20260101);
    for (int i = 0; i < 2000; ++i) {
        const Expr e = random_expr(rng, 4);
        const Expr once = parse_expr(print_source(e));
        EXPECT_EQ(parse_expr(print_source(once)), once) << print_source(e);
    }
}

TEST(NumericQ, Classification)
{
    EXPECT_TRUE(numeric_q(Expr::number(Num::from_decimal("1.5"))));
    EXPECT_TRUE(numeric_q(call("Times", {Expr::rational(1, 2), sym("Pi")})));
    EXPECT_FALSE(numeric_q(call("Sin", {sym("x")})));
    EXPECT_TRUE(numeric_q(call("Sin", {sym("Pi")})));
    EXPECT_TRUE(numeric_q(Expr::hold(sym("E"))));
    EXPECT_FALSE(numeric_q(Expr::string("1")));
    EXPECT_FALSE(numeric_q(call("Foo", {num(1)})));
}

TEST(NumericValue, Evaluates)
{
    EXPECT_DOUBLE_EQ(*numeric_value(parse_expr("3*Pi/2")), 3 * M_PI / 2);
    EXPECT_DOUBLE_EQ(*numeric_value(parse_expr("Sqrt[4] + 2^3")), 10.0);
    EXPECT_FALSE(numeric_value(parse_expr("x + 1")).has_value());
}

TEST(DisplayText, StringsShowContents)
{
    EXPECT_EQ(display_text(Expr::string("Example 0")), "Example 0");
    EXPECT_EQ(display_text(parse_expr("Sin[x]")), "Sin[x]");
}

} // namespace
} // namespace labelforge
