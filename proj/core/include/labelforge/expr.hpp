#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace labelforge {

// Numeric literal. Integers and fractions are kept exact; decimals keep the
// literal text they were written with so "0.5" never prints as "0.50".
struct Num {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;
    bool decimal = false;
    std::string literal;

    static Num integer(std::int64_t n) { return {n, 1, false, {}}; }
    static Num rational(std::int64_t p, std::int64_t q);
    static Num from_decimal(std::string literal);

    bool is_integer() const { return !decimal && denominator == 1; }
    bool is_fraction() const { return !decimal && denominator != 1; }
    bool negative() const;
    double value() const;
    Num negated() const;

    friend bool operator==(const Num&, const Num&) = default;
};

struct Sym {
    std::string name;
    friend bool operator==(const Sym&, const Sym&) = default;
};

struct Str {
    std::string text;
    friend bool operator==(const Str&, const Str&) = default;
};

struct Call;
struct Hold;
struct ExprNode;

// Immutable expression tree with shared structure. Copies are cheap.
class Expr {
public:
    Expr();

    static Expr number(Num n);
    static Expr integer(std::int64_t n) { return number(Num::integer(n)); }
    static Expr rational(std::int64_t p, std::int64_t q) { return number(Num::rational(p, q)); }
    static Expr symbol(std::string name);
    static Expr string(std::string text);
    static Expr call(std::string head, std::vector<Expr> args);
    // Hold(Hold(e)) collapses to Hold(e).
    static Expr hold(Expr inner);

    template <class T>
    const T* as() const;
    template <class T>
    bool is() const { return as<T>() != nullptr; }

    // Head name of a Call, empty otherwise.
    std::string_view head() const;
    bool is_call(std::string_view head_name) const;
    bool is_symbol(std::string_view name) const;

    friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct Call {
    std::string head;
    std::vector<Expr> args;
    friend bool operator==(const Call&, const Call&) = default;
};

struct Hold {
    Expr inner;
    friend bool operator==(const Hold&, const Hold&) = default;
};

struct ExprNode {
    std::variant<Num, Sym, Str, Call, Hold> value;
};

template <class T>
const T* Expr::as() const
{
    return std::get_if<T>(&node_->value);
}

// Parses the bracketed expression syntax:
//   identifiers, integers, decimals, "strings", Head[a, b], ( ),
//   infix + - * / ^ (^ right-associative and tightest), unary minus,
//   HoldForm[e].
// Integer/integer divisions fold into exact fractions. a - b becomes
// Plus[a, -b] where negating a number flips its sign and negating anything
// else yields Times[-1, x]. Throws ParseError.
Expr parse_expr(std::string_view source);

// Prints an expression back in the source syntax. parse_expr(print_source(e))
// reproduces e.
std::string print_source(const Expr& expr);

// Text shown for an untagged label: string contents for Str, the source
// form for everything else.
std::string display_text(const Expr& expr);

// True for numbers, Pi, E, and closed numeric calls over them.
bool numeric_q(const Expr& expr);

// Evaluates a numeric_q expression; nullopt otherwise or when the result is
// not finite.
std::optional<double> numeric_value(const Expr& expr);

} // namespace labelforge
