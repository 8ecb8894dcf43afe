#include "labelforge/expr.hpp"

#include "labelforge/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <unordered_set>

namespace labelforge {

//------------------------------------------------------------------------
// Num

Num Num::rational(std::int64_t p, std::int64_t q)
{
    if (q == 0)
        throw SemanticError("rational with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const std::int64_t g = std::gcd(p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    return {p, q, false, {}};
}

Num Num::from_decimal(std::string literal)
{
    Num n;
    n.decimal = true;
    n.literal = std::move(literal);
    return n;
}

bool Num::negative() const
{
    if (decimal)
        return !literal.empty() && literal.front() == '-' && value() != 0.0;
    return numerator < 0;
}

double Num::value() const
{
    if (decimal)
        return std::strtod(literal.c_str(), nullptr);
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

Num Num::negated() const
{
    if (!decimal)
        return {-numerator, denominator, false, {}};
    if (!literal.empty() && literal.front() == '-')
        return from_decimal(literal.substr(1));
    return from_decimal("-" + literal);
}

//------------------------------------------------------------------------
// Expr

Expr::Expr() : node_(std::make_shared<const ExprNode>(ExprNode{Num::integer(0)})) {}

Expr Expr::number(Num n) { return Expr(std::make_shared<const ExprNode>(ExprNode{std::move(n)})); }

Expr Expr::symbol(std::string name)
{
    return Expr(std::make_shared<const ExprNode>(ExprNode{Sym{std::move(name)}}));
}

Expr Expr::string(std::string text)
{
    return Expr(std::make_shared<const ExprNode>(ExprNode{Str{std::move(text)}}));
}

Expr Expr::call(std::string head, std::vector<Expr> args)
{
    if (head.empty())
        throw SemanticError("call head must be a nonempty identifier");
    return Expr(std::make_shared<const ExprNode>(ExprNode{Call{std::move(head), std::move(args)}}));
}

Expr Expr::hold(Expr inner)
{
    if (inner.is<Hold>())
        return inner;
    return Expr(std::make_shared<const ExprNode>(ExprNode{Hold{std::move(inner)}}));
}

std::string_view Expr::head() const
{
    if (const auto* c = as<Call>())
        return c->head;
    return {};
}

bool Expr::is_call(std::string_view head_name) const
{
    const auto* c = as<Call>();
    return c != nullptr && c->head == head_name;
}

bool Expr::is_symbol(std::string_view name) const
{
    const auto* s = as<Sym>();
    return s != nullptr && s->name == name;
}

bool operator==(const Expr& lhs, const Expr& rhs)
{
    if (lhs.node_ == rhs.node_)
        return true;
    return lhs.node_->value == rhs.node_->value;
}

//------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

Expr negate(const Expr& e)
{
    if (const auto* n = e.as<Num>())
        return Expr::number(n->negated());
    return Expr::call("Times", {Expr::integer(-1), e});
}

std::string describe(std::string_view src, std::size_t pos)
{
    if (pos >= src.size())
        return "end of input";
    return std::string("'") + src[pos] + "'";
}

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    Expr parse()
    {
        skip_ws();
        if (at_end())
            throw ParseError(0, "empty expression");
        Expr e = parse_sum();
        skip_ws();
        if (!at_end()) {
            const char c = src_[pos_];
            if (c == ']' || c == ')')
                throw ParseError(pos_, std::string("unbalanced '") + c + "' without matching opener");
            throw ParseError(pos_, "expected operator or end of input, found " + describe(src_, pos_));
        }
        return e;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return at_end() ? '\0' : src_[pos_]; }

    void skip_ws()
    {
        while (!at_end() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
            ++pos_;
    }

    Expr parse_sum()
    {
        std::vector<Expr> terms;
        terms.push_back(parse_product());
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-')
                break;
            ++pos_;
            Expr rhs = parse_product();
            terms.push_back(c == '+' ? std::move(rhs) : negate(rhs));
        }
        if (terms.size() == 1)
            return std::move(terms.front());
        return Expr::call("Plus", std::move(terms));
    }

    Expr parse_product()
    {
        Expr current = parse_unary();
        std::vector<Expr> chain;
        bool in_chain = false;
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '*' && c != '/')
                break;
            ++pos_;
            Expr rhs = parse_unary();
            if (c == '*') {
                if (!in_chain) {
                    chain.clear();
                    chain.push_back(std::move(current));
                    in_chain = true;
                }
                chain.push_back(std::move(rhs));
                continue;
            }
            if (in_chain) {
                current = Expr::call("Times", std::move(chain));
                chain = {};
                in_chain = false;
            }
            current = divide(current, rhs);
        }
        if (in_chain)
            return Expr::call("Times", std::move(chain));
        return current;
    }

    static Expr divide(const Expr& lhs, const Expr& rhs)
    {
        const auto* p = lhs.as<Num>();
        const auto* q = rhs.as<Num>();
        if (p && q && p->is_integer() && q->is_integer() && q->numerator != 0)
            return Expr::rational(p->numerator, q->numerator);
        return Expr::call("Divide", {lhs, rhs});
    }

    Expr parse_unary()
    {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return negate(parse_unary());
        }
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            Expr exponent = parse_unary();
            return Expr::call("Power", {std::move(base), std::move(exponent)});
        }
        return base;
    }

    Expr parse_primary()
    {
        skip_ws();
        if (at_end())
            throw ParseError(pos_, "expected expression, found end of input");
        const char c = src_[pos_];
        if (c == '(') {
            const std::size_t open = pos_++;
            Expr inner = parse_sum();
            skip_ws();
            if (at_end())
                throw ParseError(open, "unbalanced '(' never closed");
            if (peek() != ')') {
                if (peek() == ']')
                    throw ParseError(pos_, "unbalanced brackets: found ']' while '(' at byte " +
                                               std::to_string(open) + " is open");
                throw ParseError(pos_, "expected ')', found " + describe(src_, pos_));
            }
            ++pos_;
            return inner;
        }
        if (c == '"')
            return parse_string();
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1])))
            return parse_number();
        if (is_ident_start(c))
            return parse_identifier();
        if (c == ')' || c == ']')
            throw ParseError(pos_, std::string("unbalanced '") + c + "' without matching opener");
        throw ParseError(pos_, "expected expression, found " + describe(src_, pos_));
    }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        while (!at_end() && is_digit(src_[pos_]))
            ++pos_;
        bool decimal = false;
        if (!at_end() && src_[pos_] == '.') {
            decimal = true;
            ++pos_;
            while (!at_end() && is_digit(src_[pos_]))
                ++pos_;
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        if (decimal)
            return Expr::number(Num::from_decimal(std::string(text)));
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ParseError(start, "integer literal out of range");
        return Expr::integer(value);
    }

    Expr parse_string()
    {
        const std::size_t open = pos_++;
        std::string text;
        while (!at_end() && src_[pos_] != '"') {
            char c = src_[pos_++];
            if (c == '\\') {
                if (at_end())
                    break;
                c = src_[pos_++];
                if (c == 'n')
                    c = '\n';
                else if (c == 't')
                    c = '\t';
            }
            text.push_back(c);
        }
        if (at_end())
            throw ParseError(open, "unterminated string literal");
        ++pos_;
        return Expr::string(std::move(text));
    }

    Expr parse_identifier()
    {
        const std::size_t start = pos_;
        while (!at_end() && is_ident_char(src_[pos_]))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        skip_ws();
        if (peek() != '[')
            return Expr::symbol(std::move(name));

        const std::size_t open = pos_++;
        std::vector<Expr> args;
        skip_ws();
        if (peek() == ']') {
            ++pos_;
        } else {
            for (;;) {
                args.push_back(parse_sum());
                skip_ws();
                if (at_end())
                    throw ParseError(open, "unbalanced '[' never closed");
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                if (peek() == ']') {
                    ++pos_;
                    break;
                }
                if (peek() == ')')
                    throw ParseError(pos_, "unbalanced brackets: found ')' while '[' at byte " +
                                               std::to_string(open) + " is open");
                throw ParseError(pos_, "expected ',' or ']', found " + describe(src_, pos_));
            }
        }
        if (name == "HoldForm") {
            if (args.size() != 1)
                throw ParseError(start, "HoldForm takes exactly one argument");
            return Expr::hold(std::move(args.front()));
        }
        return Expr::call(std::move(name), std::move(args));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

//------------------------------------------------------------------------
// Source printer

enum Prec : int { kSum = 10, kProduct = 20, kUnary = 25, kPower = 30, kAtom = 40 };

bool is_infix(const Call& c)
{
    if (c.head == "Plus" || c.head == "Times")
        return c.args.size() >= 2;
    if (c.head == "Power")
        return c.args.size() == 2;
    if (c.head == "Divide") {
        if (c.args.size() != 2)
            return false;
        // Divide[int, int] would fold into a fraction when reparsed.
        const auto* p = c.args[0].as<Num>();
        const auto* q = c.args[1].as<Num>();
        return !(p && q && p->is_integer() && q->is_integer());
    }
    return false;
}

bool is_minus_one(const Expr& e)
{
    const auto* n = e.as<Num>();
    return n && n->is_integer() && n->numerator == -1;
}

// Times[-1, x] with x not a number prints as -x.
bool is_negation(const Call& c)
{
    return c.head == "Times" && c.args.size() == 2 && is_minus_one(c.args[0]) && !c.args[1].is<Num>();
}

int source_prec(const Expr& e)
{
    if (const auto* n = e.as<Num>()) {
        if (n->negative())
            return kUnary;
        return n->is_fraction() ? kProduct : kAtom;
    }
    if (const auto* c = e.as<Call>()) {
        if (!is_infix(*c))
            return kAtom;
        if (c->head == "Plus")
            return kSum;
        if (c->head == "Times")
            return is_negation(*c) ? kUnary : kProduct;
        if (c->head == "Divide")
            return kProduct;
        return kPower;
    }
    return kAtom;
}

void print_into(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out)
{
    if (parens)
        out += '(';
    print_into(e, out);
    if (parens)
        out += ')';
}

std::string escape_source_string(const std::string& text)
{
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void print_num(const Num& n, std::string& out)
{
    if (n.decimal) {
        out += n.literal;
        return;
    }
    out += std::to_string(n.numerator);
    if (n.denominator != 1) {
        out += '/';
        out += std::to_string(n.denominator);
    }
}

void print_call(const Call& c, std::string& out)
{
    if (!is_infix(c)) {
        out += c.head;
        out += '[';
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (i)
                out += ", ";
            print_into(c.args[i], out);
        }
        out += ']';
        return;
    }
    if (c.head == "Plus") {
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            const Expr& term = c.args[i];
            if (i == 0) {
                print_wrapped(term, source_prec(term) <= kSum, out);
                continue;
            }
            const auto* num = term.as<Num>();
            const auto* call = term.as<Call>();
            if (num && num->negative()) {
                out += " - ";
                print_num(num->negated(), out);
            } else if (call && is_negation(*call)) {
                out += " - ";
                const Expr& rest = call->args[1];
                print_wrapped(rest, source_prec(rest) <= kSum, out);
            } else {
                out += " + ";
                print_wrapped(term, source_prec(term) <= kSum, out);
            }
        }
        return;
    }
    if (c.head == "Times") {
        if (is_negation(c)) {
            out += '-';
            print_wrapped(c.args[1], source_prec(c.args[1]) < kPower, out);
            return;
        }
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (i)
                out += '*';
            print_wrapped(c.args[i], source_prec(c.args[i]) < kPower, out);
        }
        return;
    }
    if (c.head == "Divide") {
        const Expr& lhs = c.args[0];
        const Expr& rhs = c.args[1];
        const auto* ln = lhs.as<Num>();
        const bool lhs_parens = source_prec(lhs) < kProduct || (ln && ln->is_fraction()) ||
                                (lhs.as<Call>() && source_prec(lhs) == kUnary);
        print_wrapped(lhs, lhs_parens, out);
        out += '/';
        print_wrapped(rhs, source_prec(rhs) < kPower, out);
        return;
    }
    // Power
    const Expr& base = c.args[0];
    const Expr& exponent = c.args[1];
    print_wrapped(base, source_prec(base) <= kPower, out);
    out += '^';
    print_wrapped(exponent, source_prec(exponent) < kPower, out);
}

void print_into(const Expr& e, std::string& out)
{
    if (const auto* n = e.as<Num>())
        print_num(*n, out);
    else if (const auto* s = e.as<Sym>())
        out += s->name;
    else if (const auto* s = e.as<Str>())
        out += escape_source_string(s->text);
    else if (const auto* c = e.as<Call>())
        print_call(*c, out);
    else if (const auto* h = e.as<Hold>()) {
        out += "HoldForm[";
        print_into(h->inner, out);
        out += ']';
    }
}

const std::unordered_set<std::string_view>& numeric_heads()
{
    static const std::unordered_set<std::string_view> heads = {
        "Plus", "Times", "Power", "Sqrt", "Sin", "Cos", "Tan", "Log", "Exp", "Abs", "Rational", "Divide",
    };
    return heads;
}

} // namespace

Expr parse_expr(std::string_view source) { return ExprParser(source).parse(); }

std::string print_source(const Expr& expr)
{
    std::string out;
    print_into(expr, out);
    return out;
}

std::string display_text(const Expr& expr)
{
    const Expr* e = &expr;
    while (const auto* h = e->as<Hold>())
        e = &h->inner;
    if (const auto* s = e->as<Str>())
        return s->text;
    return print_source(*e);
}

bool numeric_q(const Expr& expr)
{
    if (expr.is<Num>())
        return true;
    if (const auto* s = expr.as<Sym>())
        return s->name == "Pi" || s->name == "E";
    if (const auto* h = expr.as<Hold>())
        return numeric_q(h->inner);
    if (const auto* c = expr.as<Call>()) {
        if (!numeric_heads().contains(c->head) || c->args.empty())
            return false;
        for (const auto& a : c->args)
            if (!numeric_q(a))
                return false;
        return true;
    }
    return false;
}

namespace {

std::optional<double> evaluate(const Expr& expr)
{
    if (!numeric_q(expr))
        return std::nullopt;
    if (const auto* n = expr.as<Num>())
        return n->value();
    if (const auto* s = expr.as<Sym>())
        return s->name == "Pi" ? std::numbers::pi : std::numbers::e;
    if (const auto* h = expr.as<Hold>())
        return evaluate(h->inner);

    const auto& c = *expr.as<Call>();
    std::vector<double> v;
    for (const auto& a : c.args) {
        const auto x = evaluate(a);
        if (!x)
            return std::nullopt;
        v.push_back(*x);
    }
    auto unary = [&](double (*fn)(double)) -> std::optional<double> {
        if (v.size() != 1)
            return std::nullopt;
        return fn(v[0]);
    };
    if (c.head == "Plus")
        return std::accumulate(v.begin(), v.end(), 0.0);
    if (c.head == "Times")
        return std::accumulate(v.begin(), v.end(), 1.0, std::multiplies<>());
    if (c.head == "Power" && v.size() == 2)
        return std::pow(v[0], v[1]);
    if ((c.head == "Divide" || c.head == "Rational") && v.size() == 2)
        return v[0] / v[1];
    if (c.head == "Sqrt")
        return unary([](double x) { return std::sqrt(x); });
    if (c.head == "Sin")
        return unary([](double x) { return std::sin(x); });
    if (c.head == "Cos")
        return unary([](double x) { return std::cos(x); });
    if (c.head == "Tan")
        return unary([](double x) { return std::tan(x); });
    if (c.head == "Log")
        return unary([](double x) { return std::log(x); });
    if (c.head == "Exp")
        return unary([](double x) { return std::exp(x); });
    if (c.head == "Abs")
        return unary([](double x) { return std::fabs(x); });
    return std::nullopt;
}

} // namespace

std::optional<double> numeric_value(const Expr& expr)
{
    const auto v = evaluate(expr);
    if (v && std::isfinite(*v))
        return v;
    return std::nullopt;
}

} // namespace labelforge
