#include "labelforge/tex.hpp"

#include "labelforge/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace labelforge {

const char* to_string(LabelClass c)
{
    switch (c) {
    case LabelClass::Text:
        return "text";
    case LabelClass::Math:
        return "math";
    case LabelClass::Numeric:
        return "numeric";
    }
    return "math";
}

LabelClass classify(const Expr& expr)
{
    const Expr* e = &expr;
    while (const auto* h = e->as<Hold>())
        e = &h->inner;
    if (e->is<Str>())
        return LabelClass::Text;
    if (numeric_q(*e))
        return LabelClass::Numeric;
    return LabelClass::Math;
}

std::string escape_tex_text(const std::string& text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '#':
        case '$':
        case '%':
        case '&':
        case '_':
        case '{':
        case '}':
            out += '\\';
            out += c;
            break;
        case '~':
            out += "\\textasciitilde{}";
            break;
        case '^':
            out += "\\textasciicircum{}";
            break;
        case '\\':
            out += "\\textbackslash{}";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string replace_all(std::string subject, const std::string& find, const std::string& replace)
{
    if (find.empty())
        return subject;
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t hit = subject.find(find, pos);
        if (hit == std::string::npos)
            break;
        out.append(subject, pos, hit - pos);
        out += replace;
        pos = hit + find.size();
    }
    out.append(subject, pos, std::string::npos);
    return out;
}

namespace {

enum Prec : int { kSum = 10, kProduct = 20, kNegative = 25, kPower = 30, kAtom = 40 };

const std::unordered_map<std::string_view, std::string_view>& function_macros()
{
    static const std::unordered_map<std::string_view, std::string_view> m = {
        {"Sin", "\\sin"}, {"Cos", "\\cos"}, {"Tan", "\\tan"}, {"Log", "\\log"}, {"Exp", "\\exp"},
    };
    return m;
}

bool is_trig(std::string_view head) { return head == "Sin" || head == "Cos" || head == "Tan"; }

bool is_greek(std::string_view name)
{
    static const std::string_view greek[] = {
        "alpha", "beta",  "gamma", "delta", "epsilon", "zeta", "eta",   "theta", "iota", "kappa", "lambda", "mu",
        "nu",    "xi",    "rho",   "sigma", "tau",     "phi",  "chi",   "psi",   "omega",
    };
    return std::find(std::begin(greek), std::end(greek), name) != std::end(greek);
}

// Numbers first, then symbols by name, everything else keeps its position.
std::vector<Expr> canonical_order(const std::vector<Expr>& args)
{
    std::vector<Expr> sorted = args;
    auto rank = [](const Expr& e) { return e.is<Num>() ? 0 : e.is<Sym>() ? 1 : 2; };
    std::stable_sort(sorted.begin(), sorted.end(), [&](const Expr& l, const Expr& r) {
        const int rl = rank(l);
        const int rr = rank(r);
        if (rl != rr)
            return rl < rr;
        if (rl == 1)
            return l.as<Sym>()->name < r.as<Sym>()->name;
        return false;
    });
    return sorted;
}

class TexRenderer {
public:
    explicit TexRenderer(Diagnostics* warnings) : warnings_(warnings) {}

    std::string render(const Expr& e, bool held)
    {
        if (const auto* n = e.as<Num>())
            return render_num(*n);
        if (const auto* s = e.as<Sym>())
            return render_symbol(s->name);
        if (const auto* s = e.as<Str>())
            return "\\text{" + escape_tex_text(s->text) + "}";
        if (const auto* h = e.as<Hold>())
            return render(h->inner, true);
        return render_call(*e.as<Call>(), held);
    }

    static int prec(const Expr& e)
    {
        if (const auto* n = e.as<Num>())
            return n->negative() ? kNegative : kAtom;
        if (const auto* h = e.as<Hold>())
            return prec(h->inner);
        const auto* c = e.as<Call>();
        if (!c)
            return kAtom;
        if (c->head == "Plus" && c->args.size() >= 2)
            return kSum;
        if (c->head == "Times" && c->args.size() >= 2)
            return kProduct;
        if (c->head == "Power" && c->args.size() == 2) {
            if (root_index(c->args[1]))
                return kAtom;
            return kPower;
        }
        return kAtom;
    }

private:
    // 2 for x^(1/2), n for x^(1/n) with n >= 3, 0 otherwise.
    static std::int64_t root_index(const Expr& exponent)
    {
        const auto* n = exponent.as<Num>();
        if (n && n->is_fraction() && n->numerator == 1 && n->denominator >= 2)
            return n->denominator;
        return 0;
    }

    static std::string render_num(const Num& n)
    {
        if (n.decimal)
            return n.literal;
        if (n.denominator == 1)
            return std::to_string(n.numerator);
        const std::string frac = "\\frac{" + std::to_string(n.numerator < 0 ? -n.numerator : n.numerator) + "}{" +
                                 std::to_string(n.denominator) + "}";
        return n.numerator < 0 ? "-" + frac : frac;
    }

    static std::string render_symbol(const std::string& name)
    {
        if (name == "Pi")
            return "\\pi";
        if (name == "E")
            return "e";
        if (name == "Infinity")
            return "\\infty";
        if (name.size() == 1)
            return name;
        if (is_greek(name))
            return "\\" + name;
        return "\\text{" + name + "}";
    }

    std::string wrapped(const Expr& e, bool held, bool parens)
    {
        std::string s = render(e, held);
        return parens ? "(" + s + ")" : s;
    }

    std::string render_call(const Call& c, bool held)
    {
        const auto& args = c.args;
        if (c.head == "Plus")
            return render_plus(args, held);
        if (c.head == "Times")
            return render_times(args, held);
        if (c.head == "Power" && args.size() == 2)
            return render_power(args[0], args[1], held);
        if ((c.head == "Divide" || c.head == "Rational") && args.size() == 2)
            return "\\frac{" + render(args[0], held) + "}{" + render(args[1], held) + "}";
        if (c.head == "Sqrt" && args.size() == 1)
            return "\\sqrt{" + render(args[0], held) + "}";
        if (c.head == "Abs" && args.size() == 1)
            return "\\left|" + render(args[0], held) + "\\right|";
        if (auto it = function_macros().find(c.head); it != function_macros().end() && args.size() == 1)
            return std::string(it->second) + " (" + render(args[0], held) + ")";

        if (warnings_)
            warnings_->push_back("unknown head '" + c.head + "' rendered as \\text");
        std::string out = "\\text{" + escape_tex_text(c.head) + "}(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i)
                out += ",";
            out += render(args[i], held);
        }
        return out + ")";
    }

    std::string render_plus(const std::vector<Expr>& raw, bool held)
    {
        if (raw.empty())
            return "0";
        const std::vector<Expr> terms = held ? raw : canonical_order(raw);
        std::string out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            std::string s = wrapped(terms[i], held, prec(terms[i]) <= kSum);
            if (i > 0 && (s.empty() || s.front() != '-'))
                out += '+';
            out += s;
        }
        return out;
    }

    std::string render_times(const std::vector<Expr>& raw, bool held)
    {
        if (raw.empty())
            return "1";
        const std::vector<Expr> factors = held ? raw : canonical_order(raw);
        std::size_t first = 0;
        std::string out;
        const auto* lead = factors.front().as<Num>();
        if (factors.size() >= 2 && lead && lead->is_integer() && lead->numerator == -1) {
            out += '-';
            first = 1;
        }
        for (std::size_t i = first; i < factors.size(); ++i) {
            const Expr& f = factors[i];
            const int p = prec(f);
            const bool parens = p <= kSum || (i > first && p == kNegative);
            if (i > first)
                out += ' ';
            out += wrapped(f, held, parens);
        }
        return out;
    }

    std::string render_power(const Expr& base, const Expr& exponent, bool held)
    {
        if (const std::int64_t n = root_index(exponent)) {
            const std::string inner = render(base, held);
            if (n == 2)
                return "\\sqrt{" + inner + "}";
            return "\\sqrt[" + std::to_string(n) + "]{" + inner + "}";
        }
        const auto* k = exponent.as<Num>();
        const auto* fn = base.as<Call>();
        if (k && k->is_integer() && k->numerator > 0 && fn && is_trig(fn->head) && fn->args.size() == 1) {
            return std::string(function_macros().at(fn->head)) + " ^" + std::to_string(k->numerator) + "(" +
                   render(fn->args[0], held) + ")";
        }
        const auto* bn = base.as<Num>();
        const bool base_parens = prec(base) < kAtom || (bn && bn->is_fraction()) ||
                                 (fn && is_trig(fn->head));
        std::string out = wrapped(base, held, base_parens);
        const std::string e = render(exponent, held);
        if (e.size() == 1)
            return out + "^" + e;
        return out + "^{" + e + "}";
    }

    Diagnostics* warnings_;
};

Expr negated(const Expr& e)
{
    if (const auto* n = e.as<Num>())
        return Expr::number(n->negated());
    if (const auto* c = e.as<Call>(); c && c->head == "Times" && !c->args.empty()) {
        const auto* lead = c->args.front().as<Num>();
        if (lead && lead->is_integer() && lead->numerator == -1 && c->args.size() == 2)
            return c->args[1];
        if (lead) {
            std::vector<Expr> args = c->args;
            args.front() = Expr::number(lead->negated());
            return Expr::call("Times", std::move(args));
        }
    }
    return Expr::call("Times", {Expr::integer(-1), e});
}

Expr expand_negations(const Expr& e)
{
    if (const auto* h = e.as<Hold>())
        return Expr::hold(expand_negations(h->inner));
    const auto* c = e.as<Call>();
    if (!c)
        return e;
    std::vector<Expr> args;
    args.reserve(c->args.size());
    for (const auto& a : c->args)
        args.push_back(expand_negations(a));
    if (c->head == "Times" && args.size() == 2) {
        const auto* lead = args[0].as<Num>();
        const auto* sum = args[1].as<Call>();
        if (lead && lead->is_integer() && lead->numerator == -1 && sum && sum->head == "Plus") {
            std::vector<Expr> terms;
            for (const auto& t : sum->args)
                terms.push_back(negated(t));
            return Expr::call("Plus", std::move(terms));
        }
    }
    return Expr::call(c->head, std::move(args));
}

} // namespace

ExprTransform builtin_transform(const std::string& name)
{
    if (name == "hold")
        return [](const Expr& e) { return Expr::hold(e); };
    if (name == "expand_negations")
        return [](const Expr& e) { return expand_negations(e); };
    throw SemanticError("unknown pre_apply transform '" + name + "' (known: hold, expand_negations)");
}

std::string to_tex(const Expr& expr, Diagnostics* warnings) { return TexRenderer(warnings).render(expr, false); }

std::string guess_tex(const Expr& expr, const HookSet& hooks, bool automatic_scaling, Diagnostics* warnings)
{
    const LabelClass cls = classify(expr);
    Expr e = expr;
    for (const auto& hook : hooks.pre(cls))
        e = hook(e);

    std::string out;
    switch (cls) {
    case LabelClass::Text: {
        const auto* s = e.as<Str>();
        const std::string body = escape_tex_text(s ? s->text : print_source(e));
        out = "\\psfragtextstyle{" + std::string(automatic_scaling ? "\\psfragscaletext " : "") + body + "}";
        break;
    }
    case LabelClass::Math:
        out = "\\psfragmathstyle{$" + std::string(automatic_scaling ? "\\psfragscalemath " : "") +
              to_tex(e, warnings) + "$}";
        break;
    case LabelClass::Numeric:
        out = "\\psfragnumericstyle{$" + std::string(automatic_scaling ? "\\psfragscalenumeric " : "") +
              to_tex(e, warnings) + "$}";
        break;
    }
    for (const auto& [find, replace] : hooks.post(cls))
        out = replace_all(std::move(out), find, replace);
    return out;
}

} // namespace labelforge
