#include "labelforge/eps.hpp"

#include "labelforge/errors.hpp"
#include "labelforge/font_metrics.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <unordered_map>
#include <variant>

namespace labelforge {

namespace {

struct StringOperand {
    std::string text;
    std::size_t start;
    std::size_t end;
};
struct NameOperand {
    std::string name;
};
struct MarkOperand {};
struct ArrayOperand {
    std::vector<double> numbers; // empty when any element was not a number
    bool numeric = true;
};
struct ProcOperand {
    std::optional<std::string> single_operator;
};
struct FontOperand {
    double size = 1.0;
};
struct OpaqueOperand {};

using Operand =
    std::variant<double, StringOperand, NameOperand, MarkOperand, ArrayOperand, ProcOperand, FontOperand, OpaqueOperand>;

struct GraphicsState {
    Affine ctm;
    std::optional<Vec2> current_point; // device space
    std::optional<Vec2> subpath_start;
    double font_size = kDefaultFontSize;
};

// Stack effects of operators we only need to keep the operand stack sane.
struct Arity {
    int pops;
    int pushes;
};

const std::unordered_map<std::string, Arity>& generic_arities()
{
    static const std::unordered_map<std::string, Arity> table = {
        {"pop", {1, 0}},          {"def", {2, 0}},           {"load", {1, 1}},          {"exec", {1, 0}},
        {"if", {2, 0}},           {"ifelse", {3, 0}},        {"for", {4, 0}},           {"repeat", {2, 0}},
        {"forall", {2, 0}},       {"loop", {1, 0}},          {"known", {2, 1}},         {"begin", {1, 0}},
        {"end", {0, 0}},          {"dict", {1, 1}},          {"array", {1, 1}},         {"string", {1, 1}},
        {"matrix", {0, 1}},       {"currentmatrix", {1, 1}}, {"defaultmatrix", {1, 1}}, {"identmatrix", {1, 1}},
        {"setlinewidth", {1, 0}}, {"setlinecap", {1, 0}},    {"setlinejoin", {1, 0}},   {"setmiterlimit", {1, 0}},
        {"setgray", {1, 0}},      {"setrgbcolor", {3, 0}},   {"sethsbcolor", {3, 0}},   {"setcmykcolor", {4, 0}},
        {"setdash", {2, 0}},      {"setflat", {1, 0}},       {"stringwidth", {1, 2}},   {"put", {3, 0}},
        {"get", {2, 1}},          {"length", {1, 1}},        {"cvx", {1, 1}},           {"cvs", {2, 1}},
        {"cvi", {1, 1}},          {"cvr", {1, 1}},           {"where", {1, 1}},         {"userdict", {0, 1}},
        {"currentdict", {0, 1}},  {"systemdict", {0, 1}},    {"countdictstack", {0, 1}}, {"clip", {0, 0}},
        {"eoclip", {0, 0}},       {"rectstroke", {4, 0}},    {"rectfill", {4, 0}},      {"rectclip", {4, 0}},
        {"setpagedevice", {1, 0}}, {"image", {5, 0}},        {"colorimage", {7, 0}},    {"imagemask", {5, 0}},
        {"setcolorspace", {1, 0}}, {"setcolor", {1, 0}},     {"readonly", {1, 1}},      {"executeonly", {1, 1}},
        {"xcheck", {1, 1}},       {"type", {1, 1}},          {"not", {1, 1}},           {"eq", {2, 1}},
        {"ne", {2, 1}},           {"gt", {2, 1}},            {"ge", {2, 1}},            {"lt", {2, 1}},
        {"le", {2, 1}},           {"and", {2, 1}},           {"or", {2, 1}},            {"abs", {1, 1}},
        {"sqrt", {1, 1}},         {"sin", {1, 1}},           {"cos", {1, 1}},           {"atan", {2, 1}},
        {"round", {1, 1}},        {"truncate", {1, 1}},      {"floor", {1, 1}},         {"ceiling", {1, 1}},
        {"idiv", {2, 1}},         {"mod", {2, 1}},           {"transform", {2, 2}},     {"itransform", {2, 2}},
        {"dtransform", {2, 2}},   {"idtransform", {2, 2}},   {"charpath", {2, 0}},      {"definefont", {2, 1}},
        {"undefinefont", {1, 0}}, {"save", {0, 1}},          {"restore", {1, 0}},       {"bind", {1, 1}},
    };
    return table;
}

// Text operators we do not interpret as occurrences.
const std::unordered_map<std::string, int>& unsupported_show_arities()
{
    static const std::unordered_map<std::string, int> table = {
        {"ashow", 3}, {"widthshow", 4}, {"awidthshow", 6}, {"kshow", 2},
        {"xshow", 2}, {"yshow", 2},     {"xyshow", 2},     {"glyphshow", 1},
    };
    return table;
}

class Scanner {
public:
    Scanner(std::string_view bytes, Diagnostics* warnings) : bytes_(bytes), warnings_(warnings) {}

    std::vector<TagOccurrence> run()
    {
        tokens_ = tokenize(bytes_);
        for (index_ = 0; index_ < tokens_.size(); ++index_)
            step(tokens_[index_]);
        return std::move(occurrences_);
    }

private:
    const PsToken& token() const { return tokens_[index_]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        const PsToken& t = token();
        throw ParseError(t.start, what + " at '" + t.text + "' (bytes " + std::to_string(t.start) + "-" +
                                      std::to_string(t.end) + ")");
    }

    void warn(const std::string& what)
    {
        if (warnings_)
            warnings_->push_back("byte " + std::to_string(token().start) + ": " + what);
    }

    void step(const PsToken& t)
    {
        switch (t.kind) {
        case TokenKind::Comment:
        case TokenKind::Whitespace:
            return;
        case TokenKind::Number:
            stack_.emplace_back(t.number);
            return;
        case TokenKind::String:
            stack_.emplace_back(StringOperand{t.decoded, t.start, t.end});
            return;
        case TokenKind::LiteralName:
            stack_.emplace_back(NameOperand{t.text});
            return;
        case TokenKind::ArrayOpen:
            stack_.emplace_back(MarkOperand{});
            return;
        case TokenKind::ArrayClose:
            close_array();
            return;
        case TokenKind::ProcOpen:
            skip_procedure();
            return;
        case TokenKind::ProcClose:
            return;
        case TokenKind::Name:
            execute(t.text);
            return;
        }
    }

    void close_array()
    {
        ArrayOperand arr;
        std::vector<double> reversed;
        while (!stack_.empty() && !std::holds_alternative<MarkOperand>(stack_.back())) {
            if (const auto* d = std::get_if<double>(&stack_.back()))
                reversed.push_back(*d);
            else
                arr.numeric = false;
            stack_.pop_back();
        }
        if (!stack_.empty())
            stack_.pop_back();
        if (arr.numeric)
            arr.numbers.assign(reversed.rbegin(), reversed.rend());
        stack_.emplace_back(std::move(arr));
    }

    void skip_procedure()
    {
        int depth = 1;
        std::vector<std::string> names;
        bool only_names = true;
        while (++index_ < tokens_.size()) {
            const PsToken& t = tokens_[index_];
            if (t.kind == TokenKind::ProcOpen)
                ++depth;
            else if (t.kind == TokenKind::ProcClose && --depth == 0)
                break;
            else if (t.kind == TokenKind::Name && depth == 1)
                names.push_back(t.text);
            else if (t.kind != TokenKind::Comment && t.kind != TokenKind::Whitespace)
                only_names = false;
        }
        ProcOperand proc;
        if (only_names && names.size() == 1)
            proc.single_operator = resolve(names.front());
        stack_.emplace_back(std::move(proc));
    }

    std::string resolve(const std::string& name) const
    {
        const auto it = aliases_.find(name);
        return it == aliases_.end() ? name : it->second;
    }

    // Strict pops for handled operators.
    Operand pop_any(const char* op)
    {
        if (stack_.empty())
            fail(std::string("operand stack underflow in ") + op);
        Operand v = std::move(stack_.back());
        stack_.pop_back();
        return v;
    }

    void require(std::size_t n, const char* op)
    {
        if (stack_.size() < n)
            fail(std::string("operand stack underflow in ") + op);
    }

    // Pops n operands; returns them as numbers (bottom first) when all are.
    std::optional<std::vector<double>> pop_numbers(std::size_t n, const char* op)
    {
        require(n, op);
        std::vector<double> out(n);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const Operand& v = stack_[stack_.size() - n + i];
            if (const auto* d = std::get_if<double>(&v))
                out[i] = *d;
            else
                ok = false;
        }
        stack_.resize(stack_.size() - n);
        if (!ok) {
            warn(std::string("non-numeric operand to ") + op + " ignored");
            return std::nullopt;
        }
        return out;
    }

    void pop_lenient(int n)
    {
        for (int i = 0; i < n && !stack_.empty(); ++i)
            stack_.pop_back();
    }

    void set_ctm(const Affine& m)
    {
        if (!(std::fabs(m.determinant()) > 1e-12))
            fail("singular transformation matrix");
        gs_.ctm = m;
    }

    void move_to(Vec2 device)
    {
        gs_.current_point = device;
        gs_.subpath_start = device;
    }

    void execute(const std::string& raw_name)
    {
        const std::string name = resolve(raw_name);

        if (name == "translate" || name == "scale") {
            if (!stack_.empty() && std::holds_alternative<ArrayOperand>(stack_.back())) {
                pop_lenient(3);
                return;
            }
            if (auto v = pop_numbers(2, name.c_str())) {
                const Affine m = name == "translate" ? Affine::translation((*v)[0], (*v)[1])
                                                     : Affine::scaling((*v)[0], (*v)[1]);
                set_ctm(gs_.ctm * m);
            }
            return;
        }
        if (name == "rotate") {
            if (!stack_.empty() && std::holds_alternative<ArrayOperand>(stack_.back())) {
                pop_lenient(2);
                return;
            }
            if (auto v = pop_numbers(1, "rotate"))
                set_ctm(gs_.ctm * Affine::rotation((*v)[0]));
            return;
        }
        if (name == "concat" || name == "setmatrix") {
            const Operand v = pop_any(name.c_str());
            const auto* arr = std::get_if<ArrayOperand>(&v);
            if (!arr || !arr->numeric || arr->numbers.size() != 6) {
                warn(name + " with an unknown matrix ignored");
                return;
            }
            const auto& n = arr->numbers;
            const Affine m{n[0], n[1], n[2], n[3], n[4], n[5]};
            set_ctm(name == "concat" ? gs_.ctm * m : m);
            return;
        }
        if (name == "gsave" || name == "save") {
            saved_.push_back(gs_);
            if (name == "save")
                stack_.emplace_back(OpaqueOperand{});
            return;
        }
        if (name == "grestore") {
            if (saved_.empty())
                fail("grestore without matching gsave");
            gs_ = saved_.back();
            saved_.pop_back();
            return;
        }
        if (name == "restore") {
            pop_lenient(1);
            if (!saved_.empty()) {
                gs_ = saved_.back();
                saved_.pop_back();
            }
            return;
        }
        if (name == "moveto" || name == "lineto") {
            if (auto v = pop_numbers(2, name.c_str())) {
                const Vec2 p = gs_.ctm.apply({(*v)[0], (*v)[1]});
                if (name == "moveto")
                    move_to(p);
                else
                    gs_.current_point = p;
            }
            return;
        }
        if (name == "rmoveto" || name == "rlineto") {
            if (auto v = pop_numbers(2, name.c_str())) {
                if (!gs_.current_point) {
                    warn(name + " without a current point");
                    return;
                }
                const Vec2 p = *gs_.current_point + gs_.ctm.apply_linear({(*v)[0], (*v)[1]});
                if (name == "rmoveto")
                    move_to(p);
                else
                    gs_.current_point = p;
            }
            return;
        }
        if (name == "curveto") {
            if (auto v = pop_numbers(6, "curveto"))
                gs_.current_point = gs_.ctm.apply({(*v)[4], (*v)[5]});
            return;
        }
        if (name == "rcurveto") {
            if (auto v = pop_numbers(6, "rcurveto"); v && gs_.current_point)
                gs_.current_point = *gs_.current_point + gs_.ctm.apply_linear({(*v)[4], (*v)[5]});
            return;
        }
        if (name == "arc" || name == "arcn") {
            if (auto v = pop_numbers(5, name.c_str())) {
                const double a = deg_to_rad((*v)[4]);
                const Vec2 end = gs_.ctm.apply({(*v)[0] + (*v)[2] * std::cos(a), (*v)[1] + (*v)[2] * std::sin(a)});
                if (!gs_.current_point)
                    gs_.subpath_start = gs_.ctm.apply(
                        {(*v)[0] + (*v)[2] * std::cos(deg_to_rad((*v)[3])), (*v)[1] + (*v)[2] * std::sin(deg_to_rad((*v)[3]))});
                gs_.current_point = end;
            }
            return;
        }
        if (name == "closepath") {
            gs_.current_point = gs_.subpath_start;
            return;
        }
        if (name == "newpath" || name == "stroke" || name == "fill" || name == "eofill") {
            gs_.current_point.reset();
            gs_.subpath_start.reset();
            return;
        }
        if (name == "currentpoint") {
            if (gs_.current_point) {
                const Vec2 user = gs_.ctm.inverse().apply(*gs_.current_point);
                stack_.emplace_back(user.x);
                stack_.emplace_back(user.y);
            } else {
                stack_.emplace_back(OpaqueOperand{});
                stack_.emplace_back(OpaqueOperand{});
            }
            return;
        }
        if (name == "findfont") {
            pop_any("findfont");
            stack_.emplace_back(FontOperand{1.0});
            return;
        }
        if (name == "scalefont") {
            require(2, "scalefont");
            const Operand size = pop_any("scalefont");
            const Operand font = pop_any("scalefont");
            const auto* s = std::get_if<double>(&size);
            const auto* f = std::get_if<FontOperand>(&font);
            stack_.emplace_back(FontOperand{(f ? f->size : 1.0) * (s ? *s : kDefaultFontSize)});
            return;
        }
        if (name == "makefont") {
            require(2, "makefont");
            const Operand m = pop_any("makefont");
            const Operand font = pop_any("makefont");
            const auto* arr = std::get_if<ArrayOperand>(&m);
            const auto* f = std::get_if<FontOperand>(&font);
            double factor = kDefaultFontSize;
            if (arr && arr->numeric && arr->numbers.size() == 6)
                factor = std::hypot(arr->numbers[0], arr->numbers[1]);
            stack_.emplace_back(FontOperand{(f ? f->size : 1.0) * factor});
            return;
        }
        if (name == "setfont") {
            const Operand font = pop_any("setfont");
            if (const auto* f = std::get_if<FontOperand>(&font))
                gs_.font_size = f->size;
            return;
        }
        if (name == "selectfont") {
            require(2, "selectfont");
            const Operand size = pop_any("selectfont");
            pop_any("selectfont");
            if (const auto* s = std::get_if<double>(&size))
                gs_.font_size = *s;
            else if (const auto* arr = std::get_if<ArrayOperand>(&size); arr && arr->numeric && arr->numbers.size() == 6)
                gs_.font_size = std::hypot(arr->numbers[0], arr->numbers[1]);
            return;
        }
        if (name == "show") {
            show();
            return;
        }
        if (const auto it = unsupported_show_arities().find(name); it != unsupported_show_arities().end()) {
            warn(name + " is not scanned for tags");
            pop_lenient(it->second);
            return;
        }
        if (name == "def") {
            record_alias();
            pop_lenient(2);
            return;
        }
        if (name == "load") {
            if (!stack_.empty()) {
                if (const auto* n = std::get_if<NameOperand>(&stack_.back())) {
                    ProcOperand proc{resolve(n->name)};
                    stack_.back() = proc;
                    return;
                }
            }
            pop_lenient(1);
            stack_.emplace_back(OpaqueOperand{});
            return;
        }
        if (name == "bind")
            return;
        if (name == "dup") {
            if (!stack_.empty())
                stack_.push_back(stack_.back());
            return;
        }
        if (name == "exch") {
            if (stack_.size() >= 2)
                std::swap(stack_[stack_.size() - 1], stack_[stack_.size() - 2]);
            return;
        }
        if (name == "add" || name == "sub" || name == "mul" || name == "div") {
            arithmetic(name);
            return;
        }
        if (name == "neg") {
            if (!stack_.empty())
                if (auto* d = std::get_if<double>(&stack_.back()))
                    *d = -*d;
            return;
        }
        if (name == "clear") {
            stack_.clear();
            return;
        }
        if (name == "cleartomark") {
            while (!stack_.empty() && !std::holds_alternative<MarkOperand>(stack_.back()))
                stack_.pop_back();
            pop_lenient(1);
            return;
        }
        if (name == "mark" || name == "<<") {
            stack_.emplace_back(MarkOperand{});
            return;
        }
        if (name == ">>") {
            while (!stack_.empty() && !std::holds_alternative<MarkOperand>(stack_.back()))
                stack_.pop_back();
            pop_lenient(1);
            stack_.emplace_back(OpaqueOperand{});
            return;
        }
        if (const auto it = generic_arities().find(name); it != generic_arities().end()) {
            pop_lenient(it->second.pops);
            for (int i = 0; i < it->second.pushes; ++i)
                stack_.emplace_back(OpaqueOperand{});
            return;
        }
        // Unknown operator: no stack effect.
    }

    void arithmetic(const std::string& op)
    {
        if (stack_.size() < 2) {
            pop_lenient(2);
            stack_.emplace_back(OpaqueOperand{});
            return;
        }
        const auto* a = std::get_if<double>(&stack_[stack_.size() - 2]);
        const auto* b = std::get_if<double>(&stack_.back());
        Operand result = OpaqueOperand{};
        if (a && b) {
            if (op == "add")
                result = *a + *b;
            else if (op == "sub")
                result = *a - *b;
            else if (op == "mul")
                result = *a * *b;
            else if (*b != 0.0)
                result = *a / *b;
        }
        stack_.resize(stack_.size() - 2);
        stack_.push_back(std::move(result));
    }

    // /name {op} def makes name an alias for op.
    void record_alias()
    {
        if (stack_.size() < 2)
            return;
        const auto* key = std::get_if<NameOperand>(&stack_[stack_.size() - 2]);
        const auto* proc = std::get_if<ProcOperand>(&stack_.back());
        if (!key)
            return;
        if (proc && proc->single_operator)
            aliases_[key->name] = *proc->single_operator;
        else
            aliases_.erase(key->name);
    }

    void show()
    {
        const Operand v = pop_any("show");
        const auto* s = std::get_if<StringOperand>(&v);
        if (!s) {
            warn("show with a non-string operand ignored");
            return;
        }
        if (!gs_.current_point) {
            warn("show without a current point ignored");
            return;
        }
        TagOccurrence occ;
        occ.tag = s->text;
        occ.device_position = *gs_.current_point;
        occ.rotation = gs_.ctm.x_axis_degrees();
        occ.scale = gs_.ctm.x_axis_scale();
        occ.font_size = gs_.font_size;
        occ.ctm = gs_.ctm;
        occ.string_start = s->start;
        occ.string_end = s->end;
        occ.show_start = token().start;
        occ.show_end = token().end;
        occurrences_.push_back(std::move(occ));

        const double advance = times_roman_width(s->text, gs_.font_size);
        gs_.current_point = *gs_.current_point + gs_.ctm.apply_linear({advance, 0.0});
    }

    std::string_view bytes_;
    Diagnostics* warnings_;
    std::vector<PsToken> tokens_;
    std::size_t index_ = 0;
    std::vector<Operand> stack_;
    GraphicsState gs_;
    std::vector<GraphicsState> saved_;
    std::unordered_map<std::string, std::string> aliases_;
    std::vector<TagOccurrence> occurrences_;
};

} // namespace

std::vector<TagOccurrence> scan_tags(std::string_view bytes, Diagnostics* warnings)
{
    return Scanner(bytes, warnings).run();
}

std::string rewrite_tags(std::string_view bytes, const TagMap& tag_map)
{
    if (tag_map.empty())
        return std::string(bytes);
    const auto occurrences = scan_tags(bytes);

    std::set<std::string> seen;
    std::string out;
    out.reserve(bytes.size());
    std::size_t copied = 0;
    for (const auto& occ : occurrences) {
        const auto it = tag_map.find(occ.tag);
        if (it == tag_map.end())
            continue;
        seen.insert(occ.tag);
        out.append(bytes.substr(copied, occ.string_start - copied));
        out += ps_string_literal(it->second);
        copied = occ.string_end;
    }
    out.append(bytes.substr(copied));

    std::vector<std::string> missing;
    for (const auto& [old_tag, new_tag] : tag_map)
        if (!seen.contains(old_tag))
            missing.push_back(old_tag);
    if (!missing.empty())
        throw MissingTagsError(std::move(missing));
    return out;
}

} // namespace labelforge
