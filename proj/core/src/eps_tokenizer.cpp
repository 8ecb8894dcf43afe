#include "labelforge/eps.hpp"

#include "labelforge/errors.hpp"

#include <cstdlib>

namespace labelforge {

namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\0'; }

bool is_delimiter(unsigned char c)
{
    switch (c) {
    case '(':
    case ')':
    case '<':
    case '>':
    case '[':
    case ']':
    case '{':
    case '}':
    case '/':
    case '%':
        return true;
    default:
        return false;
    }
}

bool is_regular(unsigned char c) { return !is_space(c) && !is_delimiter(c); }

int hex_value(unsigned char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

// Integer, real, or base#digits. Returns false when the text is a name.
bool parse_number(std::string_view s, double& out)
{
    if (s.empty())
        return false;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) {
        const std::string_view radix_text = s.substr(0, hash);
        const std::string_view digits = s.substr(hash + 1);
        if (radix_text.empty() || radix_text.size() > 2 || digits.empty())
            return false;
        int radix = 0;
        for (char c : radix_text) {
            if (c < '0' || c > '9')
                return false;
            radix = radix * 10 + (c - '0');
        }
        if (radix < 2 || radix > 36)
            return false;
        double v = 0;
        for (char c : digits) {
            int d = hex_value(static_cast<unsigned char>(c));
            if (c >= 'g' && c <= 'z')
                d = c - 'a' + 10;
            else if (c >= 'G' && c <= 'Z')
                d = c - 'A' + 10;
            if (d < 0 || d >= radix)
                return false;
            v = v * radix + d;
        }
        out = v;
        return true;
    }

    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-')
        ++i;
    bool digits = false;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        ++i;
        digits = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            ++i;
            digits = true;
        }
    }
    if (!digits)
        return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        bool exp_digits = false;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            ++i;
            exp_digits = true;
        }
        if (!exp_digits)
            return false;
    }
    if (i != s.size())
        return false;
    out = std::strtod(std::string(s).c_str(), nullptr);
    return true;
}

class Tokenizer {
public:
    explicit Tokenizer(std::string_view src) : src_(src) {}

    std::vector<PsToken> run()
    {
        std::vector<PsToken> tokens;
        std::vector<std::size_t> open_procs;
        while (true) {
            const std::size_t begin = pos_;
            while (pos_ < src_.size() && is_space(byte(pos_)))
                ++pos_;
            if (pos_ >= src_.size()) {
                if (begin < pos_) {
                    PsToken ws;
                    ws.kind = TokenKind::Whitespace;
                    ws.begin = begin;
                    ws.start = begin;
                    ws.end = pos_;
                    ws.text = std::string(src_.substr(begin, pos_ - begin));
                    tokens.push_back(std::move(ws));
                }
                break;
            }

            PsToken tok;
            tok.begin = begin;
            tok.start = pos_;
            const unsigned char c = byte(pos_);
            switch (c) {
            case '%':
                while (pos_ < src_.size() && byte(pos_) != '\n' && byte(pos_) != '\r')
                    ++pos_;
                tok.kind = TokenKind::Comment;
                break;
            case '(':
                tok.kind = TokenKind::String;
                tok.decoded = read_string();
                break;
            case ')':
                throw ParseError(pos_, "unbalanced ')' outside a string");
            case '<':
                if (peek(1) == '<') {
                    pos_ += 2;
                    tok.kind = TokenKind::Name;
                } else {
                    tok.kind = TokenKind::String;
                    tok.decoded = peek(1) == '~' ? read_ascii85() : read_hex();
                }
                break;
            case '>':
                if (peek(1) != '>')
                    throw ParseError(pos_, "unexpected '>'");
                pos_ += 2;
                tok.kind = TokenKind::Name;
                break;
            case '[':
                ++pos_;
                tok.kind = TokenKind::ArrayOpen;
                break;
            case ']':
                ++pos_;
                tok.kind = TokenKind::ArrayClose;
                break;
            case '{':
                open_procs.push_back(pos_);
                ++pos_;
                tok.kind = TokenKind::ProcOpen;
                break;
            case '}':
                if (open_procs.empty())
                    throw ParseError(pos_, "unbalanced '}' without an open procedure");
                open_procs.pop_back();
                ++pos_;
                tok.kind = TokenKind::ProcClose;
                break;
            case '/': {
                ++pos_;
                if (pos_ < src_.size() && byte(pos_) == '/')
                    ++pos_;
                const std::size_t name_start = pos_;
                while (pos_ < src_.size() && is_regular(byte(pos_)))
                    ++pos_;
                tok.kind = TokenKind::LiteralName;
                tok.text = std::string(src_.substr(name_start, pos_ - name_start));
                break;
            }
            default: {
                while (pos_ < src_.size() && is_regular(byte(pos_)))
                    ++pos_;
                const std::string_view text = src_.substr(tok.start, pos_ - tok.start);
                tok.kind = parse_number(text, tok.number) ? TokenKind::Number : TokenKind::Name;
                break;
            }
            }
            tok.end = pos_;
            if (tok.kind != TokenKind::LiteralName)
                tok.text = std::string(src_.substr(tok.start, tok.end - tok.start));
            tokens.push_back(std::move(tok));
        }
        if (!open_procs.empty())
            throw ParseError(open_procs.back(), "unterminated procedure");
        return tokens;
    }

private:
    unsigned char byte(std::size_t i) const { return static_cast<unsigned char>(src_[i]); }
    int peek(std::size_t ahead) const { return pos_ + ahead < src_.size() ? byte(pos_ + ahead) : -1; }

    std::string read_string()
    {
        const std::size_t open = pos_++;
        std::string out;
        int depth = 1;
        while (pos_ < src_.size()) {
            const unsigned char c = byte(pos_++);
            if (c == '\\') {
                if (pos_ >= src_.size())
                    break;
                const unsigned char e = byte(pos_++);
                switch (e) {
                case 'n':
                    out += '\n';
                    break;
                case 'r':
                    out += '\r';
                    break;
                case 't':
                    out += '\t';
                    break;
                case 'b':
                    out += '\b';
                    break;
                case 'f':
                    out += '\f';
                    break;
                case '\r':
                    if (pos_ < src_.size() && byte(pos_) == '\n')
                        ++pos_;
                    break;
                case '\n':
                    break;
                default:
                    if (e >= '0' && e <= '7') {
                        int v = e - '0';
                        for (int k = 0; k < 2 && pos_ < src_.size() && byte(pos_) >= '0' && byte(pos_) <= '7'; ++k)
                            v = v * 8 + (byte(pos_++) - '0');
                        out += static_cast<char>(v & 0xff);
                    } else {
                        out += static_cast<char>(e);
                    }
                }
                continue;
            }
            if (c == '(') {
                ++depth;
            } else if (c == ')') {
                if (--depth == 0)
                    return out;
            }
            out += static_cast<char>(c);
        }
        throw ParseError(open, "unterminated string");
    }

    std::string read_hex()
    {
        const std::size_t open = pos_++;
        std::string out;
        int pending = -1;
        while (pos_ < src_.size()) {
            const unsigned char c = byte(pos_++);
            if (c == '>') {
                if (pending >= 0)
                    out += static_cast<char>(pending << 4);
                return out;
            }
            if (is_space(c))
                continue;
            const int v = hex_value(c);
            if (v < 0)
                throw ParseError(pos_ - 1, "invalid character in hex string");
            if (pending < 0) {
                pending = v;
            } else {
                out += static_cast<char>((pending << 4) | v);
                pending = -1;
            }
        }
        throw ParseError(open, "unterminated hex string");
    }

    // ASCII85 payload is kept undecoded; nothing we scan for lives there.
    std::string read_ascii85()
    {
        const std::size_t open = pos_;
        pos_ += 2;
        const std::size_t close = src_.find("~>", pos_);
        if (close == std::string_view::npos)
            throw ParseError(open, "unterminated ascii85 string");
        std::string out(src_.substr(pos_, close - pos_));
        pos_ = close + 2;
        return out;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace

std::vector<PsToken> tokenize(std::string_view bytes) { return Tokenizer(bytes).run(); }

} // namespace labelforge
