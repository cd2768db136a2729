#include <cctype>
#include <cstdlib>
#include <limits>

#include "sigma/expr.hpp"

namespace sigma::expr {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind = Tok::end;
    std::size_t offset = 0;
    std::string_view text;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + std::string(t.text) + "'";
}

// Decimal literal as an exact rational when numerator and denominator fit.
Number literal_value(std::string_view text) {
    std::string mantissa;
    std::int64_t scale = 0;
    std::int64_t exponent = 0;
    std::size_t i = 0;
    bool seen_point = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        if (text[i] == '.') {
            seen_point = true;
            continue;
        }
        mantissa.push_back(text[i]);
        if (seen_point) ++scale;
    }
    if (i < text.size()) exponent = std::strtoll(std::string(text.substr(i + 1)).c_str(), nullptr, 10);

    const double as_double = std::strtod(std::string(text).c_str(), nullptr);
    while (mantissa.size() > 1 && mantissa.front() == '0') mantissa.erase(mantissa.begin());
    const std::int64_t shift = exponent - scale;
    if (mantissa.size() > 18 || shift > 18 || shift < -18) return Number::real(as_double);

    std::int64_t num = std::strtoll(mantissa.c_str(), nullptr, 10);
    std::int64_t den = 1;
    for (std::int64_t k = 0; k < (shift < 0 ? -shift : shift); ++k) {
        if (shift < 0) {
            den *= 10;
        } else {
            if (num > std::numeric_limits<std::int64_t>::max() / 10) return Number::real(as_double);
            num *= 10;
        }
    }
    return Number::rational(num, den);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { advance(); }

    Expr parse_all() {
        Expr e = parse_expr();
        if (cur_.kind != Tok::end) fail("unexpected " + describe(cur_));
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("syntax error at offset " + std::to_string(cur_.offset) + ": " + msg, cur_.offset);
    }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            cur_ = {Tok::end, start, {}};
            return;
        }
        const char c = text_[pos_];
        auto single = [&](Tok k) {
            ++pos_;
            cur_ = {k, start, text_.substr(start, 1)};
        };
        switch (c) {
            case '+': return single(Tok::plus);
            case '-': return single(Tok::minus);
            case '*': return single(Tok::star);
            case '/': return single(Tok::slash);
            case '^': return single(Tok::caret);
            case '(': return single(Tok::lparen);
            case ')': return single(Tok::rparen);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            bool digits = false;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, digits = true;
            if (pos_ < text_.size() && text_[pos_] == '.') {
                ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, digits = true;
            }
            if (!digits) {
                cur_ = {Tok::number, start, text_.substr(start, 1)};
                fail("malformed number");
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t q = pos_ + 1;
                if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
                if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
                    while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
                    pos_ = q;
                }
            }
            cur_ = {Tok::number, start, text_.substr(start, pos_ - start)};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            cur_ = {Tok::ident, start, text_.substr(start, pos_ - start)};
            return;
        }
        cur_ = {Tok::end, start, text_.substr(start, 1)};
        throw ParseError("syntax error at offset " + std::to_string(start) + ": unexpected character '" +
                             std::string(1, c) + "'",
                         start);
    }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) fail(std::string("expected ") + what + ", found " + describe(cur_));
        advance();
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            const bool minus = cur_.kind == Tok::minus;
            advance();
            Expr rhs = parse_term();
            lhs = minus ? lhs - rhs : lhs + rhs;
        }
        return lhs;
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
            const bool divide = cur_.kind == Tok::slash;
            advance();
            Expr rhs = parse_factor();
            lhs = divide ? lhs / rhs : lhs * rhs;
        }
        return lhs;
    }

    Expr parse_factor() {
        if (cur_.kind == Tok::minus) {
            advance();
            return -parse_factor();
        }
        Expr base = parse_base();
        if (cur_.kind == Tok::caret) {
            advance();
            return pow(base, parse_factor());
        }
        return base;
    }

    Expr parse_base() {
        const Token t = cur_;
        switch (t.kind) {
            case Tok::number:
                advance();
                return Expr(literal_value(t.text));
            case Tok::lparen: {
                advance();
                Expr inner = parse_expr();
                expect(Tok::rparen, "')'");
                return inner;
            }
            case Tok::ident: {
                if (t.text == "x") return advance(), x;
                if (t.text == "y") return advance(), y;
                if (t.text == "p") return advance(), p;
                static constexpr std::pair<std::string_view, Func> kFuncs[] = {
                    {"sin", Func::sin}, {"cos", Func::cos}, {"exp", Func::exp}, {"ln", Func::ln}, {"sqrt", Func::sqrt}};
                for (const auto& [fname, f] : kFuncs) {
                    if (t.text == fname) {
                        advance();
                        expect(Tok::lparen, "'(' after function name");
                        Expr arg = parse_expr();
                        expect(Tok::rparen, "')'");
                        return apply(f, arg);
                    }
                }
                throw ParseError("unknown identifier '" + std::string(t.text) + "' at offset " + std::to_string(t.offset),
                                 t.offset);
            }
            default: fail("expected an operand, found " + describe(t));
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token cur_;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace sigma::expr
