#pragma once

// Recursive-descent parser for rational-function expressions in a single
// named variable: integers, rationals a/b, decimals, + - * / ^ and
// parentheses. '^' takes nonnegative integer exponents and binds tighter
// than unary minus. Implicit multiplication is a syntax error.

#include <cctype>
#include <string>
#include <vector>

#include <json.hpp>

#include "curveproj/curve.hpp"
#include "curveproj/ratfun.hpp"

namespace curveproj {

class division_by_zero_poly_error : public error {
public:
    explicit division_by_zero_poly_error(std::size_t position)
        : error("DivisionByZeroPolynomial",
                "denominator sub-expression is identically zero (at position " +
                    std::to_string(position) + ")") {}
};

namespace detail {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                if (i >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i])))
                    throw syntax_error(i, "expected digits after decimal point");
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            }
            out.push_back({Token::Number, src.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            out.push_back({Token::Ident, src.substr(start, i - start), start});
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '/': k = Token::Slash; break;
            case '^': k = Token::Caret; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            default: throw syntax_error(i, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), start});
        ++i;
    }
    out.push_back({Token::End, "", src.size()});
    return out;
}

class ExprParser {
public:
    ExprParser(std::vector<Token> toks, std::string variable)
        : toks_(std::move(toks)), var_(std::move(variable)) {}

    RatFun parse() {
        RatFun r = expr();
        if (peek().kind != Token::End) throw syntax_error(peek().pos, "trailing input");
        return r;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    bool accept(Token::Kind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFun expr() {
        RatFun acc = term();
        while (true) {
            if (accept(Token::Plus))
                acc += term();
            else if (accept(Token::Minus))
                acc -= term();
            else
                return acc;
        }
    }

    RatFun term() {
        RatFun acc = factor();
        while (true) {
            if (accept(Token::Star)) {
                acc *= factor();
            } else if (peek().kind == Token::Slash) {
                std::size_t at = take().pos;
                RatFun d = factor();
                if (d.is_zero()) throw division_by_zero_poly_error(at);
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RatFun factor() {
        if (accept(Token::Minus)) return -factor();
        return power();
    }

    RatFun power() {
        RatFun base = atom();
        if (!accept(Token::Caret)) return base;
        const Token& e = peek();
        if (e.kind != Token::Number || e.text.find('.') != std::string::npos)
            throw syntax_error(e.pos, "exponent must be a nonnegative integer");
        take();
        unsigned long exp = std::stoul(e.text);
        RatFun r(Rat(1));
        for (unsigned long k = 0; k < exp; ++k) r *= base;
        return r;
    }

    RatFun atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Number: {
                take();
                return RatFun(Rat::from_string(t.text));
            }
            case Token::Ident: {
                take();
                if (t.text != var_) throw unknown_symbol_error(t.pos, t.text);
                return RatFun::variable();
            }
            case Token::LParen: {
                take();
                RatFun inner = expr();
                if (!accept(Token::RParen)) throw syntax_error(peek().pos, "expected ')'");
                return inner;
            }
            default:
                throw syntax_error(t.pos, "expected a number, the variable, or '('");
        }
    }

    std::vector<Token> toks_;
    std::string var_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline RatFun parse_ratfun_expr(const std::string& src, const std::string& variable) {
    return detail::ExprParser(detail::tokenize(src), variable).parse();
}

// Textual curve definition as stored in curve files.
struct CurveSpec {
    std::string variable;
    std::string x, y, z;
    std::string label;
};

inline CurveSpec parse_curve_spec(const nlohmann::json& doc) {
    CurveSpec s;
    auto fetch = [&](const char* key, std::string& slot, bool required) {
        if (!doc.contains(key)) {
            if (required) throw missing_field_error(std::string("missing field '") + key + "'");
            return;
        }
        if (!doc.at(key).is_string())
            throw missing_field_error(std::string("field '") + key + "' must be a string");
        slot = doc.at(key).get<std::string>();
    };
    fetch("variable", s.variable, true);
    fetch("x", s.x, true);
    fetch("y", s.y, true);
    fetch("z", s.z, true);
    fetch("label", s.label, false);
    return s;
}

inline CurveParam to_curve(const CurveSpec& s) {
    return CurveParam(parse_ratfun_expr(s.x, s.variable), parse_ratfun_expr(s.y, s.variable),
                      parse_ratfun_expr(s.z, s.variable));
}

inline CurveParam parse_curve(const nlohmann::json& doc) { return to_curve(parse_curve_spec(doc)); }

struct CurvePair {
    CurveSpec spec1, spec2;
    CurveParam c1, c2;
};

inline CurvePair parse_pair(const nlohmann::json& doc) {
    if (!doc.contains("C1")) throw missing_field_error("missing field 'C1'");
    if (!doc.contains("C2")) throw missing_field_error("missing field 'C2'");
    CurveSpec s1 = parse_curve_spec(doc.at("C1"));
    CurveSpec s2 = parse_curve_spec(doc.at("C2"));
    return {s1, s2, to_curve(s1), to_curve(s2)};
}

} // namespace curveproj
