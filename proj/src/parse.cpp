#include "mixcurve/parse.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <optional>
#include <vector>

#include "mixcurve/errors.hpp"

namespace mixcurve {

namespace {

// Exponents beyond this are rejected; the engines assume desk-scale degrees.
constexpr long kMaxExponent = 256;

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string_view text;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-'))
                    ++j;
                if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                        ++j;
                    i = j;
                }
            }
            if (s.substr(start, i - start) == ".")
                throw ParseError("malformed number", start);
            out.push_back({Tok::number, start, s.substr(start, i - start)});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i])))
                ++i;
            out.push_back({Tok::ident, start, s.substr(start, i - start)});
            continue;
        }
        Tok kind;
        switch (ch) {
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '*': kind = Tok::star; break;
        case '^': kind = Tok::caret; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        default:
            throw ParseError(std::string("unexpected character '") + ch + "'", start);
        }
        out.push_back({kind, start, s.substr(start, 1)});
        ++i;
    }
    out.push_back({Tok::end, s.size(), {}});
    return out;
}

// Variables are parsed into a two-variable polynomial and narrowed at the end.
class Parser {
public:
    Parser(std::string_view text, VariableFamily family) : toks_(tokenize(text)), family_(family) {}

    MixedPoly run() {
        MixedPoly p = expr();
        if (peek().kind != Tok::end)
            throw ParseError("unexpected '" + std::string(peek().text) + "'", peek().pos);
        if (used_ == VariableFamily::pair || family_ == VariableFamily::pair)
            return p;
        return restrict_variable(p, 1, 0.0);
    }

private:
    const Token &peek() const { return toks_[idx_]; }
    const Token &next() { return toks_[idx_++]; }

    void expect(Tok kind, const char *what) {
        if (peek().kind != kind)
            throw ParseError(std::string("expected ") + what, peek().pos);
        ++idx_;
    }

    bool starts_base(const Token &t) const {
        return t.kind == Tok::number || t.kind == Tok::ident || t.kind == Tok::lparen;
    }

    MixedPoly expr() {
        MixedPoly acc(2);
        bool negate = false;
        if (peek().kind == Tok::minus) {
            next();
            negate = true;
        }
        MixedPoly first = term();
        acc = negate ? -first : first;
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool minus = next().kind == Tok::minus;
            MixedPoly t = term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    MixedPoly term() {
        MixedPoly acc = factor();
        while (true) {
            if (peek().kind == Tok::star) {
                next();
                acc *= factor();
            } else if (starts_base(peek())) {
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    MixedPoly factor() {
        if (peek().kind == Tok::minus) {
            next();
            return -factor();
        }
        MixedPoly b = base();
        if (peek().kind == Tok::caret) {
            next();
            const Token &t = peek();
            if (t.kind == Tok::minus)
                throw ParseError("negative exponent", t.pos);
            if (t.kind != Tok::number)
                throw ParseError("expected unsigned integer exponent", t.pos);
            if (!std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("exponent must be an unsigned integer", t.pos);
            long e = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e);
            if (ec != std::errc() || e > kMaxExponent)
                throw ParseError("exponent too large", t.pos);
            next();
            if (peek().kind == Tok::caret)
                throw ParseError("chained exponent", peek().pos);
            b = pow(b, static_cast<int>(e));
        }
        return b;
    }

    void use_family(VariableFamily f, std::size_t pos) {
        if (family_ != VariableFamily::automatic && family_ != f)
            throw ParseError(f == VariableFamily::single ? "variable u not allowed here (expected z1, z2)"
                                                         : "variables z1, z2 not allowed here (expected u)",
                             pos);
        if (used_ != VariableFamily::automatic && used_ != f)
            throw ParseError("mixing u with z1/z2 in one expression", pos);
        used_ = f;
    }

    MixedPoly variable(std::string_view name, bool conj, std::size_t pos) {
        int var = -1;
        if (name == "u") {
            use_family(VariableFamily::single, pos);
            var = 0;
        } else if (name == "z1") {
            use_family(VariableFamily::pair, pos);
            var = 0;
        } else if (name == "z2") {
            use_family(VariableFamily::pair, pos);
            var = 1;
        } else {
            throw ParseError("unknown variable '" + std::string(name) + "'", pos);
        }
        return conj ? MixedPoly::conj_variable(var, 2) : MixedPoly::variable(var, 2);
    }

    MixedPoly base() {
        const Token t = next();
        switch (t.kind) {
        case Tok::number: {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(v))
                throw ParseError("invalid number '" + std::string(t.text) + "'", t.pos);
            return MixedPoly::constant(v, 2);
        }
        case Tok::ident:
            if (t.text == "i")
                return MixedPoly::constant(Complex(0.0, 1.0), 2);
            if (t.text == "conj") {
                expect(Tok::lparen, "'(' after conj");
                const Token v = next();
                if (v.kind != Tok::ident)
                    throw ParseError("conj() takes a variable name", v.pos);
                MixedPoly out = variable(v.text, true, v.pos);
                expect(Tok::rparen, "')'");
                return out;
            }
            return variable(t.text, false, t.pos);
        case Tok::lparen: {
            MixedPoly inner = expr();
            expect(Tok::rparen, "')'");
            return inner;
        }
        case Tok::end:
            throw ParseError("unexpected end of input", t.pos);
        default:
            throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
        }
    }

    std::vector<Token> toks_;
    std::size_t idx_ = 0;
    VariableFamily family_;
    VariableFamily used_ = VariableFamily::automatic;
};

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string monomial_text(const Monomial &m, int nvars) {
    static constexpr const char *kOne[2] = {"u", "conj(u)"};
    static constexpr const char *kTwo[4] = {"z1", "conj(z1)", "z2", "conj(z2)"};
    std::string out;
    for (int k = 0; k < 2 * nvars; ++k) {
        const int e = m.exps[k];
        if (e == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += nvars == 1 ? kOne[k] : kTwo[k];
        if (e != 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

// Returns (negative, body) where body never starts with '-' unless it is inside parentheses.
std::pair<bool, std::string> term_text(Complex c, const std::string &mono) {
    const double re = c.real();
    const double im = c.imag();
    auto join = [&](std::string coeff) {
        if (mono.empty())
            return coeff;
        return coeff + "*" + mono;
    };
    if (im == 0.0) {
        const bool neg = re < 0.0;
        const double a = std::abs(re);
        if (a == 1.0 && !mono.empty())
            return {neg, mono};
        return {neg, join(format_double(a))};
    }
    if (re == 0.0) {
        const bool neg = im < 0.0;
        const double b = std::abs(im);
        std::string coeff = b == 1.0 ? "i" : format_double(b) + "*i";
        return {neg, join(coeff)};
    }
    std::string coeff = "(" + format_double(re) + (im < 0.0 ? " - " : " + ");
    const double b = std::abs(im);
    coeff += b == 1.0 ? "i" : format_double(b) + "*i";
    coeff += ")";
    return {false, join(coeff)};
}

}  // namespace

MixedPoly parse(std::string_view text, VariableFamily family) {
    return Parser(text, family).run();
}

std::string print(const MixedPoly &f) {
    if (f.is_zero())
        return "0";
    std::vector<std::pair<Monomial, Complex>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) {
        const Monomial &x = a.first;
        const Monomial &y = b.first;
        const auto kx = std::array{x.degree(), x.exps[0], x.exps[2], x.exps[1], x.exps[3]};
        const auto ky = std::array{y.degree(), y.exps[0], y.exps[2], y.exps[1], y.exps[3]};
        return kx > ky;
    });
    std::string out;
    bool first = true;
    for (const auto &[m, c] : terms) {
        auto [neg, body] = term_text(c, monomial_text(m, f.nvars()));
        if (first)
            out += neg ? "-" + body : body;
        else
            out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

std::string_view grammar_help() {
    return "polynomial grammar:\n"
           "  expr   := ['-'] term (('+'|'-') term)*\n"
           "  term   := factor ('*'? factor)*\n"
           "  factor := '-' factor | base ('^' uint)?\n"
           "  base   := number | 'i' | 'u' | 'conj(u)' | 'z1' | 'z2' | 'conj(z1)' | 'conj(z2)' | '(' expr ')'\n"
           "  one-variable input uses u, two-variable input uses z1 and z2 (never both)\n"
           "  example: \"u^2*conj(u)*(u - 2*conj(u)) + 1\"\n";
}

}  // namespace mixcurve
