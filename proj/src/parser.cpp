#include "voaforge/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace voaforge {

namespace {

enum class Tok {
    plus,
    minus,
    colon,
    lparen,
    rparen,
    lbracket,
    rbracket,
    slash,
    deriv,    // "d^"
    number,   // natural
    ident,
    end,
};

struct Token {
    Tok kind;
    std::string text;
    int line = 1;
    int column = 1;
};

const char* tok_name(Tok k) {
    switch (k) {
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::colon: return "':'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::lbracket: return "'['";
        case Tok::rbracket: return "']'";
        case Tok::slash: return "'/'";
        case Tok::deriv: return "'d^'";
        case Tok::number: return "number";
        case Tok::ident: return "identifier";
        default: return "end of input";
    }
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        switch (c) {
            case '+': t.kind = Tok::plus; advance(1); break;
            case '-': t.kind = Tok::minus; advance(1); break;
            case ':': t.kind = Tok::colon; advance(1); break;
            case '(': t.kind = Tok::lparen; advance(1); break;
            case ')': t.kind = Tok::rparen; advance(1); break;
            case '[': t.kind = Tok::lbracket; advance(1); break;
            case ']': t.kind = Tok::rbracket; advance(1); break;
            case '/': t.kind = Tok::slash; advance(1); break;
            default: {
                if (c == 'd' && i + 1 < text.size() && text[i + 1] == '^') {
                    t.kind = Tok::deriv;
                    advance(2);
                } else if (std::isdigit(static_cast<unsigned char>(c))) {
                    size_t j = i;
                    while (j < text.size() &&
                           std::isdigit(static_cast<unsigned char>(text[j])))
                        ++j;
                    t.kind = Tok::number;
                    t.text = text.substr(i, j - i);
                    advance(j - i);
                } else if (ident_char(c)) {
                    size_t j = i;
                    while (j < text.size() && ident_char(text[j])) ++j;
                    t.kind = Tok::ident;
                    t.text = text.substr(i, j - i);
                    advance(j - i);
                } else {
                    throw ParseError(
                        std::string("unexpected character '") + c + "'", line,
                        col);
                }
            }
        }
        out.push_back(std::move(t));
    }
    Token e;
    e.kind = Tok::end;
    e.line = line;
    e.column = col;
    out.push_back(e);
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const std::vector<std::string>& labels)
        : toks_(std::move(toks)), labels_(labels) {}

    Expr parse() {
        Expr e = expr();
        expect(Tok::end);
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError("expected " + expected + ", found " +
                             tok_name(t.kind) +
                             (t.text.empty() ? "" : " '" + t.text + "'"),
                         t.line, t.column);
    }

    Token expect(Tok k) {
        if (!at(k)) fail(tok_name(k));
        return take();
    }

    Expr expr() {
        bool neg = false;
        if (at(Tok::minus)) {
            take();
            neg = true;
        }
        Expr acc = term();
        if (neg) acc = negate(acc);
        while (at(Tok::plus) || at(Tok::minus)) {
            const bool minus = take().kind == Tok::minus;
            Expr t = term();
            acc = minus ? sub(acc, t) : add(acc, t);
        }
        return acc;
    }

    Expr term() {
        Rat coeff(1);
        if (at(Tok::number)) {
            std::string num = take().text;
            if (at(Tok::slash)) {
                take();
                num += "/" + expect(Tok::number).text;
            }
            coeff = Rat::parse(num);
            // A bare rational is a multiple of the vacuum.
            if (!starts_factor()) return scale(expr_one(), coeff);
        }
        return scale(factor(), coeff);
    }

    bool starts_factor() const {
        switch (peek().kind) {
            case Tok::colon:
            case Tok::deriv:
            case Tok::ident:
            case Tok::lparen:
            case Tok::number:
                return true;
            default:
                return false;
        }
    }

    Expr factor() {
        if (at(Tok::colon)) {
            take();
            std::vector<Expr> fs;
            while (true) {
                if (at(Tok::colon) && fs.size() >= 2) {
                    // Ambiguous: closing colon or nested Wick factor.  Try
                    // the nested reading, fall back to closing.
                    const size_t saved = pos_;
                    try {
                        fs.push_back(factor());
                        continue;
                    } catch (const ParseError&) {
                        pos_ = saved;
                        break;
                    }
                }
                if (at(Tok::colon) || starts_factor()) {
                    fs.push_back(factor());
                    continue;
                }
                break;
            }
            if (fs.size() < 2) fail("at least two Wick factors");
            expect(Tok::colon);
            return wick_all(fs);
        }
        if (at(Tok::deriv)) {
            take();
            const int k = natural();
            return derivative(factor(), k);
        }
        if (at(Tok::lparen)) {
            take();
            Expr e = expr();
            expect(Tok::rparen);
            return e;
        }
        if (at(Tok::number)) {
            const Token t = peek();
            if (t.text == "1") {
                take();
                return expr_one();
            }
            fail("a factor");
        }
        if (at(Tok::ident)) return gen();
        fail("a factor");
    }

    int natural() {
        const Token t = expect(Tok::number);
        try {
            return std::stoi(t.text);
        } catch (const std::exception&) {
            throw ParseError("number out of range '" + t.text + "'", t.line,
                             t.column);
        }
    }

    Expr gen() {
        const Token t = expect(Tok::ident);
        Species s;
        if (t.text == "b") s = Species::b;
        else if (t.text == "c") s = Species::c;
        else if (t.text == "beta") s = Species::beta;
        else if (t.text == "gamma") s = Species::gamma;
        else
            throw ParseError("unknown generator species '" + t.text +
                                 "' (expected b, c, beta or gamma)",
                             t.line, t.column);
        expect(Tok::lbracket);
        const Token lab = peek();
        std::string label;
        if (at(Tok::ident) || at(Tok::number)) label = take().text;
        else fail("a generator label");
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end())
            throw ParseError("unknown generator label '" + label + "'",
                             lab.line, lab.column);
        expect(Tok::rbracket);
        return expr_letter(
            s, static_cast<int>(std::distance(labels_.begin(), it)));
    }

    std::vector<Token> toks_;
    const std::vector<std::string>& labels_;
    size_t pos_ = 0;
};

const std::string& label_of(int index, const std::vector<std::string>& labels) {
    if (index < 0 || static_cast<size_t>(index) >= labels.size())
        throw std::invalid_argument("format_expr: letter index " +
                                    std::to_string(index) +
                                    " has no basis label");
    return labels[static_cast<size_t>(index)];
}

const char* species_name(Species s) {
    switch (s) {
        case Species::b: return "b";
        case Species::c: return "c";
        case Species::beta: return "beta";
        default: return "gamma";
    }
}

void format_letter(std::ostream& os, LetterKey l,
                   const std::vector<std::string>& labels) {
    if (letter_deriv(l) > 0) os << "d^" << letter_deriv(l) << " ";
    os << species_name(letter_species(l)) << "["
       << label_of(letter_index(l), labels) << "]";
}

}  // namespace

Expr parse_expr(const std::string& text,
                const std::vector<std::string>& labels) {
    return Parser(tokenize(text), labels).parse();
}

std::string format_expr(const Expr& e,
                        const std::vector<std::string>& labels) {
    if (e.empty()) return "0 1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e) {
        const Rat mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != Rat(1) || m.empty()) os << mag.str() << " ";
        if (m.empty()) {
            os << "1";
            continue;
        }
        if (m.size() > 1) os << ":";
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) os << " ";
            format_letter(os, m[i], labels);
        }
        if (m.size() > 1) os << ":";
    }
    return os.str();
}

std::string expr_to_json(const Expr& e,
                         const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "{\"terms\":[";
    bool first_term = true;
    for (const auto& [m, c] : e) {
        if (!first_term) os << ",";
        first_term = false;
        os << "{\"coeff\":\"" << c.str() << "\",\"letters\":[";
        bool first_letter = true;
        for (LetterKey l : m) {
            if (!first_letter) os << ",";
            first_letter = false;
            os << "[\"" << species_name(letter_species(l)) << "\",\""
               << label_of(letter_index(l), labels) << "\","
               << letter_deriv(l) << "]";
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

}  // namespace voaforge
