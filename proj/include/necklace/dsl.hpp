#pragma once

// Text form of potentials:
//
//   var alpha : deg 1 dual beta;
//   var beta : deg -1 dual alpha;
//   var x1 : deg 0 dual xi1;
//   var xi1 : deg 0 dual x1;
//   cyc(alpha*alpha*beta) + cyc(alpha*x1*xi1) - cyc(alpha*xi1*x1)
//
// decl   := "var" NAME ":" "deg" INT ["@" V "->" V] ["dual" NAME] ";"
// term   := [SIGN] [RATIONAL "*"] "cyc(" [NAME ("*" NAME)*] ")"
// series := "0" | term (SIGN term)*      (optionally followed by ";")
//
// Variables without endpoints live on vertex "0". "#" starts a comment. On
// input the Greek letters alpha, beta, xi, subscript digits and U+2212 are
// accepted as aliases for their ASCII spellings.

#include "necklace/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace necklace {

struct PotentialDoc {
    AlphabetPtr alphabet;
    CyclicSeries series;

    bool operator==(const PotentialDoc& o) const { return same_alphabet(alphabet, o.alphabet) && series == o.series; }
};

struct Diagnostic {
    int line = 0;
    int col = 0;
    std::string code;
    std::string message;
};

struct ParseResult {
    std::optional<PotentialDoc> doc;
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept { return doc.has_value(); }
};

inline constexpr std::string_view default_vertex = "0";

namespace dsl_detail {

enum class Tok { ident, integer, colon, semicolon, at, arrow, plus, minus, star, slash, lparen, rparen, end, bad };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.col = col_;
            if (pos_ >= src_.size()) {
                t.kind = Tok::end;
                out.push_back(t);
                return out;
            }
            const unsigned char c = static_cast<unsigned char>(src_[pos_]);
            if (is_ident_start(c) || alias_at(pos_)) {
                t.kind = Tok::ident;
                while (pos_ < src_.size()) {
                    const unsigned char d = static_cast<unsigned char>(src_[pos_]);
                    if (is_ident_start(d) || (d >= '0' && d <= '9')) {
                        t.text += static_cast<char>(d);
                        advance(1);
                    } else if (auto a = alias_at(pos_)) {
                        t.text += a->second;
                        advance(a->first);
                    } else {
                        break;
                    }
                }
            } else if (c >= '0' && c <= '9') {
                t.kind = Tok::integer;
                while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                    t.text += src_[pos_];
                    advance(1);
                }
                if (pos_ + 1 < src_.size() && src_[pos_] == '.' && src_[pos_ + 1] >= '0' && src_[pos_ + 1] <= '9') {
                    t.kind = Tok::bad; // decimal literal
                    t.text += '.';
                    advance(1);
                    while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                        t.text += src_[pos_];
                        advance(1);
                    }
                }
                // vertex names like 1a are identifiers
                while (pos_ < src_.size() && is_ident_start(static_cast<unsigned char>(src_[pos_]))) {
                    t.kind = Tok::ident;
                    t.text += src_[pos_];
                    advance(1);
                }
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                t.kind = Tok::arrow;
                t.text = "->";
                advance(2);
            } else if (minus_alias_at(pos_)) {
                t.kind = Tok::minus;
                t.text = "-";
                advance(3);
            } else {
                t.text = std::string(1, static_cast<char>(c));
                switch (c) {
                case ':': t.kind = Tok::colon; break;
                case ';': t.kind = Tok::semicolon; break;
                case '@': t.kind = Tok::at; break;
                case '+': t.kind = Tok::plus; break;
                case '-': t.kind = Tok::minus; break;
                case '*': t.kind = Tok::star; break;
                case '/': t.kind = Tok::slash; break;
                case '(': t.kind = Tok::lparen; break;
                case ')': t.kind = Tok::rparen; break;
                default: t.kind = Tok::bad; break;
                }
                advance(1);
            }
            out.push_back(std::move(t));
        }
    }

private:
    static bool is_ident_start(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    // (byte length, replacement) for a recognised UTF-8 alias at position p
    std::optional<std::pair<std::size_t, std::string>> alias_at(std::size_t p) const
    {
        auto starts = [&](std::string_view s) { return src_.substr(p, s.size()) == s; };
        if (starts("\xCE\xB1"))
            return std::pair<std::size_t, std::string>{2, "alpha"};
        if (starts("\xCE\xB2"))
            return std::pair<std::size_t, std::string>{2, "beta"};
        if (starts("\xCE\xBE"))
            return std::pair<std::size_t, std::string>{2, "xi"};
        if (p + 2 < src_.size() && starts("\xE2\x82")) {
            const unsigned char d = static_cast<unsigned char>(src_[p + 2]);
            if (d >= 0x80 && d <= 0x89)
                return std::pair<std::size_t, std::string>{3, std::string(1, static_cast<char>('0' + (d - 0x80)))};
        }
        return std::nullopt;
    }

    bool minus_alias_at(std::size_t p) const { return src_.substr(p, 3) == "\xE2\x88\x92"; }

    void advance(std::size_t n)
    {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct ParseFailure {
    Diagnostic diag;
};

struct Decl {
    std::string name;
    int degree = 0;
    std::optional<std::pair<std::string, std::string>> endpoints;
    std::optional<std::string> dual;
    Token at;
};

struct RawTerm {
    Scalar coeff;
    std::vector<std::pair<std::string, Token>> letters;
    Token at;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    PotentialDoc parse()
    {
        while (peek().kind == Tok::ident && peek().text == "var")
            decls_.push_back(decl());
        auto terms = series();
        if (peek().kind == Tok::semicolon)
            next();
        if (peek().kind != Tok::end)
            fail(peek(), "trailing_input", "unexpected '" + peek().text + "' after series");
        return build(terms);
    }

private:
    [[noreturn]] static void fail(const Token& t, std::string code, std::string msg)
    {
        throw ParseFailure{{t.line, t.col, std::move(code), std::move(msg)}};
    }

    const Token& peek() const { return toks_[std::min(pos_, toks_.size() - 1)]; }
    Token next()
    {
        Token t = peek();
        if (pos_ < toks_.size() - 1)
            ++pos_;
        return t;
    }

    Token expect(Tok kind, const char* what)
    {
        if (peek().kind != kind)
            fail(peek(), "syntax", std::string("expected ") + what + ", found '" + peek().text + "'");
        return next();
    }

    void expect_keyword(const char* kw)
    {
        if (peek().kind != Tok::ident || peek().text != kw)
            fail(peek(), "syntax", std::string("expected '") + kw + "', found '" + peek().text + "'");
        next();
    }

    std::string vertex()
    {
        if (peek().kind == Tok::ident || peek().kind == Tok::integer)
            return next().text;
        fail(peek(), "syntax", "expected vertex name, found '" + peek().text + "'");
    }

    Decl decl()
    {
        Decl d;
        d.at = next(); // "var"
        d.name = expect(Tok::ident, "variable name").text;
        expect(Tok::colon, "':'");
        expect_keyword("deg");
        bool negative = false;
        if (peek().kind == Tok::minus || peek().kind == Tok::plus)
            negative = next().kind == Tok::minus;
        Token num = expect(Tok::integer, "integer degree");
        if (num.text.size() > 4)
            fail(num, "bad_degree", "degree out of range");
        d.degree = std::stoi(num.text) * (negative ? -1 : 1);
        if (peek().kind == Tok::at) {
            next();
            std::string s = vertex();
            expect(Tok::arrow, "'->'");
            std::string t = vertex();
            d.endpoints.emplace(std::move(s), std::move(t));
        }
        if (peek().kind == Tok::ident && peek().text == "dual") {
            next();
            d.dual = expect(Tok::ident, "dual variable name").text;
        }
        expect(Tok::semicolon, "';'");
        return d;
    }

    std::vector<RawTerm> series()
    {
        std::vector<RawTerm> terms;
        if (peek().kind == Tok::integer && peek().text == "0" && pos_ + 1 < toks_.size() &&
            (toks_[pos_ + 1].kind == Tok::end || toks_[pos_ + 1].kind == Tok::semicolon)) {
            next();
            return terms;
        }
        if (peek().kind == Tok::end)
            fail(peek(), "syntax", "expected a series");
        bool first = true;
        while (true) {
            int sign = 1;
            if (peek().kind == Tok::plus || peek().kind == Tok::minus) {
                sign = next().kind == Tok::minus ? -1 : 1;
            } else if (!first) {
                break;
            }
            first = false;
            terms.push_back(term(sign));
        }
        return terms;
    }

    RawTerm term(int sign)
    {
        RawTerm t;
        t.at = peek();
        t.coeff = sign;
        if (peek().kind == Tok::integer) {
            Token num = next();
            std::string text = num.text;
            if (peek().kind == Tok::slash) {
                next();
                text += "/" + expect(Tok::integer, "denominator").text;
            }
            auto q = parse_rational(text);
            if (!q)
                fail(num, "bad_rational", "malformed rational '" + text + "'");
            t.coeff *= *q;
            expect(Tok::star, "'*' after coefficient");
        }
        expect_keyword("cyc");
        expect(Tok::lparen, "'('");
        if (peek().kind != Tok::rparen) {
            while (true) {
                Token name = expect(Tok::ident, "variable name");
                t.letters.emplace_back(name.text, name);
                if (peek().kind != Tok::star)
                    break;
                next();
            }
        }
        expect(Tok::rparen, "')'");
        return t;
    }

    PotentialDoc build(const std::vector<RawTerm>& terms)
    {
        std::vector<std::string> vertices;
        auto vertex_id = [&](const std::string& v) {
            for (std::size_t i = 0; i < vertices.size(); ++i)
                if (vertices[i] == v)
                    return static_cast<VertexId>(i);
            vertices.push_back(v);
            return static_cast<VertexId>(vertices.size() - 1);
        };
        std::map<std::string, VarId> ids;
        for (const auto& d : decls_) {
            if (ids.count(d.name))
                fail(d.at, "duplicate_variable", "variable '" + d.name + "' declared twice");
            ids.emplace(d.name, static_cast<VarId>(ids.size()));
        }
        if (decls_.size() > 4096)
            fail(decls_.back().at, "too_large", "too many declarations");
        std::vector<GradedVariable> vars;
        for (const auto& d : decls_) {
            GradedVariable v;
            v.name = d.name;
            v.coh_deg = d.degree;
            if (d.degree < -1 || d.degree > 1)
                fail(d.at, "bad_degree", "degree of '" + d.name + "' must be -1, 0 or 1");
            v.kind = kind_for_degree(d.degree);
            const std::string s = d.endpoints ? d.endpoints->first : std::string(default_vertex);
            const std::string t = d.endpoints ? d.endpoints->second : std::string(default_vertex);
            v.source = vertex_id(s);
            v.target = vertex_id(t);
            if (d.dual) {
                auto it = ids.find(*d.dual);
                if (it == ids.end())
                    fail(d.at, "unknown_variable", "dual '" + *d.dual + "' of '" + d.name + "' is not declared");
                v.dual = it->second;
            }
            vars.push_back(std::move(v));
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].dual && vars[*vars[i].dual].dual != static_cast<VarId>(i))
                fail(decls_[i].at, "unbalanced_dual",
                     "'" + vars[i].name + "' declares dual '" + vars[*vars[i].dual].name + "' but not conversely");
        }
        AlphabetPtr A;
        try {
            A = make_alphabet(vertices, std::move(vars));
        } catch (const AlphabetError& e) {
            fail(decls_.empty() ? peek() : decls_.front().at, e.code(), e.what());
        }
        CyclicSeries s(A);
        for (const auto& t : terms) {
            Word w;
            for (const auto& [name, tok] : t.letters) {
                auto id = A->find(name);
                if (!id)
                    fail(tok, "unknown_variable", "undeclared variable '" + name + "'");
                w.letters.push_back(*id);
            }
            if (!is_closed_path(*A, w))
                fail(t.at, "not_closed", "cyc(" + to_string(*A, w) + ") is not a closed path");
            s.add(w, t.coeff);
        }
        return {A, std::move(s)};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Decl> decls_;
};

} // namespace dsl_detail

// Total: never throws on malformed input, reports the first problem instead.
inline ParseResult parse_potential(std::string_view text)
{
    ParseResult r;
    try {
        auto toks = dsl_detail::Lexer(text).run();
        for (const auto& t : toks)
            if (t.kind == dsl_detail::Tok::bad && t.text[0] >= '0' && t.text[0] <= '9')
                throw dsl_detail::ParseFailure{
                    {t.line, t.col, "bad_rational", "'" + t.text + "' is not a rational; write p/q"}};
            else if (t.kind == dsl_detail::Tok::bad)
                throw dsl_detail::ParseFailure{{t.line, t.col, "unexpected_character",
                                                "unexpected character (byte " +
                                                    std::to_string(static_cast<unsigned char>(t.text[0])) + ")"}};
        r.doc = dsl_detail::Parser(std::move(toks)).parse();
    } catch (const dsl_detail::ParseFailure& f) {
        r.diagnostics.push_back(f.diag);
    } catch (const Error& e) {
        r.diagnostics.push_back({0, 0, e.code(), e.what()});
    } catch (const std::exception& e) {
        r.diagnostics.push_back({0, 0, "internal", e.what()});
    }
    return r;
}

inline std::string print_declarations(const Alphabet& A)
{
    const bool implicit_vertex = A.vertices().size() == 1 && A.vertices().front() == default_vertex;
    std::string out;
    for (const auto& v : A.variables()) {
        out += "var " + v.name + " : deg " + std::to_string(v.coh_deg);
        if (!implicit_vertex)
            out += " @ " + A.vertices()[v.source] + " -> " + A.vertices()[v.target];
        if (v.dual)
            out += " dual " + A[*v.dual].name;
        out += ";\n";
    }
    return out;
}

inline std::string print_potential(const PotentialDoc& doc)
{
    return print_declarations(*doc.alphabet) + doc.series.to_string() + "\n";
}

inline std::string print_potential(const CyclicSeries& s) { return print_potential(PotentialDoc{s.alphabet_ptr(), s}); }

} // namespace necklace
