#pragma once

// Text format for algebra definitions (.alg files): a tokenizer, a
// recursive-descent parser producing AlgebraDef, and a canonical renderer.
// Statement order inside the block is params / define / generators /
// bracket / casimir / cartan / involution / space; expressions use the
// generators, declared parameters, defined combinations, the imaginary
// unit i, and (in Casimir position) the vector shorthands W1..W3, Psq,
// Ksq, Jsq, Wsq, JdotP, JdotW, JdotK, KdotP, which are expanded at parse
// time.  Errors carry line and column positions.

#include <cctype>
#include <cstring>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kindef/algebra.hpp"
#include "kindef/vectors.hpp"

namespace kindef {

namespace alg_io_detail {

struct Token {
    enum Kind { Ident, Int, Punct, End } kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

[[noreturn]] inline void fail_at(int line, int col, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

[[noreturn]] inline void fail_at(const Token& t, const std::string& msg) { fail_at(t.line, t.col, msg); }

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto isid0 = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto isid = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < s.size()) {
        char ch = s[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (ch == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (isid0(ch)) {
            size_t j = i;
            while (j < s.size() && isid(s[j])) ++j;
            t.kind = Token::Ident;
            t.text = s.substr(i, j - i);
            col += static_cast<int>(j - i);
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Token::Int;
            t.text = s.substr(i, j - i);
            col += static_cast<int>(j - i);
            i = j;
        } else if (ch == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            t.kind = Token::Punct;
            t.text = "->";
            i += 2;
            col += 2;
        } else if (std::strchr("{}[](),;:=^*/+-", ch) != nullptr) {
            t.kind = Token::Punct;
            t.text = std::string(1, ch);
            ++i;
            ++col;
        } else {
            fail_at(line, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

// Expression tree; nodes keep source positions for error reports.
struct ExprNode {
    enum Kind { Num, Sym, Neg, Add, Sub, Mul, Div, Pow } kind = Num;
    long num = 0;          // Num payload, and the exponent for Pow
    std::string sym;       // Sym payload
    int line = 1, col = 1;
    std::vector<ExprNode> kids;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

    AlgebraDef parse() {
        expect_keyword("algebra");
        def_.name = parse_algebra_name();
        expect_punct("{");
        while (!at_punct("}")) statement();
        expect_punct("}");
        if (peek().kind != Token::End) fail_at(peek(), "trailing input after algebra block");
        if (!def_.basis) fail_at(peek(), "algebra has no generators statement");
        ensure_frozen();
        return std::move(def_);
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    AlgebraDef def_;
    std::shared_ptr<LieBasis> building_; // mutable view of def_.basis pre-freeze
    bool have_params_ = false;
    bool frozen_ = false;
    std::set<std::pair<int, int>> seen_pairs_;

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        if (i >= toks_.size()) i = toks_.size() - 1;
        return toks_[i];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (t.kind != Token::End) ++pos_;
        return t;
    }
    bool at_punct(const std::string& p) const { return peek().kind == Token::Punct && peek().text == p; }
    void expect_punct(const std::string& p) {
        if (!at_punct(p)) fail_at(peek(), "expected '" + p + "'");
        next();
    }
    std::string expect_ident(const std::string& what) {
        if (peek().kind != Token::Ident) fail_at(peek(), "expected " + what);
        return next().text;
    }
    void expect_keyword(const std::string& kw) {
        if (peek().kind != Token::Ident || peek().text != kw) fail_at(peek(), "expected '" + kw + "'");
        next();
    }
    long expect_int(const std::string& what) {
        if (peek().kind != Token::Int) fail_at(peek(), "expected " + what);
        const Token& t = next();
        try {
            return std::stol(t.text);
        } catch (const std::exception&) {
            fail_at(t, "integer literal out of range");
        }
    }

    std::string parse_algebra_name() {
        std::string n = expect_ident("algebra name");
        while (at_punct("-") && peek(1).kind == Token::Ident) {
            next();
            n += "-" + next().text;
        }
        return n;
    }

    std::vector<std::string> ident_list() {
        expect_punct("[");
        std::vector<std::string> out;
        if (!at_punct("]")) {
            out.push_back(expect_ident("identifier"));
            while (at_punct(",")) {
                next();
                out.push_back(expect_ident("identifier"));
            }
        }
        expect_punct("]");
        return out;
    }

    void ensure_generators() const {
        if (!def_.basis) fail_at(peek(), "generators must be declared first");
    }
    void ensure_frozen() {
        ensure_generators();
        if (!frozen_) {
            building_->freeze();
            frozen_ = true;
        }
    }

    bool is_param(const std::string& n) const {
        for (auto& p : def_.params)
            if (p == n) return true;
        return false;
    }

    void statement() {
        const Token& head = peek();
        std::string kw = expect_ident("statement keyword");
        if (kw == "params") {
            if (have_params_) fail_at(head, "duplicate params statement");
            have_params_ = true;
            for (auto& n : ident_list()) {
                if (is_param(n)) fail_at(head, "duplicate parameter '" + n + "'");
                try {
                    intern_param(n);
                } catch (const DomainError& e) {
                    fail_at(head, e.what());
                }
                def_.params.push_back(n);
            }
            expect_punct(";");
        } else if (kw == "define") {
            const Token& nt = peek();
            std::string name = expect_ident("defined name");
            if (is_param(name)) fail_at(nt, "defined name '" + name + "' collides with a declared parameter");
            expect_punct("=");
            ExprNode e = parse_expr();
            expect_punct(";");
            try {
                def_.defines.define(name, eval_scalar(e));
            } catch (const DomainError& err) {
                fail_at(nt, err.what());
            }
        } else if (kw == "generators") {
            if (def_.basis) fail_at(head, "duplicate generators statement");
            auto names = ident_list();
            expect_punct(";");
            if (names.empty()) fail_at(head, "empty generator list");
            for (auto& n : names) {
                if (is_param(n)) fail_at(head, "generator '" + n + "' collides with a declared parameter");
                if (def_.defines.find(n)) fail_at(head, "generator '" + n + "' collides with a defined name");
            }
            try {
                building_ = LieBasis::create(names);
                def_.basis = building_;
            } catch (const ParseError& e) {
                fail_at(head, e.what());
            }
        } else if (kw == "bracket") {
            ensure_generators();
            if (frozen_) fail_at(head, "bracket declarations must precede casimir/cartan/involution/space statements");
            expect_punct("[");
            const Token& xt = peek();
            std::string xn = expect_ident("generator name");
            expect_punct(",");
            const Token& yt = peek();
            std::string yn = expect_ident("generator name");
            expect_punct("]");
            int xi = def_.basis->index_of(xn);
            int yi = def_.basis->index_of(yn);
            if (xi < 0) fail_at(xt, "unknown generator '" + xn + "'");
            if (yi < 0) fail_at(yt, "unknown generator '" + yn + "'");
            if (xi == yi) fail_at(yt, "bracket of '" + xn + "' with itself");
            auto key = std::minmax(xi, yi);
            if (!seen_pairs_.insert({key.first, key.second}).second)
                fail_at(head, "bracket [" + xn + ", " + yn + "] already declared (directly or by antisymmetry)");
            expect_punct("=");
            ExprNode e = parse_expr();
            expect_punct(";");
            Element rhs = eval_element(e);
            if (rhs.degree() > 1) fail_at(head, "bracket right-hand side must have degree at most 1");
            if (!rhs.is_zero() && rhs.is_scalar())
                fail_at(head, "bracket right-hand side must not have a bare scalar part");
            if (!rhs.is_zero()) building_->set_bracket(xi, yi, rhs);
        } else if (kw == "casimir") {
            ensure_frozen();
            const Token& nt = peek();
            std::string name = expect_ident("casimir name");
            if (def_.casimir(name)) fail_at(nt, "duplicate casimir '" + name + "'");
            expect_punct("=");
            ExprNode e = parse_expr();
            expect_keyword("eigenvalue");
            const Token& pt = peek();
            std::string pn = expect_ident("eigenvalue parameter");
            expect_punct(";");
            if (!is_param(pn)) fail_at(pt, "eigenvalue parameter '" + pn + "' is not declared");
            def_.casimirs.push_back(CasimirDef{name, eval_element(e), intern_param(pn)});
        } else if (kw == "cartan") {
            ensure_frozen();
            const Token& lt = peek();
            std::string label = expect_ident("split label");
            for (auto& cs : def_.cartan)
                if (cs.label == label) fail_at(lt, "duplicate cartan split '" + label + "'");
            expect_punct(":");
            expect_keyword("p");
            expect_punct("=");
            auto p = gen_list();
            expect_punct(",");
            expect_keyword("h");
            expect_punct("=");
            auto h = gen_list();
            expect_keyword("pattern");
            expect_punct("=");
            const Token& pt = peek();
            std::string pat = expect_ident("pattern (zero or subh)");
            expect_punct(";");
            if (pat != "zero" && pat != "subh") fail_at(pt, "pattern must be 'zero' or 'subh'");
            def_.cartan.push_back(CartanSplit{label, p, h, pat});
        } else if (kw == "involution") {
            ensure_frozen();
            const Token& nt = peek();
            std::string name = expect_ident("involution name");
            if (def_.involution(name)) fail_at(nt, "duplicate involution '" + name + "'");
            expect_punct(":");
            Involution v;
            v.name = name;
            while (true) {
                const Token& st = peek();
                std::string src = expect_ident("generator name");
                if (def_.basis->index_of(src) < 0) fail_at(st, "unknown generator '" + src + "'");
                if (v.images.count(src)) fail_at(st, "duplicate image for generator '" + src + "'");
                expect_punct("->");
                int sign = 1;
                if (at_punct("-")) {
                    next();
                    sign = -1;
                }
                const Token& dt = peek();
                std::string dst = expect_ident("generator name");
                if (def_.basis->index_of(dst) < 0) fail_at(dt, "unknown generator '" + dst + "'");
                v.images[src] = {dst, sign};
                if (!at_punct(",")) break;
                next();
            }
            expect_punct(";");
            def_.involutions.push_back(std::move(v));
        } else if (kw == "space") {
            ensure_frozen();
            const Token& lt = peek();
            std::string label = expect_ident("space label");
            if (def_.space(label)) fail_at(lt, "duplicate space '" + label + "'");
            expect_punct(":");
            expect_keyword("dim");
            expect_punct("=");
            long dim = expect_int("dimension");
            expect_keyword("curvature");
            expect_punct("=");
            ExprNode e = parse_expr();
            expect_keyword("rank");
            expect_punct("=");
            long rank = expect_int("rank");
            expect_punct(";");
            def_.spaces.push_back(SpaceRecord{label, static_cast<int>(dim), eval_scalar(e), static_cast<int>(rank)});
        } else {
            fail_at(head, "unknown statement '" + kw + "'");
        }
    }

    std::vector<std::string> gen_list() {
        const Token& t0 = peek();
        auto names = ident_list();
        for (auto& n : names)
            if (def_.basis->index_of(n) < 0) fail_at(t0, "unknown generator '" + n + "'");
        return names;
    }

    // ---- expressions ----

    ExprNode parse_expr() {
        ExprNode lhs;
        if (at_punct("-")) {
            const Token& t = next();
            lhs = node(ExprNode::Neg, t);
            lhs.kids.push_back(parse_term());
        } else {
            lhs = parse_term();
        }
        while (at_punct("+") || at_punct("-")) {
            const Token& t = next();
            ExprNode n = node(t.text == "+" ? ExprNode::Add : ExprNode::Sub, t);
            n.kids.push_back(std::move(lhs));
            n.kids.push_back(parse_term());
            lhs = std::move(n);
        }
        return lhs;
    }

    ExprNode parse_term() {
        ExprNode lhs = parse_factor();
        while (at_punct("*") || at_punct("/")) {
            const Token& t = next();
            ExprNode n = node(t.text == "*" ? ExprNode::Mul : ExprNode::Div, t);
            n.kids.push_back(std::move(lhs));
            n.kids.push_back(parse_factor());
            lhs = std::move(n);
        }
        return lhs;
    }

    ExprNode parse_factor() {
        ExprNode base = parse_atom();
        if (at_punct("^")) {
            const Token& t = next();
            ExprNode n = node(ExprNode::Pow, t);
            n.num = expect_int("a non-negative integer exponent");
            n.kids.push_back(std::move(base));
            return n;
        }
        return base;
    }

    ExprNode parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Int) {
            next();
            ExprNode n = node(ExprNode::Num, t);
            try {
                n.num = std::stol(t.text);
            } catch (const std::exception&) {
                fail_at(t, "integer literal out of range");
            }
            return n;
        }
        if (t.kind == Token::Ident) {
            next();
            ExprNode n = node(ExprNode::Sym, t);
            n.sym = t.text;
            return n;
        }
        if (at_punct("(")) {
            next();
            ExprNode n = parse_expr();
            expect_punct(")");
            return n;
        }
        fail_at(t, "expected an expression");
    }

    static ExprNode node(ExprNode::Kind k, const Token& t) {
        ExprNode n;
        n.kind = k;
        n.line = t.line;
        n.col = t.col;
        return n;
    }

    Scalar eval_scalar(const ExprNode& e) const {
        switch (e.kind) {
            case ExprNode::Num: return Scalar(e.num);
            case ExprNode::Sym: {
                if (const DefinedParam* d = def_.defines.find(e.sym)) return d->value;
                if (is_param(e.sym)) return Scalar::param(e.sym);
                if (e.sym == "i") return Scalar::imag_unit();
                fail_at(e.line, e.col, "unknown symbol '" + e.sym + "' in scalar expression");
            }
            case ExprNode::Neg: return Scalar::zero() - eval_scalar(e.kids[0]);
            case ExprNode::Add: return eval_scalar(e.kids[0]) + eval_scalar(e.kids[1]);
            case ExprNode::Sub: return eval_scalar(e.kids[0]) - eval_scalar(e.kids[1]);
            case ExprNode::Mul: return eval_scalar(e.kids[0]) * eval_scalar(e.kids[1]);
            case ExprNode::Div: {
                Scalar d = eval_scalar(e.kids[1]);
                if (d.is_zero()) fail_at(e.line, e.col, "division by zero");
                return eval_scalar(e.kids[0]) / d;
            }
            case ExprNode::Pow: {
                Scalar b = eval_scalar(e.kids[0]);
                Scalar r = Scalar::one();
                for (long k = 0; k < e.num; ++k) r = r * b;
                return r;
            }
        }
        fail_at(e.line, e.col, "malformed expression");
    }

    Element eval_element(const ExprNode& e) const {
        const BasisPtr& b = def_.basis;
        switch (e.kind) {
            case ExprNode::Num: return Element::unit(b, Scalar(e.num));
            case ExprNode::Sym: {
                if (b->index_of(e.sym) >= 0) return Element::gen(b, e.sym);
                if (const DefinedParam* d = def_.defines.find(e.sym)) return Element::unit(b, d->value);
                if (is_param(e.sym)) return Element::unit(b, Scalar::param(e.sym));
                if (e.sym == "i") return Element::unit(b, Scalar::imag_unit());
                if (is_macro_name(e.sym)) return macro(e.sym);
                fail_at(e.line, e.col, "unknown symbol '" + e.sym + "'");
            }
            case ExprNode::Neg: return -eval_element(e.kids[0]);
            case ExprNode::Add: return eval_element(e.kids[0]) + eval_element(e.kids[1]);
            case ExprNode::Sub: return eval_element(e.kids[0]) - eval_element(e.kids[1]);
            case ExprNode::Mul: return eval_element(e.kids[0]) * eval_element(e.kids[1]);
            case ExprNode::Div: {
                Element d = eval_element(e.kids[1]);
                if (!d.is_scalar() || d.scalar_part().is_zero())
                    fail_at(e.line, e.col, "division is only defined by a nonzero scalar");
                return eval_element(e.kids[0]).scaled(Scalar::one() / d.scalar_part());
            }
            case ExprNode::Pow: {
                Element base = eval_element(e.kids[0]);
                if (base.is_scalar()) {
                    Scalar r = Scalar::one();
                    for (long k = 0; k < e.num; ++k) r = r * base.scalar_part();
                    return Element::unit(b, r);
                }
                Element r = Element::unit(b);
                for (long k = 0; k < e.num; ++k) r = r * base;
                return r;
            }
        }
        fail_at(e.line, e.col, "malformed expression");
    }

    bool have_triple(const std::string& base) const {
        for (int i = 1; i <= 3; ++i)
            if (def_.basis->index_of(base + std::to_string(i)) < 0) return false;
        return true;
    }

    bool is_macro_name(const std::string& n) const {
        static const char* names[] = {"Psq",   "Ksq",   "Jsq",   "Wsq",   "W1",  "W2",
                                      "W3",    "JdotP", "JdotW", "JdotK", "KdotP"};
        for (auto* m : names)
            if (n == m) return true;
        return false;
    }

    // Vector shorthands; Wi always means the wedge of the boost and momentum
    // triples.  Requests for a shorthand whose triples are missing fail.
    Element macro(const std::string& n) const {
        const BasisPtr& b = def_.basis;
        auto need = [&](const char* base) {
            if (!have_triple(base))
                throw ParseError("shorthand '" + n + "' needs generators " + std::string(base) + "1.." +
                                 std::string(base) + "3");
        };
        if (n == "Psq") {
            need("P");
            return dot3(vec3(b, "P"), vec3(b, "P"));
        }
        if (n == "Ksq") {
            need("K");
            return dot3(vec3(b, "K"), vec3(b, "K"));
        }
        if (n == "Jsq") {
            need("J");
            return dot3(vec3(b, "J"), vec3(b, "J"));
        }
        need("K");
        need("P");
        auto W = wedge3(vec3(b, "K"), vec3(b, "P"));
        if (n == "W1" || n == "W2" || n == "W3") return W[static_cast<size_t>(n[1] - '1')];
        if (n == "Wsq") return dot3(W, W);
        need("J");
        auto J = vec3(b, "J");
        if (n == "JdotP") return dot3(J, vec3(b, "P"));
        if (n == "JdotW") return dot3(J, W);
        if (n == "JdotK") return dot3(J, vec3(b, "K"));
        return dot3(vec3(b, "K"), vec3(b, "P")); // KdotP
    }
};

} // namespace alg_io_detail

inline AlgebraDef parse_algebra(const std::string& text) { return alg_io_detail::Parser(text).parse(); }

inline std::string render_algebra(const AlgebraDef& d) {
    std::ostringstream o;
    auto join = [](const std::vector<std::string>& v) {
        std::string r;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) r += ", ";
            r += v[i];
        }
        return r;
    };
    o << "algebra " << d.name << " {\n";
    if (!d.params.empty()) o << "  params [" << join(d.params) << "];\n";
    for (auto& def : d.defines.all()) o << "  define " << def.name << " = " << def.value.str() << ";\n";
    o << "  generators [" << join(d.basis->names()) << "];\n";
    int n = d.basis->size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Element rhs = d.basis->bracket(i, j);
            if (rhs.is_zero()) continue;
            o << "  bracket [" << d.basis->name(i) << ", " << d.basis->name(j) << "] = " << rhs.str() << ";\n";
        }
    for (auto& c : d.casimirs)
        o << "  casimir " << c.name << " = " << c.element.str() << " eigenvalue "
          << param_name(c.eigenvalue_param) << ";\n";
    for (auto& cs : d.cartan)
        o << "  cartan " << cs.label << ": p=[" << join(cs.p) << "], h=[" << join(cs.h)
          << "] pattern=" << cs.pattern << ";\n";
    for (auto& v : d.involutions) {
        o << "  involution " << v.name << ": ";
        bool first = true;
        for (auto& [src, img] : v.images) {
            if (!first) o << ", ";
            first = false;
            o << src << "->" << (img.second < 0 ? "-" : "") << img.first;
        }
        o << ";\n";
    }
    for (auto& s : d.spaces)
        o << "  space " << s.label << ": dim=" << s.dim << " curvature=" << s.curvature.str()
          << " rank=" << s.rank << ";\n";
    o << "}\n";
    return o.str();
}

} // namespace kindef
