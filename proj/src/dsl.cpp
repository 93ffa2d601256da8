#include "puiseux/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace puiseux {

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { skip_header(); }

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                t.text += take();
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::Number;
            bool dot = false;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                    (!dot && src_[pos_] == '.' && pos_ + 1 < src_.size() &&
                     std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))) {
                if (src_[pos_] == '.') dot = true;
                t.text += take();
            }
            return t;
        }
        if (c == '"') {
            t.kind = Tok::String;
            take();
            while (pos_ < src_.size() && src_[pos_] != '"') t.text += take();
            if (pos_ >= src_.size())
                throw ParseError("unterminated string literal", t.line, t.col);
            take();
            return t;
        }
        static const std::string punct = "+-*/^()[]{},;=";
        if (punct.find(c) != std::string::npos) {
            t.kind = Tok::Punct;
            t.text += take();
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

private:
    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    void skip_header() {
        // optional version line: "puiseux-forge v1"
        size_t save_pos = pos_;
        int save_line = line_, save_col = col_;
        skip_ws();
        if (src_.compare(pos_, 13, "puiseux-forge") == 0) {
            while (pos_ < src_.size() && src_[pos_] != '\n') take();
        } else {
            pos_ = save_pos;
            line_ = save_line;
            col_ = save_col;
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

// ---- expression values ----
// A value is a polynomial in y0..yn over generalized series; keys are
// trailing-zero-trimmed multi-indices.
struct Poly {
    std::map<std::vector<int>, GenSeries> m;
};

std::vector<int> trim(std::vector<int> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

Poly poly_scalar(const Scalar& c) {
    Poly p;
    if (!c.is_zero()) {
        GenSeries s;
        s.terms.push_back({Exponent(), c});
        p.m.emplace(std::vector<int>{}, std::move(s));
    }
    return p;
}

Poly poly_x(const Exponent& e) {
    Poly p;
    GenSeries s;
    s.terms.push_back({e, Scalar(Rat(1))});
    p.m.emplace(std::vector<int>{}, std::move(s));
    return p;
}

Poly poly_y(int k) {
    Poly p;
    std::vector<int> key(static_cast<size_t>(k) + 1, 0);
    key[static_cast<size_t>(k)] = 1;
    GenSeries s;
    s.terms.push_back({Exponent(), Scalar(Rat(1))});
    p.m.emplace(std::move(key), std::move(s));
    return p;
}

Poly poly_add(const Ctx& ctx, const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [k, f] : b.m) {
        auto it = r.m.find(k);
        if (it == r.m.end())
            r.m.emplace(k, f);
        else
            it->second = series_add(ctx, it->second, f);
    }
    for (auto it = r.m.begin(); it != r.m.end();)
        it = it->second.terms.empty() ? r.m.erase(it) : std::next(it);
    return r;
}

Poly poly_neg(const Poly& a) {
    Poly r;
    for (const auto& [k, f] : a.m) r.m.emplace(k, series_neg(f));
    return r;
}

Poly poly_mul(const Ctx& ctx, const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ka, fa] : a.m)
        for (const auto& [kb, fb] : b.m) {
            std::vector<int> k(std::max(ka.size(), kb.size()), 0);
            for (size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
            for (size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
            GenSeries f = series_mul(ctx, fa, fb);
            auto it = r.m.find(k);
            if (it == r.m.end())
                r.m.emplace(std::move(k), std::move(f));
            else
                it->second = series_add(ctx, it->second, f);
        }
    for (auto it = r.m.begin(); it != r.m.end();)
        it = it->second.terms.empty() ? r.m.erase(it) : std::next(it);
    return r;
}

// single-term y-free value, invertible exactly
std::optional<std::pair<Scalar, Exponent>> poly_as_monomial(const Poly& a) {
    if (a.m.size() != 1) return std::nullopt;
    const auto& [k, f] = *a.m.begin();
    if (!k.empty()) return std::nullopt;
    if (f.terms.size() != 1) return std::nullopt;
    return std::make_pair(f.terms[0].coeff, f.terms[0].exp);
}

std::optional<Scalar> poly_as_scalar(const Poly& a) {
    if (a.m.empty()) return Scalar();
    auto mono = poly_as_monomial(a);
    if (mono && mono->second.is_zero()) return mono->first;
    return std::nullopt;
}

bool poly_is_exactly_x(const Poly& a) {
    auto mono = poly_as_monomial(a);
    return mono && mono->first.is_one() && mono->second == Exponent(1);
}

Poly poly_pow(const Ctx& ctx, const Poly& a, long e) {
    if (e < 0) {
        auto mono = poly_as_monomial(a);
        if (!mono) throw SemanticError("negative power of a non-monomial value");
        if (mono->first.is_zero()) throw DivisionByZero("negative power of zero");
        Poly inv;
        GenSeries s;
        s.terms.push_back({-mono->second, Scalar(Rat(1)) / mono->first});
        inv.m.emplace(std::vector<int>{}, std::move(s));
        return poly_pow(ctx, inv, -e);
    }
    Poly r = poly_scalar(Scalar(Rat(1)));
    Poly b = a;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1) r = poly_mul(ctx, r, b);
        b = poly_mul(ctx, b, b);
        n >>= 1;
    }
    return r;
}

Poly poly_div(const Ctx& ctx, const Poly& a, const Poly& b) {
    auto mono = poly_as_monomial(b);
    if (!mono) throw SemanticError("division requires a single-term, y-free divisor");
    if (mono->first.is_zero()) throw DivisionByZero("division by zero in expression");
    Poly r;
    Scalar inv = Scalar(Rat(1)) / mono->first;
    for (const auto& [k, f] : a.m) {
        GenSeries g = series_monomial_mul(ctx, f, inv, -mono->second);
        if (!g.terms.empty()) r.m.emplace(k, std::move(g));
    }
    return r;
}

// ---- parser ----

struct Parser {
    Lexer lex;
    Token cur;
    Problem* prob;
    Ctx ctx;

    Parser(const std::string& src, Problem* p, int budget)
        : lex(src), prob(p), ctx{&p->syms, budget} {
        cur = this->lex.next();
    }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected = {}) {
        throw ParseError(msg, cur.line, cur.col, expected);
    }

    void advance() { cur = lex.next(); }

    bool at_punct(const char* p) const { return cur.kind == Tok::Punct && cur.text == p; }
    bool at_ident(const char* w) const { return cur.kind == Tok::Ident && cur.text == w; }

    void expect_punct(const char* p) {
        if (!at_punct(p)) fail("expected '" + std::string(p) + "'", p);
        advance();
    }

    std::string expect_ident() {
        if (cur.kind != Tok::Ident) fail("expected identifier", "identifier");
        std::string s = cur.text;
        advance();
        return s;
    }

    Rat expect_number() {
        if (cur.kind != Tok::Number) fail("expected number", "number");
        Rat v = rat_from_decimal(cur.text);
        advance();
        return v;
    }

    // signed rational literal: [-] NUMBER [/ NUMBER]
    Rat parse_bound() {
        bool neg = false;
        if (at_punct("-")) {
            neg = true;
            advance();
        }
        Rat v = expect_number();
        if (at_punct("/")) {
            advance();
            Rat d = expect_number();
            if (d == 0) fail("zero denominator in rational literal");
            v /= d;
        }
        return neg ? -v : v;
    }

    // ---- expressions ----

    Poly parse_expr() {
        Poly v = parse_term();
        while (at_punct("+") || at_punct("-")) {
            bool minus = cur.text == "-";
            advance();
            Poly rhs = parse_term();
            v = poly_add(ctx, v, minus ? poly_neg(rhs) : rhs);
        }
        return v;
    }

    Poly parse_term() {
        Poly v = parse_unary();
        while (at_punct("*") || at_punct("/")) {
            bool div = cur.text == "/";
            advance();
            Poly rhs = parse_unary();
            v = div ? poly_div(ctx, v, rhs) : poly_mul(ctx, v, rhs);
        }
        return v;
    }

    Poly parse_unary() {
        if (at_punct("-")) {
            advance();
            return poly_neg(parse_unary());
        }
        if (at_punct("+")) {
            advance();
            return parse_unary();
        }
        return parse_power();
    }

    Poly parse_power() {
        Poly base = parse_primary();
        if (!at_punct("^")) return base;
        advance();
        Poly expv = parse_unary();
        auto sc = poly_as_scalar(expv);
        if (!sc) fail("exponent must be a scalar expression");
        if (poly_is_exactly_x(base)) {
            auto e = scalar_to_exponent(*sc, prob->syms);
            if (!e)
                throw SemanticError(
                    "exponent of x must be rational plus rational multiples of generators");
            return poly_x(*e);
        }
        auto r = sc->as_rational();
        if (!r || !is_integer(*r))
            throw SemanticError("power of a non-x base must be an integer");
        return poly_pow(ctx, base, to_long(rat_num(*r)));
    }

    Poly parse_primary() {
        if (cur.kind == Tok::Number) {
            Rat v = rat_from_decimal(cur.text);
            advance();
            return poly_scalar(Scalar(v));
        }
        if (at_punct("(")) {
            advance();
            Poly v = parse_expr();
            expect_punct(")");
            return v;
        }
        if (cur.kind == Tok::Ident) {
            std::string name = cur.text;
            if (name == "x") {
                advance();
                return poly_x(Exponent(1));
            }
            if (name == "i") {
                advance();
                return poly_scalar(Scalar::imaginary_unit());
            }
            if (name.size() >= 2 && name[0] == 'y' &&
                std::all_of(name.begin() + 1, name.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                int k = std::stoi(name.substr(1));
                if (k > 16) fail("y index too large");
                advance();
                return poly_y(k);
            }
            int id = prob->syms.find(name);
            if (id < 0) fail("undeclared symbol '" + name + "'");
            advance();
            return poly_scalar(Scalar::from_symbol(id));
        }
        fail("expected expression", "expression");
    }

    // ---- statements ----

    void parse_transcendental() {
        advance();  // keyword
        std::string name = expect_ident();
        if (!at_ident("in")) fail("expected 'in'", "in");
        advance();
        expect_punct("[");
        Rat lo = parse_bound();
        expect_punct(",");
        Rat hi = parse_bound();
        expect_punct("]");
        if (lo >= hi) throw SemanticError("enclosure of " + name + " must satisfy lo < hi");
        TranscSymbol s;
        s.name = name;
        s.enclosure = RatInterval{lo, hi};
        s.kind = SymbolKind::Additive;
        if (at_ident("refine")) {
            advance();
            if (at_ident("pi")) {
                advance();
                Rat factor = 1;
                if (at_punct("/")) {
                    advance();
                    factor = Rat(1) / expect_number();
                } else if (at_punct("*")) {
                    advance();
                    factor = parse_bound();
                }
                s.refiner = Refiner::pi_multiple(factor);
            } else if (at_ident("digits")) {
                advance();
                if (cur.kind != Tok::String) fail("expected digit string", "string");
                s.refiner = Refiner::from_digits(cur.text);
                advance();
            } else {
                fail("expected 'pi' or 'digits'", "pi|digits");
            }
        }
        expect_punct(";");
        int id = prob->syms.add(std::move(s));
        prob->basis.push_back(id);
    }

    void parse_operator() {
        advance();
        if (at_ident("euler")) {
            advance();
            prob->op = OperatorKind::euler();
        } else if (at_ident("dx")) {
            advance();
            prob->op = OperatorKind::dx();
        } else if (at_ident("qdiff")) {
            advance();
            if (!at_ident("q")) fail("expected 'q'", "q");
            advance();
            expect_punct("=");
            Poly v = parse_expr();
            auto q = poly_as_scalar(v);
            if (!q) throw SemanticError("q must be a scalar expression");
            if (q->is_zero()) throw SemanticError("q must be nonzero");
            try {
                q_modulus_vs_one(ctx, *q);
            } catch (const OrderUndecidable&) {
                throw SemanticError("|q| must differ from 1 (could not be certified)");
            }
            prob->op = OperatorKind::qdiff(*q);
        } else {
            fail("expected euler, dx or qdiff", "euler|dx|qdiff");
        }
        expect_punct(";");
    }

    void parse_equation() {
        advance();
        Poly v = parse_expr();
        expect_punct(";");
        int order = -1;
        for (const auto& [k, f] : v.m) {
            (void)f;
            if (!k.empty()) order = std::max<int>(order, static_cast<int>(k.size()) - 1);
        }
        if (order < 0) throw SemanticError("equation must involve y0, y1, ...");
        Equation eq;
        eq.order = order;
        eq.op = prob->op;
        for (const auto& [k, f] : v.m) {
            MultiIndex mi(static_cast<size_t>(order) + 1, 0);
            for (size_t i = 0; i < k.size(); ++i) mi[i] = k[i];
            eq.coeffs.emplace(std::move(mi), f);
        }
        prob->equation = std::move(eq);
        have_equation = true;
    }

    void parse_segment() {
        advance();
        Poly v = parse_expr();
        expect_punct(";");
        for (const auto& [k, f] : v.m) {
            (void)f;
            if (!k.empty()) throw SemanticError("segment must not involve y");
        }
        GenSeries s;
        if (!v.m.empty()) s = v.m.begin()->second;
        std::vector<SeriesTerm> terms = s.terms;
        prob->segment = series_make(ctx, std::move(terms));
    }

    void parse_budget() {
        advance();
        bool any = false;
        while (cur.kind == Tok::Ident) {
            std::string key = expect_ident();
            expect_punct("=");
            if (key == "terms") {
                Rat v = expect_number();
                if (!is_integer(v) || v <= 0) throw SemanticError("terms budget must be a positive integer");
                prob->budget.max_terms = static_cast<int>(to_long(rat_num(v)));
            } else if (key == "exponent") {
                Poly v = parse_expr();
                auto sc = poly_as_scalar(v);
                auto e = sc ? scalar_to_exponent(*sc, prob->syms) : std::nullopt;
                if (!e) throw SemanticError("exponent budget must be a valid exponent");
                prob->budget.max_exponent = *e;
            } else {
                fail("unknown budget key '" + key + "'", "terms|exponent");
            }
            any = true;
        }
        if (!any) fail("expected budget assignments", "terms=|exponent=");
        expect_punct(";");
    }

    void parse_policy() {
        advance();
        std::string p = expect_ident();
        if (p == "sides_only")
            prob->policy = Policy::SidesOnly;
        else if (p == "sides_and_vertex_roots")
            prob->policy = Policy::SidesAndVertexRoots;
        else
            fail("unknown policy '" + p + "'", "sides_only|sides_and_vertex_roots");
        expect_punct(";");
    }

    bool have_equation = false;
    bool have_operator = false;

    void run() {
        while (cur.kind != Tok::End) {
            if (cur.kind != Tok::Ident) fail("expected statement", "statement");
            if (cur.text == "transcendental") {
                parse_transcendental();
            } else if (cur.text == "operator") {
                parse_operator();
                have_operator = true;
            } else if (cur.text == "equation") {
                if (!have_operator)
                    throw SemanticError("operator must be declared before the equation");
                parse_equation();
            } else if (cur.text == "segment") {
                parse_segment();
            } else if (cur.text == "budget") {
                parse_budget();
            } else if (cur.text == "policy") {
                parse_policy();
            } else {
                fail("unknown statement '" + cur.text + "'",
                     "transcendental|operator|equation|segment|budget|policy");
            }
        }
        if (!have_equation) throw SemanticError("missing equation statement");
    }
};

}  // namespace

Problem parse_problem(const std::string& text) {
    Problem p;
    Parser parser(text, &p, 8);
    parser.run();
    return p;
}

GenSeries parse_series_literal(Problem& p, const std::string& text, int precision_budget) {
    std::string stmt = "segment " + text + ";";
    Parser parser(stmt, &p, precision_budget);
    parser.parse_segment();
    if (parser.cur.kind != Tok::End)
        throw ParseError("trailing input after series literal", parser.cur.line, parser.cur.col);
    GenSeries out = *p.segment;
    p.segment.reset();
    return out;
}

std::string render_problem(const Problem& p) {
    std::ostringstream out;
    out << "puiseux-forge v1\n";
    for (int id : p.basis) {
        const TranscSymbol& s = p.syms.at(id);
        out << "transcendental " << s.name << " in [" << rat_render(s.enclosure.lo) << ", "
            << rat_render(s.enclosure.hi) << "]";
        if (s.refiner.type == Refiner::PiMultiple) {
            Rat f = s.refiner.factor;
            if (f == 1)
                out << " refine pi";
            else if (rat_num(f) == 1)
                out << " refine pi/" << rat_den(f).str();
            else
                out << " refine pi*" << rat_render(f);
        } else if (s.refiner.type == Refiner::Digits) {
            out << " refine digits \"" << s.refiner.digits << "\"";
        }
        out << ";\n";
    }
    out << "operator " << operator_render(p.op, p.syms) << ";\n";
    out << "equation " << equation_render(p.equation, p.syms) << ";\n";
    if (p.segment) out << "segment " << series_render(*p.segment, p.syms) << ";\n";
    out << "budget terms=" << p.budget.max_terms;
    if (p.budget.max_exponent)
        out << " exponent=" << exponent_render(*p.budget.max_exponent, p.syms);
    out << ";\n";
    out << "policy "
        << (p.policy == Policy::SidesOnly ? "sides_only" : "sides_and_vertex_roots") << ";\n";
    return out.str();
}

}  // namespace puiseux
