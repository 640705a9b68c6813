#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <string_view>

#include "piexp/oracle.hpp"
#include "piexp/poly.hpp"

namespace piexp::cli {

// Abstract syntax of coefficient expressions:
//
//   poly  := ['-'] term (('+'|'-') term)*
//   term  := factor ('*' factor)*          -- at most one factor is a T-power
//   factor:= coeff | 'T' ('^' uint)?
//   coeff := rational | 'pi' '(' uint ')' | '(' cexpr ')' | coeff '^' uint
//   cexpr := ['-'] cterm (('+'|'-') cterm)*   -- full expression inside parens
//   rational := uint ('/' uint)?
//
// Terms are kept as expression trees so a parsed polynomial can be printed
// back verbatim-canonically and evaluated under any later parameter choice.
struct CoeffExpr;
using ExprPtr = std::shared_ptr<const CoeffExpr>;

struct CoeffExpr {
    enum class Kind { rational, pi, add, sub, mul, neg, pow };
    Kind kind;
    Rat value;      // rational
    long pi_index = 0;
    ExprPtr a, b;
    long exponent = 0;  // pow
    long line = 1, col = 1;
};

inline ExprPtr make_expr(CoeffExpr e) { return std::make_shared<const CoeffExpr>(std::move(e)); }

struct ParsedTerm {
    ExprPtr coeff;
    long degree = 0;
    long line = 1, col = 1;
};

struct ParsedPoly {
    std::vector<ParsedTerm> terms;
    long syntactic_degree() const {
        long d = 0;
        for (const auto& t : terms) d = std::max(d, t.degree);
        return d;
    }
};

namespace detail {

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    struct Token {
        enum class Kind { integer, pi, t, plus, minus, star, caret, slash, lparen, rparen, end };
        Kind kind;
        Int value;
        long line, col;
    };

    Token next() {
        skip_ws();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (pos_ >= text_.size()) {
            tok.kind = Token::Kind::end;
            return tok;
        }
        char c = text_[pos_];
        if (c >= '0' && c <= '9') {
            std::string digits;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                digits.push_back(text_[pos_]);
                advance();
            }
            tok.kind = Token::Kind::integer;
            tok.value = Int(digits);
            return tok;
        }
        if (c == 'p' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'i') {
            advance();
            advance();
            tok.kind = Token::Kind::pi;
            return tok;
        }
        if (c == 'T') {
            advance();
            tok.kind = Token::Kind::t;
            return tok;
        }
        advance();
        switch (c) {
            case '+': tok.kind = Token::Kind::plus; return tok;
            case '-': tok.kind = Token::Kind::minus; return tok;
            case '*': tok.kind = Token::Kind::star; return tok;
            case '^': tok.kind = Token::Kind::caret; return tok;
            case '/': tok.kind = Token::Kind::slash; return tok;
            case '(': tok.kind = Token::Kind::lparen; return tok;
            case ')': tok.kind = Token::Kind::rparen; return tok;
            default:
                throw parse_error(std::string("unexpected character '") + c + "'", tok.line,
                                  tok.col);
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r')) {
            advance();
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    long line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { shift(); }

    ParsedPoly parse() {
        ParsedPoly out;
        bool negate = false;
        if (tok_.kind == Tok::Kind::minus) {
            negate = true;
            shift();
        }
        out.terms.push_back(parse_term(negate));
        while (tok_.kind == Tok::Kind::plus || tok_.kind == Tok::Kind::minus) {
            bool neg = tok_.kind == Tok::Kind::minus;
            shift();
            out.terms.push_back(parse_term(neg));
        }
        if (tok_.kind != Tok::Kind::end)
            throw parse_error("trailing input after polynomial", tok_.line, tok_.col);
        return out;
    }

private:
    using Tok = Lexer::Token;

    void shift() { tok_ = lex_.next(); }

    void expect(Tok::Kind k, const char* what) {
        if (tok_.kind != k) throw parse_error(std::string("expected ") + what, tok_.line, tok_.col);
        shift();
    }

    long parse_uint(const char* what) {
        if (tok_.kind != Tok::Kind::integer)
            throw parse_error(std::string("expected ") + what, tok_.line, tok_.col);
        if (!tok_.value.fits_slong_p())
            throw parse_error("integer too large", tok_.line, tok_.col);
        long v = tok_.value.get_si();
        shift();
        return v;
    }

    // term := factor ('*' factor)* with at most one T-power among the factors.
    ParsedTerm parse_term(bool negate) {
        ParsedTerm term;
        term.line = tok_.line;
        term.col = tok_.col;
        ExprPtr coeff;
        bool saw_t = false;
        while (true) {
            if (tok_.kind == Tok::Kind::t) {
                if (saw_t) throw parse_error("repeated T factor in a term", tok_.line, tok_.col);
                saw_t = true;
                shift();
                term.degree = 1;
                if (tok_.kind == Tok::Kind::caret) {
                    shift();
                    term.degree = parse_uint("integer exponent after '^'");
                }
            } else {
                ExprPtr f = parse_coeff_atom();
                coeff = coeff ? make_expr({CoeffExpr::Kind::mul, Rat(), 0, coeff, f, 0, term.line,
                                           term.col})
                              : f;
            }
            if (tok_.kind == Tok::Kind::star) {
                shift();
                continue;
            }
            break;
        }
        if (!coeff) {
            CoeffExpr one;
            one.kind = CoeffExpr::Kind::rational;
            one.value = 1;
            one.line = term.line;
            one.col = term.col;
            coeff = make_expr(std::move(one));
        }
        if (negate)
            coeff = make_expr({CoeffExpr::Kind::neg, Rat(), 0, coeff, nullptr, 0, term.line,
                               term.col});
        term.coeff = coeff;
        return term;
    }

    // coeff := base ('^' uint)?
    ExprPtr parse_coeff_atom() {
        ExprPtr base = parse_base();
        while (tok_.kind == Tok::Kind::caret) {
            long line = tok_.line, col = tok_.col;
            shift();
            long n = parse_uint("integer exponent after '^'");
            base = make_expr({CoeffExpr::Kind::pow, Rat(), 0, base, nullptr, n, line, col});
        }
        return base;
    }

    ExprPtr parse_base() {
        long line = tok_.line, col = tok_.col;
        if (tok_.kind == Tok::Kind::integer) {
            Int num = tok_.value;
            shift();
            Int den = 1;
            if (tok_.kind == Tok::Kind::slash) {
                shift();
                if (tok_.kind != Tok::Kind::integer)
                    throw parse_error("expected integer denominator", tok_.line, tok_.col);
                den = tok_.value;
                if (den == 0) throw parse_error("zero denominator", tok_.line, tok_.col);
                shift();
            }
            CoeffExpr e;
            e.kind = CoeffExpr::Kind::rational;
            e.value = Rat(num, den);
            e.value.canonicalize();
            e.line = line;
            e.col = col;
            return make_expr(std::move(e));
        }
        if (tok_.kind == Tok::Kind::pi) {
            shift();
            expect(Tok::Kind::lparen, "'(' after pi");
            long idx = parse_uint("uniformizer index");
            expect(Tok::Kind::rparen, "')'");
            CoeffExpr e;
            e.kind = CoeffExpr::Kind::pi;
            e.pi_index = idx;
            e.line = line;
            e.col = col;
            return make_expr(std::move(e));
        }
        if (tok_.kind == Tok::Kind::lparen) {
            shift();
            ExprPtr inner = parse_cexpr();
            expect(Tok::Kind::rparen, "')'");
            return inner;
        }
        throw parse_error("expected a coefficient", tok_.line, tok_.col);
    }

    // Full additive expression, only inside parentheses.
    ExprPtr parse_cexpr() {
        long line = tok_.line, col = tok_.col;
        bool neg = false;
        if (tok_.kind == Tok::Kind::minus) {
            neg = true;
            shift();
        }
        ExprPtr acc = parse_cterm();
        if (neg) acc = make_expr({CoeffExpr::Kind::neg, Rat(), 0, acc, nullptr, 0, line, col});
        while (tok_.kind == Tok::Kind::plus || tok_.kind == Tok::Kind::minus) {
            auto kind = tok_.kind == Tok::Kind::plus ? CoeffExpr::Kind::add : CoeffExpr::Kind::sub;
            long l2 = tok_.line, c2 = tok_.col;
            shift();
            ExprPtr rhs = parse_cterm();
            acc = make_expr({kind, Rat(), 0, acc, rhs, 0, l2, c2});
        }
        return acc;
    }

    ExprPtr parse_cterm() {
        ExprPtr acc = parse_coeff_atom();
        while (tok_.kind == Tok::Kind::star) {
            long line = tok_.line, col = tok_.col;
            shift();
            ExprPtr rhs = parse_coeff_atom();
            acc = make_expr({CoeffExpr::Kind::mul, Rat(), 0, acc, rhs, 0, line, col});
        }
        return acc;
    }

    Lexer lex_;
    Tok tok_{};
};

} // namespace detail

inline ParsedPoly parse_poly(std::string_view text) {
    detail::Parser p(text);
    return p.parse();
}

inline std::string print_expr(const ExprPtr& e) {
    std::ostringstream os;
    switch (e->kind) {
        case CoeffExpr::Kind::rational:
            os << e->value.get_num();
            if (e->value.get_den() != 1) os << "/" << e->value.get_den();
            break;
        case CoeffExpr::Kind::pi:
            os << "pi(" << e->pi_index << ")";
            break;
        case CoeffExpr::Kind::add:
            os << "(" << print_expr(e->a) << " + " << print_expr(e->b) << ")";
            break;
        case CoeffExpr::Kind::sub:
            os << "(" << print_expr(e->a) << " - " << print_expr(e->b) << ")";
            break;
        case CoeffExpr::Kind::mul:
            os << print_expr(e->a) << "*" << print_expr(e->b);
            break;
        case CoeffExpr::Kind::neg:
            os << "(-" << print_expr(e->a) << ")";
            break;
        case CoeffExpr::Kind::pow: {
            bool atomic = e->a->kind == CoeffExpr::Kind::pi ||
                          (e->a->kind == CoeffExpr::Kind::rational && e->a->value.get_den() == 1 &&
                           e->a->value >= 0);
            if (atomic)
                os << print_expr(e->a) << "^" << e->exponent;
            else
                os << "(" << print_expr(e->a) << ")^" << e->exponent;
            break;
        }
    }
    return os.str();
}

// Canonical text: terms sorted by ascending degree (stable), each printed as
// coeff*T^i. Printing a parse of this output reproduces it byte for byte.
inline std::string print_poly(const ParsedPoly& poly) {
    std::vector<const ParsedTerm*> order;
    order.reserve(poly.terms.size());
    for (const auto& t : poly.terms) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](const ParsedTerm* a, const ParsedTerm* b) { return a->degree < b->degree; });
    std::ostringstream os;
    bool first = true;
    for (const ParsedTerm* t : order) {
        if (!first) os << " + ";
        first = false;
        os << print_expr(t->coeff);
        if (t->degree >= 1) {
            os << "*T";
            if (t->degree > 1) os << "^" << t->degree;
        }
    }
    if (first) os << "0*T";
    return os.str();
}

inline CycElem eval_expr(const ExprPtr& e, const Params& prm) {
    switch (e->kind) {
        case CoeffExpr::Kind::rational:
            return CycElem::from_rational(prm.ring, e->value);
        case CoeffExpr::Kind::pi:
            if (e->pi_index < 0 || e->pi_index > prm.d)
                throw parse_error("pi(" + std::to_string(e->pi_index) +
                                      ") is not available at this degree bound (d = " +
                                      std::to_string(prm.d) + ")",
                                  e->line, e->col);
            return CycElem(prm.ring->pi_layer(e->pi_index));
        case CoeffExpr::Kind::add:
            return eval_expr(e->a, prm) + eval_expr(e->b, prm);
        case CoeffExpr::Kind::sub:
            return eval_expr(e->a, prm) - eval_expr(e->b, prm);
        case CoeffExpr::Kind::mul:
            return eval_expr(e->a, prm) * eval_expr(e->b, prm);
        case CoeffExpr::Kind::neg:
            return -eval_expr(e->a, prm);
        case CoeffExpr::Kind::pow: {
            CycElem base = eval_expr(e->a, prm);
            CycElem acc = CycElem::one(prm.ring);
            long n = e->exponent;
            while (n > 0) {
                if (n & 1) acc = acc * base;
                n >>= 1;
                if (n) base = base * base;
            }
            return acc;
        }
    }
    throw internal_error("eval_expr: unhandled node");
}

inline oracle::ExactCyc eval_expr_exact(const ExprPtr& e, const Params& prm) {
    using oracle::ExactCyc;
    switch (e->kind) {
        case CoeffExpr::Kind::rational:
            return ExactCyc::from_rational(prm.ring, e->value);
        case CoeffExpr::Kind::pi:
            if (e->pi_index < 0 || e->pi_index > prm.d)
                throw parse_error("pi(" + std::to_string(e->pi_index) + ") out of range", e->line,
                                  e->col);
            return ExactCyc::pi_layer(prm.ring, e->pi_index);
        case CoeffExpr::Kind::add:
            return eval_expr_exact(e->a, prm) + eval_expr_exact(e->b, prm);
        case CoeffExpr::Kind::sub:
            return eval_expr_exact(e->a, prm) - eval_expr_exact(e->b, prm);
        case CoeffExpr::Kind::mul:
            return eval_expr_exact(e->a, prm) * eval_expr_exact(e->b, prm);
        case CoeffExpr::Kind::neg:
            return -eval_expr_exact(e->a, prm);
        case CoeffExpr::Kind::pow: {
            ExactCyc base = eval_expr_exact(e->a, prm);
            ExactCyc acc = ExactCyc::one(prm.ring);
            long n = e->exponent;
            while (n > 0) {
                if (n & 1) acc = acc * base;
                n >>= 1;
                if (n) base = base * base;
            }
            return acc;
        }
    }
    throw internal_error("eval_expr_exact: unhandled node");
}

// Evaluate and validate into an equation polynomial under prm.
inline Poly to_poly(const ParsedPoly& parsed, const Params& prm) {
    Poly out;
    out.bound = prm.D;
    for (const ParsedTerm& t : parsed.terms) {
        CycElem c = eval_expr(t.coeff, prm);
        if (c.is_zero()) {
            // Zero at working precision: droppable only when the value is
            // certified to sit in the maximal ideal.
            if (c.val_floor() < 1)
                throw precision_error(
                    "coefficient is indistinguishable from zero at working precision");
            continue;
        }
        if (t.degree == 0)
            throw parse_error("constant term is not allowed (equations have P(0) = 0)", t.line,
                              t.col);
        if (t.degree > prm.D)
            throw parse_error("degree " + std::to_string(t.degree) +
                                  " exceeds the declared bound " + std::to_string(prm.D),
                              t.line, t.col);
        out.add_to(t.degree, c.canonical());
    }
    return out;
}

inline oracle::ExactPoly to_exact_poly(const ParsedPoly& parsed, const Params& prm) {
    oracle::ExactPoly out;
    for (const ParsedTerm& t : parsed.terms) {
        oracle::ExactCyc c = eval_expr_exact(t.coeff, prm);
        if (c.is_zero()) continue;
        if (t.degree == 0) throw parse_error("constant term is not allowed", t.line, t.col);
        auto it = out.find(t.degree);
        if (it == out.end())
            out.emplace(t.degree, c);
        else
            it->second = it->second + c;
    }
    return out;
}

} // namespace piexp::cli
