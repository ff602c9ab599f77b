#include "hori/dsl.hpp"

#include <cctype>
#include <sstream>

namespace hori::dsl {

std::string Span::to_string() const
{
    std::ostringstream out;
    out << line << ":" << col << "-" << end_line << ":" << end_col;
    return out.str();
}

// ---------------------------------------------------------------------------
// lexer

namespace {

enum class Tok {
    ident,
    number,   // integer or p/q rational
    lbrace,
    rbrace,
    lparen,
    rparen,
    semi,
    colon,
    equals,
    plus,
    minus,
    star,
    caret,
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Scalar value;
    Span span;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    // returns false on lexical error and fills `error`
    bool run(std::vector<Token>& out, Diagnostic& error)
    {
        while (true) {
            skip_space();
            if (pos_ >= text_.size())
                break;
            Span start = here();
            char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                    name.push_back(advance());
                out.push_back({Tok::ident, std::move(name), Scalar(0), close(start)});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    digits.push_back(advance());
                Scalar value{BigInt(digits)};
                if (pos_ < text_.size() && text_[pos_] == '/') {
                    advance();
                    std::string den;
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        den.push_back(advance());
                    if (den.empty()) {
                        error = {"expected digits after '/' in rational literal", close(start)};
                        return false;
                    }
                    if (BigInt(den) == 0) {
                        error = {"rational literal with zero denominator", close(start)};
                        return false;
                    }
                    value = value / Scalar(BigInt(den));
                }
                out.push_back({Tok::number, "", value, close(start)});
                continue;
            }
            Tok kind;
            switch (c) {
                case '{': kind = Tok::lbrace; break;
                case '}': kind = Tok::rbrace; break;
                case '(': kind = Tok::lparen; break;
                case ')': kind = Tok::rparen; break;
                case ';': kind = Tok::semi; break;
                case ':': kind = Tok::colon; break;
                case '=': kind = Tok::equals; break;
                case '+': kind = Tok::plus; break;
                case '-': kind = Tok::minus; break;
                case '*': kind = Tok::star; break;
                case '^': kind = Tok::caret; break;
                default:
                    advance();
                    error = {std::string("unexpected character '") + c + "'", close(start)};
                    return false;
            }
            advance();
            out.push_back({kind, std::string(1, c), Scalar(0), close(start)});
        }
        Token eof;
        eof.kind = Tok::end;
        eof.span = here();
        eof.span.end_line = eof.span.line;
        eof.span.end_col = eof.span.col;
        out.push_back(std::move(eof));
        return true;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') { // line comment
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    char advance()
    {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    Span here() const { return {line_, col_, line_, col_}; }
    Span close(Span start) const
    {
        start.end_line = line_;
        start.end_col = col_ > start.col || line_ > start.line ? col_ - 1 : start.col;
        if (start.end_line > start.line)
            start.end_col = std::max(1, col_ - 1);
        return start;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ---------------------------------------------------------------------------
// parser

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ParseResult run()
    {
        ParseResult result;
        Document doc;
        try {
            while (peek().kind != Tok::end)
                doc.blocks.push_back(parse_block());
            result.document = std::move(doc);
        } catch (const Diagnostic& d) {
            result.diagnostics.push_back(d);
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& message, const Span& span) const
    {
        throw Diagnostic{message, span};
    }

    const Token& peek(std::size_t k = 0) const
    {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    std::string describe(const Token& t) const
    {
        switch (t.kind) {
            case Tok::end: return "end of input";
            case Tok::number: return "number";
            case Tok::ident: return "'" + t.text + "'";
            default: return "'" + t.text + "'";
        }
    }

    const Token& expect(Tok kind, const char* what)
    {
        if (peek().kind != kind)
            fail("expected " + std::string(what) + ", found " + describe(peek()), peek().span);
        return take();
    }

    std::string expect_ident(const char* what)
    {
        return expect(Tok::ident, what).text;
    }

    bool at_keyword(const char* kw) const
    {
        return peek().kind == Tok::ident && peek().text == kw;
    }

    Block parse_block()
    {
        if (at_keyword("algebra"))
            return parse_algebra();
        if (at_keyword("config"))
            return parse_config();
        if (at_keyword("element"))
            return parse_element();
        fail("expected 'algebra', 'config' or 'element', found " + describe(peek()),
             peek().span);
    }

    AlgebraBlock parse_algebra()
    {
        AlgebraBlock block;
        block.span = take().span; // 'algebra'
        block.name = expect_ident("algebra name");
        expect(Tok::lbrace, "'{'");
        while (peek().kind != Tok::rbrace) {
            if (at_keyword("gen")) {
                GenDecl g;
                g.span = take().span;
                g.name = expect_ident("generator name");
                expect(Tok::colon, "':'");
                const Token& deg = expect(Tok::number, "generator degree");
                if (denominator(deg.value) != 1)
                    fail("generator degree must be an integer", deg.span);
                g.degree = static_cast<int>(numerator(deg.value));
                g.span.end_line = deg.span.end_line;
                g.span.end_col = deg.span.end_col;
                expect(Tok::semi, "';'");
                block.gens.push_back(std::move(g));
            } else if (at_keyword("d")) {
                DiffDecl d;
                d.span = take().span;
                d.gen = expect_ident("generator name");
                expect(Tok::equals, "'='");
                d.value = parse_expr();
                d.span.end_line = d.value->span.end_line;
                d.span.end_col = d.value->span.end_col;
                expect(Tok::semi, "';'");
                block.diffs.push_back(std::move(d));
            } else {
                fail("expected 'gen', 'd' or '}', found " + describe(peek()), peek().span);
            }
        }
        expect(Tok::rbrace, "'}'");
        return block;
    }

    ConfigBlock parse_config()
    {
        ConfigBlock block;
        block.span = take().span; // 'config'
        block.name = expect_ident("config name");
        if (!at_keyword("on"))
            fail("expected 'on', found " + describe(peek()), peek().span);
        take();
        block.algebra = expect_ident("algebra name");
        expect(Tok::lbrace, "'{'");
        auto clause = [&](const char* key) {
            if (!at_keyword(key))
                fail("expected '" + std::string(key) + "', found " + describe(peek()),
                     peek().span);
            take();
            expect(Tok::equals, "'='");
            ExprPtr e = parse_expr();
            expect(Tok::semi, "';'");
            return e;
        };
        block.xL = clause("xL");
        block.xR = clause("xR");
        block.y = clause("y");
        expect(Tok::rbrace, "'}'");
        return block;
    }

    ElementBlock parse_element()
    {
        ElementBlock block;
        block.span = take().span; // 'element'
        block.name = expect_ident("element name");
        expect(Tok::equals, "'='");
        block.value = parse_expr();
        expect(Tok::semi, "';'");
        return block;
    }

    ExprPtr parse_expr() { return parse_additive(); }

    ExprPtr parse_additive()
    {
        ExprPtr lhs = parse_multiplicative();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            bool plus = take().kind == Tok::plus;
            ExprPtr rhs = parse_multiplicative();
            auto node = std::make_shared<Expr>();
            node->kind = plus ? Expr::Kind::add : Expr::Kind::sub;
            node->span = lhs->span;
            node->span.end_line = rhs->span.end_line;
            node->span.end_col = rhs->span.end_col;
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_multiplicative()
    {
        ExprPtr lhs = parse_unary();
        while (peek().kind == Tok::star) {
            take();
            ExprPtr rhs = parse_unary();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::mul;
            node->span = lhs->span;
            node->span.end_line = rhs->span.end_line;
            node->span.end_col = rhs->span.end_col;
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_unary()
    {
        if (peek().kind == Tok::minus) {
            Span span = take().span;
            ExprPtr inner = parse_unary();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::neg;
            node->span = span;
            node->span.end_line = inner->span.end_line;
            node->span.end_col = inner->span.end_col;
            node->lhs = std::move(inner);
            return node;
        }
        return parse_power();
    }

    ExprPtr parse_power()
    {
        ExprPtr base = parse_atom();
        if (peek().kind != Tok::caret)
            return base;
        take();
        int sign = 1;
        if (peek().kind == Tok::minus) {
            take();
            sign = -1;
        }
        const Token& e = expect(Tok::number, "integer exponent");
        if (denominator(e.value) != 1)
            fail("exponent must be an integer", e.span);
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::pow;
        node->exponent = sign * static_cast<int>(numerator(e.value));
        node->span = base->span;
        node->span.end_line = e.span.end_line;
        node->span.end_col = e.span.end_col;
        node->lhs = std::move(base);
        return node;
    }

    ExprPtr parse_atom()
    {
        if (peek().kind == Tok::number) {
            const Token& t = take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::literal;
            node->value = t.value;
            node->span = t.span;
            return node;
        }
        if (peek().kind == Tok::ident) {
            const Token& t = take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::ident;
            node->name = t.text;
            node->span = t.span;
            return node;
        }
        if (peek().kind == Tok::lparen) {
            take();
            ExprPtr inner = parse_expr();
            expect(Tok::rparen, "')'");
            return inner;
        }
        fail("expected a number, identifier or '(', found " + describe(peek()), peek().span);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

ParseResult parse_document(std::string_view text)
{
    std::vector<Token> tokens;
    Diagnostic lex_error;
    Lexer lexer(text);
    if (!lexer.run(tokens, lex_error)) {
        ParseResult result;
        result.diagnostics.push_back(std::move(lex_error));
        return result;
    }
    return Parser(std::move(tokens)).run();
}

// ---------------------------------------------------------------------------
// AST equality and rendering

bool equal(const ExprPtr& a, const ExprPtr& b)
{
    if (!a || !b)
        return !a && !b;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
        case Expr::Kind::literal: return a->value == b->value;
        case Expr::Kind::ident: return a->name == b->name;
        case Expr::Kind::neg: return equal(a->lhs, b->lhs);
        case Expr::Kind::pow: return a->exponent == b->exponent && equal(a->lhs, b->lhs);
        default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
}

namespace {

int precedence(Expr::Kind kind)
{
    switch (kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul: return 2;
        case Expr::Kind::neg: return 3;
        case Expr::Kind::pow: return 4;
        default: return 5;
    }
}

void render_expr(std::ostringstream& out, const ExprPtr& e, int parent_prec, bool right_side)
{
    int prec = precedence(e->kind);
    bool parens = prec < parent_prec || (prec == parent_prec && right_side && prec <= 2);
    if (parens)
        out << "(";
    switch (e->kind) {
        case Expr::Kind::literal:
            out << scalar_to_string(e->value);
            break;
        case Expr::Kind::ident:
            out << e->name;
            break;
        case Expr::Kind::add:
            render_expr(out, e->lhs, prec, false);
            out << " + ";
            render_expr(out, e->rhs, prec, true);
            break;
        case Expr::Kind::sub:
            render_expr(out, e->lhs, prec, false);
            out << " - ";
            render_expr(out, e->rhs, prec, true);
            break;
        case Expr::Kind::mul:
            render_expr(out, e->lhs, prec, false);
            out << "*";
            render_expr(out, e->rhs, prec, true);
            break;
        case Expr::Kind::neg:
            out << "-";
            render_expr(out, e->lhs, prec, true);
            break;
        case Expr::Kind::pow:
            render_expr(out, e->lhs, prec + 1, false);
            out << "^" << e->exponent;
            break;
    }
    if (parens)
        out << ")";
}

} // namespace

std::string render(const ExprPtr& e)
{
    std::ostringstream out;
    render_expr(out, e, 0, false);
    return out.str();
}

std::string render(const Document& doc)
{
    std::ostringstream out;
    for (const Block& block : doc.blocks) {
        if (const auto* alg = std::get_if<AlgebraBlock>(&block)) {
            out << "algebra " << alg->name << " {\n";
            for (const GenDecl& g : alg->gens)
                out << "  gen " << g.name << ":" << g.degree << ";\n";
            for (const DiffDecl& d : alg->diffs)
                out << "  d " << d.gen << " = " << render(d.value) << ";\n";
            out << "}\n";
        } else if (const auto* cfg = std::get_if<ConfigBlock>(&block)) {
            out << "config " << cfg->name << " on " << cfg->algebra << " {\n";
            out << "  xL = " << render(cfg->xL) << ";\n";
            out << "  xR = " << render(cfg->xR) << ";\n";
            out << "  y = " << render(cfg->y) << ";\n";
            out << "}\n";
        } else if (const auto* el = std::get_if<ElementBlock>(&block)) {
            out << "element " << el->name << " = " << render(el->value) << ";\n";
        }
    }
    return out.str();
}

bool equal(const Document& a, const Document& b)
{
    if (a.blocks.size() != b.blocks.size())
        return false;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        const Block& x = a.blocks[i];
        const Block& y = b.blocks[i];
        if (x.index() != y.index())
            return false;
        if (const auto* ax = std::get_if<AlgebraBlock>(&x)) {
            const auto& bx = std::get<AlgebraBlock>(y);
            if (ax->name != bx.name || ax->gens.size() != bx.gens.size() ||
                ax->diffs.size() != bx.diffs.size())
                return false;
            for (std::size_t j = 0; j < ax->gens.size(); ++j)
                if (ax->gens[j].name != bx.gens[j].name || ax->gens[j].degree != bx.gens[j].degree)
                    return false;
            for (std::size_t j = 0; j < ax->diffs.size(); ++j)
                if (ax->diffs[j].gen != bx.diffs[j].gen || !equal(ax->diffs[j].value, bx.diffs[j].value))
                    return false;
        } else if (const auto* cx = std::get_if<ConfigBlock>(&x)) {
            const auto& dx = std::get<ConfigBlock>(y);
            if (cx->name != dx.name || cx->algebra != dx.algebra || !equal(cx->xL, dx.xL) ||
                !equal(cx->xR, dx.xR) || !equal(cx->y, dx.y))
                return false;
        } else if (const auto* ex = std::get_if<ElementBlock>(&x)) {
            const auto& fx = std::get<ElementBlock>(y);
            if (ex->name != fx.name || !equal(ex->value, fx.value))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// elaboration

namespace {

struct ElabError {
    Diagnostic diagnostic;
};

[[noreturn]] void elab_fail(const std::string& message, const Span& span)
{
    throw ElabError{{message, span}};
}

bool is_reserved(const std::string& name)
{
    return name == kE1L || name == kE1R || name == kXi2L || name == kXi2R || name == kUVar;
}

// Plain evaluation over a fixed algebra signature.
GradedElement eval_plain(const ExprPtr& e, const SignaturePtr& sig)
{
    switch (e->kind) {
        case Expr::Kind::literal:
            return GradedElement::constant(sig, e->value);
        case Expr::Kind::ident: {
            auto ord = sig->find(e->name);
            if (!ord)
                elab_fail("unknown identifier '" + e->name + "'", e->span);
            return GradedElement::generator(sig, *ord);
        }
        case Expr::Kind::add:
            return eval_plain(e->lhs, sig) + eval_plain(e->rhs, sig);
        case Expr::Kind::sub:
            return eval_plain(e->lhs, sig) - eval_plain(e->rhs, sig);
        case Expr::Kind::mul:
            return eval_plain(e->lhs, sig) * eval_plain(e->rhs, sig);
        case Expr::Kind::neg:
            return -eval_plain(e->lhs, sig);
        case Expr::Kind::pow: {
            if (e->exponent < 0) {
                if (e->lhs->kind == Expr::Kind::ident) {
                    auto ord = sig->find(e->lhs->name);
                    if (ord && sig->gen(*ord).invertible)
                        return GradedElement::term(sig, Monomial(*sig, {{*ord, e->exponent}}),
                                                   Scalar(1));
                }
                elab_fail("negative exponent on a non-invertible expression", e->span);
            }
            return eval_plain(e->lhs, sig).pow(e->exponent);
        }
    }
    elab_fail("unreachable expression kind", e->span);
}

// Laurent evaluation over a gerbe context: the inverted generator may carry
// arbitrary integer exponents.
LaurentElement eval_laurent(const ExprPtr& e, const LaurentContext& ctx)
{
    const SignaturePtr& sig = ctx.algebra.signature();
    switch (e->kind) {
        case Expr::Kind::literal:
            return LaurentElement::from_element(ctx, GradedElement::constant(sig, e->value));
        case Expr::Kind::ident: {
            auto ord = sig->find(e->name);
            if (!ord)
                elab_fail("unknown identifier '" + e->name + "'", e->span);
            return LaurentElement::from_element(ctx, GradedElement::generator(sig, *ord));
        }
        case Expr::Kind::add:
            return eval_laurent(e->lhs, ctx) + eval_laurent(e->rhs, ctx);
        case Expr::Kind::sub:
            return eval_laurent(e->lhs, ctx) - eval_laurent(e->rhs, ctx);
        case Expr::Kind::mul:
            return eval_laurent(e->lhs, ctx) * eval_laurent(e->rhs, ctx);
        case Expr::Kind::neg:
            return -eval_laurent(e->lhs, ctx);
        case Expr::Kind::pow: {
            if (e->lhs->kind == Expr::Kind::ident) {
                auto ord = sig->find(e->lhs->name);
                if (ord && *ord == ctx.xi)
                    return LaurentElement::xi_power(ctx, -e->exponent);
                if (ord && sig->gen(*ord).invertible)
                    return LaurentElement::from_element(
                        ctx, GradedElement::term(sig, Monomial(*sig, {{*ord, e->exponent}}),
                                                 Scalar(1)));
            }
            if (e->exponent < 0)
                elab_fail("negative exponent on a non-invertible expression", e->span);
            LaurentElement base = eval_laurent(e->lhs, ctx);
            LaurentElement out =
                LaurentElement::from_element(ctx, GradedElement::constant(sig, Scalar(1)));
            for (int i = 0; i < e->exponent; ++i)
                out = out * base;
            return out;
        }
    }
    elab_fail("unreachable expression kind", e->span);
}

void collect_idents(const ExprPtr& e, std::vector<std::string>& out)
{
    if (!e)
        return;
    if (e->kind == Expr::Kind::ident)
        out.push_back(e->name);
    collect_idents(e->lhs, out);
    collect_idents(e->rhs, out);
}

} // namespace

GradedElement evaluate(const ExprPtr& e, const SignaturePtr& sig)
{
    try {
        return eval_plain(e, sig);
    } catch (const ElabError& err) {
        throw Error(err.diagnostic.message);
    }
}

GradedElement evaluate_text(const std::string& text, const SignaturePtr& sig)
{
    ParseResult parsed = parse_document("element c = " + text + ";");
    if (!parsed.document)
        throw Error("cannot parse expression '" + text + "': " +
                    parsed.diagnostics.front().message);
    const auto& block = std::get<ElementBlock>(parsed.document->blocks.at(0));
    return evaluate(block.value, sig);
}

const HoriTransformer& Elaborated::tower_for(const std::string& config_name) const
{
    auto it = towers.find(config_name);
    if (it == towers.end())
        throw Error("no tower for config '" + config_name + "'");
    return *it->second;
}

ElaborationResult elaborate(const Document& doc)
{
    ElaborationResult result;
    Elaborated elab;
    std::string active_config;
    std::string active_algebra;
    try {
        for (const Block& block : doc.blocks) {
            if (const auto* alg = std::get_if<AlgebraBlock>(&block)) {
                if (elab.algebras.count(alg->name))
                    elab_fail("algebra '" + alg->name + "' already defined", alg->span);
                std::vector<std::pair<std::string, int>> gens;
                for (const GenDecl& g : alg->gens) {
                    if (is_reserved(g.name))
                        elab_fail("generator name '" + g.name + "' is reserved", g.span);
                    if (g.degree < 1)
                        elab_fail("generator degree must be positive", g.span);
                    gens.push_back({g.name, g.degree});
                }
                SignaturePtr sig;
                try {
                    sig = make_algebra(gens);
                } catch (const Error& err) {
                    elab_fail(err.what(), alg->span);
                }
                std::vector<GradedElement> diffs(sig->size(), GradedElement::zero(sig));
                for (const DiffDecl& d : alg->diffs) {
                    auto ord = sig->find(d.gen);
                    if (!ord)
                        elab_fail("differential assigned to unknown generator '" + d.gen + "'",
                                  d.span);
                    GradedElement value = eval_plain(d.value, sig);
                    int expected = sig->gen(*ord).degree + 1;
                    if (!value.degree().is(expected))
                        elab_fail("d(" + d.gen + ") has degree " + value.degree().to_string() +
                                      ", expected " + std::to_string(expected),
                                  d.span);
                    diffs[static_cast<std::size_t>(*ord)] = std::move(value);
                }
                try {
                    elab.algebras.emplace(alg->name, FreeDGCA(alg->name, sig, std::move(diffs)));
                } catch (const Error& err) {
                    elab_fail(err.what(), alg->span);
                }
                elab.algebra_order.push_back(alg->name);
                active_algebra = alg->name;
            } else if (const auto* cfg = std::get_if<ConfigBlock>(&block)) {
                if (elab.configs.count(cfg->name))
                    elab_fail("config '" + cfg->name + "' already defined", cfg->span);
                auto it = elab.algebras.find(cfg->algebra);
                if (it == elab.algebras.end())
                    elab_fail("config references unknown algebra '" + cfg->algebra + "'",
                              cfg->span);
                const FreeDGCA& A = it->second;
                GradedElement fxL = eval_plain(cfg->xL, A.signature());
                GradedElement fxR = eval_plain(cfg->xR, A.signature());
                GradedElement fy = eval_plain(cfg->y, A.signature());
                try {
                    TDualityConfig config(A, std::move(fxL), std::move(fxR), std::move(fy));
                    elab.towers.emplace(
                        cfg->name,
                        std::make_shared<HoriTransformer>(build_gerbe_tower(config)));
                    elab.configs.emplace(cfg->name, std::move(config));
                } catch (const Error& err) {
                    elab_fail(err.what(), cfg->span);
                }
                elab.config_order.push_back(cfg->name);
                active_config = cfg->name;
            } else if (const auto* el = std::get_if<ElementBlock>(&block)) {
                if (elab.elements.count(el->name))
                    elab_fail("element '" + el->name + "' already defined", el->span);
                ElaboratedElement out;
                if (active_config.empty()) {
                    if (active_algebra.empty())
                        elab_fail("element declared before any algebra or config", el->span);
                    out.space = ElaboratedElement::Space::plain;
                    out.plain = eval_plain(el->value, elab.algebras.at(active_algebra).signature());
                } else {
                    const HoriTransformer& machine = elab.tower_for(active_config);
                    std::vector<std::string> idents;
                    collect_idents(el->value, idents);
                    bool uses_L = false, uses_R = false;
                    for (const auto& name : idents) {
                        if (name == kXi2L)
                            uses_L = true;
                        if (name == kXi2R)
                            uses_R = true;
                    }
                    if (uses_L && uses_R)
                        elab_fail("element mixes xi2L and xi2R", el->span);
                    out.config = active_config;
                    if (uses_R) {
                        out.space = ElaboratedElement::Space::right_gerbe;
                        out.laurent = eval_laurent(el->value, machine.GRext_hat());
                    } else {
                        out.space = ElaboratedElement::Space::left_gerbe;
                        out.laurent = eval_laurent(el->value, machine.GLext_hat());
                    }
                }
                elab.elements.emplace(el->name, std::move(out));
                elab.element_order.push_back(el->name);
            }
        }
    } catch (const ElabError& err) {
        result.diagnostics.push_back(err.diagnostic);
        return result;
    }
    result.elaborated = std::move(elab);
    return result;
}

} // namespace hori::dsl
