#include "arckit/script.hpp"

#include <cctype>

#include "arckit/errors.hpp"

namespace arckit {

namespace {

enum class Tok {
    ident,
    integer,
    lbracket,
    rbracket,
    lparen,
    rparen,
    comma,
    equals,
    caret,
    plus,
    minus,
    star,
    slash,
    end
};

struct Token {
    Tok kind;
    std::string text;
    SourceLoc loc;
    std::size_t offset = 0;  // byte position of the first character
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::ident: return "identifier";
        case Tok::integer: return "integer";
        case Tok::lbracket: return "'['";
        case Tok::rbracket: return "']'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::comma: return "','";
        case Tok::equals: return "'='";
        case Tok::caret: return "'^'";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::slash: return "'/'";
        case Tok::end: return "end of input";
    }
    return "?";
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space();
        SourceLoc loc = loc_;
        std::size_t offset = pos_;
        if (pos_ >= text_.size()) return Token{Tok::end, "", loc, offset};
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                word += take();
            return Token{Tok::ident, std::move(word), loc, offset};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                num += take();
            return Token{Tok::integer, std::move(num), loc, offset};
        }
        take();
        switch (c) {
            case '[': return Token{Tok::lbracket, "[", loc, offset};
            case ']': return Token{Tok::rbracket, "]", loc, offset};
            case '(': return Token{Tok::lparen, "(", loc, offset};
            case ')': return Token{Tok::rparen, ")", loc, offset};
            case ',': return Token{Tok::comma, ",", loc, offset};
            case '=': return Token{Tok::equals, "=", loc, offset};
            case '^': return Token{Tok::caret, "^", loc, offset};
            case '+': return Token{Tok::plus, "+", loc, offset};
            case '-': return Token{Tok::minus, "-", loc, offset};
            case '*': return Token{Tok::star, "*", loc, offset};
            case '/': return Token{Tok::slash, "/", loc, offset};
            default:
                throw ParseError(std::string("unexpected character '") + c + "'",
                                 loc.line, loc.column, "a token of the grammar");
        }
    }

    // rewind so a raw, whitespace-delimited word can be read instead
    void rewind_to(const Token& t) {
        pos_ = t.offset;
        loc_ = t.loc;
    }

    // raw whitespace-delimited word, for file paths
    Token next_path() {
        skip_space();
        SourceLoc loc = loc_;
        std::size_t offset = pos_;
        if (pos_ >= text_.size())
            throw ParseError("expected a file path", loc.line, loc.column, "path");
        std::string word;
        while (pos_ < text_.size() &&
               !std::isspace(static_cast<unsigned char>(text_[pos_])))
            word += take();
        return Token{Tok::ident, std::move(word), loc, offset};
    }

  private:
    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++loc_.line;
            loc_.column = 1;
        } else {
            ++loc_.column;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {  // comment to end of line
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
                continue;
            }
            if (!std::isspace(static_cast<unsigned char>(c))) break;
            take();
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    SourceLoc loc_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lexer_(text) { advance(); }

    PolyExprPtr parse_single_poly() {
        PolyExprPtr p = parse_poly();
        if (cur_.kind != Tok::end)
            throw err("trailing input after the polynomial", "end of input");
        return p;
    }

    Script parse() {
        Script script;
        script.ring = parse_ring();
        bool have_command = false;
        while (!have_command) {
            if (cur_.kind == Tok::end)
                throw err("script ends without a command",
                          "ideal/point/arc declaration or a command");
            if (cur_.kind != Tok::ident)
                throw err("expected a declaration or a command",
                          "ideal/point/arc declaration or a command");
            const std::string word = cur_.text;
            if (word == "ideal") {
                script.ideals.push_back(parse_ideal(script));
            } else if (word == "point") {
                script.points.push_back(parse_point(script));
            } else if (word == "arc") {
                script.arcs.push_back(parse_arc(script));
            } else {
                script.command = parse_command();
                have_command = true;
            }
        }
        if (cur_.kind != Tok::end)
            throw err("trailing input after the command", "end of input");
        return script;
    }

  private:
    [[noreturn]] ParseError raise(const ParseError& e) { throw e; }
    ParseError err(const std::string& msg, const std::string& expected) const {
        return ParseError(msg, cur_.loc.line, cur_.loc.column, expected);
    }

    void advance() { cur_ = lexer_.next(); }

    Token expect(Tok kind, const std::string& expected) {
        if (cur_.kind != kind) throw err("unexpected " + describe(cur_), expected);
        Token t = cur_;
        advance();
        return t;
    }

    Token expect_keyword(const std::string& word) {
        if (cur_.kind != Tok::ident || cur_.text != word)
            throw err("unexpected " + describe(cur_), "'" + word + "'");
        Token t = cur_;
        advance();
        return t;
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::ident) return "identifier '" + t.text + "'";
        if (t.kind == Tok::integer) return "integer " + t.text;
        return tok_name(t.kind);
    }

    std::uint32_t parse_uint(const std::string& what) {
        Token t = expect(Tok::integer, what);
        if (t.text.size() > 9)
            throw ParseError(what + " out of range", t.loc.line, t.loc.column, what);
        return static_cast<std::uint32_t>(std::stoul(t.text));
    }

    RingDecl parse_ring() {
        if (cur_.kind != Tok::ident || cur_.text != "ring")
            throw err("undeclared ring: a script starts with a ring declaration",
                      "'ring'");
        advance();
        RingDecl decl;
        Token f = expect(Tok::ident, "'Q' or 'F'");
        if (f.text == "Q") {
            decl.field = Field::rationals();
        } else if (f.text == "F") {
            Token p = expect(Tok::integer, "prime characteristic");
            try {
                decl.field = Field::prime(std::stoull(p.text));
            } catch (const std::exception& e) {
                throw ParseError(e.what(), p.loc.line, p.loc.column, "a prime");
            }
        } else {
            throw ParseError("unknown field '" + f.text + "'", f.loc.line,
                             f.loc.column, "'Q' or 'F'");
        }
        expect(Tok::lbracket, "'['");
        while (true) {
            Token v = expect(Tok::ident, "variable name");
            for (const auto& existing : decl.vars)
                if (existing == v.text)
                    throw ParseError("duplicate variable '" + v.text + "'",
                                     v.loc.line, v.loc.column, "a fresh name");
            decl.vars.push_back(v.text);
            if (cur_.kind == Tok::comma) {
                advance();
                continue;
            }
            break;
        }
        expect(Tok::rbracket, "']'");
        expect_keyword("trunc");
        decl.trunc = parse_uint("truncation order");
        return decl;
    }

    void check_fresh(const Script& s, const Token& name) {
        if (s.find_ideal(name.text) || s.find_point(name.text) ||
            s.find_arc(name.text))
            throw ParseError("name '" + name.text + "' is already declared",
                             name.loc.line, name.loc.column, "a fresh name");
    }

    IdealDecl parse_ideal(const Script& s) {
        advance();  // 'ideal'
        Token name = expect(Tok::ident, "ideal name");
        check_fresh(s, name);
        expect(Tok::equals, "'='");
        IdealDecl decl;
        decl.name = name.text;
        decl.loc = name.loc;
        decl.polys.push_back(parse_poly());
        while (cur_.kind == Tok::comma) {
            advance();
            decl.polys.push_back(parse_poly());
        }
        return decl;
    }

    PointDecl parse_point(const Script& s) {
        advance();  // 'point'
        Token name = expect(Tok::ident, "point name");
        check_fresh(s, name);
        expect(Tok::equals, "'='");
        expect(Tok::lparen, "'('");
        PointDecl decl;
        decl.name = name.text;
        decl.loc = name.loc;
        while (true) {
            decl.coords.push_back(parse_rational());
            if (cur_.kind == Tok::comma) {
                advance();
                continue;
            }
            break;
        }
        expect(Tok::rparen, "')'");
        return decl;
    }

    ArcDecl parse_arc(const Script& s) {
        advance();  // 'arc'
        Token name = expect(Tok::ident, "arc name");
        check_fresh(s, name);
        expect(Tok::equals, "'='");
        expect(Tok::lparen, "'('");
        ArcDecl decl;
        decl.name = name.text;
        decl.loc = name.loc;
        while (true) {
            decl.polys_in_t.push_back(parse_poly());
            if (cur_.kind == Tok::comma) {
                advance();
                continue;
            }
            break;
        }
        expect(Tok::rparen, "')'");
        return decl;
    }

    Rational parse_rational() {
        bool negate = false;
        if (cur_.kind == Tok::minus) {
            negate = true;
            advance();
        }
        Token n = expect(Tok::integer, "rational number");
        std::string text = n.text;
        if (cur_.kind == Tok::slash) {
            advance();
            Token d = expect(Tok::integer, "denominator");
            text += "/" + d.text;
        }
        Rational r(text);
        return negate ? -r : r;
    }

    Command parse_command() {
        Token word = expect(Tok::ident, "command");
        const std::string& w = word.text;
        auto named = [&](const char* what) {
            Token t = expect(Tok::ident, what);
            return t.text;
        };
        if (w == "curvesel") {
            CmdCurvesel c;
            c.n = named("ideal name");
            c.z = named("ideal name");
            c.point = named("point name");
            expect_keyword("order");
            c.order = parse_uint("arc order");
            return c;
        }
        if (w == "wdiv") {
            CmdWdiv c;
            c.g = parse_poly();
            c.f = parse_poly();
            expect_keyword("var");
            c.var = named("variable name");
            return c;
        }
        if (w == "wprep") {
            CmdWprep c;
            c.f = parse_poly();
            expect_keyword("var");
            c.var = named("variable name");
            return c;
        }
        if (w == "eliminate") {
            CmdEliminate c;
            c.ideal = named("ideal name");
            expect_keyword("var");
            c.var = named("variable name");
            return c;
        }
        if (w == "jets") {
            CmdJets c;
            c.ideal = named("ideal name");
            expect_keyword("order");
            c.order = parse_uint("jet level");
            return c;
        }
        if (w == "arcsel") {
            CmdArcsel c;
            c.variety = named("ideal name");
            c.n_extra = named("ideal name");
            c.z_extra = named("ideal name");
            c.gamma = named("arc name");
            expect_keyword("level");
            c.level = parse_uint("jet level");
            expect_keyword("order");
            c.order = parse_uint("arc order");
            return c;
        }
        if (w == "verify") {
            CmdVerify c;
            if (cur_.kind == Tok::end)
                throw err("expected a certificate path", "path");
            lexer_.rewind_to(cur_);  // the path is a raw word, not tokens
            c.path = lexer_.next_path().text;
            advance();
            return c;
        }
        throw ParseError("unknown command '" + w + "'", word.loc.line,
                         word.loc.column,
                         "curvesel, wdiv, wprep, eliminate, jets, arcsel or verify");
    }

    // poly := ['-'] term (('+'|'-') term)*
    PolyExprPtr parse_poly() {
        PolyExprPtr acc;
        if (cur_.kind == Tok::minus) {
            SourceLoc loc = cur_.loc;
            advance();
            auto node = std::make_shared<PolyExpr>();
            node->kind = PolyExpr::Kind::neg;
            node->loc = loc;
            node->lhs = parse_term();
            acc = node;
        } else {
            acc = parse_term();
        }
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            bool plus = cur_.kind == Tok::plus;
            SourceLoc loc = cur_.loc;
            advance();
            auto node = std::make_shared<PolyExpr>();
            node->kind = plus ? PolyExpr::Kind::add : PolyExpr::Kind::sub;
            node->loc = loc;
            node->lhs = acc;
            node->rhs = parse_term();
            acc = node;
        }
        return acc;
    }

    PolyExprPtr parse_term() {
        PolyExprPtr acc = parse_factor();
        while (cur_.kind == Tok::star) {
            SourceLoc loc = cur_.loc;
            advance();
            auto node = std::make_shared<PolyExpr>();
            node->kind = PolyExpr::Kind::mul;
            node->loc = loc;
            node->lhs = acc;
            node->rhs = parse_factor();
            acc = node;
        }
        return acc;
    }

    PolyExprPtr parse_factor() {
        PolyExprPtr base = parse_base();
        if (cur_.kind == Tok::caret) {
            SourceLoc loc = cur_.loc;
            advance();
            Token e = expect(Tok::integer, "exponent");
            if (e.text.size() > 6)
                throw ParseError("exponent out of range", e.loc.line, e.loc.column,
                                 "a small exponent");
            auto node = std::make_shared<PolyExpr>();
            node->kind = PolyExpr::Kind::pow;
            node->loc = loc;
            node->lhs = base;
            node->exponent = std::stoul(e.text);
            return node;
        }
        return base;
    }

    PolyExprPtr parse_base() {
        if (paren_depth_ > 200)
            throw err("expression nesting too deep", "a flatter expression");
        if (cur_.kind == Tok::integer) {
            Token n = cur_;
            advance();
            std::string text = n.text;
            if (cur_.kind == Tok::slash) {
                advance();
                Token d = expect(Tok::integer, "denominator");
                text += "/" + d.text;
            }
            auto node = std::make_shared<PolyExpr>();
            node->kind = PolyExpr::Kind::number;
            node->loc = n.loc;
            node->value = Rational(text);
            return node;
        }
        if (cur_.kind == Tok::ident) {
            Token v = cur_;
            advance();
            auto node = std::make_shared<PolyExpr>();
            node->kind = PolyExpr::Kind::variable;
            node->loc = v.loc;
            node->name = v.text;
            return node;
        }
        if (cur_.kind == Tok::lparen) {
            advance();
            ++paren_depth_;
            PolyExprPtr inner = parse_poly();
            --paren_depth_;
            expect(Tok::rparen, "')'");
            return inner;
        }
        throw err("expected a polynomial factor",
                  "number, variable name or '(' expression ')'");
    }

    Lexer lexer_;
    Token cur_{Tok::end, "", {}};
    int paren_depth_ = 0;
};

}  // namespace

const IdealDecl* Script::find_ideal(const std::string& name) const {
    for (const auto& d : ideals)
        if (d.name == name) return &d;
    return nullptr;
}
const PointDecl* Script::find_point(const std::string& name) const {
    for (const auto& d : points)
        if (d.name == name) return &d;
    return nullptr;
}
const ArcDecl* Script::find_arc(const std::string& name) const {
    for (const auto& d : arcs)
        if (d.name == name) return &d;
    return nullptr;
}

Script parse_script(const std::string& text) {
    Parser parser(text);
    return parser.parse();
}

PolyExprPtr parse_polynomial_text(const std::string& text) {
    Parser parser(text);
    return parser.parse_single_poly();
}

namespace {

std::string where(const PolyExpr& e) {
    return " (line " + std::to_string(e.loc.line) + ", column " +
           std::to_string(e.loc.column) + ")";
}

Series bind_rec(
    const PolyExprPtr& expr, const RingPtr& ring,
    const std::function<std::optional<std::uint32_t>(const std::string&)>& resolve) {
    if (!expr) throw Error("empty polynomial expression");
    switch (expr->kind) {
        case PolyExpr::Kind::number:
            return Series::constant(ring, expr->value);
        case PolyExpr::Kind::variable: {
            auto idx = resolve(expr->name);
            if (!idx)
                throw Error("unknown variable '" + expr->name + "'" + where(*expr));
            return Series::variable(ring, *idx);
        }
        case PolyExpr::Kind::neg:
            return -bind_rec(expr->lhs, ring, resolve);
        case PolyExpr::Kind::add:
            return bind_rec(expr->lhs, ring, resolve) +
                   bind_rec(expr->rhs, ring, resolve);
        case PolyExpr::Kind::sub:
            return bind_rec(expr->lhs, ring, resolve) -
                   bind_rec(expr->rhs, ring, resolve);
        case PolyExpr::Kind::mul:
            return bind_rec(expr->lhs, ring, resolve) *
                   bind_rec(expr->rhs, ring, resolve);
        case PolyExpr::Kind::pow: {
            Series base = bind_rec(expr->lhs, ring, resolve);
            Series acc = Series::constant(ring, Rational(1));
            for (unsigned long i = 0; i < expr->exponent; ++i) acc = acc * base;
            return acc;
        }
    }
    throw Error("corrupt expression tree");
}

}  // namespace

Series bind_poly(
    const PolyExprPtr& expr, const RingPtr& ring,
    const std::function<std::optional<std::uint32_t>(const std::string&)>& resolve) {
    Series out = bind_rec(expr, ring, resolve);
    if (!out.is_exact())
        throw Error("polynomial does not fit below truncation order " +
                    std::to_string(ring->trunc_order()) +
                    (expr ? where(*expr) : ""));
    return out;
}

}  // namespace arckit
