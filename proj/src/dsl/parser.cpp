#include "portalis/dsl/parser.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <limits>

namespace portalis::dsl {

std::string format(const Diagnostic& d, std::string_view path) {
    std::string out(path);
    out += ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
    out += d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ";
    out += d.message;
    return out;
}

bool valid_utf8(std::string_view text) noexcept {
    std::size_t i = 0;
    while (i < text.size()) {
        auto c = static_cast<unsigned char>(text[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > text.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            auto cc = static_cast<unsigned char>(text[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        // Overlong forms, surrogates and values past U+10FFFF.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) return false;
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

namespace {

constexpr std::array kKeywords = {
    "and",       "arg",   "at",     "concept", "constraint", "count",   "dimension", "event",
    "false",     "frame", "in",     "individual", "item",    "key",     "kind",      "meta",
    "metric",    "not",   "object", "on",      "or",         "order",   "page",      "profile",
    "query",     "record", "refresh", "relation", "requires", "rights", "saturation", "scenario",
    "script",    "select", "set",   "source",  "transition", "true",    "update",    "when",
    "where",
};

}  // namespace

bool is_keyword(std::string_view word) noexcept {
    for (const char* k : kKeywords) {
        if (word == k) return true;
    }
    return false;
}

namespace {

enum class Tok { Word, Int, Decimal, String, Punct, End };

struct Token {
    Tok type = Tok::End;
    std::string text;   // lexeme as written
    std::string value;  // decoded string contents
    SourcePos pos;
};

struct Failure {
    Diagnostic diagnostic;
};

[[noreturn]] void fail(SourcePos pos, std::string message, std::string lexeme) {
    throw Failure{{Diagnostic::Severity::Error, std::move(message), pos.line, pos.column, std::move(lexeme)}};
}

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            SourcePos start{line_, column_};
            if (i_ >= text_.size()) {
                out.push_back({Tok::End, "", "", start});
                return out;
            }
            char c = text_[i_];
            if (ident_start(c)) {
                std::size_t b = i_;
                while (i_ < text_.size() && ident_char(text_[i_])) advance();
                out.push_back({Tok::Word, std::string(text_.substr(b, i_ - b)), "", start});
            } else if (digit(c)) {
                out.push_back(number(start));
            } else if (c == '"') {
                out.push_back(string(start));
            } else {
                out.push_back(punct(start));
            }
        }
    }

private:
    void advance() {
        auto c = static_cast<unsigned char>(text_[i_]);
        ++i_;
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else if ((c & 0xC0) != 0x80) {
            ++column_;
        }
    }

    // Continuation bytes do not start a new column.
    void advance_code_point() {
        advance();
        while (i_ < text_.size() && (static_cast<unsigned char>(text_[i_]) & 0xC0) == 0x80) ++i_;
    }

    void skip_space() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') advance_code_point();
            } else {
                return;
            }
        }
    }

    Token number(SourcePos start) {
        std::size_t b = i_;
        bool decimal = false;
        while (i_ < text_.size() && digit(text_[i_])) advance();
        if (i_ + 1 < text_.size() && text_[i_] == '.' && digit(text_[i_ + 1])) {
            decimal = true;
            advance();
            while (i_ < text_.size() && digit(text_[i_])) advance();
        }
        if (i_ < text_.size() && (text_[i_] == 'e' || text_[i_] == 'E')) {
            decimal = true;
            advance();
            if (i_ < text_.size() && (text_[i_] == '+' || text_[i_] == '-')) advance();
            if (i_ >= text_.size() || !digit(text_[i_])) {
                fail(start, "malformed number", std::string(text_.substr(b, i_ - b)));
            }
            while (i_ < text_.size() && digit(text_[i_])) advance();
        }
        if (i_ < text_.size() && ident_char(text_[i_])) {
            while (i_ < text_.size() && ident_char(text_[i_])) advance();
            fail(start, "malformed number", std::string(text_.substr(b, i_ - b)));
        }
        return {decimal ? Tok::Decimal : Tok::Int, std::string(text_.substr(b, i_ - b)), "", start};
    }

    Token string(SourcePos start) {
        std::size_t b = i_;
        advance();
        std::string value;
        while (true) {
            if (i_ >= text_.size() || text_[i_] == '\n') fail(start, "unterminated string", "\"");
            char c = text_[i_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                SourcePos esc{line_, column_};
                advance();
                if (i_ >= text_.size()) fail(start, "unterminated string", "\"");
                char e = text_[i_];
                switch (e) {
                    case '"': value.push_back('"'); break;
                    case '\\': value.push_back('\\'); break;
                    case 'n': value.push_back('\n'); break;
                    case 't': value.push_back('\t'); break;
                    default: fail(esc, "unknown escape sequence", std::string("\\") + e);
                }
                advance();
                continue;
            }
            std::size_t cb = i_;
            advance_code_point();
            value.append(text_.substr(cb, i_ - cb));
        }
        return {Tok::String, std::string(text_.substr(b, i_ - b)), std::move(value), start};
    }

    Token punct(SourcePos start) {
        static constexpr std::array two = {"->", "!=", "<=", ">="};
        for (const char* p : two) {
            if (text_.substr(i_, 2) == p) {
                advance();
                advance();
                return {Tok::Punct, p, "", start};
            }
        }
        char c = text_[i_];
        static constexpr std::string_view single = "(){}[],:=<>+-*.?";
        if (single.find(c) != std::string_view::npos) {
            advance();
            return {Tok::Punct, std::string(1, c), "", start};
        }
        std::size_t b = i_;
        advance_code_point();
        fail(start, "unexpected character", std::string(text_.substr(b, i_ - b)));
    }

    std::string_view text_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

constexpr int kMaxDepth = 200;

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    SchemaAst schema() {
        SchemaAst ast;
        while (peek().type != Tok::End) ast.declarations.push_back(declaration());
        return ast;
    }

private:
    struct Group {
        std::string delimiter;
        SourcePos pos;
    };

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(i_ + ahead, toks_.size() - 1);
        return toks_[k];
    }

    const Token& next() {
        const Token& t = toks_[i_];
        if (i_ + 1 < toks_.size()) ++i_;
        return t;
    }

    bool at_punct(std::string_view p) const { return peek().type == Tok::Punct && peek().text == p; }
    bool at_word(std::string_view w) const { return peek().type == Tok::Word && peek().text == w; }

    [[noreturn]] void error_here(const std::string& expected) const {
        const Token& t = peek();
        if (t.type == Tok::End && !groups_.empty()) {
            const Group& g = groups_.back();
            fail(g.pos, "unclosed '" + g.delimiter + "'", g.delimiter);
        }
        if (t.type == Tok::End) fail(t.pos, "expected " + expected + ", found end of input", "");
        fail(t.pos, "expected " + expected + ", found '" + t.text + "'", t.text);
    }

    void expect_punct(std::string_view p) {
        if (!at_punct(p)) error_here("'" + std::string(p) + "'");
        next();
    }

    void expect_word(std::string_view w) {
        if (!at_word(w)) error_here("'" + std::string(w) + "'");
        next();
    }

    std::string identifier(const std::string& what = "identifier") {
        const Token& t = peek();
        if (t.type != Tok::Word) error_here(what);
        if (is_keyword(t.text)) fail(t.pos, "'" + t.text + "' is a reserved keyword", t.text);
        return next().text;
    }

    void open(std::string_view delimiter) {
        SourcePos pos = peek().pos;
        expect_punct(delimiter);
        groups_.push_back({std::string(delimiter), pos});
    }

    void close(std::string_view delimiter) {
        expect_punct(delimiter);
        groups_.pop_back();
    }

    /// OPEN elem (, elem)* [,] CLOSE, commas optional.
    template <typename F>
    void list(std::string_view open_delim, std::string_view close_delim, F&& element) {
        open(open_delim);
        while (!at_punct(close_delim)) {
            element();
            if (at_punct(",")) next();
        }
        close(close_delim);
    }

    std::int64_t parse_int(const Token& t, bool negative) {
        std::string text = negative ? "-" + t.text : t.text;
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            fail(t.pos, "integer literal out of range", t.text);
        }
        return v;
    }

    double parse_decimal(const Token& t) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
            fail(t.pos, "decimal literal out of range", t.text);
        }
        return v;
    }

    std::uint64_t natural(const std::string& what) {
        const Token& t = peek();
        if (t.type != Tok::Int) error_here(what);
        std::int64_t v = parse_int(next(), false);
        return static_cast<std::uint64_t>(v);
    }

    /// Literal for settings: numbers (optionally negated), strings,
    /// booleans, or an identifier naming an individual.
    core::Value literal() {
        bool negative = false;
        if (at_punct("-")) {
            next();
            negative = true;
            if (peek().type != Tok::Int && peek().type != Tok::Decimal) error_here("number");
        }
        const Token& t = peek();
        switch (t.type) {
            case Tok::Int: return parse_int(next(), negative);
            case Tok::Decimal: {
                double d = parse_decimal(next());
                return negative ? -d : d;
            }
            case Tok::String: return next().value;
            case Tok::Word:
                if (t.text == "true" || t.text == "false") return next().text == "true";
                return core::ObjectRef{identifier()};
            default: error_here("literal");
        }
    }

    Setting setting() {
        Setting s;
        s.pos = peek().pos;
        s.name = identifier("field name");
        expect_punct("=");
        s.value = literal();
        return s;
    }

    Symbolic symbolic(const std::string& what) {
        Symbolic s;
        s.pos = peek().pos;
        s.name = identifier(what);
        expect_punct("=");
        s.value = identifier("value");
        return s;
    }

    std::vector<Setting> settings() {
        std::vector<Setting> out;
        list("{", "}", [&] { out.push_back(setting()); });
        return out;
    }

    Declaration declaration() {
        const Token& t = peek();
        if (t.type != Tok::Word) error_here("a declaration");
        SourcePos pos = t.pos;
        const std::string& k = t.text;
        if (k == "concept") return concept_decl(pos);
        if (k == "individual") return individual_decl(pos);
        if (k == "relation") {
            next();
            return RelationDecl{identifier("relation name"), pos};
        }
        if (k == "frame") {
            next();
            return frame(pos);
        }
        if (k == "dimension") return dimension_decl(pos);
        if (k == "profile") return profile_decl(pos);
        if (k == "metric") return metric_decl(pos);
        if (k == "event") {
            next();
            return EventDecl{identifier("event name"), pos};
        }
        if (k == "script") return script_decl(pos);
        if (k == "source") return source_decl(pos);
        if (k == "page") return page_decl(pos);
        if (k == "meta") return meta_decl(pos);
        if (k == "rights") {
            next();
            RightsDecl d;
            d.pos = pos;
            d.subject = identifier("subject");
            d.rank = identifier("rank");
            return d;
        }
        if (k == "constraint") {
            next();
            ConstraintDecl d;
            d.pos = pos;
            d.subject = identifier("subject");
            d.predicate = identifier("classifier");
            return d;
        }
        error_here("a declaration");
    }

    ConceptDecl concept_decl(SourcePos pos) {
        next();
        ConceptDecl d;
        d.pos = pos;
        d.name = identifier("concept name");
        list("(", ")", [&] {
            FieldSpec f;
            f.pos = peek().pos;
            f.name = identifier("field name");
            expect_punct(":");
            f.kind = identifier("kind");
            if (f.kind == "ref") f.target = identifier("concept name");
            d.fields.push_back(std::move(f));
        });
        return d;
    }

    IndividualDecl individual_decl(SourcePos pos) {
        next();
        IndividualDecl d;
        d.pos = pos;
        d.name = identifier("individual name");
        expect_punct(":");
        d.concept_name = identifier("concept name");
        d.values = settings();
        return d;
    }

    FrameDecl frame(SourcePos pos) {
        FrameDecl f;
        f.pos = pos;
        f.relation = identifier("relation name");
        open("(");
        f.subject = identifier("constant");
        expect_punct(",");
        f.object = identifier("constant");
        close(")");
        return f;
    }

    DimensionDecl dimension_decl(SourcePos pos) {
        next();
        DimensionDecl d;
        d.pos = pos;
        d.name = identifier("dimension name");
        list("{", "}", [&] { d.values.push_back(identifier("dimension value")); });
        return d;
    }

    ProfileDecl profile_decl(SourcePos pos) {
        next();
        ProfileDecl d;
        d.pos = pos;
        d.name = identifier("profile name");
        list("{", "}", [&] { d.settings.push_back(symbolic("setting")); });
        return d;
    }

    MetricDecl metric_decl(SourcePos pos) {
        next();
        MetricDecl d;
        d.pos = pos;
        d.name = identifier("metric name");
        expect_word("order");
        list("(", ")", [&] { d.order.push_back(identifier("dimension name")); });
        if (at_word("saturation")) {
            next();
            d.saturation = natural("saturation level");
        }
        list("{", "}", [&] {
            MetricRow row;
            row.pos = peek().pos;
            list("[", "]", [&] { row.chain.push_back(symbolic("dimension name")); });
            expect_punct("->");
            list("{", "}", [&] { row.symbols.push_back(identifier("symbol")); });
            d.rows.push_back(std::move(row));
        });
        return d;
    }

    ScriptDecl script_decl(SourcePos pos) {
        next();
        ScriptDecl d;
        d.pos = pos;
        d.name = identifier("script name");
        expect_word("on");
        if (at_word("update")) {
            next();
            d.hook = true;
        }
        d.trigger = identifier(d.hook ? "source name" : "event name");
        if (at_word("scenario")) {
            next();
            list("{", "}", [&] { d.scenario.push_back(frame(peek().pos)); });
        }
        list("{", "}", [&] { d.body.push_back(statement()); });
        return d;
    }

    Statement statement() {
        SourcePos pos = peek().pos;
        if (at_word("set")) {
            next();
            SetStmt s;
            s.pos = pos;
            s.page = identifier("page name");
            expect_punct(".");
            s.object = identifier("object name");
            expect_punct(".");
            s.field = identifier("field name");
            expect_punct("=");
            s.value = Expression{expression()};
            return s;
        }
        if (at_word("refresh")) {
            next();
            return RefreshStmt{identifier("page name"), pos};
        }
        if (at_word("transition")) {
            next();
            TransitionStmt s;
            s.pos = pos;
            s.individual = identifier("individual name");
            list("{", "}", [&] {
                Assign a;
                a.pos = peek().pos;
                a.field = identifier("field name");
                expect_punct("=");
                a.value = Expression{expression()};
                s.assignments.push_back(std::move(a));
            });
            return s;
        }
        error_here("'set', 'refresh' or 'transition'");
    }

    SourceDecl source_decl(SourcePos pos) {
        next();
        SourceDecl d;
        d.pos = pos;
        d.name = identifier("source name");
        expect_word("kind");
        d.kind = identifier("repository kind");
        if (at_word("requires")) {
            next();
            d.requires_rank = identifier("rank");
        }
        list("{", "}", [&] {
            RecordDecl r;
            r.pos = peek().pos;
            expect_word("record");
            r.id = identifier("record id");
            r.fields = settings();
            d.records.push_back(std::move(r));
        });
        return d;
    }

    PatternTerm term() {
        if (at_punct("?")) {
            next();
            return {identifier("variable name"), true};
        }
        return {identifier("constant"), false};
    }

    PageDecl page_decl(SourcePos pos) {
        next();
        PageDecl d;
        d.pos = pos;
        d.name = identifier("page name");
        expect_word("requires");
        d.rank = identifier("rank");
        if (at_word("when")) {
            next();
            d.conditions.push_back(symbolic("dimension name"));
            while (at_word("and")) {
                next();
                d.conditions.push_back(symbolic("dimension name"));
            }
        }
        list("{", "}", [&] {
            SourcePos ipos = peek().pos;
            if (at_word("object")) {
                next();
                PageObjectDecl o;
                o.pos = ipos;
                o.name = identifier("object name");
                o.fields = settings();
                d.objects.push_back(std::move(o));
                return;
            }
            expect_word("item");
            PageItemDecl item;
            item.pos = ipos;
            if (at_word("key")) {
                next();
                item.spec = KeyItemDecl{identifier("catalog key")};
            } else if (at_word("query")) {
                next();
                QueryItemDecl q;
                q.relation = term();
                open("(");
                q.subject = term();
                expect_punct(",");
                q.object = term();
                close(")");
                item.spec = q;
            } else if (at_word("select") || at_word("count")) {
                SelectItemDecl s;
                s.count = next().text == "count";
                s.concept_name = identifier("concept name");
                if (at_word("where")) {
                    next();
                    s.where = Expression{expression()};
                }
                item.spec = std::move(s);
            } else {
                error_here("'key', 'query', 'select' or 'count'");
            }
            d.items.push_back(std::move(item));
        });
        return d;
    }

    MetaDecl meta_decl(SourcePos pos) {
        next();
        MetaDecl d;
        d.pos = pos;
        d.name = identifier("classifier name");
        expect_word("at");
        d.level = natural("level");
        expect_word("where");
        d.predicate = Expression{expression()};
        return d;
    }

    // Expressions, loosest binding first.

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxDepth) fail(p.peek().pos, "expression nested too deeply", p.peek().text);
        }
        ~DepthGuard() { --p.depth_; }
    };

    static core::ExprPtr node(core::ExprOp op, std::vector<core::ExprPtr> operands, SourcePos pos) {
        auto e = std::make_shared<core::Expr>();
        e->op = op;
        e->operands = std::move(operands);
        e->pos = pos;
        return e;
    }

    static core::ExprPtr literal_node(core::Value v, SourcePos pos) {
        auto e = std::make_shared<core::Expr>();
        e->literal = std::move(v);
        e->pos = pos;
        return e;
    }

    core::ExprPtr expression() {
        DepthGuard guard(*this);
        core::ExprPtr lhs = conjunction();
        while (at_word("or")) {
            SourcePos pos = next().pos;
            lhs = node(core::ExprOp::Or, {lhs, conjunction()}, pos);
        }
        return lhs;
    }

    core::ExprPtr conjunction() {
        core::ExprPtr lhs = negation();
        while (at_word("and")) {
            SourcePos pos = next().pos;
            lhs = node(core::ExprOp::And, {lhs, negation()}, pos);
        }
        return lhs;
    }

    core::ExprPtr negation() {
        if (at_word("not")) {
            DepthGuard guard(*this);
            SourcePos pos = next().pos;
            return node(core::ExprOp::Not, {negation()}, pos);
        }
        return comparison();
    }

    core::ExprPtr comparison() {
        core::ExprPtr lhs = sum();
        static constexpr std::array<std::pair<const char*, core::ExprOp>, 6> ops = {{
            {"=", core::ExprOp::Eq},
            {"!=", core::ExprOp::Ne},
            {"<", core::ExprOp::Lt},
            {"<=", core::ExprOp::Le},
            {">", core::ExprOp::Gt},
            {">=", core::ExprOp::Ge},
        }};
        for (const auto& [sym, op] : ops) {
            if (at_punct(sym)) {
                SourcePos pos = next().pos;
                return node(op, {lhs, sum()}, pos);
            }
        }
        if (at_word("in")) {
            SourcePos pos = next().pos;
            std::vector<core::ExprPtr> operands{lhs};
            list("{", "}", [&] {
                SourcePos lpos = peek().pos;
                if (peek().type == Tok::Word && peek().text != "true" && peek().text != "false") {
                    error_here("literal");
                }
                operands.push_back(literal_node(literal(), lpos));
            });
            return node(core::ExprOp::In, std::move(operands), pos);
        }
        return lhs;
    }

    core::ExprPtr sum() {
        core::ExprPtr lhs = product();
        while (at_punct("+") || at_punct("-")) {
            const Token& t = next();
            core::ExprOp op = t.text == "+" ? core::ExprOp::Add : core::ExprOp::Sub;
            lhs = node(op, {lhs, product()}, t.pos);
        }
        return lhs;
    }

    core::ExprPtr product() {
        core::ExprPtr lhs = unary();
        while (at_punct("*")) {
            SourcePos pos = next().pos;
            lhs = node(core::ExprOp::Mul, {lhs, unary()}, pos);
        }
        return lhs;
    }

    /// Negation of a numeric literal folds into the literal, so `-5` and
    /// `-(5)` parse alike and printing is stable.
    core::ExprPtr unary() {
        if (!at_punct("-")) return primary();
        DepthGuard guard(*this);
        SourcePos pos = next().pos;
        if (peek().type == Tok::Int) return literal_node(parse_int(next(), true), pos);
        core::ExprPtr operand = unary();
        if (operand->op == core::ExprOp::Literal) {
            if (const auto* i = std::get_if<std::int64_t>(&operand->literal)) {
                auto neg = static_cast<std::int64_t>(0ULL - static_cast<std::uint64_t>(*i));
                return literal_node(neg, pos);
            }
            if (const auto* d = std::get_if<double>(&operand->literal)) return literal_node(-*d, pos);
        }
        return node(core::ExprOp::Neg, {operand}, pos);
    }

    core::ExprPtr primary() {
        const Token& t = peek();
        SourcePos pos = t.pos;
        switch (t.type) {
            case Tok::Int: return literal_node(parse_int(next(), false), pos);
            case Tok::Decimal: return literal_node(parse_decimal(next()), pos);
            case Tok::String: return literal_node(next().value, pos);
            case Tok::Punct:
                if (t.text == "(") {
                    open("(");
                    core::ExprPtr inner = expression();
                    close(")");
                    return inner;
                }
                error_here("expression");
            case Tok::Word: {
                if (t.text == "true" || t.text == "false") return literal_node(next().text == "true", pos);
                if (t.text == "arg") {
                    next();
                    expect_punct(".");
                    if (peek().type != Tok::Word) error_here("argument name");
                    auto e = std::make_shared<core::Expr>();
                    e->op = core::ExprOp::Arg;
                    e->name = next().text;
                    e->pos = pos;
                    return e;
                }
                // `concept` is both a keyword and a builtin field.
                std::string name = t.text == "concept" ? next().text : identifier("expression");
                auto e = std::make_shared<core::Expr>();
                e->op = core::ExprOp::Field;
                e->name = std::move(name);
                e->pos = pos;
                return e;
            }
            case Tok::End: error_here("expression");
        }
        error_here("expression");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::vector<Group> groups_;
    int depth_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text) {
    ParseResult result;
    if (!valid_utf8(text)) {
        result.diagnostics.push_back({Diagnostic::Severity::Error, "EncodingError: input is not valid UTF-8", 1, 1, ""});
        return result;
    }
    try {
        Parser parser(Lexer(text).run());
        result.ast = parser.schema();
    } catch (const Failure& f) {
        result.diagnostics.push_back(f.diagnostic);
    }
    return result;
}

SourcePos position(const Declaration& decl) {
    return std::visit([](const auto& d) { return d.pos; }, decl);
}

}  // namespace portalis::dsl
