#include <algorithm>
#include <charconv>
#include <initializer_list>
#include <set>

#include "dsl_lexer.hpp"
#include "tmac/dsl.hpp"

namespace tmac {

std::string_view to_string(Selector s) {
    switch (s) {
        case Selector::source: return "source";
        case Selector::dest: return "dest";
        case Selector::flow: return "flow";
    }
    return "source";
}

std::string_view to_string(Field f) {
    switch (f) {
        case Field::kind: return "kind";
        case Field::layer: return "layer";
        case Field::tags: return "tags";
        case Field::payload: return "payload";
    }
    return "kind";
}

bool comparison_fits(Field field, Comparison comparison) {
    const bool scalar = field == Field::kind || field == Field::layer;
    return scalar == (comparison == Comparison::equals);
}

bool field_fits(Selector selector, Field field) {
    return (selector == Selector::flow) == (field == Field::payload);
}

Expr Expr::test(Selector selector, Field field, Comparison comparison, std::string value) {
    Expr e;
    e.op = Op::test;
    e.selector = selector;
    e.field = field;
    e.comparison = comparison;
    e.value = std::move(value);
    return e;
}

Expr Expr::in_group(std::string group) {
    Expr e;
    e.op = Op::in_group;
    e.value = std::move(group);
    return e;
}

Expr Expr::negate(Expr operand) {
    Expr e;
    e.op = Op::negate;
    e.operands.push_back(std::move(operand));
    return e;
}

Expr Expr::all_of(std::vector<Expr> operands) {
    Expr e;
    e.op = Op::all_of;
    e.operands = std::move(operands);
    return e;
}

Expr Expr::any_of(std::vector<Expr> operands) {
    Expr e;
    e.op = Op::any_of;
    e.operands = std::move(operands);
    return e;
}

}  // namespace tmac

namespace tmac::dsl {

const Model* Document::model() const {
    for (const auto& item : items) {
        if (const auto* m = std::get_if<Model>(&item)) return m;
    }
    return nullptr;
}

const Catalog* Document::catalog() const {
    for (const auto& item : items) {
        if (const auto* c = std::get_if<Catalog>(&item)) return c;
    }
    return nullptr;
}

std::vector<const RuleSet*> Document::rule_sets() const {
    std::vector<const RuleSet*> out;
    for (const auto& item : items) {
        if (const auto* r = std::get_if<RuleSet>(&item)) out.push_back(r);
    }
    return out;
}

std::vector<const PetScenario*> Document::scenarios() const {
    std::vector<const PetScenario*> out;
    for (const auto& item : items) {
        if (const auto* s = std::get_if<PetScenario>(&item)) out.push_back(s);
    }
    return out;
}

namespace {

using detail::Token;
using detail::TokenKind;

struct SyntaxError {};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string source, std::vector<Diagnostic>& diagnostics)
        : tokens_(std::move(tokens)), source_(std::move(source)), diagnostics_(diagnostics) {}

    Document parse_document() {
        Document doc;
        doc.source_name = source_;
        bool have_model = false;
        bool have_catalog = false;

        while (!at(TokenKind::end)) {
            const Token& head = peek();
            try {
                if (is_keyword("model")) {
                    Model m = parse_model();
                    if (have_model) {
                        error_at(head, "duplicate model block (at most one per document)");
                    }
                    have_model = true;
                    doc.items.emplace_back(std::move(m));
                } else if (is_keyword("catalog")) {
                    Catalog c = parse_catalog();
                    if (have_catalog) {
                        error_at(head, "duplicate catalog block (at most one per document)");
                    }
                    have_catalog = true;
                    doc.items.emplace_back(std::move(c));
                } else if (is_keyword("rules")) {
                    doc.items.emplace_back(parse_rules());
                } else if (is_keyword("scenario")) {
                    doc.items.emplace_back(parse_scenario());
                } else {
                    fail(head, "expected 'model', 'catalog', 'rules' or 'scenario', found " + spell(head));
                }
            } catch (const SyntaxError&) {
                recover_top_level();
            }
        }
        return doc;
    }

private:
    // -- token plumbing ----------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t at = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[at];
    }

    bool at(TokenKind kind) const { return peek().kind == kind; }

    bool is_keyword(std::string_view word, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokenKind::identifier && t.text == word;
    }

    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    SourceLocation where(const Token& t) const { return SourceLocation{t.line, t.column, source_}; }

    static std::string spell(const Token& t) {
        switch (t.kind) {
            case TokenKind::identifier: return "'" + t.text + "'";
            case TokenKind::integer: return "'" + t.text + "'";
            case TokenKind::string: return "string " + quote(t.text);
            default: return std::string(detail::describe(t.kind));
        }
    }

    void error_at(const Token& t, std::string message) { diagnostics_.push_back(make_error(std::move(message), where(t))); }

    [[noreturn]] void fail(const Token& t, std::string message) {
        error_at(t, std::move(message));
        throw SyntaxError{};
    }

    const Token& expect(TokenKind kind, std::string_view context) {
        if (!at(kind)) {
            fail(peek(), "expected " + std::string(detail::describe(kind)) + " " + std::string(context) + ", found " +
                             spell(peek()));
        }
        return next();
    }

    const Token& expect_keyword(std::string_view word) {
        if (!is_keyword(word)) {
            fail(peek(), "expected '" + std::string(word) + "', found " + spell(peek()));
        }
        return next();
    }

    std::string expect_identifier(std::string_view context) { return expect(TokenKind::identifier, context).text; }

    // Skips to the next top-level block keyword.
    void recover_top_level() {
        int depth = 0;
        while (!at(TokenKind::end)) {
            if (depth == 0 &&
                (is_keyword("model") || is_keyword("catalog") || is_keyword("rules") || is_keyword("scenario"))) {
                return;
            }
            if (at(TokenKind::lbrace)) ++depth;
            if (at(TokenKind::rbrace) && depth > 0) --depth;
            next();
        }
    }

    // Skips to the next statement inside a block, or to the block's closing
    // brace. Returns false if the input ended.
    bool recover_in_block(std::initializer_list<std::string_view> statement_keywords) {
        int depth = 0;
        while (!at(TokenKind::end)) {
            if (depth == 0 && at(TokenKind::rbrace)) return true;
            if (depth == 0 && peek().kind == TokenKind::identifier) {
                const Token& prev = tokens_[pos_ == 0 ? 0 : pos_ - 1];
                const bool value_position = prev.kind == TokenKind::assign || prev.kind == TokenKind::comma ||
                                            prev.kind == TokenKind::lbracket || prev.kind == TokenKind::equals;
                if (!value_position && std::find(statement_keywords.begin(), statement_keywords.end(), peek().text) !=
                                           statement_keywords.end()) {
                    return true;
                }
            }
            if (at(TokenKind::lbrace)) ++depth;
            if (at(TokenKind::rbrace)) --depth;
            next();
        }
        return false;
    }

    // -- shared pieces ------------------------------------------------------

    void expect_assign(std::string_view attribute) { expect(TokenKind::assign, "after '" + std::string(attribute) + "'"); }

    std::vector<Token> parse_idlist_tokens(std::string_view attribute) {
        expect(TokenKind::lbracket, "to open the '" + std::string(attribute) + "' list");
        std::vector<Token> out;
        if (at(TokenKind::rbracket)) {
            next();
            return out;
        }
        out.push_back(expect(TokenKind::identifier, "in list"));
        while (at(TokenKind::comma)) {
            next();
            out.push_back(expect(TokenKind::identifier, "in list"));
        }
        expect(TokenKind::rbracket, "to close the '" + std::string(attribute) + "' list");
        return out;
    }

    std::vector<std::string> parse_idlist(std::string_view attribute) {
        std::vector<std::string> out;
        for (auto& t : parse_idlist_tokens(attribute)) out.push_back(std::move(t.text));
        return out;
    }

    std::vector<std::string> parse_stringlist(std::string_view attribute) {
        expect(TokenKind::lbracket, "to open the '" + std::string(attribute) + "' list");
        std::vector<std::string> out;
        if (at(TokenKind::rbracket)) {
            next();
            return out;
        }
        out.push_back(expect(TokenKind::string, "in list").text);
        while (at(TokenKind::comma)) {
            next();
            out.push_back(expect(TokenKind::string, "in list").text);
        }
        expect(TokenKind::rbracket, "to close the '" + std::string(attribute) + "' list");
        return out;
    }

    // Parses `name=value` attributes drawn from `allowed`, each at most once,
    // until the next token is not one of them. Unknown `word=` pairs are
    // reported at the attribute name.
    template <typename Handler>
    void parse_attributes(std::initializer_list<std::string_view> allowed, Handler&& handle) {
        std::set<std::string> seen;
        while (peek().kind == TokenKind::identifier && peek(1).kind == TokenKind::assign) {
            const Token& name = peek();
            if (std::find(allowed.begin(), allowed.end(), name.text) == allowed.end()) {
                fail(name, "unknown attribute '" + name.text + "'");
            }
            if (!seen.insert(name.text).second) {
                fail(name, "attribute '" + name.text + "' given twice");
            }
            next();
            next();
            handle(name);
        }
    }

    // -- model --------------------------------------------------------------

    Model parse_model() {
        const Token& kw = expect_keyword("model");
        Model m;
        m.location = where(kw);
        m.name = expect(TokenKind::string, "for the model name").text;
        expect(TokenKind::lbrace, "to open the model block");

        while (!at(TokenKind::rbrace)) {
            if (at(TokenKind::end)) fail(peek(), "unterminated model block (missing '}')");
            try {
                parse_model_statement(m);
            } catch (const SyntaxError&) {
                if (!recover_in_block({"element", "flow", "group", "mark", "unmark", "note"})) {
                    throw;
                }
            }
        }
        next();
        return m;
    }

    void parse_model_statement(Model& m) {
        const Token& head = peek();
        if (is_keyword("element")) {
            m.elements.push_back(parse_element());
        } else if (is_keyword("flow")) {
            m.flows.push_back(parse_flow());
        } else if (is_keyword("group")) {
            m.scopes.push_back(parse_group());
        } else if (is_keyword("mark") || is_keyword("unmark")) {
            m.marks.push_back(parse_mark());
        } else if (is_keyword("note")) {
            next();
            m.notes.push_back(expect(TokenKind::string, "after 'note'").text);
        } else {
            fail(head, "expected a model statement (element, flow, group, mark, unmark, note), found " + spell(head));
        }
    }

    Element parse_element() {
        const Token& kw = next();
        Element e;
        e.location = where(kw);
        e.id = expect_identifier("for the element id");

        expect_keyword("kind");
        expect_assign("kind");
        const Token& kind_tok = expect(TokenKind::identifier, "for the element kind");
        const auto kind = parse_element_kind(kind_tok.text);
        if (!kind) {
            fail(kind_tok, "unknown element kind '" + kind_tok.text + "' (expected entity, process or store)");
        }
        e.kind = *kind;

        parse_attributes({"tags", "layer", "name"}, [&](const Token& attr) {
            if (attr.text == "tags") {
                e.tags = parse_idlist("tags");
            } else if (attr.text == "layer") {
                e.layer = expect_identifier("for the layer");
            } else {
                e.name = expect(TokenKind::string, "for the element name").text;
            }
        });
        return e;
    }

    Flow parse_flow() {
        const Token& kw = next();
        Flow f;
        f.location = where(kw);
        f.id = expect_identifier("for the flow id");
        expect_keyword("from");
        expect_assign("from");
        f.source = expect_identifier("for the flow source");
        expect_keyword("to");
        expect_assign("to");
        f.destination = expect_identifier("for the flow destination");

        parse_attributes({"label", "payload"}, [&](const Token& attr) {
            if (attr.text == "label") {
                f.label = expect(TokenKind::string, "for the flow label").text;
            } else {
                f.payload = parse_idlist("payload");
            }
        });
        return f;
    }

    Scope parse_group() {
        const Token& kw = next();
        Scope s;
        s.location = where(kw);
        s.name = expect_identifier("for the group name");
        expect(TokenKind::lbrace, "to open the group member list");
        if (!at(TokenKind::rbrace)) {
            s.members.push_back(expect_identifier("for a group member"));
            while (at(TokenKind::comma)) {
                next();
                s.members.push_back(expect_identifier("for a group member"));
            }
        }
        expect(TokenKind::rbrace, "to close the group member list");
        return s;
    }

    MarkStatement parse_mark() {
        const Token& kw = next();
        MarkStatement mark;
        mark.location = where(kw);
        mark.mode = kw.text == "mark" ? MarkMode::include : MarkMode::exclude;
        mark.flow = expect_identifier("for the marked flow");
        expect_keyword("threats");
        expect_assign("threats");
        mark.threats = parse_idlist("threats");
        return mark;
    }

    // -- catalog ------------------------------------------------------------

    Catalog parse_catalog() {
        const Token& kw = expect_keyword("catalog");
        Catalog c;
        c.location = where(kw);
        expect(TokenKind::lbrace, "to open the catalog block");
        while (!at(TokenKind::rbrace)) {
            if (at(TokenKind::end)) fail(peek(), "unterminated catalog block (missing '}')");
            try {
                if (!is_keyword("threat")) {
                    fail(peek(), "expected 'threat', found " + spell(peek()));
                }
                c.threats.push_back(parse_threat());
            } catch (const SyntaxError&) {
                if (!recover_in_block({"threat"})) throw;
            }
        }
        next();
        return c;
    }

    Threat parse_threat() {
        const Token& kw = next();
        Threat t;
        t.location = where(kw);
        t.id = expect_identifier("for the threat id");
        expect_keyword("name");
        expect_assign("name");
        t.name = expect(TokenKind::string, "for the threat name").text;

        parse_attributes({"i", "aggravates", "misactors", "assets"}, [&](const Token& attr) {
            if (attr.text == "i") {
                const Token& value = expect(TokenKind::integer, "for 'i'");
                int parsed = 0;
                const auto [ptr, ec] = std::from_chars(value.text.data(), value.text.data() + value.text.size(), parsed);
                if (ec != std::errc{} || ptr != value.text.data() + value.text.size()) {
                    fail(value, "integer '" + value.text + "' is out of range");
                }
                t.initial_consequence = parsed;
            } else if (attr.text == "aggravates") {
                t.aggravates = parse_idlist("aggravates");
            } else if (attr.text == "misactors") {
                for (const Token& token : parse_idlist_tokens("misactors")) {
                    const auto m = parse_misactor(token.text);
                    if (!m) fail(token, "unknown misactor '" + token.text + "'");
                    t.misactors.push_back(*m);
                }
            } else {
                t.assets = parse_stringlist("assets");
            }
        });
        return t;
    }

    // -- rules --------------------------------------------------------------

    RuleSet parse_rules() {
        const Token& kw = expect_keyword("rules");
        RuleSet rs;
        rs.location = where(kw);
        expect(TokenKind::lbrace, "to open the rules block");
        while (!at(TokenKind::rbrace)) {
            if (at(TokenKind::end)) fail(peek(), "unterminated rules block (missing '}')");
            try {
                if (!is_keyword("rule")) {
                    fail(peek(), "expected 'rule', found " + spell(peek()));
                }
                const Token& rule_kw = next();
                Rule r;
                r.location = where(rule_kw);
                r.threat = expect_identifier("for the rule's threat id");
                expect_keyword("when");
                r.predicate = parse_or();
                rs.rules.push_back(std::move(r));
            } catch (const SyntaxError&) {
                if (!recover_in_block({"rule"})) throw;
            }
        }
        next();
        return rs;
    }

    Expr parse_or() {
        std::vector<Expr> terms;
        terms.push_back(parse_and());
        while (is_keyword("or")) {
            next();
            terms.push_back(parse_and());
        }
        return terms.size() == 1 ? std::move(terms.front()) : Expr::any_of(std::move(terms));
    }

    Expr parse_and() {
        std::vector<Expr> terms;
        terms.push_back(parse_not());
        while (is_keyword("and")) {
            next();
            terms.push_back(parse_not());
        }
        return terms.size() == 1 ? std::move(terms.front()) : Expr::all_of(std::move(terms));
    }

    Expr parse_not() {
        if (is_keyword("not")) {
            next();
            return Expr::negate(parse_atom());
        }
        return parse_atom();
    }

    Expr parse_atom() {
        if (at(TokenKind::lparen)) {
            next();
            Expr inner = parse_or();
            expect(TokenKind::rparen, "to close the parenthesized expression");
            return inner;
        }
        if (is_keyword("in")) {
            next();
            expect_keyword("group");
            return Expr::in_group(expect_identifier("for the group name"));
        }

        const Token& sel_tok = peek();
        Selector selector{};
        if (is_keyword("source")) {
            selector = Selector::source;
        } else if (is_keyword("dest")) {
            selector = Selector::dest;
        } else if (is_keyword("flow")) {
            selector = Selector::flow;
        } else {
            fail(sel_tok, "expected 'source', 'dest', 'flow', 'in group' or '(', found " + spell(sel_tok));
        }
        next();
        expect(TokenKind::dot, "after the selector");

        const Token& field_tok = expect(TokenKind::identifier, "for the field");
        Field field{};
        if (field_tok.text == "kind") {
            field = Field::kind;
        } else if (field_tok.text == "layer") {
            field = Field::layer;
        } else if (field_tok.text == "tags") {
            field = Field::tags;
        } else if (field_tok.text == "payload") {
            field = Field::payload;
        } else {
            fail(field_tok, "unknown field '" + field_tok.text + "' (expected kind, layer, tags or payload)");
        }
        if (!field_fits(selector, field)) {
            fail(field_tok, "field '" + field_tok.text + "' is not available on '" + sel_tok.text + "'");
        }

        const Token& cmp_tok = peek();
        Comparison comparison{};
        if (at(TokenKind::equals)) {
            comparison = Comparison::equals;
        } else if (is_keyword("has")) {
            comparison = Comparison::has;
        } else {
            fail(cmp_tok, "expected '==' or 'has', found " + spell(cmp_tok));
        }
        if (!comparison_fits(field, comparison)) {
            fail(cmp_tok, comparison == Comparison::equals
                              ? "'==' applies to kind or layer; use 'has' for " + field_tok.text
                              : "'has' applies to tags or payload; use '==' for " + field_tok.text);
        }
        next();

        const Token& value_tok = expect(TokenKind::identifier, "for the comparison value");
        if (field == Field::kind && !parse_element_kind(value_tok.text)) {
            fail(value_tok, "unknown element kind '" + value_tok.text + "' (expected entity, process or store)");
        }
        if (field == Field::layer && !is_known_layer(value_tok.text)) {
            fail(value_tok, "unknown layer '" + value_tok.text + "'");
        }
        return Expr::test(selector, field, comparison, value_tok.text);
    }

    // -- scenario -----------------------------------------------------------

    PetScenario parse_scenario() {
        const Token& kw = expect_keyword("scenario");
        PetScenario s;
        s.location = where(kw);
        s.name = expect(TokenKind::string, "for the scenario name").text;
        expect(TokenKind::lbrace, "to open the scenario block");
        expect_keyword("clears");
        expect_assign("clears");
        s.clears = parse_idlist("clears");
        parse_attributes({"threats", "pets"}, [&](const Token& attr) {
            if (attr.text == "threats") {
                s.threat_filter = parse_idlist("threats");
            } else {
                s.pets = parse_stringlist("pets");
            }
        });
        expect(TokenKind::rbrace, "to close the scenario block");
        return s;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::string source_;
    std::vector<Diagnostic>& diagnostics_;
};

}  // namespace

ParseResult parse(std::string_view text, std::string source_name) {
    ParseResult result;
    auto tokens = detail::tokenize(text, source_name, result.diagnostics);
    Parser parser(std::move(tokens), source_name, result.diagnostics);
    Document doc = parser.parse_document();
    sort_diagnostics(result.diagnostics);
    if (!has_errors(result.diagnostics)) {
        result.document = std::move(doc);
    }
    return result;
}

}  // namespace tmac::dsl
