#include "dsl_lexer.hpp"

#include <cctype>

namespace tmac::dsl::detail {

std::string_view describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::identifier: return "identifier";
        case TokenKind::string: return "string";
        case TokenKind::integer: return "integer";
        case TokenKind::lbrace: return "'{'";
        case TokenKind::rbrace: return "'}'";
        case TokenKind::lbracket: return "'['";
        case TokenKind::rbracket: return "']'";
        case TokenKind::lparen: return "'('";
        case TokenKind::rparen: return "')'";
        case TokenKind::comma: return "','";
        case TokenKind::dot: return "'.'";
        case TokenKind::assign: return "'='";
        case TokenKind::equals: return "'=='";
        case TokenKind::end: return "end of input";
    }
    return "token";
}

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool digit(char c) {
    return c >= '0' && c <= '9';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const std::string& source, std::vector<Diagnostic>& diagnostics) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int column = 1;

    auto advance = [&]() {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++i;
    };
    auto error = [&](std::string message, int l, int c) {
        diagnostics.push_back(make_error(std::move(message), SourceLocation{l, c, source}));
    };

    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance();
            continue;
        }

        Token tok;
        tok.line = line;
        tok.column = column;

        if (ident_start(c)) {
            const std::size_t start = i;
            while (i < text.size() && ident_char(text[i])) advance();
            tok.kind = TokenKind::identifier;
            tok.text = std::string(text.substr(start, i - start));
            out.push_back(std::move(tok));
            continue;
        }
        if (digit(c)) {
            const std::size_t start = i;
            while (i < text.size() && digit(text[i])) advance();
            if (i < text.size() && ident_start(text[i])) {
                while (i < text.size() && ident_char(text[i])) advance();
                error("malformed token '" + std::string(text.substr(start, i - start)) + "'", tok.line, tok.column);
                continue;
            }
            tok.kind = TokenKind::integer;
            tok.text = std::string(text.substr(start, i - start));
            out.push_back(std::move(tok));
            continue;
        }
        if (c == '"') {
            advance();
            std::string value;
            bool closed = false;
            while (i < text.size()) {
                const char s = text[i];
                if (s == '"') {
                    advance();
                    closed = true;
                    break;
                }
                if (s == '\n') break;
                if (s == '\\') {
                    const int esc_line = line;
                    const int esc_col = column;
                    advance();
                    if (i >= text.size()) break;
                    const char e = text[i];
                    if (e == '"' || e == '\\') {
                        value += e;
                    } else if (e == 'n') {
                        value += '\n';
                    } else {
                        error(std::string("unknown escape sequence '\\") + e + "'", esc_line, esc_col);
                    }
                    advance();
                    continue;
                }
                value += s;
                advance();
            }
            if (!closed) {
                error("unterminated string literal", tok.line, tok.column);
                continue;
            }
            tok.kind = TokenKind::string;
            tok.text = std::move(value);
            out.push_back(std::move(tok));
            continue;
        }

        switch (c) {
            case '{': tok.kind = TokenKind::lbrace; break;
            case '}': tok.kind = TokenKind::rbrace; break;
            case '[': tok.kind = TokenKind::lbracket; break;
            case ']': tok.kind = TokenKind::rbracket; break;
            case '(': tok.kind = TokenKind::lparen; break;
            case ')': tok.kind = TokenKind::rparen; break;
            case ',': tok.kind = TokenKind::comma; break;
            case '.': tok.kind = TokenKind::dot; break;
            case '=':
                if (i + 1 < text.size() && text[i + 1] == '=') {
                    advance();
                    tok.kind = TokenKind::equals;
                    tok.text = "==";
                } else {
                    tok.kind = TokenKind::assign;
                }
                break;
            default: {
                const auto u = static_cast<unsigned char>(c);
                std::string shown(1, c);
                if (u < 0x20 || u >= 0x7f) {
                    constexpr char hex[] = "0123456789ABCDEF";
                    shown = {'\\', 'x', hex[u >> 4], hex[u & 0xF]};
                }
                error("unexpected character '" + shown + "'", line, column);
                advance();
                continue;
            }
        }
        advance();
        if (tok.text.empty()) tok.text = std::string(1, c);
        out.push_back(std::move(tok));
    }

    Token eof;
    eof.kind = TokenKind::end;
    eof.line = line;
    eof.column = column;
    out.push_back(std::move(eof));
    return out;
}

}  // namespace tmac::dsl::detail
