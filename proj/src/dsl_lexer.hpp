#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tmac/diagnostic.hpp"

namespace tmac::dsl::detail {

enum class TokenKind {
    identifier,
    string,
    integer,
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    lparen,
    rparen,
    comma,
    dot,
    assign,  // =
    equals,  // ==
    end,
};

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;  // identifier/integer spelling, or the unescaped string value
    int line = 1;
    int column = 1;
};

std::string_view describe(TokenKind kind);

/// Splits `text` into tokens. Comments and whitespace are dropped. Lexical
/// errors are appended to `diagnostics`; the offending characters are skipped.
std::vector<Token> tokenize(std::string_view text, const std::string& source, std::vector<Diagnostic>& diagnostics);

}  // namespace tmac::dsl::detail
