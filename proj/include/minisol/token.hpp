#pragma once

#include <string>
#include <vector>

#include "minisol/source.hpp"

namespace minisol {

enum class TokenKind {
    Keyword,
    Identifier,
    IntegerLiteral,
    StringLiteral,
    Punctuation,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string lexeme;
    Span span;

    bool is(TokenKind k) const { return kind == k; }
    bool is_keyword(std::string_view kw) const {
        return kind == TokenKind::Keyword && lexeme == kw;
    }
    bool is_punct(std::string_view p) const {
        return kind == TokenKind::Punctuation && lexeme == p;
    }
};

// Tokenizes UTF-8 Solidity source. Comments are discarded; throws
// FrontendError(Lex) on unrecognized characters and unterminated
// strings/comments.
std::vector<Token> tokenize(const std::string& source);

} // namespace minisol
