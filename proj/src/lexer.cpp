#include "minisol/token.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "minisol/error.hpp"

namespace minisol {

namespace {

const std::unordered_set<std::string>& keywords() {
    static const std::unordered_set<std::string> kws = [] {
        std::unordered_set<std::string> s = {
            "contract", "enum",     "struct",   "mapping",  "function", "modifier",
            "constructor", "returns", "return", "if",       "else",     "for",
            "while",    "require",  "assert",   "revert",   "bool",     "address",
            "payable",  "public",   "private",  "internal", "external", "pure",
            "view",     "memory",   "storage",  "calldata", "true",     "false",
            "pragma",   "uint",     "int",
            // recognized so we can reject them with a clear message
            "is", "library", "event", "emit", "immutable", "constant", "import",
            "interface", "using",
        };
        for (int bits : {8, 16, 32, 64, 128, 256}) {
            s.insert("uint" + std::to_string(bits));
            s.insert("int" + std::to_string(bits));
        }
        return s;
    }();
    return kws;
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
    return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

[[noreturn]] void lex_error(uint32_t at, const std::string& msg) {
    throw FrontendError(FrontendError::Stage::Lex, Span{at, at + 1}, msg);
}

} // namespace

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    uint32_t i = 0;
    const uint32_t n = static_cast<uint32_t>(src.size());

    auto push = [&](TokenKind kind, uint32_t begin, uint32_t end) {
        out.push_back(Token{kind, src.substr(begin, end - begin), Span{begin, end}});
    };

    while (i < n) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            i++;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n')
                i++;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            uint32_t start = i;
            i += 2;
            while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/'))
                i++;
            if (i + 1 >= n)
                lex_error(start, "unterminated block comment");
            i += 2;
            continue;
        }
        if (is_ident_start(c)) {
            uint32_t begin = i;
            while (i < n && is_ident_char(src[i]))
                i++;
            std::string word = src.substr(begin, i - begin);
            if (word == "pragma") {
                // version expressions use their own token set; the whole
                // directive is trivia to MiniSol
                while (i < n && src[i] != ';')
                    i++;
                if (i >= n)
                    lex_error(begin, "unterminated pragma directive");
                i++;
                continue;
            }
            push(keywords().count(word) ? TokenKind::Keyword : TokenKind::Identifier,
                 begin, i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            uint32_t begin = i;
            while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) ||
                             src[i] == '_'))
                i++;
            if (i < n && is_ident_start(src[i]))
                lex_error(i, "unexpected character in integer literal");
            push(TokenKind::IntegerLiteral, begin, i);
            continue;
        }
        if (c == '"') {
            uint32_t begin = i;
            i++;
            while (i < n && src[i] != '"' && src[i] != '\n')
                i++;
            if (i >= n || src[i] != '"')
                lex_error(begin, "unterminated string literal");
            i++;
            push(TokenKind::StringLiteral, begin, i);
            continue;
        }
        // Longest-match punctuation.
        static const std::array<std::string_view, 13> two = {
            "++", "--", "+=", "-=", "*=", "/=", "%=", "==", "!=", "<=", ">=", "&&", "||"};
        std::string_view rest(src);
        rest = rest.substr(i);
        bool matched = false;
        for (auto p : two) {
            if (rest.substr(0, 2) == p) {
                push(TokenKind::Punctuation, i, i + 2);
                i += 2;
                matched = true;
                break;
            }
        }
        if (matched)
            continue;
        static const std::string one = "{}()[];,.=<>+-*/%!:?";
        if (one.find(c) != std::string::npos) {
            push(TokenKind::Punctuation, i, i + 1);
            i++;
            continue;
        }
        lex_error(i, std::string("unrecognized character '") + c + "'");
    }
    out.push_back(Token{TokenKind::EndOfFile, "", Span{n, n}});
    return out;
}

} // namespace minisol
