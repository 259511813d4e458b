#pragma once

#include "rdnet/errors.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

namespace rdnet::detail {

enum class Tok {
    Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen,
    Comma, Colon, Semicolon, Equals, ArrowBoth, ArrowFwd, ArrowBack, End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Hand-written scanner shared by the network and expression parsers.
/// '#' starts a comment running to end of line.
class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    bool accept(Tok k) {
        if (current_.kind != k) return false;
        advance();
        return true;
    }

    Token expect(Tok k, const char* what) {
        if (current_.kind != k) fail(current_, std::string("expected ") + what);
        return next();
    }

    [[noreturn]] static void fail(const Token& at, const std::string& message) {
        throw ParseError(at.line, at.column, message, at.kind == Tok::End ? "<end>" : at.text);
    }

private:
    char ch(std::size_t off = 0) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

    void bump() {
        if (ch() == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(ch()) & 0xC0) != 0x80) {
            ++col_;  // count UTF-8 code points, not bytes
        }
        ++pos_;
    }

    void skip_trivia() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(ch()))) bump();
            if (ch() == '#') {
                while (pos_ < src_.size() && ch() != '\n') bump();
                continue;
            }
            return;
        }
    }

    void advance() {
        skip_trivia();
        current_ = Token{};
        current_.line = line_;
        current_.column = col_;
        if (pos_ >= src_.size()) {
            current_.kind = Tok::End;
            return;
        }
        const std::size_t start = pos_;
        const char c = ch();
        auto single = [&](Tok k) {
            bump();
            current_.kind = k;
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (std::isalnum(static_cast<unsigned char>(ch())) || ch() == '_') bump();
            current_.kind = Tok::Ident;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(ch(1))))) {
            while (std::isdigit(static_cast<unsigned char>(ch()))) bump();
            if (ch() == '.') {
                bump();
                while (std::isdigit(static_cast<unsigned char>(ch()))) bump();
            }
            if ((ch() == 'e' || ch() == 'E') &&
                (std::isdigit(static_cast<unsigned char>(ch(1))) ||
                 ((ch(1) == '+' || ch(1) == '-') && std::isdigit(static_cast<unsigned char>(ch(2)))))) {
                bump();
                if (ch() == '+' || ch() == '-') bump();
                while (std::isdigit(static_cast<unsigned char>(ch()))) bump();
            }
            current_.kind = Tok::Number;
        } else if (c == '<' && ch(1) == '-' && ch(2) == '>') {
            bump(); bump(); bump();
            current_.kind = Tok::ArrowBoth;
        } else if (c == '<' && ch(1) == '-') {
            bump(); bump();
            current_.kind = Tok::ArrowBack;
        } else if (c == '-' && ch(1) == '>') {
            bump(); bump();
            current_.kind = Tok::ArrowFwd;
        } else {
            switch (c) {
            case '+': single(Tok::Plus); break;
            case '-': single(Tok::Minus); break;
            case '*': single(Tok::Star); break;
            case '/': single(Tok::Slash); break;
            case '^': single(Tok::Caret); break;
            case '(': single(Tok::LParen); break;
            case ')': single(Tok::RParen); break;
            case ',': single(Tok::Comma); break;
            case ':': single(Tok::Colon); break;
            case ';': single(Tok::Semicolon); break;
            case '=': single(Tok::Equals); break;
            default: {
                bump();
                while (pos_ < src_.size() && (static_cast<unsigned char>(ch()) & 0xC0) == 0x80) bump();
                current_.kind = Tok::Ident;
                current_.text = std::string(src_.substr(start, pos_ - start));
                fail(current_, "unexpected character");
            }
            }
        }
        current_.text = std::string(src_.substr(start, pos_ - start));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token current_;
};

} // namespace rdnet::detail
