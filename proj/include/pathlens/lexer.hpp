// Copyright (c) 2026 The PathLens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "pathlens/diag.hpp"
#include "pathlens/value.hpp"

namespace pathlens {

enum class Tok {
    Name,
    Int,
    Float,
    Str,
    Newline,
    Indent,
    Dedent,
    EndOfFile,
    // punctuation / operators
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Assign,     // =
    PlusEq,
    MinusEq,
    StarEq,
    SlashSlashEq,
    Plus,
    Minus,
    Star,
    SlashSlash,
    EqEq,
    NotEq,
    Less,
    // keywords
    KwDef,
    KwClass,
    KwIf,
    KwElse,
    KwWhile,
    KwReturn,
    KwPass,
    KwAnd,
    KwOr,
    KwTrue,
    KwFalse,
    KwNone,
};

struct Token {
    Tok kind;
    Span span;
    std::string text;        // Name / Str payload
    std::int64_t int_val = 0;
    double float_val = 0.0;
};

// Line-oriented lexer with Python-style INDENT/DEDENT tracking. Rejects, with
// a targeted message, the lexical space of constructs the subset excludes so
// the parser can stay small.
class Lexer {
  public:
    Lexer(std::string text, int file_idx) : src_(std::move(text)), file_(file_idx) {}

    static Token make(Tok kind, Span span) {
        Token t;
        t.kind = kind;
        t.span = span;
        return t;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        std::vector<int> indents{0};
        size_t pos = 0;
        int line = 0;
        while (pos < src_.size()) {
            line++;
            size_t eol = src_.find('\n', pos);
            if (eol == std::string::npos) eol = src_.size();
            std::string_view ln(src_.data() + pos, eol - pos);
            size_t i = 0;
            while (i < ln.size() && ln[i] == ' ') i++;
            if (i < ln.size() && ln[i] == '\t')
                throw SyntaxError("tab in indentation (use spaces)", at(line, static_cast<int>(i) + 1));
            bool blank = i == ln.size() || ln[i] == '#';
            if (!blank) {
                int width = static_cast<int>(i);
                if (width > indents.back()) {
                    indents.push_back(width);
                    out.push_back(make(Tok::Indent, at(line, 1)));
                } else {
                    while (width < indents.back()) {
                        indents.pop_back();
                        out.push_back(make(Tok::Dedent, at(line, 1)));
                    }
                    if (width != indents.back())
                        throw SyntaxError("inconsistent dedent", at(line, width + 1));
                }
                lex_line(ln, line, i, out);
                out.push_back(make(Tok::Newline, at(line, static_cast<int>(ln.size()) + 1)));
            }
            pos = eol + 1;
        }
        while (indents.back() > 0) {
            indents.pop_back();
            out.push_back(make(Tok::Dedent, at(line + 1, 1)));
        }
        out.push_back(make(Tok::EndOfFile, at(line + 1, 1)));
        return out;
    }

  private:
    Span at(int line, int col) const { return Span{file_, line, col}; }

    void lex_line(std::string_view ln, int line, size_t start, std::vector<Token>& out) {
        size_t i = start;
        while (i < ln.size()) {
            char c = ln[i];
            int col = static_cast<int>(i) + 1;
            if (c == ' ') {
                i++;
                continue;
            }
            if (c == '\t') throw SyntaxError("tab character", at(line, col));
            if (c == '#') return;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t j = i;
                while (j < ln.size() &&
                       (std::isalnum(static_cast<unsigned char>(ln[j])) || ln[j] == '_'))
                    j++;
                std::string word(ln.substr(i, j - i));
                out.push_back(keyword_or_name(word, at(line, col)));
                i = j;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '-' && is_numeric_minus(ln, i, out))) {
                i = lex_number(ln, line, i, out);
                continue;
            }
            if (c == '\'' || c == '"') {
                i = lex_string(ln, line, i, out);
                continue;
            }
            switch (c) {
                case '(': out.push_back(make(Tok::LParen, at(line, col))); i++; continue;
                case ')': out.push_back(make(Tok::RParen, at(line, col))); i++; continue;
                case ',': out.push_back(make(Tok::Comma, at(line, col))); i++; continue;
                case ':': out.push_back(make(Tok::Colon, at(line, col))); i++; continue;
                case '.': out.push_back(make(Tok::Dot, at(line, col))); i++; continue;
                case '=':
                    if (i + 1 < ln.size() && ln[i + 1] == '=') {
                        out.push_back(make(Tok::EqEq, at(line, col)));
                        i += 2;
                    } else {
                        out.push_back(make(Tok::Assign, at(line, col)));
                        i++;
                    }
                    continue;
                case '!':
                    if (i + 1 < ln.size() && ln[i + 1] == '=') {
                        out.push_back(make(Tok::NotEq, at(line, col)));
                        i += 2;
                        continue;
                    }
                    throw SyntaxError("unexpected '!'", at(line, col));
                case '<':
                    if (i + 1 < ln.size() && ln[i + 1] == '=')
                        throw SyntaxError("'<=' unsupported (only '<')", at(line, col));
                    out.push_back(make(Tok::Less, at(line, col)));
                    i++;
                    continue;
                case '>':
                    throw SyntaxError("'>' comparisons unsupported (rewrite with '<')", at(line, col));
                case '+':
                    i = maybe_aug(ln, i, Tok::Plus, Tok::PlusEq, line, col, out);
                    continue;
                case '-':
                    i = maybe_aug(ln, i, Tok::Minus, Tok::MinusEq, line, col, out);
                    continue;
                case '*':
                    if (i + 1 < ln.size() && ln[i + 1] == '*')
                        throw SyntaxError("'**' unsupported", at(line, col));
                    i = maybe_aug(ln, i, Tok::Star, Tok::StarEq, line, col, out);
                    continue;
                case '/': {
                    if (i + 1 < ln.size() && ln[i + 1] == '/') {
                        if (i + 2 < ln.size() && ln[i + 2] == '=') {
                            out.push_back(make(Tok::SlashSlashEq, at(line, col)));
                            i += 3;
                        } else {
                            out.push_back(make(Tok::SlashSlash, at(line, col)));
                            i += 2;
                        }
                        continue;
                    }
                    throw SyntaxError("'/' true division unsupported (use '//')", at(line, col));
                }
                case '[':
                case ']':
                    throw SyntaxError("list comprehension or list literal unsupported", at(line, col));
                case '{':
                case '}':
                    throw SyntaxError("dict/set literals unsupported", at(line, col));
                case '@':
                    throw SyntaxError("decorators unsupported", at(line, col));
                case '%':
                    throw SyntaxError("'%' unsupported", at(line, col));
                case ';':
                    throw SyntaxError("';' statement separators unsupported", at(line, col));
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", at(line, col));
            }
        }
    }

    // A '-' starts a numeric literal only when not preceded by a value token.
    bool is_numeric_minus(std::string_view ln, size_t i, const std::vector<Token>& out) const {
        if (i + 1 >= ln.size() || !std::isdigit(static_cast<unsigned char>(ln[i + 1]))) return false;
        if (out.empty()) return true;
        switch (out.back().kind) {
            case Tok::Name:
            case Tok::Int:
            case Tok::Float:
            case Tok::Str:
            case Tok::RParen:
            case Tok::KwTrue:
            case Tok::KwFalse:
            case Tok::KwNone:
                return false;
            default:
                return true;
        }
    }

    size_t lex_number(std::string_view ln, int line, size_t i, std::vector<Token>& out) {
        int col = static_cast<int>(i) + 1;
        size_t j = i;
        if (ln[j] == '-') j++;
        while (j < ln.size() && std::isdigit(static_cast<unsigned char>(ln[j]))) j++;
        bool is_float = false;
        if (j < ln.size() && ln[j] == '.') {
            if (j + 1 >= ln.size() || !std::isdigit(static_cast<unsigned char>(ln[j + 1])))
                throw SyntaxError("float literal needs digits after '.'", at(line, static_cast<int>(j) + 1));
            is_float = true;
            j++;
            while (j < ln.size() && std::isdigit(static_cast<unsigned char>(ln[j]))) j++;
        }
        std::string text(ln.substr(i, j - i));
        Token t;
        t.span = at(line, col);
        if (is_float) {
            t.kind = Tok::Float;
            t.float_val = std::stod(text);
        } else {
            t.kind = Tok::Int;
            t.int_val = std::stoll(text);
        }
        out.push_back(std::move(t));
        return j;
    }

    size_t lex_string(std::string_view ln, int line, size_t i, std::vector<Token>& out) {
        char quote = ln[i];
        int col = static_cast<int>(i) + 1;
        std::string val;
        size_t j = i + 1;
        while (j < ln.size() && ln[j] != quote) {
            if (ln[j] == '\\') {
                if (j + 1 >= ln.size())
                    throw SyntaxError("unterminated escape", at(line, static_cast<int>(j) + 1));
                char e = ln[j + 1];
                switch (e) {
                    case 'n': val += '\n'; break;
                    case 't': val += '\t'; break;
                    case '\\': val += '\\'; break;
                    case '\'': val += '\''; break;
                    case '"': val += '"'; break;
                    default:
                        throw SyntaxError("unknown escape sequence", at(line, static_cast<int>(j) + 1));
                }
                j += 2;
            } else {
                val += ln[j];
                j++;
            }
        }
        if (j >= ln.size()) throw SyntaxError("unterminated string literal", at(line, col));
        Token t;
        t.kind = Tok::Str;
        t.span = at(line, col);
        t.text = std::move(val);
        out.push_back(std::move(t));
        return j + 1;
    }

    size_t maybe_aug(std::string_view ln, size_t i, Tok plain, Tok aug, int line, int col,
                     std::vector<Token>& out) {
        if (i + 1 < ln.size() && ln[i + 1] == '=') {
            out.push_back(make(aug, at(line, col)));
            return i + 2;
        }
        out.push_back(make(plain, at(line, col)));
        return i + 1;
    }

    Token keyword_or_name(const std::string& word, Span sp) {
        Token t;
        t.span = sp;
        if (word == "def") t.kind = Tok::KwDef;
        else if (word == "class") t.kind = Tok::KwClass;
        else if (word == "if") t.kind = Tok::KwIf;
        else if (word == "else") t.kind = Tok::KwElse;
        else if (word == "while") t.kind = Tok::KwWhile;
        else if (word == "return") t.kind = Tok::KwReturn;
        else if (word == "pass") t.kind = Tok::KwPass;
        else if (word == "and") t.kind = Tok::KwAnd;
        else if (word == "or") t.kind = Tok::KwOr;
        else if (word == "True") t.kind = Tok::KwTrue;
        else if (word == "False") t.kind = Tok::KwFalse;
        else if (word == "None") t.kind = Tok::KwNone;
        else if (word == "for") throw SyntaxError("for loops unsupported (use while)", sp);
        else if (word == "elif") throw SyntaxError("elif unsupported (nest if under else)", sp);
        else if (word == "try" || word == "except" || word == "finally" || word == "raise")
            throw SyntaxError("exception handling unsupported", sp);
        else if (word == "import" || word == "from") throw SyntaxError("import unsupported", sp);
        else if (word == "lambda") throw SyntaxError("lambda unsupported", sp);
        else if (word == "not") throw SyntaxError("'not' unsupported (compare with == False)", sp);
        else if (word == "in" || word == "is") throw SyntaxError("'" + word + "' unsupported", sp);
        else if (word == "global" || word == "nonlocal")
            throw SyntaxError("'" + word + "' unsupported", sp);
        else if (word == "break" || word == "continue")
            throw SyntaxError("'" + word + "' unsupported", sp);
        else {
            t.kind = Tok::Name;
            t.text = word;
        }
        return t;
    }

    std::string src_;
    int file_;
};

}  // namespace pathlens
