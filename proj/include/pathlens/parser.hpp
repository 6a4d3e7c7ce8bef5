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

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pathlens/ast.hpp"
#include "pathlens/lexer.hpp"

namespace pathlens {

// Recursive-descent parser for the documented subset (docs/subset.md).
// Anything outside the subset fails fast with a SyntaxError; there is no
// recovery or guessing.
class Parser {
  public:
    Parser(std::vector<Token> toks, int file_idx)
        : toks_(std::move(toks)), file_(file_idx) {}

    ast::Module parse_module() {
        ast::Module m;
        m.file = file_;
        while (!at(Tok::EndOfFile)) {
            m.body.push_back(statement(/*module_level=*/true, /*class_level=*/false));
        }
        return m;
    }

  private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(Tok k) const { return cur().kind == k; }
    const Token& advance() { return toks_[pos_++]; }
    const Token& expect(Tok k, const char* what) {
        if (!at(k)) throw SyntaxError(std::string("expected ") + what, cur().span);
        return advance();
    }

    ast::StmtPtr statement(bool module_level, bool class_level) {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::KwDef:
                return funcdef(module_level, class_level);
            case Tok::KwClass:
                if (!module_level)
                    throw SyntaxError("class definitions allowed at module level only", t.span);
                return classdef();
            case Tok::KwIf:
                if (class_level) throw SyntaxError("only methods allowed in a class body", t.span);
                return if_stmt();
            case Tok::KwWhile:
                if (class_level) throw SyntaxError("only methods allowed in a class body", t.span);
                return while_stmt();
            case Tok::KwReturn: {
                if (module_level || class_level)
                    throw SyntaxError("return outside function", t.span);
                auto s = make_stmt(ast::StmtKind::Return, t.span);
                advance();
                if (!at(Tok::Newline)) s->value = expression();
                expect(Tok::Newline, "end of line");
                return s;
            }
            case Tok::KwPass: {
                auto s = make_stmt(ast::StmtKind::Pass, t.span);
                advance();
                expect(Tok::Newline, "end of line");
                return s;
            }
            default:
                if (class_level)
                    throw SyntaxError("only methods allowed in a class body", t.span);
                return simple_stmt();
        }
    }

    ast::StmtPtr funcdef(bool module_level, bool class_level) {
        Span sp = cur().span;
        if (!module_level && !class_level)
            throw SyntaxError("nested function definitions unsupported", sp);
        advance();
        auto s = make_stmt(ast::StmtKind::FuncDef, sp);
        s->name = expect(Tok::Name, "function name").text;
        expect(Tok::LParen, "'('");
        if (!at(Tok::RParen)) {
            while (true) {
                const Token& p = expect(Tok::Name, "parameter name");
                if (at(Tok::Assign))
                    throw SyntaxError("default arguments unsupported", cur().span);
                s->params.push_back(p.text);
                if (at(Tok::Comma)) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::Colon, "':'");
        s->body = block(/*class_level=*/false);
        return s;
    }

    ast::StmtPtr classdef() {
        Span sp = cur().span;
        advance();
        auto s = make_stmt(ast::StmtKind::ClassDef, sp);
        s->name = expect(Tok::Name, "class name").text;
        if (at(Tok::LParen))
            throw SyntaxError("inheritance unsupported", cur().span);
        expect(Tok::Colon, "':'");
        s->body = block(/*class_level=*/true);
        // A lone `pass` marks an empty class; drop it here.
        if (s->body.size() == 1 && s->body[0]->kind == ast::StmtKind::Pass) s->body.clear();
        return s;
    }

    ast::StmtPtr if_stmt() {
        Span sp = cur().span;
        advance();
        auto s = make_stmt(ast::StmtKind::If, sp);
        s->value = expression();
        expect(Tok::Colon, "':'");
        s->body = block(false);
        if (at(Tok::KwElse)) {
            advance();
            expect(Tok::Colon, "':'");
            s->orelse = block(false);
        }
        return s;
    }

    ast::StmtPtr while_stmt() {
        Span sp = cur().span;
        advance();
        auto s = make_stmt(ast::StmtKind::While, sp);
        s->value = expression();
        expect(Tok::Colon, "':'");
        s->body = block(false);
        if (at(Tok::KwElse)) throw SyntaxError("while-else unsupported", cur().span);
        return s;
    }

    std::vector<ast::StmtPtr> block(bool class_level) {
        expect(Tok::Newline, "newline before block");
        expect(Tok::Indent, "indented block");
        std::vector<ast::StmtPtr> body;
        while (!at(Tok::Dedent)) {
            body.push_back(statement(/*module_level=*/false, class_level));
        }
        advance();  // Dedent
        return body;
    }

    // assignment, augmented assignment, or a call expression statement
    ast::StmtPtr simple_stmt() {
        Span sp = cur().span;
        ast::ExprPtr e = expression();
        if (at(Tok::Assign)) {
            advance();
            auto s = assign_target(std::move(e), sp);
            s->value = expression();
            expect(Tok::Newline, "end of line");
            return s;
        }
        if (at(Tok::PlusEq) || at(Tok::MinusEq) || at(Tok::StarEq) || at(Tok::SlashSlashEq)) {
            BinOp op = at(Tok::PlusEq)  ? BinOp::Add
                     : at(Tok::MinusEq) ? BinOp::Sub
                     : at(Tok::StarEq)  ? BinOp::Mul
                                        : BinOp::FloorDiv;
            Span opsp = advance().span;
            if (e->kind != ast::ExprKind::Name)
                throw SyntaxError("augmented assignment target must be a name", opsp);
            // x op= v desugars at parse level into x = x op v; the lowering
            // pass still forces the operand through a fresh temporary.
            auto s = make_stmt(ast::StmtKind::Assign, sp);
            s->name = e->name;
            auto bin = std::make_unique<ast::Expr>();
            bin->kind = ast::ExprKind::Binary;
            bin->span = opsp;
            bin->op = op;
            bin->lhs = std::move(e);
            bin->rhs = expression();
            s->value = std::move(bin);
            expect(Tok::Newline, "end of line");
            return s;
        }
        if (e->kind != ast::ExprKind::Call)
            throw SyntaxError("expression statements must be calls", sp);
        auto s = make_stmt(ast::StmtKind::ExprStmt, sp);
        s->value = std::move(e);
        expect(Tok::Newline, "end of line");
        return s;
    }

    ast::StmtPtr assign_target(ast::ExprPtr target, Span sp) {
        if (target->kind == ast::ExprKind::Name) {
            auto s = make_stmt(ast::StmtKind::Assign, sp);
            s->name = target->name;
            return s;
        }
        if (target->kind == ast::ExprKind::Attribute) {
            if (target->base->kind != ast::ExprKind::Name)
                throw SyntaxError("attribute assignment target must be name.attr", target->span);
            auto s = make_stmt(ast::StmtKind::AttrAssign, sp);
            s->attr = target->attr;
            s->target_base = std::move(target->base);
            return s;
        }
        throw SyntaxError("invalid assignment target", target->span);
    }

    ast::ExprPtr expression() { return or_expr(); }

    ast::ExprPtr or_expr() {
        auto e = and_expr();
        while (at(Tok::KwOr)) {
            Span sp = advance().span;
            e = binary(BinOp::Or, std::move(e), and_expr(), sp);
        }
        return e;
    }

    ast::ExprPtr and_expr() {
        auto e = comparison();
        while (at(Tok::KwAnd)) {
            Span sp = advance().span;
            e = binary(BinOp::And, std::move(e), comparison(), sp);
        }
        return e;
    }

    ast::ExprPtr comparison() {
        auto e = arith();
        if (at(Tok::EqEq) || at(Tok::NotEq) || at(Tok::Less)) {
            BinOp op = at(Tok::EqEq) ? BinOp::Eq : at(Tok::NotEq) ? BinOp::Ne : BinOp::Lt;
            Span sp = advance().span;
            e = binary(op, std::move(e), arith(), sp);
            if (at(Tok::EqEq) || at(Tok::NotEq) || at(Tok::Less))
                throw SyntaxError("chained comparison unsupported", cur().span);
        }
        return e;
    }

    ast::ExprPtr arith() {
        auto e = term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            Span sp = advance().span;
            e = binary(op, std::move(e), term(), sp);
        }
        return e;
    }

    ast::ExprPtr term() {
        auto e = factor();
        while (at(Tok::Star) || at(Tok::SlashSlash)) {
            BinOp op = at(Tok::Star) ? BinOp::Mul : BinOp::FloorDiv;
            Span sp = advance().span;
            e = binary(op, std::move(e), factor(), sp);
        }
        return e;
    }

    ast::ExprPtr factor() {
        auto e = atom();
        while (true) {
            if (at(Tok::Dot)) {
                Span sp = advance().span;
                auto a = std::make_unique<ast::Expr>();
                a->kind = ast::ExprKind::Attribute;
                a->span = sp;
                a->attr = expect(Tok::Name, "attribute name").text;
                a->base = std::move(e);
                e = std::move(a);
                continue;
            }
            if (at(Tok::LParen)) {
                Span sp = advance().span;
                if (e->kind != ast::ExprKind::Name && e->kind != ast::ExprKind::Attribute)
                    throw SyntaxError("call target must be a name or attribute", sp);
                auto c = std::make_unique<ast::Expr>();
                c->kind = ast::ExprKind::Call;
                c->span = e->span;
                c->callee = std::move(e);
                if (!at(Tok::RParen)) {
                    while (true) {
                        if (at(Tok::Star))
                            throw SyntaxError("starred arguments unsupported", cur().span);
                        c->args.push_back(expression());
                        if (at(Tok::Assign))
                            throw SyntaxError("keyword arguments unsupported", cur().span);
                        if (at(Tok::Comma)) {
                            advance();
                            continue;
                        }
                        break;
                    }
                }
                expect(Tok::RParen, "')'");
                e = std::move(c);
                continue;
            }
            break;
        }
        return e;
    }

    ast::ExprPtr atom() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::Name: {
                advance();
                auto e = std::make_unique<ast::Expr>();
                e->kind = ast::ExprKind::Name;
                e->span = t.span;
                e->name = t.text;
                return e;
            }
            case Tok::Int:
                advance();
                return literal(PrimConst::integer(t.int_val), t.span);
            case Tok::Float:
                advance();
                return literal(PrimConst::floating(t.float_val), t.span);
            case Tok::Str:
                advance();
                return literal(PrimConst::str(t.text), t.span);
            case Tok::KwTrue:
                advance();
                return literal(PrimConst::boolean(true), t.span);
            case Tok::KwFalse:
                advance();
                return literal(PrimConst::boolean(false), t.span);
            case Tok::KwNone:
                advance();
                return literal(PrimConst::none(), t.span);
            case Tok::LParen: {
                advance();
                auto e = expression();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                throw SyntaxError("expected an expression", t.span);
        }
    }

    ast::ExprPtr literal(PrimConst v, Span sp) {
        auto e = std::make_unique<ast::Expr>();
        e->kind = ast::ExprKind::Literal;
        e->span = sp;
        e->lit = std::move(v);
        return e;
    }

    ast::ExprPtr binary(BinOp op, ast::ExprPtr l, ast::ExprPtr r, Span sp) {
        auto e = std::make_unique<ast::Expr>();
        e->kind = ast::ExprKind::Binary;
        e->span = sp;
        e->op = op;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }

    ast::StmtPtr make_stmt(ast::StmtKind k, Span sp) {
        auto s = std::make_unique<ast::Stmt>();
        s->kind = k;
        s->span = sp;
        return s;
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    int file_;
};

// Parse one or more source files into a SourceProgram.
inline SourceProgram parse(std::vector<SourceFile> files, std::string entry) {
    SourceProgram prog;
    prog.files = std::move(files);
    prog.entry = std::move(entry);
    for (size_t i = 0; i < prog.files.size(); i++) {
        Lexer lx(prog.files[i].text, static_cast<int>(i));
        Parser p(lx.run(), static_cast<int>(i));
        prog.modules.push_back(p.parse_module());
    }
    return prog;
}

}  // namespace pathlens
