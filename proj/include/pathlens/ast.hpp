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
#include <optional>
#include <string>
#include <vector>

#include "pathlens/diag.hpp"
#include "pathlens/value.hpp"

namespace pathlens {
namespace ast {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class ExprKind { Name, Literal, Binary, Attribute, Call };

struct Expr {
    ExprKind kind;
    Span span;

    // Name
    std::string name;
    // Literal
    PrimConst lit;
    // Binary
    BinOp op = BinOp::Add;
    ExprPtr lhs, rhs;
    // Attribute: lhs.attr ; Call: callee(args) where callee is Name or Attribute
    std::string attr;
    ExprPtr base;
    ExprPtr callee;
    std::vector<ExprPtr> args;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

enum class StmtKind { Assign, AttrAssign, ExprStmt, If, While, Return, Pass, FuncDef, ClassDef };

struct Stmt {
    StmtKind kind;
    Span span;

    // Assign: name = value ; AttrAssign: base.attr = value
    std::string name;
    std::string attr;
    ExprPtr target_base;  // AttrAssign receiver (a Name expression)
    ExprPtr value;        // Assign/AttrAssign/Return value, ExprStmt call, If/While condition
    std::vector<StmtPtr> body;
    std::vector<StmtPtr> orelse;
    // FuncDef
    std::vector<std::string> params;
    // ClassDef: body holds the method FuncDefs
};

struct Module {
    int file = -1;
    std::vector<StmtPtr> body;
};

}  // namespace ast

// A parsed multi-file program plus the designated entry function.
struct SourceProgram {
    std::vector<SourceFile> files;
    std::vector<ast::Module> modules;  // one per file, same order
    std::string entry;
};

}  // namespace pathlens
