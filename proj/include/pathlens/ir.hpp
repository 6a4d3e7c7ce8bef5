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

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "pathlens/diag.hpp"
#include "pathlens/value.hpp"

namespace pathlens {
namespace ir {

constexpr int kModuleScope = -1;

// A lowered variable. Names are function-local after lowering; module-level
// names live in the pseudo-scope kModuleScope.
struct Var {
    int fn = kModuleScope;
    std::string name;

    friend bool operator==(const Var& a, const Var& b) {
        return a.fn == b.fn && a.name == b.name;
    }
    friend bool operator!=(const Var& a, const Var& b) { return !(a == b); }
    friend bool operator<(const Var& a, const Var& b) {
        return std::tie(a.fn, a.name) < std::tie(b.fn, b.name);
    }
};

// --- statements ---------------------------------------------------------

struct ConstAssign {  // x = p
    Var dst;
    PrimConst value;
};
struct Alias {  // x = y
    Var dst, src;
};
struct Binop {  // x = y op z
    Var dst, lhs;
    BinOp op = BinOp::Add;
    Var rhs;
};
struct AttrRead {  // x = y.attr
    Var dst, obj;
    std::string attr;
};
struct AttrWrite {  // y.attr = x
    Var obj;
    std::string attr;
    Var src;
};
struct New {  // x = new C()   (one abstract address per syntactic site)
    Var dst;
    int class_idx = -1;
    int site = -1;
};
struct DirectCallee {
    std::string name;  // user function or summary name
};
struct MethodCallee {
    Var recv;
    std::string name;
};
using Callee = std::variant<DirectCallee, MethodCallee>;
struct Call {  // [x =] f(args) | [x =] y.m(args)
    std::optional<Var> dst;
    Callee callee;
    std::vector<Var> args;
};
struct Nop {};

using StmtData =
    std::variant<ConstAssign, Alias, Binop, AttrRead, AttrWrite, New, Call, Nop>;

struct Stmt {
    int id = -1;  // unique across the program
    Span span;
    StmtData data;

    template <class T>
    const T* as() const {
        return std::get_if<T>(&data);
    }
};

// --- terminators ---------------------------------------------------------

struct Goto {  // unconditional fall-through edge
    int target = -1;
};
struct Branch {  // conditional: cond is always a plain variable after lowering
    Var cond;
    int on_true = -1;
    int on_false = -1;
};
struct Ret {
    std::optional<Var> value;  // empty = return None
};
using Term = std::variant<Goto, Branch, Ret>;

struct Block {
    std::vector<Stmt> stmts;
    Term term = Ret{};
    Span term_span;
    int term_id = -1;  // statement id for the terminator
};

struct Function {
    std::string name;      // "run_sql", "Create.run", "<module>"
    int index = -1;
    std::vector<std::string> params;  // includes "self" for methods
    std::vector<Block> blocks;        // block 0 is the entry
    bool is_method = false;
    int class_idx = -1;
    Span span;
};

struct ClassInfo {
    std::string name;
    std::map<std::string, int> methods;  // method name -> function index
    Span span;
};

struct AllocSite {
    int stmt_id = -1;
    int class_idx = -1;
    Span span;
};

struct Program {
    std::vector<SourceFile> files;
    std::vector<Function> functions;  // [0] is "<module>"
    std::vector<ClassInfo> classes;
    std::map<std::string, int> fn_by_name;
    std::map<std::string, int> class_by_name;
    std::vector<AllocSite> alloc_sites;
    int entry_fn = -1;
    int module_fn = 0;
    int stmt_count = 0;

    const Function& fn(int i) const { return functions[static_cast<size_t>(i)]; }
    const ClassInfo& cls(int i) const { return classes[static_cast<size_t>(i)]; }
};

// A program point: the state *before* statement `idx` of the block; idx ==
// stmts.size() addresses the point before the terminator.
struct Point {
    int fn = -1;
    int block = -1;
    int idx = 0;

    friend bool operator==(const Point& a, const Point& b) {
        return a.fn == b.fn && a.block == b.block && a.idx == b.idx;
    }
    friend bool operator<(const Point& a, const Point& b) {
        return std::tie(a.fn, a.block, a.idx) < std::tie(b.fn, b.block, b.idx);
    }
};

inline Span point_span(const Program& p, Point pt) {
    const Block& b = p.fn(pt.fn).blocks[static_cast<size_t>(pt.block)];
    if (pt.idx < static_cast<int>(b.stmts.size()))
        return b.stmts[static_cast<size_t>(pt.idx)].span;
    return b.term_span;
}

// --- printing ------------------------------------------------------------

inline std::string to_string(const Var& v) { return v.name; }

inline std::string to_string(const Program& p, const Stmt& s) {
    struct V {
        const Program& p;
        std::string operator()(const ConstAssign& c) const {
            return to_string(c.dst) + " = " + repr(c.value);
        }
        std::string operator()(const Alias& a) const {
            return to_string(a.dst) + " = " + to_string(a.src);
        }
        std::string operator()(const Binop& b) const {
            return to_string(b.dst) + " = " + to_string(b.lhs) + " " +
                   pathlens::to_string(b.op) + " " + to_string(b.rhs);
        }
        std::string operator()(const AttrRead& a) const {
            return to_string(a.dst) + " = " + to_string(a.obj) + "." + a.attr;
        }
        std::string operator()(const AttrWrite& a) const {
            return to_string(a.obj) + "." + a.attr + " = " + to_string(a.src);
        }
        std::string operator()(const New& n) const {
            return to_string(n.dst) + " = new " + p.cls(n.class_idx).name + "()";
        }
        std::string operator()(const Call& c) const {
            std::string out;
            if (c.dst) out += to_string(*c.dst) + " = ";
            if (const auto* d = std::get_if<DirectCallee>(&c.callee))
                out += d->name;
            else {
                const auto& m = std::get<MethodCallee>(c.callee);
                out += to_string(m.recv) + "." + m.name;
            }
            out += "(";
            for (size_t i = 0; i < c.args.size(); i++) {
                if (i) out += ", ";
                out += to_string(c.args[i]);
            }
            return out + ")";
        }
        std::string operator()(const Nop&) const { return "nop"; }
    };
    return std::visit(V{p}, s.data);
}

inline std::string to_string(const Term& t) {
    if (const auto* g = std::get_if<Goto>(&t)) return "goto b" + std::to_string(g->target);
    if (const auto* b = std::get_if<Branch>(&t))
        return "branch " + to_string(b->cond) + " ? b" + std::to_string(b->on_true) + " : b" +
               std::to_string(b->on_false);
    const auto& r = std::get<Ret>(t);
    return r.value ? "return " + to_string(*r.value) : "return";
}

inline std::string dump_function(const Program& p, const Function& f) {
    std::string out = "def " + f.name + "(";
    for (size_t i = 0; i < f.params.size(); i++) {
        if (i) out += ", ";
        out += f.params[i];
    }
    out += "):\n";
    for (size_t b = 0; b < f.blocks.size(); b++) {
        out += "  b" + std::to_string(b) + ":\n";
        for (const Stmt& s : f.blocks[b].stmts) out += "    " + to_string(p, s) + "\n";
        out += "    " + to_string(f.blocks[b].term) + "\n";
    }
    return out;
}

inline std::string dump_program(const Program& p) {
    std::string out;
    for (const Function& f : p.functions) out += dump_function(p, f);
    return out;
}

}  // namespace ir
}  // namespace pathlens
