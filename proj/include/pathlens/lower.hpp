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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pathlens/ast.hpp"
#include "pathlens/ir.hpp"

namespace pathlens {

// Lowers the AST into the flat IR:
//  - every nested expression is flattened through fresh temporaries, so every
//    statement operand is a plain variable,
//  - conditions are materialized into a single variable before each branch,
//  - `x op= e` becomes `t = e; x = x op t`,
//  - calling a class name becomes `new` (plus an __init__ call if defined),
//  - module-level statements form the pseudo-function "<module>".
class Lowerer {
  public:
    explicit Lowerer(const SourceProgram& src) : src_(src) {}

    ir::Program run() {
        prog_.files = src_.files;
        // "<module>" owns all module-level simple statements.
        ir::Function module_fn;
        module_fn.name = "<module>";
        module_fn.index = 0;
        prog_.functions.push_back(std::move(module_fn));
        prog_.fn_by_name["<module>"] = 0;
        prog_.module_fn = 0;

        collect_defs();
        lower_bodies();
        resolve_entry();
        return std::move(prog_);
    }

  private:
    struct FnCtx {
        int fn_idx = 0;                 // index into prog_.functions
        int scope = ir::kModuleScope;   // Var scope id (kModuleScope for "<module>")
        std::set<std::string> locals;
        int cur = 0;  // current block
        bool done = false;
        int temp = 0;
    };

    // Pass 1: register every class and function so call sites can be resolved
    // syntactically during body lowering.
    void collect_defs() {
        for (const ast::Module& m : src_.modules) {
            for (const ast::StmtPtr& s : m.body) {
                if (s->kind == ast::StmtKind::ClassDef) {
                    if (prog_.class_by_name.count(s->name) || prog_.fn_by_name.count(s->name))
                        throw LoweringError("duplicate definition of '" + s->name + "'", s->span);
                    ir::ClassInfo ci;
                    ci.name = s->name;
                    ci.span = s->span;
                    int class_idx = static_cast<int>(prog_.classes.size());
                    for (const ast::StmtPtr& ms : s->body) {
                        // parser guarantees only FuncDefs remain here
                        if (ms->params.empty() || ms->params[0] != "self")
                            throw LoweringError("method '" + ms->name +
                                                    "' must take 'self' as its first parameter",
                                                ms->span);
                        if (ci.methods.count(ms->name))
                            throw LoweringError("duplicate method '" + ms->name + "'", ms->span);
                        int fn_idx = add_function(s->name + "." + ms->name, ms->params, ms->span);
                        prog_.functions[static_cast<size_t>(fn_idx)].is_method = true;
                        prog_.functions[static_cast<size_t>(fn_idx)].class_idx = class_idx;
                        ci.methods[ms->name] = fn_idx;
                        method_asts_[fn_idx] = ms.get();
                    }
                    prog_.class_by_name[ci.name] = class_idx;
                    prog_.classes.push_back(std::move(ci));
                } else if (s->kind == ast::StmtKind::FuncDef) {
                    if (prog_.class_by_name.count(s->name) || prog_.fn_by_name.count(s->name))
                        throw LoweringError("duplicate definition of '" + s->name + "'", s->span);
                    int fn_idx = add_function(s->name, s->params, s->span);
                    method_asts_[fn_idx] = s.get();
                }
            }
        }
    }

    int add_function(const std::string& name, const std::vector<std::string>& params, Span sp) {
        ir::Function f;
        f.name = name;
        f.index = static_cast<int>(prog_.functions.size());
        f.params = params;
        f.span = sp;
        std::set<std::string> seen;
        for (const std::string& p : params)
            if (!seen.insert(p).second)
                throw LoweringError("duplicate parameter '" + p + "'", sp);
        prog_.fn_by_name[name] = f.index;
        prog_.functions.push_back(std::move(f));
        return prog_.functions.back().index;
    }

    void lower_bodies() {
        // Module body first: its statements execute before the entry function.
        {
            FnCtx ctx;
            ctx.fn_idx = 0;
            ctx.scope = ir::kModuleScope;
            begin_function(ctx);
            for (const ast::Module& m : src_.modules)
                for (const ast::StmtPtr& s : m.body)
                    if (s->kind != ast::StmtKind::FuncDef && s->kind != ast::StmtKind::ClassDef)
                        lower_stmt(ctx, *s);
            end_function(ctx);
        }
        for (auto& [fn_idx, fnast] : method_asts_) {
            FnCtx ctx;
            ctx.fn_idx = fn_idx;
            ctx.scope = fn_idx;
            collect_locals(ctx, *fnast);
            begin_function(ctx);
            for (const ast::StmtPtr& s : fnast->body) lower_stmt(ctx, *s);
            end_function(ctx);
        }
    }

    void collect_locals(FnCtx& ctx, const ast::Stmt& fn) {
        for (const std::string& p : fn.params) ctx.locals.insert(p);
        walk_assigned(ctx.locals, fn.body);
    }

    void walk_assigned(std::set<std::string>& out, const std::vector<ast::StmtPtr>& body) {
        for (const ast::StmtPtr& s : body) {
            if (s->kind == ast::StmtKind::Assign) out.insert(s->name);
            walk_assigned(out, s->body);
            walk_assigned(out, s->orelse);
        }
    }

    void begin_function(FnCtx& ctx) {
        fn(ctx).blocks.emplace_back();
        ctx.cur = 0;
    }

    void end_function(FnCtx& ctx) {
        if (!ctx.done) set_term(ctx, ir::Ret{}, fn(ctx).span);
    }

    ir::Function& fn(FnCtx& ctx) { return prog_.functions[static_cast<size_t>(ctx.fn_idx)]; }
    ir::Block& cur(FnCtx& ctx) { return fn(ctx).blocks[static_cast<size_t>(ctx.cur)]; }

    int new_block(FnCtx& ctx) {
        fn(ctx).blocks.emplace_back();
        return static_cast<int>(fn(ctx).blocks.size()) - 1;
    }

    void emit(FnCtx& ctx, ir::StmtData data, Span sp) {
        ir::Stmt s;
        s.id = prog_.stmt_count++;
        s.span = sp;
        s.data = std::move(data);
        cur(ctx).stmts.push_back(std::move(s));
    }

    void set_term(FnCtx& ctx, ir::Term t, Span sp) {
        cur(ctx).term = std::move(t);
        cur(ctx).term_span = sp;
        cur(ctx).term_id = prog_.stmt_count++;
        ctx.done = true;
    }

    ir::Var fresh(FnCtx& ctx) {
        return ir::Var{ctx.scope, "%t" + std::to_string(ctx.temp++)};
    }

    ir::Var resolve(FnCtx& ctx, const std::string& name, Span sp) {
        if (ctx.scope != ir::kModuleScope && ctx.locals.count(name))
            return ir::Var{ctx.scope, name};
        if (prog_.class_by_name.count(name))
            throw LoweringError("classes are not first-class values: '" + name + "'", sp);
        if (prog_.fn_by_name.count(name) && name != "<module>")
            throw LoweringError("functions are not first-class values: '" + name + "'", sp);
        return ir::Var{ir::kModuleScope, name};
    }

    // Lower `e` and leave its value in `dst`.
    void lower_expr_into(FnCtx& ctx, ir::Var dst, const ast::Expr& e) {
        switch (e.kind) {
            case ast::ExprKind::Literal:
                emit(ctx, ir::ConstAssign{dst, e.lit}, e.span);
                return;
            case ast::ExprKind::Name:
                emit(ctx, ir::Alias{dst, resolve(ctx, e.name, e.span)}, e.span);
                return;
            case ast::ExprKind::Binary: {
                ir::Var l = lower_expr(ctx, *e.lhs);
                ir::Var r = lower_expr(ctx, *e.rhs);
                emit(ctx, ir::Binop{dst, l, e.op, r}, e.span);
                return;
            }
            case ast::ExprKind::Attribute: {
                ir::Var base = lower_expr(ctx, *e.base);
                emit(ctx, ir::AttrRead{dst, base, e.attr}, e.span);
                return;
            }
            case ast::ExprKind::Call:
                lower_call(ctx, dst, e);
                return;
        }
    }

    // Lower `e` to a variable, reusing plain names without a copy.
    ir::Var lower_expr(FnCtx& ctx, const ast::Expr& e) {
        if (e.kind == ast::ExprKind::Name) return resolve(ctx, e.name, e.span);
        ir::Var t = fresh(ctx);
        lower_expr_into(ctx, t, e);
        return t;
    }

    void lower_call(FnCtx& ctx, std::optional<ir::Var> dst, const ast::Expr& call) {
        std::vector<ir::Var> args;
        const ast::Expr& callee = *call.callee;
        ir::Var recv;
        bool is_method = callee.kind == ast::ExprKind::Attribute;
        if (is_method) recv = lower_expr(ctx, *callee.base);
        for (const ast::ExprPtr& a : call.args) args.push_back(lower_expr(ctx, *a));

        if (is_method) {
            emit(ctx, ir::Call{dst, ir::MethodCallee{recv, callee.attr}, std::move(args)},
                 call.span);
            return;
        }
        const std::string& name = callee.name;
        auto cit = prog_.class_by_name.find(name);
        if (cit != prog_.class_by_name.end()) {
            lower_construct(ctx, dst, cit->second, std::move(args), call.span);
            return;
        }
        auto fit = prog_.fn_by_name.find(name);
        if (fit != prog_.fn_by_name.end()) {
            const ir::Function& f = prog_.fn(fit->second);
            if (f.params.size() != args.size())
                throw LoweringError("'" + name + "' takes " + std::to_string(f.params.size()) +
                                        " argument(s), got " + std::to_string(args.size()),
                                    call.span);
            emit(ctx, ir::Call{dst, ir::DirectCallee{name}, std::move(args)}, call.span);
            return;
        }
        if (ctx.scope != ir::kModuleScope && ctx.locals.count(name))
            throw LoweringError("calls through variables unsupported: '" + name + "'", call.span);
        // Possibly a summary builtin; resolution is checked during analysis.
        emit(ctx, ir::Call{dst, ir::DirectCallee{name}, std::move(args)}, call.span);
    }

    // x = C(args): a fresh abstract address per syntactic site, then the
    // __init__ call when the class defines one.
    void lower_construct(FnCtx& ctx, std::optional<ir::Var> dst, int class_idx,
                         std::vector<ir::Var> args, Span sp) {
        const ir::ClassInfo& ci = prog_.cls(class_idx);
        auto init = ci.methods.find("__init__");
        if (init == ci.methods.end()) {
            if (!args.empty())
                throw LoweringError("class '" + ci.name + "' takes no constructor arguments", sp);
            ir::Var target = dst ? *dst : fresh(ctx);
            emit_new(ctx, target, class_idx, sp);
            return;
        }
        const ir::Function& initfn = prog_.fn(init->second);
        if (initfn.params.size() != args.size() + 1)
            throw LoweringError("class '" + ci.name + "' constructor takes " +
                                    std::to_string(initfn.params.size() - 1) +
                                    " argument(s), got " + std::to_string(args.size()),
                                sp);
        ir::Var tmp = fresh(ctx);
        emit_new(ctx, tmp, class_idx, sp);
        emit(ctx, ir::Call{std::nullopt, ir::MethodCallee{tmp, "__init__"}, std::move(args)}, sp);
        if (dst) emit(ctx, ir::Alias{*dst, tmp}, sp);
    }

    void emit_new(FnCtx& ctx, ir::Var dst, int class_idx, Span sp) {
        int site = static_cast<int>(prog_.alloc_sites.size());
        prog_.alloc_sites.push_back(ir::AllocSite{prog_.stmt_count, class_idx, sp});
        emit(ctx, ir::New{dst, class_idx, site}, sp);
    }

    void lower_stmt(FnCtx& ctx, const ast::Stmt& s) {
        switch (s.kind) {
            case ast::StmtKind::Assign: {
                ir::Var target{ctx.scope, s.name};
                lower_expr_into(ctx, target, *s.value);
                return;
            }
            case ast::StmtKind::AttrAssign: {
                ir::Var base = resolve(ctx, s.target_base->name, s.target_base->span);
                ir::Var val = lower_expr(ctx, *s.value);
                emit(ctx, ir::AttrWrite{base, s.attr, val}, s.span);
                return;
            }
            case ast::StmtKind::ExprStmt:
                lower_call(ctx, std::nullopt, *s.value);
                return;
            case ast::StmtKind::Return: {
                std::optional<ir::Var> v;
                if (s.value) v = lower_expr(ctx, *s.value);
                set_term(ctx, ir::Ret{v}, s.span);
                ctx.cur = new_block(ctx);  // dead code after return, pruned later
                ctx.done = false;
                return;
            }
            case ast::StmtKind::Pass:
                emit(ctx, ir::Nop{}, s.span);
                return;
            case ast::StmtKind::If: {
                ir::Var cond = lower_expr(ctx, *s.value);
                int branch_block = ctx.cur;
                Span condsp = s.value->span;
                int then_blk = new_block(ctx);
                ctx.cur = then_blk;
                for (const ast::StmtPtr& b : s.body) lower_stmt(ctx, *b);
                int then_end = ctx.cur;
                bool then_done = ctx.done;
                int else_blk = -1, else_end = -1;
                bool else_done = false;
                if (!s.orelse.empty()) {
                    else_blk = new_block(ctx);
                    ctx.cur = else_blk;
                    ctx.done = false;
                    for (const ast::StmtPtr& b : s.orelse) lower_stmt(ctx, *b);
                    else_end = ctx.cur;
                    else_done = ctx.done;
                }
                int join = new_block(ctx);
                ctx.cur = branch_block;
                ctx.done = false;
                set_term(ctx, ir::Branch{cond, then_blk, else_blk >= 0 ? else_blk : join}, condsp);
                if (!then_done) {
                    ctx.cur = then_end;
                    ctx.done = false;
                    set_term(ctx, ir::Goto{join}, s.span);
                }
                if (else_blk >= 0 && !else_done) {
                    ctx.cur = else_end;
                    ctx.done = false;
                    set_term(ctx, ir::Goto{join}, s.span);
                }
                ctx.cur = join;
                ctx.done = false;
                return;
            }
            case ast::StmtKind::While: {
                int header = new_block(ctx);
                set_term(ctx, ir::Goto{header}, s.span);
                ctx.cur = header;
                ctx.done = false;
                ir::Var cond = lower_expr(ctx, *s.value);
                int header_end = ctx.cur;  // cond lowering stays in one block
                int body_blk = new_block(ctx);
                ctx.cur = body_blk;
                for (const ast::StmtPtr& b : s.body) lower_stmt(ctx, *b);
                int body_end = ctx.cur;
                bool body_done = ctx.done;
                int after = new_block(ctx);
                ctx.cur = header_end;
                ctx.done = false;
                set_term(ctx, ir::Branch{cond, body_blk, after}, s.value->span);
                if (!body_done) {
                    ctx.cur = body_end;
                    ctx.done = false;
                    set_term(ctx, ir::Goto{header}, s.span);  // the loop's back edge
                }
                ctx.cur = after;
                ctx.done = false;
                return;
            }
            case ast::StmtKind::FuncDef:
                throw LoweringError("nested function definitions unsupported", s.span);
            case ast::StmtKind::ClassDef:
                throw LoweringError("class definitions allowed at module level only", s.span);
        }
    }

    void resolve_entry() {
        auto it = prog_.fn_by_name.find(src_.entry);
        if (it == prog_.fn_by_name.end())
            throw ConfigError("entry function '" + src_.entry + "' not found");
        if (prog_.fn(it->second).is_method)
            throw ConfigError("entry function '" + src_.entry + "' is a method");
        prog_.entry_fn = it->second;
    }

    const SourceProgram& src_;
    ir::Program prog_;
    std::map<int, const ast::Stmt*> method_asts_;  // fn index -> FuncDef ast
};

inline ir::Program lower(const SourceProgram& src) { return Lowerer(src).run(); }

}  // namespace pathlens
