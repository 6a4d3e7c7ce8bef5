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
#include <vector>

#include "pathlens/callgraph.hpp"
#include "pathlens/constraints.hpp"
#include "pathlens/forward.hpp"
#include "pathlens/ir.hpp"
#include "pathlens/summary.hpp"

// On-demand backward path search. Starting from a claim about one program
// point it walks the CFG in reverse, transforming a disjunction of Conjuncts
// by weakest-precondition rules, descending into callees and rising to
// callers, until every disjunct is contradictory (claim refuted), some
// disjunct survives to program start (witness), or a budget trips.

namespace pathlens {

enum class QueryResult { Refuted, WitnessFound, BudgetExceeded };

inline const char* to_string(QueryResult r) {
    switch (r) {
        case QueryResult::Refuted: return "refuted";
        case QueryResult::WitnessFound: return "witness";
        case QueryResult::BudgetExceeded: return "budget";
    }
    return "?";
}

struct BackwardOptions {
    long max_steps = 50000;
    int max_conjuncts = 512;
    int max_stack = 3;
    int unroll = 2;
    bool footprint_skip = true;
    bool collect_trace = false;
};

struct QueryOutcome {
    QueryResult result = QueryResult::BudgetExceeded;
    std::string budget_reason;
    long steps = 0;
    std::vector<std::string> witness_trace;           // transitions, oldest last
    std::vector<std::vector<std::string>> refutations;  // per-conjunct traces
};

// The initial conjunct for a claim "var may hold tau at this point".
inline Conjunct make_initial_query(const ir::Var& var, const TauAbs& tau) {
    Conjunct c;
    SymId s = c.ensure_var(var);
    CVal cv;
    if (tau.is_class)
        cv = CVal::of_class(tau.class_name);
    else if (tau.ty == PrimType::None)
        cv = CVal::of_prim(PrimConst::none());  // None is its own witness
    else
        cv = CVal::of_type(tau.ty);
    c.facts.push_back(Fact::eq_const(s, cv));
    return c;
}

class BackwardEngine {
  public:
    BackwardEngine(const ir::Program& prog, const std::vector<ir::Cfg>& cfgs, const CallGraph& cg,
                   const SummaryTable& sums, BackwardOptions opt = {})
        : prog_(prog), cfgs_(cfgs), cg_(cg), sums_(sums), opt_(opt) {}

    QueryOutcome run(const RawCandidate& cand) {
        return run_conjunct(make_initial_query(cand.var, cand.tau), cand.point);
    }

    QueryOutcome run_conjunct(Conjunct init, ir::Point at) {
        out_ = QueryOutcome{};
        budget_reason_.clear();
        work_.clear();
        steps_ = 0;

        Item root;
        root.c = std::move(init);
        root.fn = at.fn;
        root.block = at.block;
        root.idx = at.idx;
        note(root.c, "claim at " + where(at.fn, at.block, at.idx) + ": " + to_string(root.c));
        if (push(std::move(root))) return finish();

        while (!work_.empty()) {
            if (++steps_ > opt_.max_steps) {
                budget("step limit reached");
                break;
            }
            Item it = std::move(work_.back());
            work_.pop_back();
            if (step(std::move(it))) return finish();
        }
        return finish();
    }

  private:
    struct Frame {
        int fn = -1, block = -1, idx = -1;  // resume position, before the call
    };
    using EdgeKey = std::tuple<int, int, int>;  // fn, from, to

    struct Item {
        Conjunct c;
        int fn = -1, block = -1, idx = -1;  // state holds before stmts[idx]
        std::vector<Frame> stack;
        std::map<EdgeKey, int> crossings;
        std::map<EdgeKey, std::string> last_form;
    };

    QueryOutcome finish() {
        out_.steps = steps_;
        if (out_.result == QueryResult::WitnessFound) return std::move(out_);
        if (!budget_reason_.empty()) {
            out_.result = QueryResult::BudgetExceeded;
            out_.budget_reason = budget_reason_;
        } else {
            out_.result = QueryResult::Refuted;
        }
        return std::move(out_);
    }

    void budget(const std::string& why) {
        if (budget_reason_.empty()) budget_reason_ = why;
    }

    std::string where(int fn, int block, int idx) const {
        return prog_.fn(fn).name + "#" + std::to_string(block) + "." + std::to_string(idx);
    }

    void note(Conjunct& c, std::string s) {
        if (opt_.collect_trace) c.trace.push_back(std::move(s));
    }

    // returns true when the query is decided (witness short-circuit)
    bool witness(Item&& it, const std::string& why) {
        note(it.c, "witness: " + why + "; " + to_string(it.c));
        out_.result = QueryResult::WitnessFound;
        out_.witness_trace = std::move(it.c.trace);
        return true;
    }

    void refuted(Item&& it, const std::string& why) {
        if (!opt_.collect_trace) return;
        it.c.trace.push_back("refuted: " + why);
        if (out_.refutations.size() < 64) out_.refutations.push_back(std::move(it.c.trace));
    }

    // false = kept walking, true = query decided
    bool push(Item&& it) {
        ConjunctSolver solver(it.c);
        if (solver.refuted()) {
            refuted(std::move(it), solver.reason());
            return false;
        }
        if (static_cast<int>(work_.size()) >= opt_.max_conjuncts) {
            budget("conjunct frontier limit reached");
            return false;
        }
        work_.push_back(std::move(it));
        return false;
    }

    bool step(Item&& it) {
        const ir::Function& f = prog_.fn(it.fn);
        const ir::Block& blk = f.blocks[static_cast<size_t>(it.block)];
        if (it.idx > 0) {
            const ir::Stmt& s = blk.stmts[static_cast<size_t>(it.idx - 1)];
            if (const auto* call = s.as<ir::Call>()) return wp_call(std::move(it), s, *call);
            Footprint fp = footprint(it.c);
            if (opt_.footprint_skip && !writes_footprint(s, fp)) {
                it.idx--;
                return push(std::move(it));
            }
            if (!wp_stmt(it.c, s)) {
                // statement proved no effect after all; keep walking
            }
            it.idx--;
            return push(std::move(it));
        }
        if (it.block != 0) return cross_preds(std::move(it));
        return at_function_entry(std::move(it));
    }

    // --- statement rules ---------------------------------------------------

  public:
    static bool writes_var(const ir::Stmt& s, const Footprint& fp) {
        if (const auto* c = s.as<ir::ConstAssign>()) return fp.vars.count(c->dst) > 0;
        if (const auto* a = s.as<ir::Alias>()) return fp.vars.count(a->dst) > 0;
        if (const auto* b = s.as<ir::Binop>()) return fp.vars.count(b->dst) > 0;
        if (const auto* r = s.as<ir::AttrRead>()) return fp.vars.count(r->dst) > 0;
        if (const auto* n = s.as<ir::New>()) return fp.vars.count(n->dst) > 0;
        return false;
    }

    bool writes_footprint(const ir::Stmt& s, const Footprint& fp) const {
        if (writes_var(s, fp)) return true;
        if (const auto* w = s.as<ir::AttrWrite>()) return fp.attrs.count(w->attr) > 0;
        if (const auto* c = s.as<ir::Call>()) {
            if (c->dst && fp.vars.count(*c->dst)) return true;
            auto it = cg_.callees.find(s.id);
            if (it != cg_.callees.end())
                for (int callee : it->second)
                    for (const std::string& a : cg_.may_write_attrs[static_cast<size_t>(callee)])
                        if (fp.attrs.count(a)) return true;
            return false;
        }
        return false;
    }

    // Applies the WP rule for a non-call statement in place. Returns false if
    // the statement turned out not to touch the conjunct.
    bool wp_stmt(Conjunct& c, const ir::Stmt& s) {
        if (const auto* ca = s.as<ir::ConstAssign>()) {
            const VarAtom* a = c.find_var(ca->dst);
            if (!a) return false;
            SymId x = a->val;
            c.drop_var(ca->dst);
            c.facts.push_back(Fact::eq_const(x, CVal::of_prim(ca->value)));
            note(c, "assign " + ca->dst.name + " = " + repr(ca->value) + " at " +
                        format_span(prog_.files, s.span));
            return true;
        }
        if (const auto* al = s.as<ir::Alias>()) {
            const VarAtom* a = c.find_var(al->dst);
            if (!a) return false;
            SymId x = a->val;
            c.drop_var(al->dst);
            if (const VarAtom* src = c.find_var(al->src))
                c.facts.push_back(Fact::eq_sym(x, src->val));
            else
                c.vars.push_back(VarAtom{al->src, x});
            note(c, "alias " + al->dst.name + " = " + al->src.name + " at " + format_span(prog_.files, s.span));
            return true;
        }
        if (const auto* b = s.as<ir::Binop>()) {
            const VarAtom* a = c.find_var(b->dst);
            if (!a) return false;
            SymId x = a->val;
            c.drop_var(b->dst);
            SymId y = c.ensure_var(b->lhs);
            SymId z = c.ensure_var(b->rhs);
            c.facts.push_back(Fact::eq_binop(x, b->op, Term::of_sym(y), Term::of_sym(z)));
            note(c, "compute " + b->dst.name + " = " + b->lhs.name + " " + to_string(b->op) + " " +
                        b->rhs.name + " at " + format_span(prog_.files, s.span));
            return true;
        }
        if (const auto* r = s.as<ir::AttrRead>()) {
            const VarAtom* a = c.find_var(r->dst);
            if (!a) return false;
            SymId x = a->val;
            c.drop_var(r->dst);
            SymId y = c.ensure_var(r->obj);
            ConjunctSolver solver(c);
            const FieldAtom* hit = nullptr;
            for (const FieldAtom& fa : c.fields)
                if (fa.attr == r->attr && solver.same(fa.base, y)) {
                    hit = &fa;
                    break;
                }
            if (hit)
                c.facts.push_back(Fact::eq_sym(x, hit->val));
            else
                c.fields.push_back(FieldAtom{y, r->attr, x});
            note(c, "read " + r->dst.name + " = " + r->obj.name + "." + r->attr + " at " +
                        format_span(prog_.files, s.span));
            return true;
        }
        if (const auto* w = s.as<ir::AttrWrite>()) {
            bool any = false;
            for (const FieldAtom& fa : c.fields)
                if (fa.attr == w->attr) any = true;
            if (!any) return false;
            SymId y = c.ensure_var(w->obj);
            ConjunctSolver solver(c);
            std::vector<FieldAtom> kept;
            std::optional<SymId> overwritten;
            for (const FieldAtom& fa : c.fields) {
                if (fa.attr != w->attr) {
                    kept.push_back(fa);
                    continue;
                }
                if (solver.same(fa.base, y))
                    overwritten = fa.val;  // exactly this field was written
                // atoms on other bases may alias the receiver: havoc them
            }
            c.fields = std::move(kept);
            if (overwritten) {
                if (const VarAtom* src = c.find_var(w->src))
                    c.facts.push_back(Fact::eq_sym(*overwritten, src->val));
                else
                    c.vars.push_back(VarAtom{w->src, *overwritten});
            }
            note(c, "store " + w->obj.name + "." + w->attr + " = " + w->src.name + " at " +
                        format_span(prog_.files, s.span));
            return true;
        }
        if (const auto* n = s.as<ir::New>()) {
            const VarAtom* a = c.find_var(n->dst);
            if (!a) return false;
            SymId x = a->val;
            ConjunctSolver solver(c);
            std::vector<FieldAtom> kept;
            for (const FieldAtom& fa : c.fields) {
                if (solver.same(fa.base, x)) {
                    // a brand new object has no fields yet
                    c.facts.push_back(Fact::eq_const(fa.val, CVal::undef()));
                } else {
                    kept.push_back(fa);
                }
            }
            c.fields = std::move(kept);
            c.drop_var(n->dst);
            c.facts.push_back(
                Fact::eq_const(x, CVal::of_class(prog_.cls(n->class_idx).name)));
            note(c, "allocate " + n->dst.name + " = new " + prog_.cls(n->class_idx).name + " at " +
                        format_span(prog_.files, s.span));
            return true;
        }
        return false;  // Nop
    }

  private:
    // --- calls ---------------------------------------------------------------

    bool wp_call(Item&& it, const ir::Stmt& s, const ir::Call& call) {
        Footprint fp = footprint(it.c);
        bool dst_relevant = call.dst && fp.vars.count(*call.dst) > 0;
        auto ce = cg_.callees.find(s.id);
        std::vector<int> user_callees;
        if (ce != cg_.callees.end()) {
            bool heap_relevant = false;
            for (int callee : ce->second)
                for (const std::string& a : cg_.may_write_attrs[static_cast<size_t>(callee)])
                    if (fp.attrs.count(a)) heap_relevant = true;
            if (dst_relevant || heap_relevant)
                user_callees.assign(ce->second.begin(), ce->second.end());
        }
        auto se = cg_.summary_callees.find(s.id);
        bool has_summary = se != cg_.summary_callees.end() && !se->second.empty();

        if (user_callees.empty() && !(dst_relevant && has_summary)) {
            // the call cannot change what the conjunct talks about
            it.idx--;
            return push(std::move(it));
        }

        // summary branches: pure, return value known (or havocked)
        if (has_summary && dst_relevant) {
            for (const std::string& name : se->second) {
                Item fork = it;
                const VarAtom* a = fork.c.find_var(*call.dst);
                SymId x = a->val;
                fork.c.drop_var(*call.dst);
                auto fit = sums_.fns.find(name);
                if (fit != sums_.fns.end()) {
                    fork.c.facts.push_back(Fact::eq_const(x, summary_cval(fit->second.ret)));
                    note(fork.c, "summary call " + name + " at " + format_span(prog_.files, s.span));
                } else {
                    // summarized method: result unknown, drop the claim anchor
                    note(fork.c, "summarized method call havocs " + call.dst->name + " at " +
                                     format_span(prog_.files, s.span));
                }
                fork.idx--;
                if (push(std::move(fork))) return true;
            }
        } else if (has_summary && !user_callees.empty()) {
            // heap-relevant walk continues past the pure summary possibility
            Item fork = it;
            fork.idx--;
            if (push(std::move(fork))) return true;
        }

        if (user_callees.empty()) return false;
        if (static_cast<int>(it.stack.size()) >= opt_.max_stack) {
            budget("call descent depth limit reached");
            return false;
        }
        for (int callee : user_callees) {
            const ir::Function& cf = prog_.fn(callee);
            const ir::Cfg& cfg = cfgs_[static_cast<size_t>(callee)];
            for (int exit_b : cfg.exit_blocks) {
                Item fork = it;
                fork.stack.push_back(Frame{it.fn, it.block, it.idx - 1});
                // the call result becomes the callee's returned variable
                if (call.dst) {
                    if (const VarAtom* a = fork.c.find_var(*call.dst)) {
                        SymId x = a->val;
                        fork.c.drop_var(*call.dst);
                        const auto& ret =
                            std::get<ir::Ret>(cf.blocks[static_cast<size_t>(exit_b)].term);
                        if (ret.value)
                            fork.c.vars.push_back(VarAtom{*ret.value, x});
                        else
                            fork.c.facts.push_back(
                                Fact::eq_const(x, CVal::of_prim(PrimConst::none())));
                    }
                }
                fork.fn = callee;
                fork.block = exit_b;
                fork.idx = static_cast<int>(cf.blocks[static_cast<size_t>(exit_b)].stmts.size());
                note(fork.c, "descend into " + cf.name + " via exit #" + std::to_string(exit_b) +
                                 " from " + format_span(prog_.files, s.span));
                if (push(std::move(fork))) return true;
            }
        }
        return false;
    }

    CVal summary_cval(const SummaryRet& r) const {
        switch (r.kind) {
            case SummaryRet::Kind::Prim: return CVal::of_prim(r.prim);
            case SummaryRet::Kind::Type: return CVal::of_type(r.type);
            case SummaryRet::Kind::Class: return CVal::of_class(r.class_name);
        }
        return CVal::undef();
    }

    // --- edges ---------------------------------------------------------------

    void collect_writes(const ir::Stmt& s, std::set<ir::Var>& vars,
                        std::set<std::string>& attrs) const {
        if (const auto* c = s.as<ir::ConstAssign>()) vars.insert(c->dst);
        if (const auto* a = s.as<ir::Alias>()) vars.insert(a->dst);
        if (const auto* b = s.as<ir::Binop>()) vars.insert(b->dst);
        if (const auto* r = s.as<ir::AttrRead>()) vars.insert(r->dst);
        if (const auto* n = s.as<ir::New>()) vars.insert(n->dst);
        if (const auto* w = s.as<ir::AttrWrite>()) attrs.insert(w->attr);
        if (const auto* c = s.as<ir::Call>()) {
            if (c->dst) vars.insert(*c->dst);
            auto it = cg_.callees.find(s.id);
            if (it != cg_.callees.end())
                for (int callee : it->second)
                    for (const std::string& a : cg_.may_write_attrs[static_cast<size_t>(callee)])
                        attrs.insert(a);
        }
    }

    bool loop_writes_footprint(const ir::Cfg& cfg, const ir::Function& f,
                               const std::pair<int, int>& edge, const Footprint& fp) const {
        auto it = cfg.loop_blocks.find(edge);
        if (it == cfg.loop_blocks.end()) return true;  // unknown: stay conservative
        for (int b : it->second)
            for (const ir::Stmt& s : f.blocks[static_cast<size_t>(b)].stmts)
                if (writes_footprint(s, fp)) return true;
        return false;
    }

    // Drop every atom the loop can write. A pure weakening: claims on
    // locations the loop never touches keep their refutation power, while
    // loop-carried state becomes unconstrained.
    void havoc_loop_writes(const ir::Cfg& cfg, const ir::Function& f,
                           const std::pair<int, int>& edge, Conjunct& c) const {
        auto it = cfg.loop_blocks.find(edge);
        if (it == cfg.loop_blocks.end()) {
            c.vars.clear();
            c.fields.clear();
            return;
        }
        std::set<ir::Var> wvars;
        std::set<std::string> wattrs;
        for (int b : it->second)
            for (const ir::Stmt& s : f.blocks[static_cast<size_t>(b)].stmts)
                collect_writes(s, wvars, wattrs);
        c.vars.erase(std::remove_if(c.vars.begin(), c.vars.end(),
                                    [&](const VarAtom& a) { return wvars.count(a.var) > 0; }),
                     c.vars.end());
        // attr-name match suffices: base aliasing across iterations is unknown
        c.fields.erase(std::remove_if(c.fields.begin(), c.fields.end(),
                                      [&](const FieldAtom& a) { return wattrs.count(a.attr) > 0; }),
                       c.fields.end());
    }

    bool cross_preds(Item&& it) {
        const ir::Function& f = prog_.fn(it.fn);
        const ir::Cfg& cfg = cfgs_[static_cast<size_t>(it.fn)];
        const auto& preds = cfg.preds[static_cast<size_t>(it.block)];
        Footprint fp = footprint(it.c);
        auto cross_edge = [&](Item&& fork, const ir::PredEdge& pe) -> bool {
            const ir::Block& pred_blk = f.blocks[static_cast<size_t>(pe.from)];
            if (pe.kind != ir::EdgeKind::Fall) {
                const auto& br = std::get<ir::Branch>(pred_blk.term);
                SymId t = fork.c.ensure_var(br.cond);
                bool val = pe.kind == ir::EdgeKind::BranchTrue;
                fork.c.facts.push_back(
                    Fact::eq_const(t, CVal::of_prim(PrimConst::boolean(val))));
                note(fork.c, std::string("branch ") + (val ? "taken" : "not taken") + " on " +
                                 br.cond.name + " at " +
                                 format_span(prog_.files, pred_blk.term_span));
            }
            fork.block = pe.from;
            fork.idx = static_cast<int>(pred_blk.stmts.size());
            return push(std::move(fork));
        };
        for (const ir::PredEdge& pe : preds) {
            bool is_back = cfg.is_back_edge(pe.from, it.block);
            Item fork = it;
            if (is_back) {
                std::pair<int, int> edge{pe.from, it.block};
                if (!loop_writes_footprint(cfg, f, edge, fp))
                    continue;  // iterations cannot change the claim; entry edge covers it
                EdgeKey key{it.fn, pe.from, it.block};
                std::string form = canonical_form(fork.c);
                auto lf = fork.last_form.find(key);
                if (lf != fork.last_form.end() && lf->second == form)
                    continue;  // no progress around the loop; a previous pass covers it
                int& count = fork.crossings[key];
                if (count >= opt_.unroll) {
                    // summarize all deeper iterations: havoc what the loop
                    // writes, then leave the loop through its entry edges
                    havoc_loop_writes(cfg, f, edge, fork.c);
                    note(fork.c, "loop in " + f.name + " summarized after " +
                                     std::to_string(opt_.unroll) + " passes");
                    for (const ir::PredEdge& pe2 : preds) {
                        if (cfg.is_back_edge(pe2.from, it.block)) continue;
                        Item out = fork;
                        if (cross_edge(std::move(out), pe2)) return true;
                    }
                    continue;
                }
                count++;
                fork.last_form[key] = std::move(form);
            }
            if (cross_edge(std::move(fork), pe)) return true;
        }
        return false;
    }

    // --- function boundaries ---------------------------------------------------

    // Map formal-parameter atoms of `callee` onto the actuals at a call site.
    // Returns false when the conjunct is contradictory at this boundary.
    bool map_formals(Conjunct& c, int callee, const ir::Call& call) {
        const ir::Function& cf = prog_.fn(callee);
        size_t expected = cf.params.size() - (cf.is_method ? 1 : 0);
        if (call.args.size() != expected) return false;  // would not dispatch
        if (cf.is_method && !std::holds_alternative<ir::MethodCallee>(call.callee)) return false;
        size_t ai = 0;
        for (size_t p = 0; p < cf.params.size(); p++) {
            ir::Var formal{callee, cf.params[p]};
            const VarAtom* fa = c.find_var(formal);
            ir::Var actual;
            bool is_self = cf.is_method && p == 0;
            if (is_self) {
                actual = std::get<ir::MethodCallee>(call.callee).recv;
            } else {
                actual = call.args[ai];
                ai++;
            }
            if (fa) {
                SymId fs = fa->val;
                c.drop_var(formal);
                if (const VarAtom* aa = c.find_var(actual))
                    c.facts.push_back(Fact::eq_sym(fs, aa->val));
                else
                    c.vars.push_back(VarAtom{actual, fs});
                if (is_self)
                    c.facts.push_back(Fact::eq_const(
                        fs, CVal::of_class(prog_.cls(cf.class_idx).name)));
            } else if (is_self) {
                // dispatch still pins the receiver's class
                SymId rs = c.ensure_var(actual);
                c.facts.push_back(Fact::eq_const(
                    rs, CVal::of_class(prog_.cls(cf.class_idx).name)));
            }
        }
        return true;
    }

    bool at_function_entry(Item&& it) {
        const ir::Function& f = prog_.fn(it.fn);
        // locals that were never assigned on this path make it impossible
        for (const VarAtom& a : it.c.vars) {
            bool local = it.fn == prog_.module_fn ? a.var.fn == ir::kModuleScope
                                                  : a.var.fn == it.fn;
            if (!local) continue;
            bool is_param = false;
            for (const std::string& p : f.params)
                if (a.var.name == p) is_param = true;
            if (!is_param) {
                refuted(std::move(it), "'" + a.var.name + "' is read before any assignment in " +
                                           f.name);
                return false;
            }
        }

        if (!it.stack.empty()) {
            Frame fr = it.stack.back();
            it.stack.pop_back();
            const ir::Block& cb = prog_.fn(fr.fn).blocks[static_cast<size_t>(fr.block)];
            const ir::Stmt& cs = cb.stmts[static_cast<size_t>(fr.idx)];
            if (!map_formals(it.c, it.fn, *cs.as<ir::Call>())) {
                refuted(std::move(it), "arguments cannot bind at this call site");
                return false;
            }
            note(it.c, "return to caller " + prog_.fn(fr.fn).name);
            it.fn = fr.fn;
            it.block = fr.block;
            it.idx = fr.idx;
            return push(std::move(it));
        }

        if (it.fn == prog_.module_fn) {
            // the real program start: nothing exists except entry inputs
            for (const FieldAtom& fa : it.c.fields) {
                refuted(std::move(it), "heap is empty at program start (." + fa.attr + ")");
                return false;
            }
            for (const VarAtom& a : it.c.vars) {
                if (a.var.fn == prog_.entry_fn) {
                    bool is_param = false;
                    for (const std::string& p : prog_.fn(prog_.entry_fn).params)
                        if (a.var.name == p) is_param = true;
                    if (is_param) continue;  // unconstrained primitive input
                }
                refuted(std::move(it),
                        "'" + a.var.name + "' does not exist at program start");
                return false;
            }
            return witness(std::move(it), "satisfiable at program start");
        }

        bool decided = false;
        if (it.fn == prog_.entry_fn) {
            // the entry point runs right after module initialization
            const ir::Cfg& mcfg = cfgs_[static_cast<size_t>(prog_.module_fn)];
            const ir::Function& mf = prog_.fn(prog_.module_fn);
            for (int exit_b : mcfg.exit_blocks) {
                Item fork = it;
                fork.fn = prog_.module_fn;
                fork.block = exit_b;
                fork.idx = static_cast<int>(mf.blocks[static_cast<size_t>(exit_b)].stmts.size());
                note(fork.c, "entry reached; continue into module initialization");
                if (push(std::move(fork))) return true;
            }
            decided = true;  // handled; callers below are still possible
        }

        auto callers = cg_.callers.find(it.fn);
        if (callers != cg_.callers.end()) {
            for (int site_id : callers->second) {
                const CallSite& site = cg_.site_of(site_id);
                Item fork = it;
                if (!map_formals(fork.c, it.fn, *site.call)) continue;
                fork.fn = site.fn;
                fork.block = site.point.block;
                fork.idx = site.point.idx;
                note(fork.c, "rise to caller " + prog_.fn(site.fn).name + " at " +
                                 format_span(prog_.files,
                                             prog_.fn(site.fn)
                                                 .blocks[static_cast<size_t>(site.point.block)]
                                                 .stmts[static_cast<size_t>(site.point.idx)]
                                                 .span));
                if (push(std::move(fork))) return true;
            }
            decided = true;
        }
        if (!decided) {
            // function with no callers: no execution can be inside it
            refuted(std::move(it), f.name + " is never called");
        }
        return false;
    }

    const ir::Program& prog_;
    const std::vector<ir::Cfg>& cfgs_;
    const CallGraph& cg_;
    const SummaryTable& sums_;
    BackwardOptions opt_;

    std::vector<Item> work_;
    QueryOutcome out_;
    std::string budget_reason_;
    long steps_ = 0;
};

}  // namespace pathlens
