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

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathlens/abstract.hpp"
#include "pathlens/cfg.hpp"
#include "pathlens/ir.hpp"
#include "pathlens/summary.hpp"

namespace pathlens {

struct ForwardOptions {
    int k_prim = 4;
    long max_block_visits = 500000;  // divergence guard (I_max)
    int max_context_depth = 12;
    long max_contexts = 100000;
};

// The claimed offending abstraction of a candidate, at type granularity:
// either "instance of class C" or a primitive type.
struct TauAbs {
    bool is_class = false;
    std::string class_name;
    PrimType ty = PrimType::None;

    static TauAbs cls(std::string name) {
        TauAbs t;
        t.is_class = true;
        t.class_name = std::move(name);
        return t;
    }
    static TauAbs prim(PrimType p) {
        TauAbs t;
        t.ty = p;
        return t;
    }
    std::string str() const { return is_class ? class_name : to_string(ty); }
    friend bool operator<(const TauAbs& a, const TauAbs& b) {
        return std::tie(a.is_class, a.class_name, a.ty) < std::tie(b.is_class, b.class_name, b.ty);
    }
    friend bool operator==(const TauAbs& a, const TauAbs& b) {
        return a.is_class == b.is_class && a.class_name == b.class_name && a.ty == b.ty;
    }
};

enum class CandidateKind { AttributeError, PossiblyUndefined, ValueError };

inline const char* to_string(CandidateKind k) {
    switch (k) {
        case CandidateKind::AttributeError: return "attribute-error";
        case CandidateKind::PossiblyUndefined: return "possibly-undefined";
        case CandidateKind::ValueError: return "value-error";
    }
    return "?";
}

// A raw candidate event as the forward pass records it.
struct RawCandidate {
    CandidateKind kind = CandidateKind::AttributeError;
    ir::Point point;
    Span span;
    ir::Var var;          // receiver / offending variable
    std::string attr;     // attribute involved (AttributeError only)
    TauAbs tau;           // claimed offending abstraction (AttributeError only)
    std::string detail;   // receiver rendering, e.g. "addr0:Create" or "0"
    std::vector<int> context;  // call-site statement ids, outermost first

    auto key() const { return std::tie(point, var, attr, tau, kind, context); }
    friend bool operator<(const RawCandidate& a, const RawCandidate& b) {
        return a.key() < b.key();
    }
};

struct ForwardResult {
    std::map<ir::Point, AbstractState> states;
    std::vector<RawCandidate> candidates;
    // call-site statement id -> possible user callees / summary callees
    std::map<int, std::set<int>> callee_fns;
    std::map<int, std::set<std::string>> callee_summaries;
    long block_visits = 0;
};

// Forward flow-sensitive, path-insensitive abstract interpretation.
// Inter-procedural via input-state-keyed function summaries iterated to a
// global fixed point; candidates are extracted afterwards by replaying the
// memoized call tree so transient fixpoint states never surface.
class ForwardAnalysis {
  public:
    ForwardAnalysis(const ir::Program& prog, const std::vector<ir::Cfg>& cfgs,
                    const SummaryTable& summaries, ForwardOptions opt = {})
        : prog_(prog), cfgs_(cfgs), sums_(summaries), opt_(opt) {}

    ForwardResult run() {
        prim_top_ = {AbstractValue::prim_ty(PrimType::Bool), AbstractValue::prim_ty(PrimType::Int),
                     AbstractValue::prim_ty(PrimType::Float), AbstractValue::prim_ty(PrimType::Str),
                     AbstractValue::prim_ty(PrimType::None)};
        // Global fixed point: revalidate every reachable summary until no
        // entry grows. Monotone joins over a finite lattice, so this ends.
        int module_key = -1, entry_key = -1;
        do {
            changed_ = false;
            validated_.clear();
            in_progress_.clear();
            module_key = analyze(prog_.module_fn, AbstractState{});
            AbstractState entry_in = project(entries_[static_cast<size_t>(module_key)].out);
            const ir::Function& ef = prog_.fn(prog_.entry_fn);
            for (const std::string& p : ef.params)
                entry_in[MemLoc::for_var(ir::Var{prog_.entry_fn, p})] = prim_top_;
            entry_key = analyze(prog_.entry_fn, entry_in);
        } while (changed_);

        // Candidate + state extraction by replay over final summaries.
        replay(module_key, {});
        replay(entry_key, {});

        ForwardResult res;
        res.states = std::move(states_);
        res.callee_fns = std::move(callee_fns_);
        res.callee_summaries = std::move(callee_summaries_);
        res.block_visits = visits_;
        std::set<RawCandidate> dedup(cands_.begin(), cands_.end());
        res.candidates.assign(dedup.begin(), dedup.end());
        return res;
    }

  private:
    struct Entry {
        int fn = -1;
        AbstractState in;
        ValueSet ret;
        AbstractState out;          // fields + module vars at exits
        std::vector<std::optional<AbstractState>> block_in;
        bool recursed = false;
        bool recorded = false;
        // recorded during replay
        std::vector<RawCandidate> local_cands;
        std::vector<std::pair<int, int>> call_refs;  // (site stmt id, callee key)
    };

    // --- memoization -----------------------------------------------------

    std::string key_string(int fn, const AbstractState& in) const {
        std::string s = std::to_string(fn) + "|";
        for (const auto& [loc, vals] : in) {
            if (loc.kind == MemLoc::Kind::Var)
                s += "v" + std::to_string(loc.var.fn) + ":" + loc.var.name;
            else
                s += "f" + std::to_string(loc.site) + "." + loc.attr;
            s += "=";
            for (const AbstractValue& v : vals) s += to_string(prog_, v) + ",";
            s += ";";
        }
        return s;
    }

    int analyze(int fn, AbstractState in) {
        std::string ks = key_string(fn, in);
        auto it = key_ids_.find(ks);
        int key;
        if (it == key_ids_.end()) {
            key = static_cast<int>(entries_.size());
            key_ids_[ks] = key;
            Entry e;
            e.fn = fn;
            e.in = std::move(in);
            entries_.push_back(std::move(e));
        } else {
            key = it->second;
        }
        if (validated_.count(key)) return key;
        if (in_progress_.count(key)) {
            entries_[static_cast<size_t>(key)].recursed = true;
            return key;  // caller consumes the current partial summary
        }
        in_progress_.insert(key);
        run_fixpoint(key);
        in_progress_.erase(key);
        validated_.insert(key);
        return key;
    }

    void run_fixpoint(int key) {
        Entry& e = entries_[static_cast<size_t>(key)];
        const ir::Function& f = prog_.fn(e.fn);
        size_t n = f.blocks.size();
        std::vector<std::optional<AbstractState>> in(n);
        in[0] = e.in;
        std::set<int> work{0};
        ValueSet ret;
        AbstractState out;
        bool any_exit = false;
        while (!work.empty()) {
            int b = *work.begin();
            work.erase(work.begin());
            if (++visits_ > opt_.max_block_visits)
                throw DivergenceError("forward fixed point exceeded " +
                                      std::to_string(opt_.max_block_visits) + " block visits");
            AbstractState st = *in[static_cast<size_t>(b)];
            const ir::Block& blk = f.blocks[static_cast<size_t>(b)];
            for (const ir::Stmt& s : blk.stmts)
                st = transfer(s, std::move(st), ir::Point{e.fn, b, 0}, nullptr);
            if (const auto* g = std::get_if<ir::Goto>(&blk.term)) {
                propagate(in, work, g->target, st);
            } else if (const auto* br = std::get_if<ir::Branch>(&blk.term)) {
                if (auto t = refine_branch(blk, st, true))
                    propagate(in, work, br->on_true, *t);
                if (auto fst = refine_branch(blk, st, false))
                    propagate(in, work, br->on_false, *fst);
            } else {
                const auto& r = std::get<ir::Ret>(blk.term);
                ValueSet rv;
                if (r.value) {
                    if (auto v = read(st, *r.value)) rv = *v;
                } else {
                    rv = {AbstractValue::prim_const(PrimConst::none())};
                }
                ret = join_values(ret, rv, opt_.k_prim);
                out = pathlens::join(out, project(st), opt_.k_prim);
                any_exit = true;
            }
        }
        (void)any_exit;
        // monotone accumulation into the summary
        ValueSet new_ret = join_values(e.ret, ret, opt_.k_prim);
        AbstractState new_out = pathlens::join(e.out, out, opt_.k_prim);
        if (!values_leq(new_ret, e.ret) || !state_leq(new_out, e.out)) {
            changed_ = true;
            e.ret = std::move(new_ret);
            e.out = std::move(new_out);
        }
        e.block_in = std::move(in);
    }

    void propagate(std::vector<std::optional<AbstractState>>& in, std::set<int>& work, int target,
                   const AbstractState& st) {
        auto& slot = in[static_cast<size_t>(target)];
        if (!slot) {
            slot = st;
            work.insert(target);
            return;
        }
        AbstractState joined = pathlens::join(*slot, st, opt_.k_prim);
        if (!state_leq(joined, *slot)) {
            slot = std::move(joined);
            work.insert(target);
        }
    }

    // keep only heap fields and module-level variables (what survives a call)
    AbstractState project(const AbstractState& st) const {
        AbstractState out;
        for (const auto& [loc, vals] : st)
            if (loc.kind == MemLoc::Kind::Field ||
                (loc.kind == MemLoc::Kind::Var && loc.var.fn == ir::kModuleScope))
                out.emplace(loc, vals);
        return out;
    }

    static std::optional<ValueSet> read(const AbstractState& st, const ir::Var& v) {
        auto it = st.find(MemLoc::for_var(v));
        if (it == st.end()) return std::nullopt;
        return it->second;
    }

    // --- branch refinement -------------------------------------------------

    // Only `y == c` conditions (with c a singleton Prim on either side)
    // refine; everything else leaves the state unchanged. Returns nullopt when
    // the refined set would be empty, i.e. the edge is infeasible.
    std::optional<AbstractState> refine_branch(const ir::Block& blk, const AbstractState& st,
                                               bool polarity) const {
        const auto& br = std::get<ir::Branch>(blk.term);
        if (blk.stmts.empty()) return st;
        const ir::Binop* cmp = blk.stmts.back().as<ir::Binop>();
        if (!cmp || cmp->op != BinOp::Eq || !(cmp->dst == br.cond)) return st;
        auto singleton_prim = [&](const ir::Var& v) -> std::optional<PrimConst> {
            auto vals = read(st, v);
            if (!vals || vals->size() != 1) return std::nullopt;
            const AbstractValue& a = *vals->begin();
            if (a.kind != AbstractValue::Kind::Prim) return std::nullopt;
            return a.prim;
        };
        ir::Var target;
        std::optional<PrimConst> c;
        if ((c = singleton_prim(cmp->rhs)))
            target = cmp->lhs;
        else if ((c = singleton_prim(cmp->lhs)))
            target = cmp->rhs;
        else
            return st;
        auto vals = read(st, target);
        if (!vals) return st;
        ValueSet refined;
        for (const AbstractValue& v : *vals) {
            if (polarity) {
                // keep values that could strictly equal c
                if (v.kind == AbstractValue::Kind::Prim) {
                    if (v.prim == *c) refined.insert(v);
                } else if (v.kind == AbstractValue::Kind::PrimTy) {
                    if (v.ty == c->type) refined.insert(v);
                }
                // Addr/ClassTy never equal a primitive constant
            } else {
                if (v.kind == AbstractValue::Kind::Prim && v.prim == *c) continue;
                refined.insert(v);
            }
        }
        if (refined.empty()) return std::nullopt;
        AbstractState out = st;
        out[MemLoc::for_var(target)] = std::move(refined);
        return out;
    }

    // --- transfer ----------------------------------------------------------

    struct Recorder {
        Entry* entry = nullptr;
        ForwardAnalysis* self = nullptr;
    };

    // One-statement transfer. When `rec` is non-null this is the recording
    // pass: candidate events fire and call edges are written to the entry.
    AbstractState transfer(const ir::Stmt& s, AbstractState st, ir::Point pt, Recorder* rec) {
        struct V {
            ForwardAnalysis& a;
            AbstractState& st;
            const ir::Stmt& stmt;
            ir::Point pt;
            Recorder* rec;

            std::optional<ValueSet> read_var(const ir::Var& v) {
                auto r = read(st, v);
                if (!r && rec) {
                    RawCandidate c;
                    c.kind = CandidateKind::PossiblyUndefined;
                    c.point = pt;
                    c.span = stmt.span;
                    c.var = v;
                    rec->entry->local_cands.push_back(std::move(c));
                    return ValueSet{AbstractValue::prim_ty(PrimType::None)};
                }
                return r;
            }

            void attr_error(const ir::Var& v, const std::string& attr, const AbstractValue& off) {
                if (!rec) return;
                RawCandidate c;
                c.kind = CandidateKind::AttributeError;
                c.point = pt;
                c.span = stmt.span;
                c.var = v;
                c.attr = attr;
                c.tau = a.tau_of(off);
                c.detail = to_string(a.prog_, off);
                rec->entry->local_cands.push_back(std::move(c));
            }

            void operator()(const ir::ConstAssign& c) {
                st[MemLoc::for_var(c.dst)] = {AbstractValue::prim_const(c.value)};
            }
            void operator()(const ir::Alias& al) {
                if (auto v = read_var(al.src))
                    st[MemLoc::for_var(al.dst)] = *v;
                else
                    st.erase(MemLoc::for_var(al.dst));
            }
            void operator()(const ir::Binop& b) { a.transfer_binop(b, st, pt, stmt, rec, *this); }
            void operator()(const ir::AttrRead& r) {
                auto vy = read_var(r.obj);
                ValueSet result;
                if (vy)
                    for (const AbstractValue& v : *vy) a.read_attr(st, v, r, result, *this);
                if (result.empty())
                    st.erase(MemLoc::for_var(r.dst));
                else
                    st[MemLoc::for_var(r.dst)] = widen_prims(std::move(result), a.opt_.k_prim);
            }
            void operator()(const ir::AttrWrite& w) {
                auto vy = read_var(w.obj);
                auto vx = read_var(w.src);
                ValueSet xvals =
                    vx ? *vx : ValueSet{AbstractValue::prim_ty(PrimType::None)};
                if (!vy) return;
                for (const AbstractValue& v : *vy) {
                    if (v.kind == AbstractValue::Kind::Addr) {
                        MemLoc loc = MemLoc::for_field(v.site, w.attr);
                        auto it = st.find(loc);
                        if (it == st.end())
                            st[loc] = xvals;  // still weak: the site may be shared
                        else
                            it->second = join_values(it->second, xvals, a.opt_.k_prim);
                    } else if (v.kind == AbstractValue::Kind::ClassTy) {
                        // field write on a summarized instance: untracked
                    } else {
                        attr_error(w.obj, w.attr, v);  // setting attrs on primitives
                    }
                }
            }
            void operator()(const ir::New& n) {
                st[MemLoc::for_var(n.dst)] = {AbstractValue::addr(n.site)};
            }
            void operator()(const ir::Call& c) { a.transfer_call(c, st, pt, stmt, rec, *this); }
            void operator()(const ir::Nop&) {}
        };
        V v{*this, st, s, pt, rec};
        std::visit(v, s.data);
        return st;
    }

    TauAbs tau_of(const AbstractValue& v) const {
        switch (v.kind) {
            case AbstractValue::Kind::Addr:
                return TauAbs::cls(prog_.cls(prog_.alloc_sites[static_cast<size_t>(v.site)].class_idx).name);
            case AbstractValue::Kind::ClassTy: return TauAbs::cls(v.class_name);
            case AbstractValue::Kind::PrimTy: return TauAbs::prim(v.ty);
            case AbstractValue::Kind::Prim: return TauAbs::prim(v.prim.type);
        }
        return TauAbs::prim(PrimType::None);
    }

    // class name used for summary attr lookups of a value, "" if none applies
    std::string summary_class_of(const AbstractValue& v) const {
        switch (v.kind) {
            case AbstractValue::Kind::Addr:
                return prog_.cls(prog_.alloc_sites[static_cast<size_t>(v.site)].class_idx).name;
            case AbstractValue::Kind::ClassTy: return v.class_name;
            case AbstractValue::Kind::PrimTy: return prim_summary_class(v.ty);
            case AbstractValue::Kind::Prim: return prim_summary_class(v.prim.type);
        }
        return "";
    }

    // does this value's class (program or summary) declare `attr` at all?
    bool value_has_attr_decl(const AbstractValue& v, const std::string& attr) const {
        if (v.kind == AbstractValue::Kind::Addr) {
            const auto& site = prog_.alloc_sites[static_cast<size_t>(v.site)];
            const ir::ClassInfo& ci = prog_.cls(site.class_idx);
            if (ci.methods.count(attr)) return true;
        }
        if (v.kind == AbstractValue::Kind::ClassTy) {
            auto it = prog_.class_by_name.find(v.class_name);
            if (it != prog_.class_by_name.end() && prog_.cls(it->second).methods.count(attr))
                return true;
        }
        return sums_.class_has_attr(summary_class_of(v), attr);
    }

    template <class V>
    void read_attr(AbstractState& st, const AbstractValue& v, const ir::AttrRead& r,
                   ValueSet& result, V& vis) {
        if (v.kind == AbstractValue::Kind::Addr) {
            auto it = st.find(MemLoc::for_field(v.site, r.attr));
            if (it != st.end()) {
                result.insert(it->second.begin(), it->second.end());
                return;
            }
            const auto& site = prog_.alloc_sites[static_cast<size_t>(v.site)];
            if (prog_.cls(site.class_idx).methods.count(r.attr))
                return;  // methods are not first-class values; reads yield nothing
        }
        if (value_has_attr_decl(v, r.attr)) {
            // summary attribute: value unknown, assume an arbitrary primitive
            result.insert(prim_top_.begin(), prim_top_.end());
            return;
        }
        vis.attr_error(r.obj, r.attr, v);
    }

    template <class V>
    void transfer_binop(const ir::Binop& b, AbstractState& st, ir::Point pt, const ir::Stmt& stmt,
                        Recorder* rec, V& vis) {
        auto vy = vis.read_var(b.lhs);
        auto vz = vis.read_var(b.rhs);
        if (rec && b.op == BinOp::FloorDiv && vz) {
            for (const AbstractValue& v : *vz) {
                bool zeroish =
                    (v.kind == AbstractValue::Kind::Prim &&
                     (v.prim == PrimConst::integer(0) || v.prim == PrimConst::floating(0.0))) ||
                    (v.kind == AbstractValue::Kind::PrimTy &&
                     (v.ty == PrimType::Int || v.ty == PrimType::Float));
                if (zeroish) {
                    RawCandidate c;
                    c.kind = CandidateKind::ValueError;
                    c.point = pt;
                    c.span = stmt.span;
                    c.var = b.rhs;
                    c.detail = to_string(prog_, v);
                    c.tau = tau_of(v);
                    rec->entry->local_cands.push_back(std::move(c));
                    break;
                }
            }
        }
        MemLoc dst = MemLoc::for_var(b.dst);
        if (!vy || !vz) {
            st.erase(dst);
            return;
        }
        // constant folding when both operand sets are singleton Prims
        if (vy->size() == 1 && vz->size() == 1 &&
            vy->begin()->kind == AbstractValue::Kind::Prim &&
            vz->begin()->kind == AbstractValue::Kind::Prim) {
            if (auto folded = eval_prim_binop(b.op, vy->begin()->prim, vz->begin()->prim)) {
                st[dst] = {AbstractValue::prim_const(*folded)};
                return;
            }
        }
        if (is_comparison(b.op) || is_boolean_op(b.op)) {
            st[dst] = {AbstractValue::prim_ty(PrimType::Bool)};
            return;
        }
        // arithmetic: join of the operand sets with Prims coarsened to their
        // types (keeps the result sound once either side is non-constant)
        ValueSet out;
        for (const ValueSet* side : {&*vy, &*vz}) {
            for (const AbstractValue& v : *side) {
                if (v.kind == AbstractValue::Kind::Prim)
                    out.insert(AbstractValue::prim_ty(v.prim.type));
                else if (v.kind == AbstractValue::Kind::PrimTy)
                    out.insert(v);
                // addresses/instances never flow out of arithmetic
            }
        }
        if (out.empty())
            st.erase(dst);
        else
            st[dst] = std::move(out);
    }

    template <class V>
    void transfer_call(const ir::Call& c, AbstractState& st, ir::Point, const ir::Stmt& stmt,
                       Recorder* rec, V& vis) {
        std::vector<ValueSet> argvals;
        for (const ir::Var& a : c.args) {
            auto v = vis.read_var(a);
            argvals.push_back(v ? *v : ValueSet{});
        }
        ValueSet ret;
        bool have_ret = false;

        if (const auto* d = std::get_if<ir::DirectCallee>(&c.callee)) {
            auto fit = prog_.fn_by_name.find(d->name);
            if (fit != prog_.fn_by_name.end()) {
                callee_fns_[stmt.id].insert(fit->second);
                ret = call_user(fit->second, std::nullopt, argvals, st, stmt.id, rec);
                have_ret = true;
            } else if (sums_.has_fn(d->name)) {
                const SummaryFn& sf = sums_.fns.at(d->name);
                if (sf.arity != static_cast<int>(c.args.size()))
                    throw AnalysisError("summary '" + d->name + "' expects " +
                                            std::to_string(sf.arity) + " argument(s)",
                                        stmt.span);
                callee_summaries_[stmt.id].insert(d->name);
                ret = summary_ret_values(sf.ret);
                have_ret = true;
            } else {
                throw UnresolvedCalleeError(
                    "call target '" + d->name + "' matches no function or summary", stmt.span);
            }
        } else {
            const auto& m = std::get<ir::MethodCallee>(c.callee);
            auto vy = vis.read_var(m.recv);
            if (vy) {
                // group address receivers by class so each callee runs once
                std::map<int, ValueSet> by_class;
                for (const AbstractValue& v : *vy) {
                    if (v.kind == AbstractValue::Kind::Addr) {
                        int ci = prog_.alloc_sites[static_cast<size_t>(v.site)].class_idx;
                        if (prog_.cls(ci).methods.count(m.name)) {
                            by_class[ci].insert(v);
                            continue;
                        }
                    }
                    if (v.kind == AbstractValue::Kind::ClassTy) {
                        auto cit = prog_.class_by_name.find(v.class_name);
                        if (cit != prog_.class_by_name.end() &&
                            prog_.cls(cit->second).methods.count(m.name)) {
                            by_class[cit->second].insert(v);
                            continue;
                        }
                    }
                    if (sums_.class_has_attr(summary_class_of(v), m.name)) {
                        // summarized method: unknown primitive result
                        callee_summaries_[stmt.id].insert(summary_class_of(v) + "." + m.name);
                        ret.insert(prim_top_.begin(), prim_top_.end());
                        have_ret = true;
                        continue;
                    }
                    vis.attr_error(m.recv, m.name, v);
                }
                for (auto& [ci, selfvals] : by_class) {
                    int callee = prog_.cls(ci).methods.at(m.name);
                    const ir::Function& cf = prog_.fn(callee);
                    if (cf.params.size() != c.args.size() + 1) {
                        // arity mismatch would raise at runtime; closest claim
                        // we can make is per-receiver
                        for (const AbstractValue& v : selfvals) vis.attr_error(m.recv, m.name, v);
                        continue;
                    }
                    callee_fns_[stmt.id].insert(callee);
                    ValueSet r = call_user(callee, selfvals, argvals, st, stmt.id, rec);
                    ret = join_values(ret, r, opt_.k_prim);
                    have_ret = true;
                }
            }
        }
        if (c.dst) {
            if (have_ret && !ret.empty())
                st[MemLoc::for_var(*c.dst)] = widen_prims(std::move(ret), opt_.k_prim);
            else
                st.erase(MemLoc::for_var(*c.dst));
        }
    }

    ValueSet summary_ret_values(const SummaryRet& r) const {
        switch (r.kind) {
            case SummaryRet::Kind::Prim: return {AbstractValue::prim_const(r.prim)};
            case SummaryRet::Kind::Type: return {AbstractValue::prim_ty(r.type)};
            case SummaryRet::Kind::Class: return {AbstractValue::class_ty(r.class_name)};
        }
        return {};
    }

    ValueSet call_user(int callee, std::optional<ValueSet> selfvals,
                       const std::vector<ValueSet>& args, AbstractState& st, int site,
                       Recorder* rec) {
        const ir::Function& cf = prog_.fn(callee);
        AbstractState callee_in = project(st);
        size_t ai = 0;
        for (size_t p = 0; p < cf.params.size(); p++) {
            ValueSet vals;
            if (p == 0 && selfvals) {
                vals = *selfvals;
            } else {
                if (ai < args.size()) vals = args[ai];
                ai++;
            }
            if (!vals.empty())
                callee_in[MemLoc::for_var(ir::Var{callee, cf.params[p]})] = std::move(vals);
        }
        int key = analyze(callee, std::move(callee_in));
        const Entry& e = entries_[static_cast<size_t>(key)];
        if (rec) rec->entry->call_refs.push_back({site, key});
        // callee effects: fields and module vars grow per its summary
        for (const auto& [loc, vals] : e.out) {
            auto it = st.find(loc);
            if (it == st.end())
                st.emplace(loc, vals);
            else
                it->second = join_values(it->second, vals, opt_.k_prim);
        }
        return e.ret;
    }

    // --- replay (phase 2/3): record states and instantiate candidates -----

    void replay(int key, std::vector<int> ctx) {
        if (static_cast<long>(++contexts_) > opt_.max_contexts)
            throw DivergenceError("context replay exceeded its budget");
        Entry& e = entries_[static_cast<size_t>(key)];
        if (!e.recorded) {
            e.recorded = true;
            record_pass(e);
        }
        for (const RawCandidate& c : e.local_cands) {
            RawCandidate inst = c;
            inst.context = ctx;
            cands_.push_back(std::move(inst));
        }
        if (static_cast<int>(ctx.size()) >= opt_.max_context_depth) return;
        for (const auto& [site, callee_key] : e.call_refs) {
            std::vector<int> sub = ctx;
            sub.push_back(site);
            replay(callee_key, std::move(sub));
        }
    }

    void record_pass(Entry& e) {
        const ir::Function& f = prog_.fn(e.fn);
        Recorder rec{&e, this};
        for (size_t b = 0; b < f.blocks.size(); b++) {
            if (b >= e.block_in.size() || !e.block_in[b]) continue;  // unreached here
            AbstractState st = *e.block_in[b];
            const ir::Block& blk = f.blocks[b];
            for (size_t i = 0; i < blk.stmts.size(); i++) {
                ir::Point pt{e.fn, static_cast<int>(b), static_cast<int>(i)};
                record_state(pt, st);
                st = transfer(blk.stmts[i], std::move(st), pt, &rec);
            }
            record_state(ir::Point{e.fn, static_cast<int>(b), static_cast<int>(blk.stmts.size())},
                         st);
        }
    }

    void record_state(ir::Point pt, const AbstractState& st) {
        auto it = states_.find(pt);
        if (it == states_.end())
            states_.emplace(pt, st);
        else
            it->second = pathlens::join(it->second, st, opt_.k_prim);
    }

    const ir::Program& prog_;
    const std::vector<ir::Cfg>& cfgs_;
    const SummaryTable& sums_;
    ForwardOptions opt_;
    ValueSet prim_top_;

    std::map<std::string, int> key_ids_;
    std::deque<Entry> entries_;
    std::set<int> validated_;
    std::set<int> in_progress_;
    bool changed_ = false;
    long visits_ = 0;
    long contexts_ = 0;

    std::map<ir::Point, AbstractState> states_;
    std::vector<RawCandidate> cands_;
    std::map<int, std::set<int>> callee_fns_;
    std::map<int, std::set<std::string>> callee_summaries_;
};

inline ForwardResult analyze_forward(const ir::Program& prog, const std::vector<ir::Cfg>& cfgs,
                                     const SummaryTable& sums, ForwardOptions opt = {}) {
    return ForwardAnalysis(prog, cfgs, sums, opt).run();
}

}  // namespace pathlens
