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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pathlens/ir.hpp"
#include "pathlens/summary.hpp"
#include "pathlens/value.hpp"

// Reference interpreter for the IR with exact runtime semantics. It is the
// test oracle the analyses are measured against, so it favours simplicity
// over speed and stops at the first uncaught error like the source language
// would.

namespace pathlens::interp {

struct NoneVal {
    friend bool operator==(NoneVal, NoneVal) { return true; }
};

struct ObjRef {
    int serial = -1;  // identity
    int site = -1;    // allocation site, for abstraction checks
    friend bool operator==(const ObjRef& a, const ObjRef& b) { return a.serial == b.serial; }
};

using Value = std::variant<NoneVal, bool, std::int64_t, double, std::string, ObjRef>;

inline bool is_obj(const Value& v) { return std::holds_alternative<ObjRef>(v); }

inline std::optional<PrimConst> to_prim(const Value& v) {
    if (std::holds_alternative<NoneVal>(v)) return PrimConst::none();
    if (const auto* b = std::get_if<bool>(&v)) return PrimConst::boolean(*b);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return PrimConst::integer(*i);
    if (const auto* d = std::get_if<double>(&v)) return PrimConst::floating(*d);
    if (const auto* s = std::get_if<std::string>(&v)) return PrimConst::str(*s);
    return std::nullopt;
}

inline Value from_prim(const PrimConst& p) {
    switch (p.type) {
        case PrimType::None: return NoneVal{};
        case PrimType::Bool: return p.b;
        case PrimType::Int: return p.i;
        case PrimType::Float: return p.f;
        case PrimType::Str: return p.s;
    }
    return NoneVal{};
}

inline std::string value_repr(const Value& v) {
    if (is_obj(v)) {
        const auto& o = std::get<ObjRef>(v);
        return "<obj#" + std::to_string(o.serial) + " site" + std::to_string(o.site) + ">";
    }
    return repr(*to_prim(v));
}

struct Object {
    int class_idx = -1;
    int site = -1;
    std::map<std::string, Value> fields;
};

struct RuntimeEvent {
    enum class Kind { AttributeError, UndefinedVar, TypeError, ValueError, ArityError };
    Kind kind = Kind::TypeError;
    ir::Point point;
    Span span;
    std::string var;     // variable read / receiver
    std::string attr;    // attribute involved, if any
    std::string detail;  // receiver class or type name for attribute errors
    std::string message;
};

inline const char* to_string(RuntimeEvent::Kind k) {
    using K = RuntimeEvent::Kind;
    switch (k) {
        case K::AttributeError: return "AttributeError";
        case K::UndefinedVar: return "UndefinedVariable";
        case K::TypeError: return "TypeError";
        case K::ValueError: return "ValueError";
        case K::ArityError: return "ArityError";
    }
    return "?";
}

struct RunResult {
    std::optional<RuntimeEvent> error;
    Value ret = NoneVal{};
    long steps = 0;
};

// Called before each statement and before each terminator with the concrete
// frame and heap. `locals` excludes module scope; read those from `module_env`.
struct Observation {
    ir::Point point;
    const std::map<std::string, Value>* locals;
    const std::map<std::string, Value>* module_env;
    const std::vector<Object>* heap;
};

using Observer = std::function<void(const Observation&)>;

class Interpreter {
  public:
    Interpreter(const ir::Program& prog, const SummaryTable& sums, long max_steps = 10000000,
                int max_depth = 500)
        : prog_(prog), sums_(sums), max_steps_(max_steps), max_depth_(max_depth) {}

    void set_observer(Observer obs) { obs_ = std::move(obs); }

    RunResult run(const std::vector<Value>& entry_args) {
        RunResult res;
        try {
            exec_function(prog_.module_fn, {});
            const ir::Function& ef = prog_.fn(prog_.entry_fn);
            if (entry_args.size() != ef.params.size())
                throw OracleTimeout("entry argument count mismatch");
            res.ret = exec_function(prog_.entry_fn, entry_args);
        } catch (const Halt&) {
            res.error = event_;
        }
        res.steps = steps_;
        return res;
    }

  private:
    struct Halt {};

    struct Frame {
        int fn = -1;
        std::map<std::string, Value> locals;
    };

    [[noreturn]] void halt(RuntimeEvent ev) {
        event_ = std::move(ev);
        throw Halt{};
    }

    void tick() {
        if (++steps_ > max_steps_) throw OracleTimeout("interpreter exceeded its step budget");
    }

    Value& slot(Frame& fr, const ir::Var& v) {
        return v.fn == ir::kModuleScope ? module_env_[v.name] : fr.locals[v.name];
    }

    Value read(Frame& fr, const ir::Var& v, ir::Point pt, const Span& sp) {
        auto& env = v.fn == ir::kModuleScope ? module_env_ : fr.locals;
        auto it = env.find(v.name);
        if (it == env.end()) {
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::UndefinedVar;
            ev.point = pt;
            ev.span = sp;
            ev.var = v.name;
            ev.message = "variable '" + v.name + "' read before assignment";
            halt(std::move(ev));
        }
        return it->second;
    }

    std::string class_or_type_name(const Value& v) const {
        if (is_obj(v)) return prog_.cls(heap_[static_cast<size_t>(std::get<ObjRef>(v).serial)].class_idx).name;
        return to_string(to_prim(v)->type);
    }

    Value exec_function(int fn_idx, const std::vector<Value>& args) {
        if (static_cast<int>(depth_) >= max_depth_) throw OracleTimeout("call depth limit");
        depth_++;
        const ir::Function& f = prog_.fn(fn_idx);
        Frame fr;
        fr.fn = fn_idx;
        for (size_t i = 0; i < f.params.size(); i++) fr.locals[f.params[i]] = args[i];
        Value ret = NoneVal{};
        int b = 0;
        for (;;) {
            const ir::Block& blk = f.blocks[static_cast<size_t>(b)];
            for (size_t i = 0; i < blk.stmts.size(); i++) {
                ir::Point pt{fn_idx, b, static_cast<int>(i)};
                observe(pt, fr);
                tick();
                exec_stmt(blk.stmts[i], fr, pt);
            }
            ir::Point tp{fn_idx, b, static_cast<int>(blk.stmts.size())};
            observe(tp, fr);
            tick();
            if (const auto* g = std::get_if<ir::Goto>(&blk.term)) {
                b = g->target;
            } else if (const auto* br = std::get_if<ir::Branch>(&blk.term)) {
                Value c = read(fr, br->cond, tp, blk.term_span);
                const bool* bv = std::get_if<bool>(&c);
                if (!bv) {
                    RuntimeEvent ev;
                    ev.kind = RuntimeEvent::Kind::TypeError;
                    ev.point = tp;
                    ev.span = blk.term_span;
                    ev.var = br->cond.name;
                    ev.message = "condition is not a bool";
                    halt(std::move(ev));
                }
                b = *bv ? br->on_true : br->on_false;
            } else {
                const auto& r = std::get<ir::Ret>(blk.term);
                if (r.value) ret = read(fr, *r.value, tp, blk.term_span);
                break;
            }
        }
        depth_--;
        return ret;
    }

    void observe(ir::Point pt, const Frame& fr) {
        if (!obs_) return;
        Observation o;
        o.point = pt;
        o.locals = &fr.locals;
        o.module_env = &module_env_;
        o.heap = &heap_;
        obs_(o);
    }

    void exec_stmt(const ir::Stmt& s, Frame& fr, ir::Point pt) {
        if (const auto* c = s.as<ir::ConstAssign>()) {
            slot(fr, c->dst) = from_prim(c->value);
        } else if (const auto* al = s.as<ir::Alias>()) {
            slot(fr, al->dst) = read(fr, al->src, pt, s.span);
        } else if (const auto* b = s.as<ir::Binop>()) {
            exec_binop(*b, fr, pt, s.span);
        } else if (const auto* rd = s.as<ir::AttrRead>()) {
            Value obj = read(fr, rd->obj, pt, s.span);
            slot(fr, rd->dst) = attr_get(obj, rd->attr, rd->obj.name, pt, s.span);
        } else if (const auto* wr = s.as<ir::AttrWrite>()) {
            Value obj = read(fr, wr->obj, pt, s.span);
            Value val = read(fr, wr->src, pt, s.span);
            if (!is_obj(obj)) {
                RuntimeEvent ev;
                ev.kind = RuntimeEvent::Kind::AttributeError;
                ev.point = pt;
                ev.span = s.span;
                ev.var = wr->obj.name;
                ev.attr = wr->attr;
                ev.detail = class_or_type_name(obj);
                ev.message = "cannot set attribute on " + ev.detail + " value";
                halt(std::move(ev));
            }
            heap_[static_cast<size_t>(std::get<ObjRef>(obj).serial)].fields[wr->attr] = val;
        } else if (const auto* nw = s.as<ir::New>()) {
            ObjRef ref;
            ref.serial = static_cast<int>(heap_.size());
            ref.site = nw->site;
            heap_.push_back(Object{nw->class_idx, nw->site, {}});
            slot(fr, nw->dst) = ref;
        } else if (const auto* call = s.as<ir::Call>()) {
            Value r = exec_call(*call, fr, pt, s.span);
            if (call->dst) slot(fr, *call->dst) = r;
        }
    }

    void exec_binop(const ir::Binop& b, Frame& fr, ir::Point pt, const Span& sp) {
        Value lv = read(fr, b.lhs, pt, sp);
        Value rv = read(fr, b.rhs, pt, sp);
        // identity semantics once an object is involved
        if (is_obj(lv) || is_obj(rv)) {
            if (b.op == BinOp::Eq || b.op == BinOp::Ne) {
                bool same = is_obj(lv) && is_obj(rv) && std::get<ObjRef>(lv) == std::get<ObjRef>(rv);
                slot(fr, b.dst) = (b.op == BinOp::Eq) ? same : !same;
                return;
            }
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::TypeError;
            ev.point = pt;
            ev.span = sp;
            ev.message = std::string("operator '") + to_string(b.op) + "' not defined for objects";
            halt(std::move(ev));
        }
        PrimConst lp = *to_prim(lv), rp = *to_prim(rv);
        if (b.op == BinOp::FloorDiv &&
            ((rp.type == PrimType::Int && rp.i == 0) ||
             (rp.type == PrimType::Float && rp.f == 0.0))) {
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::ValueError;
            ev.point = pt;
            ev.span = sp;
            ev.var = b.rhs.name;
            ev.message = "division by zero";
            halt(std::move(ev));
        }
        auto res = eval_prim_binop(b.op, lp, rp);
        if (!res) {
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::TypeError;
            ev.point = pt;
            ev.span = sp;
            ev.message = std::string("operator '") + to_string(b.op) + "' not defined for " +
                         repr(lp) + " and " + repr(rp);
            halt(std::move(ev));
        }
        slot(fr, b.dst) = from_prim(*res);
    }

    Value attr_get(const Value& obj, const std::string& attr, const std::string& var_name,
                   ir::Point pt, const Span& sp) {
        if (is_obj(obj)) {
            Object& o = heap_[static_cast<size_t>(std::get<ObjRef>(obj).serial)];
            auto it = o.fields.find(attr);
            if (it != o.fields.end()) return it->second;
            if (prog_.cls(o.class_idx).methods.count(attr)) {
                // methods only appear as call receivers in this language
                RuntimeEvent ev;
                ev.kind = RuntimeEvent::Kind::TypeError;
                ev.point = pt;
                ev.span = sp;
                ev.var = var_name;
                ev.attr = attr;
                ev.message = "method '" + attr + "' is not a value";
                halt(std::move(ev));
            }
        }
        RuntimeEvent ev;
        ev.kind = RuntimeEvent::Kind::AttributeError;
        ev.point = pt;
        ev.span = sp;
        ev.var = var_name;
        ev.attr = attr;
        ev.detail = class_or_type_name(obj);
        ev.message = "'" + ev.detail + "' value has no attribute '" + attr + "'";
        halt(std::move(ev));
    }

    Value exec_call(const ir::Call& c, Frame& fr, ir::Point pt, const Span& sp) {
        std::vector<Value> args;
        for (const ir::Var& a : c.args) args.push_back(read(fr, a, pt, sp));
        if (const auto* d = std::get_if<ir::DirectCallee>(&c.callee)) {
            auto fit = prog_.fn_by_name.find(d->name);
            if (fit != prog_.fn_by_name.end()) return exec_function(fit->second, args);
            return exec_builtin(d->name, args, pt, sp);
        }
        const auto& m = std::get<ir::MethodCallee>(c.callee);
        Value recv = read(fr, m.recv, pt, sp);
        if (!is_obj(recv)) {
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::AttributeError;
            ev.point = pt;
            ev.span = sp;
            ev.var = m.recv.name;
            ev.attr = m.name;
            ev.detail = class_or_type_name(recv);
            ev.message = "'" + ev.detail + "' value has no attribute '" + m.name + "'";
            halt(std::move(ev));
        }
        const Object& o = heap_[static_cast<size_t>(std::get<ObjRef>(recv).serial)];
        const ir::ClassInfo& ci = prog_.cls(o.class_idx);
        auto mit = ci.methods.find(m.name);
        if (mit == ci.methods.end()) {
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::AttributeError;
            ev.point = pt;
            ev.span = sp;
            ev.var = m.recv.name;
            ev.attr = m.name;
            ev.detail = ci.name;
            ev.message = "'" + ci.name + "' value has no attribute '" + m.name + "'";
            halt(std::move(ev));
        }
        const ir::Function& mf = prog_.fn(mit->second);
        if (mf.params.size() != args.size() + 1) {
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::ArityError;
            ev.point = pt;
            ev.span = sp;
            ev.var = m.recv.name;
            ev.attr = m.name;
            ev.message = "method '" + m.name + "' takes " + std::to_string(mf.params.size() - 1) +
                         " argument(s), got " + std::to_string(args.size());
            halt(std::move(ev));
        }
        std::vector<Value> full;
        full.push_back(recv);
        full.insert(full.end(), args.begin(), args.end());
        return exec_function(mit->second, full);
    }

    Value exec_builtin(const std::string& name, const std::vector<Value>& args, ir::Point pt,
                       const Span& sp) {
        auto type_error = [&](const std::string& msg) -> Value {
            RuntimeEvent ev;
            ev.kind = RuntimeEvent::Kind::TypeError;
            ev.point = pt;
            ev.span = sp;
            ev.message = msg;
            halt(std::move(ev));
        };
        if (name == "print") return NoneVal{};  // output is irrelevant to the oracle
        if (args.size() != 1) return type_error("builtin '" + name + "' expects one argument");
        const Value& a = args[0];
        if (name == "len") {
            if (const auto* s = std::get_if<std::string>(&a))
                return static_cast<std::int64_t>(s->size());
            return type_error("len() needs a string");
        }
        if (name == "abs") {
            if (const auto* i = std::get_if<std::int64_t>(&a))
                return *i < 0 ? -*i : *i;
            if (const auto* d = std::get_if<double>(&a)) return *d < 0 ? -*d : *d;
            return type_error("abs() needs a number");
        }
        if (name == "str") {
            if (const auto* s = std::get_if<std::string>(&a)) return *s;
            if (is_obj(a)) return type_error("str() of an object is unsupported");
            return repr(*to_prim(a));
        }
        if (name == "int") {
            if (const auto* b = std::get_if<bool>(&a)) return static_cast<std::int64_t>(*b);
            if (const auto* i = std::get_if<std::int64_t>(&a)) return *i;
            if (const auto* d = std::get_if<double>(&a)) return static_cast<std::int64_t>(*d);
            return type_error("int() needs a number or bool");
        }
        if (name == "float") {
            if (const auto* b = std::get_if<bool>(&a)) return *b ? 1.0 : 0.0;
            if (const auto* i = std::get_if<std::int64_t>(&a)) return static_cast<double>(*i);
            if (const auto* d = std::get_if<double>(&a)) return *d;
            return type_error("float() needs a number or bool");
        }
        if (name == "bool") {
            if (const auto* b = std::get_if<bool>(&a)) return *b;
            if (const auto* i = std::get_if<std::int64_t>(&a)) return *i != 0;
            if (const auto* d = std::get_if<double>(&a)) return *d != 0.0;
            return type_error("bool() needs a number or bool");
        }
        if (sums_.has_fn(name))
            throw OracleTimeout("summary function '" + name + "' has no concrete implementation");
        return type_error("unknown function '" + name + "'");
    }

    const ir::Program& prog_;
    const SummaryTable& sums_;
    long max_steps_;
    int max_depth_;
    Observer obs_;

    std::map<std::string, Value> module_env_;
    std::vector<Object> heap_;
    RuntimeEvent event_;
    long steps_ = 0;
    int depth_ = 0;
};

}  // namespace pathlens::interp
