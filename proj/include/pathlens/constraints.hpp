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

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathlens/ir.hpp"
#include "pathlens/value.hpp"

// Symbolic path conditions for the backward walk. A Conjunct is one
// disjunct of a weakest precondition: a separation-style heap part (at most
// one points-to atom per variable and per field) plus pure equality facts
// over symbols and constants. The solver is a congruence closure with
// constant propagation; it may fail to detect unsatisfiability but never
// reports a satisfiable conjunct as refuted.

namespace pathlens {

using SymId = int;

// A constant in the pure constraint domain: an exact primitive value, an
// instance of a class (identity unknown), some value of a primitive type, or
// the missing-field marker.
struct CVal {
    enum class Kind { Prim, Class, Type, Undef };
    Kind kind = Kind::Undef;
    PrimConst prim;
    std::string class_name;
    PrimType ty = PrimType::None;

    static CVal of_prim(PrimConst p) {
        CVal c;
        c.kind = Kind::Prim;
        c.prim = std::move(p);
        return c;
    }
    static CVal of_class(std::string name) {
        CVal c;
        c.kind = Kind::Class;
        c.class_name = std::move(name);
        return c;
    }
    static CVal of_type(PrimType t) {
        CVal c;
        c.kind = Kind::Type;
        c.ty = t;
        return c;
    }
    static CVal undef() { return CVal{}; }

    std::string str() const {
        switch (kind) {
            case Kind::Prim: return repr(prim);
            case Kind::Class: return class_name;
            case Kind::Type: return std::string("type:") + to_string(ty);
            case Kind::Undef: return "undef";
        }
        return "?";
    }
    friend bool operator==(const CVal& a, const CVal& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::Prim: return a.prim == b.prim;
            case Kind::Class: return a.class_name == b.class_name;
            case Kind::Type: return a.ty == b.ty;
            case Kind::Undef: return true;
        }
        return false;
    }
    friend bool operator<(const CVal& a, const CVal& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        switch (a.kind) {
            case Kind::Prim: return a.prim < b.prim;
            case Kind::Class: return a.class_name < b.class_name;
            case Kind::Type: return a.ty < b.ty;
            case Kind::Undef: return false;
        }
        return false;
    }
};

struct Term {
    bool is_const = false;
    SymId sym = -1;
    CVal cval;

    static Term of_sym(SymId s) {
        Term t;
        t.sym = s;
        return t;
    }
    static Term of_const(CVal c) {
        Term t;
        t.is_const = true;
        t.cval = std::move(c);
        return t;
    }
    friend bool operator==(const Term& a, const Term& b) {
        if (a.is_const != b.is_const) return false;
        return a.is_const ? a.cval == b.cval : a.sym == b.sym;
    }
};

struct Fact {
    enum class Kind { EqConst, EqSym, EqBinop };
    Kind kind = Kind::EqConst;
    SymId lhs = -1;
    CVal cval;               // EqConst
    SymId rhs = -1;          // EqSym
    BinOp op = BinOp::Eq;    // EqBinop: lhs == (a op b)
    Term a, b;

    static Fact eq_const(SymId s, CVal c) {
        Fact f;
        f.kind = Kind::EqConst;
        f.lhs = s;
        f.cval = std::move(c);
        return f;
    }
    static Fact eq_sym(SymId s, SymId t) {
        Fact f;
        f.kind = Kind::EqSym;
        f.lhs = s;
        f.rhs = t;
        return f;
    }
    static Fact eq_binop(SymId s, BinOp op, Term a, Term b) {
        Fact f;
        f.kind = Kind::EqBinop;
        f.lhs = s;
        f.op = op;
        f.a = std::move(a);
        f.b = std::move(b);
        return f;
    }
    friend bool operator==(const Fact& x, const Fact& y) {
        if (x.kind != y.kind || x.lhs != y.lhs) return false;
        switch (x.kind) {
            case Kind::EqConst: return x.cval == y.cval;
            case Kind::EqSym: return x.rhs == y.rhs;
            case Kind::EqBinop: return x.op == y.op && x.a == y.a && x.b == y.b;
        }
        return false;
    }
};

struct VarAtom {
    ir::Var var;
    SymId val = -1;
};

struct FieldAtom {
    SymId base = -1;
    std::string attr;
    SymId val = -1;
};

struct Conjunct {
    std::vector<std::string> sym_base;  // display base name per symbol
    std::vector<VarAtom> vars;
    std::vector<FieldAtom> fields;
    std::vector<Fact> facts;
    std::vector<std::string> trace;  // backward transitions, newest last

    SymId fresh(std::string base) {
        sym_base.push_back(std::move(base));
        return static_cast<SymId>(sym_base.size() - 1);
    }

    VarAtom* find_var(const ir::Var& v) {
        for (VarAtom& a : vars)
            if (a.var == v) return &a;
        return nullptr;
    }
    const VarAtom* find_var(const ir::Var& v) const {
        return const_cast<Conjunct*>(this)->find_var(v);
    }
    void drop_var(const ir::Var& v) {
        vars.erase(std::remove_if(vars.begin(), vars.end(),
                                  [&](const VarAtom& a) { return a.var == v; }),
                   vars.end());
    }
    // existing symbol for var, or a new atom with a fresh symbol
    SymId ensure_var(const ir::Var& v) {
        if (VarAtom* a = find_var(v)) return a->val;
        SymId s = fresh(v.name);
        vars.push_back(VarAtom{v, s});
        return s;
    }
};

// --- display ---------------------------------------------------------------

// hat accent over the first character marks symbols, e.g. "sql" -> "ŝql"
inline std::string hat_name(const std::string& base) {
    if (base.empty()) return "\xCC\x82";
    size_t first = 1;
    while (first < base.size() && (static_cast<unsigned char>(base[first]) & 0xC0) == 0x80)
        first++;  // keep multi-byte first characters whole
    return base.substr(0, first) + "\xCC\x82" + base.substr(first);
}

// Symbols sharing a base name get prime suffixes in introduction order.
inline std::vector<std::string> display_names(const Conjunct& c) {
    std::vector<std::string> out(c.sym_base.size());
    std::map<std::string, int> seen;
    for (size_t i = 0; i < c.sym_base.size(); i++) {
        int n = seen[c.sym_base[i]]++;
        out[i] = hat_name(c.sym_base[i]) + std::string(static_cast<size_t>(n), '\'');
    }
    return out;
}

inline std::string to_string(const Conjunct& c) {
    std::vector<std::string> names = display_names(c);
    auto term_str = [&](const Term& t) { return t.is_const ? t.cval.str() : names[static_cast<size_t>(t.sym)]; };
    std::vector<std::string> parts;
    for (const VarAtom& a : c.vars)
        parts.push_back(a.var.name + "\xE2\x86\xA6" + names[static_cast<size_t>(a.val)]);
    for (const FieldAtom& f : c.fields)
        parts.push_back(names[static_cast<size_t>(f.base)] + "." + f.attr + "\xE2\x86\xA6" +
                        names[static_cast<size_t>(f.val)]);
    for (const Fact& f : c.facts) {
        std::string lhs = names[static_cast<size_t>(f.lhs)];
        switch (f.kind) {
            case Fact::Kind::EqConst: parts.push_back(lhs + "==" + f.cval.str()); break;
            case Fact::Kind::EqSym:
                parts.push_back(lhs + "==" + names[static_cast<size_t>(f.rhs)]);
                break;
            case Fact::Kind::EqBinop:
                parts.push_back(lhs + "==(" + term_str(f.a) + " " + to_string(f.op) + " " +
                                term_str(f.b) + ")");
                break;
        }
    }
    if (parts.empty()) return "true";
    std::string out;
    for (size_t i = 0; i < parts.size(); i++) {
        if (i) out += " \xE2\x88\xA7 ";
        out += parts[i];
    }
    return out;
}

// --- solver -----------------------------------------------------------------

class ConjunctSolver {
  public:
    explicit ConjunctSolver(const Conjunct& c) : c_(c) { solve(); }

    bool refuted() const { return refuted_; }
    const std::string& reason() const { return reason_; }

    SymId find(SymId s) const {
        while (parent_[static_cast<size_t>(s)] != s) s = parent_[static_cast<size_t>(s)];
        return s;
    }
    bool same(SymId a, SymId b) const { return find(a) == find(b); }
    std::optional<CVal> binding_of(SymId s) const { return binding_[static_cast<size_t>(find(s))]; }

  private:
    void conflict(std::string why) {
        if (!refuted_) reason_ = std::move(why);
        refuted_ = true;
    }

    // most precise consistent combination of two bindings, nullopt = conflict
    static std::optional<CVal> merge_cval(const CVal& a, const CVal& b) {
        using K = CVal::Kind;
        if (a.kind == b.kind) {
            if (a == b) return a;
            return std::nullopt;  // two different exact values/classes/types
        }
        if (a.kind == K::Prim && b.kind == K::Type)
            return a.prim.type == b.ty ? std::optional<CVal>(a) : std::nullopt;
        if (b.kind == K::Prim && a.kind == K::Type)
            return b.prim.type == a.ty ? std::optional<CVal>(b) : std::nullopt;
        return std::nullopt;  // Prim/Class, Type/Class, Undef vs anything
    }

    void bind(SymId s, const CVal& v) {
        SymId r = find(s);
        auto& slot = binding_[static_cast<size_t>(r)];
        if (!slot) {
            slot = v;
            changed_ = true;
        } else if (auto m = merge_cval(*slot, v)) {
            if (!(*m == *slot)) {
                slot = m;
                changed_ = true;
            }
        } else {
            conflict("symbol '" + c_.sym_base[static_cast<size_t>(s)] + "' is both " +
                     slot->str() + " and " + v.str());
            return;
        }
        if (slot->kind == CVal::Kind::Prim) {
            auto it = prim_diseq_.find(r);
            if (it != prim_diseq_.end() && it->second.count(slot->prim))
                conflict("symbol '" + c_.sym_base[static_cast<size_t>(s)] + "' equals excluded " +
                         repr(slot->prim));
        }
    }

    void unite(SymId a, SymId b) {
        SymId ra = find(a), rb = find(b);
        if (ra == rb) return;
        changed_ = true;
        // keep the smaller id as root for determinism
        if (rb < ra) std::swap(ra, rb);
        parent_[static_cast<size_t>(rb)] = ra;
        auto moved = binding_[static_cast<size_t>(rb)];
        binding_[static_cast<size_t>(rb)].reset();
        auto pd = prim_diseq_.find(rb);
        if (pd != prim_diseq_.end()) {
            prim_diseq_[ra].insert(pd->second.begin(), pd->second.end());
            prim_diseq_.erase(pd);
        }
        if (moved) bind(ra, *moved);
        if (sym_diseq_.count(norm(ra, rb)))
            conflict("symbols required both equal and distinct");
    }

    static std::pair<SymId, SymId> norm(SymId a, SymId b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    void add_sym_diseq(SymId a, SymId b) {
        SymId ra = find(a), rb = find(b);
        if (ra == rb) {
            conflict("symbols required both equal and distinct");
            return;
        }
        if (sym_diseq_.insert(norm(ra, rb)).second) changed_ = true;
    }

    void add_prim_diseq(SymId s, const PrimConst& p) {
        SymId r = find(s);
        if (prim_diseq_[r].insert(p).second) changed_ = true;
        auto b = binding_[static_cast<size_t>(r)];
        if (b && b->kind == CVal::Kind::Prim && b->prim == p)
            conflict("symbol '" + c_.sym_base[static_cast<size_t>(s)] + "' equals excluded " +
                     repr(p));
    }

    // Term -> bound constant if known
    std::optional<CVal> resolve(const Term& t) const {
        if (t.is_const) return t.cval;
        return binding_of(t.sym);
    }

    // primitive type a bound value could have; nullopt for instances and the
    // missing-value marker, which no operator besides ==/!= accepts
    static std::optional<PrimType> prim_kind(const CVal& v) {
        if (v.kind == CVal::Kind::Prim) return v.prim.type;
        if (v.kind == CVal::Kind::Type) return v.ty;
        return std::nullopt;
    }

    // tri-state equality of two constants under strict-equality semantics
    // 1 = definitely equal, 0 = definitely different, -1 = unknown
    static int const_eq(const CVal& a, const CVal& b) {
        using K = CVal::Kind;
        if (a.kind == K::Prim && b.kind == K::Prim) return a.prim == b.prim ? 1 : 0;
        if (a.kind == K::Undef || b.kind == K::Undef) return a.kind == b.kind ? 1 : 0;
        if (a.kind == K::Class && b.kind == K::Class)
            return a.class_name == b.class_name ? -1 : 0;  // identity unknown
        if (a.kind == K::Class || b.kind == K::Class) return 0;  // instance vs primitive
        if (a.kind == K::Type && b.kind == K::Type) return a.ty == b.ty ? -1 : 0;
        // Type vs Prim
        const CVal& tv = a.kind == K::Type ? a : b;
        const CVal& pv = a.kind == K::Type ? b : a;
        return tv.ty == pv.prim.type ? -1 : 0;
    }

    void apply_eq(const Term& a, const Term& b) {
        auto ra = resolve(a), rb = resolve(b);
        if (!a.is_const && !b.is_const) {
            unite(a.sym, b.sym);
            return;
        }
        if (a.is_const && b.is_const) {
            if (const_eq(*ra, *rb) == 0) conflict(ra->str() + " cannot equal " + rb->str());
            return;
        }
        const Term& sym = a.is_const ? b : a;
        const CVal& cv = a.is_const ? a.cval : b.cval;
        bind(sym.sym, cv);
    }

    void apply_diseq(const Term& a, const Term& b) {
        if (!a.is_const && !b.is_const) {
            add_sym_diseq(a.sym, b.sym);
            return;
        }
        if (a.is_const && b.is_const) {
            if (const_eq(a.cval, b.cval) == 1) conflict("value required distinct from itself");
            return;
        }
        const Term& sym = a.is_const ? b : a;
        const CVal& cv = a.is_const ? a.cval : b.cval;
        if (cv.kind == CVal::Kind::Prim)
            add_prim_diseq(sym.sym, cv.prim);
        // class/type disequalities carry no usable witness; drop them
    }

    // types the operator's eval accepts at all (always pairwise-same-typed)
    static bool op_accepts(BinOp op, PrimType t) {
        switch (op) {
            case BinOp::And:
            case BinOp::Or: return t == PrimType::Bool;
            case BinOp::Lt:
            case BinOp::Add:
                return t == PrimType::Int || t == PrimType::Float || t == PrimType::Str;
            case BinOp::Sub:
            case BinOp::Mul:
            case BinOp::FloorDiv: return t == PrimType::Int || t == PrimType::Float;
            default: return true;
        }
    }

    void apply_binop(const Fact& f) {
        auto av = resolve(f.a), bv = resolve(f.b);
        SymId t = f.lhs;
        auto tv = binding_of(t);

        // exact fold once both operands are known primitives
        if (av && bv && av->kind == CVal::Kind::Prim && bv->kind == CVal::Kind::Prim) {
            auto r = eval_prim_binop(f.op, av->prim, bv->prim);
            if (!r) {
                conflict("operator '" + std::string(to_string(f.op)) + "' fails on " + av->str() +
                         " and " + bv->str());
                return;
            }
            bind(t, CVal::of_prim(*r));
            return;
        }

        if (f.op == BinOp::Eq || f.op == BinOp::Ne) {
            if (av && bv) {
                int eq = const_eq(*av, *bv);
                if (eq >= 0) {
                    bool val = (f.op == BinOp::Eq) == (eq == 1);
                    bind(t, CVal::of_prim(PrimConst::boolean(val)));
                }
                return;
            }
            if (tv && tv->kind == CVal::Kind::Prim && tv->prim.type == PrimType::Bool) {
                bool positive = tv->prim.b == (f.op == BinOp::Eq);
                if (positive)
                    apply_eq(f.a, f.b);
                else
                    apply_diseq(f.a, f.b);
                return;
            }
            // infer the comparison result from already-known operand relations
            if (!f.a.is_const && !f.b.is_const && same(f.a.sym, f.b.sym))
                bind(t, CVal::of_prim(PrimConst::boolean(f.op == BinOp::Eq)));
            else if (!f.a.is_const && !f.b.is_const &&
                     sym_diseq_.count(norm(find(f.a.sym), find(f.b.sym))))
                bind(t, CVal::of_prim(PrimConst::boolean(f.op == BinOp::Ne)));
            return;
        }

        // every other operator demands same-typed primitives it is defined
        // on; refute only if no concrete operand pair could ever succeed
        std::optional<PrimType> ta, tb;
        for (auto [side, ty] : {std::pair(&av, &ta), std::pair(&bv, &tb)}) {
            if (!side->has_value()) continue;
            *ty = prim_kind(**side);
            if (!*ty || !op_accepts(f.op, **ty)) {
                conflict("operator '" + std::string(to_string(f.op)) + "' fails on " +
                         (*side)->str());
                return;
            }
        }
        if (ta && tb && *ta != *tb) {
            conflict("operator '" + std::string(to_string(f.op)) + "' fails on " + av->str() +
                     " and " + bv->str());
            return;
        }

        if (f.op == BinOp::And || f.op == BinOp::Or) {
            // operands must be bools no matter the result
            for (const Term* side : {&f.a, &f.b})
                if (!side->is_const) bind(side->sym, CVal::of_type(PrimType::Bool));
            bind(t, CVal::of_type(PrimType::Bool));
            if (!refuted_ && tv && tv->kind == CVal::Kind::Prim && tv->prim.type == PrimType::Bool) {
                bool known = tv->prim.b;
                bool force = (f.op == BinOp::And) ? true : false;
                if (known == force) {
                    // and==True / or==False pins both operands
                    for (const Term* side : {&f.a, &f.b})
                        apply_eq(*side, Term::of_const(CVal::of_prim(PrimConst::boolean(force))));
                } else {
                    // one operand known leaves the other determined
                    auto pin = [&](const std::optional<CVal>& kn, const Term& other) {
                        if (kn && kn->kind == CVal::Kind::Prim &&
                            kn->prim.type == PrimType::Bool && kn->prim.b == force)
                            apply_eq(other,
                                     Term::of_const(CVal::of_prim(PrimConst::boolean(!force))));
                    };
                    pin(av, f.b);
                    pin(bv, f.a);
                }
            }
            return;
        }
        if (f.op == BinOp::Lt) {
            bind(t, CVal::of_type(PrimType::Bool));
            return;
        }
        // arithmetic: when the fact holds the result shares the (sole
        // possible) operand type
        if (ta || tb) bind(t, CVal::of_type(ta ? *ta : *tb));
    }

    void solve() {
        size_t n = c_.sym_base.size();
        parent_.resize(n);
        for (size_t i = 0; i < n; i++) parent_[i] = static_cast<SymId>(i);
        binding_.assign(n, std::nullopt);

        int passes = 0;
        do {
            changed_ = false;
            if (++passes > 60) break;  // diminishing returns; stay conservative
            for (const Fact& f : c_.facts) {
                if (refuted_) return;
                switch (f.kind) {
                    case Fact::Kind::EqConst: bind(f.lhs, f.cval); break;
                    case Fact::Kind::EqSym: unite(f.lhs, f.rhs); break;
                    case Fact::Kind::EqBinop: apply_binop(f); break;
                }
            }
            // separation: merge duplicate atoms, check field bases
            for (size_t i = 0; i < c_.vars.size() && !refuted_; i++)
                for (size_t j = i + 1; j < c_.vars.size(); j++)
                    if (c_.vars[i].var == c_.vars[j].var) unite(c_.vars[i].val, c_.vars[j].val);
            for (size_t i = 0; i < c_.fields.size() && !refuted_; i++) {
                const FieldAtom& fi = c_.fields[i];
                auto bb = binding_of(fi.base);
                if (bb && bb->kind != CVal::Kind::Class) {
                    conflict("field ." + fi.attr + " on non-instance " + bb->str());
                    break;
                }
                for (size_t j = i + 1; j < c_.fields.size(); j++) {
                    const FieldAtom& fj = c_.fields[j];
                    if (fi.attr == fj.attr && same(fi.base, fj.base)) unite(fi.val, fj.val);
                }
            }
            // re-check disequalities after unions and bindings
            for (const auto& [a, b] : sym_diseq_) {
                if (refuted_) return;
                if (same(a, b)) {
                    conflict("symbols required both equal and distinct");
                    return;
                }
                auto ba = binding_of(a), bb = binding_of(b);
                if (ba && bb && const_eq(*ba, *bb) == 1)
                    conflict(ba->str() + " required distinct from " + bb->str());
            }
        } while (changed_ && !refuted_);
    }

    const Conjunct& c_;
    std::vector<SymId> parent_;
    std::vector<std::optional<CVal>> binding_;
    std::set<std::pair<SymId, SymId>> sym_diseq_;
    std::map<SymId, std::set<PrimConst>> prim_diseq_;
    bool refuted_ = false;
    bool changed_ = false;
    std::string reason_;
};

inline bool is_refuted(const Conjunct& c) { return ConjunctSolver(c).refuted(); }

// Drop duplicate facts and trivial self-equalities; merge duplicate atoms.
// Keeps satisfiability exactly (only removes implied material).
inline Conjunct simplify(const Conjunct& c) {
    Conjunct out = c;
    out.facts.clear();
    for (const Fact& f : c.facts) {
        if (f.kind == Fact::Kind::EqSym && f.lhs == f.rhs) continue;
        bool dup = false;
        for (const Fact& g : out.facts)
            if (f == g) {
                dup = true;
                break;
            }
        if (!dup) out.facts.push_back(f);
    }
    // merge duplicate var atoms through equality facts
    std::vector<VarAtom> vars;
    for (const VarAtom& a : out.vars) {
        bool dup = false;
        for (const VarAtom& b : vars)
            if (b.var == a.var) {
                if (b.val != a.val) out.facts.push_back(Fact::eq_sym(b.val, a.val));
                dup = true;
                break;
            }
        if (!dup) vars.push_back(a);
    }
    out.vars = std::move(vars);
    std::vector<FieldAtom> fields;
    for (const FieldAtom& a : out.fields) {
        bool dup = false;
        for (const FieldAtom& b : fields)
            if (b.base == a.base && b.attr == a.attr) {
                if (b.val != a.val) out.facts.push_back(Fact::eq_sym(b.val, a.val));
                dup = true;
                break;
            }
        if (!dup) fields.push_back(a);
    }
    out.fields = std::move(fields);
    return out;
}

struct Footprint {
    std::set<ir::Var> vars;
    std::set<std::string> attrs;
};

inline Footprint footprint(const Conjunct& c) {
    Footprint fp;
    for (const VarAtom& a : c.vars) fp.vars.insert(a.var);
    for (const FieldAtom& f : c.fields) fp.attrs.insert(f.attr);
    return fp;
}

// canonical text form, stable under symbol renumbering, for loop-progress
// detection
inline std::string canonical_form(const Conjunct& c) {
    std::vector<int> canon(c.sym_base.size(), -1);
    int next = 0;
    auto touch = [&](SymId s) {
        if (canon[static_cast<size_t>(s)] < 0) canon[static_cast<size_t>(s)] = next++;
    };
    std::vector<const VarAtom*> vas;
    for (const VarAtom& a : c.vars) vas.push_back(&a);
    std::sort(vas.begin(), vas.end(),
              [](const VarAtom* x, const VarAtom* y) { return x->var < y->var; });
    for (const VarAtom* a : vas) touch(a->val);
    std::vector<const FieldAtom*> fas;
    for (const FieldAtom& f : c.fields) fas.push_back(&f);
    std::sort(fas.begin(), fas.end(), [&](const FieldAtom* x, const FieldAtom* y) {
        return std::tie(x->base, x->attr) < std::tie(y->base, y->attr);
    });
    for (const FieldAtom* f : fas) {
        touch(f->base);
        touch(f->val);
    }
    for (const Fact& f : c.facts) {
        touch(f.lhs);
        if (f.kind == Fact::Kind::EqSym) touch(f.rhs);
        if (f.kind == Fact::Kind::EqBinop) {
            if (!f.a.is_const) touch(f.a.sym);
            if (!f.b.is_const) touch(f.b.sym);
        }
    }
    auto sym_str = [&](SymId s) { return "s" + std::to_string(canon[static_cast<size_t>(s)]); };
    auto term_str = [&](const Term& t) { return t.is_const ? t.cval.str() : sym_str(t.sym); };
    std::set<std::string> parts;
    for (const VarAtom* a : vas)
        parts.insert("v:" + std::to_string(a->var.fn) + ":" + a->var.name + ">" + sym_str(a->val));
    for (const FieldAtom* f : fas)
        parts.insert("f:" + sym_str(f->base) + "." + f->attr + ">" + sym_str(f->val));
    for (const Fact& f : c.facts) {
        switch (f.kind) {
            case Fact::Kind::EqConst: parts.insert("c:" + sym_str(f.lhs) + "=" + f.cval.str()); break;
            case Fact::Kind::EqSym: {
                std::string x = sym_str(f.lhs), y = sym_str(f.rhs);
                if (y < x) std::swap(x, y);
                parts.insert("e:" + x + "=" + y);
                break;
            }
            case Fact::Kind::EqBinop:
                parts.insert("b:" + sym_str(f.lhs) + "=" + term_str(f.a) + to_string(f.op) +
                             term_str(f.b));
                break;
        }
    }
    std::string out;
    for (const std::string& p : parts) {
        out += p;
        out += "|";
    }
    return out;
}

}  // namespace pathlens
