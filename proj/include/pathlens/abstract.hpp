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
#include <tuple>
#include <vector>

#include "pathlens/ir.hpp"
#include "pathlens/value.hpp"

namespace pathlens {

// One abstract value: an abstract address (allocation site), a type (primitive
// or class), or a primitive constant.
struct AbstractValue {
    enum class Kind { Addr, PrimTy, ClassTy, Prim };
    Kind kind = Kind::Prim;
    int site = -1;            // Addr
    PrimType ty = PrimType::None;  // PrimTy
    std::string class_name;   // ClassTy (instance of a class, site unknown)
    PrimConst prim;           // Prim

    static AbstractValue addr(int site) {
        AbstractValue v;
        v.kind = Kind::Addr;
        v.site = site;
        return v;
    }
    static AbstractValue prim_ty(PrimType t) {
        AbstractValue v;
        v.kind = Kind::PrimTy;
        v.ty = t;
        return v;
    }
    static AbstractValue class_ty(std::string name) {
        AbstractValue v;
        v.kind = Kind::ClassTy;
        v.class_name = std::move(name);
        return v;
    }
    static AbstractValue prim_const(PrimConst p) {
        AbstractValue v;
        v.kind = Kind::Prim;
        v.prim = std::move(p);
        return v;
    }

    friend bool operator==(const AbstractValue& a, const AbstractValue& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::Addr: return a.site == b.site;
            case Kind::PrimTy: return a.ty == b.ty;
            case Kind::ClassTy: return a.class_name == b.class_name;
            case Kind::Prim: return a.prim == b.prim;
        }
        return false;
    }
    friend bool operator<(const AbstractValue& a, const AbstractValue& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        switch (a.kind) {
            case Kind::Addr: return a.site < b.site;
            case Kind::PrimTy: return a.ty < b.ty;
            case Kind::ClassTy: return a.class_name < b.class_name;
            case Kind::Prim: return a.prim < b.prim;
        }
        return false;
    }
};

inline std::string to_string(const ir::Program& prog, const AbstractValue& v) {
    switch (v.kind) {
        case AbstractValue::Kind::Addr: {
            const auto& site = prog.alloc_sites[static_cast<size_t>(v.site)];
            return "addr" + std::to_string(v.site) + ":" + prog.cls(site.class_idx).name;
        }
        case AbstractValue::Kind::PrimTy: return to_string(v.ty);
        case AbstractValue::Kind::ClassTy: return v.class_name;
        case AbstractValue::Kind::Prim: return repr(v.prim);
    }
    return "?";
}

using ValueSet = std::set<AbstractValue>;

// An abstract memory location: a variable, or a field of an abstract address.
struct MemLoc {
    enum class Kind { Var, Field };
    Kind kind = Kind::Var;
    ir::Var var;
    int site = -1;
    std::string attr;

    static MemLoc for_var(ir::Var v) {
        MemLoc l;
        l.kind = Kind::Var;
        l.var = std::move(v);
        return l;
    }
    static MemLoc for_field(int site, std::string attr) {
        MemLoc l;
        l.kind = Kind::Field;
        l.site = site;
        l.attr = std::move(attr);
        return l;
    }

    friend bool operator==(const MemLoc& a, const MemLoc& b) {
        return a.kind == b.kind && a.var == b.var && a.site == b.site && a.attr == b.attr;
    }
    friend bool operator<(const MemLoc& a, const MemLoc& b) {
        return std::tie(a.kind, a.var, a.site, a.attr) < std::tie(b.kind, b.var, b.site, b.attr);
    }
};

// Flow state: a finite map from locations to non-empty value sets. Locations
// absent from the map are (possibly) undefined.
using AbstractState = std::map<MemLoc, ValueSet>;

// Widening: once a location holds more than k distinct Prim constants, the
// constants collapse to their types. Keeps the prim component of the lattice
// finite without touching addresses or types.
inline ValueSet widen_prims(ValueSet s, int k_prim) {
    int prims = 0;
    for (const AbstractValue& v : s)
        if (v.kind == AbstractValue::Kind::Prim) prims++;
    if (prims <= k_prim) return s;
    ValueSet out;
    for (const AbstractValue& v : s) {
        if (v.kind == AbstractValue::Kind::Prim)
            out.insert(AbstractValue::prim_ty(v.prim.type));
        else
            out.insert(v);
    }
    return out;
}

inline ValueSet join_values(const ValueSet& a, const ValueSet& b, int k_prim) {
    ValueSet out = a;
    out.insert(b.begin(), b.end());
    return widen_prims(std::move(out), k_prim);
}

// Pointwise join; locations present on only one side keep their set.
inline AbstractState join(const AbstractState& a, const AbstractState& b, int k_prim) {
    AbstractState out = a;
    for (const auto& [loc, vals] : b) {
        auto it = out.find(loc);
        if (it == out.end())
            out.emplace(loc, vals);
        else
            it->second = join_values(it->second, vals, k_prim);
    }
    return out;
}

// Domain order with Prim subsumption: a Prim is covered by its PrimType.
// (Plain set inclusion is too strict once widening collapses constants.)
inline bool value_covered(const AbstractValue& v, const ValueSet& s) {
    if (s.count(v)) return true;
    if (v.kind == AbstractValue::Kind::Prim && s.count(AbstractValue::prim_ty(v.prim.type)))
        return true;
    return false;
}

inline bool values_leq(const ValueSet& a, const ValueSet& b) {
    for (const AbstractValue& v : a)
        if (!value_covered(v, b)) return false;
    return true;
}

inline bool state_leq(const AbstractState& a, const AbstractState& b) {
    for (const auto& [loc, vals] : a) {
        auto it = b.find(loc);
        if (it == b.end()) return false;
        if (!values_leq(vals, it->second)) return false;
    }
    return true;
}

inline std::string to_string(const ir::Program& prog, const ValueSet& s) {
    std::string out = "{";
    bool first = true;
    for (const AbstractValue& v : s) {
        if (!first) out += ", ";
        first = false;
        out += to_string(prog, v);
    }
    return out + "}";
}

inline std::string to_string(const ir::Program& prog, const MemLoc& l) {
    if (l.kind == MemLoc::Kind::Var) return l.var.name;
    const auto& site = prog.alloc_sites[static_cast<size_t>(l.site)];
    return "addr" + std::to_string(l.site) + ":" + prog.cls(site.class_idx).name + "." + l.attr;
}

}  // namespace pathlens
