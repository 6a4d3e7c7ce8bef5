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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>

namespace pathlens {

// Primitive runtime types. NONE is a first-class type so that "may be None"
// claims have the same shape as any other type claim.
enum class PrimType { Bool, Int, Float, Str, None };

inline const char* to_string(PrimType t) {
    switch (t) {
        case PrimType::Bool: return "BOOL";
        case PrimType::Int: return "INT";
        case PrimType::Float: return "FLOAT";
        case PrimType::Str: return "STR";
        case PrimType::None: return "NONE";
    }
    return "?";
}

inline std::optional<PrimType> prim_type_from_name(const std::string& s) {
    if (s == "BOOL") return PrimType::Bool;
    if (s == "INT") return PrimType::Int;
    if (s == "FLOAT") return PrimType::Float;
    if (s == "STR") return PrimType::Str;
    if (s == "NONE") return PrimType::None;
    return std::nullopt;
}

// The summary-class name that carries attribute info for a primitive type.
inline const char* prim_summary_class(PrimType t) {
    switch (t) {
        case PrimType::Bool: return "bool";
        case PrimType::Int: return "int";
        case PrimType::Float: return "float";
        case PrimType::Str: return "str";
        case PrimType::None: return "NoneType";
    }
    return "?";
}

// A primitive constant. Equality is strict: type and value must both match
// (1 != 1.0, True != 1). This matches the subset's `==` semantics and keeps
// the refutation engine's constant-conflict rule exact.
struct PrimConst {
    PrimType type = PrimType::None;
    bool b = false;
    std::int64_t i = 0;
    double f = 0.0;
    std::string s;

    static PrimConst none() { return PrimConst{}; }
    static PrimConst boolean(bool v) {
        PrimConst p;
        p.type = PrimType::Bool;
        p.b = v;
        return p;
    }
    static PrimConst integer(std::int64_t v) {
        PrimConst p;
        p.type = PrimType::Int;
        p.i = v;
        return p;
    }
    static PrimConst floating(double v) {
        PrimConst p;
        p.type = PrimType::Float;
        p.f = v;
        return p;
    }
    static PrimConst str(std::string v) {
        PrimConst p;
        p.type = PrimType::Str;
        p.s = std::move(v);
        return p;
    }

    bool is_truthy_bool() const { return type == PrimType::Bool && b; }

    friend bool operator==(const PrimConst& a, const PrimConst& b) {
        if (a.type != b.type) return false;
        switch (a.type) {
            case PrimType::Bool: return a.b == b.b;
            case PrimType::Int: return a.i == b.i;
            case PrimType::Float: return a.f == b.f;
            case PrimType::Str: return a.s == b.s;
            case PrimType::None: return true;
        }
        return false;
    }
    friend bool operator!=(const PrimConst& a, const PrimConst& b) { return !(a == b); }
    friend bool operator<(const PrimConst& a, const PrimConst& b) {
        if (a.type != b.type) return a.type < b.type;
        switch (a.type) {
            case PrimType::Bool: return a.b < b.b;
            case PrimType::Int: return a.i < b.i;
            case PrimType::Float: return a.f < b.f;
            case PrimType::Str: return a.s < b.s;
            case PrimType::None: return false;
        }
        return false;
    }
};

inline std::string repr(const PrimConst& p) {
    switch (p.type) {
        case PrimType::Bool: return p.b ? "True" : "False";
        case PrimType::Int: return std::to_string(p.i);
        case PrimType::Float: {
            std::string s = std::to_string(p.f);
            // trim trailing zeros but keep one digit after the dot
            size_t dot = s.find('.');
            if (dot != std::string::npos) {
                size_t last = s.find_last_not_of('0');
                if (last == dot) last++;
                s.erase(last + 1);
            }
            return s;
        }
        case PrimType::Str: return "'" + p.s + "'";
        case PrimType::None: return "None";
    }
    return "?";
}

enum class BinOp { Add, Sub, Mul, FloorDiv, Eq, Ne, Lt, And, Or };

inline const char* to_string(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::FloorDiv: return "//";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::And: return "and";
        case BinOp::Or: return "or";
    }
    return "?";
}

inline bool is_comparison(BinOp op) {
    return op == BinOp::Eq || op == BinOp::Ne || op == BinOp::Lt;
}
inline bool is_boolean_op(BinOp op) { return op == BinOp::And || op == BinOp::Or; }

// Evaluate `a op b` under the subset's strict semantics. Returns nullopt when
// the operation is a runtime error (mixed-type arithmetic, division by zero,
// `<` on incompatible operands, non-bool and/or). Eq/Ne never fail: values of
// different types are simply unequal.
inline std::optional<PrimConst> eval_prim_binop(BinOp op, const PrimConst& a,
                                                const PrimConst& b) {
    switch (op) {
        case BinOp::Eq: return PrimConst::boolean(a == b);
        case BinOp::Ne: return PrimConst::boolean(a != b);
        case BinOp::Lt:
            if (a.type == PrimType::Int && b.type == PrimType::Int)
                return PrimConst::boolean(a.i < b.i);
            if (a.type == PrimType::Float && b.type == PrimType::Float)
                return PrimConst::boolean(a.f < b.f);
            if (a.type == PrimType::Str && b.type == PrimType::Str)
                return PrimConst::boolean(a.s < b.s);
            return std::nullopt;
        case BinOp::And:
        case BinOp::Or:
            if (a.type != PrimType::Bool || b.type != PrimType::Bool) return std::nullopt;
            return PrimConst::boolean(op == BinOp::And ? (a.b && b.b) : (a.b || b.b));
        case BinOp::Add:
            if (a.type == PrimType::Str && b.type == PrimType::Str)
                return PrimConst::str(a.s + b.s);
            [[fallthrough]];
        case BinOp::Sub:
        case BinOp::Mul:
        case BinOp::FloorDiv:
            if (a.type == PrimType::Int && b.type == PrimType::Int) {
                switch (op) {
                    case BinOp::Add: return PrimConst::integer(a.i + b.i);
                    case BinOp::Sub: return PrimConst::integer(a.i - b.i);
                    case BinOp::Mul: return PrimConst::integer(a.i * b.i);
                    case BinOp::FloorDiv: {
                        if (b.i == 0) return std::nullopt;
                        // Python floor division rounds toward negative infinity.
                        std::int64_t q = a.i / b.i;
                        if ((a.i % b.i != 0) && ((a.i < 0) != (b.i < 0))) q--;
                        return PrimConst::integer(q);
                    }
                    default: break;
                }
            }
            if (a.type == PrimType::Float && b.type == PrimType::Float) {
                switch (op) {
                    case BinOp::Add: return PrimConst::floating(a.f + b.f);
                    case BinOp::Sub: return PrimConst::floating(a.f - b.f);
                    case BinOp::Mul: return PrimConst::floating(a.f * b.f);
                    case BinOp::FloorDiv:
                        if (b.f == 0.0) return std::nullopt;
                        return PrimConst::floating(std::floor(a.f / b.f));
                    default: break;
                }
            }
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace pathlens
