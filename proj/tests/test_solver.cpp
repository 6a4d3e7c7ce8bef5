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

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pathlens/constraints.hpp"

using namespace pathlens;

namespace {

// --- tiny concrete model for the brute-force oracle -------------------------
//
// A concrete value is a primitive, an object (class + identity), or the
// missing-value marker. Enumerating all assignments of these to the symbols
// of a conjunct decides satisfiability exactly, which pins down the solver's
// one-sided contract: refuted implies no satisfying assignment exists.

struct CC {
    enum class K { Prim, Obj, Undef };
    K k = K::Undef;
    PrimConst p;
    std::string cls;
    int id = -1;
};

std::vector<CC> universe() {
    std::vector<CC> u;
    auto prim = [&](PrimConst p) { u.push_back({CC::K::Prim, std::move(p), "", -1}); };
    prim(PrimConst::none());
    prim(PrimConst::boolean(true));
    prim(PrimConst::boolean(false));
    prim(PrimConst::integer(0));
    prim(PrimConst::integer(1));
    prim(PrimConst::str("a"));
    prim(PrimConst::floating(0.5));
    u.push_back({CC::K::Obj, {}, "A", 0});
    u.push_back({CC::K::Obj, {}, "A", 1});
    u.push_back({CC::K::Obj, {}, "B", 2});
    u.push_back({CC::K::Undef, {}, "", -1});
    return u;
}

bool identical(const CC& a, const CC& b) {
    if (a.k != b.k) return false;
    switch (a.k) {
        case CC::K::Prim: return a.p == b.p;
        case CC::K::Obj: return a.id == b.id;
        case CC::K::Undef: return true;
    }
    return false;
}

bool matches(const CC& v, const CVal& c) {
    switch (c.kind) {
        case CVal::Kind::Prim: return v.k == CC::K::Prim && v.p == c.prim;
        case CVal::Kind::Class: return v.k == CC::K::Obj && v.cls == c.class_name;
        case CVal::Kind::Type: return v.k == CC::K::Prim && v.p.type == c.ty;
        case CVal::Kind::Undef: return v.k == CC::K::Undef;
    }
    return false;
}

// strict-equality evaluation mirroring the runtime: ==/!= are total, every
// other operator needs primitives it is defined on
std::optional<CC> eval_concrete(BinOp op, const CC& a, const CC& b) {
    if (op == BinOp::Eq || op == BinOp::Ne) {
        bool eq = identical(a, b);
        return CC{CC::K::Prim, PrimConst::boolean(op == BinOp::Eq ? eq : !eq), "", -1};
    }
    if (a.k != CC::K::Prim || b.k != CC::K::Prim) return std::nullopt;
    auto r = eval_prim_binop(op, a.p, b.p);
    if (!r) return std::nullopt;
    return CC{CC::K::Prim, *r, "", -1};
}

// exact satisfiability by exhaustive assignment
bool brute_sat(const Conjunct& c) {
    const std::vector<CC> u = universe();
    size_t n = c.sym_base.size();
    std::vector<size_t> idx(n, 0);
    auto check = [&]() {
        auto val = [&](SymId s) -> const CC& { return u[idx[static_cast<size_t>(s)]]; };
        auto term = [&](const Term& t) -> std::optional<CC> {
            if (!t.is_const) return val(t.sym);
            // constant terms in generated conjuncts are always primitives
            if (t.cval.kind != CVal::Kind::Prim) return std::nullopt;
            return CC{CC::K::Prim, t.cval.prim, "", -1};
        };
        for (const Fact& f : c.facts) {
            switch (f.kind) {
                case Fact::Kind::EqConst:
                    if (!matches(val(f.lhs), f.cval)) return false;
                    break;
                case Fact::Kind::EqSym:
                    if (!identical(val(f.lhs), val(f.rhs))) return false;
                    break;
                case Fact::Kind::EqBinop: {
                    auto av = term(f.a), bv = term(f.b);
                    if (!av || !bv) return false;
                    auto r = eval_concrete(f.op, *av, *bv);
                    if (!r || !identical(*r, val(f.lhs))) return false;
                    break;
                }
            }
        }
        // one store: duplicate atoms for a variable must agree
        std::map<ir::Var, const CC*> store;
        for (const VarAtom& a : c.vars) {
            auto [it, fresh] = store.emplace(a.var, &val(a.val));
            if (!fresh && !identical(*it->second, val(a.val))) return false;
        }
        // one heap: bases must be objects, same cell means same value
        std::map<std::pair<int, std::string>, const CC*> heap;
        for (const FieldAtom& f : c.fields) {
            const CC& base = val(f.base);
            if (base.k != CC::K::Obj) return false;
            auto [it, fresh] = heap.emplace(std::make_pair(base.id, f.attr), &val(f.val));
            if (!fresh && !identical(*it->second, val(f.val))) return false;
        }
        return true;
    };
    while (true) {
        if (check()) return true;
        size_t i = 0;
        for (; i < n; i++) {
            if (++idx[i] < u.size()) break;
            idx[i] = 0;
        }
        if (i == n) return false;
    }
}

Conjunct make(int nsyms, const std::string& base = "s") {
    Conjunct c;
    for (int i = 0; i < nsyms; i++) c.fresh(base + std::to_string(i));
    return c;
}

}  // namespace

TEST_CASE("contradictory constant bindings refute") {
    Conjunct c = make(1, "m");
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::str("SELECT"))));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::str("CREATE"))));
    ConjunctSolver s(c);
    CHECK(s.refuted());
    CHECK(s.reason() == "symbol 'm0' is both 'SELECT' and 'CREATE'");
}

TEST_CASE("distinct class claims on one symbol refute") {
    Conjunct c = make(1);
    c.facts.push_back(Fact::eq_const(0, CVal::of_class("Create")));
    c.facts.push_back(Fact::eq_const(0, CVal::of_class("Select")));
    CHECK(is_refuted(c));
}

TEST_CASE("a bare symbol equality is satisfiable") {
    Conjunct c = make(2);
    c.facts.push_back(Fact::eq_sym(0, 1));
    CHECK(!is_refuted(c));
}

TEST_CASE("a constant refines a matching type and clashes with another") {
    Conjunct ok = make(1);
    ok.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(5))));
    ok.facts.push_back(Fact::eq_const(0, CVal::of_type(PrimType::Int)));
    CHECK(!is_refuted(ok));
    ConjunctSolver s(ok);
    REQUIRE(s.binding_of(0));
    CHECK(*s.binding_of(0) == CVal::of_prim(PrimConst::integer(5)));

    Conjunct bad = make(1);
    bad.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(5))));
    bad.facts.push_back(Fact::eq_const(0, CVal::of_type(PrimType::Str)));
    CHECK(is_refuted(bad));
}

TEST_CASE("mixed kind bindings refute") {
    Conjunct c = make(1);
    c.facts.push_back(Fact::eq_const(0, CVal::of_class("Create")));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(5))));
    CHECK(is_refuted(c));

    Conjunct u = make(1);
    u.facts.push_back(Fact::eq_const(0, CVal::undef()));
    u.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(5))));
    CHECK(is_refuted(u));
}

TEST_CASE("bindings propagate through symbol equalities") {
    Conjunct c = make(3);
    c.facts.push_back(Fact::eq_sym(0, 1));
    c.facts.push_back(Fact::eq_sym(1, 2));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(1))));
    c.facts.push_back(Fact::eq_const(2, CVal::of_prim(PrimConst::integer(2))));
    CHECK(is_refuted(c));

    Conjunct ok = make(3);
    ok.facts.push_back(Fact::eq_sym(0, 1));
    ok.facts.push_back(Fact::eq_sym(1, 2));
    ok.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(1))));
    ok.facts.push_back(Fact::eq_const(2, CVal::of_prim(PrimConst::integer(1))));
    ConjunctSolver s(ok);
    CHECK(!s.refuted());
    CHECK(s.same(0, 2));
}

TEST_CASE("a true comparison forces its operands together") {
    Conjunct c = make(3);  // t, a, b
    c.facts.push_back(Fact::eq_binop(0, BinOp::Eq, Term::of_sym(1), Term::of_sym(2)));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::boolean(true))));
    c.facts.push_back(Fact::eq_const(1, CVal::of_prim(PrimConst::integer(1))));
    c.facts.push_back(Fact::eq_const(2, CVal::of_prim(PrimConst::integer(2))));
    CHECK(is_refuted(c));
}

TEST_CASE("a false comparison forbids equal constants") {
    Conjunct c = make(3);
    c.facts.push_back(Fact::eq_binop(0, BinOp::Eq, Term::of_sym(1), Term::of_sym(2)));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::boolean(false))));
    c.facts.push_back(Fact::eq_const(1, CVal::of_prim(PrimConst::integer(7))));
    c.facts.push_back(Fact::eq_const(2, CVal::of_prim(PrimConst::integer(7))));
    CHECK(is_refuted(c));
}

TEST_CASE("a true conjunction pins both operands") {
    Conjunct c = make(3);
    c.facts.push_back(Fact::eq_binop(0, BinOp::And, Term::of_sym(1), Term::of_sym(2)));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::boolean(true))));
    c.facts.push_back(Fact::eq_const(1, CVal::of_prim(PrimConst::boolean(false))));
    CHECK(is_refuted(c));

    // a false disjunction likewise
    Conjunct d = make(3);
    d.facts.push_back(Fact::eq_binop(0, BinOp::Or, Term::of_sym(1), Term::of_sym(2)));
    d.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::boolean(false))));
    d.facts.push_back(Fact::eq_const(2, CVal::of_prim(PrimConst::boolean(true))));
    CHECK(is_refuted(d));
}

TEST_CASE("operands known only by type never refute a workable operator") {
    // t == (a or b) with t == a: all-true satisfies it, even though the
    // solver types both operands as BOOL before it can resolve them
    Conjunct c = make(3);
    c.facts.push_back(Fact::eq_binop(0, BinOp::Or, Term::of_sym(1), Term::of_sym(2)));
    c.facts.push_back(Fact::eq_sym(0, 1));
    CHECK(!is_refuted(c));

    // but an operator no concrete pair could satisfy still refutes
    Conjunct bad = make(3);
    bad.facts.push_back(Fact::eq_binop(0, BinOp::Add, Term::of_sym(1), Term::of_sym(2)));
    bad.facts.push_back(Fact::eq_const(1, CVal::of_type(PrimType::Int)));
    bad.facts.push_back(Fact::eq_const(2, CVal::of_type(PrimType::Str)));
    CHECK(is_refuted(bad));
}

TEST_CASE("constant arithmetic folds and checks") {
    Conjunct c = make(1);
    c.facts.push_back(Fact::eq_binop(0, BinOp::Add, Term::of_const(CVal::of_prim(PrimConst::integer(1))),
                                     Term::of_const(CVal::of_prim(PrimConst::integer(2)))));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(4))));
    CHECK(is_refuted(c));

    Conjunct ok = make(1);
    ok.facts.push_back(Fact::eq_binop(0, BinOp::Add, Term::of_const(CVal::of_prim(PrimConst::integer(1))),
                                      Term::of_const(CVal::of_prim(PrimConst::integer(2)))));
    ok.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(3))));
    CHECK(!is_refuted(ok));

    // operators undefined on their operands refute outright
    Conjunct mixed = make(1);
    mixed.facts.push_back(Fact::eq_binop(0, BinOp::Add,
                                         Term::of_const(CVal::of_prim(PrimConst::integer(1))),
                                         Term::of_const(CVal::of_prim(PrimConst::floating(1.5)))));
    CHECK(is_refuted(mixed));
}

TEST_CASE("an ordering result is a boolean") {
    Conjunct c = make(3);
    c.facts.push_back(Fact::eq_binop(0, BinOp::Lt, Term::of_sym(1), Term::of_sym(2)));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::str("x"))));
    CHECK(is_refuted(c));
}

TEST_CASE("separation merges duplicate cells") {
    // same variable twice with incompatible values
    Conjunct c = make(2);
    c.vars.push_back(VarAtom{ir::Var{0, "x"}, 0});
    c.vars.push_back(VarAtom{ir::Var{0, "x"}, 1});
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(1))));
    c.facts.push_back(Fact::eq_const(1, CVal::of_prim(PrimConst::integer(2))));
    CHECK(is_refuted(c));

    // same field on the same base
    Conjunct f = make(3);
    f.fields.push_back(FieldAtom{0, "item", 1});
    f.fields.push_back(FieldAtom{0, "item", 2});
    f.facts.push_back(Fact::eq_const(0, CVal::of_class("Cell")));
    f.facts.push_back(Fact::eq_const(1, CVal::of_prim(PrimConst::integer(1))));
    f.facts.push_back(Fact::eq_const(2, CVal::of_prim(PrimConst::integer(2))));
    CHECK(is_refuted(f));

    // a field atom forces its base to be an instance
    Conjunct g = make(2);
    g.fields.push_back(FieldAtom{0, "item", 1});
    g.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(3))));
    CHECK(is_refuted(g));
}

TEST_CASE("refutation is sound against exhaustive enumeration") {
    std::mt19937 rng(424242);
    const std::vector<CVal> consts = {
        CVal::of_prim(PrimConst::integer(0)),    CVal::of_prim(PrimConst::integer(1)),
        CVal::of_prim(PrimConst::boolean(true)), CVal::of_prim(PrimConst::boolean(false)),
        CVal::of_prim(PrimConst::str("a")),      CVal::of_prim(PrimConst::none()),
        CVal::of_prim(PrimConst::floating(0.5)), CVal::of_class("A"),
        CVal::of_class("B"),                     CVal::of_type(PrimType::Int),
        CVal::of_type(PrimType::Bool),           CVal::undef(),
    };
    const BinOp ops[] = {BinOp::Eq,  BinOp::Ne,  BinOp::And, BinOp::Or, BinOp::Lt,
                         BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::FloorDiv};
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    int refuted_count = 0, sat_count = 0;
    for (int trial = 0; trial < 400; trial++) {
        int nsyms = 1 + pick(4);
        Conjunct c = make(nsyms);
        int nvars = pick(3);
        for (int i = 0; i < nvars; i++)
            c.vars.push_back(VarAtom{ir::Var{0, i % 2 ? "y" : "x"}, pick(nsyms)});
        int nfields = pick(3);
        for (int i = 0; i < nfields; i++)
            c.fields.push_back(FieldAtom{pick(nsyms), i % 2 ? "g" : "f", pick(nsyms)});
        int nfacts = 2 + pick(4);
        for (int i = 0; i < nfacts; i++) {
            switch (pick(3)) {
                case 0:
                    c.facts.push_back(Fact::eq_const(pick(nsyms), consts[static_cast<size_t>(
                                                                      pick((int)consts.size()))]));
                    break;
                case 1: c.facts.push_back(Fact::eq_sym(pick(nsyms), pick(nsyms))); break;
                default: {
                    auto term = [&]() {
                        if (pick(3) == 0)
                            return Term::of_const(consts[static_cast<size_t>(pick(7))]);  // prims only
                        return Term::of_sym(pick(nsyms));
                    };
                    c.facts.push_back(
                        Fact::eq_binop(pick(nsyms), ops[pick(9)], term(), term()));
                    break;
                }
            }
        }
        bool refuted = is_refuted(c);
        if (refuted) {
            refuted_count++;
            INFO("trial " << trial << ": " << to_string(c));
            REQUIRE(!brute_sat(c));
        } else if (brute_sat(c)) {
            sat_count++;
        }
    }
    // the generator must exercise both outcomes to mean anything
    CHECK(refuted_count > 50);
    CHECK(sat_count > 50);
}

TEST_CASE("simplification preserves satisfiability and removes duplicates") {
    Conjunct c = make(3);
    c.vars.push_back(VarAtom{ir::Var{0, "x"}, 0});
    c.vars.push_back(VarAtom{ir::Var{0, "x"}, 1});
    c.facts.push_back(Fact::eq_sym(2, 2));  // trivial
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(1))));
    c.facts.push_back(Fact::eq_const(0, CVal::of_prim(PrimConst::integer(1))));  // duplicate
    Conjunct s = simplify(c);
    CHECK(s.vars.size() == 1);
    // the merged atom leaves an equality connecting the two symbols
    bool linked = false;
    for (const Fact& f : s.facts)
        if (f.kind == Fact::Kind::EqSym && ((f.lhs == 0 && f.rhs == 1) || (f.lhs == 1 && f.rhs == 0)))
            linked = true;
    CHECK(linked);
    int const_facts = 0;
    for (const Fact& f : s.facts)
        if (f.kind == Fact::Kind::EqConst) const_facts++;
    CHECK(const_facts == 1);
    CHECK(is_refuted(c) == is_refuted(s));

    // random round: simplify never changes the solver verdict
    std::mt19937 rng(7);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    for (int trial = 0; trial < 200; trial++) {
        Conjunct r = make(1 + pick(4));
        int n = static_cast<int>(r.sym_base.size());
        for (int i = 0; i < 4; i++) {
            if (pick(2))
                r.facts.push_back(Fact::eq_sym(pick(n), pick(n)));
            else
                r.facts.push_back(Fact::eq_const(
                    pick(n), pick(2) ? CVal::of_prim(PrimConst::integer(pick(2)))
                                     : CVal::of_class("A")));
        }
        if (pick(2)) r.vars.push_back(VarAtom{ir::Var{0, "x"}, pick(n)});
        if (pick(2)) r.vars.push_back(VarAtom{ir::Var{0, "x"}, pick(n)});
        CHECK(is_refuted(r) == is_refuted(simplify(r)));
    }
}

TEST_CASE("footprints collect touched variables and attributes") {
    Conjunct c = make(3);
    c.vars.push_back(VarAtom{ir::Var{2, "sql"}, 0});
    c.vars.push_back(VarAtom{ir::Var{2, "mode"}, 1});
    c.fields.push_back(FieldAtom{0, "where", 2});
    Footprint fp = footprint(c);
    CHECK(fp.vars == std::set<ir::Var>{ir::Var{2, "mode"}, ir::Var{2, "sql"}});
    CHECK(fp.attrs == std::set<std::string>{"where"});
}

TEST_CASE("symbols display with a hat and primes for reuse") {
    CHECK(hat_name("sql") == "s\xCC\x82ql");
    Conjunct c;
    SymId a = c.fresh("m");
    SymId b = c.fresh("m");
    std::vector<std::string> names = display_names(c);
    CHECK(names[static_cast<size_t>(a)] == "m\xCC\x82");
    CHECK(names[static_cast<size_t>(b)] == "m\xCC\x82'");
    CHECK(to_string(Conjunct{}) == "true");

    Conjunct d;
    SymId s = d.fresh("sql");
    d.vars.push_back(VarAtom{ir::Var{0, "sql"}, s});
    d.facts.push_back(Fact::eq_const(s, CVal::of_class("Create")));
    CHECK(to_string(d) == "sql\xE2\x86\xA6s\xCC\x82ql \xE2\x88\xA7 s\xCC\x82ql==Create");
}

TEST_CASE("the canonical form ignores symbol numbering") {
    Conjunct a;
    SymId ax = a.fresh("x");
    SymId ay = a.fresh("y");
    a.vars.push_back(VarAtom{ir::Var{0, "x"}, ax});
    a.vars.push_back(VarAtom{ir::Var{0, "y"}, ay});
    a.facts.push_back(Fact::eq_sym(ax, ay));

    Conjunct b;
    SymId by = b.fresh("y");
    SymId bx = b.fresh("x");
    b.vars.push_back(VarAtom{ir::Var{0, "y"}, by});
    b.vars.push_back(VarAtom{ir::Var{0, "x"}, bx});
    b.facts.push_back(Fact::eq_sym(by, bx));

    CHECK(canonical_form(a) == canonical_form(b));

    Conjunct c = a;
    c.facts.push_back(Fact::eq_const(ax, CVal::of_prim(PrimConst::integer(1))));
    CHECK(canonical_form(a) != canonical_form(c));
}
