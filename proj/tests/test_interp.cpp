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

#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pathlens/interp.hpp"
#include "support/build.hpp"

using namespace pathlens;
using interp::Value;

namespace {

interp::RunResult run_src(const std::string& text, const std::vector<Value>& args = {}) {
    ir::Program prog = test::prog_of(text);
    return interp::Interpreter(prog, test::default_sums()).run(args);
}

std::int64_t ret_int(const interp::RunResult& r) {
    REQUIRE(!r.error);
    return std::get<std::int64_t>(r.ret);
}

std::string err_kind(const interp::RunResult& r) {
    REQUIRE(r.error);
    return to_string(r.error->kind);
}

}  // namespace

TEST_CASE("floor division rounds toward negative infinity") {
    CHECK(ret_int(run_src("def main():\n    return -7 // 2\n")) == -4);
    CHECK(ret_int(run_src("def main():\n    return 7 // -2\n")) == -4);
    CHECK(ret_int(run_src("def main():\n    return -6 // 2\n")) == -3);
    interp::RunResult f = run_src("def main():\n    return -7.0 // 2.0\n");
    CHECK(std::get<double>(f.ret) == -4.0);
}

TEST_CASE("zero divisors raise value errors for both numeric types") {
    CHECK(err_kind(run_src("def main():\n    return 1 // 0\n")) == "ValueError");
    CHECK(err_kind(run_src("def main():\n    return 1.0 // 0.0\n")) == "ValueError");
}

TEST_CASE("equality is strict across types but never fails") {
    interp::RunResult r = run_src("def main():\n    x = 1 == 'one'\n    return x\n");
    CHECK(std::get<bool>(r.ret) == false);
    r = run_src("def main():\n    return 1 == 1.0\n");
    CHECK(std::get<bool>(r.ret) == false);  // no numeric coercion
    r = run_src("def main():\n    return None == None\n");
    CHECK(std::get<bool>(r.ret) == true);
    r = run_src("def main():\n    return 2 != 'two'\n");
    CHECK(std::get<bool>(r.ret) == true);
}

TEST_CASE("ordering and boolean operators are strict about types") {
    CHECK(err_kind(run_src("def main():\n    return 'a' < 1\n")) == "TypeError");
    CHECK(err_kind(run_src("def main():\n    return 1 < 1.0\n")) == "TypeError");
    CHECK(err_kind(run_src("def main():\n    return 1 and True\n")) == "TypeError");
    CHECK(err_kind(run_src("def main():\n    return 1 + 1.0\n")) == "TypeError");
    CHECK(err_kind(run_src("def main():\n    return 'x' * 3\n")) == "TypeError");
    interp::RunResult r = run_src("def main():\n    return 'ab' + 'cd'\n");
    CHECK(std::get<std::string>(r.ret) == "abcd");
    r = run_src("def main():\n    return 'ab' < 'b'\n");
    CHECK(std::get<bool>(r.ret) == true);
}

TEST_CASE("object comparison is identity, not structure") {
    const char* prelude =
        "class Box:\n"
        "    def fill(self, v):\n"
        "        self.v = v\n";
    interp::RunResult r = run_src(std::string(prelude) +
                                  "def main():\n"
                                  "    a = Box()\n"
                                  "    b = Box()\n"
                                  "    return a == b\n");
    CHECK(std::get<bool>(r.ret) == false);
    r = run_src(std::string(prelude) +
                "def main():\n"
                "    a = Box()\n"
                "    b = a\n"
                "    return a == b\n");
    CHECK(std::get<bool>(r.ret) == true);
    // mixing an object with a primitive compares unequal instead of failing
    r = run_src(std::string(prelude) +
                "def main():\n"
                "    a = Box()\n"
                "    return a == 1\n");
    CHECK(std::get<bool>(r.ret) == false);
    // any other operator on objects is an error
    CHECK(err_kind(run_src(std::string(prelude) +
                           "def main():\n"
                           "    a = Box()\n"
                           "    return a + a\n")) == "TypeError");
}

TEST_CASE("reading a never-assigned name reports which variable") {
    interp::RunResult r = run_src(
        "def main():\n"
        "    total = base\n"
        "    base = 1\n"
        "    return total\n");
    CHECK(err_kind(r) == "UndefinedVariable");
    CHECK(r.error->var == "base");
}

TEST_CASE("attribute failures carry receiver type and attribute name") {
    const char* prelude =
        "class Dog:\n"
        "    def bark(self):\n"
        "        return 1\n";
    interp::RunResult r = run_src(std::string(prelude) +
                                  "def main():\n"
                                  "    d = Dog()\n"
                                  "    return d.age\n");
    CHECK(err_kind(r) == "AttributeError");
    CHECK(r.error->attr == "age");
    CHECK(r.error->detail == "Dog");

    r = run_src(std::string(prelude) +
                "def main():\n"
                "    d = Dog()\n"
                "    d.meow()\n"
                "    return 0\n");
    CHECK(err_kind(r) == "AttributeError");
    CHECK(r.error->attr == "meow");

    // methods are callable, not first-class values
    r = run_src(std::string(prelude) +
                "def main():\n"
                "    d = Dog()\n"
                "    x = d.bark\n"
                "    return 0\n");
    CHECK(err_kind(r) == "TypeError");
    CHECK(r.error->message == "method 'bark' is not a value");

    // method call on a primitive
    r = run_src("def main():\n    x = 1\n    x.rotate()\n    return 0\n");
    CHECK(err_kind(r) == "AttributeError");
    CHECK(r.error->detail == "INT");
    CHECK(r.error->var == "x");
}

TEST_CASE("field writes beat methods and shadow per object") {
    interp::RunResult r = run_src(
        "class P:\n"
        "    def __init__(self, v):\n"
        "        self.v = v\n"
        "def main():\n"
        "    a = P(3)\n"
        "    b = P(4)\n"
        "    a.v = 10\n"
        "    return a.v + b.v\n");
    CHECK(ret_int(r) == 14);
}

TEST_CASE("wrong method arity is its own error kind") {
    interp::RunResult r = run_src(
        "class A:\n"
        "    def one(self, x):\n"
        "        return x\n"
        "def main():\n"
        "    a = A()\n"
        "    return a.one(1, 2)\n");
    CHECK(err_kind(r) == "ArityError");
    CHECK(r.error->message == "method 'one' takes 1 argument(s), got 2");
}

TEST_CASE("branch conditions must be booleans") {
    CHECK(err_kind(run_src("def main():\n    if 1:\n        return 2\n    return 3\n")) ==
          "TypeError");
    interp::RunResult r = run_src("def main():\n    if True:\n        return 2\n    return 3\n");
    CHECK(ret_int(r) == 2);
}

TEST_CASE("builtins accept exactly their documented types") {
    CHECK(ret_int(run_src("def main():\n    return len('abcd')\n")) == 4);
    CHECK(err_kind(run_src("def main():\n    return len(4)\n")) == "TypeError");
    CHECK(ret_int(run_src("def main():\n    return abs(-5)\n")) == 5);
    CHECK(std::get<double>(run_src("def main():\n    return abs(-2.5)\n").ret) == 2.5);
    CHECK(err_kind(run_src("def main():\n    return abs('x')\n")) == "TypeError");
    CHECK(std::get<std::string>(run_src("def main():\n    return str(15)\n").ret) == "15");
    CHECK(std::get<std::string>(run_src("def main():\n    return str(True)\n").ret) == "True");
    CHECK(std::get<std::string>(run_src("def main():\n    return str('s')\n").ret) == "s");
    CHECK(ret_int(run_src("def main():\n    return int(2.9)\n")) == 2);
    CHECK(ret_int(run_src("def main():\n    return int(True)\n")) == 1);
    CHECK(err_kind(run_src("def main():\n    return int('3')\n")) == "TypeError");
    CHECK(std::get<double>(run_src("def main():\n    return float(3)\n").ret) == 3.0);
    CHECK(std::get<bool>(run_src("def main():\n    return bool(0)\n").ret) == false);
    CHECK(std::get<bool>(run_src("def main():\n    return bool(0.5)\n").ret) == true);
    CHECK(std::holds_alternative<interp::NoneVal>(
        run_src("def main():\n    print('hi')\n    return None\n").ret));
}

TEST_CASE("module level statements run before the entry function") {
    interp::RunResult r = run_src(
        "g = 7\n"
        "def main():\n"
        "    return g + 1\n");
    CHECK(ret_int(r) == 8);
    // entry assignments write the local, not the module slot
    r = run_src(
        "g = 7\n"
        "def bump():\n"
        "    g = 100\n"
        "    return g\n"
        "def main():\n"
        "    x = bump()\n"
        "    return g\n");
    CHECK(ret_int(r) == 7);
}

TEST_CASE("runaway loops hit the step budget") {
    ir::Program prog = test::prog_of(
        "def main():\n"
        "    while True:\n"
        "        pass\n"
        "    return 0\n");
    interp::Interpreter it(prog, test::default_sums(), 1000);
    CHECK_THROWS_AS(it.run({}), OracleTimeout);
}

TEST_CASE("deep recursion hits the depth limit") {
    ir::Program prog = test::prog_of(
        "def f(n):\n"
        "    return f(n + 1)\n"
        "def main():\n"
        "    return f(0)\n");
    interp::Interpreter it(prog, test::default_sums(), 10000000, 50);
    CHECK_THROWS_AS(it.run({}), OracleTimeout);
}

TEST_CASE("the observer sees every statement and terminator in order") {
    ir::Program prog = test::prog_of(
        "def main():\n"
        "    x = 1\n"
        "    y = x + 2\n"
        "    return y\n");
    interp::Interpreter it(prog, test::default_sums());
    std::vector<ir::Point> seen;
    std::vector<std::map<std::string, interp::Value>> locals;
    it.set_observer([&](const interp::Observation& o) {
        if (o.point.fn == prog.entry_fn) {
            seen.push_back(o.point);
            locals.push_back(*o.locals);
        }
    });
    interp::RunResult r = it.run({});
    CHECK(ret_int(r) == 3);
    // x = 1 | %t = 2 | y = x + %t | return y
    REQUIRE(seen.size() == 4);
    for (size_t i = 0; i + 1 < seen.size(); i++) CHECK(seen[i] < seen[i + 1]);
    CHECK(locals[0].count("x") == 0);
    CHECK(std::get<std::int64_t>(locals[1].at("x")) == 1);
    CHECK(std::get<std::int64_t>(locals[3].at("y")) == 3);
}

TEST_CASE("entry arguments bind to the declared parameters") {
    ir::Program prog = test::prog_of("def main(a, b):\n    return a + b\n");
    interp::Interpreter it(prog, test::default_sums());
    interp::RunResult r = it.run({std::int64_t{4}, std::int64_t{5}});
    CHECK(ret_int(r) == 9);
    CHECK_THROWS_AS(interp::Interpreter(prog, test::default_sums()).run({}), OracleTimeout);
}
