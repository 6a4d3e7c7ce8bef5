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

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pathlens/cfg.hpp"
#include "support/build.hpp"
#include "support/corpus.hpp"

using namespace pathlens;

namespace {

ir::Cfg cfg_of(ir::Program& p, const std::string& name) {
    return ir::build_cfg(p, p.fn_by_name.at(name));
}

}  // namespace

TEST_CASE("diamond shape") {
    ir::Program p = test::prog_of(
        "def main(m):\n"
        "    if m == 1:\n"
        "        x = 1\n"
        "    else:\n"
        "        x = 2\n"
        "    return x\n");
    ir::Cfg c = cfg_of(p, "main");
    REQUIRE(c.succs.size() == 4);
    CHECK(c.succs[0] == std::vector<int>{1, 2});
    CHECK(c.succs[1] == std::vector<int>{3});
    CHECK(c.succs[2] == std::vector<int>{3});
    CHECK(c.succs[3].empty());
    CHECK(c.exit_blocks == std::vector<int>{3});
    CHECK(c.back_edges.empty());
    REQUIRE(c.preds[3].size() == 2);
    CHECK(c.preds[0].empty());
    CHECK(c.preds[1][0].kind == ir::EdgeKind::BranchTrue);
    CHECK(c.preds[2][0].kind == ir::EdgeKind::BranchFalse);
    CHECK(c.rpo[0] == 0);
    CHECK(c.rpo.size() == 4);
}

TEST_CASE("triangle shape for an if without else") {
    ir::Program p = test::prog_of(
        "def main(m):\n"
        "    x = 0\n"
        "    if m == 1:\n"
        "        x = 1\n"
        "    return x\n");
    ir::Cfg c = cfg_of(p, "main");
    REQUIRE(c.succs.size() == 3);
    CHECK(c.succs[0] == std::vector<int>{1, 2});
    CHECK(c.succs[1] == std::vector<int>{2});
    CHECK(c.back_edges.empty());
    REQUIRE(c.preds[2].size() == 2);
    CHECK(c.preds[2][0].kind == ir::EdgeKind::BranchFalse);
    CHECK(c.preds[2][1].kind == ir::EdgeKind::Fall);
}

TEST_CASE("while loop back edge and natural loop membership") {
    ir::Program p = test::prog_of(
        "def main(n):\n"
        "    i = 0\n"
        "    while i < n:\n"
        "        i = i + 1\n"
        "    return i\n");
    ir::Cfg c = cfg_of(p, "main");
    // b0 entry -> b1 header -> b2 body (latch) -> b1, header -> b3 exit
    REQUIRE(c.back_edges.size() == 1);
    std::pair<int, int> edge = *c.back_edges.begin();
    CHECK(edge == std::make_pair(2, 1));
    CHECK(c.is_back_edge(2, 1));
    CHECK_FALSE(c.is_back_edge(1, 2));
    REQUIRE(c.loop_blocks.count(edge) == 1);
    CHECK(c.loop_blocks.at(edge) == std::set<int>{1, 2});
    CHECK(c.exit_blocks == std::vector<int>{3});
}

TEST_CASE("nested loops nest their natural loops") {
    ir::Program p = test::prog_of(
        "def main(n):\n"
        "    i = 0\n"
        "    while i < n:\n"
        "        j = 0\n"
        "        while j < n:\n"
        "            j = j + 1\n"
        "        i = i + 1\n"
        "    return i\n");
    ir::Cfg c = cfg_of(p, "main");
    REQUIRE(c.back_edges.size() == 2);
    std::set<int> outer, inner;
    for (const auto& e : c.back_edges) {
        const std::set<int>& loop = c.loop_blocks.at(e);
        if (outer.empty() || loop.size() > outer.size()) {
            if (!outer.empty()) inner = outer;
            outer = loop;
        } else {
            inner = loop;
        }
    }
    REQUIRE(!inner.empty());
    CHECK(inner.size() < outer.size());
    for (int b : inner) CHECK(outer.count(b) == 1);
}

TEST_CASE("unreachable code after return is pruned") {
    ir::Program p = test::prog_of(
        "def main(m):\n"
        "    return m\n");
    size_t before = p.fn(p.fn_by_name.at("main")).blocks.size();
    CHECK(before == 2);
    ir::Cfg c = cfg_of(p, "main");
    CHECK(p.fn(p.fn_by_name.at("main")).blocks.size() == 1);
    CHECK(c.succs.size() == 1);
    CHECK(c.exit_blocks == std::vector<int>{0});
}

TEST_CASE("early return inside a branch leaves two exit blocks") {
    ir::Program p = test::prog_of(
        "def main(m):\n"
        "    if m == 1:\n"
        "        return 1\n"
        "    return 2\n");
    ir::Cfg c = cfg_of(p, "main");
    CHECK(c.exit_blocks.size() == 2);
    CHECK(c.back_edges.empty());
}

TEST_CASE("edge count equals one per goto plus two per branch") {
    for (const char* name : {"sql.py", "loop.py", "fannkuch.py", "richards.py", "calls.py"}) {
        test::CorpusProgram cp = test::load_corpus(name);
        ir::Program p = lower(parse({SourceFile{cp.name, cp.text}}, cp.entry));
        for (size_t i = 0; i < p.functions.size(); i++) {
            ir::Cfg c = ir::build_cfg(p, static_cast<int>(i));
            const ir::Function& f = p.fn(static_cast<int>(i));
            int want = 0;
            size_t pred_total = 0;
            for (const ir::Block& b : f.blocks) {
                if (std::holds_alternative<ir::Goto>(b.term)) want += 1;
                if (std::holds_alternative<ir::Branch>(b.term)) want += 2;
            }
            for (const auto& pe : c.preds) pred_total += pe.size();
            INFO(cp.name << " " << f.name);
            CHECK(c.edge_count == want);
            CHECK(pred_total == static_cast<size_t>(want));
        }
    }
}

TEST_CASE("reverse postorder visits every reachable block once, entry first") {
    test::CorpusProgram cp = test::load_corpus("richards.py");
    ir::Program p = lower(parse({SourceFile{cp.name, cp.text}}, cp.entry));
    for (size_t i = 0; i < p.functions.size(); i++) {
        ir::Cfg c = ir::build_cfg(p, static_cast<int>(i));
        std::set<int> seen(c.rpo.begin(), c.rpo.end());
        CHECK(seen.size() == c.rpo.size());
        CHECK(seen.size() == p.fn(static_cast<int>(i)).blocks.size());
        REQUIRE(!c.rpo.empty());
        CHECK(c.rpo[0] == 0);
        // every non-entry block appears after at least one predecessor unless
        // it is a loop header
        std::vector<size_t> pos(c.rpo.size());
        for (size_t k = 0; k < c.rpo.size(); k++) pos[static_cast<size_t>(c.rpo[k])] = k;
        for (size_t b = 1; b < c.preds.size(); b++) {
            bool header = false;
            for (const auto& e : c.back_edges) header = header || e.second == static_cast<int>(b);
            if (header) continue;
            bool before = false;
            for (const ir::PredEdge& pe : c.preds[b])
                before = before || pos[static_cast<size_t>(pe.from)] < pos[b];
            CHECK(before);
        }
    }
}

TEST_CASE("dot rendering names every block and marks back edges") {
    ir::Program p = test::prog_of(
        "def main(n):\n"
        "    while n < 3:\n"
        "        n = n + 1\n"
        "    return n\n");
    ir::Cfg c = cfg_of(p, "main");
    std::string dot = ir::cfg_to_dot(p, c);
    CHECK(dot.find("digraph \"main\"") != std::string::npos);
    CHECK(dot.find("b0") != std::string::npos);
    CHECK(dot.find("[style=dashed]") != std::string::npos);
    CHECK(dot.find("[label=T]") != std::string::npos);
    CHECK(dot.find("[label=F]") != std::string::npos);
}
