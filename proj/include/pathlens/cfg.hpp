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
#include <set>
#include <string>
#include <vector>

#include "pathlens/ir.hpp"

namespace pathlens {
namespace ir {

enum class EdgeKind { Fall, BranchTrue, BranchFalse };

struct PredEdge {
    int from = -1;
    EdgeKind kind = EdgeKind::Fall;
};

// Per-function control-flow facts derived from the lowered blocks. Blocks
// unreachable from the entry are pruned from the function before anything
// else is computed, so every consumer sees only live code.
struct Cfg {
    int fn = -1;
    std::vector<std::vector<int>> succs;
    std::vector<std::vector<PredEdge>> preds;
    std::vector<int> exit_blocks;                 // blocks whose terminator is Ret
    std::set<std::pair<int, int>> back_edges;     // (from, to=header)
    std::map<std::pair<int, int>, std::set<int>> loop_blocks;  // back edge -> natural loop
    std::vector<int> rpo;  // reverse postorder from the entry
    int edge_count = 0;

    bool is_back_edge(int from, int to) const { return back_edges.count({from, to}) > 0; }
};

namespace detail {

inline std::vector<int> successors_of(const Block& b) {
    if (const auto* g = std::get_if<Goto>(&b.term)) return {g->target};
    if (const auto* br = std::get_if<Branch>(&b.term)) return {br->on_true, br->on_false};
    return {};
}

// Drop blocks unreachable from block 0 and remap terminator targets.
inline void prune_unreachable(Function& f) {
    size_t n = f.blocks.size();
    std::vector<bool> reach(n, false);
    std::vector<int> stack{0};
    reach[0] = true;
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        for (int s : successors_of(f.blocks[static_cast<size_t>(b)]))
            if (!reach[static_cast<size_t>(s)]) {
                reach[static_cast<size_t>(s)] = true;
                stack.push_back(s);
            }
    }
    std::vector<int> remap(n, -1);
    std::vector<Block> kept;
    for (size_t i = 0; i < n; i++) {
        if (reach[i]) {
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(std::move(f.blocks[i]));
        }
    }
    for (Block& b : kept) {
        if (auto* g = std::get_if<Goto>(&b.term)) g->target = remap[static_cast<size_t>(g->target)];
        if (auto* br = std::get_if<Branch>(&b.term)) {
            br->on_true = remap[static_cast<size_t>(br->on_true)];
            br->on_false = remap[static_cast<size_t>(br->on_false)];
        }
    }
    f.blocks = std::move(kept);
}

}  // namespace detail

inline Cfg build_cfg(Program& prog, int fn_idx) {
    Function& f = prog.functions[static_cast<size_t>(fn_idx)];
    detail::prune_unreachable(f);

    Cfg cfg;
    cfg.fn = fn_idx;
    size_t n = f.blocks.size();
    cfg.succs.resize(n);
    cfg.preds.resize(n);
    for (size_t b = 0; b < n; b++) {
        const Block& blk = f.blocks[b];
        if (const auto* g = std::get_if<Goto>(&blk.term)) {
            cfg.succs[b] = {g->target};
            cfg.preds[static_cast<size_t>(g->target)].push_back({static_cast<int>(b), EdgeKind::Fall});
            cfg.edge_count += 1;
        } else if (const auto* br = std::get_if<Branch>(&blk.term)) {
            cfg.succs[b] = {br->on_true, br->on_false};
            cfg.preds[static_cast<size_t>(br->on_true)].push_back(
                {static_cast<int>(b), EdgeKind::BranchTrue});
            cfg.preds[static_cast<size_t>(br->on_false)].push_back(
                {static_cast<int>(b), EdgeKind::BranchFalse});
            cfg.edge_count += 2;
        } else {
            cfg.exit_blocks.push_back(static_cast<int>(b));
        }
    }

    // reverse postorder
    std::vector<int> state(n, 0);
    std::vector<int> post;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int b = stack.back();
        if (state[static_cast<size_t>(b)] == 0) {
            state[static_cast<size_t>(b)] = 1;
            for (auto it = cfg.succs[static_cast<size_t>(b)].rbegin();
                 it != cfg.succs[static_cast<size_t>(b)].rend(); ++it)
                if (state[static_cast<size_t>(*it)] == 0) stack.push_back(*it);
        } else {
            stack.pop_back();
            if (state[static_cast<size_t>(b)] == 1) {
                state[static_cast<size_t>(b)] = 2;
                post.push_back(b);
            }
        }
    }
    cfg.rpo.assign(post.rbegin(), post.rend());

    // iterative dominators over RPO
    std::vector<int> rpo_index(n, 0);
    for (size_t i = 0; i < cfg.rpo.size(); i++) rpo_index[static_cast<size_t>(cfg.rpo[i])] = static_cast<int>(i);
    std::vector<int> idom(n, -1);
    idom[0] = 0;
    bool changed = true;
    auto intersect = [&](int a, int b) {
        while (a != b) {
            while (rpo_index[static_cast<size_t>(a)] > rpo_index[static_cast<size_t>(b)])
                a = idom[static_cast<size_t>(a)];
            while (rpo_index[static_cast<size_t>(b)] > rpo_index[static_cast<size_t>(a)])
                b = idom[static_cast<size_t>(b)];
        }
        return a;
    };
    while (changed) {
        changed = false;
        for (int b : cfg.rpo) {
            if (b == 0) continue;
            int new_idom = -1;
            for (const PredEdge& p : cfg.preds[static_cast<size_t>(b)]) {
                if (idom[static_cast<size_t>(p.from)] == -1) continue;
                new_idom = new_idom == -1 ? p.from : intersect(p.from, new_idom);
            }
            if (new_idom != -1 && idom[static_cast<size_t>(b)] != new_idom) {
                idom[static_cast<size_t>(b)] = new_idom;
                changed = true;
            }
        }
    }
    auto dominates = [&](int a, int b) {
        while (true) {
            if (a == b) return true;
            if (b == 0) return false;
            b = idom[static_cast<size_t>(b)];
        }
    };

    for (size_t b = 0; b < n; b++) {
        for (int s : cfg.succs[b]) {
            if (dominates(s, static_cast<int>(b))) {
                cfg.back_edges.insert({static_cast<int>(b), s});
                // natural loop: header plus everything reaching the latch
                // without passing through the header
                std::set<int> loop{s, static_cast<int>(b)};
                std::vector<int> work{static_cast<int>(b)};
                while (!work.empty()) {
                    int x = work.back();
                    work.pop_back();
                    if (x == s) continue;
                    for (const PredEdge& p : cfg.preds[static_cast<size_t>(x)])
                        if (loop.insert(p.from).second) work.push_back(p.from);
                }
                cfg.loop_blocks[{static_cast<int>(b), s}] = std::move(loop);
            }
        }
    }
    return cfg;
}

inline std::vector<Cfg> build_all_cfgs(Program& prog) {
    std::vector<Cfg> out;
    for (size_t i = 0; i < prog.functions.size(); i++)
        out.push_back(build_cfg(prog, static_cast<int>(i)));
    return out;
}

inline std::string cfg_to_dot(const Program& prog, const Cfg& cfg) {
    const Function& f = prog.fn(cfg.fn);
    std::string out = "digraph \"" + f.name + "\" {\n  node [shape=box, fontname=monospace];\n";
    for (size_t b = 0; b < f.blocks.size(); b++) {
        std::string label = "b" + std::to_string(b) + ":\\l";
        for (const Stmt& s : f.blocks[b].stmts) label += to_string(prog, s) + "\\l";
        label += to_string(f.blocks[b].term) + "\\l";
        out += "  b" + std::to_string(b) + " [label=\"" + label + "\"];\n";
    }
    for (size_t b = 0; b < f.blocks.size(); b++) {
        const Block& blk = f.blocks[b];
        if (const auto* g = std::get_if<Goto>(&blk.term)) {
            out += "  b" + std::to_string(b) + " -> b" + std::to_string(g->target);
            out += cfg.is_back_edge(static_cast<int>(b), g->target) ? " [style=dashed];\n" : ";\n";
        } else if (const auto* br = std::get_if<Branch>(&blk.term)) {
            out += "  b" + std::to_string(b) + " -> b" + std::to_string(br->on_true) +
                   " [label=T];\n";
            out += "  b" + std::to_string(b) + " -> b" + std::to_string(br->on_false) +
                   " [label=F];\n";
        }
    }
    return out + "}\n";
}

}  // namespace ir
}  // namespace pathlens
