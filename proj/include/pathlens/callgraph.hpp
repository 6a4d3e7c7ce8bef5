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
#include <vector>

#include "pathlens/forward.hpp"
#include "pathlens/ir.hpp"
#include "pathlens/summary.hpp"

namespace pathlens {

struct CallSite {
    int fn = -1;
    ir::Point point;   // position of the Call statement
    int stmt_id = -1;
    const ir::Call* call = nullptr;
};

// Whole-program call graph. Edges prefer what the forward pass resolved;
// call sites it never reached fall back to class-hierarchy resolution so the
// backward walk still sees every possible caller.
struct CallGraph {
    std::vector<CallSite> sites;
    std::map<int, int> site_by_stmt;                    // stmt id -> index into sites
    std::map<int, std::set<int>> callees;               // stmt id -> user fn indices
    std::map<int, std::set<std::string>> summary_callees;
    std::map<int, std::vector<int>> callers;            // fn idx -> stmt ids calling it
    std::vector<std::set<std::string>> may_write_attrs; // per fn, transitive

    const CallSite& site_of(int stmt_id) const { return sites[static_cast<size_t>(site_by_stmt.at(stmt_id))]; }
};

inline CallGraph build_callgraph(const ir::Program& prog, const SummaryTable& sums,
                                 const ForwardResult* fwd = nullptr) {
    CallGraph g;
    g.may_write_attrs.assign(prog.functions.size(), {});
    for (const ir::Function& f : prog.functions) {
        size_t fi = static_cast<size_t>(f.index);
        for (size_t b = 0; b < f.blocks.size(); b++) {
            const ir::Block& blk = f.blocks[b];
            for (size_t i = 0; i < blk.stmts.size(); i++) {
                const ir::Stmt& s = blk.stmts[i];
                if (const auto* w = s.as<ir::AttrWrite>()) {
                    g.may_write_attrs[fi].insert(w->attr);
                    continue;
                }
                const auto* c = s.as<ir::Call>();
                if (!c) continue;
                CallSite cs;
                cs.fn = f.index;
                cs.point = ir::Point{f.index, static_cast<int>(b), static_cast<int>(i)};
                cs.stmt_id = s.id;
                cs.call = c;
                g.site_by_stmt[s.id] = static_cast<int>(g.sites.size());
                g.sites.push_back(cs);

                bool resolved = false;
                if (fwd) {
                    auto it = fwd->callee_fns.find(s.id);
                    if (it != fwd->callee_fns.end()) {
                        g.callees[s.id] = it->second;
                        resolved = true;
                    }
                    auto st = fwd->callee_summaries.find(s.id);
                    if (st != fwd->callee_summaries.end()) {
                        g.summary_callees[s.id] = st->second;
                        resolved = true;
                    }
                }
                if (!resolved) {
                    if (const auto* d = std::get_if<ir::DirectCallee>(&c->callee)) {
                        auto fit = prog.fn_by_name.find(d->name);
                        if (fit != prog.fn_by_name.end())
                            g.callees[s.id].insert(fit->second);
                        else
                            g.summary_callees[s.id].insert(d->name);
                    } else {
                        const auto& m = std::get<ir::MethodCallee>(c->callee);
                        for (const ir::ClassInfo& ci : prog.classes) {
                            auto mit = ci.methods.find(m.name);
                            if (mit != ci.methods.end()) g.callees[s.id].insert(mit->second);
                        }
                        for (const auto& [cls_name, attrs] : sums.classes)
                            if (attrs.count(m.name))
                                g.summary_callees[s.id].insert(cls_name + "." + m.name);
                    }
                }
            }
        }
    }
    for (const auto& [stmt_id, fns] : g.callees)
        for (int callee : fns) g.callers[callee].push_back(stmt_id);
    for (auto& [fn, ids] : g.callers) std::sort(ids.begin(), ids.end());

    // close may-write attr sets over the call edges
    bool changed = true;
    while (changed) {
        changed = false;
        for (const CallSite& cs : g.sites) {
            auto it = g.callees.find(cs.stmt_id);
            if (it == g.callees.end()) continue;
            auto& mine = g.may_write_attrs[static_cast<size_t>(cs.fn)];
            for (int callee : it->second)
                for (const std::string& a : g.may_write_attrs[static_cast<size_t>(callee)])
                    changed |= mine.insert(a).second;
        }
    }
    return g;
}

}  // namespace pathlens
