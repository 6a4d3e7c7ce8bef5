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

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "pathlens/backward.hpp"
#include "pathlens/callgraph.hpp"
#include "pathlens/cfg.hpp"
#include "pathlens/config.hpp"
#include "pathlens/forward.hpp"
#include "pathlens/lower.hpp"
#include "pathlens/parser.hpp"
#include "pathlens/report.hpp"
#include "pathlens/summary.hpp"

namespace pathlens {

// Everything one analysis produced, kept alive so reports can be explained
// and states dumped afterwards.
struct AnalysisRun {
    AnalyzerConfig config;
    ir::Program prog;
    std::vector<ir::Cfg> cfgs;
    SummaryTable sums;
    ForwardResult fwd;
    CallGraph cg;
    Report report;
};

namespace detail {

inline std::string context_string(const ir::Program& prog, const std::vector<int>& sites) {
    std::string out;
    for (size_t i = 0; i < sites.size(); i++) {
        const Span* sp = nullptr;
        for (const ir::Function& f : prog.functions) {
            for (const ir::Block& b : f.blocks)
                for (const ir::Stmt& s : b.stmts)
                    if (s.id == sites[i]) sp = &s.span;
        }
        if (!sp) continue;
        if (!out.empty()) out += " > ";
        out += prog.files[static_cast<size_t>(sp->file)].path + ":" + std::to_string(sp->line);
    }
    return out;
}

}  // namespace detail

inline AnalysisRun run_analysis(const std::vector<SourceFile>& files,
                                const AnalyzerConfig& cfg = {}) {
    using clock = std::chrono::steady_clock;
    auto ms_between = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    AnalysisRun run;
    run.config = cfg;
    auto t0 = clock::now();

    SourceProgram src = parse(files, cfg.entry);
    run.prog = lower(src);
    run.cfgs = build_all_cfgs(run.prog);
    run.sums = SummaryTable::builtin_defaults();
    run.sums.merge(load_summaries(cfg.summary_files, cfg.summary_search_dirs));

    ForwardOptions fopt;
    fopt.k_prim = cfg.k_prim;
    fopt.max_block_visits = cfg.forward_max_visits;
    fopt.max_context_depth = cfg.max_context_depth;
    auto t1 = clock::now();
    run.fwd = analyze_forward(run.prog, run.cfgs, run.sums, fopt);
    auto t2 = clock::now();

    run.cg = build_callgraph(run.prog, run.sums, &run.fwd);

    BackwardOptions bopt;
    bopt.max_steps = cfg.max_steps;
    bopt.max_conjuncts = cfg.max_conjuncts;
    bopt.max_stack = cfg.max_stack;
    bopt.unroll = cfg.unroll;
    bopt.footprint_skip = cfg.footprint_skip;
    BackwardEngine engine(run.prog, run.cfgs, run.cg, run.sums, bopt);

    // one backward query per distinct claim; contexts share the outcome
    std::map<std::tuple<ir::Point, ir::Var, TauAbs>, QueryOutcome> outcomes;
    for (const RawCandidate& rc : run.fwd.candidates) {
        if (rc.kind != CandidateKind::AttributeError || !cfg.run_backward) continue;
        auto key = std::make_tuple(rc.point, rc.var, rc.tau);
        if (outcomes.count(key)) continue;
        outcomes[key] = engine.run(rc);
    }

    for (const RawCandidate& rc : run.fwd.candidates) {
        if (rc.kind == CandidateKind::ValueError && !cfg.show_excluded) continue;
        ErrorCandidate ec;
        ec.kind = rc.kind;
        ec.file = run.prog.files[static_cast<size_t>(rc.span.file)].path;
        ec.line = rc.span.line;
        ec.col = rc.span.col;
        ec.variable = rc.var.name;
        ec.attr = rc.attr;
        ec.type = rc.tau.str();
        ec.detail = rc.detail;
        ec.context = detail::context_string(run.prog, rc.context);
        ec.point = rc.point;
        ec.var = rc.var;
        ec.tau = rc.tau;
        switch (rc.kind) {
            case CandidateKind::AttributeError: {
                if (!cfg.run_backward) {
                    ec.status = "confirmed";
                    break;
                }
                const QueryOutcome& qo = outcomes.at(std::make_tuple(rc.point, rc.var, rc.tau));
                switch (qo.result) {
                    case QueryResult::Refuted: ec.status = "refuted"; break;
                    case QueryResult::WitnessFound: ec.status = "confirmed"; break;
                    case QueryResult::BudgetExceeded:
                        ec.status = "budget";
                        ec.budget_reason = qo.budget_reason;
                        break;
                }
                break;
            }
            case CandidateKind::PossiblyUndefined:
                ec.status = "confirmed";  // no type claim to push backward
                break;
            case CandidateKind::ValueError:
                ec.status = "excluded";
                break;
        }
        run.report.candidates.push_back(std::move(ec));
    }

    std::sort(run.report.candidates.begin(), run.report.candidates.end(),
              [](const ErrorCandidate& a, const ErrorCandidate& b) {
                  return a.sort_key() < b.sort_key();
              });
    for (size_t i = 0; i < run.report.candidates.size(); i++) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "c%03zu", i + 1);
        run.report.candidates[i].id = buf;
        const std::string& st = run.report.candidates[i].status;
        if (st == "confirmed") run.report.confirmed++;
        if (st == "refuted") run.report.refuted++;
        if (st == "budget") run.report.budget++;
    }

    auto t3 = clock::now();
    run.report.forward_ms = ms_between(t1, t2);
    run.report.backward_ms = ms_between(t2, t3);
    run.report.total_ms = ms_between(t0, t3);
    return run;
}

// Re-run one candidate's query with tracing for human consumption.
inline QueryOutcome explain(const AnalysisRun& run, const std::string& id) {
    for (const ErrorCandidate& c : run.report.candidates) {
        if (c.id != id) continue;
        if (c.kind != CandidateKind::AttributeError)
            throw ConfigError("only attribute error candidates have backward traces");
        BackwardOptions bopt;
        bopt.max_steps = run.config.max_steps;
        bopt.max_conjuncts = run.config.max_conjuncts;
        bopt.max_stack = run.config.max_stack;
        bopt.unroll = run.config.unroll;
        bopt.footprint_skip = run.config.footprint_skip;
        bopt.collect_trace = true;
        BackwardEngine engine(run.prog, run.cfgs, run.cg, run.sums, bopt);
        return engine.run_conjunct(make_initial_query(c.var, c.tau), c.point);
    }
    throw ConfigError("no candidate with id '" + id + "'");
}

}  // namespace pathlens
