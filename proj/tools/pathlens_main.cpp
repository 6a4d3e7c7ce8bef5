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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathlens/pathlens.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pathlens::ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_path_env(const char* value) {
    std::vector<std::string> dirs;
    if (!value) return dirs;
    std::string s(value);
    size_t start = 0;
    while (start <= s.size()) {
        size_t colon = s.find(':', start);
        if (colon == std::string::npos) colon = s.size();
        if (colon > start) dirs.push_back(s.substr(start, colon - start));
        start = colon + 1;
    }
    return dirs;
}

void dump_states(const pathlens::AnalysisRun& run, std::ostream& out) {
    for (const auto& [pt, st] : run.fwd.states) {
        out << run.prog.fn(pt.fn).name << " b" << pt.block << ":" << pt.idx << "\n";
        for (const auto& [loc, vals] : st) {
            out << "  " << pathlens::to_string(run.prog, loc) << " = "
                << pathlens::to_string(run.prog, vals) << "\n";
        }
    }
}

void dump_cfgs(const pathlens::AnalysisRun& run, std::ostream& out) {
    for (const auto& cfg : run.cfgs) out << pathlens::ir::cfg_to_dot(run.prog, cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathlens: finds attribute errors, then tries to refute each "
                 "one with a backward path-sensitive search"};
    app.require_subcommand(1);

    CLI::App* analyze = app.add_subcommand("analyze", "analyze source files");
    std::vector<std::string> paths;
    std::string format = "text";
    std::string explain_id;
    bool no_backward = false;
    bool no_footprint_skip = false;
    bool no_timing = false;
    bool want_states = false;
    bool want_cfg = false;
    pathlens::AnalyzerConfig cfg;

    analyze->add_option("files", paths, "source files")->required()->expected(-1);
    analyze->add_option("--entry", cfg.entry, "entry function name")->capture_default_str();
    analyze->add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--summaries", cfg.summary_files, "summary file (repeatable)");
    analyze->add_flag("--no-backward", no_backward, "report forward candidates unrefuted");
    analyze->add_option("--max-steps", cfg.max_steps, "backward step budget per query")
        ->capture_default_str();
    analyze->add_option("--max-conjuncts", cfg.max_conjuncts, "backward frontier cap")
        ->capture_default_str();
    analyze->add_option("--max-stack", cfg.max_stack, "backward call descent depth")
        ->capture_default_str();
    analyze->add_option("--unroll", cfg.unroll, "loop back edge crossings per path")
        ->capture_default_str();
    analyze->add_option("--k-prim", cfg.k_prim, "constants tracked per location")
        ->capture_default_str();
    analyze->add_flag("--no-footprint-skip", no_footprint_skip,
                      "apply wp to every statement, relevant or not");
    analyze->add_flag("--show-excluded", cfg.show_excluded,
                      "include error kinds outside the refutation scope");
    analyze->add_flag("--no-timing", no_timing, "omit timing from json output");
    analyze->add_flag("--dump-states", want_states, "print abstract states to stderr");
    analyze->add_flag("--dump-cfg", want_cfg, "print control flow graphs to stderr (dot)");
    analyze->add_option("--explain", explain_id,
                        "print the backward trace for one candidate id");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.run_backward = !no_backward;
        cfg.footprint_skip = !no_footprint_skip;
        for (auto& d : split_path_env(std::getenv("PATHLENS_SUMMARY_PATH")))
            cfg.summary_search_dirs.push_back(d);

        std::vector<pathlens::SourceFile> files;
        for (const auto& p : paths) files.push_back({p, slurp(p)});

        pathlens::AnalysisRun run = pathlens::run_analysis(files, cfg);

        if (want_states) dump_states(run, std::cerr);
        if (want_cfg) dump_cfgs(run, std::cerr);

        if (!explain_id.empty()) {
            pathlens::QueryOutcome out = pathlens::explain(run, explain_id);
            std::cerr << explain_id << ": " << pathlens::to_string(out.result) << " after "
                      << out.steps << " steps\n";
            if (!out.witness_trace.empty()) {
                std::cerr << "witness path (backward order):\n";
                for (const auto& line : out.witness_trace) std::cerr << "  " << line << "\n";
            }
            for (size_t i = 0; i < out.refutations.size(); ++i) {
                std::cerr << "refuted path " << i + 1 << ":\n";
                for (const auto& line : out.refutations[i]) std::cerr << "  " << line << "\n";
            }
        }

        if (format == "json") {
            std::cout << run.report.to_json(!no_timing).dump(2) << "\n";
        } else {
            std::cout << run.report.to_text();
        }
        return run.report.exit_code();
    } catch (const pathlens::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
