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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pathlens/backward.hpp"
#include "pathlens/forward.hpp"

namespace pathlens {

// A reportable finding with its verification status.
struct ErrorCandidate {
    std::string id;             // cNNN, assigned after sorting
    CandidateKind kind = CandidateKind::AttributeError;
    std::string file;
    int line = 0, col = 0;
    std::string variable;
    std::string attr;
    std::string type;       // the claimed offending abstraction, e.g. "Create" or "NONE"
    std::string detail;     // receiver rendering from the forward pass
    std::string context;    // "" or "file:line > file:line" call chain
    std::string status;     // confirmed | refuted | budget | excluded
    std::string budget_reason;

    // internals kept for re-running the query (--explain)
    ir::Point point;
    ir::Var var;
    TauAbs tau;

    auto sort_key() const {
        return std::tie(file, line, col, kind, variable, type, context);
    }
};

struct Report {
    std::vector<ErrorCandidate> candidates;
    int confirmed = 0;
    int refuted = 0;
    int budget = 0;
    double forward_ms = 0, backward_ms = 0, total_ms = 0;

    int exit_code() const { return (confirmed + budget) == 0 ? 0 : 1; }

    nlohmann::ordered_json to_json(bool with_timing = true) const {
        nlohmann::ordered_json j;
        j["candidates"] = nlohmann::ordered_json::array();
        for (const ErrorCandidate& c : candidates) {
            nlohmann::ordered_json e;
            e["id"] = c.id;
            e["kind"] = to_string(c.kind);
            e["file"] = c.file;
            e["line"] = c.line;
            e["col"] = c.col;
            e["variable"] = c.variable;
            if (c.kind == CandidateKind::AttributeError) e["attribute"] = c.attr;
            e["type"] = c.type;
            if (!c.detail.empty()) e["detail"] = c.detail;
            e["context"] = c.context;
            e["status"] = c.status;
            if (!c.budget_reason.empty()) e["budget_reason"] = c.budget_reason;
            j["candidates"].push_back(std::move(e));
        }
        j["totals"] = {{"confirmed", confirmed}, {"refuted", refuted}, {"budget", budget}};
        if (with_timing)
            j["timing"] = {{"forward_ms", forward_ms},
                           {"backward_ms", backward_ms},
                           {"total_ms", total_ms}};
        return j;
    }

    std::string to_text() const {
        std::string out;
        for (const ErrorCandidate& c : candidates) {
            out += c.file + ":" + std::to_string(c.line) + ": ";
            switch (c.kind) {
                case CandidateKind::AttributeError:
                    out += "attribute error possible: '" + c.type + "' value has no attribute '" +
                           c.attr + "' (receiver '" + c.variable + "')";
                    break;
                case CandidateKind::PossiblyUndefined:
                    out += "variable '" + c.variable + "' may be used before assignment";
                    break;
                case CandidateKind::ValueError:
                    out += "division by zero possible: divisor '" + c.variable + "' may be " +
                           (c.detail.empty() ? c.type : c.detail);
                    break;
            }
            if (!c.context.empty()) out += " [via " + c.context + "]";
            out += " [" + c.id + ": " + c.status + "]\n";
        }
        out += "totals: " + std::to_string(confirmed) + " confirmed, " +
               std::to_string(refuted) + " refuted, " + std::to_string(budget) +
               " over budget\n";
        return out;
    }
};

}  // namespace pathlens
