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

// Corpus loading for tests. Corpus programs carry their test harness inputs
// as `#:` directive comments:
//   #: entry run_sql
//   #: input mode in {1, 2}
// Input domains are exhaustive: the oracle runs the entry once per element
// of the cartesian product, in declared parameter order.

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathlens/value.hpp"

namespace pathlens::test {

struct InputVar {
    std::string name;
    std::vector<PrimConst> values;
};

inline constexpr const char* kCorpusNames[] = {
    "branch.py", "calls.py",   "chaos.py", "coop.py",     "craft.py",
    "dict.py",   "fannkuch.py", "float.py", "for.py",      "loop.py",
    "mutation.py", "nbody.py",  "prims.py", "richards.py", "spectral.py",
    "sql.py",    "undef.py",
};

struct CorpusProgram {
    std::string name;
    std::string path;
    std::string text;
    std::string entry = "main";
    std::vector<InputVar> inputs;
};

inline std::string corpus_path(const std::string& name) {
    return std::string(PATHLENS_CORPUS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string trim_ws(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline PrimConst parse_directive_value(const std::string& tok) {
    if (tok == "None") return PrimConst::none();
    if (tok == "True") return PrimConst::boolean(true);
    if (tok == "False") return PrimConst::boolean(false);
    if (tok.size() >= 2 && (tok.front() == '"' || tok.front() == '\'') &&
        tok.back() == tok.front())
        return PrimConst::str(tok.substr(1, tok.size() - 2));
    if (tok.find('.') != std::string::npos) return PrimConst::floating(std::stod(tok));
    return PrimConst::integer(std::stoll(tok));
}

inline CorpusProgram load_corpus(const std::string& name) {
    CorpusProgram p;
    p.name = name;
    p.path = corpus_path(name);
    p.text = read_file(p.path);
    std::istringstream lines(p.text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("#:", 0) != 0) continue;
        std::string body = trim_ws(line.substr(2));
        if (body.rfind("entry ", 0) == 0) {
            p.entry = trim_ws(body.substr(6));
        } else if (body.rfind("input ", 0) == 0) {
            std::string rest = body.substr(6);
            size_t in_kw = rest.find(" in ");
            size_t open = rest.find('{');
            size_t close = rest.rfind('}');
            if (in_kw == std::string::npos || open == std::string::npos ||
                close == std::string::npos)
                throw std::runtime_error(name + ": bad input directive: " + line);
            InputVar v;
            v.name = trim_ws(rest.substr(0, in_kw));
            std::istringstream items(rest.substr(open + 1, close - open - 1));
            std::string item;
            while (std::getline(items, item, ',')) v.values.push_back(parse_directive_value(trim_ws(item)));
            p.inputs.push_back(std::move(v));
        } else {
            throw std::runtime_error(name + ": unknown directive: " + line);
        }
    }
    return p;
}

// Every combination of declared input values, in declared parameter order.
inline std::vector<std::vector<PrimConst>> input_tuples(const CorpusProgram& p) {
    std::vector<std::vector<PrimConst>> out{{}};
    for (const InputVar& v : p.inputs) {
        std::vector<std::vector<PrimConst>> next;
        for (const auto& tuple : out)
            for (const PrimConst& val : v.values) {
                auto t = tuple;
                t.push_back(val);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

// 1-based line of the first occurrence of `needle`; 0 when absent.
inline int line_of(const std::string& text, const std::string& needle) {
    std::istringstream lines(text);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        n++;
        if (line.find(needle) != std::string::npos) return n;
    }
    return 0;
}

inline int code_line_count(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        std::string t = trim_ws(line);
        if (t.empty() || t.rfind("#:", 0) == 0) continue;
        n++;
    }
    return n;
}

}  // namespace pathlens::test
