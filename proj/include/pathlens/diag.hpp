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

#include <stdexcept>
#include <string>
#include <vector>

namespace pathlens {

// Source location. `file` indexes into the program's file table.
struct Span {
    int file = -1;
    int line = 0;  // 1-based, 0 = unknown
    int col = 0;   // 1-based, 0 = unknown

    bool known() const { return line > 0; }
};

struct SourceFile {
    std::string path;
    std::string text;
};

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what, Span span = {})
        : std::runtime_error(what), span(span) {}
    Span span;
};

class SyntaxError : public Error {
  public:
    using Error::Error;
};

class LoweringError : public Error {
  public:
    using Error::Error;
};

class SummaryFormatError : public Error {
  public:
    SummaryFormatError(const std::string& what, int line)
        : Error(what), line(line) {}
    int line = 0;
};

class AnalysisError : public Error {
  public:
    using Error::Error;
};

// Forward fixed point exceeded its block-visit budget; indicates a widening bug.
class DivergenceError : public AnalysisError {
  public:
    using AnalysisError::AnalysisError;
};

// A call target matched no user function and no summary.
class UnresolvedCalleeError : public AnalysisError {
  public:
    using AnalysisError::AnalysisError;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

// Concrete oracle ran past its step budget.
class OracleTimeout : public Error {
  public:
    using Error::Error;
};

inline std::string format_span(const std::vector<SourceFile>& files, Span s) {
    std::string out;
    if (s.file >= 0 && s.file < static_cast<int>(files.size()))
        out += files[static_cast<size_t>(s.file)].path;
    else
        out += "<unknown>";
    if (s.line > 0) {
        out += ":" + std::to_string(s.line);
        if (s.col > 0) out += ":" + std::to_string(s.col);
    }
    return out;
}

}  // namespace pathlens
