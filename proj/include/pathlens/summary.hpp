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

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pathlens/diag.hpp"
#include "pathlens/value.hpp"

namespace pathlens {

// Return contract of a summarized (bodyless) function.
struct SummaryRet {
    enum class Kind { Prim, Type, Class } kind = Kind::Type;
    PrimConst prim;
    PrimType type = PrimType::None;
    std::string class_name;
};

struct SummaryFn {
    std::string name;
    int arity = 0;
    SummaryRet ret;
};

// Builtins and library stubs the analysis trusts without bodies. Summary
// classes double as the attribute tables for primitive types (a class named
// "str" describes the attributes of string values, etc.). Summarized
// functions are side-effect free by definition.
//
// File format, one entry per line:
//   fn <name>/<arity> -> <RET>     RET: BOOL|INT|FLOAT|STR|NONE, a class
//                                  name, or a literal (42, 1.5, 'x', True, None)
//   class <Name> { attr, attr }
// '#' starts a comment.
class SummaryTable {
  public:
    std::map<std::string, SummaryFn> fns;
    std::map<std::string, std::set<std::string>> classes;

    bool has_fn(const std::string& name) const { return fns.count(name) > 0; }
    bool has_class(const std::string& name) const { return classes.count(name) > 0; }

    bool class_has_attr(const std::string& cls, const std::string& attr) const {
        auto it = classes.find(cls);
        return it != classes.end() && it->second.count(attr) > 0;
    }

    // Later entries win so user-provided files can override the defaults.
    void merge(const SummaryTable& other) {
        for (const auto& [k, v] : other.fns) fns[k] = v;
        for (const auto& [k, v] : other.classes) classes[k] = v;
    }

    static SummaryTable builtin_defaults() {
        SummaryTable t;
        auto fn = [&](const char* name, int arity, SummaryRet ret) {
            t.fns[name] = SummaryFn{name, arity, ret};
        };
        auto ty = [](PrimType p) {
            SummaryRet r;
            r.kind = SummaryRet::Kind::Type;
            r.type = p;
            return r;
        };
        fn("len", 1, ty(PrimType::Int));
        fn("abs", 1, ty(PrimType::Int));
        fn("print", 1, ty(PrimType::None));
        fn("str", 1, ty(PrimType::Str));
        fn("int", 1, ty(PrimType::Int));
        fn("float", 1, ty(PrimType::Float));
        fn("bool", 1, ty(PrimType::Bool));
        SummaryRet range_ret;
        range_ret.kind = SummaryRet::Kind::Class;
        range_ret.class_name = "range";
        fn("range", 1, range_ret);
        t.classes["range"] = {};
        t.classes["list"] = {"append", "pop", "sort", "reverse", "index", "count"};
        t.classes["str"] = {"upper", "lower", "strip", "split", "join", "find", "replace"};
        t.classes["int"] = {};
        t.classes["float"] = {};
        t.classes["bool"] = {};
        t.classes["NoneType"] = {};
        return t;
    }

    static SummaryTable parse(const std::string& text) {
        SummaryTable t;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            lineno++;
            size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            if (trimmed.rfind("fn ", 0) == 0)
                parse_fn(t, trimmed.substr(3), lineno);
            else if (trimmed.rfind("class ", 0) == 0)
                parse_class(t, trimmed.substr(6), lineno);
            else
                throw SummaryFormatError("expected 'fn' or 'class' entry", lineno);
        }
        return t;
    }

  private:
    static std::string trim(const std::string& s) {
        size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return "";
        size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    }

    static bool valid_name(const std::string& s) {
        if (s.empty()) return false;
        if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
        for (char c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
        return true;
    }

    static void parse_fn(SummaryTable& t, const std::string& body, int lineno) {
        size_t slash = body.find('/');
        size_t arrow = body.find("->");
        if (slash == std::string::npos || arrow == std::string::npos || arrow < slash)
            throw SummaryFormatError("expected 'fn <name>/<arity> -> <ret>'", lineno);
        SummaryFn f;
        f.name = trim(body.substr(0, slash));
        if (!valid_name(f.name)) throw SummaryFormatError("bad function name", lineno);
        std::string arity = trim(body.substr(slash + 1, arrow - slash - 1));
        try {
            size_t used = 0;
            f.arity = std::stoi(arity, &used);
            if (used != arity.size() || f.arity < 0) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw SummaryFormatError("bad arity '" + arity + "'", lineno);
        }
        f.ret = parse_ret(trim(body.substr(arrow + 2)), lineno);
        t.fns[f.name] = f;
    }

    static SummaryRet parse_ret(const std::string& s, int lineno) {
        SummaryRet r;
        if (s.empty()) throw SummaryFormatError("missing return contract", lineno);
        if (auto pt = prim_type_from_name(s)) {
            r.kind = SummaryRet::Kind::Type;
            r.type = *pt;
            return r;
        }
        r.kind = SummaryRet::Kind::Prim;
        if (s == "None") {
            r.prim = PrimConst::none();
            return r;
        }
        if (s == "True" || s == "False") {
            r.prim = PrimConst::boolean(s == "True");
            return r;
        }
        if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
            r.prim = PrimConst::str(s.substr(1, s.size() - 2));
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-') {
            try {
                if (s.find('.') != std::string::npos) {
                    size_t used = 0;
                    double v = std::stod(s, &used);
                    if (used != s.size()) throw std::invalid_argument("");
                    r.prim = PrimConst::floating(v);
                } else {
                    size_t used = 0;
                    long long v = std::stoll(s, &used);
                    if (used != s.size()) throw std::invalid_argument("");
                    r.prim = PrimConst::integer(v);
                }
                return r;
            } catch (const std::exception&) {
                throw SummaryFormatError("bad literal '" + s + "'", lineno);
            }
        }
        if (!valid_name(s)) throw SummaryFormatError("bad return contract '" + s + "'", lineno);
        r.kind = SummaryRet::Kind::Class;
        r.class_name = s;
        return r;
    }

    static void parse_class(SummaryTable& t, const std::string& body, int lineno) {
        size_t open = body.find('{');
        size_t close = body.rfind('}');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw SummaryFormatError("expected 'class <Name> { attrs }'", lineno);
        std::string name = trim(body.substr(0, open));
        if (!valid_name(name)) throw SummaryFormatError("bad class name", lineno);
        std::set<std::string> attrs;
        std::string inner = body.substr(open + 1, close - open - 1);
        std::istringstream items(inner);
        std::string item;
        while (std::getline(items, item, ',')) {
            std::string attr = trim(item);
            if (attr.empty()) continue;
            if (!valid_name(attr)) throw SummaryFormatError("bad attribute '" + attr + "'", lineno);
            attrs.insert(attr);
        }
        t.classes[name] = std::move(attrs);
    }
};

// Resolve `path` against the current directory, then against each directory
// in `search_dirs` (PATHLENS_SUMMARY_PATH prepends entries there).
inline std::optional<std::string> read_summary_file(const std::string& path,
                                                    const std::vector<std::string>& search_dirs) {
    auto try_read = [](const std::string& p) -> std::optional<std::string> {
        std::ifstream in(p, std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    for (const std::string& dir : search_dirs) {
        if (auto text = try_read(dir + "/" + path)) return text;
    }
    return try_read(path);
}

inline SummaryTable load_summaries(const std::vector<std::string>& files,
                                   const std::vector<std::string>& search_dirs) {
    SummaryTable t = SummaryTable::builtin_defaults();
    for (const std::string& f : files) {
        auto text = read_summary_file(f, search_dirs);
        if (!text) throw ConfigError("summary file not found: " + f);
        try {
            t.merge(SummaryTable::parse(*text));
        } catch (SummaryFormatError& e) {
            throw SummaryFormatError(f + ":" + std::to_string(e.line) + ": " + e.what(), e.line);
        }
    }
    return t;
}

}  // namespace pathlens
