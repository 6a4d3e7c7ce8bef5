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

#include "pathlens/abstract.hpp"
#include "pathlens/ast.hpp"
#include "pathlens/backward.hpp"
#include "pathlens/callgraph.hpp"
#include "pathlens/cfg.hpp"
#include "pathlens/config.hpp"
#include "pathlens/constraints.hpp"
#include "pathlens/diag.hpp"
#include "pathlens/driver.hpp"
#include "pathlens/forward.hpp"
#include "pathlens/interp.hpp"
#include "pathlens/ir.hpp"
#include "pathlens/lexer.hpp"
#include "pathlens/lower.hpp"
#include "pathlens/parser.hpp"
#include "pathlens/report.hpp"
#include "pathlens/summary.hpp"
#include "pathlens/value.hpp"
