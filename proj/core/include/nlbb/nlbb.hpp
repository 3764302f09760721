// Copyright 2026 The nlbb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Umbrella header for the public API.

#include "nlbb/bench.hpp"
#include "nlbb/cli.hpp"
#include "nlbb/branching.hpp"
#include "nlbb/engine.hpp"
#include "nlbb/errors.hpp"
#include "nlbb/expr.hpp"
#include "nlbb/io.hpp"
#include "nlbb/model.hpp"
#include "nlbb/nlp.hpp"
#include "nlbb/open_set.hpp"
#include "nlbb/options.hpp"
#include "nlbb/parallel.hpp"
#include "nlbb/pump.hpp"
