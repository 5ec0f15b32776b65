// Copyright 2026 The gvn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Umbrella header: the whole toolkit in one include.

#include "gvn/bcd_vectors.hpp"
#include "gvn/bench.hpp"
#include "gvn/gating.hpp"
#include "gvn/generators.hpp"
#include "gvn/logic.hpp"
#include "gvn/netlist.hpp"
#include "gvn/netlist_format.hpp"
#include "gvn/power_model.hpp"
#include "gvn/process_params.hpp"
#include "gvn/switch_sim.hpp"
