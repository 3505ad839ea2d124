// SPDX-License-Identifier: Apache-2.0
//
// relaymimo: hybrid-detection massive MIMO relay uplink toolkit
// Copyright (C) 2026 The relaymimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RELAYMIMO_HPP
#define RELAYMIMO_HPP

#include "relaymimo/analytic.hpp"
#include "relaymimo/channel.hpp"
#include "relaymimo/config.hpp"
#include "relaymimo/detection.hpp"
#include "relaymimo/errors.hpp"
#include "relaymimo/figures.hpp"
#include "relaymimo/monte_carlo.hpp"
#include "relaymimo/parallel.hpp"
#include "relaymimo/power_allocation.hpp"
#include "relaymimo/rng.hpp"
#include "relaymimo/stats.hpp"

#endif
