// Copyright 2026 The TRScore Authors.
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

#ifndef TRSCORE_TRSCORE_HPP_
#define TRSCORE_TRSCORE_HPP_

#include "trscore/backend.hpp"
#include "trscore/engine.hpp"
#include "trscore/error.hpp"
#include "trscore/hrs.hpp"
#include "trscore/ingest.hpp"
#include "trscore/ngram.hpp"
#include "trscore/perturb.hpp"
#include "trscore/punct.hpp"
#include "trscore/remote_backend.hpp"
#include "trscore/report.hpp"
#include "trscore/stats.hpp"

#endif  // TRSCORE_TRSCORE_HPP_
