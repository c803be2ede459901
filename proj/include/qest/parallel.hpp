// Copyright 2026 The qest Authors
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

#include <cstddef>
#include <functional>

namespace qest {

/// Worker threads used by exact enumeration and Monte Carlo. Work is always
/// split into fixed-size items and reduced in item order, so results do not
/// depend on the thread count.
struct ExecutionOptions {
    unsigned threads = 1;
};

/// Thread count from the QEST_THREADS environment variable, else 1.
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` threads. The first
/// exception thrown by any item is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace qest
