// Copyright 2026 The Liouville Authors
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

#include <cstdint>
#include <functional>

namespace liouville {

// Caps the worker threads used by parallel loops (0 restores the default).
// The default comes from LIOUVILLE_THREADS when set.
void set_thread_count(int threads);
int thread_count();

// Runs body(k) for k in [0, n). Iterations must be independent; results are
// identical for any thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace liouville
