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

#include "liouville/core/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace liouville {

namespace {

std::atomic<int> g_threads{0};

int default_threads() {
  if (const char* env = std::getenv("LIOUVILLE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

void set_thread_count(int threads) { g_threads = threads > 0 ? threads : 0; }

int thread_count() {
  const int n = g_threads.load();
  return n > 0 ? n : default_threads();
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
#ifdef _OPENMP
  const int threads = thread_count();
  if (threads > 1 && n > 1) {
    // Exceptions may not cross the parallel region; keep the one from the
    // lowest index so the reported failure does not depend on scheduling.
    std::exception_ptr error;
    std::int64_t error_index = n;
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t k = 0; k < n; ++k) {
      try {
        body(k);
      } catch (...) {
#pragma omp critical(liouville_parallel_error)
        if (k < error_index) {
          error_index = k;
          error = std::current_exception();
        }
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#endif
  for (std::int64_t k = 0; k < n; ++k) body(k);
}

}  // namespace liouville
