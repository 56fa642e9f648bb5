/* Copyright 2026 The nfftk Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <utility>

#include "nfftk/common.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nfftk {

/// Threads the machine offers (1 without OpenMP).
inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_num_procs();
#else
  return 1;
#endif
}

/// [first, last) of the worker `tid` when `count` items are split into
/// `nthreads` contiguous blocks.
inline std::pair<Index, Index> block_range(Index count, int tid, int nthreads) {
  const Index base = count / nthreads;
  const Index extra = count % nthreads;
  const Index first = tid * base + std::min<Index>(tid, extra);
  return {first, first + base + (tid < extra ? 1 : 0)};
}

/// Runs fn(tid, nthreads) on `threads` workers; fn(0, 1) inline when threads <= 1.
template <typename Fn>
void parallel_region(int threads, Fn&& fn) {
#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel num_threads(threads)
    fn(omp_get_thread_num(), omp_get_num_threads());
    return;
  }
#endif
  fn(0, 1);
}

}  // namespace nfftk
