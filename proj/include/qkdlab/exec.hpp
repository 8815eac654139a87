/* Copyright 2026 The qkdlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qkdlab {

// Execution policy for the Monte Carlo kernels. The serial path is the
// reference; the OpenMP path must reproduce it bit for bit, which holds
// because every index draws from its own counter-derived substream.
enum class Exec { serial, openmp };

constexpr std::string_view to_string(Exec exec) {
  return exec == Exec::serial ? "serial" : "openmp";
}

template <class Fn>
void parallel_for(Exec exec, std::size_t n, Fn&& fn) {
#if defined(_OPENMP)
  if (exec == Exec::openmp) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) {
    fn(i);
  }
}

// Integer-valued reductions only: integer addition is associative, so the
// OpenMP result equals the serial one.
template <class Fn>
std::uint64_t parallel_count(Exec exec, std::size_t n, Fn&& pred) {
  std::uint64_t total = 0;
#if defined(_OPENMP)
  if (exec == Exec::openmp) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t i = 0; i < count; ++i) {
      total += static_cast<std::uint64_t>(pred(static_cast<std::size_t>(i)));
    }
    return total;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) {
    total += static_cast<std::uint64_t>(pred(i));
  }
  return total;
}

}  // namespace qkdlab
