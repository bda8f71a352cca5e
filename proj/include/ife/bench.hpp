// Copyright 2026 The ife Authors. All Rights Reserved.
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

/// @file bench.hpp
/// @brief Random-access tile throughput measurement.

#ifndef IFE_BENCH_HPP
#define IFE_BENCH_HPP

#include <cstdint>
#include <vector>

#include "ife/slide.hpp"

namespace ife {

enum class BenchPath {
  kDecoded,     // read_tile
  kCompressed,  // read_tile_compressed, bytes copied out
};

struct BenchOptions {
  std::uint32_t batch_size = 10000;
  std::uint32_t batches = 3;
  std::uint64_t seed = 0;
  BenchPath path = BenchPath::kDecoded;
};

struct BenchResult {
  BenchPath path = BenchPath::kDecoded;
  std::uint32_t batch_size = 0;
  std::vector<double> tiles_per_sec;  // one per batch
  double median_tiles_per_sec = 0.0;
  /// Tile presentation time: milliseconds per tile, from each batch.
  double median_tpt_ms = 0.0;
  double min_tpt_ms = 0.0;
  double max_tpt_ms = 0.0;
  /// Sum of the first byte of every tile read; keeps the reads observable.
  std::uint64_t checksum = 0;
};

/// Uniformly random non-sparse tile indices, fixed by `seed`.
std::vector<std::uint64_t> bench_indices(const Slide& slide, std::uint64_t count,
                                         std::uint64_t seed);

/// Times batches of reads over bench_indices(). Throws ContractError when
/// the slide has no stored tiles or the options ask for no work.
BenchResult bench_random_access(const Slide& slide, const BenchOptions& options);

double median(std::vector<double> values);

}  // namespace ife

#endif  // IFE_BENCH_HPP
