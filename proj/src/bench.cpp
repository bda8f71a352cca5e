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

#include "ife/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>

namespace ife {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

std::vector<std::uint64_t> bench_indices(const Slide& slide, std::uint64_t count,
                                         std::uint64_t seed) {
  std::vector<std::uint64_t> stored;
  for (std::uint64_t i = 0; i < slide.total_tiles(); ++i) {
    if (slide.tile_range(i)) stored.push_back(i);
  }
  if (stored.empty()) throw ContractError("slide has no stored tiles");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t state = seed;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(stored[splitmix64(state) % stored.size()]);
  }
  return out;
}

BenchResult bench_random_access(const Slide& slide, const BenchOptions& options) {
  if (options.batch_size == 0 || options.batches == 0) {
    throw ContractError("bench needs at least one tile and one batch");
  }
  const auto indices =
      bench_indices(slide, std::uint64_t{options.batch_size} * options.batches, options.seed);

  BenchResult result;
  result.path = options.path;
  result.batch_size = options.batch_size;
  PixelBuffer pixels;
  std::vector<std::uint8_t> copy;
  std::vector<double> tpt;
  using Clock = std::chrono::steady_clock;
  for (std::uint32_t batch = 0; batch < options.batches; ++batch) {
    const auto start = Clock::now();
    for (std::uint32_t i = 0; i < options.batch_size; ++i) {
      const std::uint64_t index = indices[std::size_t{batch} * options.batch_size + i];
      if (options.path == BenchPath::kDecoded) {
        slide.read_tile_into(index, pixels);
        result.checksum += pixels.bytes.front();
      } else {
        const auto bytes = *slide.read_tile_compressed(index);
        copy.resize(bytes.size());
        std::memcpy(copy.data(), bytes.data(), bytes.size());
        result.checksum += copy.front();
      }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.tiles_per_sec.push_back(options.batch_size / seconds);
    tpt.push_back(seconds * 1000.0 / options.batch_size);
  }
  result.median_tiles_per_sec = median(result.tiles_per_sec);
  result.median_tpt_ms = median(tpt);
  result.min_tpt_ms = *std::min_element(tpt.begin(), tpt.end());
  result.max_tpt_ms = *std::max_element(tpt.begin(), tpt.end());
  return result;
}

}  // namespace ife
