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

#include <gtest/gtest.h>

#include "support.hpp"

namespace ife {
namespace {

TEST(Bench, IndicesAreDeterministicAndStored) {
  auto source = testing::fixture_source();
  source.set_sparse({0, 1, 2});
  const auto encoded = testing::encode(source);
  const auto slide = Slide::open(encoded.view());
  const auto a = bench_indices(slide, 500, 9);
  EXPECT_EQ(a, bench_indices(slide, 500, 9));
  EXPECT_NE(a, bench_indices(slide, 500, 10));
  for (auto i : a) EXPECT_GE(i, 3u);
}

TEST(Bench, ResultShape) {
  const auto encoded = testing::fixture();
  const auto slide = Slide::open(encoded.view());
  for (auto path : {BenchPath::kDecoded, BenchPath::kCompressed}) {
    const auto result = bench_random_access(slide, BenchOptions{50, 3, 1, path});
    ASSERT_EQ(result.tiles_per_sec.size(), 3u);
    EXPECT_EQ(result.batch_size, 50u);
    EXPECT_EQ(result.median_tiles_per_sec, median(result.tiles_per_sec));
    EXPECT_LE(result.min_tpt_ms, result.median_tpt_ms);
    EXPECT_LE(result.median_tpt_ms, result.max_tpt_ms);
    EXPECT_NEAR(result.median_tpt_ms * result.median_tiles_per_sec, 1000.0, 1e-6);
  }
  EXPECT_THROW(bench_random_access(slide, BenchOptions{0, 3, 0, BenchPath::kDecoded}),
               ContractError);
}

TEST(Bench, Median) {
  EXPECT_EQ(median({}), 0.0);
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}

}  // namespace
}  // namespace ife
