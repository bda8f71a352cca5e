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

// Runs every primary acceptance criterion and prints one PASS/FAIL line
// for each. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "ife/bench.hpp"
#include "ife/reader.hpp"
#include "ife/recovery.hpp"
#include "ife/slide.hpp"
#include "ife/validator.hpp"
#include "support.hpp"

namespace ife {
namespace {

// Tolerances and limits.
constexpr double kRoundTripSeconds = 10.0;
constexpr double kMutationSeconds = 60.0;
constexpr double kParallelSeconds = 30.0;
constexpr double kRecoverySeconds = 30.0;
constexpr double kThroughputSeconds = 60.0;
constexpr std::size_t kRandomStreamBytes = 1 << 20;
constexpr std::uint64_t kRandomStreamSeed = 0x1F1E;
constexpr int kBijectionTrials = 500;
constexpr std::uint32_t kMaxLayers = 6;
constexpr std::uint32_t kThroughputSide = 64;  // 64 x 64 = 4096 tiles
constexpr std::uint32_t kThroughputBatch = 1000;
constexpr std::uint32_t kThroughputBatches = 3;
constexpr double kMinDecodedPerSec = 5000.0;
constexpr double kMinCompressedPerSec = 20000.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<Offset> block_offsets(const testing::Encoded& encoded) {
  std::vector<Offset> offsets{0};
  for (const auto& r : encoded.report.block_receipts) offsets.push_back(r.offset);
  return offsets;
}

Outcome round_trip() {
  const auto start = Clock::now();
  const auto source = testing::fixture_source();
  const auto encoded = testing::encode(source);
  const auto report = validate(encoded.view(), ValidationLevel::kFull);
  const auto slide = Slide::open(encoded.view());
  int identical = 0;
  for (std::uint64_t i = 0; i < slide.total_tiles(); ++i) {
    const auto tile = slide.read_tile(i);
    identical += tile && *tile == source.pixels(slide.layout().locate(i));
  }
  const double seconds = since(start);
  return {identical == 21 && report.findings.empty() && seconds < kRoundTripSeconds,
          fmt("%d/21 tiles identical, %zu findings, %.2f s", identical, report.findings.size(),
              seconds)};
}

Outcome validation_tag_law() {
  const auto start = Clock::now();
  auto encoded = testing::fixture();
  const auto offsets = block_offsets(encoded);
  int tag_ok = 0;
  for (const Offset at : offsets) tag_ok += load<std::uint64_t>(encoded.bytes, at) == at;
  std::uint64_t mutants = 0;
  std::uint64_t caught = 0;
  for (const Offset at : offsets) {
    for (std::size_t b = 0; b < wire::kPrefixSize; ++b) {
      const std::uint8_t original = encoded.bytes[at + b];
      for (int v = 0; v < 256; ++v) {
        if (v == original) continue;
        encoded.bytes[at + b] = static_cast<std::uint8_t>(v);
        ++mutants;
        caught += validate(encoded.view(), ValidationLevel::kFull).error_count() > 0;
      }
      encoded.bytes[at + b] = original;
    }
  }
  const double seconds = since(start);
  return {
      tag_ok == static_cast<int>(offsets.size()) && caught == mutants && seconds < kMutationSeconds,
      fmt("%d/%zu tags equal their offsets, %llu/%llu prefix mutants rejected, %.2f s", tag_ok,
          offsets.size(), static_cast<unsigned long long>(caught),
          static_cast<unsigned long long>(mutants), seconds)};
}

Outcome forward_compatibility() {
  const auto canonical = testing::fixture();
  EncodeParams params;
  params.extents_entry_size = 24;
  auto inflated = testing::fixture(params);
  const Offset extents = read_structure(inflated.view()).tile_table.extents_offset();
  const auto array = read_array<LayerExtent>(inflated.view(), extents);
  for (std::uint32_t i = 0; i < array.count(); ++i) {
    const std::size_t pad = extents + wire::array_header::kSize + std::size_t{i} * 24 + 16;
    std::fill_n(inflated.bytes.begin() + static_cast<std::ptrdiff_t>(pad), 8, 0xA5);
  }
  const auto a = read_structure(canonical.view()).layout.layers();
  const auto reread = read_array<LayerExtent>(inflated.view(), extents);
  const auto b = reread.to_vector();
  const bool valid = validate(inflated.view()).ok();
  return {reread.stride() == 24 && a == b && valid,
          fmt("entry_size %u, %zu layers, values %s, file %s", reread.stride(), b.size(),
              a == b ? "identical" : "DIFFER", valid ? "valid" : "INVALID")};
}

Outcome parallel_equivalence() {
  const auto start = Clock::now();
  const auto source = testing::fixture_source();
  std::vector<std::vector<PixelBuffer>> decoded;
  bool all_valid = true;
  bool disjoint = true;
  for (unsigned workers : {1u, 4u, 16u}) {
    EncodeParams params;
    params.worker_count = workers;
    const auto encoded = testing::encode(source, params);
    all_valid &= validate(encoded.view()).findings.empty();
    std::vector<WriteReceipt> ranges{{0, kFileHeaderSize, BlockType::kFileHeader}};
    for (const auto& r : encoded.report.tile_receipts) {
      if (r.size) ranges.push_back(r);
    }
    ranges.insert(ranges.end(), encoded.report.block_receipts.begin(),
                  encoded.report.block_receipts.end());
    std::sort(ranges.begin(), ranges.end(),
              [](const auto& x, const auto& y) { return x.offset < y.offset; });
    for (std::size_t i = 1; i < ranges.size(); ++i) {
      disjoint &= ranges[i - 1].offset + ranges[i - 1].size <= ranges[i].offset;
    }
    const auto slide = Slide::open(encoded.view());
    decoded.emplace_back();
    for (std::uint64_t i = 0; i < slide.total_tiles(); ++i) {
      decoded.back().push_back(*slide.read_tile(i));
    }
  }
  const bool same = decoded[0] == decoded[1] && decoded[0] == decoded[2];
  const double seconds = since(start);
  return {
      all_valid && disjoint && same && seconds < kParallelSeconds,
      fmt("workers {1,4,16}: %s, %s, ranges %s, %.2f s", all_valid ? "all valid" : "INVALID OUTPUT",
          same ? "tiles identical" : "TILES DIFFER", disjoint ? "disjoint" : "OVERLAP", seconds)};
}

Outcome recovery() {
  const auto start = Clock::now();
  const auto original = testing::fixture();
  const auto source = testing::fixture_source();

  auto zeroed = original.bytes;
  std::fill_n(zeroed.begin(), kFileHeaderSize, 0);
  std::set<std::pair<Offset, BlockType>> expected;
  for (const auto& r : original.report.block_receipts) expected.emplace(r.offset, *r.block_type);
  const auto candidates = scan_candidates(zeroed);
  std::set<std::pair<Offset, BlockType>> found;
  for (const auto& c : candidates) found.emplace(c.offset, c.block_type);
  MemorySink sink;
  salvage(zeroed, rebuild(zeroed, candidates), sink);
  const auto salvaged = FileView::from_bytes(sink.take());
  const auto report = validate(salvaged);
  int identical = 0;
  if (report.ok()) {
    const auto slide = Slide::open(salvaged);
    for (std::uint64_t i = 0; i < slide.total_tiles(); ++i) {
      const auto tile = slide.read_tile(i);
      identical += tile && *tile == source.pixels(slide.layout().locate(i));
    }
  }

  std::vector<std::uint8_t> cut(
      original.bytes.begin(),
      original.bytes.begin() + static_cast<std::ptrdiff_t>(original.bytes.size() * 9 / 10));
  std::uint64_t below = 0;
  for (const auto& r : original.report.tile_receipts) below += r.offset + r.size <= cut.size();
  MemorySink cut_sink;
  const auto cut_report = salvage(cut, rebuild(cut, scan_candidates(cut)), cut_sink);

  const double seconds = since(start);
  const bool pass = found == expected && report.findings.empty() && identical == 21 &&
                    cut_report.tiles_salvaged == below && seconds < kRecoverySeconds;
  return {pass, fmt("header zeroed: %zu/%zu blocks found, %zu findings, %d/21 tiles; "
                    "90%% cut: %llu salvaged, %llu below cut; %.2f s",
                    found.size(), expected.size(), report.findings.size(), identical,
                    static_cast<unsigned long long>(cut_report.tiles_salvaged),
                    static_cast<unsigned long long>(below), seconds)};
}

Outcome false_positives() {
  std::vector<std::uint8_t> bytes(kRandomStreamBytes);
  std::mt19937_64 rng(kRandomStreamSeed);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
  const auto candidates = scan_candidates(bytes);
  return {candidates.empty(),
          fmt("%zu candidates in %zu seeded random bytes", candidates.size(), bytes.size())};
}

Outcome bijection() {
  std::mt19937_64 rng(6);
  std::uint64_t checked = 0;
  bool ok = true;
  for (int trial = 0; trial < kBijectionTrials && ok; ++trial) {
    std::vector<LayerExtent> layers;
    const std::uint32_t count = 1 + rng() % kMaxLayers;
    for (std::uint32_t l = 0; l < count; ++l) {
      layers.push_back(LayerExtent{static_cast<std::uint32_t>(1 + rng() % 32),
                                   static_cast<std::uint32_t>(1 + rng() % 32),
                                   std::ldexp(1.0f, static_cast<int>(l))});
    }
    const PyramidLayout layout(layers);
    std::uint64_t expected = 0;
    for (std::uint32_t l = 0; l < count && ok; ++l) {
      for (std::uint32_t y = 0; y < layers[l].y_tiles && ok; ++y) {
        for (std::uint32_t x = 0; x < layers[l].x_tiles && ok; ++x) {
          const TileCoord coord{l, x, y};
          ok = layout.global_index(coord) == expected && layout.locate(expected) == coord;
          ++expected;
          ++checked;
        }
      }
    }
    ok = ok && expected == layout.total_tiles();
  }
  return {ok, fmt("%llu tiles over %d layouts of up to %u layers match the "
                  "layer-major, row-major enumeration",
                  static_cast<unsigned long long>(checked), kBijectionTrials, kMaxLayers)};
}

Outcome annotation_geometry() {
  SyntheticSource source(1, {{2, 2}, {4, 4}});
  SlideMetadata md;
  md.annotations.push_back(
      Annotation{1, AnnotationType::kTextUtf8, 0.73f, 0.5f, 1.0f, 0.5f, 16, 16, {}, 0});
  source.set_metadata(md);
  const auto encoded = testing::encode(source);
  const auto slide = Slide::open(encoded.view());
  const auto extent = slide_space_extent(slide.layout());
  const auto& note = slide.annotation(1);
  const auto view = to_view_pixels(SlideSpaceRect{note.x, note.y, note.width, note.height},
                                   slide.tile_dimension(), 1.0);
  const float expected = 0.73f * 256.0f;
  const double ulp = std::nextafter(expected, INFINITY) - expected;
  const double exact = 0.73 * 256.0;
  const bool axis = extent.x == 0.0f && extent.x + extent.width == 2.0f;
  const bool within = std::abs(view.x - exact) <= ulp;
  return {
      axis && within && view.width == 256.0,
      fmt("slide-space x range [%.1f, %.1f]; x=0.73 maps to %.6f (|error| %.2e, "
          "ulp %.2e); width %.1f",
          extent.x, extent.x + extent.width, view.x, std::abs(view.x - exact), ulp, view.width)};
}

Outcome throughput() {
  const auto start = Clock::now();
  testing::TempPath path("throughput.iris");
  {
    const SyntheticSource source(11, {{kThroughputSide, kThroughputSide}});
    FileSink sink(path.path());
    EncodeParams params;
    params.worker_count = std::max(1u, std::thread::hardware_concurrency());
    encode_slide(source, params, sink);
  }
  const auto slide = Slide::open(path.path());
  BenchOptions options{kThroughputBatch, kThroughputBatches, 0, BenchPath::kDecoded};
  const auto decoded = bench_random_access(slide, options);
  options.path = BenchPath::kCompressed;
  const auto compressed = bench_random_access(slide, options);
  const double seconds = since(start);
  const bool pass = decoded.median_tiles_per_sec >= kMinDecodedPerSec &&
                    compressed.median_tiles_per_sec >= kMinCompressedPerSec &&
                    seconds < kThroughputSeconds;
  return {pass, fmt("%llu tiles; decoded median [%.0f] tiles/s (TPT %.4f ms), "
                    "compressed median [%.0f] tiles/s (TPT %.4f ms); reference laptop "
                    "figures: 6400-8100 tiles/s, 0.14 ms; %.1f s",
                    static_cast<unsigned long long>(slide.total_tiles()),
                    decoded.median_tiles_per_sec, decoded.median_tpt_ms,
                    compressed.median_tiles_per_sec, compressed.median_tpt_ms, seconds)};
}

}  // namespace
}  // namespace ife

int main() {
  const std::vector<std::pair<const char*, std::function<ife::Outcome()>>> criteria{
      {"round-trip identity", ife::round_trip},
      {"validation-tag law", ife::validation_tag_law},
      {"forward compatibility", ife::forward_compatibility},
      {"parallel-write equivalence", ife::parallel_equivalence},
      {"recovery", ife::recovery},
      {"false-positive resistance", ife::false_positives},
      {"global-index bijection", ife::bijection},
      {"annotation geometry", ife::annotation_geometry},
      {"throughput sanity", ife::throughput},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    ife::Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("%s  %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
