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

#include "ife/encoder.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "ife/assembler.hpp"

namespace ife {

namespace {

class TileEncoder {
 public:
  TileEncoder(const SlideSource& source, const EncodeParams& params, const CodecRegistry& registry)
      : source_(source),
        params_(params),
        registry_(registry),
        codec_(registry.find(params.encoding_format)) {}

  /// Empty for a sparse tile.
  std::vector<std::uint8_t> produce(const TileCoord& coord) const {
    TileData data = source_.tile(coord);
    if (std::holds_alternative<SparseTile>(data)) return {};
    if (auto* packed = std::get_if<PrecompressedTile>(&data)) {
      if (packed->format == params_.encoding_format) {
        if (packed->bytes.empty() || packed->bytes.size() > UINT32_MAX) {
          throw EncodeError(coord, "precompressed tile size " +
                                       std::to_string(packed->bytes.size()) + " is not storable");
        }
        return std::move(packed->bytes);
      }
      const auto decoder = registry_.require(packed->format);
      data = decoder->decode(packed->bytes, kTileDimension, kTileDimension, source_.pixel_format());
    }
    const auto& pixels = std::get<PixelBuffer>(data);
    if (pixels.width != kTileDimension || pixels.height != kTileDimension ||
        pixels.pixel_format != source_.pixel_format() || !pixels.well_formed()) {
      throw EncodeError(coord, "source returned a " + std::to_string(pixels.width) + "x" +
                                   std::to_string(pixels.height) + " " +
                                   std::string(to_string(pixels.pixel_format)) + " buffer");
    }
    if (!codec_) registry_.require(params_.encoding_format);
    auto bytes = codec_->encode(pixels, params_.quality);
    if (bytes.empty()) throw EncodeError(coord, "codec produced no bytes");
    if (bytes.size() > UINT32_MAX) {
      throw EncodeError(coord, "encoded tile exceeds 4 GiB");
    }
    return bytes;
  }

 private:
  const SlideSource& source_;
  const EncodeParams& params_;
  const CodecRegistry& registry_;
  std::shared_ptr<const Codec> codec_;
};

std::vector<std::uint64_t> pull_order(std::uint64_t total,
                                      const std::optional<std::uint64_t>& seed) {
  std::vector<std::uint64_t> order(total);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

}  // namespace

EncodeReport encode_slide(const SlideSource& source, const EncodeParams& params, Sink& sink) {
  if (params.encoding_format == EncodingFormat::kIrisCodec || !is_known(params.encoding_format)) {
    throw CodecUnavailableError(
        "encoding format " + std::string(to_string(params.encoding_format)) + " cannot be encoded");
  }
  if (!is_known(source.pixel_format())) {
    throw ContractError("source has an unknown pixel format");
  }
  const CodecRegistry& registry = params.registry ? *params.registry : CodecRegistry::global();
  const PyramidLayout layout = source.layout();
  if (layout.layer_count() == 0) throw ContractError("source has no layers");
  if (auto problem = layout.scale_problem(); !problem.empty()) {
    throw ContractError("source layout: " + problem);
  }
  const SlideMetadata metadata = source.metadata();
  check_metadata(metadata);

  EncodeReport report;
  report.layout = layout;
  const std::uint64_t total = layout.total_tiles();
  std::vector<TileOffsetEntry> entries(total, TileOffsetEntry::sparse());
  report.tile_receipts.assign(total, WriteReceipt{});

  ReservationAllocator allocator;
  std::optional<StructurePlan> structure;
  if (params.placement == Placement::kStructureFirst) {
    structure = StructurePlan::reserve(allocator, layout, params.extents_entry_size,
                                       params.offsets_entry_size);
  }

  const TileEncoder encoder(source, params, registry);
  const auto order = pull_order(total, params.shuffle_seed);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t slot = next.fetch_add(1);
      if (slot >= total) return;
      const std::uint64_t index = order[slot];
      const TileCoord coord = layout.locate(index);
      try {
        const auto bytes = encoder.produce(coord);
        if (bytes.empty()) continue;
        const auto at = allocator.reserve_range(bytes.size());
        report.tile_receipts[index] = write_tile_payload(sink, at, bytes);
        entries[index] = TileOffsetEntry{at.offset, static_cast<std::uint32_t>(bytes.size())};
      } catch (const CodecUnavailableError&) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      } catch (const EncodeError&) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::make_exception_ptr(EncodeError(coord, e.what()));
        failed = true;
      }
    }
  };

  const unsigned workers = std::max(1u, params.worker_count);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) threads.emplace_back(work);
    for (auto& thread : threads) thread.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& entry : entries) {
    if (entry.is_sparse()) {
      ++report.sparse_tiles;
    } else {
      ++report.tiles_written;
    }
  }
  if (!structure) {
    structure = StructurePlan::reserve(allocator, layout, params.extents_entry_size,
                                       params.offsets_entry_size);
  }
  const auto metadata_plan = MetadataPlan::reserve(allocator, metadata);
  report.tile_table_offset = structure->write(
      sink, layout, params.encoding_format, source.pixel_format(), entries, &report.block_receipts);
  report.metadata_offset = metadata_plan.write(sink, metadata, &report.block_receipts);
  finalize(sink, allocator, report.tile_table_offset, report.metadata_offset);
  sink.flush();
  report.file_size = allocator.cursor();
  return report;
}

}  // namespace ife
