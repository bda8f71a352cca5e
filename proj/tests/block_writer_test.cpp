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

#include "ife/block_writer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "ife/assembler.hpp"
#include "ife/reader.hpp"
#include "ife/validator.hpp"
#include "support.hpp"

namespace ife {
namespace {

TEST(Allocator, SequentialReservations) {
  ReservationAllocator allocator;
  EXPECT_EQ(allocator.reserve(100), 46u);
  EXPECT_EQ(allocator.reserve(10), 146u);
  EXPECT_EQ(allocator.cursor(), 156u);
  EXPECT_THROW(allocator.reserve(0), ContractError);
}

TEST(Allocator, CapacityIsEnforced) {
  ReservationAllocator allocator(ReservationAllocator::kCapacity - 8);
  EXPECT_THROW(allocator.reserve(16), CapacityError);
}

TEST(Allocator, ConcurrentReservationsAreDisjoint) {
  constexpr int kWorkers = 64;
  constexpr int kEach = 1000;
  ReservationAllocator allocator;
  std::vector<std::vector<Reservation>> got(kWorkers);
  std::vector<std::thread> threads;
  for (int w = 0; w < kWorkers; ++w) {
    threads.emplace_back([&, w] {
      std::mt19937_64 rng(w);
      for (int i = 0; i < kEach; ++i) {
        got[w].push_back(allocator.reserve_range(1 + rng() % 4096));
      }
    });
  }
  for (auto& t : threads) t.join();

  std::vector<Reservation> all;
  std::uint64_t total = 0;
  for (const auto& part : got) {
    all.insert(all.end(), part.begin(), part.end());
    for (const auto& r : part) total += r.size;
  }
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.offset < b.offset; });
  ASSERT_EQ(all.size(), std::size_t{kWorkers} * kEach);
  EXPECT_EQ(all.front().offset, kFileHeaderSize);
  for (std::size_t i = 1; i < all.size(); ++i) {
    ASSERT_EQ(all[i - 1].offset + all[i - 1].size, all[i].offset);
  }
  EXPECT_EQ(allocator.cursor(), kFileHeaderSize + total);
}

TEST(BlockWriter, HeaderBlockTags) {
  MemorySink sink;
  const TileTable fields{100, 200,           EncodingFormat::kJpeg, PixelFormat::kR8G8B8A8,
                         3,   kTileDimension};
  const auto receipt = write_header_block(sink, Reservation{4096, 42}, fields);
  EXPECT_EQ(receipt, (WriteReceipt{4096, 42, BlockType::kTileTable}));
  const auto bytes = sink.bytes();
  EXPECT_EQ(load<std::uint64_t>(bytes, 4096), 4096u);
  EXPECT_EQ(load<std::uint32_t>(bytes, 4096 + 8), 0x49FE0002u);

  auto copy = std::vector<std::uint8_t>(bytes.begin(), bytes.end());
  const auto view = FileView::from_bytes(std::move(copy));
  EXPECT_EQ(read_tile_table(view, 4096).fields(), fields);
  EXPECT_THROW(read_clinical_metadata(view, 4096), BlockError);
}

TEST(BlockWriter, ReservationTooSmall) {
  MemorySink sink;
  EXPECT_THROW(write_header_block(sink, Reservation{100, 41}, TileTable{}), ContractError);
}

TEST(BlockWriter, ArrayBlockSizes) {
  EXPECT_EQ(array_block_size(12, 0), 22u);
  EXPECT_EQ(array_block_size(12, 5), 82u);
  EXPECT_EQ(byte_array_block_size(3), 27u);
  EXPECT_EQ(icc_block_size(3), 25u);

  MemorySink sink;
  const std::vector<TileOffsetEntry> none;
  const auto empty = write_array_block<TileOffsetEntry>(sink, Reservation{46, 22}, none);
  EXPECT_EQ(empty.size, 22u);

  const std::vector<TileOffsetEntry> five(5, TileOffsetEntry{1000, 10});
  const auto receipt = write_array_block<TileOffsetEntry>(sink, Reservation{68, 82}, five);
  EXPECT_EQ(receipt.size, 82u);
  EXPECT_THROW(write_array_block<TileOffsetEntry>(sink, Reservation{200, 82}, 8,
                                                  std::span<const TileOffsetEntry>(five)),
               ContractError);
}

TEST(BlockWriter, InflatedEntrySizeReadsBack) {
  const std::vector<TileOffsetEntry> entries{{100, 1}, TileOffsetEntry::sparse(), {300, 3}};
  MemorySink sink;
  ReservationAllocator allocator;
  const auto at = allocator.reserve_range(array_block_size(16, entries.size()));
  write_array_block<TileOffsetEntry>(sink, at, 16, std::span<const TileOffsetEntry>(entries));
  finalize(sink, allocator, at.offset, 0);
  const auto view = FileView::from_bytes(sink.take());
  const auto array = read_array<TileOffsetEntry>(view, at.offset);
  EXPECT_EQ(array.stride(), 16u);
  EXPECT_EQ(array.to_vector(), entries);
}

TEST(BlockWriter, TilePayloads) {
  MemorySink sink;
  const std::vector<std::uint8_t> payload{0xDE, 0xAD};
  const auto receipt = write_tile_payload(sink, Reservation{500, 2}, payload);
  EXPECT_TRUE(receipt.is_tile());
  EXPECT_EQ(sink.bytes()[500], 0xDE);
  EXPECT_EQ(sink.bytes()[501], 0xAD);
  EXPECT_THROW(write_tile_payload(sink, Reservation{600, 1}, {}), ContractError);
  EXPECT_THROW(write_tile_payload(sink, Reservation{10, 2}, payload), ContractError);
}

TEST(BlockWriter, ShuffledTileOrderWritesSameContent) {
  std::vector<std::vector<std::uint8_t>> tiles;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    tiles.emplace_back(1 + rng() % 300);
    for (auto& b : tiles.back()) b = static_cast<std::uint8_t>(rng());
  }
  auto write = [&](std::vector<int> order) {
    MemorySink sink;
    ReservationAllocator allocator;
    std::vector<Reservation> at(tiles.size());
    for (int i : order) at[i] = allocator.reserve_range(tiles[i].size());
    for (int i : order) write_tile_payload(sink, at[i], tiles[i]);
    std::multiset<std::vector<std::uint8_t>> content;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      const auto bytes = sink.bytes().subspan(at[i].offset, at[i].size);
      EXPECT_TRUE(std::equal(bytes.begin(), bytes.end(), tiles[i].begin(), tiles[i].end()));
      content.emplace(bytes.begin(), bytes.end());
    }
    return std::make_pair(content, allocator.cursor());
  };
  std::vector<int> order(tiles.size());
  for (int i = 0; i < 100; ++i) order[i] = i;
  const auto sequential = write(order);
  std::shuffle(order.begin(), order.end(), rng);
  const auto shuffled = write(order);
  EXPECT_EQ(sequential, shuffled);
}

TEST(BlockWriter, FinalizeIsIdempotentAndValid) {
  auto source = testing::fixture_source();
  const auto& layout = source.layout();
  MemorySink sink;
  ReservationAllocator allocator;
  const auto structure = StructurePlan::reserve(allocator, layout);
  std::vector<TileOffsetEntry> tiles;
  for (std::uint64_t i = 0; i < layout.total_tiles(); ++i) {
    const auto pixels = source.pixels(layout.locate(i));
    const auto at = allocator.reserve_range(pixels.bytes.size());
    write_tile_payload(sink, at, pixels.bytes);
    tiles.push_back(TileOffsetEntry{at.offset, static_cast<std::uint32_t>(at.size)});
  }
  const Offset table =
      structure.write(sink, layout, EncodingFormat::kRawTest, PixelFormat::kR8G8B8, tiles);
  const SlideMetadata metadata = testing::full_metadata();
  const auto plan = MetadataPlan::reserve(allocator, metadata);
  const Offset md = plan.write(sink, metadata);
  finalize(sink, allocator, table, md);
  const std::vector<std::uint8_t> once(sink.bytes().begin(), sink.bytes().end());
  finalize(sink, allocator, table, md);
  const std::vector<std::uint8_t> twice(sink.bytes().begin(), sink.bytes().end());
  EXPECT_EQ(once, twice);
  EXPECT_EQ(load<std::uint64_t>(once, wire::file_header::kFileSize), once.size());

  const auto report = validate(FileView::from_bytes(once));
  EXPECT_EQ(report.error_count(), 0u) << report.to_text();
}

}  // namespace
}  // namespace ife
