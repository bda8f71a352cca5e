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

#include "ife/reader.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "ife/block_writer.hpp"
#include "support.hpp"

namespace ife {
namespace {

using testing::Encoded;
using testing::TempPath;

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

/// A standalone LAYER_EXTENTS block at offset 46 with the given stride and
/// padding bytes set to `fill`.
std::vector<std::uint8_t> extents_file(std::uint32_t entry_size, std::uint8_t fill) {
  const std::vector<LayerExtent> layers{{1, 1, 1.0f}, {2, 2, 2.0f}, {4, 4, 4.0f}};
  MemorySink sink;
  ReservationAllocator allocator;
  const auto at = allocator.reserve_range(array_block_size(entry_size, layers.size()));
  write_array_block<LayerExtent>(sink, at, entry_size, std::span<const LayerExtent>(layers));
  finalize(sink, allocator, at.offset, 0);
  auto bytes = sink.take();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::size_t entry = at.offset + wire::array_header::kSize + i * entry_size;
    std::fill(bytes.begin() + entry + LayerExtent::kMinEntrySize,
              bytes.begin() + entry + entry_size, fill);
  }
  return bytes;
}

TEST(FileView, TooShort) {
  TempPath path("short.iris");
  const std::vector<std::uint8_t> bytes(45, 0);
  write_file(path.path(), bytes);
  EXPECT_THROW(FileView::open(path.path()), OpenError);
  EXPECT_THROW(FileView::open("/nonexistent/file.iris"), OpenError);
  EXPECT_THROW(FileView::from_bytes(std::vector<std::uint8_t>(45)), OpenError);
}

TEST(FileView, DiskAndMemoryAgree) {
  const Encoded encoded = testing::fixture();
  TempPath path("fixture.iris");
  write_file(path.path(), encoded.bytes);
  const auto disk = FileView::open(path.path());
  const auto memory = encoded.view();
  EXPECT_EQ(disk.size(), encoded.bytes.size());
  EXPECT_EQ(disk.origin(), path.string());
  const auto a = read_structure(disk);
  const auto b = read_structure(memory);
  EXPECT_EQ(a.header.fields(), b.header.fields());
  EXPECT_EQ(a.tile_table.fields(), b.tile_table.fields());
  EXPECT_EQ(a.layout, b.layout);
  EXPECT_EQ(a.tile_offsets.to_vector(), b.tile_offsets.to_vector());
}

TEST(Reader, TileTableAtTrueOffset) {
  const Encoded encoded = testing::fixture();
  const auto view = encoded.view();
  const Offset at = encoded.report.tile_table_offset;
  const auto table = read_tile_table(view, at);
  EXPECT_EQ(table.encoding_format(), EncodingFormat::kRawTest);
  EXPECT_EQ(table.pixel_format(), PixelFormat::kR8G8B8);
  EXPECT_EQ(table.layer_count(), 3u);
  EXPECT_EQ(table.tile_dimension(), kTileDimension);

  try {
    read_clinical_metadata(view, at);
    FAIL() << "expected a type mismatch";
  } catch (const BlockError& e) {
    EXPECT_EQ(e.code(), FindingCode::kBlockTypeMismatch);
  }
  try {
    read_tile_table(view, at + 1);
    FAIL() << "expected a bad validation tag";
  } catch (const BlockError& e) {
    EXPECT_EQ(e.code(), FindingCode::kBadValidationTag);
    EXPECT_EQ(e.offset(), at + 1);
  }
}

TEST(Reader, CheckBlockOrder) {
  const Encoded encoded = testing::fixture();
  const auto bytes = std::span<const std::uint8_t>(encoded.bytes);
  EXPECT_FALSE(check_block(bytes, 0, BlockType::kFileHeader));
  EXPECT_EQ(check_block(bytes, 10, BlockType::kTileTable)->code, FindingCode::kBadOffset);
  EXPECT_EQ(check_block(bytes, bytes.size() - 4, BlockType::kTileTable)->code,
            FindingCode::kOutOfBounds);
  EXPECT_EQ(block_length(bytes, encoded.report.tile_table_offset), 42u);
}

TEST(Reader, LayerExtentsForwardCompatible) {
  const auto canonical = FileView::from_bytes(extents_file(16, 0));
  const auto inflated = FileView::from_bytes(extents_file(24, 0xA5));
  const auto a = read_array<LayerExtent>(canonical, 46);
  const auto b = read_array<LayerExtent>(inflated, 46);
  EXPECT_EQ(a.count(), 3u);
  EXPECT_EQ(b.stride(), 24u);
  EXPECT_EQ(a.to_vector(), b.to_vector());
  EXPECT_EQ(b.entry(2), (LayerExtent{4, 4, 4.0f}));
  EXPECT_THROW(b.entry(3), RangeError);
}

TEST(Reader, EntrySizeBelowMinimum) {
  auto bytes = extents_file(16, 0);
  store<std::uint32_t>(bytes, 46 + wire::array_header::kEntrySize, 8);
  const auto view = FileView::from_bytes(std::move(bytes));
  try {
    read_array<LayerExtent>(view, 46);
    FAIL() << "expected ENTRY_TOO_SMALL";
  } catch (const BlockError& e) {
    EXPECT_EQ(e.code(), FindingCode::kEntryTooSmall);
  }
}

TEST(Reader, TileRecordsMatchReceipts) {
  auto source = testing::fixture_source();
  source.set_sparse({3, 17});
  const Encoded encoded = testing::encode(source);
  const auto view = encoded.view();
  const auto structure = read_structure(view);
  std::vector<TileRange> ranges;
  for (std::uint64_t i = 0; i < structure.layout.total_tiles(); ++i) {
    const auto record = tile_record(structure.tile_offsets, structure.layout, i);
    if (i == 3 || i == 17) {
      EXPECT_FALSE(record);
      continue;
    }
    ASSERT_TRUE(record);
    EXPECT_EQ(record->offset, encoded.report.tile_receipts[i].offset);
    EXPECT_EQ(record->size, encoded.report.tile_receipts[i].size);
    ranges.push_back(*record);
  }
  EXPECT_THROW(tile_record(view, structure.layout, 21), DomainError);
  std::sort(ranges.begin(), ranges.end(),
            [](const auto& a, const auto& b) { return a.offset < b.offset; });
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    EXPECT_LE(ranges[i - 1].offset + ranges[i - 1].size, ranges[i].offset);
  }
}

TEST(Reader, FileVersion) {
  const Encoded encoded = testing::fixture();
  const auto version = file_version(encoded.bytes);
  EXPECT_EQ(version.major, 1);
  EXPECT_EQ(version.minor, 0);
}

}  // namespace
}  // namespace ife
