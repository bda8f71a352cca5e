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

#include "ife/validator.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <fstream>

#include "ife/reader.hpp"
#include "support.hpp"

namespace ife {
namespace {

using testing::Encoded;

std::vector<Offset> block_offsets(const Encoded& encoded) {
  std::vector<Offset> offsets{0};
  for (const auto& receipt : encoded.report.block_receipts) {
    offsets.push_back(receipt.offset);
  }
  return offsets;
}

Encoded with_metadata(SlideMetadata metadata) {
  auto source = testing::fixture_source();
  source.set_metadata(std::move(metadata));
  return testing::encode(source);
}

TEST(Validator, FreshFileHasNoFindings) {
  const auto plain = validate(testing::fixture().view());
  EXPECT_TRUE(plain.ok());
  EXPECT_TRUE(plain.findings.empty()) << plain.to_text();

  const auto full = validate(with_metadata(testing::full_metadata()).view());
  EXPECT_TRUE(full.findings.empty()) << full.to_text();
}

TEST(Validator, TagFlipGivesExactlyOneFinding) {
  Encoded encoded = testing::fixture();
  const Offset at = encoded.report.tile_table_offset;
  encoded.bytes[at] ^= 0x01;
  const auto report = validate(encoded.view());
  ASSERT_EQ(report.findings.size(), 1u) << report.to_text();
  EXPECT_EQ(report.findings[0].severity, Severity::kError);
  EXPECT_EQ(report.findings[0].code, FindingCode::kBadValidationTag);
  EXPECT_EQ(report.findings[0].byte_offset, at);
  EXPECT_EQ(report.findings[0].block_type, BlockType::kTileTable);
}

TEST(Validator, TileCountMismatch) {
  Encoded encoded = testing::fixture();
  const Offset offsets = read_structure(encoded.view()).tile_offsets.offset();
  store<std::uint32_t>(encoded.bytes, offsets + wire::array_header::kEntryCount, 20);
  EXPECT_TRUE(validate(encoded.view(), ValidationLevel::kStructure).ok());
  const auto report = validate(encoded.view(), ValidationLevel::kFull);
  EXPECT_TRUE(report.has(FindingCode::kTileCountMismatch)) << report.to_text();
}

TEST(Validator, EveryPrefixByteMutationIsAnError) {
  Encoded encoded = with_metadata(testing::full_metadata());
  const auto offsets = block_offsets(encoded);
  std::uint64_t mutants = 0;
  for (const Offset block : offsets) {
    for (std::size_t b = 0; b < wire::kPrefixSize; ++b) {
      const std::uint8_t original = encoded.bytes[block + b];
      for (int v = 0; v < 256; ++v) {
        if (v == original) continue;
        encoded.bytes[block + b] = static_cast<std::uint8_t>(v);
        const auto report = validate(encoded.view(), ValidationLevel::kStructure);
        ASSERT_GT(report.error_count(), 0u) << "block " << block << " byte " << b << " value " << v;
        ++mutants;
      }
      encoded.bytes[block + b] = original;
    }
  }
  EXPECT_EQ(mutants, offsets.size() * wire::kPrefixSize * 255);
}

TEST(Validator, HeaderProblems) {
  Encoded grown = testing::fixture();
  grown.bytes.push_back(0);
  EXPECT_TRUE(validate(grown.view()).has(FindingCode::kFileSizeMismatch));

  Encoded major = testing::fixture();
  store<std::uint16_t>(major.bytes, wire::file_header::kSpecMajor, 2);
  EXPECT_TRUE(validate(major.view()).has(FindingCode::kUnsupportedVersion));

  Encoded minor = testing::fixture();
  store<std::uint16_t>(minor.bytes, wire::file_header::kSpecMinor, 3);
  const auto report = validate(minor.view());
  EXPECT_TRUE(report.ok()) << report.to_text();

  Encoded magic = testing::fixture();
  magic.bytes[wire::file_header::kMagic] = 'X';
  EXPECT_EQ(validate(magic.view()).first_error()->code, FindingCode::kBadMagic);
}

TEST(Validator, TileEntryProblems) {
  Encoded encoded = testing::fixture();
  const auto offsets = read_structure(encoded.view()).tile_offsets;
  const auto entry_at = [&](std::uint32_t i) {
    return offsets.offset() + wire::array_header::kSize + std::size_t{i} * offsets.stride();
  };

  auto zero = encoded;
  store<std::uint32_t>(zero.bytes, entry_at(2) + 8, 0);
  EXPECT_TRUE(validate(zero.view()).has(FindingCode::kZeroLengthTile));

  auto past = encoded;
  store<std::uint64_t>(past.bytes, entry_at(2), past.bytes.size() - 10);
  EXPECT_TRUE(validate(past.view()).has(FindingCode::kTileOutOfBounds));

  auto half_sparse = encoded;
  store<std::uint64_t>(half_sparse.bytes, entry_at(2), kSparseTileOffset);
  EXPECT_TRUE(validate(half_sparse.view()).has(FindingCode::kBadSparseEntry));

  auto overlap = encoded;
  store<std::uint64_t>(overlap.bytes, entry_at(2), encoded.report.tile_table_offset);
  store<std::uint32_t>(overlap.bytes, entry_at(2) + 8, 10);
  const auto report = validate(overlap.view());
  EXPECT_TRUE(report.has(FindingCode::kTileOverlapsBlock));
  EXPECT_TRUE(report.ok()) << "overlap is a warning";
}

TEST(Validator, LayerProblems) {
  Encoded encoded = testing::fixture();
  const auto structure = read_structure(encoded.view());
  const Offset extents = structure.tile_table.extents_offset();
  auto scale = encoded;
  store<float>(scale.bytes, extents + wire::array_header::kSize + 16 + 8, 0.5f);
  EXPECT_TRUE(validate(scale.view()).has(FindingCode::kBadLayerScale));

  auto dims = encoded;
  store<std::uint32_t>(dims.bytes, extents + wire::array_header::kSize, 0);
  EXPECT_TRUE(validate(dims.view()).has(FindingCode::kBadLayerExtent));

  auto count = encoded;
  store<std::uint32_t>(count.bytes,
                       encoded.report.tile_table_offset + wire::tile_table::kLayerCount, 2);
  EXPECT_TRUE(validate(count.view()).has(FindingCode::kLayerCountMismatch));

  auto dim = encoded;
  store<std::uint32_t>(dim.bytes,
                       encoded.report.tile_table_offset + wire::tile_table::kTileDimension, 512);
  EXPECT_TRUE(validate(dim.view()).has(FindingCode::kBadTileDimension));

  auto encoding = encoded;
  store<std::uint16_t>(encoding.bytes,
                       encoded.report.tile_table_offset + wire::tile_table::kEncodingFormat, 77);
  EXPECT_TRUE(validate(encoding.view()).has(FindingCode::kUnknownEncoding));
}

TEST(Validator, MetadataWarnings) {
  SlideMetadata md;
  md.attributes.push_back(Attribute{AttributeKeyFormat::kDicomTag, "abc", "v"});
  md.attributes.push_back(Attribute::ascii("k\xC3\xA9y", "v"));
  md.attributes.push_back(Attribute::ascii("bad", "\xFF\xFE"));
  const AssociatedImage image{
      ImageLabel::kLabel, EncodingFormat::kRawTest, PixelFormat::kR8G8B8, 1, 1, {1, 2, 3}};
  md.associated_images = {image, image};
  md.annotations.push_back(
      Annotation{1, AnnotationType::kTextUtf8, 0.73f, 0.0f, 1.0f, 0.5f, 1, 1, {}, 0});
  const auto report = validate(with_metadata(md).view());
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_TRUE(report.has(FindingCode::kDicomKeySize));
  EXPECT_TRUE(report.has(FindingCode::kAsciiKeyNotAscii));
  EXPECT_TRUE(report.has(FindingCode::kAttributeNotUtf8));
  EXPECT_TRUE(report.has(FindingCode::kDuplicateImageLabel));
  EXPECT_TRUE(report.has(FindingCode::kAnnotationOutOfBounds));
  EXPECT_EQ(report.warning_count(), 5u);
}

TEST(Validator, AnnotationReferenceErrors) {
  Encoded encoded = with_metadata(testing::full_metadata());
  const auto view = encoded.view();
  const auto md = read_clinical_metadata(view, encoded.report.metadata_offset);
  const auto notes = read_array<AnnotationEntry>(view, md.annotations_offset());
  auto entry = notes.entry(1);
  const std::size_t at = notes.offset() + wire::array_header::kSize + notes.stride();

  auto parent = encoded;
  entry.parent_id = 99;
  entry.encode(std::span(parent.bytes).subspan(at, notes.stride()));
  EXPECT_TRUE(validate(parent.view()).has(FindingCode::kMissingAnnotationParent));

  auto duplicate = encoded;
  entry = notes.entry(1);
  entry.identifier = 1;
  entry.parent_id = 0;
  entry.encode(std::span(duplicate.bytes).subspan(at, notes.stride()));
  const auto report = validate(duplicate.view());
  EXPECT_TRUE(report.has(FindingCode::kDuplicateAnnotationId));
  EXPECT_TRUE(report.has(FindingCode::kMissingGroupMember)) << report.to_text();
}

TEST(Validator, FindingsAreSortedAndRendered) {
  Encoded encoded = testing::fixture();
  encoded.bytes[encoded.report.tile_table_offset] ^= 1;
  encoded.bytes.push_back(0);
  const auto report = validate(encoded.view());
  ASSERT_GE(report.findings.size(), 2u);
  for (std::size_t i = 1; i < report.findings.size(); ++i) {
    EXPECT_LE(report.findings[i - 1].byte_offset, report.findings[i].byte_offset);
  }
  EXPECT_NE(report.to_text().find("ERROR BAD_VALIDATION_TAG @"), std::string::npos);
}

TEST(Validator, StructureCostIgnoresFileSize) {
  testing::TempPath path("huge.iris");
  Encoded encoded = testing::fixture();
  const auto offsets = read_structure(encoded.view()).tile_offsets;
  constexpr std::uint64_t kHuge = std::uint64_t{8} << 30;
  const std::size_t last = offsets.offset() + wire::array_header::kSize +
                           std::size_t{offsets.count() - 1} * offsets.stride();
  const auto tile = offsets.entry(offsets.count() - 1);
  store<std::uint64_t>(encoded.bytes, last, kHuge - tile.size);
  store<std::uint64_t>(encoded.bytes, wire::file_header::kFileSize, kHuge);
  {
    std::ofstream out(path.path(), std::ios::binary);
    out.write(reinterpret_cast<const char*>(encoded.bytes.data()),
              static_cast<std::streamsize>(encoded.bytes.size()));
    out.seekp(static_cast<std::streamoff>(kHuge - tile.size));
    out.write(reinterpret_cast<const char*>(encoded.bytes.data() + tile.offset), tile.size);
    if (!out) GTEST_SKIP() << "cannot create a sparse 8 GiB file here";
  }
  const auto view = FileView::open(path.path());
  ASSERT_EQ(view.size(), kHuge);
  const auto start = std::chrono::steady_clock::now();
  const auto structure = validate(view, ValidationLevel::kStructure);
  const auto full = validate(view, ValidationLevel::kFull);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(structure.ok()) << structure.to_text();
  EXPECT_TRUE(full.ok()) << full.to_text();
  EXPECT_LT(seconds, 1.0);
}

}  // namespace
}  // namespace ife
