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

#include "ife/slide.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <thread>

#include "support.hpp"

namespace ife {
namespace {

using testing::Encoded;

Encoded with_metadata(SlideMetadata metadata) {
  auto source = testing::fixture_source();
  source.set_metadata(std::move(metadata));
  return testing::encode(source);
}

TEST(Slide, OpenMatchesEncodeInputs) {
  const Encoded encoded = with_metadata(testing::full_metadata());
  const auto slide = Slide::open(encoded.view());
  EXPECT_EQ(slide.layout().layer_count(), 3u);
  EXPECT_EQ(slide.total_tiles(), 21u);
  EXPECT_EQ(slide.tile_dimension(), kTileDimension);
  EXPECT_EQ(slide.encoding_format(), EncodingFormat::kRawTest);
  ASSERT_EQ(slide.associated_images().size(), 1u);
  EXPECT_EQ(slide.associated_images()[0].label, ImageLabel::kThumbnail);
  ASSERT_EQ(slide.annotations().size(), 2u);
  EXPECT_EQ(slide.annotations()[0].identifier, 1u);
  EXPECT_EQ(slide.annotations()[1].identifier, 2u);
  EXPECT_EQ(slide.read_metadata(), testing::full_metadata());
}

TEST(Slide, NoMetadataGivesEmptyCollections) {
  const auto slide = Slide::open(testing::fixture().view());
  EXPECT_TRUE(slide.read_attributes().empty());
  EXPECT_TRUE(slide.associated_images().empty());
  EXPECT_TRUE(slide.annotations().empty());
  EXPECT_TRUE(slide.annotation_groups().empty());
  EXPECT_TRUE(slide.icc_profile().empty());
  EXPECT_FALSE(slide.has_associated_image(ImageLabel::kThumbnail));
  EXPECT_THROW(slide.read_associated_image(ImageLabel::kThumbnail), NotFoundError);
  EXPECT_THROW(slide.annotation(1), NotFoundError);
}

TEST(Slide, CorruptFileIsRejectedWithReport) {
  Encoded encoded = testing::fixture();
  encoded.bytes[encoded.report.tile_table_offset + 3] ^= 0x40;
  try {
    Slide::open(encoded.view());
    FAIL() << "expected SlideOpenError";
  } catch (const SlideOpenError& e) {
    EXPECT_TRUE(e.report().has(FindingCode::kBadValidationTag));
    EXPECT_NE(std::string(e.what()).find("BAD_VALIDATION_TAG"), std::string::npos);
  }
}

TEST(Slide, TileReads) {
  auto source = testing::fixture_source();
  source.set_sparse({6});
  const Encoded encoded = testing::encode(source);
  const auto slide = Slide::open(encoded.view());
  EXPECT_EQ(slide.sparse_tiles(), 1u);
  EXPECT_FALSE(slide.read_tile(6));
  EXPECT_FALSE(slide.read_tile_compressed(6));
  PixelBuffer out;
  EXPECT_FALSE(slide.read_tile_into(6, out));
  for (std::uint64_t i = 0; i < 21; ++i) {
    if (i == 6) continue;
    const auto expected = source.pixels(slide.layout().locate(i));
    const auto compressed = slide.read_tile_compressed(i);
    ASSERT_TRUE(compressed);
    EXPECT_TRUE(std::equal(compressed->begin(), compressed->end(), expected.bytes.begin(),
                           expected.bytes.end()));
    EXPECT_EQ(*slide.read_tile(i), expected);
  }
  EXPECT_EQ(slide.read_tile_compressed(TileCoord{2, 3, 1})->data(),
            slide.read_tile_compressed(slide.layout().global_index(2, 3, 1))->data());
  EXPECT_THROW(slide.read_tile(21), DomainError);
}

TEST(Slide, ConcurrentReadsMatchSerial) {
  const Encoded encoded = testing::fixture();
  const auto slide = Slide::open(encoded.view());
  std::vector<PixelBuffer> serial;
  for (std::uint64_t i = 0; i < 21; ++i) serial.push_back(*slide.read_tile(i));
  std::vector<int> mismatches(8, 0);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(t);
      PixelBuffer buffer;
      for (int n = 0; n < 200; ++n) {
        const auto index = rng() % 21;
        slide.read_tile_into(index, buffer);
        mismatches[t] += buffer != serial[index];
      }
    });
  }
  for (auto& thread : threads) thread.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}

TEST(Slide, ReservedCodecIsUnavailable) {
  Encoded encoded = testing::fixture();
  store<std::uint16_t>(encoded.bytes,
                       encoded.report.tile_table_offset + wire::tile_table::kEncodingFormat,
                       static_cast<std::uint16_t>(EncodingFormat::kIrisCodec));
  const auto slide = Slide::open(encoded.view());
  EXPECT_TRUE(slide.read_tile_compressed(0));
  EXPECT_THROW(slide.read_tile(0), CodecUnavailableError);
}

TEST(Slide, Attributes) {
  SlideMetadata md;
  md.attributes.push_back(Attribute::ascii("scanner", "Aperio GT 450"));
  md.attributes.push_back(Attribute::dicom(0x0008, 0x0060, "SM"));
  md.attributes.push_back(Attribute{AttributeKeyFormat::kDicomTag, "abcdef", "x"});
  const auto slide = Slide::open(with_metadata(md).view());
  const auto records = slide.read_attributes();
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].key, "scanner");
  EXPECT_EQ(records[0].value, "Aperio GT 450");
  EXPECT_FALSE(records[0].problem);
  EXPECT_EQ(records[1].key, "(0008,0060)");
  EXPECT_EQ(records[1].value, "SM");
  EXPECT_EQ(records[2].problem, FindingCode::kDicomKeySize);
}

TEST(Slide, AssociatedImages) {
  const auto slide = Slide::open(with_metadata(testing::full_metadata()).view());
  const auto image = slide.read_associated_image(ImageLabel::kThumbnail);
  EXPECT_EQ(image.pixels.width, 64u);
  EXPECT_EQ(image.pixels.height, 48u);
  EXPECT_EQ(image.pixels.bytes, testing::full_metadata().associated_images[0].payload);
  EXPECT_THROW(slide.read_associated_image(ImageLabel::kMacro), NotFoundError);
}

TEST(Slide, AnnotationsAndGroups) {
  SlideMetadata md;
  md.annotations.push_back(
      Annotation{10, AnnotationType::kTextUtf8, 0.73f, 0.2f, 1.0f, 0.5f, 8, 8, {'a'}, 0});
  md.annotations.push_back(
      Annotation{11, AnnotationType::kPng, 0.1f, 0.1f, 0.1f, 0.1f, 8, 8, {}, 10});
  md.annotations.push_back(
      Annotation{12, AnnotationType::kSvg, 0.3f, 0.3f, 0.1f, 0.1f, 8, 8, {'s'}, 11});
  md.annotation_groups.push_back(AnnotationGroup{"nested", {12, 10}});
  const auto slide = Slide::open(with_metadata(md).view());

  const auto& first = slide.annotation(10);
  EXPECT_EQ(std::bit_cast<std::uint32_t>(first.x), std::bit_cast<std::uint32_t>(0.73f));
  EXPECT_EQ(std::bit_cast<std::uint32_t>(first.width), std::bit_cast<std::uint32_t>(1.0f));

  std::uint32_t id = 12;
  std::vector<std::uint32_t> chain;
  while (id != 0) {
    chain.push_back(id);
    id = slide.annotation(id).parent_id;
  }
  EXPECT_EQ(chain, (std::vector<std::uint32_t>{12, 11, 10}));

  ASSERT_EQ(slide.annotation_groups().size(), 1u);
  for (auto member : slide.annotation_groups()[0].members) {
    EXPECT_NO_THROW(slide.annotation(member));
  }
  EXPECT_TRUE(slide.read_annotation_payload(11).empty());
  EXPECT_EQ(slide.read_annotation_payload(12).size(), 1u);
}

TEST(SlideSpace, ViewPixels) {
  const auto rect = to_view_pixels(SlideSpaceRect{0, 0, 2, 2}, 256, 1.0);
  EXPECT_EQ(rect.x, 0.0);
  EXPECT_EQ(rect.width, 512.0);
  EXPECT_EQ(rect.height, 512.0);
  const auto half = to_view_pixels(SlideSpaceRect{1, 2, 2, 4}, 256, 0.5);
  EXPECT_EQ(half.x, 128.0);
  EXPECT_EQ(half.y, 256.0);
  EXPECT_EQ(half.width, 256.0);
  EXPECT_EQ(half.height, 512.0);
  const auto at = to_view_pixels(SlideSpaceRect{0.73f, 0, 1.0f, 1}, 256, 1.0);
  EXPECT_NEAR(at.x, 186.88, std::nextafter(186.88f, 1000.0f) - 186.88f);
  EXPECT_THROW(to_view_pixels({}, 256, 0.0), DomainError);
  EXPECT_THROW(to_view_pixels({}, 256, NAN), DomainError);

  const PyramidLayout layout({{2, 2, 1.0f}, {4, 4, 2.0f}});
  const auto extent = slide_space_extent(layout);
  EXPECT_EQ(extent.x, 0.0f);
  EXPECT_EQ(extent.width, 2.0f);
  EXPECT_EQ(extent.height, 2.0f);
}

}  // namespace
}  // namespace ife
