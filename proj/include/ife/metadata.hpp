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

/// @file metadata.hpp
/// @brief In-memory form of the clinical-metadata subtree, used when
/// writing a file and when salvaging one.

#ifndef IFE_METADATA_HPP
#define IFE_METADATA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ife/wire.hpp"

namespace ife {

struct Attribute {
  AttributeKeyFormat key_format = AttributeKeyFormat::kAscii;
  std::string key;    // ASCII text, or 4 bytes (group, element) little-endian
  std::string value;  // UTF-8 by contract; stored verbatim

  static Attribute ascii(std::string key, std::string value);
  static Attribute dicom(std::uint16_t group, std::uint16_t element, std::string value);

  bool operator==(const Attribute&) const = default;
};

struct AssociatedImage {
  ImageLabel label = ImageLabel::kThumbnail;
  EncodingFormat encoding_format = EncodingFormat::kRawTest;
  PixelFormat pixel_format = PixelFormat::kR8G8B8;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> payload;  // encoded bytes

  bool operator==(const AssociatedImage&) const = default;
};

struct Annotation {
  std::uint32_t identifier = 0;
  AnnotationType type = AnnotationType::kTextUtf8;
  float x = 0.0f;
  float y = 0.0f;
  float width = 0.0f;
  float height = 0.0f;
  std::uint32_t raster_width = 0;
  std::uint32_t raster_height = 0;
  std::vector<std::uint8_t> payload;
  std::uint32_t parent_id = 0;

  bool operator==(const Annotation&) const = default;
};

struct AnnotationGroup {
  std::string name;
  std::vector<std::uint32_t> members;

  bool operator==(const AnnotationGroup&) const = default;
};

struct SlideMetadata {
  std::vector<Attribute> attributes;
  std::vector<AssociatedImage> associated_images;
  std::vector<std::uint8_t> icc_profile;  // empty = no ICC block
  std::vector<Annotation> annotations;
  std::vector<AnnotationGroup> annotation_groups;

  bool operator==(const SlideMetadata&) const = default;
};

/// Renders a DICOM tag key as "(gggg,eeee)"; other keys are returned as-is.
std::string format_attribute_key(AttributeKeyFormat format, const std::string& key);

bool is_valid_utf8(std::span<const std::uint8_t> bytes) noexcept;

/// Throws ContractError describing the first problem that would make the
/// written metadata fail full validation.
void check_metadata(const SlideMetadata& metadata);

}  // namespace ife

#endif  // IFE_METADATA_HPP
