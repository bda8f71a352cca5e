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

#include "ife/wire.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "ife/scalar.hpp"

namespace ife {

namespace {

using Bytes = std::span<std::uint8_t>;
using ConstBytes = std::span<const std::uint8_t>;

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

}  // namespace

bool is_known(BlockType type) noexcept {
  const auto code = static_cast<std::uint16_t>(type);
  return code >= 0x01 && code <= 0x0B;
}

bool is_known(EncodingFormat format) noexcept {
  switch (format) {
    case EncodingFormat::kJpeg:
    case EncodingFormat::kAvif:
    case EncodingFormat::kIrisCodec:
    case EncodingFormat::kRawTest:
      return true;
  }
  return false;
}

bool is_known(PixelFormat format) noexcept {
  return format == PixelFormat::kR8G8B8 || format == PixelFormat::kR8G8B8A8;
}

bool is_known(AttributeKeyFormat format) noexcept {
  return format == AttributeKeyFormat::kDicomTag || format == AttributeKeyFormat::kAscii;
}

bool is_known(ImageLabel label) noexcept {
  const auto code = static_cast<std::uint16_t>(label);
  return code >= 1 && code <= 3;
}

bool is_known(AnnotationType type) noexcept {
  const auto code = static_cast<std::uint16_t>(type);
  return code >= 1 && code <= 4;
}

std::string_view to_string(BlockType type) noexcept {
  switch (type) {
    case BlockType::kFileHeader:
      return "FILE_HEADER";
    case BlockType::kTileTable:
      return "TILE_TABLE";
    case BlockType::kClinicalMetadata:
      return "CLINICAL_METADATA";
    case BlockType::kLayerExtents:
      return "LAYER_EXTENTS";
    case BlockType::kTileOffsets:
      return "TILE_OFFSETS";
    case BlockType::kAttributes:
      return "ATTRIBUTES";
    case BlockType::kAssociatedImages:
      return "ASSOCIATED_IMAGES";
    case BlockType::kIccProfile:
      return "ICC_PROFILE";
    case BlockType::kAnnotations:
      return "ANNOTATIONS";
    case BlockType::kAnnotationGroups:
      return "ANNOTATION_GROUPS";
    case BlockType::kByteArray:
      return "BYTE_ARRAY";
  }
  return "UNKNOWN";
}

std::string_view to_string(EncodingFormat format) noexcept {
  switch (format) {
    case EncodingFormat::kJpeg:
      return "jpeg";
    case EncodingFormat::kAvif:
      return "avif";
    case EncodingFormat::kIrisCodec:
      return "iris-codec";
    case EncodingFormat::kRawTest:
      return "raw-test";
  }
  return "unknown";
}

std::string_view to_string(PixelFormat format) noexcept {
  switch (format) {
    case PixelFormat::kR8G8B8:
      return "r8g8b8";
    case PixelFormat::kR8G8B8A8:
      return "r8g8b8a8";
  }
  return "unknown";
}

std::string_view to_string(ImageLabel label) noexcept {
  switch (label) {
    case ImageLabel::kThumbnail:
      return "thumbnail";
    case ImageLabel::kLabel:
      return "label";
    case ImageLabel::kMacro:
      return "macro";
  }
  return "unknown";
}

std::string_view to_string(AnnotationType type) noexcept {
  switch (type) {
    case AnnotationType::kTextUtf8:
      return "text";
    case AnnotationType::kPng:
      return "png";
    case AnnotationType::kJpeg:
      return "jpeg";
    case AnnotationType::kSvg:
      return "svg";
  }
  return "unknown";
}

std::optional<EncodingFormat> parse_encoding_format(std::string_view name) {
  const std::string key = lowercase(name);
  for (auto format : {EncodingFormat::kJpeg, EncodingFormat::kAvif, EncodingFormat::kIrisCodec,
                      EncodingFormat::kRawTest}) {
    if (key == to_string(format)) return format;
  }
  return std::nullopt;
}

std::optional<PixelFormat> parse_pixel_format(std::string_view name) {
  const std::string key = lowercase(name);
  for (auto format : {PixelFormat::kR8G8B8, PixelFormat::kR8G8B8A8}) {
    if (key == to_string(format)) return format;
  }
  return std::nullopt;
}

std::optional<ImageLabel> parse_image_label(std::string_view name) {
  const std::string key = lowercase(name);
  for (auto label : {ImageLabel::kThumbnail, ImageLabel::kLabel, ImageLabel::kMacro}) {
    if (key == to_string(label)) return label;
  }
  return std::nullopt;
}

std::uint32_t bytes_per_pixel(PixelFormat format) noexcept {
  switch (format) {
    case PixelFormat::kR8G8B8:
      return 3;
    case PixelFormat::kR8G8B8A8:
      return 4;
  }
  return 0;
}

std::uint8_t fixed_size_of(BlockType type) noexcept {
  switch (type) {
    case BlockType::kFileHeader:
      return wire::file_header::kSize;
    case BlockType::kTileTable:
      return wire::tile_table::kSize;
    case BlockType::kClinicalMetadata:
      return wire::clinical_metadata::kSize;
    case BlockType::kLayerExtents:
    case BlockType::kTileOffsets:
    case BlockType::kAttributes:
    case BlockType::kAssociatedImages:
    case BlockType::kAnnotations:
    case BlockType::kAnnotationGroups:
      return wire::array_header::kSize;
    case BlockType::kIccProfile:
      return wire::icc_profile::kSize;
    case BlockType::kByteArray:
      return wire::byte_array::kSize;
  }
  return 0;
}

bool is_array_block(BlockType type) noexcept { return min_entry_size(type) != 0; }

std::uint32_t min_entry_size(BlockType type) noexcept {
  switch (type) {
    case BlockType::kLayerExtents:
      return LayerExtent::kMinEntrySize;
    case BlockType::kTileOffsets:
      return TileOffsetEntry::kMinEntrySize;
    case BlockType::kAttributes:
      return AttributeEntry::kMinEntrySize;
    case BlockType::kAssociatedImages:
      return AssociatedImageEntry::kMinEntrySize;
    case BlockType::kAnnotations:
      return AnnotationEntry::kMinEntrySize;
    case BlockType::kAnnotationGroups:
      return AnnotationGroupEntry::kMinEntrySize;
    default:
      return 0;
  }
}

std::uint32_t make_recovery_tag(BlockType type) noexcept {
  return (std::uint32_t{kRecoveryMagic} << 16) | static_cast<std::uint16_t>(type);
}

std::optional<RecoveryTag> parse_recovery_tag(std::uint32_t tag) noexcept {
  if ((tag >> 16) != kRecoveryMagic) return std::nullopt;
  return RecoveryTag{static_cast<std::uint16_t>(tag & 0xFFFFu)};
}

void encode_prefix(Bytes block, Offset offset, BlockType type, std::uint8_t fixed_size) {
  store<std::uint64_t>(block, wire::kValidationTag, offset);
  store<std::uint32_t>(block, wire::kRecoveryTag, make_recovery_tag(type));
  store<std::uint8_t>(block, wire::kBlockVersionField, kBlockVersion);
  store<std::uint8_t>(block, wire::kFixedSizeField, fixed_size);
}

BlockPrefix decode_prefix(ConstBytes block) {
  return BlockPrefix{
      .validation_tag = load<std::uint64_t>(block, wire::kValidationTag),
      .recovery_tag = load<std::uint32_t>(block, wire::kRecoveryTag),
      .block_version = load<std::uint8_t>(block, wire::kBlockVersionField),
      .fixed_size = load<std::uint8_t>(block, wire::kFixedSizeField),
  };
}

// MARK: header blocks

void FileHeader::encode(Bytes block) const {
  namespace f = wire::file_header;
  store(block, f::kMagic, magic);
  store(block, f::kSpecMajor, spec_major);
  store(block, f::kSpecMinor, spec_minor);
  store(block, f::kFileSize, file_size);
  store(block, f::kTileTableOffset, tile_table_offset);
  store(block, f::kMetadataOffset, metadata_offset);
}

FileHeader FileHeader::decode(ConstBytes block) {
  namespace f = wire::file_header;
  return FileHeader{
      .magic = load<std::uint32_t>(block, f::kMagic),
      .spec_major = load<std::uint16_t>(block, f::kSpecMajor),
      .spec_minor = load<std::uint16_t>(block, f::kSpecMinor),
      .file_size = load<std::uint64_t>(block, f::kFileSize),
      .tile_table_offset = load<std::uint64_t>(block, f::kTileTableOffset),
      .metadata_offset = load<std::uint64_t>(block, f::kMetadataOffset),
  };
}

void TileTable::encode(Bytes block) const {
  namespace f = wire::tile_table;
  store(block, f::kExtentsOffset, extents_offset);
  store(block, f::kOffsetsOffset, offsets_offset);
  store(block, f::kEncodingFormat, static_cast<std::uint16_t>(encoding_format));
  store(block, f::kPixelFormat, static_cast<std::uint16_t>(pixel_format));
  store(block, f::kLayerCount, layer_count);
  store(block, f::kTileDimension, tile_dimension);
}

TileTable TileTable::decode(ConstBytes block) {
  namespace f = wire::tile_table;
  return TileTable{
      .extents_offset = load<std::uint64_t>(block, f::kExtentsOffset),
      .offsets_offset = load<std::uint64_t>(block, f::kOffsetsOffset),
      .encoding_format =
          static_cast<EncodingFormat>(load<std::uint16_t>(block, f::kEncodingFormat)),
      .pixel_format = static_cast<PixelFormat>(load<std::uint16_t>(block, f::kPixelFormat)),
      .layer_count = load<std::uint32_t>(block, f::kLayerCount),
      .tile_dimension = load<std::uint32_t>(block, f::kTileDimension),
  };
}

void ClinicalMetadata::encode(Bytes block) const {
  namespace f = wire::clinical_metadata;
  store(block, f::kAttributes, attributes_offset);
  store(block, f::kAssociatedImages, associated_images_offset);
  store(block, f::kIccProfile, icc_offset);
  store(block, f::kAnnotations, annotations_offset);
  store(block, f::kAnnotationGroups, annotation_groups_offset);
}

ClinicalMetadata ClinicalMetadata::decode(ConstBytes block) {
  namespace f = wire::clinical_metadata;
  return ClinicalMetadata{
      .attributes_offset = load<std::uint64_t>(block, f::kAttributes),
      .associated_images_offset = load<std::uint64_t>(block, f::kAssociatedImages),
      .icc_offset = load<std::uint64_t>(block, f::kIccProfile),
      .annotations_offset = load<std::uint64_t>(block, f::kAnnotations),
      .annotation_groups_offset = load<std::uint64_t>(block, f::kAnnotationGroups),
  };
}

void ArrayHeader::encode(Bytes block) const {
  store(block, wire::array_header::kEntrySize, entry_size);
  store(block, wire::array_header::kEntryCount, entry_count);
}

ArrayHeader ArrayHeader::decode(ConstBytes block) {
  return ArrayHeader{
      .entry_size = load<std::uint32_t>(block, wire::array_header::kEntrySize),
      .entry_count = load<std::uint32_t>(block, wire::array_header::kEntryCount),
  };
}

void ByteArrayHeader::encode(Bytes block) const {
  store(block, wire::byte_array::kPayloadSize, payload_size);
  store(block, wire::byte_array::kContentHint, static_cast<std::uint16_t>(content_hint));
}

ByteArrayHeader ByteArrayHeader::decode(ConstBytes block) {
  return ByteArrayHeader{
      .payload_size = load<std::uint64_t>(block, wire::byte_array::kPayloadSize),
      .content_hint =
          static_cast<BlockType>(load<std::uint16_t>(block, wire::byte_array::kContentHint)),
  };
}

// MARK: array entries

void LayerExtent::encode(Bytes entry) const {
  store(entry, 0, x_tiles);
  store(entry, 4, y_tiles);
  store(entry, 8, scale);
  store<std::uint32_t>(entry, 12, 0);
}

LayerExtent LayerExtent::decode(ConstBytes entry) {
  return LayerExtent{
      .x_tiles = load<std::uint32_t>(entry, 0),
      .y_tiles = load<std::uint32_t>(entry, 4),
      .scale = load<float>(entry, 8),
  };
}

void TileOffsetEntry::encode(Bytes entry) const {
  store(entry, 0, offset);
  store(entry, 8, size);
}

TileOffsetEntry TileOffsetEntry::decode(ConstBytes entry) {
  return TileOffsetEntry{
      .offset = load<std::uint64_t>(entry, 0),
      .size = load<std::uint32_t>(entry, 8),
  };
}

void AttributeEntry::encode(Bytes entry) const {
  store(entry, 0, static_cast<std::uint16_t>(key_format));
  store(entry, 2, key_size);
  store(entry, 4, value_size);
  store(entry, 8, blob_offset);
}

AttributeEntry AttributeEntry::decode(ConstBytes entry) {
  return AttributeEntry{
      .key_format = static_cast<AttributeKeyFormat>(load<std::uint16_t>(entry, 0)),
      .key_size = load<std::uint16_t>(entry, 2),
      .value_size = load<std::uint32_t>(entry, 4),
      .blob_offset = load<std::uint64_t>(entry, 8),
  };
}

void AssociatedImageEntry::encode(Bytes entry) const {
  store(entry, 0, payload_offset);
  store(entry, 8, payload_size);
  store(entry, 12, static_cast<std::uint16_t>(encoding_format));
  store(entry, 14, static_cast<std::uint16_t>(pixel_format));
  store(entry, 16, width);
  store(entry, 20, height);
  store(entry, 24, static_cast<std::uint16_t>(label));
  store<std::uint16_t>(entry, 26, 0);
  store<std::uint32_t>(entry, 28, 0);
}

AssociatedImageEntry AssociatedImageEntry::decode(ConstBytes entry) {
  return AssociatedImageEntry{
      .payload_offset = load<std::uint64_t>(entry, 0),
      .payload_size = load<std::uint32_t>(entry, 8),
      .encoding_format = static_cast<EncodingFormat>(load<std::uint16_t>(entry, 12)),
      .pixel_format = static_cast<PixelFormat>(load<std::uint16_t>(entry, 14)),
      .width = load<std::uint32_t>(entry, 16),
      .height = load<std::uint32_t>(entry, 20),
      .label = static_cast<ImageLabel>(load<std::uint16_t>(entry, 24)),
  };
}

void AnnotationEntry::encode(Bytes entry) const {
  store(entry, 0, identifier);
  store(entry, 4, static_cast<std::uint16_t>(type));
  store<std::uint16_t>(entry, 6, 0);
  store(entry, 8, x);
  store(entry, 12, y);
  store(entry, 16, width);
  store(entry, 20, height);
  store(entry, 24, raster_width);
  store(entry, 28, raster_height);
  store(entry, 32, payload_offset);
  store(entry, 40, payload_size);
  store(entry, 44, parent_id);
}

AnnotationEntry AnnotationEntry::decode(ConstBytes entry) {
  return AnnotationEntry{
      .identifier = load<std::uint32_t>(entry, 0),
      .type = static_cast<AnnotationType>(load<std::uint16_t>(entry, 4)),
      .x = load<float>(entry, 8),
      .y = load<float>(entry, 12),
      .width = load<float>(entry, 16),
      .height = load<float>(entry, 20),
      .raster_width = load<std::uint32_t>(entry, 24),
      .raster_height = load<std::uint32_t>(entry, 28),
      .payload_offset = load<std::uint64_t>(entry, 32),
      .payload_size = load<std::uint32_t>(entry, 40),
      .parent_id = load<std::uint32_t>(entry, 44),
  };
}

void AnnotationGroupEntry::encode(Bytes entry) const {
  store(entry, 0, name_offset);
  store(entry, 8, name_size);
  store(entry, 12, member_count);
  store(entry, 16, members_offset);
}

AnnotationGroupEntry AnnotationGroupEntry::decode(ConstBytes entry) {
  return AnnotationGroupEntry{
      .name_offset = load<std::uint64_t>(entry, 0),
      .name_size = load<std::uint32_t>(entry, 8),
      .member_count = load<std::uint32_t>(entry, 12),
      .members_offset = load<std::uint64_t>(entry, 16),
  };
}

}  // namespace ife
