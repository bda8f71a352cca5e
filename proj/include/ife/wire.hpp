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

/// @file wire.hpp
/// @brief On-disk structures of the Iris File Extension container (v1.0).
///
/// ## Data-blocks
///
/// Every structural element of a file is a data-block at an encoder-chosen
/// byte offset. A block starts with a 14-byte prefix:
///
///     +0   u64  validation tag   == the block's own byte offset
///     +8   u32  recovery tag     == 0x49FE0000 | block type
///     +12  u8   block version
///     +13  u8   fixed size       (bytes of the fixed-field region, prefix
///                                 included)
///
/// Header-blocks are a fixed-field region only. Array-blocks append a u32
/// entry stride and u32 entry count, and their entries follow back to back.
/// Readers consume only the entry prefix they know and advance by the stored
/// stride, which keeps old readers working on files with grown entries.
///
/// ## Offset chain
///
///     FILE_HEADER (at 0)
///       -> TILE_TABLE -> LAYER_EXTENTS, TILE_OFFSETS -> tile payloads
///       -> CLINICAL_METADATA -> ATTRIBUTES, ASSOCIATED_IMAGES, ICC_PROFILE,
///                               ANNOTATIONS, ANNOTATION_GROUPS
///
/// Variable-length metadata (attribute key/value bytes, image and annotation
/// payloads, group names and member lists) is the sole payload of a
/// BYTE_ARRAY block, and entries point at that block. Tile payloads are raw
/// byte ranges without a prefix.
///
/// Offset 0 in an optional-block field means "absent".

#ifndef IFE_WIRE_HPP
#define IFE_WIRE_HPP

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace ife {

using Offset = std::uint64_t;

inline constexpr std::uint32_t kFileMagic = 0x53495249;  // "IRIS"
inline constexpr std::uint16_t kRecoveryMagic = 0x49FE;
inline constexpr std::uint16_t kSpecMajor = 1;
inline constexpr std::uint16_t kSpecMinor = 0;
inline constexpr std::uint8_t kBlockVersion = 1;
inline constexpr std::uint32_t kTileDimension = 256;
inline constexpr Offset kSparseTileOffset = 0xFFFF'FFFF'FFFF'FFFFull;

enum class BlockType : std::uint16_t {
  kFileHeader = 0x01,
  kTileTable = 0x02,
  kClinicalMetadata = 0x03,
  kLayerExtents = 0x04,
  kTileOffsets = 0x05,
  kAttributes = 0x06,
  kAssociatedImages = 0x07,
  kIccProfile = 0x08,
  kAnnotations = 0x09,
  kAnnotationGroups = 0x0A,
  kByteArray = 0x0B,
};

enum class EncodingFormat : std::uint16_t {
  kJpeg = 1,
  kAvif = 2,
  kIrisCodec = 3,  // reserved, never encodable
  kRawTest = 0x7FFF,
};

enum class PixelFormat : std::uint16_t {
  kR8G8B8 = 1,
  kR8G8B8A8 = 2,
};

enum class AttributeKeyFormat : std::uint16_t {
  kDicomTag = 1,
  kAscii = 2,
};

enum class ImageLabel : std::uint16_t {
  kThumbnail = 1,
  kLabel = 2,
  kMacro = 3,
};

enum class AnnotationType : std::uint16_t {
  kTextUtf8 = 1,
  kPng = 2,
  kJpeg = 3,
  kSvg = 4,
};

bool is_known(BlockType type) noexcept;
bool is_known(EncodingFormat format) noexcept;
bool is_known(PixelFormat format) noexcept;
bool is_known(AttributeKeyFormat format) noexcept;
bool is_known(ImageLabel label) noexcept;
bool is_known(AnnotationType type) noexcept;

std::string_view to_string(BlockType type) noexcept;
std::string_view to_string(EncodingFormat format) noexcept;
std::string_view to_string(PixelFormat format) noexcept;
std::string_view to_string(ImageLabel label) noexcept;
std::string_view to_string(AnnotationType type) noexcept;

std::optional<EncodingFormat> parse_encoding_format(std::string_view name);
std::optional<PixelFormat> parse_pixel_format(std::string_view name);
std::optional<ImageLabel> parse_image_label(std::string_view name);

/// 3 for R8G8B8, 4 for R8G8B8A8, 0 for unknown values.
std::uint32_t bytes_per_pixel(PixelFormat format) noexcept;

/// Byte offsets of every fixed field, relative to the start of its block.
namespace wire {

inline constexpr std::size_t kValidationTag = 0;
inline constexpr std::size_t kRecoveryTag = 8;
inline constexpr std::size_t kBlockVersionField = 12;
inline constexpr std::size_t kFixedSizeField = 13;
inline constexpr std::uint8_t kPrefixSize = 14;

namespace file_header {
inline constexpr std::size_t kMagic = 14;
inline constexpr std::size_t kSpecMajor = 18;
inline constexpr std::size_t kSpecMinor = 20;
inline constexpr std::size_t kFileSize = 22;
inline constexpr std::size_t kTileTableOffset = 30;
inline constexpr std::size_t kMetadataOffset = 38;
inline constexpr std::uint8_t kSize = 46;
}  // namespace file_header

namespace tile_table {
inline constexpr std::size_t kExtentsOffset = 14;
inline constexpr std::size_t kOffsetsOffset = 22;
inline constexpr std::size_t kEncodingFormat = 30;
inline constexpr std::size_t kPixelFormat = 32;
inline constexpr std::size_t kLayerCount = 34;
inline constexpr std::size_t kTileDimension = 38;
inline constexpr std::uint8_t kSize = 42;
}  // namespace tile_table

namespace clinical_metadata {
inline constexpr std::size_t kAttributes = 14;
inline constexpr std::size_t kAssociatedImages = 22;
inline constexpr std::size_t kIccProfile = 30;
inline constexpr std::size_t kAnnotations = 38;
inline constexpr std::size_t kAnnotationGroups = 46;
inline constexpr std::uint8_t kSize = 54;
}  // namespace clinical_metadata

namespace array_header {
inline constexpr std::size_t kEntrySize = 14;
inline constexpr std::size_t kEntryCount = 18;
inline constexpr std::uint8_t kSize = 22;
}  // namespace array_header

namespace byte_array {
inline constexpr std::size_t kPayloadSize = 14;
inline constexpr std::size_t kContentHint = 22;
inline constexpr std::uint8_t kSize = 24;
}  // namespace byte_array

namespace icc_profile {
inline constexpr std::size_t kPayloadSize = 14;
inline constexpr std::uint8_t kSize = 22;
}  // namespace icc_profile

}  // namespace wire

inline constexpr Offset kFileHeaderSize = wire::file_header::kSize;

/// Size of the fixed-field region this library writes for `type`.
std::uint8_t fixed_size_of(BlockType type) noexcept;

/// True for blocks whose fixed region ends in an entry stride and count.
bool is_array_block(BlockType type) noexcept;

/// Smallest entry stride a v1.0 reader accepts for an array block type;
/// 0 for non-array types.
std::uint32_t min_entry_size(BlockType type) noexcept;

std::uint32_t make_recovery_tag(BlockType type) noexcept;

struct RecoveryTag {
  std::uint16_t type_code = 0;

  bool known() const noexcept { return is_known(static_cast<BlockType>(type_code)); }
  BlockType type() const noexcept { return static_cast<BlockType>(type_code); }
};

/// Returns nullopt when the high 16 bits are not the recovery magic. A tag
/// with the right magic but an unrecognised type still parses; check
/// `known()`.
std::optional<RecoveryTag> parse_recovery_tag(std::uint32_t tag) noexcept;

struct BlockPrefix {
  Offset validation_tag = 0;
  std::uint32_t recovery_tag = 0;
  std::uint8_t block_version = 0;
  std::uint8_t fixed_size = 0;

  bool operator==(const BlockPrefix&) const = default;
};

/// Writes a prefix claiming `offset` as the block's location.
void encode_prefix(std::span<std::uint8_t> block, Offset offset, BlockType type,
                   std::uint8_t fixed_size);
BlockPrefix decode_prefix(std::span<const std::uint8_t> block);

// Header-block field sets. encode() writes the fields (not the prefix) into a
// buffer that starts at the block's first byte; decode() is the inverse.

struct FileHeader {
  static constexpr BlockType kBlockType = BlockType::kFileHeader;

  std::uint32_t magic = kFileMagic;
  std::uint16_t spec_major = kSpecMajor;
  std::uint16_t spec_minor = kSpecMinor;
  std::uint64_t file_size = 0;
  Offset tile_table_offset = 0;
  Offset metadata_offset = 0;

  void encode(std::span<std::uint8_t> block) const;
  static FileHeader decode(std::span<const std::uint8_t> block);
  bool operator==(const FileHeader&) const = default;
};

struct TileTable {
  static constexpr BlockType kBlockType = BlockType::kTileTable;

  Offset extents_offset = 0;
  Offset offsets_offset = 0;
  EncodingFormat encoding_format = EncodingFormat::kRawTest;
  PixelFormat pixel_format = PixelFormat::kR8G8B8;
  std::uint32_t layer_count = 0;
  std::uint32_t tile_dimension = kTileDimension;

  void encode(std::span<std::uint8_t> block) const;
  static TileTable decode(std::span<const std::uint8_t> block);
  bool operator==(const TileTable&) const = default;
};

struct ClinicalMetadata {
  static constexpr BlockType kBlockType = BlockType::kClinicalMetadata;

  Offset attributes_offset = 0;
  Offset associated_images_offset = 0;
  Offset icc_offset = 0;
  Offset annotations_offset = 0;
  Offset annotation_groups_offset = 0;

  void encode(std::span<std::uint8_t> block) const;
  static ClinicalMetadata decode(std::span<const std::uint8_t> block);
  bool operator==(const ClinicalMetadata&) const = default;
};

struct ArrayHeader {
  std::uint32_t entry_size = 0;
  std::uint32_t entry_count = 0;

  void encode(std::span<std::uint8_t> block) const;
  static ArrayHeader decode(std::span<const std::uint8_t> block);
  bool operator==(const ArrayHeader&) const = default;
};

struct ByteArrayHeader {
  std::uint64_t payload_size = 0;
  BlockType content_hint = BlockType::kByteArray;

  void encode(std::span<std::uint8_t> block) const;
  static ByteArrayHeader decode(std::span<const std::uint8_t> block);
  bool operator==(const ByteArrayHeader&) const = default;
};

// Array entries. encode() writes exactly kMinEntrySize bytes at the start of
// `entry`; decode() reads the same prefix and ignores anything after it.

struct LayerExtent {
  static constexpr BlockType kBlockType = BlockType::kLayerExtents;
  static constexpr std::uint32_t kMinEntrySize = 16;

  std::uint32_t x_tiles = 0;
  std::uint32_t y_tiles = 0;
  float scale = 1.0f;

  void encode(std::span<std::uint8_t> entry) const;
  static LayerExtent decode(std::span<const std::uint8_t> entry);
  bool operator==(const LayerExtent&) const = default;
};

struct TileOffsetEntry {
  static constexpr BlockType kBlockType = BlockType::kTileOffsets;
  static constexpr std::uint32_t kMinEntrySize = 12;

  Offset offset = kSparseTileOffset;
  std::uint32_t size = 0;

  static constexpr TileOffsetEntry sparse() noexcept { return {}; }
  constexpr bool is_sparse() const noexcept { return offset == kSparseTileOffset && size == 0; }

  void encode(std::span<std::uint8_t> entry) const;
  static TileOffsetEntry decode(std::span<const std::uint8_t> entry);
  bool operator==(const TileOffsetEntry&) const = default;
};

struct AttributeEntry {
  static constexpr BlockType kBlockType = BlockType::kAttributes;
  static constexpr std::uint32_t kMinEntrySize = 16;

  AttributeKeyFormat key_format = AttributeKeyFormat::kAscii;
  std::uint16_t key_size = 0;
  std::uint32_t value_size = 0;
  Offset blob_offset = 0;  // BYTE_ARRAY: key bytes, then value bytes

  void encode(std::span<std::uint8_t> entry) const;
  static AttributeEntry decode(std::span<const std::uint8_t> entry);
  bool operator==(const AttributeEntry&) const = default;
};

struct AssociatedImageEntry {
  static constexpr BlockType kBlockType = BlockType::kAssociatedImages;
  static constexpr std::uint32_t kMinEntrySize = 32;

  Offset payload_offset = 0;
  std::uint32_t payload_size = 0;
  EncodingFormat encoding_format = EncodingFormat::kRawTest;
  PixelFormat pixel_format = PixelFormat::kR8G8B8;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  ImageLabel label = ImageLabel::kThumbnail;

  void encode(std::span<std::uint8_t> entry) const;
  static AssociatedImageEntry decode(std::span<const std::uint8_t> entry);
  bool operator==(const AssociatedImageEntry&) const = default;
};

struct AnnotationEntry {
  static constexpr BlockType kBlockType = BlockType::kAnnotations;
  static constexpr std::uint32_t kMinEntrySize = 48;

  std::uint32_t identifier = 0;
  AnnotationType type = AnnotationType::kTextUtf8;
  // Slide space: fractional layer-0 tiles.
  float x = 0.0f;
  float y = 0.0f;
  float width = 0.0f;
  float height = 0.0f;
  std::uint32_t raster_width = 0;
  std::uint32_t raster_height = 0;
  Offset payload_offset = 0;
  std::uint32_t payload_size = 0;
  std::uint32_t parent_id = 0;  // 0 = no parent

  void encode(std::span<std::uint8_t> entry) const;
  static AnnotationEntry decode(std::span<const std::uint8_t> entry);
  bool operator==(const AnnotationEntry&) const = default;
};

struct AnnotationGroupEntry {
  static constexpr BlockType kBlockType = BlockType::kAnnotationGroups;
  static constexpr std::uint32_t kMinEntrySize = 24;

  Offset name_offset = 0;
  std::uint32_t name_size = 0;
  std::uint32_t member_count = 0;
  Offset members_offset = 0;  // BYTE_ARRAY of packed u32 identifiers

  void encode(std::span<std::uint8_t> entry) const;
  static AnnotationGroupEntry decode(std::span<const std::uint8_t> entry);
  bool operator==(const AnnotationGroupEntry&) const = default;
};

template <typename T>
concept ArrayEntry =
    requires(const T& entry, std::span<std::uint8_t> out, std::span<const std::uint8_t> in) {
      { T::kBlockType } -> std::convertible_to<BlockType>;
      { T::kMinEntrySize } -> std::convertible_to<std::uint32_t>;
      entry.encode(out);
      { T::decode(in) } -> std::same_as<T>;
    };

}  // namespace ife

#endif  // IFE_WIRE_HPP
