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

/// @file reader.hpp
/// @brief Zero-copy typed views over individual blocks.
///
/// Every read_* function runs the local checks of the block it reads and
/// throws BlockError naming the failed check. Accessors decode fields
/// straight from the mapped bytes. Views borrow from the FileView they were
/// read from and must not outlive it.

#ifndef IFE_READER_HPP
#define IFE_READER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ife/error.hpp"
#include "ife/file_view.hpp"
#include "ife/pyramid.hpp"
#include "ife/scalar.hpp"
#include "ife/validator.hpp"
#include "ife/wire.hpp"

namespace ife {

class BlockError : public Error {
 public:
  explicit BlockError(Finding finding)
      : Error(std::string(to_string(finding.code)) + " at offset " +
              std::to_string(finding.byte_offset) + ": " + finding.message),
        finding_(std::move(finding)) {}

  FindingCode code() const noexcept { return finding_.code; }
  Offset offset() const noexcept { return finding_.byte_offset; }
  const Finding& finding() const noexcept { return finding_; }

 private:
  Finding finding_;
};

struct FileVersion {
  std::uint16_t major = kSpecMajor;
  std::uint16_t minor = kSpecMinor;
};

/// Version stored in the file header, or the current version when the
/// header is unreadable.
FileVersion file_version(std::span<const std::uint8_t> file) noexcept;

/// Local checks for the block at `offset`: placement, validation tag,
/// recovery tag and type, block version, fixed size, entry stride and the
/// byte range of the whole block. Returns the first failure, or nullopt.
/// The file header (offset 0, `expected` == kFileHeader) additionally
/// checks the magic.
std::optional<Finding> check_block(std::span<const std::uint8_t> file, Offset offset,
                                   BlockType expected);

/// Bytes spanned by a block that passed check_block: the fixed region plus
/// any entries or payload.
std::uint64_t block_length(std::span<const std::uint8_t> file, Offset offset);

class BlockView {
 public:
  BlockView() = default;

  Offset offset() const noexcept { return offset_; }
  BlockType type() const noexcept { return type_; }
  BlockPrefix prefix() const { return decode_prefix(fixed_); }

  /// The stored fixed-field region, prefix included.
  std::span<const std::uint8_t> fixed_region() const noexcept { return fixed_; }

 protected:
  BlockView(Offset offset, BlockType type, std::span<const std::uint8_t> fixed)
      : offset_(offset), type_(type), fixed_(fixed) {}

  template <WireScalar T>
  T field(std::size_t at) const {
    return load<T>(fixed_, at);
  }

 private:
  friend BlockView read_header_block(const FileView&, Offset, BlockType);

  Offset offset_ = 0;
  BlockType type_ = BlockType::kFileHeader;
  std::span<const std::uint8_t> fixed_;
};

/// Reads any block's fixed region after checking it is an `expected` block.
BlockView read_header_block(const FileView& view, Offset offset, BlockType expected);

class FileHeaderView : public BlockView {
 public:
  FileHeaderView() = default;
  explicit FileHeaderView(const BlockView& block) : BlockView(block) {}

  std::uint32_t magic() const { return field<std::uint32_t>(wire::file_header::kMagic); }
  std::uint16_t spec_major() const { return field<std::uint16_t>(wire::file_header::kSpecMajor); }
  std::uint16_t spec_minor() const { return field<std::uint16_t>(wire::file_header::kSpecMinor); }
  std::uint64_t file_size() const { return field<std::uint64_t>(wire::file_header::kFileSize); }
  Offset tile_table_offset() const { return field<Offset>(wire::file_header::kTileTableOffset); }
  Offset metadata_offset() const { return field<Offset>(wire::file_header::kMetadataOffset); }

  FileHeader fields() const { return FileHeader::decode(fixed_region()); }
};

class TileTableView : public BlockView {
 public:
  TileTableView() = default;
  explicit TileTableView(const BlockView& block) : BlockView(block) {}

  Offset extents_offset() const { return field<Offset>(wire::tile_table::kExtentsOffset); }
  Offset offsets_offset() const { return field<Offset>(wire::tile_table::kOffsetsOffset); }
  EncodingFormat encoding_format() const {
    return static_cast<EncodingFormat>(field<std::uint16_t>(wire::tile_table::kEncodingFormat));
  }
  PixelFormat pixel_format() const {
    return static_cast<PixelFormat>(field<std::uint16_t>(wire::tile_table::kPixelFormat));
  }
  std::uint32_t layer_count() const { return field<std::uint32_t>(wire::tile_table::kLayerCount); }
  std::uint32_t tile_dimension() const {
    return field<std::uint32_t>(wire::tile_table::kTileDimension);
  }

  TileTable fields() const { return TileTable::decode(fixed_region()); }
};

class ClinicalMetadataView : public BlockView {
 public:
  ClinicalMetadataView() = default;
  explicit ClinicalMetadataView(const BlockView& block) : BlockView(block) {}

  Offset attributes_offset() const { return field<Offset>(wire::clinical_metadata::kAttributes); }
  Offset associated_images_offset() const {
    return field<Offset>(wire::clinical_metadata::kAssociatedImages);
  }
  Offset icc_offset() const { return field<Offset>(wire::clinical_metadata::kIccProfile); }
  Offset annotations_offset() const { return field<Offset>(wire::clinical_metadata::kAnnotations); }
  Offset annotation_groups_offset() const {
    return field<Offset>(wire::clinical_metadata::kAnnotationGroups);
  }

  ClinicalMetadata fields() const { return ClinicalMetadata::decode(fixed_region()); }
};

FileHeaderView read_file_header(const FileView& view);
TileTableView read_tile_table(const FileView& view, Offset offset);
ClinicalMetadataView read_clinical_metadata(const FileView& view, Offset offset);

template <ArrayEntry Entry>
class ArrayView {
 public:
  ArrayView() = default;
  ArrayView(Offset offset, std::uint32_t stride, std::uint32_t count,
            std::span<const std::uint8_t> entries)
      : offset_(offset), stride_(stride), count_(count), entries_(entries) {}

  Offset offset() const noexcept { return offset_; }
  std::uint32_t stride() const noexcept { return stride_; }
  std::uint32_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  /// Decodes the known prefix of entry `index`; trailing bytes are ignored.
  Entry entry(std::uint32_t index) const {
    if (index >= count_) {
      throw RangeError("entry " + std::to_string(index) + " of a " + std::to_string(count_) +
                       "-entry array");
    }
    return Entry::decode(
        entries_.subspan(static_cast<std::size_t>(index) * stride_, Entry::kMinEntrySize));
  }

  std::vector<Entry> to_vector() const {
    std::vector<Entry> out;
    out.reserve(count_);
    for (std::uint32_t i = 0; i < count_; ++i) out.push_back(entry(i));
    return out;
  }

 private:
  Offset offset_ = 0;
  std::uint32_t stride_ = Entry::kMinEntrySize;
  std::uint32_t count_ = 0;
  std::span<const std::uint8_t> entries_;
};

namespace detail {
struct RawArray {
  std::uint32_t stride;
  std::uint32_t count;
  std::span<const std::uint8_t> entries;
};
RawArray read_raw_array(const FileView& view, Offset offset, BlockType expected);
}  // namespace detail

template <ArrayEntry Entry>
ArrayView<Entry> read_array(const FileView& view, Offset offset) {
  const auto raw = detail::read_raw_array(view, offset, Entry::kBlockType);
  return ArrayView<Entry>(offset, raw.stride, raw.count, raw.entries);
}

struct ByteArrayView {
  Offset offset = 0;
  BlockType content_hint = BlockType::kByteArray;
  std::span<const std::uint8_t> payload;
};

ByteArrayView read_byte_array(const FileView& view, Offset offset);

/// Payload referenced by a metadata entry: `block_offset` must hold a
/// BYTE_ARRAY of exactly `size` bytes. A zero size returns an empty span
/// without touching the file.
std::span<const std::uint8_t> read_payload(const FileView& view, Offset block_offset,
                                           std::uint64_t size);

std::span<const std::uint8_t> read_icc_profile(const FileView& view, Offset offset);

struct TileRange {
  Offset offset = 0;
  std::uint32_t size = 0;

  bool operator==(const TileRange&) const = default;
};

/// nullopt for a sparse tile. Throws DomainError when `index` is outside
/// the layout or the offsets array.
std::optional<TileRange> tile_record(const ArrayView<TileOffsetEntry>& offsets,
                                     const PyramidLayout& layout, std::uint64_t index);

/// Convenience form that follows the header to the tile table first.
std::optional<TileRange> tile_record(const FileView& view, const PyramidLayout& layout,
                                     std::uint64_t index);

/// Header, tile table, layout and tile offsets of a file, read through the
/// offset chain.
struct SlideStructure {
  FileHeaderView header;
  TileTableView tile_table;
  PyramidLayout layout;
  ArrayView<TileOffsetEntry> tile_offsets;
};

/// Throws BlockError on a broken chain and DomainError on an unusable
/// layout.
SlideStructure read_structure(const FileView& view);

}  // namespace ife

#endif  // IFE_READER_HPP
