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

/// @file slide.hpp
/// @brief Read access to a validated slide.

#ifndef IFE_SLIDE_HPP
#define IFE_SLIDE_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ife/codec.hpp"
#include "ife/error.hpp"
#include "ife/file_view.hpp"
#include "ife/metadata.hpp"
#include "ife/pyramid.hpp"
#include "ife/reader.hpp"
#include "ife/validator.hpp"

namespace ife {

/// Full validation found errors; the report is attached.
class SlideOpenError : public OpenError {
 public:
  explicit SlideOpenError(ValidationReport report);

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

struct AttributeRecord {
  AttributeKeyFormat key_format = AttributeKeyFormat::kAscii;
  std::string key;      // ASCII text, or "(GGGG,EEEE)" for DICOM tags
  std::string raw_key;  // stored key bytes
  std::string value;    // stored value bytes
  /// Set when the entry breaks a per-entry rule (non-UTF-8 value, DICOM key
  /// not 4 bytes, non-ASCII key). The raw bytes are still returned.
  std::optional<FindingCode> problem;
};

struct AssociatedImageInfo {
  ImageLabel label = ImageLabel::kThumbnail;
  EncodingFormat encoding_format = EncodingFormat::kRawTest;
  PixelFormat pixel_format = PixelFormat::kR8G8B8;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t payload_size = 0;
};

struct AssociatedImageRead {
  AssociatedImageInfo info;
  PixelBuffer pixels;
};

struct AnnotationGroupInfo {
  std::string name;
  std::vector<std::uint32_t> members;
};

/// Immutable, cheap to copy, and safe to share across threads. Metadata
/// entries are decoded when the slide opens; payload bytes stay in the
/// mapped file until requested.
class Slide {
 public:
  /// Validates at FULL level and throws SlideOpenError on any ERROR.
  static Slide open(const std::filesystem::path& path,
                    const CodecRegistry& registry = CodecRegistry::global());
  static Slide open(FileView view, const CodecRegistry& registry = CodecRegistry::global());

  const FileView& view() const noexcept;
  const PyramidLayout& layout() const noexcept;
  EncodingFormat encoding_format() const noexcept;
  PixelFormat pixel_format() const noexcept;
  std::uint32_t tile_dimension() const noexcept;
  std::uint64_t total_tiles() const noexcept;
  std::uint64_t sparse_tiles() const noexcept;
  /// Warnings found while opening.
  const ValidationReport& report() const noexcept;

  /// nullopt for a sparse tile; DomainError for a bad index.
  std::optional<TileRange> tile_range(std::uint64_t index) const;

  /// Verbatim payload bytes inside the mapped file.
  std::optional<std::span<const std::uint8_t>> read_tile_compressed(std::uint64_t index) const;
  std::optional<std::span<const std::uint8_t>> read_tile_compressed(const TileCoord& coord) const {
    return read_tile_compressed(layout().global_index(coord));
  }

  /// Decoded 256x256 tile. Throws CodecUnavailableError when no codec is
  /// registered for the slide's encoding and CodecError naming the tile for
  /// a malformed payload.
  std::optional<PixelBuffer> read_tile(std::uint64_t index) const;
  std::optional<PixelBuffer> read_tile(const TileCoord& coord) const {
    return read_tile(layout().global_index(coord));
  }

  /// Decodes into `out`, reusing its storage. Returns false for a sparse
  /// tile and leaves `out` untouched.
  bool read_tile_into(std::uint64_t index, PixelBuffer& out) const;

  std::vector<AttributeRecord> read_attributes() const;

  const std::vector<AssociatedImageInfo>& associated_images() const noexcept;
  bool has_associated_image(ImageLabel label) const noexcept;
  /// NotFoundError when no image carries `label`; the first one wins when
  /// several do.
  std::span<const std::uint8_t> read_associated_image_compressed(ImageLabel label) const;
  AssociatedImageRead read_associated_image(ImageLabel label) const;

  const std::vector<AnnotationEntry>& annotations() const noexcept;
  /// NotFoundError for an unknown identifier.
  const AnnotationEntry& annotation(std::uint32_t identifier) const;
  std::span<const std::uint8_t> read_annotation_payload(std::uint32_t identifier) const;
  const std::vector<AnnotationGroupInfo>& annotation_groups() const noexcept;

  /// Empty when the slide has no ICC profile.
  std::span<const std::uint8_t> icc_profile() const;

  /// Copies every metadata collection out of the file.
  SlideMetadata read_metadata() const;

 private:
  struct State;
  explicit Slide(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;
};

/// Slide-space rectangle, in fractional layer-0 tiles.
struct SlideSpaceRect {
  float x = 0.0f;
  float y = 0.0f;
  float width = 0.0f;
  float height = 0.0f;
};

struct ViewRect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  bool operator==(const ViewRect&) const = default;
};

/// Multiplies every coordinate by tile_dimension * zoom. Throws DomainError
/// unless zoom is finite and positive.
ViewRect to_view_pixels(const SlideSpaceRect& rect, std::uint32_t tile_dimension, double zoom);

/// Slide-space axis ranges [0, x_tiles] and [0, y_tiles] of layer 0.
SlideSpaceRect slide_space_extent(const PyramidLayout& layout);

}  // namespace ife

#endif  // IFE_SLIDE_HPP
