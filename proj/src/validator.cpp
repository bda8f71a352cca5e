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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include "ife/metadata.hpp"
#include "ife/reader.hpp"

namespace ife {

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::kError ? "ERROR" : "WARNING";
}

std::string_view to_string(ValidationLevel level) noexcept {
  return level == ValidationLevel::kStructure ? "STRUCTURE" : "FULL";
}

std::string_view to_string(FindingCode code) noexcept {
  switch (code) {
    case FindingCode::kBadOffset:
      return "BAD_OFFSET";
    case FindingCode::kOutOfBounds:
      return "OUT_OF_BOUNDS";
    case FindingCode::kBadValidationTag:
      return "BAD_VALIDATION_TAG";
    case FindingCode::kBadRecoveryTag:
      return "BAD_RECOVERY_TAG";
    case FindingCode::kUnknownBlockType:
      return "UNKNOWN_BLOCK_TYPE";
    case FindingCode::kBlockTypeMismatch:
      return "BLOCK_TYPE_MISMATCH";
    case FindingCode::kBadBlockVersion:
      return "BAD_BLOCK_VERSION";
    case FindingCode::kBadFixedSize:
      return "BAD_FIXED_SIZE";
    case FindingCode::kEntryTooSmall:
      return "ENTRY_TOO_SMALL";
    case FindingCode::kPayloadSizeMismatch:
      return "PAYLOAD_SIZE_MISMATCH";
    case FindingCode::kBadMagic:
      return "BAD_MAGIC";
    case FindingCode::kUnsupportedVersion:
      return "UNSUPPORTED_VERSION";
    case FindingCode::kFileSizeMismatch:
      return "FILE_SIZE_MISMATCH";
    case FindingCode::kUnknownEncoding:
      return "UNKNOWN_ENCODING";
    case FindingCode::kUnknownPixelFormat:
      return "UNKNOWN_PIXEL_FORMAT";
    case FindingCode::kBadLayerCount:
      return "BAD_LAYER_COUNT";
    case FindingCode::kBadTileDimension:
      return "BAD_TILE_DIMENSION";
    case FindingCode::kLayerCountMismatch:
      return "LAYER_COUNT_MISMATCH";
    case FindingCode::kBadLayerExtent:
      return "BAD_LAYER_EXTENT";
    case FindingCode::kBadLayerScale:
      return "BAD_LAYER_SCALE";
    case FindingCode::kTileCountMismatch:
      return "TILE_COUNT_MISMATCH";
    case FindingCode::kBadSparseEntry:
      return "BAD_SPARSE_ENTRY";
    case FindingCode::kZeroLengthTile:
      return "ZERO_LENGTH_TILE";
    case FindingCode::kTileOutOfBounds:
      return "TILE_OUT_OF_BOUNDS";
    case FindingCode::kTileOverlapsBlock:
      return "TILE_OVERLAPS_BLOCK";
    case FindingCode::kBadAttribute:
      return "BAD_ATTRIBUTE";
    case FindingCode::kDicomKeySize:
      return "DICOM_KEY_SIZE";
    case FindingCode::kAttributeNotUtf8:
      return "ATTRIBUTE_NOT_UTF8";
    case FindingCode::kAsciiKeyNotAscii:
      return "ASCII_KEY_NOT_ASCII";
    case FindingCode::kBadAssociatedImage:
      return "BAD_ASSOCIATED_IMAGE";
    case FindingCode::kDuplicateImageLabel:
      return "DUPLICATE_IMAGE_LABEL";
    case FindingCode::kBadAnnotation:
      return "BAD_ANNOTATION";
    case FindingCode::kDuplicateAnnotationId:
      return "DUPLICATE_ANNOTATION_ID";
    case FindingCode::kMissingAnnotationParent:
      return "MISSING_ANNOTATION_PARENT";
    case FindingCode::kAnnotationOutOfBounds:
      return "ANNOTATION_OUT_OF_BOUNDS";
    case FindingCode::kBadAnnotationGroup:
      return "BAD_ANNOTATION_GROUP";
    case FindingCode::kMissingGroupMember:
      return "MISSING_GROUP_MEMBER";
  }
  return "UNKNOWN";
}

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(),
                    [](const Finding& f) { return f.severity == Severity::kError; }));
}

std::size_t ValidationReport::warning_count() const noexcept {
  return findings.size() - error_count();
}

const Finding* ValidationReport::first_error() const noexcept {
  for (const auto& finding : findings) {
    if (finding.severity == Severity::kError) return &finding;
  }
  return nullptr;
}

bool ValidationReport::has(FindingCode code) const noexcept {
  return std::any_of(findings.begin(), findings.end(),
                     [code](const Finding& f) { return f.code == code; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& f : findings) {
    out << to_string(f.severity) << ' ' << to_string(f.code) << " @" << f.byte_offset;
    if (f.block_type) out << " [" << to_string(*f.block_type) << ']';
    out << ": " << f.message << '\n';
  }
  return out.str();
}

namespace {

struct Region {
  Offset begin;
  Offset end;
};

class Walker {
 public:
  Walker(const FileView& view, ValidationLevel level)
      : view_(view), file_(view.bytes()), full_(level == ValidationLevel::kFull) {}

  ValidationReport run() {
    walk_header();
    if (full_) check_tiles();
    std::stable_sort(findings_.begin(), findings_.end(), [](const Finding& a, const Finding& b) {
      if (a.byte_offset != b.byte_offset) {
        return a.byte_offset < b.byte_offset;
      }
      return a.code < b.code;
    });
    return ValidationReport{std::move(findings_)};
  }

 private:
  void add(Severity severity, BlockType type, Offset at, FindingCode code, std::string message) {
    findings_.push_back(Finding{severity, type, at, code, std::move(message)});
  }
  void error(BlockType type, Offset at, FindingCode code, std::string message) {
    add(Severity::kError, type, at, code, std::move(message));
  }
  void warning(BlockType type, Offset at, FindingCode code, std::string message) {
    add(Severity::kWarning, type, at, code, std::move(message));
  }

  bool visit(Offset offset, BlockType type) {
    if (auto failure = check_block(file_, offset, type)) {
      findings_.push_back(std::move(*failure));
      return false;
    }
    regions_.push_back({offset, offset + block_length(file_, offset)});
    return true;
  }

  // A zero-length reference needs no block.
  bool visit_payload(Offset block, std::uint64_t size) {
    if (size == 0) return true;
    if (!visit(block, BlockType::kByteArray)) return false;
    const auto stored = read_byte_array(view_, block).payload.size();
    if (stored != size) {
      error(BlockType::kByteArray, block, FindingCode::kPayloadSizeMismatch,
            "byte array holds " + std::to_string(stored) + " bytes, entry expects " +
                std::to_string(size));
      return false;
    }
    return true;
  }

  template <typename Entry>
  static Offset entry_at(const ArrayView<Entry>& array, std::uint32_t index) {
    return array.offset() + fixed_size_of(Entry::kBlockType) +
           std::uint64_t{index} * array.stride();
  }

  void walk_header() {
    if (!visit(0, BlockType::kFileHeader)) return;
    const auto header = read_file_header(view_);
    if (header.spec_major() != kSpecMajor) {
      error(BlockType::kFileHeader, 0, FindingCode::kUnsupportedVersion,
            "file major version " + std::to_string(header.spec_major()) + " is not supported");
      return;
    }
    if (header.file_size() != file_.size()) {
      error(BlockType::kFileHeader, 0, FindingCode::kFileSizeMismatch,
            "header records " + std::to_string(header.file_size()) + " bytes, file has " +
                std::to_string(file_.size()));
    }
    walk_tile_table(header.tile_table_offset());
    if (header.metadata_offset() != 0) walk_metadata(header.metadata_offset());
  }

  void walk_tile_table(Offset offset) {
    constexpr auto kType = BlockType::kTileTable;
    if (!visit(offset, kType)) return;
    const auto table = read_tile_table(view_, offset);
    if (!is_known(table.encoding_format())) {
      error(kType, offset, FindingCode::kUnknownEncoding,
            "unknown encoding format " +
                std::to_string(static_cast<unsigned>(table.encoding_format())));
    }
    if (!is_known(table.pixel_format())) {
      error(kType, offset, FindingCode::kUnknownPixelFormat,
            "unknown pixel format " + std::to_string(static_cast<unsigned>(table.pixel_format())));
    }
    if (table.layer_count() == 0) {
      error(kType, offset, FindingCode::kBadLayerCount, "layer count is zero");
    }
    if (table.tile_dimension() != kTileDimension) {
      error(kType, offset, FindingCode::kBadTileDimension,
            "tile dimension " + std::to_string(table.tile_dimension()) + " is not " +
                std::to_string(kTileDimension));
    }

    if (visit(table.extents_offset(), BlockType::kLayerExtents)) {
      const auto extents = read_array<LayerExtent>(view_, table.extents_offset());
      if (full_) check_extents(extents, table.layer_count());
    }
    if (visit(table.offsets_offset(), BlockType::kTileOffsets)) {
      offsets_ = read_array<TileOffsetEntry>(view_, table.offsets_offset());
    }
  }

  void check_extents(const ArrayView<LayerExtent>& extents, std::uint32_t layer_count) {
    constexpr auto kType = BlockType::kLayerExtents;
    if (extents.count() != layer_count) {
      error(kType, extents.offset(), FindingCode::kLayerCountMismatch,
            "tile table declares " + std::to_string(layer_count) + " layers, extents hold " +
                std::to_string(extents.count()));
    }
    bool usable = extents.count() > 0;
    for (std::uint32_t i = 0; i < extents.count(); ++i) {
      const auto extent = extents.entry(i);
      if (extent.x_tiles == 0 || extent.y_tiles == 0) {
        error(kType, entry_at(extents, i), FindingCode::kBadLayerExtent,
              "layer " + std::to_string(i) + " is " + std::to_string(extent.x_tiles) + "x" +
                  std::to_string(extent.y_tiles) + " tiles");
        usable = false;
      }
    }
    if (!usable) return;
    try {
      PyramidLayout layout(extents.to_vector());
      if (auto problem = layout.scale_problem(); !problem.empty()) {
        error(kType, extents.offset(), FindingCode::kBadLayerScale, problem);
      }
      layout_ = std::move(layout);
    } catch (const DomainError& e) {
      error(kType, extents.offset(), FindingCode::kBadLayerExtent, e.what());
    }
  }

  void check_tiles() {
    if (!offsets_) return;
    constexpr auto kType = BlockType::kTileOffsets;
    const auto& offsets = *offsets_;
    if (layout_ && offsets.count() != layout_->total_tiles()) {
      error(kType, offsets.offset(), FindingCode::kTileCountMismatch,
            "layout has " + std::to_string(layout_->total_tiles()) + " tiles, offsets hold " +
                std::to_string(offsets.count()));
    }

    std::sort(regions_.begin(), regions_.end(),
              [](const Region& a, const Region& b) { return a.begin < b.begin; });
    std::vector<Offset> reach(regions_.size());
    Offset running = 0;
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      running = std::max(running, regions_[i].end);
      reach[i] = running;
    }

    const std::uint64_t size = file_.size();
    for (std::uint32_t i = 0; i < offsets.count(); ++i) {
      const auto entry = offsets.entry(i);
      const Offset at = entry_at(offsets, i);
      const std::string which = "tile " + std::to_string(i);
      if (entry.offset == kSparseTileOffset) {
        if (entry.size != 0) {
          error(kType, at, FindingCode::kBadSparseEntry,
                which + " has the sparse offset but size " + std::to_string(entry.size));
        }
        continue;
      }
      if (entry.size == 0) {
        error(kType, at, FindingCode::kZeroLengthTile, which + " has no bytes");
        continue;
      }
      if (entry.offset < kFileHeaderSize || entry.offset >= size ||
          entry.size > size - entry.offset) {
        error(kType, at, FindingCode::kTileOutOfBounds,
              which + " range [" + std::to_string(entry.offset) + ", +" +
                  std::to_string(entry.size) + ") is outside the file");
        continue;
      }
      const Offset end = entry.offset + entry.size;
      auto next = std::lower_bound(regions_.begin(), regions_.end(), entry.offset,
                                   [](const Region& r, Offset value) { return r.begin < value; });
      const auto index = static_cast<std::size_t>(next - regions_.begin());
      const bool before = index > 0 && reach[index - 1] > entry.offset;
      const bool inside = next != regions_.end() && next->begin < end;
      if (before || inside) {
        warning(kType, at, FindingCode::kTileOverlapsBlock, which + " overlaps a structural block");
      }
    }
  }

  void walk_metadata(Offset offset) {
    if (!visit(offset, BlockType::kClinicalMetadata)) return;
    const auto metadata = read_clinical_metadata(view_, offset);
    if (auto at = metadata.attributes_offset(); at != 0 && visit(at, BlockType::kAttributes)) {
      walk_attributes(read_array<AttributeEntry>(view_, at));
    }
    if (auto at = metadata.associated_images_offset();
        at != 0 && visit(at, BlockType::kAssociatedImages)) {
      walk_images(read_array<AssociatedImageEntry>(view_, at));
    }
    if (auto at = metadata.icc_offset(); at != 0) {
      visit(at, BlockType::kIccProfile);
    }
    if (auto at = metadata.annotations_offset(); at != 0 && visit(at, BlockType::kAnnotations)) {
      walk_annotations(read_array<AnnotationEntry>(view_, at));
    }
    if (auto at = metadata.annotation_groups_offset();
        at != 0 && visit(at, BlockType::kAnnotationGroups)) {
      walk_groups(read_array<AnnotationGroupEntry>(view_, at));
    }
  }

  void walk_attributes(const ArrayView<AttributeEntry>& array) {
    constexpr auto kType = BlockType::kAttributes;
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto entry = array.entry(i);
      const Offset at = entry_at(array, i);
      const std::uint64_t total = std::uint64_t{entry.key_size} + entry.value_size;
      const bool readable = visit_payload(entry.blob_offset, total);
      if (!full_) continue;
      const std::string which = "attribute " + std::to_string(i);
      if (!is_known(entry.key_format)) {
        error(kType, at, FindingCode::kBadAttribute,
              which + " has unknown key format " +
                  std::to_string(static_cast<unsigned>(entry.key_format)));
        continue;
      }
      if (entry.key_size == 0) {
        error(kType, at, FindingCode::kBadAttribute, which + " has an empty key");
        continue;
      }
      if (entry.key_format == AttributeKeyFormat::kDicomTag && entry.key_size != 4) {
        warning(kType, at, FindingCode::kDicomKeySize,
                which + " DICOM key is " + std::to_string(entry.key_size) + " bytes, expected 4");
      }
      if (!readable) continue;
      const auto blob = read_payload(view_, entry.blob_offset, total);
      const auto key = blob.first(entry.key_size);
      if (entry.key_format == AttributeKeyFormat::kAscii &&
          std::any_of(key.begin(), key.end(), [](std::uint8_t c) { return c >= 0x80; })) {
        warning(kType, at, FindingCode::kAsciiKeyNotAscii, which + " key is not ASCII");
      }
      if (!is_valid_utf8(blob.subspan(entry.key_size))) {
        warning(kType, at, FindingCode::kAttributeNotUtf8, which + " value is not valid UTF-8");
      }
    }
  }

  void walk_images(const ArrayView<AssociatedImageEntry>& array) {
    constexpr auto kType = BlockType::kAssociatedImages;
    std::set<ImageLabel> labels;
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto entry = array.entry(i);
      const Offset at = entry_at(array, i);
      visit_payload(entry.payload_offset, entry.payload_size);
      if (!full_) continue;
      const std::string which = "associated image " + std::to_string(i);
      if (!is_known(entry.label)) {
        error(kType, at, FindingCode::kBadAssociatedImage, which + " has an unknown label");
      } else if (!labels.insert(entry.label).second) {
        warning(kType, at, FindingCode::kDuplicateImageLabel,
                which + " repeats label " + std::string(to_string(entry.label)));
      }
      if (!is_known(entry.encoding_format) || !is_known(entry.pixel_format)) {
        error(kType, at, FindingCode::kBadAssociatedImage,
              which + " has an unknown encoding or pixel format");
      }
      if (entry.width == 0 || entry.height == 0) {
        error(kType, at, FindingCode::kBadAssociatedImage, which + " has no pixels");
      }
      if (entry.payload_size == 0) {
        error(kType, at, FindingCode::kBadAssociatedImage, which + " has an empty payload");
      }
    }
  }

  void walk_annotations(const ArrayView<AnnotationEntry>& array) {
    constexpr auto kType = BlockType::kAnnotations;
    std::vector<std::pair<Offset, AnnotationEntry>> entries;
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto entry = array.entry(i);
      const Offset at = entry_at(array, i);
      visit_payload(entry.payload_offset, entry.payload_size);
      if (!full_) continue;
      entries.emplace_back(at, entry);
      const std::string which = "annotation " + std::to_string(entry.identifier);
      if (entry.identifier == 0) {
        error(kType, at, FindingCode::kBadAnnotation,
              "annotation " + std::to_string(i) + " has identifier 0");
      } else if (!annotation_ids_.insert(entry.identifier).second) {
        error(kType, at, FindingCode::kDuplicateAnnotationId, which + " is not unique");
      }
      if (!is_known(entry.type)) {
        error(kType, at, FindingCode::kBadAnnotation, which + " has an unknown type");
      }
      if (entry.raster_width == 0 || entry.raster_height == 0) {
        error(kType, at, FindingCode::kBadAnnotation, which + " has an empty raster size");
      }
      if (!std::isfinite(entry.x) || !std::isfinite(entry.y) || !std::isfinite(entry.width) ||
          !std::isfinite(entry.height) || entry.width < 0 || entry.height < 0) {
        error(kType, at, FindingCode::kBadAnnotation,
              which + " has a non-finite or negative rectangle");
        continue;
      }
      if (layout_) {
        const auto& base = layout_->layer(0);
        const double right = double{entry.x} + entry.width;
        const double bottom = double{entry.y} + entry.height;
        if (entry.x < 0 || entry.y < 0 || right > base.x_tiles || bottom > base.y_tiles) {
          warning(kType, at, FindingCode::kAnnotationOutOfBounds,
                  which + " extends beyond the slide-space range");
        }
      }
    }
    for (const auto& [at, entry] : entries) {
      if (entry.parent_id != 0 && !annotation_ids_.contains(entry.parent_id)) {
        error(kType, at, FindingCode::kMissingAnnotationParent,
              "annotation " + std::to_string(entry.identifier) + " references missing parent " +
                  std::to_string(entry.parent_id));
      }
    }
  }

  void walk_groups(const ArrayView<AnnotationGroupEntry>& array) {
    constexpr auto kType = BlockType::kAnnotationGroups;
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto entry = array.entry(i);
      const Offset at = entry_at(array, i);
      const std::uint64_t members_size = std::uint64_t{entry.member_count} * 4;
      visit_payload(entry.name_offset, entry.name_size);
      const bool members_ok = visit_payload(entry.members_offset, members_size);
      if (!full_) continue;
      const std::string which = "annotation group " + std::to_string(i);
      if (entry.name_size == 0) {
        error(kType, at, FindingCode::kBadAnnotationGroup, which + " has no name");
      }
      if (!members_ok) continue;
      const auto members = read_payload(view_, entry.members_offset, members_size);
      for (std::uint32_t m = 0; m < entry.member_count; ++m) {
        const auto member = load<std::uint32_t>(members, std::size_t{m} * 4);
        if (!annotation_ids_.contains(member)) {
          error(kType, at, FindingCode::kMissingGroupMember,
                which + " references missing annotation " + std::to_string(member));
        }
      }
    }
  }

  const FileView& view_;
  std::span<const std::uint8_t> file_;
  bool full_;
  std::vector<Finding> findings_;
  std::vector<Region> regions_;
  std::optional<ArrayView<TileOffsetEntry>> offsets_;
  std::optional<PyramidLayout> layout_;
  std::unordered_set<std::uint32_t> annotation_ids_;
};

}  // namespace

ValidationReport validate(const FileView& view, ValidationLevel level) {
  return Walker(view, level).run();
}

}  // namespace ife
