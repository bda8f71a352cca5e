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

/// @file validator.hpp
/// @brief Deep validation of the offset chain.
///
/// validate() walks every block reachable from the file header and reports
/// problems as findings instead of throwing. A block that fails its local
/// checks yields one finding and its children are not visited, so a single
/// damaged prefix produces a single error at the damaged block's offset.

#ifndef IFE_VALIDATOR_HPP
#define IFE_VALIDATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ife/wire.hpp"

namespace ife {

class FileView;

enum class Severity { kError, kWarning };

std::string_view to_string(Severity severity) noexcept;

enum class FindingCode {
  // Local block checks.
  kBadOffset,
  kOutOfBounds,
  kBadValidationTag,
  kBadRecoveryTag,
  kUnknownBlockType,
  kBlockTypeMismatch,
  kBadBlockVersion,
  kBadFixedSize,
  kEntryTooSmall,
  kPayloadSizeMismatch,
  // File header.
  kBadMagic,
  kUnsupportedVersion,
  kFileSizeMismatch,
  // Tile table.
  kUnknownEncoding,
  kUnknownPixelFormat,
  kBadLayerCount,
  kBadTileDimension,
  kLayerCountMismatch,
  kBadLayerExtent,
  kBadLayerScale,
  kTileCountMismatch,
  kBadSparseEntry,
  kZeroLengthTile,
  kTileOutOfBounds,
  kTileOverlapsBlock,
  // Metadata.
  kBadAttribute,
  kDicomKeySize,
  kAttributeNotUtf8,
  kAsciiKeyNotAscii,
  kBadAssociatedImage,
  kDuplicateImageLabel,
  kBadAnnotation,
  kDuplicateAnnotationId,
  kMissingAnnotationParent,
  kAnnotationOutOfBounds,
  kBadAnnotationGroup,
  kMissingGroupMember,
};

/// Upper-snake name, e.g. "BAD_VALIDATION_TAG".
std::string_view to_string(FindingCode code) noexcept;

struct Finding {
  Severity severity = Severity::kError;
  std::optional<BlockType> block_type;
  Offset byte_offset = 0;
  FindingCode code = FindingCode::kBadOffset;
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;  // by byte_offset, then code

  bool ok() const noexcept { return error_count() == 0; }
  std::size_t error_count() const noexcept;
  std::size_t warning_count() const noexcept;
  const Finding* first_error() const noexcept;
  bool has(FindingCode code) const noexcept;

  /// One line per finding.
  std::string to_text() const;

  bool operator==(const ValidationReport&) const = default;
};

enum class ValidationLevel {
  kStructure,  // offset chain, tags, versions, bounds
  kFull,       // adds counts, scales, tile ranges, references, uniqueness
};

std::string_view to_string(ValidationLevel level) noexcept;

/// Never reads tile payload bytes. STRUCTURE cost is proportional to the
/// number of blocks and metadata entries, not to the file size.
ValidationReport validate(const FileView& view, ValidationLevel level = ValidationLevel::kFull);

}  // namespace ife

#endif  // IFE_VALIDATOR_HPP
