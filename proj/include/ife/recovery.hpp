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

/// @file recovery.hpp
/// @brief Tag scanning, structure rebuilding and salvage of damaged files.
///
/// Recovery never invents tile bytes. Every tile in a salvaged file is a
/// verbatim copy of a byte range of the damaged input; tiles that cannot be
/// read become sparse.

#ifndef IFE_RECOVERY_HPP
#define IFE_RECOVERY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ife/file_view.hpp"
#include "ife/metadata.hpp"
#include "ife/pyramid.hpp"
#include "ife/sink.hpp"
#include "ife/wire.hpp"

namespace ife {

struct CandidateBlock {
  Offset offset = 0;
  BlockType block_type = BlockType::kFileHeader;
  /// 2 for a tag and recovery-magic match, plus one each for a valid block
  /// version, a valid fixed size, and the whole block fitting the file.
  std::uint32_t confidence = 0;

  bool operator==(const CandidateBlock&) const = default;
};

inline constexpr std::uint32_t kMaxConfidence = 5;

/// Every offset p whose u64 reads p and whose recovery tag carries the
/// magic and a known type, in offset order. p == 0 also needs the file
/// magic. `workers` > 1 splits the range across threads.
std::vector<CandidateBlock> scan_candidates(std::span<const std::uint8_t> bytes,
                                            unsigned workers = 1);

struct RecoveredStructure {
  std::uint64_t candidate_count = 0;
  std::vector<CandidateBlock> adopted;
  EncodingFormat encoding_format = EncodingFormat::kRawTest;
  PixelFormat pixel_format = PixelFormat::kR8G8B8;
  PyramidLayout layout;
  std::vector<TileOffsetEntry> tiles;  // global-index order, unverified
  SlideMetadata metadata;
  /// Competing plausible blocks and how each tie was broken.
  std::vector<std::string> conflicts;
  /// Metadata that could not be kept, and guesses that had to be made.
  std::vector<std::string> notes;
};

/// Selects a tile table, its arrays and any metadata from the candidates.
/// Throws UnrecoverableError when no usable LAYER_EXTENTS and TILE_OFFSETS
/// pair survives.
RecoveredStructure rebuild(std::span<const std::uint8_t> bytes,
                           const std::vector<CandidateBlock>& candidates);

struct SalvageReport {
  std::uint64_t candidates_found = 0;
  std::uint64_t blocks_adopted = 0;
  std::uint64_t total_tiles = 0;
  std::uint64_t tiles_salvaged = 0;
  std::uint64_t tiles_lost = 0;
  std::uint64_t tiles_sparse = 0;  // sparse in the damaged input already
  std::uint64_t bytes_recovered = 0;
  std::uint64_t output_size = 0;
  std::vector<std::string> conflicts;
  std::vector<std::string> notes;

  std::string to_text() const;
};

/// Writes a fresh file holding every tile whose byte range lies inside
/// `bytes`. The output passes full validation.
SalvageReport salvage(std::span<const std::uint8_t> bytes, const RecoveredStructure& recovered,
                      Sink& sink, unsigned workers = 1);

}  // namespace ife

#endif  // IFE_RECOVERY_HPP
