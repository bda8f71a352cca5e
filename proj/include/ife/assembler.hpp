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

/// @file assembler.hpp
/// @brief Reserve-then-write plans for the structural and metadata blocks.
///
/// Block sizes are known as soon as the pyramid layout and the metadata are
/// known, so callers reserve space for them wherever they want the blocks to
/// land (before or after the tile payloads) and write them once the tile
/// offsets are final.

#ifndef IFE_ASSEMBLER_HPP
#define IFE_ASSEMBLER_HPP

#include <span>
#include <vector>

#include "ife/block_writer.hpp"
#include "ife/metadata.hpp"
#include "ife/pyramid.hpp"

namespace ife {

/// TILE_TABLE, LAYER_EXTENTS and TILE_OFFSETS.
class StructurePlan {
 public:
  static StructurePlan reserve(ReservationAllocator& allocator, const PyramidLayout& layout,
                               std::uint32_t extents_entry_size = LayerExtent::kMinEntrySize,
                               std::uint32_t offsets_entry_size = TileOffsetEntry::kMinEntrySize);

  /// `tiles` must hold one entry per tile in global-index order. Returns the
  /// tile-table offset.
  Offset write(Sink& sink, const PyramidLayout& layout, EncodingFormat encoding,
               PixelFormat pixel_format, std::span<const TileOffsetEntry> tiles,
               std::vector<WriteReceipt>* receipts = nullptr) const;

  const Reservation& tile_table() const noexcept { return tile_table_; }
  const Reservation& extents() const noexcept { return extents_; }
  const Reservation& offsets() const noexcept { return offsets_; }

 private:
  Reservation tile_table_;
  Reservation extents_;
  Reservation offsets_;
  std::uint32_t extents_entry_size_ = LayerExtent::kMinEntrySize;
  std::uint32_t offsets_entry_size_ = TileOffsetEntry::kMinEntrySize;
};

/// CLINICAL_METADATA and everything it points at.
class MetadataPlan {
 public:
  /// Runs check_metadata() first.
  static MetadataPlan reserve(ReservationAllocator& allocator, const SlideMetadata& metadata);

  /// `metadata` must be the object passed to reserve(). Returns the
  /// clinical-metadata offset.
  Offset write(Sink& sink, const SlideMetadata& metadata,
               std::vector<WriteReceipt>* receipts = nullptr) const;

 private:
  Reservation metadata_;
  Reservation attributes_;
  Reservation images_;
  Reservation icc_;
  Reservation annotations_;
  Reservation groups_;
  // One BYTE_ARRAY per variable payload; size 0 marks "no payload".
  std::vector<Reservation> attribute_blobs_;
  std::vector<Reservation> image_payloads_;
  std::vector<Reservation> annotation_payloads_;
  std::vector<Reservation> group_names_;
  std::vector<Reservation> group_members_;
};

}  // namespace ife

#endif  // IFE_ASSEMBLER_HPP
