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

/// @file encoder.hpp
/// @brief Parallel slide encoder.

#ifndef IFE_ENCODER_HPP
#define IFE_ENCODER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ife/block_writer.hpp"
#include "ife/codec.hpp"
#include "ife/error.hpp"
#include "ife/pyramid.hpp"
#include "ife/sink.hpp"
#include "ife/source.hpp"

namespace ife {

enum class Placement {
  kStructureFirst,  // tile table and its arrays ahead of the tile payloads
  kAllAtEnd,        // every structural block after the tile payloads
};

struct EncodeParams {
  EncodingFormat encoding_format = EncodingFormat::kRawTest;
  int quality = 90;
  unsigned worker_count = 1;
  Placement placement = Placement::kStructureFirst;
  /// When set, workers pull tiles in a seeded random order instead of
  /// global-index order.
  std::optional<std::uint64_t> shuffle_seed;
  /// Codecs to encode with; CodecRegistry::global() when null.
  const CodecRegistry* registry = nullptr;
  std::uint32_t extents_entry_size = LayerExtent::kMinEntrySize;
  std::uint32_t offsets_entry_size = TileOffsetEntry::kMinEntrySize;
};

struct EncodeReport {
  PyramidLayout layout;
  std::uint64_t file_size = 0;
  std::uint64_t tiles_written = 0;
  std::uint64_t sparse_tiles = 0;
  Offset tile_table_offset = 0;
  Offset metadata_offset = 0;
  /// Indexed by global tile index; size 0 for sparse tiles.
  std::vector<WriteReceipt> tile_receipts;
  /// Every structural block except the file header.
  std::vector<WriteReceipt> block_receipts;
};

/// A tile could not be produced or encoded; the encode was abandoned.
class EncodeError : public Error {
 public:
  EncodeError(TileCoord coord, const std::string& what)
      : Error("tile (layer " + std::to_string(coord.layer) + ", x " + std::to_string(coord.x) +
              ", y " + std::to_string(coord.y) + "): " + what),
        coord_(coord) {}

  const TileCoord& coord() const noexcept { return coord_; }

 private:
  TileCoord coord_;
};

/// Pulls every tile from `source`, encodes where needed, and writes a
/// complete file to `sink`. Throws CodecUnavailableError for the reserved
/// IRIS_CODEC format, or when a tile needs encoding and no codec is
/// registered; throws EncodeError for any other per-tile failure.
EncodeReport encode_slide(const SlideSource& source, const EncodeParams& params, Sink& sink);

}  // namespace ife

#endif  // IFE_ENCODER_HPP
