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

/// @file source.hpp
/// @brief Tile suppliers consumed by encode_slide().

#ifndef IFE_SOURCE_HPP
#define IFE_SOURCE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "ife/codec.hpp"
#include "ife/metadata.hpp"
#include "ife/pyramid.hpp"

namespace ife {

struct SparseTile {
  bool operator==(const SparseTile&) const = default;
};

/// Already-encoded bytes, copied into the file unaltered when the format
/// matches the output encoding.
struct PrecompressedTile {
  EncodingFormat format = EncodingFormat::kRawTest;
  std::vector<std::uint8_t> bytes;

  bool operator==(const PrecompressedTile&) const = default;
};

using TileData = std::variant<SparseTile, PrecompressedTile, PixelBuffer>;

/// tile() may be called concurrently from several encoder workers, and must
/// return the same data for the same coordinate every time.
class SlideSource {
 public:
  virtual ~SlideSource() = default;

  virtual const PyramidLayout& layout() const = 0;
  virtual PixelFormat pixel_format() const = 0;
  virtual TileData tile(const TileCoord& coord) const = 0;
  virtual SlideMetadata metadata() const { return {}; }
};

struct LayerSpec {
  std::uint32_t x_tiles = 1;
  std::uint32_t y_tiles = 1;
  std::optional<float> scale;  // default 2^layer
};

/// Procedural tiles: every byte is a hash of (seed, layer, x, y, position),
/// identical on every host.
class SyntheticSource final : public SlideSource {
 public:
  /// Throws DomainError for an empty spec list, empty layers or a scale
  /// sequence that is not 1.0 then strictly increasing.
  SyntheticSource(std::uint64_t seed, const std::vector<LayerSpec>& layers,
                  PixelFormat pixel_format = PixelFormat::kR8G8B8);

  const PyramidLayout& layout() const override { return layout_; }
  PixelFormat pixel_format() const override { return pixel_format_; }
  TileData tile(const TileCoord& coord) const override;
  SlideMetadata metadata() const override { return metadata_; }

  /// Pixels of a tile regardless of the sparse set.
  PixelBuffer pixels(const TileCoord& coord) const;

  void set_sparse(std::set<std::uint64_t> global_indices);
  void set_metadata(SlideMetadata metadata) { metadata_ = std::move(metadata); }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  PixelFormat pixel_format_;
  PyramidLayout layout_;
  std::set<std::uint64_t> sparse_;
  SlideMetadata metadata_;
};

/// Builds a full pyramid from a single-layer source: the source layer
/// becomes the highest-resolution layer and each lower layer halves the
/// tile grid (rounding up) by averaging 2x2 pixel blocks, down to 1x1.
/// Missing children at grid edges and sparse source tiles count as zero
/// pixels.
class BoxFilterPyramid final : public SlideSource {
 public:
  explicit BoxFilterPyramid(std::shared_ptr<const SlideSource> base);

  const PyramidLayout& layout() const override { return layout_; }
  PixelFormat pixel_format() const override { return base_->pixel_format(); }
  TileData tile(const TileCoord& coord) const override;
  SlideMetadata metadata() const override { return base_->metadata(); }

 private:
  PixelBuffer pixels(std::uint32_t layer, std::uint32_t x, std::uint32_t y) const;

  std::shared_ptr<const SlideSource> base_;
  PyramidLayout layout_;
};

}  // namespace ife

#endif  // IFE_SOURCE_HPP
