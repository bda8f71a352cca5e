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

/// @file pyramid.hpp
/// @brief Global tile indexing over a multi-resolution pyramid.
///
/// Tiles are numbered layer-major starting at layer 0 (lowest resolution),
/// then row-major inside a layer with the upper-left tile first:
///
///     index(layer, x, y) = layer_base[layer] + y * x_tiles[layer] + x
///
/// The TILE_OFFSETS array is stored in exactly this order.

#ifndef IFE_PYRAMID_HPP
#define IFE_PYRAMID_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ife/wire.hpp"

namespace ife {

struct TileCoord {
  std::uint32_t layer = 0;
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  bool operator==(const TileCoord&) const = default;
};

class PyramidLayout {
 public:
  PyramidLayout() = default;

  /// Throws DomainError if any layer has zero tiles along an axis, or if the
  /// tile count overflows 64 bits. Scale ordering is not enforced here; see
  /// scale_problem().
  explicit PyramidLayout(std::vector<LayerExtent> layers);

  std::uint32_t layer_count() const noexcept { return static_cast<std::uint32_t>(layers_.size()); }
  const std::vector<LayerExtent>& layers() const noexcept { return layers_; }
  const LayerExtent& layer(std::uint32_t index) const;
  std::uint64_t layer_base(std::uint32_t index) const;
  std::uint64_t layer_tiles(std::uint32_t index) const;
  std::uint64_t total_tiles() const noexcept { return total_tiles_; }

  /// Throws DomainError when the coordinate is outside the layer extent.
  std::uint64_t global_index(std::uint32_t layer, std::uint32_t x, std::uint32_t y) const;
  std::uint64_t global_index(const TileCoord& coord) const {
    return global_index(coord.layer, coord.x, coord.y);
  }

  /// Inverse of global_index. Throws DomainError for index >= total_tiles().
  TileCoord locate(std::uint64_t index) const;

  /// Empty when layer 0 has scale 1.0 and scales strictly increase with the
  /// layer index; otherwise a description of the first violation.
  std::string scale_problem() const;

  bool operator==(const PyramidLayout& other) const { return layers_ == other.layers_; }

 private:
  std::vector<LayerExtent> layers_;
  std::vector<std::uint64_t> bases_;
  std::uint64_t total_tiles_ = 0;
};

}  // namespace ife

#endif  // IFE_PYRAMID_HPP
