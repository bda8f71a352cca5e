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

#include "ife/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ife/error.hpp"

namespace ife {

PyramidLayout::PyramidLayout(std::vector<LayerExtent> layers) : layers_(std::move(layers)) {
  bases_.reserve(layers_.size());
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& extent = layers_[i];
    if (extent.x_tiles == 0 || extent.y_tiles == 0) {
      throw DomainError("layer " + std::to_string(i) + " has an empty extent (" +
                        std::to_string(extent.x_tiles) + "x" + std::to_string(extent.y_tiles) +
                        ")");
    }
    const std::uint64_t count = std::uint64_t{extent.x_tiles} * std::uint64_t{extent.y_tiles};
    if (running > std::numeric_limits<std::uint64_t>::max() - count) {
      throw DomainError("pyramid tile count overflows 64 bits");
    }
    bases_.push_back(running);
    running += count;
  }
  total_tiles_ = running;
}

const LayerExtent& PyramidLayout::layer(std::uint32_t index) const {
  if (index >= layers_.size()) {
    throw DomainError("layer " + std::to_string(index) + " out of range (" +
                      std::to_string(layers_.size()) + " layers)");
  }
  return layers_[index];
}

std::uint64_t PyramidLayout::layer_base(std::uint32_t index) const {
  layer(index);
  return bases_[index];
}

std::uint64_t PyramidLayout::layer_tiles(std::uint32_t index) const {
  const auto& extent = layer(index);
  return std::uint64_t{extent.x_tiles} * extent.y_tiles;
}

std::uint64_t PyramidLayout::global_index(std::uint32_t layer_index, std::uint32_t x,
                                          std::uint32_t y) const {
  const auto& extent = layer(layer_index);
  if (x >= extent.x_tiles || y >= extent.y_tiles) {
    throw DomainError("tile (" + std::to_string(x) + ", " + std::to_string(y) + ") outside layer " +
                      std::to_string(layer_index) + " extent " + std::to_string(extent.x_tiles) +
                      "x" + std::to_string(extent.y_tiles));
  }
  return bases_[layer_index] + std::uint64_t{y} * extent.x_tiles + x;
}

TileCoord PyramidLayout::locate(std::uint64_t index) const {
  if (index >= total_tiles_) {
    throw DomainError("tile index " + std::to_string(index) + " out of range (" +
                      std::to_string(total_tiles_) + " tiles)");
  }
  // Last layer whose base is <= index.
  const auto it = std::upper_bound(bases_.begin(), bases_.end(), index);
  const auto layer_index = static_cast<std::uint32_t>(it - bases_.begin() - 1);
  const std::uint64_t local = index - bases_[layer_index];
  const std::uint32_t width = layers_[layer_index].x_tiles;
  return TileCoord{layer_index, static_cast<std::uint32_t>(local % width),
                   static_cast<std::uint32_t>(local / width)};
}

std::string PyramidLayout::scale_problem() const {
  if (layers_.empty()) return "pyramid has no layers";
  if (layers_[0].scale != 1.0f) {
    return "layer 0 scale is " + std::to_string(layers_[0].scale) + ", expected 1.0";
  }
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    const float previous = layers_[i - 1].scale;
    const float current = layers_[i].scale;
    if (!std::isfinite(current) || !(current > previous)) {
      return "layer " + std::to_string(i) + " scale " + std::to_string(current) +
             " does not exceed layer " + std::to_string(i - 1) + " scale " +
             std::to_string(previous);
    }
  }
  return {};
}

}  // namespace ife
