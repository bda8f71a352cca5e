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

#include "ife/source.hpp"

#include <cmath>

#include "ife/error.hpp"

namespace ife {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<LayerExtent> to_extents(const std::vector<LayerSpec>& specs) {
  if (specs.empty()) throw DomainError("a synthetic slide needs a layer");
  std::vector<LayerExtent> extents;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const float scale = specs[i].scale.value_or(std::ldexp(1.0f, static_cast<int>(i)));
    extents.push_back(LayerExtent{specs[i].x_tiles, specs[i].y_tiles, scale});
  }
  return extents;
}

}  // namespace

SyntheticSource::SyntheticSource(std::uint64_t seed, const std::vector<LayerSpec>& layers,
                                 PixelFormat pixel_format)
    : seed_(seed), pixel_format_(pixel_format), layout_(to_extents(layers)) {
  if (!is_known(pixel_format)) throw DomainError("unknown pixel format");
  if (auto problem = layout_.scale_problem(); !problem.empty()) {
    throw DomainError(problem);
  }
}

void SyntheticSource::set_sparse(std::set<std::uint64_t> global_indices) {
  for (auto index : global_indices) {
    if (index >= layout_.total_tiles()) {
      throw DomainError("sparse index " + std::to_string(index) + " is outside the pyramid");
    }
  }
  sparse_ = std::move(global_indices);
}

PixelBuffer SyntheticSource::pixels(const TileCoord& coord) const {
  layout_.global_index(coord);
  auto buffer = PixelBuffer::make(kTileDimension, kTileDimension, pixel_format_);
  std::uint64_t key = splitmix64(seed_);
  key = splitmix64(key ^ coord.layer);
  key = splitmix64(key ^ coord.x);
  key = splitmix64(key ^ coord.y);
  auto& bytes = buffer.bytes;
  const std::size_t words = bytes.size() / 8;
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t value = splitmix64(key + w);
    for (std::size_t b = 0; b < 8; ++b) {
      bytes[w * 8 + b] = static_cast<std::uint8_t>(value >> (8 * b));
    }
  }
  return buffer;
}

TileData SyntheticSource::tile(const TileCoord& coord) const {
  if (sparse_.contains(layout_.global_index(coord))) return SparseTile{};
  return pixels(coord);
}

BoxFilterPyramid::BoxFilterPyramid(std::shared_ptr<const SlideSource> base)
    : base_(std::move(base)) {
  if (!base_ || base_->layout().layer_count() != 1) {
    throw DomainError("the box-filter pyramid needs a single-layer source");
  }
  std::vector<LayerExtent> top_down;
  LayerExtent extent = base_->layout().layer(0);
  top_down.push_back(extent);
  while (extent.x_tiles > 1 || extent.y_tiles > 1) {
    extent.x_tiles = (extent.x_tiles + 1) / 2;
    extent.y_tiles = (extent.y_tiles + 1) / 2;
    top_down.push_back(extent);
  }
  std::vector<LayerExtent> layers(top_down.rbegin(), top_down.rend());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    layers[i].scale = std::ldexp(1.0f, static_cast<int>(i));
  }
  layout_ = PyramidLayout(std::move(layers));
}

TileData BoxFilterPyramid::tile(const TileCoord& coord) const {
  layout_.global_index(coord);
  const std::uint32_t top = layout_.layer_count() - 1;
  if (coord.layer == top) return base_->tile(TileCoord{0, coord.x, coord.y});
  return pixels(coord.layer, coord.x, coord.y);
}

PixelBuffer BoxFilterPyramid::pixels(std::uint32_t layer, std::uint32_t x, std::uint32_t y) const {
  const PixelFormat format = base_->pixel_format();
  const std::uint32_t channels = bytes_per_pixel(format);
  const std::uint32_t top = layout_.layer_count() - 1;
  if (layer == top) {
    auto data = base_->tile(TileCoord{0, x, y});
    if (auto* buffer = std::get_if<PixelBuffer>(&data)) return *buffer;
    if (auto* packed = std::get_if<PrecompressedTile>(&data)) {
      return CodecRegistry::global()
          .require(packed->format)
          ->decode(packed->bytes, kTileDimension, kTileDimension, format);
    }
    return PixelBuffer::make(kTileDimension, kTileDimension, format);
  }

  const auto& child_layer = layout_.layer(layer + 1);
  auto out = PixelBuffer::make(kTileDimension, kTileDimension, format);
  constexpr std::uint32_t kHalf = kTileDimension / 2;
  for (std::uint32_t dy = 0; dy < 2; ++dy) {
    for (std::uint32_t dx = 0; dx < 2; ++dx) {
      const std::uint32_t cx = x * 2 + dx;
      const std::uint32_t cy = y * 2 + dy;
      if (cx >= child_layer.x_tiles || cy >= child_layer.y_tiles) continue;
      const PixelBuffer child = pixels(layer + 1, cx, cy);
      for (std::uint32_t py = 0; py < kHalf; ++py) {
        for (std::uint32_t px = 0; px < kHalf; ++px) {
          const std::size_t target =
              ((dy * kHalf + py) * kTileDimension + dx * kHalf + px) * channels;
          for (std::uint32_t c = 0; c < channels; ++c) {
            unsigned sum = 0;
            for (std::uint32_t sy = 0; sy < 2; ++sy) {
              for (std::uint32_t sx = 0; sx < 2; ++sx) {
                sum += child.bytes[((py * 2 + sy) * kTileDimension + px * 2 + sx) * channels + c];
              }
            }
            out.bytes[target + c] = static_cast<std::uint8_t>((sum + 2) / 4);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace ife
