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

/// @file codec.hpp
/// @brief Pixel buffers and the codec registry.

#ifndef IFE_CODEC_HPP
#define IFE_CODEC_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

#include "ife/wire.hpp"

namespace ife {

/// Row-major, tightly packed pixels.
struct PixelBuffer {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  PixelFormat pixel_format = PixelFormat::kR8G8B8;
  std::vector<std::uint8_t> bytes;

  /// Zero-filled buffer of the given shape.
  static PixelBuffer make(std::uint32_t width, std::uint32_t height, PixelFormat format);

  std::uint64_t expected_size() const noexcept {
    return std::uint64_t{width} * height * bytes_per_pixel(pixel_format);
  }
  bool well_formed() const noexcept { return bytes.size() == expected_size(); }

  bool operator==(const PixelBuffer&) const = default;
};

class Codec {
 public:
  virtual ~Codec() = default;

  virtual EncodingFormat format() const noexcept = 0;

  /// `quality` is codec-defined; RAW_TEST ignores it.
  virtual std::vector<std::uint8_t> encode(const PixelBuffer& pixels, int quality) const = 0;

  /// Decodes into `out`, which is resized to width x height of
  /// `pixel_format`. Throws CodecError when the payload is malformed or
  /// does not match the declared shape.
  virtual void decode_into(std::span<const std::uint8_t> payload, std::uint32_t width,
                           std::uint32_t height, PixelFormat pixel_format,
                           PixelBuffer& out) const = 0;

  PixelBuffer decode(std::span<const std::uint8_t> payload, std::uint32_t width,
                     std::uint32_t height, PixelFormat pixel_format) const {
    PixelBuffer out;
    decode_into(payload, width, height, pixel_format, out);
    return out;
  }
};

/// Uncompressed pixels; decode(encode(p)) == p.
class RawTestCodec final : public Codec {
 public:
  EncodingFormat format() const noexcept override { return EncodingFormat::kRawTest; }
  std::vector<std::uint8_t> encode(const PixelBuffer& pixels, int quality) const override;
  void decode_into(std::span<const std::uint8_t> payload, std::uint32_t width, std::uint32_t height,
                   PixelFormat pixel_format, PixelBuffer& out) const override;
};

/// libjpeg baseline codec; alpha is dropped on encode and set to 255 on
/// decode. Null when the library was built without libjpeg.
std::shared_ptr<const Codec> make_jpeg_codec();

/// Thread-safe map from encoding format to codec.
class CodecRegistry {
 public:
  /// RAW_TEST only.
  CodecRegistry();

  /// RAW_TEST plus every codec compiled in.
  static CodecRegistry with_defaults();

  /// Process-wide registry initialised with_defaults().
  static CodecRegistry& global();

  CodecRegistry(const CodecRegistry& other);
  CodecRegistry& operator=(const CodecRegistry& other);

  /// Replaces any codec registered for the same format. IRIS_CODEC is
  /// reserved and rejected with ContractError.
  void add(std::shared_ptr<const Codec> codec);

  /// Null when nothing is registered.
  std::shared_ptr<const Codec> find(EncodingFormat format) const;

  /// Throws CodecUnavailableError when nothing is registered.
  std::shared_ptr<const Codec> require(EncodingFormat format) const;

  bool has(EncodingFormat format) const { return find(format) != nullptr; }
  std::vector<EncodingFormat> formats() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<EncodingFormat, std::shared_ptr<const Codec>> codecs_;
};

}  // namespace ife

#endif  // IFE_CODEC_HPP
