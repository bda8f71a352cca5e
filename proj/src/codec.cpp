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

#include "ife/codec.hpp"

#include <cstring>
#include <mutex>
#include <string>

#include "ife/error.hpp"

namespace ife {

PixelBuffer PixelBuffer::make(std::uint32_t width, std::uint32_t height, PixelFormat format) {
  PixelBuffer buffer{width, height, format, {}};
  buffer.bytes.assign(static_cast<std::size_t>(buffer.expected_size()), 0);
  return buffer;
}

std::vector<std::uint8_t> RawTestCodec::encode(const PixelBuffer& pixels, int /*quality*/) const {
  if (!pixels.well_formed() || pixels.bytes.empty()) {
    throw CodecError("raw-test encode: buffer holds " + std::to_string(pixels.bytes.size()) +
                     " bytes, shape needs " + std::to_string(pixels.expected_size()));
  }
  return pixels.bytes;
}

void RawTestCodec::decode_into(std::span<const std::uint8_t> payload, std::uint32_t width,
                               std::uint32_t height, PixelFormat pixel_format,
                               PixelBuffer& out) const {
  const std::uint64_t expected = std::uint64_t{width} * height * bytes_per_pixel(pixel_format);
  if (expected == 0 || payload.size() != expected) {
    throw CodecError("raw-test decode: payload holds " + std::to_string(payload.size()) +
                     " bytes, " + std::to_string(width) + "x" + std::to_string(height) + " " +
                     std::string(to_string(pixel_format)) + " needs " + std::to_string(expected));
  }
  out.width = width;
  out.height = height;
  out.pixel_format = pixel_format;
  out.bytes.resize(payload.size());
  std::memcpy(out.bytes.data(), payload.data(), payload.size());
}

CodecRegistry::CodecRegistry() {
  codecs_[EncodingFormat::kRawTest] = std::make_shared<RawTestCodec>();
}

CodecRegistry CodecRegistry::with_defaults() {
  CodecRegistry registry;
  if (auto jpeg = make_jpeg_codec()) registry.add(std::move(jpeg));
  return registry;
}

CodecRegistry& CodecRegistry::global() {
  static CodecRegistry registry = with_defaults();
  return registry;
}

CodecRegistry::CodecRegistry(const CodecRegistry& other) {
  std::shared_lock lock(other.mutex_);
  codecs_ = other.codecs_;
}

CodecRegistry& CodecRegistry::operator=(const CodecRegistry& other) {
  if (this == &other) return *this;
  std::map<EncodingFormat, std::shared_ptr<const Codec>> copy;
  {
    std::shared_lock lock(other.mutex_);
    copy = other.codecs_;
  }
  std::unique_lock lock(mutex_);
  codecs_ = std::move(copy);
  return *this;
}

void CodecRegistry::add(std::shared_ptr<const Codec> codec) {
  if (!codec) throw ContractError("cannot register a null codec");
  const auto format = codec->format();
  if (format == EncodingFormat::kIrisCodec || !is_known(format)) {
    throw ContractError("encoding format " + std::string(to_string(format)) +
                        " cannot be registered");
  }
  std::unique_lock lock(mutex_);
  codecs_[format] = std::move(codec);
}

std::shared_ptr<const Codec> CodecRegistry::find(EncodingFormat format) const {
  std::shared_lock lock(mutex_);
  const auto it = codecs_.find(format);
  return it == codecs_.end() ? nullptr : it->second;
}

std::shared_ptr<const Codec> CodecRegistry::require(EncodingFormat format) const {
  auto codec = find(format);
  if (!codec) {
    throw CodecUnavailableError("no codec registered for encoding format " +
                                std::string(to_string(format)) +
                                (format == EncodingFormat::kIrisCodec ? " (reserved)" : ""));
  }
  return codec;
}

std::vector<EncodingFormat> CodecRegistry::formats() const {
  std::shared_lock lock(mutex_);
  std::vector<EncodingFormat> out;
  for (const auto& [format, codec] : codecs_) out.push_back(format);
  return out;
}

}  // namespace ife
