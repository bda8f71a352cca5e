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

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>

// clang-format off
#include <jpeglib.h>
// clang-format on

#include "ife/codec.hpp"
#include "ife/error.hpp"

namespace ife {

namespace {

struct ErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void on_error(j_common_ptr info) {
  auto* manager = reinterpret_cast<ErrorManager*>(info->err);
  (*info->err->format_message)(info, manager->message);
  std::longjmp(manager->jump, 1);
}

void on_message(j_common_ptr) {}

class JpegCodec final : public Codec {
 public:
  EncodingFormat format() const noexcept override { return EncodingFormat::kJpeg; }

  std::vector<std::uint8_t> encode(const PixelBuffer& pixels, int quality) const override {
    if (!pixels.well_formed() || pixels.bytes.empty()) {
      throw CodecError("jpeg encode: malformed pixel buffer");
    }
    const std::uint32_t channels = bytes_per_pixel(pixels.pixel_format);
    std::vector<std::uint8_t> row(std::size_t{pixels.width} * 3);

    jpeg_compress_struct info{};
    ErrorManager errors{};
    info.err = jpeg_std_error(&errors.base);
    errors.base.error_exit = on_error;
    errors.base.output_message = on_message;
    unsigned char* buffer = nullptr;
    unsigned long length = 0;
    if (setjmp(errors.jump)) {
      jpeg_destroy_compress(&info);
      std::free(buffer);
      throw CodecError(std::string("jpeg encode: ") + errors.message);
    }
    jpeg_create_compress(&info);
    jpeg_mem_dest(&info, &buffer, &length);
    info.image_width = pixels.width;
    info.image_height = pixels.height;
    info.input_components = 3;
    info.in_color_space = JCS_RGB;
    jpeg_set_defaults(&info);
    jpeg_set_quality(&info, quality < 1 ? 1 : quality > 100 ? 100 : quality, TRUE);
    jpeg_start_compress(&info, TRUE);
    const std::size_t stride = std::size_t{pixels.width} * channels;
    while (info.next_scanline < info.image_height) {
      const std::uint8_t* source = pixels.bytes.data() + info.next_scanline * stride;
      for (std::uint32_t x = 0; x < pixels.width; ++x) {
        row[x * 3 + 0] = source[x * channels + 0];
        row[x * 3 + 1] = source[x * channels + 1];
        row[x * 3 + 2] = source[x * channels + 2];
      }
      JSAMPROW rows[1] = {row.data()};
      jpeg_write_scanlines(&info, rows, 1);
    }
    jpeg_finish_compress(&info);
    jpeg_destroy_compress(&info);
    std::vector<std::uint8_t> out(buffer, buffer + length);
    std::free(buffer);
    return out;
  }

  void decode_into(std::span<const std::uint8_t> payload, std::uint32_t width, std::uint32_t height,
                   PixelFormat pixel_format, PixelBuffer& out) const override {
    const std::uint32_t channels = bytes_per_pixel(pixel_format);
    if (channels == 0) throw CodecError("jpeg decode: unknown pixel format");
    if (payload.empty()) throw CodecError("jpeg decode: empty payload");

    jpeg_decompress_struct info{};
    ErrorManager errors{};
    info.err = jpeg_std_error(&errors.base);
    errors.base.error_exit = on_error;
    errors.base.output_message = on_message;
    std::vector<std::uint8_t> row;
    if (setjmp(errors.jump)) {
      jpeg_destroy_decompress(&info);
      throw CodecError(std::string("jpeg decode: ") + errors.message);
    }
    jpeg_create_decompress(&info);
    jpeg_mem_src(&info, payload.data(), static_cast<unsigned long>(payload.size()));
    jpeg_read_header(&info, TRUE);
    info.out_color_space = JCS_RGB;
    jpeg_start_decompress(&info);
    if (info.output_width != width || info.output_height != height) {
      const std::string shape =
          std::to_string(info.output_width) + "x" + std::to_string(info.output_height);
      jpeg_destroy_decompress(&info);
      throw CodecError("jpeg decode: image is " + shape + ", expected " + std::to_string(width) +
                       "x" + std::to_string(height));
    }
    out.width = width;
    out.height = height;
    out.pixel_format = pixel_format;
    out.bytes.resize(std::size_t{width} * height * channels);
    row.resize(std::size_t{width} * 3);
    while (info.output_scanline < info.output_height) {
      std::uint8_t* target =
          out.bytes.data() + std::size_t{info.output_scanline} * width * channels;
      JSAMPROW rows[1] = {row.data()};
      jpeg_read_scanlines(&info, rows, 1);
      for (std::uint32_t x = 0; x < width; ++x) {
        target[x * channels + 0] = row[x * 3 + 0];
        target[x * channels + 1] = row[x * 3 + 1];
        target[x * channels + 2] = row[x * 3 + 2];
        if (channels == 4) target[x * 4 + 3] = 255;
      }
    }
    jpeg_finish_decompress(&info);
    jpeg_destroy_decompress(&info);
  }
};

}  // namespace

std::shared_ptr<const Codec> make_jpeg_codec() { return std::make_shared<JpegCodec>(); }

}  // namespace ife
