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

#include "ife/metadata.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_set>

#include "ife/error.hpp"
#include "ife/scalar.hpp"

namespace ife {

Attribute Attribute::ascii(std::string key, std::string value) {
  return Attribute{AttributeKeyFormat::kAscii, std::move(key), std::move(value)};
}

Attribute Attribute::dicom(std::uint16_t group, std::uint16_t element, std::string value) {
  std::string key(4, '\0');
  auto bytes = std::span(reinterpret_cast<std::uint8_t*>(key.data()), 4);
  store(bytes, 0, group);
  store(bytes, 2, element);
  return Attribute{AttributeKeyFormat::kDicomTag, std::move(key), std::move(value)};
}

std::string format_attribute_key(AttributeKeyFormat format, const std::string& key) {
  if (format != AttributeKeyFormat::kDicomTag || key.size() != 4) return key;
  auto bytes = std::span(reinterpret_cast<const std::uint8_t*>(key.data()), 4);
  char text[16];
  std::snprintf(text, sizeof(text), "(%04X,%04X)", unsigned{load<std::uint16_t>(bytes, 0)},
                unsigned{load<std::uint16_t>(bytes, 2)});
  return text;
}

bool is_valid_utf8(std::span<const std::uint8_t> bytes) noexcept {
  std::size_t i = 0;
  while (i < bytes.size()) {
    const std::uint8_t lead = bytes[i];
    std::size_t extra = 0;
    std::uint32_t code = 0;
    std::uint32_t minimum = 0;
    if (lead < 0x80) {
      ++i;
      continue;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      code = lead & 0x1F;
      minimum = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      code = lead & 0x0F;
      minimum = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      code = lead & 0x07;
      minimum = 0x10000;
    } else {
      return false;
    }
    if (bytes.size() - i <= extra) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const std::uint8_t next = bytes[i + k];
      if ((next & 0xC0) != 0x80) return false;
      code = (code << 6) | (next & 0x3F);
    }
    if (code < minimum || code > 0x10FFFF) return false;
    if (code >= 0xD800 && code <= 0xDFFF) return false;
    i += extra + 1;
  }
  return true;
}

void check_metadata(const SlideMetadata& metadata) {
  auto fail = [](const std::string& what) { throw ContractError(what); };

  for (std::size_t i = 0; i < metadata.attributes.size(); ++i) {
    const auto& attribute = metadata.attributes[i];
    const std::string where = "attribute " + std::to_string(i);
    if (!is_known(attribute.key_format)) fail(where + " has an unknown key format");
    if (attribute.key.empty()) fail(where + " has an empty key");
    if (attribute.key.size() > std::numeric_limits<std::uint16_t>::max()) {
      fail(where + " key exceeds 65535 bytes");
    }
    if (attribute.value.size() > std::numeric_limits<std::uint32_t>::max()) {
      fail(where + " value exceeds 4 GiB");
    }
  }

  for (std::size_t i = 0; i < metadata.associated_images.size(); ++i) {
    const auto& image = metadata.associated_images[i];
    const std::string where = "associated image " + std::to_string(i);
    if (!is_known(image.label)) fail(where + " has an unknown label");
    if (!is_known(image.encoding_format) || !is_known(image.pixel_format)) {
      fail(where + " has an unknown encoding or pixel format");
    }
    if (image.width == 0 || image.height == 0) fail(where + " has no pixels");
    if (image.payload.empty()) fail(where + " has an empty payload");
    if (image.payload.size() > std::numeric_limits<std::uint32_t>::max()) {
      fail(where + " payload exceeds 4 GiB");
    }
  }

  std::unordered_set<std::uint32_t> identifiers;
  for (const auto& note : metadata.annotations) {
    const std::string where = "annotation " + std::to_string(note.identifier);
    if (note.identifier == 0) fail("annotation identifiers must be nonzero");
    if (!identifiers.insert(note.identifier).second) {
      fail(where + " is not unique");
    }
    if (!is_known(note.type)) fail(where + " has an unknown type");
    if (note.raster_width == 0 || note.raster_height == 0) {
      fail(where + " has an empty raster size");
    }
    if (!std::isfinite(note.x) || !std::isfinite(note.y) || !std::isfinite(note.width) ||
        !std::isfinite(note.height) || note.width < 0 || note.height < 0) {
      fail(where + " has a non-finite or negative rectangle");
    }
    if (note.payload.size() > std::numeric_limits<std::uint32_t>::max()) {
      fail(where + " payload exceeds 4 GiB");
    }
  }
  for (const auto& note : metadata.annotations) {
    if (note.parent_id != 0 && !identifiers.contains(note.parent_id)) {
      fail("annotation " + std::to_string(note.identifier) + " references missing parent " +
           std::to_string(note.parent_id));
    }
  }

  for (const auto& group : metadata.annotation_groups) {
    if (group.name.empty()) fail("annotation groups need a name");
    for (auto member : group.members) {
      if (!identifiers.contains(member)) {
        fail("annotation group '" + group.name + "' references missing annotation " +
             std::to_string(member));
      }
    }
  }
}

}  // namespace ife
