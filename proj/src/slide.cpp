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

#include "ife/slide.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ife {

namespace {

std::string describe(const ValidationReport& report) {
  const Finding* first = report.first_error();
  std::string text =
      "slide failed validation with " + std::to_string(report.error_count()) + " error(s)";
  if (first) {
    text += "; first: " + std::string(to_string(first->code)) + " at offset " +
            std::to_string(first->byte_offset) + ": " + first->message;
  }
  return text;
}

std::string as_string(std::span<const std::uint8_t> bytes) {
  return std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

}  // namespace

SlideOpenError::SlideOpenError(ValidationReport report)
    : OpenError(describe(report)), report_(std::move(report)) {}

struct Slide::State {
  explicit State(FileView file) : view(std::move(file)) {}

  FileView view;
  ValidationReport report;
  SlideStructure structure;
  std::shared_ptr<const Codec> codec;
  const CodecRegistry* registry = nullptr;
  std::uint64_t sparse_tiles = 0;

  std::vector<AttributeEntry> attributes;
  std::vector<AssociatedImageEntry> image_entries;
  std::vector<AssociatedImageInfo> images;
  Offset icc_offset = 0;
  std::vector<AnnotationEntry> annotations;
  std::unordered_map<std::uint32_t, std::size_t> annotation_index;
  std::vector<AnnotationGroupInfo> groups;
};

Slide Slide::open(const std::filesystem::path& path, const CodecRegistry& registry) {
  return open(FileView::open(path), registry);
}

Slide Slide::open(FileView view, const CodecRegistry& registry) {
  auto report = validate(view, ValidationLevel::kFull);
  if (!report.ok()) throw SlideOpenError(std::move(report));

  auto state = std::make_shared<State>(view);
  state->report = std::move(report);
  state->structure = read_structure(view);
  state->registry = &registry;
  state->codec = registry.find(state->structure.tile_table.encoding_format());
  const auto& offsets = state->structure.tile_offsets;
  for (std::uint32_t i = 0; i < offsets.count(); ++i) {
    if (offsets.entry(i).is_sparse()) ++state->sparse_tiles;
  }

  const Offset metadata_offset = state->structure.header.metadata_offset();
  if (metadata_offset != 0) {
    const auto metadata = read_clinical_metadata(view, metadata_offset);
    if (auto at = metadata.attributes_offset()) {
      state->attributes = read_array<AttributeEntry>(view, at).to_vector();
    }
    if (auto at = metadata.associated_images_offset()) {
      state->image_entries = read_array<AssociatedImageEntry>(view, at).to_vector();
      for (const auto& entry : state->image_entries) {
        state->images.push_back(AssociatedImageInfo{entry.label, entry.encoding_format,
                                                    entry.pixel_format, entry.width, entry.height,
                                                    entry.payload_size});
      }
    }
    state->icc_offset = metadata.icc_offset();
    if (auto at = metadata.annotations_offset()) {
      state->annotations = read_array<AnnotationEntry>(view, at).to_vector();
      for (std::size_t i = 0; i < state->annotations.size(); ++i) {
        state->annotation_index.emplace(state->annotations[i].identifier, i);
      }
    }
    if (auto at = metadata.annotation_groups_offset()) {
      for (const auto& entry : read_array<AnnotationGroupEntry>(view, at).to_vector()) {
        AnnotationGroupInfo group;
        group.name = as_string(read_payload(view, entry.name_offset, entry.name_size));
        const auto members =
            read_payload(view, entry.members_offset, std::uint64_t{entry.member_count} * 4);
        for (std::uint32_t m = 0; m < entry.member_count; ++m) {
          group.members.push_back(load<std::uint32_t>(members, std::size_t{m} * 4));
        }
        state->groups.push_back(std::move(group));
      }
    }
  }
  return Slide(std::move(state));
}

const FileView& Slide::view() const noexcept { return state_->view; }
const PyramidLayout& Slide::layout() const noexcept { return state_->structure.layout; }
EncodingFormat Slide::encoding_format() const noexcept {
  return state_->structure.tile_table.encoding_format();
}
PixelFormat Slide::pixel_format() const noexcept {
  return state_->structure.tile_table.pixel_format();
}
std::uint32_t Slide::tile_dimension() const noexcept {
  return state_->structure.tile_table.tile_dimension();
}
std::uint64_t Slide::total_tiles() const noexcept { return state_->structure.layout.total_tiles(); }
std::uint64_t Slide::sparse_tiles() const noexcept { return state_->sparse_tiles; }
const ValidationReport& Slide::report() const noexcept { return state_->report; }

std::optional<TileRange> Slide::tile_range(std::uint64_t index) const {
  return tile_record(state_->structure.tile_offsets, state_->structure.layout, index);
}

std::optional<std::span<const std::uint8_t>> Slide::read_tile_compressed(
    std::uint64_t index) const {
  const auto range = tile_range(index);
  if (!range) return std::nullopt;
  return state_->view.bytes().subspan(range->offset, range->size);
}

bool Slide::read_tile_into(std::uint64_t index, PixelBuffer& out) const {
  const auto bytes = read_tile_compressed(index);
  if (!bytes) return false;
  if (!state_->codec) state_->registry->require(encoding_format());
  try {
    state_->codec->decode_into(*bytes, tile_dimension(), tile_dimension(), pixel_format(), out);
  } catch (const CodecUnavailableError&) {
    throw;
  } catch (const CodecError& e) {
    throw CodecError("tile " + std::to_string(index) + ": " + e.what());
  }
  return true;
}

std::optional<PixelBuffer> Slide::read_tile(std::uint64_t index) const {
  PixelBuffer out;
  if (!read_tile_into(index, out)) return std::nullopt;
  return out;
}

std::vector<AttributeRecord> Slide::read_attributes() const {
  std::vector<AttributeRecord> records;
  for (const auto& entry : state_->attributes) {
    const auto blob = read_payload(state_->view, entry.blob_offset,
                                   std::uint64_t{entry.key_size} + entry.value_size);
    AttributeRecord record;
    record.key_format = entry.key_format;
    record.raw_key = as_string(blob.first(entry.key_size));
    record.value = as_string(blob.subspan(entry.key_size));
    record.key = format_attribute_key(entry.key_format, record.raw_key);
    if (entry.key_format == AttributeKeyFormat::kDicomTag && entry.key_size != 4) {
      record.problem = FindingCode::kDicomKeySize;
    } else if (entry.key_format == AttributeKeyFormat::kAscii &&
               std::any_of(record.raw_key.begin(), record.raw_key.end(),
                           [](char c) { return static_cast<unsigned char>(c) >= 0x80; })) {
      record.problem = FindingCode::kAsciiKeyNotAscii;
    } else if (!is_valid_utf8(blob.subspan(entry.key_size))) {
      record.problem = FindingCode::kAttributeNotUtf8;
    }
    records.push_back(std::move(record));
  }
  return records;
}

const std::vector<AssociatedImageInfo>& Slide::associated_images() const noexcept {
  return state_->images;
}

bool Slide::has_associated_image(ImageLabel label) const noexcept {
  return std::any_of(state_->images.begin(), state_->images.end(),
                     [label](const auto& image) { return image.label == label; });
}

std::span<const std::uint8_t> Slide::read_associated_image_compressed(ImageLabel label) const {
  for (const auto& entry : state_->image_entries) {
    if (entry.label == label) {
      return read_payload(state_->view, entry.payload_offset, entry.payload_size);
    }
  }
  throw NotFoundError("no associated image labelled " + std::string(to_string(label)));
}

AssociatedImageRead Slide::read_associated_image(ImageLabel label) const {
  const auto bytes = read_associated_image_compressed(label);
  const auto it = std::find_if(state_->images.begin(), state_->images.end(),
                               [label](const auto& image) { return image.label == label; });
  const AssociatedImageInfo& info = *it;
  const auto codec = state_->registry->require(info.encoding_format);
  return AssociatedImageRead{info,
                             codec->decode(bytes, info.width, info.height, info.pixel_format)};
}

const std::vector<AnnotationEntry>& Slide::annotations() const noexcept {
  return state_->annotations;
}

const AnnotationEntry& Slide::annotation(std::uint32_t identifier) const {
  const auto it = state_->annotation_index.find(identifier);
  if (it == state_->annotation_index.end()) {
    throw NotFoundError("no annotation with identifier " + std::to_string(identifier));
  }
  return state_->annotations[it->second];
}

std::span<const std::uint8_t> Slide::read_annotation_payload(std::uint32_t identifier) const {
  const auto& entry = annotation(identifier);
  return read_payload(state_->view, entry.payload_offset, entry.payload_size);
}

const std::vector<AnnotationGroupInfo>& Slide::annotation_groups() const noexcept {
  return state_->groups;
}

std::span<const std::uint8_t> Slide::icc_profile() const {
  if (state_->icc_offset == 0) return {};
  return read_icc_profile(state_->view, state_->icc_offset);
}

SlideMetadata Slide::read_metadata() const {
  SlideMetadata metadata;
  for (const auto& record : read_attributes()) {
    metadata.attributes.push_back(Attribute{record.key_format, record.raw_key, record.value});
  }
  for (const auto& entry : state_->image_entries) {
    const auto payload = read_payload(state_->view, entry.payload_offset, entry.payload_size);
    metadata.associated_images.push_back(AssociatedImage{entry.label,
                                                         entry.encoding_format,
                                                         entry.pixel_format,
                                                         entry.width,
                                                         entry.height,
                                                         {payload.begin(), payload.end()}});
  }
  const auto icc = icc_profile();
  metadata.icc_profile.assign(icc.begin(), icc.end());
  for (const auto& entry : state_->annotations) {
    const auto payload = read_payload(state_->view, entry.payload_offset, entry.payload_size);
    metadata.annotations.push_back(Annotation{entry.identifier,
                                              entry.type,
                                              entry.x,
                                              entry.y,
                                              entry.width,
                                              entry.height,
                                              entry.raster_width,
                                              entry.raster_height,
                                              {payload.begin(), payload.end()},
                                              entry.parent_id});
  }
  for (const auto& group : state_->groups) {
    metadata.annotation_groups.push_back(AnnotationGroup{group.name, group.members});
  }
  return metadata;
}

ViewRect to_view_pixels(const SlideSpaceRect& rect, std::uint32_t tile_dimension, double zoom) {
  if (!std::isfinite(zoom) || zoom <= 0.0) {
    throw DomainError("zoom must be finite and positive");
  }
  const double factor = static_cast<double>(tile_dimension) * zoom;
  return ViewRect{rect.x * factor, rect.y * factor, rect.width * factor, rect.height * factor};
}

SlideSpaceRect slide_space_extent(const PyramidLayout& layout) {
  const auto& base = layout.layer(0);
  return SlideSpaceRect{0.0f, 0.0f, static_cast<float>(base.x_tiles),
                        static_cast<float>(base.y_tiles)};
}

}  // namespace ife
