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

#include "ife/assembler.hpp"

#include <cstring>

#include "ife/scalar.hpp"

namespace ife {

namespace {

Reservation reserve_blob(ReservationAllocator& allocator, std::size_t size) {
  if (size == 0) return {};
  return allocator.reserve_range(byte_array_block_size(size));
}

Offset blob_offset(const Reservation& at) { return at.size == 0 ? 0 : at.offset; }

void write_blob(Sink& sink, const Reservation& at, BlockType hint,
                std::span<const std::uint8_t> payload, std::vector<WriteReceipt>* receipts) {
  if (at.size == 0) return;
  const auto receipt = write_byte_array(sink, at, hint, payload);
  if (receipts) receipts->push_back(receipt);
}

std::span<const std::uint8_t> as_bytes(const std::string& text) {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

template <typename Entry>
Reservation reserve_array(ReservationAllocator& allocator, std::size_t count) {
  if (count == 0) return {};
  return allocator.reserve_range(array_block_size(Entry::kMinEntrySize, count));
}

template <typename Entry>
void write_array(Sink& sink, const Reservation& at, const std::vector<Entry>& entries,
                 std::vector<WriteReceipt>* receipts) {
  if (at.size == 0) return;
  const auto receipt = write_array_block<Entry>(sink, at, std::span<const Entry>(entries));
  if (receipts) receipts->push_back(receipt);
}

}  // namespace

// MARK: StructurePlan

StructurePlan StructurePlan::reserve(ReservationAllocator& allocator, const PyramidLayout& layout,
                                     std::uint32_t extents_entry_size,
                                     std::uint32_t offsets_entry_size) {
  if (layout.layer_count() == 0) {
    throw ContractError("cannot plan a tile table for an empty pyramid");
  }
  if (extents_entry_size < LayerExtent::kMinEntrySize ||
      offsets_entry_size < TileOffsetEntry::kMinEntrySize) {
    throw ContractError("entry size below the v1.0 minimum");
  }
  StructurePlan plan;
  plan.extents_entry_size_ = extents_entry_size;
  plan.offsets_entry_size_ = offsets_entry_size;
  plan.tile_table_ = allocator.reserve_range(wire::tile_table::kSize);
  plan.extents_ =
      allocator.reserve_range(array_block_size(extents_entry_size, layout.layer_count()));
  plan.offsets_ =
      allocator.reserve_range(array_block_size(offsets_entry_size, layout.total_tiles()));
  return plan;
}

Offset StructurePlan::write(Sink& sink, const PyramidLayout& layout, EncodingFormat encoding,
                            PixelFormat pixel_format, std::span<const TileOffsetEntry> tiles,
                            std::vector<WriteReceipt>* receipts) const {
  if (tiles.size() != layout.total_tiles()) {
    throw ContractError("tile offset table holds " + std::to_string(tiles.size()) +
                        " entries for " + std::to_string(layout.total_tiles()) + " tiles");
  }
  const auto extents_receipt = write_array_block<LayerExtent>(
      sink, extents_, extents_entry_size_, std::span<const LayerExtent>(layout.layers()));
  const auto offsets_receipt =
      write_array_block<TileOffsetEntry>(sink, offsets_, offsets_entry_size_, tiles);
  const TileTable table{
      .extents_offset = extents_.offset,
      .offsets_offset = offsets_.offset,
      .encoding_format = encoding,
      .pixel_format = pixel_format,
      .layer_count = layout.layer_count(),
      .tile_dimension = kTileDimension,
  };
  const auto table_receipt = write_header_block(sink, tile_table_, table);
  if (receipts) {
    receipts->push_back(table_receipt);
    receipts->push_back(extents_receipt);
    receipts->push_back(offsets_receipt);
  }
  return tile_table_.offset;
}

// MARK: MetadataPlan

MetadataPlan MetadataPlan::reserve(ReservationAllocator& allocator, const SlideMetadata& metadata) {
  check_metadata(metadata);
  MetadataPlan plan;
  plan.metadata_ = allocator.reserve_range(wire::clinical_metadata::kSize);

  plan.attributes_ = reserve_array<AttributeEntry>(allocator, metadata.attributes.size());
  for (const auto& attribute : metadata.attributes) {
    plan.attribute_blobs_.push_back(
        reserve_blob(allocator, attribute.key.size() + attribute.value.size()));
  }

  plan.images_ = reserve_array<AssociatedImageEntry>(allocator, metadata.associated_images.size());
  for (const auto& image : metadata.associated_images) {
    plan.image_payloads_.push_back(reserve_blob(allocator, image.payload.size()));
  }

  if (!metadata.icc_profile.empty()) {
    plan.icc_ = allocator.reserve_range(icc_block_size(metadata.icc_profile.size()));
  }

  plan.annotations_ = reserve_array<AnnotationEntry>(allocator, metadata.annotations.size());
  for (const auto& annotation : metadata.annotations) {
    plan.annotation_payloads_.push_back(reserve_blob(allocator, annotation.payload.size()));
  }

  plan.groups_ = reserve_array<AnnotationGroupEntry>(allocator, metadata.annotation_groups.size());
  for (const auto& group : metadata.annotation_groups) {
    plan.group_names_.push_back(reserve_blob(allocator, group.name.size()));
    plan.group_members_.push_back(
        reserve_blob(allocator, group.members.size() * sizeof(std::uint32_t)));
  }
  return plan;
}

Offset MetadataPlan::write(Sink& sink, const SlideMetadata& metadata,
                           std::vector<WriteReceipt>* receipts) const {
  if (metadata.attributes.size() != attribute_blobs_.size() ||
      metadata.associated_images.size() != image_payloads_.size() ||
      metadata.annotations.size() != annotation_payloads_.size() ||
      metadata.annotation_groups.size() != group_names_.size() ||
      metadata.icc_profile.empty() != (icc_.size == 0)) {
    throw ContractError("metadata changed between reserve() and write()");
  }

  std::vector<WriteReceipt> written;

  std::vector<AttributeEntry> attributes;
  for (std::size_t i = 0; i < metadata.attributes.size(); ++i) {
    const auto& attribute = metadata.attributes[i];
    std::string blob = attribute.key + attribute.value;
    write_blob(sink, attribute_blobs_[i], BlockType::kAttributes, as_bytes(blob), &written);
    attributes.push_back(AttributeEntry{
        .key_format = attribute.key_format,
        .key_size = static_cast<std::uint16_t>(attribute.key.size()),
        .value_size = static_cast<std::uint32_t>(attribute.value.size()),
        .blob_offset = blob_offset(attribute_blobs_[i]),
    });
  }
  write_array(sink, attributes_, attributes, &written);

  std::vector<AssociatedImageEntry> images;
  for (std::size_t i = 0; i < metadata.associated_images.size(); ++i) {
    const auto& image = metadata.associated_images[i];
    write_blob(sink, image_payloads_[i], BlockType::kAssociatedImages, image.payload, &written);
    images.push_back(AssociatedImageEntry{
        .payload_offset = blob_offset(image_payloads_[i]),
        .payload_size = static_cast<std::uint32_t>(image.payload.size()),
        .encoding_format = image.encoding_format,
        .pixel_format = image.pixel_format,
        .width = image.width,
        .height = image.height,
        .label = image.label,
    });
  }
  write_array(sink, images_, images, &written);

  if (icc_.size != 0) {
    written.push_back(write_icc_profile(sink, icc_, metadata.icc_profile));
  }

  std::vector<AnnotationEntry> annotations;
  for (std::size_t i = 0; i < metadata.annotations.size(); ++i) {
    const auto& note = metadata.annotations[i];
    write_blob(sink, annotation_payloads_[i], BlockType::kAnnotations, note.payload, &written);
    annotations.push_back(AnnotationEntry{
        .identifier = note.identifier,
        .type = note.type,
        .x = note.x,
        .y = note.y,
        .width = note.width,
        .height = note.height,
        .raster_width = note.raster_width,
        .raster_height = note.raster_height,
        .payload_offset = blob_offset(annotation_payloads_[i]),
        .payload_size = static_cast<std::uint32_t>(note.payload.size()),
        .parent_id = note.parent_id,
    });
  }
  write_array(sink, annotations_, annotations, &written);

  std::vector<AnnotationGroupEntry> groups;
  for (std::size_t i = 0; i < metadata.annotation_groups.size(); ++i) {
    const auto& group = metadata.annotation_groups[i];
    write_blob(sink, group_names_[i], BlockType::kAnnotationGroups, as_bytes(group.name), &written);
    std::vector<std::uint8_t> members(group.members.size() * 4);
    for (std::size_t m = 0; m < group.members.size(); ++m) {
      store<std::uint32_t>(members, m * 4, group.members[m]);
    }
    write_blob(sink, group_members_[i], BlockType::kAnnotationGroups, members, &written);
    groups.push_back(AnnotationGroupEntry{
        .name_offset = blob_offset(group_names_[i]),
        .name_size = static_cast<std::uint32_t>(group.name.size()),
        .member_count = static_cast<std::uint32_t>(group.members.size()),
        .members_offset = blob_offset(group_members_[i]),
    });
  }
  write_array(sink, groups_, groups, &written);

  const ClinicalMetadata block{
      .attributes_offset = attributes_.size ? attributes_.offset : 0,
      .associated_images_offset = images_.size ? images_.offset : 0,
      .icc_offset = icc_.size ? icc_.offset : 0,
      .annotations_offset = annotations_.size ? annotations_.offset : 0,
      .annotation_groups_offset = groups_.size ? groups_.offset : 0,
  };
  written.insert(written.begin(), write_header_block(sink, metadata_, block));
  if (receipts) {
    receipts->insert(receipts->end(), written.begin(), written.end());
  }
  return metadata_.offset;
}

}  // namespace ife
