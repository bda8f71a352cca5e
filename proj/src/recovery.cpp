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

#include "ife/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "ife/encoder.hpp"
#include "ife/error.hpp"
#include "ife/reader.hpp"
#include "ife/scalar.hpp"

namespace ife {

namespace {

std::uint32_t score(std::span<const std::uint8_t> bytes, Offset offset, BlockType type) {
  std::uint32_t confidence = 2;
  if (bytes.size() - offset >= wire::kPrefixSize) {
    const auto prefix = decode_prefix(bytes.subspan(offset));
    if (prefix.block_version == kBlockVersion) ++confidence;
    if (prefix.fixed_size == fixed_size_of(type)) ++confidence;
  }
  if (!check_block(bytes, offset, type)) ++confidence;
  return confidence;
}

void scan_range(std::span<const std::uint8_t> bytes, Offset begin, Offset end,
                std::vector<CandidateBlock>& out) {
  const std::uint8_t* data = bytes.data();
  for (Offset p = begin; p < end; ++p) {
    if (data[p] != static_cast<std::uint8_t>(p)) continue;
    if (detail::load_unchecked<std::uint64_t>(data + p) != p) continue;
    const auto tag =
        parse_recovery_tag(detail::load_unchecked<std::uint32_t>(data + p + wire::kRecoveryTag));
    if (!tag || !tag->known()) continue;
    if (p == 0) {
      if (bytes.size() < wire::file_header::kMagic + 4 ||
          detail::load_unchecked<std::uint32_t>(data + wire::file_header::kMagic) != kFileMagic ||
          tag->type() != BlockType::kFileHeader) {
        continue;
      }
    }
    out.push_back(CandidateBlock{p, tag->type(), score(bytes, p, tag->type())});
  }
}

std::string at(Offset offset) { return "offset " + std::to_string(offset); }

bool intact(std::span<const std::uint8_t> bytes, Offset offset, BlockType type) {
  return !check_block(bytes, offset, type);
}

/// Candidates of one type that pass every local check, best first.
std::vector<CandidateBlock> ranked(std::span<const std::uint8_t> bytes,
                                   const std::vector<CandidateBlock>& all, BlockType type) {
  std::vector<CandidateBlock> out;
  for (const auto& c : all) {
    if (c.block_type == type && intact(bytes, c.offset, type)) out.push_back(c);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return a.offset < b.offset;
  });
  return out;
}

struct TableChoice {
  Offset table = 0;
  Offset extents = 0;
  Offset offsets = 0;
  PyramidLayout layout;
  std::optional<EncodingFormat> encoding;
  std::optional<PixelFormat> pixel;
};

class Rebuilder {
 public:
  Rebuilder(std::span<const std::uint8_t> bytes, const std::vector<CandidateBlock>& candidates)
      : bytes_(bytes), view_(FileView::borrow(bytes)), candidates_(candidates) {}

  RecoveredStructure run() {
    out_.candidate_count = candidates_.size();
    const auto header = read_header();
    const auto choice = choose_table(header);
    if (!choice) {
      throw UnrecoverableError("no consistent LAYER_EXTENTS and TILE_OFFSETS pair survives");
    }
    out_.layout = choice->layout;
    out_.tiles = read_array<TileOffsetEntry>(view_, choice->offsets).to_vector();
    if (choice->table) adopt(choice->table, BlockType::kTileTable);
    adopt(choice->extents, BlockType::kLayerExtents);
    adopt(choice->offsets, BlockType::kTileOffsets);
    out_.encoding_format = choice->encoding ? *choice->encoding : infer_encoding();
    out_.pixel_format = choice->pixel ? *choice->pixel : infer_pixel();
    rebuild_metadata(header ? header->metadata_offset : 0);
    std::sort(out_.adopted.begin(), out_.adopted.end(),
              [](const auto& a, const auto& b) { return a.offset < b.offset; });
    return std::move(out_);
  }

 private:
  std::optional<FileHeader> read_header() {
    if (!intact(bytes_, 0, BlockType::kFileHeader)) return std::nullopt;
    const auto header = read_file_header(view_).fields();
    if (header.spec_major != kSpecMajor) return std::nullopt;
    adopt(0, BlockType::kFileHeader);
    return header;
  }

  void adopt(Offset offset, BlockType type) {
    for (const auto& c : candidates_) {
      if (c.offset == offset && c.block_type == type) {
        out_.adopted.push_back(c);
        return;
      }
    }
    out_.adopted.push_back(CandidateBlock{offset, type, score(bytes_, offset, type)});
  }

  std::optional<PyramidLayout> layout_at(Offset offset) {
    if (!intact(bytes_, offset, BlockType::kLayerExtents)) return std::nullopt;
    auto extents = read_array<LayerExtent>(view_, offset).to_vector();
    if (extents.empty()) return std::nullopt;
    for (const auto& e : extents) {
      if (e.x_tiles == 0 || e.y_tiles == 0) return std::nullopt;
    }
    try {
      PyramidLayout layout(extents);
      if (layout.scale_problem().empty()) return layout;
      for (std::size_t i = 0; i < extents.size(); ++i) {
        extents[i].scale = std::ldexp(1.0f, static_cast<int>(i));
      }
      out_.notes.push_back("layer scales at " + at(offset) +
                           " were inconsistent and reset to powers of two");
      return PyramidLayout(extents);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }

  std::optional<TableChoice> table_at(Offset offset) {
    if (!intact(bytes_, offset, BlockType::kTileTable)) return std::nullopt;
    const auto table = read_tile_table(view_, offset).fields();
    if (table.tile_dimension != kTileDimension) return std::nullopt;
    auto layout = layout_at(table.extents_offset);
    if (!layout || layout->layer_count() != table.layer_count) return std::nullopt;
    if (!intact(bytes_, table.offsets_offset, BlockType::kTileOffsets)) {
      return std::nullopt;
    }
    const auto offsets = read_array<TileOffsetEntry>(view_, table.offsets_offset);
    if (offsets.count() != layout->total_tiles()) return std::nullopt;
    TableChoice choice{offset,       table.extents_offset, table.offsets_offset, std::move(*layout),
                       std::nullopt, std::nullopt};
    if (is_known(table.encoding_format) && table.encoding_format != EncodingFormat::kIrisCodec) {
      choice.encoding = table.encoding_format;
    }
    if (is_known(table.pixel_format)) choice.pixel = table.pixel_format;
    return choice;
  }

  std::optional<TableChoice> choose_table(const std::optional<FileHeader>& header) {
    if (header) {
      if (auto choice = table_at(header->tile_table_offset)) return choice;
      out_.notes.push_back("the file header points at an unusable tile table");
    }

    std::vector<TableChoice> tables;
    for (const auto& c : ranked(bytes_, candidates_, BlockType::kTileTable)) {
      if (auto choice = table_at(c.offset)) tables.push_back(std::move(*choice));
    }
    if (!tables.empty()) {
      if (tables.size() > 1) {
        std::string text = std::to_string(tables.size()) + " plausible tile tables; chose " +
                           at(tables.front().table) + " over";
        for (std::size_t i = 1; i < tables.size(); ++i) {
          text += " " + std::to_string(tables[i].table);
        }
        out_.conflicts.push_back(text);
      }
      return tables.front();
    }

    const auto extents = ranked(bytes_, candidates_, BlockType::kLayerExtents);
    const auto offsets = ranked(bytes_, candidates_, BlockType::kTileOffsets);
    if (extents.empty() || offsets.empty()) {
      throw UnrecoverableError(
          std::string("no intact ") + (extents.empty() ? "LAYER_EXTENTS" : "TILE_OFFSETS") +
          " block found among " + std::to_string(candidates_.size()) + " candidates");
    }
    std::vector<TableChoice> pairs;
    for (const auto& e : extents) {
      auto layout = layout_at(e.offset);
      if (!layout) continue;
      for (const auto& o : offsets) {
        const auto array = read_array<TileOffsetEntry>(view_, o.offset);
        if (array.count() != layout->total_tiles()) continue;
        pairs.push_back(TableChoice{0, e.offset, o.offset, *layout, std::nullopt, std::nullopt});
      }
    }
    if (pairs.empty()) return std::nullopt;
    out_.notes.push_back("no tile table survived; paired LAYER_EXTENTS at " +
                         std::to_string(pairs.front().extents) + " with TILE_OFFSETS at " +
                         std::to_string(pairs.front().offsets));
    if (pairs.size() > 1) {
      out_.conflicts.push_back(std::to_string(pairs.size()) +
                               " extent/offset pairings fit; chose the first");
    }
    for (const auto& c : ranked(bytes_, candidates_, BlockType::kTileTable)) {
      const auto table = read_tile_table(view_, c.offset).fields();
      if (table.extents_offset == pairs.front().extents ||
          table.offsets_offset == pairs.front().offsets) {
        if (is_known(table.encoding_format) &&
            table.encoding_format != EncodingFormat::kIrisCodec) {
          pairs.front().encoding = table.encoding_format;
        }
        if (is_known(table.pixel_format)) pairs.front().pixel = table.pixel_format;
        break;
      }
    }
    return pairs.front();
  }

  std::optional<std::span<const std::uint8_t>> first_tile() const {
    for (const auto& entry : out_.tiles) {
      if (entry.is_sparse() || entry.size == 0) continue;
      if (entry.offset >= bytes_.size() || entry.size > bytes_.size() - entry.offset) {
        continue;
      }
      return bytes_.subspan(entry.offset, entry.size);
    }
    return std::nullopt;
  }

  EncodingFormat infer_encoding() {
    EncodingFormat format = EncodingFormat::kRawTest;
    const auto tile = first_tile();
    if (tile && tile->size() >= 2 && (*tile)[0] == 0xFF && (*tile)[1] == 0xD8) {
      format = EncodingFormat::kJpeg;
    }
    out_.notes.push_back("encoding format inferred as " + std::string(to_string(format)));
    return format;
  }

  PixelFormat infer_pixel() {
    PixelFormat format = PixelFormat::kR8G8B8;
    const auto tile = first_tile();
    if (out_.encoding_format == EncodingFormat::kRawTest && tile &&
        tile->size() == std::uint64_t{kTileDimension} * kTileDimension * 4) {
      format = PixelFormat::kR8G8B8A8;
    }
    out_.notes.push_back("pixel format inferred as " + std::string(to_string(format)));
    return format;
  }

  /// Payload of a BYTE_ARRAY reference, or nullopt when it cannot be read.
  std::optional<std::span<const std::uint8_t>> payload(Offset block, std::uint64_t size) {
    if (size == 0) return std::span<const std::uint8_t>{};
    if (!intact(bytes_, block, BlockType::kByteArray)) return std::nullopt;
    const auto array = read_byte_array(view_, block);
    if (array.payload.size() != size) return std::nullopt;
    adopt(block, BlockType::kByteArray);
    return array.payload;
  }

  /// The child at `pointer` when intact; otherwise the best surviving
  /// candidate of the same type, or 0.
  Offset child(Offset pointer, BlockType type, bool have_parent) {
    if (pointer != 0 && intact(bytes_, pointer, type)) return pointer;
    if (have_parent && pointer == 0) return 0;
    const auto options = ranked(bytes_, candidates_, type);
    if (options.empty()) {
      if (pointer != 0) {
        out_.notes.push_back(std::string(to_string(type)) + " at " + at(pointer) +
                             " is damaged and was dropped");
      }
      return 0;
    }
    if (options.size() > 1) {
      out_.conflicts.push_back(std::to_string(options.size()) + " " + std::string(to_string(type)) +
                               " candidates; chose " + at(options.front().offset));
    }
    if (pointer != 0) {
      out_.notes.push_back(std::string(to_string(type)) + " at " + at(pointer) +
                           " is damaged; adopted the candidate at " + at(options.front().offset));
    }
    return options.front().offset;
  }

  void rebuild_metadata(Offset header_pointer) {
    Offset metadata = 0;
    if (header_pointer != 0 && intact(bytes_, header_pointer, BlockType::kClinicalMetadata)) {
      metadata = header_pointer;
    } else {
      const auto options = ranked(bytes_, candidates_, BlockType::kClinicalMetadata);
      if (!options.empty()) {
        metadata = options.front().offset;
        if (options.size() > 1) {
          out_.conflicts.push_back(std::to_string(options.size()) +
                                   " CLINICAL_METADATA candidates; chose " + at(metadata));
        }
      }
    }

    ClinicalMetadata pointers;
    if (metadata != 0) {
      pointers = read_clinical_metadata(view_, metadata).fields();
      adopt(metadata, BlockType::kClinicalMetadata);
    } else {
      out_.notes.push_back("no CLINICAL_METADATA block survived");
    }
    const bool have = metadata != 0;

    if (auto offset = child(pointers.attributes_offset, BlockType::kAttributes, have)) {
      adopt(offset, BlockType::kAttributes);
      read_attributes(offset);
    }
    if (auto offset =
            child(pointers.associated_images_offset, BlockType::kAssociatedImages, have)) {
      adopt(offset, BlockType::kAssociatedImages);
      read_images(offset);
    }
    if (auto offset = child(pointers.icc_offset, BlockType::kIccProfile, have)) {
      adopt(offset, BlockType::kIccProfile);
      const auto profile = read_icc_profile(view_, offset);
      out_.metadata.icc_profile.assign(profile.begin(), profile.end());
    }
    if (auto offset = child(pointers.annotations_offset, BlockType::kAnnotations, have)) {
      adopt(offset, BlockType::kAnnotations);
      read_annotations(offset);
    }
    if (auto offset =
            child(pointers.annotation_groups_offset, BlockType::kAnnotationGroups, have)) {
      adopt(offset, BlockType::kAnnotationGroups);
      read_groups(offset);
    }
  }

  void drop(const std::string& what) { out_.notes.push_back(what + " dropped"); }

  static std::string text(std::span<const std::uint8_t> bytes) {
    return std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }

  void read_attributes(Offset offset) {
    const auto array = read_array<AttributeEntry>(view_, offset);
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto e = array.entry(i);
      const std::string which = "attribute " + std::to_string(i);
      const auto blob = payload(e.blob_offset, std::uint64_t{e.key_size} + e.value_size);
      if (!is_known(e.key_format) || e.key_size == 0 || !blob) {
        drop(which);
        continue;
      }
      out_.metadata.attributes.push_back(
          Attribute{e.key_format, text(blob->first(e.key_size)), text(blob->subspan(e.key_size))});
    }
  }

  void read_images(Offset offset) {
    const auto array = read_array<AssociatedImageEntry>(view_, offset);
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto e = array.entry(i);
      const auto bytes = payload(e.payload_offset, e.payload_size);
      if (!is_known(e.label) || !is_known(e.encoding_format) || !is_known(e.pixel_format) ||
          e.width == 0 || e.height == 0 || e.payload_size == 0 || !bytes) {
        drop("associated image " + std::to_string(i));
        continue;
      }
      out_.metadata.associated_images.push_back(AssociatedImage{e.label,
                                                                e.encoding_format,
                                                                e.pixel_format,
                                                                e.width,
                                                                e.height,
                                                                {bytes->begin(), bytes->end()}});
    }
  }

  void read_annotations(Offset offset) {
    const auto array = read_array<AnnotationEntry>(view_, offset);
    std::unordered_set<std::uint32_t> ids;
    auto& notes = out_.metadata.annotations;
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto e = array.entry(i);
      const auto bytes = payload(e.payload_offset, e.payload_size);
      const bool finite = std::isfinite(e.x) && std::isfinite(e.y) && std::isfinite(e.width) &&
                          std::isfinite(e.height) && e.width >= 0 && e.height >= 0;
      if (e.identifier == 0 || ids.contains(e.identifier) || !is_known(e.type) ||
          e.raster_width == 0 || e.raster_height == 0 || !finite || !bytes) {
        drop("annotation entry " + std::to_string(i));
        continue;
      }
      ids.insert(e.identifier);
      notes.push_back(Annotation{e.identifier,
                                 e.type,
                                 e.x,
                                 e.y,
                                 e.width,
                                 e.height,
                                 e.raster_width,
                                 e.raster_height,
                                 {bytes->begin(), bytes->end()},
                                 e.parent_id});
    }
    for (auto& note : notes) {
      if (note.parent_id != 0 && !ids.contains(note.parent_id)) {
        out_.notes.push_back("annotation " + std::to_string(note.identifier) + " lost its parent " +
                             std::to_string(note.parent_id));
        note.parent_id = 0;
      }
    }
  }

  void read_groups(Offset offset) {
    const auto array = read_array<AnnotationGroupEntry>(view_, offset);
    std::unordered_set<std::uint32_t> ids;
    for (const auto& note : out_.metadata.annotations) ids.insert(note.identifier);
    for (std::uint32_t i = 0; i < array.count(); ++i) {
      const auto e = array.entry(i);
      const auto name = payload(e.name_offset, e.name_size);
      const auto members = payload(e.members_offset, std::uint64_t{e.member_count} * 4);
      if (!name || name->empty() || !members) {
        drop("annotation group " + std::to_string(i));
        continue;
      }
      AnnotationGroup group{text(*name), {}};
      for (std::uint32_t m = 0; m < e.member_count; ++m) {
        const auto id = load<std::uint32_t>(*members, std::size_t{m} * 4);
        if (ids.contains(id)) {
          group.members.push_back(id);
        } else {
          drop("member " + std::to_string(id) + " of annotation group '" + group.name + "'");
        }
      }
      out_.metadata.annotation_groups.push_back(std::move(group));
    }
  }

  std::span<const std::uint8_t> bytes_;
  FileView view_;
  const std::vector<CandidateBlock>& candidates_;
  RecoveredStructure out_;
};

class RecoveredSource final : public SlideSource {
 public:
  RecoveredSource(const RecoveredStructure& recovered,
                  std::vector<std::optional<std::span<const std::uint8_t>>> tiles)
      : recovered_(recovered), tiles_(std::move(tiles)) {}

  const PyramidLayout& layout() const override { return recovered_.layout; }
  PixelFormat pixel_format() const override { return recovered_.pixel_format; }
  SlideMetadata metadata() const override { return recovered_.metadata; }
  TileData tile(const TileCoord& coord) const override {
    const auto& bytes = tiles_[recovered_.layout.global_index(coord)];
    if (!bytes) return SparseTile{};
    return PrecompressedTile{recovered_.encoding_format, {bytes->begin(), bytes->end()}};
  }

 private:
  const RecoveredStructure& recovered_;
  std::vector<std::optional<std::span<const std::uint8_t>>> tiles_;
};

}  // namespace

std::vector<CandidateBlock> scan_candidates(std::span<const std::uint8_t> bytes, unsigned workers) {
  std::vector<CandidateBlock> out;
  if (bytes.size() < 12) return out;
  const Offset end = bytes.size() - 12 + 1;
  workers = std::max(1u, workers);
  if (workers == 1 || end < 4096) {
    scan_range(bytes, 0, end, out);
    return out;
  }
  std::vector<std::vector<CandidateBlock>> parts(workers);
  std::vector<std::thread> threads;
  const Offset chunk = (end + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const Offset begin = std::min<Offset>(end, chunk * w);
    const Offset stop = std::min<Offset>(end, begin + chunk);
    threads.emplace_back([&, w, begin, stop] { scan_range(bytes, begin, stop, parts[w]); });
  }
  for (auto& thread : threads) thread.join();
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

RecoveredStructure rebuild(std::span<const std::uint8_t> bytes,
                           const std::vector<CandidateBlock>& candidates) {
  if (bytes.size() <= kFileHeaderSize) {
    throw UnrecoverableError("only " + std::to_string(bytes.size()) + " bytes survive");
  }
  return Rebuilder(bytes, candidates).run();
}

SalvageReport salvage(std::span<const std::uint8_t> bytes, const RecoveredStructure& recovered,
                      Sink& sink, unsigned workers) {
  SalvageReport report;
  report.candidates_found = recovered.candidate_count;
  report.blocks_adopted = recovered.adopted.size();
  report.total_tiles = recovered.layout.total_tiles();
  report.conflicts = recovered.conflicts;
  report.notes = recovered.notes;
  if (recovered.tiles.size() != report.total_tiles) {
    throw ContractError("recovered tile table does not match its layout");
  }

  std::vector<std::optional<std::span<const std::uint8_t>>> tiles(recovered.tiles.size());
  for (std::size_t i = 0; i < recovered.tiles.size(); ++i) {
    const auto& entry = recovered.tiles[i];
    if (entry.is_sparse()) {
      ++report.tiles_sparse;
      continue;
    }
    if (entry.offset >= kFileHeaderSize && entry.size > 0 && entry.offset < bytes.size() &&
        entry.size <= bytes.size() - entry.offset) {
      tiles[i] = bytes.subspan(entry.offset, entry.size);
      ++report.tiles_salvaged;
      report.bytes_recovered += entry.size;
    } else {
      ++report.tiles_lost;
    }
  }

  const RecoveredSource source(recovered, std::move(tiles));
  EncodeParams params;
  params.encoding_format = recovered.encoding_format;
  params.worker_count = workers;
  report.output_size = encode_slide(source, params, sink).file_size;
  return report;
}

std::string SalvageReport::to_text() const {
  std::ostringstream out;
  out << "candidates found: " << candidates_found << '\n'
      << "blocks adopted:   " << blocks_adopted << '\n'
      << "tiles total:      " << total_tiles << '\n'
      << "tiles salvaged:   " << tiles_salvaged << '\n'
      << "tiles lost:       " << tiles_lost << '\n'
      << "tiles sparse:     " << tiles_sparse << '\n'
      << "bytes recovered:  " << bytes_recovered << '\n'
      << "output size:      " << output_size << '\n';
  for (const auto& conflict : conflicts) out << "conflict: " << conflict << '\n';
  for (const auto& note : notes) out << "note: " << note << '\n';
  return out.str();
}

}  // namespace ife
