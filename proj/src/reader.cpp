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

#include "ife/reader.hpp"

#include <sstream>

namespace ife {

namespace {

std::string hex(std::uint64_t value) {
  std::ostringstream out;
  out << "0x" << std::hex << std::uppercase << value;
  return out.str();
}

void throw_if(const std::optional<Finding>& failure) {
  if (failure) throw BlockError(*failure);
}

}  // namespace

FileVersion file_version(std::span<const std::uint8_t> file) noexcept {
  if (file.size() < kFileHeaderSize || detail::load_unchecked<std::uint32_t>(
                                           file.data() + wire::file_header::kMagic) != kFileMagic) {
    return {};
  }
  return FileVersion{
      detail::load_unchecked<std::uint16_t>(file.data() + wire::file_header::kSpecMajor),
      detail::load_unchecked<std::uint16_t>(file.data() + wire::file_header::kSpecMinor),
  };
}

std::optional<Finding> check_block(std::span<const std::uint8_t> file, Offset offset,
                                   BlockType expected) {
  auto fail = [&](FindingCode code, std::string message) {
    return std::optional<Finding>(Finding{
        .severity = Severity::kError,
        .block_type = expected,
        .byte_offset = offset,
        .code = code,
        .message = std::move(message),
    });
  };
  const std::uint64_t size = file.size();
  const std::string what = std::string(to_string(expected));

  if (expected == BlockType::kFileHeader) {
    if (offset != 0) {
      return fail(FindingCode::kBadOffset, "the file header lives at offset 0");
    }
  } else if (offset < kFileHeaderSize) {
    return fail(FindingCode::kBadOffset,
                what + " offset " + std::to_string(offset) + " falls inside the file header");
  }
  if (offset >= size || size - offset < wire::kPrefixSize) {
    return fail(FindingCode::kOutOfBounds, what + " prefix at " + std::to_string(offset) +
                                               " runs past the end of the " + std::to_string(size) +
                                               "-byte file");
  }

  const auto block = file.subspan(offset);
  const BlockPrefix prefix = decode_prefix(block);
  if (prefix.validation_tag != offset) {
    return fail(FindingCode::kBadValidationTag, what + " validation tag reads " +
                                                    std::to_string(prefix.validation_tag) +
                                                    ", expected " + std::to_string(offset));
  }
  if (expected == BlockType::kFileHeader) {
    if (size < kFileHeaderSize) {
      return fail(FindingCode::kOutOfBounds, "file is shorter than its header");
    }
    const auto magic = load<std::uint32_t>(block, wire::file_header::kMagic);
    if (magic != kFileMagic) {
      return fail(FindingCode::kBadMagic,
                  "file magic reads " + hex(magic) + ", expected " + hex(kFileMagic));
    }
  }

  const auto tag = parse_recovery_tag(prefix.recovery_tag);
  if (!tag) {
    return fail(FindingCode::kBadRecoveryTag, what + " recovery tag " + hex(prefix.recovery_tag) +
                                                  " lacks the " + hex(kRecoveryMagic) + " magic");
  }
  if (!tag->known()) {
    return fail(FindingCode::kUnknownBlockType,
                "recovery tag names unknown block type " + hex(tag->type_code));
  }
  if (tag->type() != expected) {
    return fail(FindingCode::kBlockTypeMismatch,
                "expected " + what + ", found " + std::string(to_string(tag->type())));
  }
  if (prefix.block_version != kBlockVersion) {
    return fail(FindingCode::kBadBlockVersion, what + " block version " +
                                                   std::to_string(prefix.block_version) +
                                                   " is not " + std::to_string(kBlockVersion));
  }

  const std::uint8_t defined = fixed_size_of(expected);
  const FileVersion version = file_version(file);
  const bool exact = version.major == 1 && version.minor == 0;
  if (exact ? prefix.fixed_size != defined : prefix.fixed_size < defined) {
    return fail(FindingCode::kBadFixedSize,
                what + " fixed size " + std::to_string(prefix.fixed_size) +
                    (exact ? " differs from " : " is below ") + std::to_string(defined));
  }
  const std::uint64_t room = size - offset;
  if (room < prefix.fixed_size) {
    return fail(FindingCode::kOutOfBounds, what + " fixed fields run past the end of the file");
  }

  std::uint64_t tail = 0;
  if (is_array_block(expected)) {
    const auto header = ArrayHeader::decode(block);
    if (header.entry_size < min_entry_size(expected)) {
      return fail(FindingCode::kEntryTooSmall,
                  what + " entry size " + std::to_string(header.entry_size) +
                      " is below the minimum " + std::to_string(min_entry_size(expected)));
    }
    tail = std::uint64_t{header.entry_size} * header.entry_count;
  } else if (expected == BlockType::kByteArray) {
    tail = ByteArrayHeader::decode(block).payload_size;
  } else if (expected == BlockType::kIccProfile) {
    tail = load<std::uint64_t>(block, wire::icc_profile::kPayloadSize);
  }
  if (tail > room - prefix.fixed_size) {
    return fail(FindingCode::kOutOfBounds, what + " contents (" + std::to_string(tail) +
                                               " bytes) run past the end of the file");
  }
  return std::nullopt;
}

std::uint64_t block_length(std::span<const std::uint8_t> file, Offset offset) {
  const auto block = file.subspan(offset);
  const BlockPrefix prefix = decode_prefix(block);
  const auto tag = parse_recovery_tag(prefix.recovery_tag);
  std::uint64_t length = prefix.fixed_size;
  if (!tag) return length;
  if (is_array_block(tag->type())) {
    const auto header = ArrayHeader::decode(block);
    length += std::uint64_t{header.entry_size} * header.entry_count;
  } else if (tag->type() == BlockType::kByteArray) {
    length += ByteArrayHeader::decode(block).payload_size;
  } else if (tag->type() == BlockType::kIccProfile) {
    length += load<std::uint64_t>(block, wire::icc_profile::kPayloadSize);
  }
  return length;
}

BlockView read_header_block(const FileView& view, Offset offset, BlockType expected) {
  const auto file = view.bytes();
  throw_if(check_block(file, offset, expected));
  const std::uint8_t fixed = file[offset + wire::kFixedSizeField];
  return BlockView(offset, expected, file.subspan(offset, fixed));
}

FileHeaderView read_file_header(const FileView& view) {
  return FileHeaderView(read_header_block(view, 0, BlockType::kFileHeader));
}

TileTableView read_tile_table(const FileView& view, Offset offset) {
  return TileTableView(read_header_block(view, offset, BlockType::kTileTable));
}

ClinicalMetadataView read_clinical_metadata(const FileView& view, Offset offset) {
  return ClinicalMetadataView(read_header_block(view, offset, BlockType::kClinicalMetadata));
}

namespace detail {

RawArray read_raw_array(const FileView& view, Offset offset, BlockType expected) {
  const auto block = read_header_block(view, offset, expected);
  const auto header = ArrayHeader::decode(block.fixed_region());
  const auto entries = view.bytes().subspan(offset + block.fixed_region().size(),
                                            std::uint64_t{header.entry_size} * header.entry_count);
  return RawArray{header.entry_size, header.entry_count, entries};
}

}  // namespace detail

ByteArrayView read_byte_array(const FileView& view, Offset offset) {
  const auto block = read_header_block(view, offset, BlockType::kByteArray);
  const auto header = ByteArrayHeader::decode(block.fixed_region());
  return ByteArrayView{
      .offset = offset,
      .content_hint = header.content_hint,
      .payload = view.bytes().subspan(offset + block.fixed_region().size(), header.payload_size),
  };
}

std::span<const std::uint8_t> read_payload(const FileView& view, Offset block_offset,
                                           std::uint64_t size) {
  if (size == 0) return {};
  const auto bytes = read_byte_array(view, block_offset);
  if (bytes.payload.size() != size) {
    throw BlockError(Finding{
        .severity = Severity::kError,
        .block_type = BlockType::kByteArray,
        .byte_offset = block_offset,
        .code = FindingCode::kPayloadSizeMismatch,
        .message = "byte array holds " + std::to_string(bytes.payload.size()) +
                   " bytes, entry expects " + std::to_string(size),
    });
  }
  return bytes.payload;
}

std::span<const std::uint8_t> read_icc_profile(const FileView& view, Offset offset) {
  const auto block = read_header_block(view, offset, BlockType::kIccProfile);
  const auto size = load<std::uint64_t>(block.fixed_region(), wire::icc_profile::kPayloadSize);
  return view.bytes().subspan(offset + block.fixed_region().size(), size);
}

std::optional<TileRange> tile_record(const ArrayView<TileOffsetEntry>& offsets,
                                     const PyramidLayout& layout, std::uint64_t index) {
  if (index >= layout.total_tiles() || index >= offsets.count()) {
    throw DomainError("tile index " + std::to_string(index) + " is outside a " +
                      std::to_string(layout.total_tiles()) + "-tile pyramid");
  }
  const auto entry = offsets.entry(static_cast<std::uint32_t>(index));
  if (entry.is_sparse()) return std::nullopt;
  return TileRange{entry.offset, entry.size};
}

std::optional<TileRange> tile_record(const FileView& view, const PyramidLayout& layout,
                                     std::uint64_t index) {
  const auto header = read_file_header(view);
  const auto table = read_tile_table(view, header.tile_table_offset());
  const auto offsets = read_array<TileOffsetEntry>(view, table.offsets_offset());
  return tile_record(offsets, layout, index);
}

SlideStructure read_structure(const FileView& view) {
  SlideStructure structure;
  structure.header = read_file_header(view);
  if (structure.header.spec_major() != kSpecMajor) {
    throw BlockError(Finding{
        .severity = Severity::kError,
        .block_type = BlockType::kFileHeader,
        .byte_offset = 0,
        .code = FindingCode::kUnsupportedVersion,
        .message = "file major version " + std::to_string(structure.header.spec_major()) +
                   " is not supported",
    });
  }
  structure.tile_table = read_tile_table(view, structure.header.tile_table_offset());
  const auto extents = read_array<LayerExtent>(view, structure.tile_table.extents_offset());
  structure.layout = PyramidLayout(extents.to_vector());
  structure.tile_offsets = read_array<TileOffsetEntry>(view, structure.tile_table.offsets_offset());
  return structure;
}

}  // namespace ife
