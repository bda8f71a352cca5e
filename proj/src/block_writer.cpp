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

#include "ife/block_writer.hpp"

#include <array>
#include <limits>
#include <type_traits>

#include "ife/scalar.hpp"

namespace ife {

Offset ReservationAllocator::reserve(std::uint64_t size) {
  if (size == 0) throw ContractError("cannot reserve an empty range");
  std::uint64_t current = cursor_.load(std::memory_order_relaxed);
  for (;;) {
    if (size > kCapacity || current > kCapacity - size) {
      throw CapacityError("reservation of " + std::to_string(size) + " bytes at cursor " +
                          std::to_string(current) + " exceeds the 2^63 byte capacity");
    }
    if (cursor_.compare_exchange_weak(current, current + size, std::memory_order_relaxed)) {
      return current;
    }
  }
}

std::uint64_t array_block_size(std::uint32_t entry_size, std::uint64_t entry_count) {
  if (entry_count != 0 &&
      entry_size >
          (std::numeric_limits<std::uint64_t>::max() - wire::array_header::kSize) / entry_count) {
    throw CapacityError("array block size overflows 64 bits");
  }
  return wire::array_header::kSize + std::uint64_t{entry_size} * entry_count;
}

std::uint64_t byte_array_block_size(std::uint64_t payload_size) {
  return wire::byte_array::kSize + payload_size;
}

std::uint64_t icc_block_size(std::uint64_t payload_size) {
  return wire::icc_profile::kSize + payload_size;
}

namespace detail {

void check_reservation(const Reservation& at, std::uint64_t needed, BlockType type) {
  if (at.size != needed) {
    throw ContractError(std::string(to_string(type)) + " block needs " + std::to_string(needed) +
                        " bytes but the reservation at " + std::to_string(at.offset) + " holds " +
                        std::to_string(at.size));
  }
  if (at.offset < kFileHeaderSize) {
    throw ContractError(std::string(to_string(type)) + " block cannot overlap the file header");
  }
}

void encode_array_header(std::span<std::uint8_t> block, Offset offset, BlockType type,
                         std::uint32_t entry_size, std::uint32_t entry_count) {
  encode_prefix(block, offset, type, wire::array_header::kSize);
  ArrayHeader{entry_size, entry_count}.encode(block);
}

}  // namespace detail

namespace {

template <typename Fields>
WriteReceipt write_fixed(Sink& sink, const Reservation& at, const Fields& fields) {
  constexpr std::uint8_t kSize = []() {
    if constexpr (std::is_same_v<Fields, TileTable>) {
      return wire::tile_table::kSize;
    } else {
      return wire::clinical_metadata::kSize;
    }
  }();
  detail::check_reservation(at, kSize, Fields::kBlockType);
  std::array<std::uint8_t, kSize> block{};
  encode_prefix(block, at.offset, Fields::kBlockType, kSize);
  fields.encode(block);
  sink.write_at(at.offset, block);
  return WriteReceipt{at.offset, kSize, Fields::kBlockType};
}

WriteReceipt write_wrapped(Sink& sink, const Reservation& at, BlockType type,
                           std::uint8_t fixed_size, std::span<const std::uint8_t> payload,
                           BlockType content_hint) {
  const std::uint64_t total = fixed_size + std::uint64_t{payload.size()};
  detail::check_reservation(at, total, type);
  std::vector<std::uint8_t> header(fixed_size, 0);
  encode_prefix(header, at.offset, type, fixed_size);
  if (type == BlockType::kByteArray) {
    ByteArrayHeader{payload.size(), content_hint}.encode(header);
  } else {
    store<std::uint64_t>(header, wire::icc_profile::kPayloadSize, payload.size());
  }
  sink.write_at(at.offset, header);
  if (!payload.empty()) sink.write_at(at.offset + fixed_size, payload);
  return WriteReceipt{at.offset, total, type};
}

}  // namespace

WriteReceipt write_header_block(Sink& sink, const Reservation& at, const TileTable& fields) {
  return write_fixed(sink, at, fields);
}

WriteReceipt write_header_block(Sink& sink, const Reservation& at, const ClinicalMetadata& fields) {
  return write_fixed(sink, at, fields);
}

WriteReceipt write_byte_array(Sink& sink, const Reservation& at, BlockType content_hint,
                              std::span<const std::uint8_t> payload) {
  return write_wrapped(sink, at, BlockType::kByteArray, wire::byte_array::kSize, payload,
                       content_hint);
}

WriteReceipt write_icc_profile(Sink& sink, const Reservation& at,
                               std::span<const std::uint8_t> profile) {
  return write_wrapped(sink, at, BlockType::kIccProfile, wire::icc_profile::kSize, profile,
                       BlockType::kIccProfile);
}

WriteReceipt write_tile_payload(Sink& sink, const Reservation& at,
                                std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) {
    throw ContractError("tile payloads must not be empty; mark the tile sparse");
  }
  if (at.size != bytes.size()) {
    throw ContractError("tile payload of " + std::to_string(bytes.size()) +
                        " bytes does not match its reservation of " + std::to_string(at.size));
  }
  if (at.offset < kFileHeaderSize) {
    throw ContractError("tile payload cannot overlap the file header");
  }
  sink.write_at(at.offset, bytes);
  return WriteReceipt{at.offset, bytes.size(), std::nullopt};
}

void finalize(Sink& sink, const ReservationAllocator& allocator, Offset tile_table_offset,
              Offset metadata_offset) {
  const std::uint64_t file_size = allocator.cursor();
  auto check = [&](Offset offset, const char* name) {
    if (offset < kFileHeaderSize || offset >= file_size) {
      throw ContractError(std::string(name) + " offset " + std::to_string(offset) +
                          " is unset or outside the written file");
    }
  };
  check(tile_table_offset, "tile-table");
  if (metadata_offset != 0) check(metadata_offset, "clinical-metadata");

  std::array<std::uint8_t, wire::file_header::kSize> block{};
  encode_prefix(block, 0, BlockType::kFileHeader, wire::file_header::kSize);
  FileHeader{.file_size = file_size,
             .tile_table_offset = tile_table_offset,
             .metadata_offset = metadata_offset}
      .encode(block);
  sink.write_at(0, block);
  sink.resize(file_size);
}

}  // namespace ife
