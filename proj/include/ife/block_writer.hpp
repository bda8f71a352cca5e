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

/// @file block_writer.hpp
/// @brief Block serialization into a sink with lock-free space reservation.
///
/// Writing a file is a two-phase affair. Any number of threads first call
/// ReservationAllocator::reserve() and write tile payloads into the ranges
/// they got back. Once every payload has landed, a single thread writes the
/// structural blocks and calls finalize(), which fills the 46-byte header
/// placeholder at offset 0.

#ifndef IFE_BLOCK_WRITER_HPP
#define IFE_BLOCK_WRITER_HPP

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ife/error.hpp"
#include "ife/sink.hpp"
#include "ife/wire.hpp"

namespace ife {

struct Reservation {
  Offset offset = 0;
  std::uint64_t size = 0;
};

/// Hands out disjoint byte ranges from an atomic cursor that starts right
/// after the file header.
class ReservationAllocator {
 public:
  /// Largest cursor value the allocator will hand out.
  static constexpr std::uint64_t kCapacity = std::uint64_t{1} << 63;

  explicit ReservationAllocator(Offset start = kFileHeaderSize) : cursor_(start) {}

  /// Returns the start of a fresh [offset, offset + size) range. Throws
  /// ContractError for size 0 and CapacityError past kCapacity.
  Offset reserve(std::uint64_t size);

  Reservation reserve_range(std::uint64_t size) { return Reservation{reserve(size), size}; }

  Offset cursor() const noexcept { return cursor_.load(); }

 private:
  std::atomic<std::uint64_t> cursor_;
};

struct WriteReceipt {
  Offset offset = 0;
  std::uint64_t size = 0;
  std::optional<BlockType> block_type;  // nullopt for tile payloads

  bool is_tile() const noexcept { return !block_type.has_value(); }
  bool operator==(const WriteReceipt&) const = default;
};

std::uint64_t array_block_size(std::uint32_t entry_size, std::uint64_t entry_count);
std::uint64_t byte_array_block_size(std::uint64_t payload_size);
std::uint64_t icc_block_size(std::uint64_t payload_size);

WriteReceipt write_header_block(Sink& sink, const Reservation& at, const TileTable& fields);
WriteReceipt write_header_block(Sink& sink, const Reservation& at, const ClinicalMetadata& fields);

/// Writes a BYTE_ARRAY block; the payload starts at at.offset + 24.
WriteReceipt write_byte_array(Sink& sink, const Reservation& at, BlockType content_hint,
                              std::span<const std::uint8_t> payload);

/// Writes an ICC_PROFILE block; the profile starts at at.offset + 22.
WriteReceipt write_icc_profile(Sink& sink, const Reservation& at,
                               std::span<const std::uint8_t> profile);

/// Copies a tile payload verbatim. Empty payloads are rejected: a tile with
/// no bytes must be recorded as sparse instead.
WriteReceipt write_tile_payload(Sink& sink, const Reservation& at,
                                std::span<const std::uint8_t> bytes);

namespace detail {

void check_reservation(const Reservation& at, std::uint64_t needed, BlockType type);
void encode_array_header(std::span<std::uint8_t> block, Offset offset, BlockType type,
                         std::uint32_t entry_size, std::uint32_t entry_count);

}  // namespace detail

/// Serializes an array block. `entry_size` may exceed the entry type's
/// minimum; the extra bytes of each entry are zero.
template <ArrayEntry Entry>
WriteReceipt write_array_block(Sink& sink, const Reservation& at, std::uint32_t entry_size,
                               std::span<const Entry> entries) {
  if (entry_size < Entry::kMinEntrySize) {
    throw ContractError(std::string(to_string(Entry::kBlockType)) + " entry size " +
                        std::to_string(entry_size) + " is below the minimum of " +
                        std::to_string(Entry::kMinEntrySize));
  }
  if (entries.size() > UINT32_MAX) {
    throw ContractError("array block holds more than 2^32-1 entries");
  }
  const std::uint64_t total = array_block_size(entry_size, entries.size());
  detail::check_reservation(at, total, Entry::kBlockType);

  std::vector<std::uint8_t> block(static_cast<std::size_t>(total), 0);
  detail::encode_array_header(block, at.offset, Entry::kBlockType, entry_size,
                              static_cast<std::uint32_t>(entries.size()));
  std::size_t cursor = wire::array_header::kSize;
  for (const Entry& entry : entries) {
    entry.encode(std::span(block).subspan(cursor, entry_size));
    cursor += entry_size;
  }
  sink.write_at(at.offset, block);
  return WriteReceipt{at.offset, total, Entry::kBlockType};
}

template <ArrayEntry Entry>
WriteReceipt write_array_block(Sink& sink, const Reservation& at, std::span<const Entry> entries) {
  return write_array_block<Entry>(sink, at, Entry::kMinEntrySize, entries);
}

/// Writes the FILE_HEADER at offset 0 with file_size equal to the
/// allocator's cursor, then sizes the sink to match. Repeating the call
/// produces the same bytes. A metadata_offset of 0 marks metadata absent.
void finalize(Sink& sink, const ReservationAllocator& allocator, Offset tile_table_offset,
              Offset metadata_offset);

}  // namespace ife

#endif  // IFE_BLOCK_WRITER_HPP
