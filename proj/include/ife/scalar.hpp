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

/// @file scalar.hpp
/// @brief Little-endian scalar serialization.
///
/// Every multi-byte field on disk is little-endian and every floating-point
/// field is an IEEE-754 bit pattern. These helpers are the only place the
/// library touches raw field bytes, and they never assume host alignment.

#ifndef IFE_SCALAR_HPP
#define IFE_SCALAR_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <limits>
#include <span>
#include <string>
#include <type_traits>

#include "ife/error.hpp"

namespace ife {

static_assert(std::numeric_limits<float>::is_iec559, "binary32 floats are required");
static_assert(std::numeric_limits<double>::is_iec559, "binary64 floats are required");

template <typename T>
concept WireScalar =
    (std::is_integral_v<T> || std::is_same_v<T, float> || std::is_same_v<T, double>) &&
    (sizeof(T) == 1 || sizeof(T) == 2 || sizeof(T) == 4 || sizeof(T) == 8);

namespace detail {

[[noreturn]] inline void throw_range(std::size_t offset, std::size_t width, std::size_t size) {
  throw RangeError("scalar access of " + std::to_string(width) + " bytes at offset " +
                   std::to_string(offset) + " exceeds buffer of " + std::to_string(size) +
                   " bytes");
}

inline bool in_bounds(std::size_t offset, std::size_t width, std::size_t size) noexcept {
  return offset <= size && width <= size - offset;
}

template <typename T>
T load_unchecked(const std::uint8_t* src) noexcept {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, src, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(raw, raw + sizeof(T));
  }
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

template <typename T>
void store_unchecked(std::uint8_t* dst, T value) noexcept {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(raw, raw + sizeof(T));
  }
  std::memcpy(dst, raw, sizeof(T));
}

}  // namespace detail

/// Reads a little-endian T at `offset`. Throws RangeError when the field does
/// not fit in `bytes`.
template <WireScalar T>
T load(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (!detail::in_bounds(offset, sizeof(T), bytes.size())) {
    detail::throw_range(offset, sizeof(T), bytes.size());
  }
  return detail::load_unchecked<T>(bytes.data() + offset);
}

/// Writes `value` little-endian at `offset`. Throws RangeError when the field
/// does not fit in `bytes`.
template <WireScalar T>
void store(std::span<std::uint8_t> bytes, std::size_t offset, T value) {
  if (!detail::in_bounds(offset, sizeof(T), bytes.size())) {
    detail::throw_range(offset, sizeof(T), bytes.size());
  }
  detail::store_unchecked<T>(bytes.data() + offset, value);
}

/// Width-parameterised integer form used by generic tooling. `width` must be
/// 2, 4 or 8; narrower widths keep the low-order bytes of `value`.
inline void put_scalar(std::span<std::uint8_t> bytes, std::size_t offset, std::uint64_t value,
                       unsigned width) {
  switch (width) {
    case 2:
      store<std::uint16_t>(bytes, offset, static_cast<std::uint16_t>(value));
      return;
    case 4:
      store<std::uint32_t>(bytes, offset, static_cast<std::uint32_t>(value));
      return;
    case 8:
      store<std::uint64_t>(bytes, offset, value);
      return;
    default:
      throw ContractError("scalar width must be 2, 4 or 8, got " + std::to_string(width));
  }
}

inline std::uint64_t get_scalar(std::span<const std::uint8_t> bytes, std::size_t offset,
                                unsigned width) {
  switch (width) {
    case 2:
      return load<std::uint16_t>(bytes, offset);
    case 4:
      return load<std::uint32_t>(bytes, offset);
    case 8:
      return load<std::uint64_t>(bytes, offset);
    default:
      throw ContractError("scalar width must be 2, 4 or 8, got " + std::to_string(width));
  }
}

}  // namespace ife

#endif  // IFE_SCALAR_HPP
