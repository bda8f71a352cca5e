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

/// @file file_view.hpp
/// @brief Immutable byte view over a container, memory-mapped or in memory.

#ifndef IFE_FILE_VIEW_HPP
#define IFE_FILE_VIEW_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ife/error.hpp"

namespace ife {

/// Cheap to copy; copies share the underlying mapping or buffer. Spans
/// handed out by views derived from a FileView stay valid for as long as any
/// copy of it is alive (borrowed views excepted, see borrow()).
class FileView {
 public:
  /// Maps the file read-only. Throws OpenError when the file cannot be read
  /// or is shorter than the file header, and CapacityError when it is
  /// larger than the host can address.
  static FileView open(const std::filesystem::path& path);

  /// Takes ownership of an in-memory container.
  static FileView from_bytes(std::vector<std::uint8_t> bytes);

  /// Wraps caller-owned memory, which must outlive every derived view.
  static FileView borrow(std::span<const std::uint8_t> bytes);

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::uint64_t size() const noexcept { return bytes_.size(); }

  /// File path, or "<memory>".
  const std::string& origin() const noexcept { return origin_; }

 private:
  FileView(std::shared_ptr<const void> owner, std::span<const std::uint8_t> bytes,
           std::string origin);

  std::shared_ptr<const void> owner_;
  std::span<const std::uint8_t> bytes_;
  std::string origin_;
};

}  // namespace ife

#endif  // IFE_FILE_VIEW_HPP
