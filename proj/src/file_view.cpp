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

#include "ife/file_view.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <limits>

#include "ife/wire.hpp"

namespace ife {

namespace {

class Mapping {
 public:
  Mapping(void* address, std::size_t length) : address_(address), length_(length) {}
  ~Mapping() { ::munmap(address_, length_); }
  Mapping(const Mapping&) = delete;
  Mapping& operator=(const Mapping&) = delete;

  const std::uint8_t* data() const { return static_cast<const std::uint8_t*>(address_); }

 private:
  void* address_;
  std::size_t length_;
};

void require_header_room(std::uint64_t size, const std::string& origin) {
  if (size < kFileHeaderSize) {
    throw OpenError("'" + origin + "' is " + std::to_string(size) + " bytes, shorter than the " +
                    std::to_string(kFileHeaderSize) + "-byte file header");
  }
}

}  // namespace

FileView::FileView(std::shared_ptr<const void> owner, std::span<const std::uint8_t> bytes,
                   std::string origin)
    : owner_(std::move(owner)), bytes_(bytes), origin_(std::move(origin)) {}

FileView FileView::open(const std::filesystem::path& path) {
  const std::string origin = path.string();
  const int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) {
    throw OpenError("cannot open '" + origin + "': " + std::strerror(errno));
  }
  struct stat info{};
  if (::fstat(fd, &info) != 0) {
    const int error = errno;
    ::close(fd);
    throw OpenError("cannot stat '" + origin + "': " + std::strerror(error));
  }
  const auto size = static_cast<std::uint64_t>(info.st_size);
  try {
    require_header_room(size, origin);
    if (size > std::numeric_limits<std::size_t>::max()) {
      throw CapacityError("'" + origin + "' is " + std::to_string(size) +
                          " bytes, beyond this host's address space");
    }
  } catch (...) {
    ::close(fd);
    throw;
  }
  const auto length = static_cast<std::size_t>(size);
  void* address = ::mmap(nullptr, length, PROT_READ, MAP_SHARED, fd, 0);
  const int error = errno;
  ::close(fd);
  if (address == MAP_FAILED) {
    throw OpenError("cannot map '" + origin + "': " + std::strerror(error));
  }
  auto mapping = std::make_shared<const Mapping>(address, length);
  const std::span<const std::uint8_t> bytes(mapping->data(), length);
  return FileView(std::move(mapping), bytes, origin);
}

FileView FileView::from_bytes(std::vector<std::uint8_t> bytes) {
  require_header_room(bytes.size(), "<memory>");
  auto owned = std::make_shared<const std::vector<std::uint8_t>>(std::move(bytes));
  const std::span<const std::uint8_t> view(owned->data(), owned->size());
  return FileView(std::move(owned), view, "<memory>");
}

FileView FileView::borrow(std::span<const std::uint8_t> bytes) {
  require_header_room(bytes.size(), "<memory>");
  return FileView(nullptr, bytes, "<memory>");
}

}  // namespace ife
