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

#include "ife/sink.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <limits>
#include <mutex>

#include "ife/error.hpp"

namespace ife {

namespace {

void update_max(std::atomic<std::uint64_t>& target, std::uint64_t value) {
  std::uint64_t current = target.load();
  while (current < value && !target.compare_exchange_weak(current, value)) {
  }
}

std::uint64_t checked_end(Offset offset, std::size_t length) {
  if (offset > std::numeric_limits<std::uint64_t>::max() - length) {
    throw CapacityError("write range overflows 64-bit offsets");
  }
  return offset + length;
}

}  // namespace

// MARK: MemorySink

void MemorySink::write_at(Offset offset, std::span<const std::uint8_t> bytes) {
  const std::uint64_t end = checked_end(offset, bytes.size());
  if (end > std::numeric_limits<std::size_t>::max()) {
    throw CapacityError("memory sink cannot address offset " + std::to_string(end));
  }
  for (;;) {
    {
      std::shared_lock lock(mutex_);
      if (end <= data_.size()) {
        if (!bytes.empty()) {
          std::memcpy(data_.data() + offset, bytes.data(), bytes.size());
        }
        update_max(size_, end);
        return;
      }
    }
    std::unique_lock lock(mutex_);
    if (end > data_.size()) {
      const std::size_t grown =
          std::max<std::size_t>(static_cast<std::size_t>(end), data_.size() + data_.size() / 2);
      data_.resize(grown, 0);
    }
  }
}

void MemorySink::resize(std::uint64_t size) {
  std::unique_lock lock(mutex_);
  const auto new_size = static_cast<std::size_t>(size);
  if (new_size < data_.size()) {
    std::fill(data_.begin() + static_cast<std::ptrdiff_t>(new_size), data_.end(), 0);
  } else {
    data_.resize(new_size, 0);
  }
  size_.store(size);
}

std::vector<std::uint8_t> MemorySink::take() {
  std::unique_lock lock(mutex_);
  data_.resize(static_cast<std::size_t>(size_.load()));
  size_.store(0);
  return std::exchange(data_, {});
}

// MARK: FileSink

FileSink::FileSink(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw IoError("cannot create '" + path.string() + "': " + std::strerror(errno));
  }
}

FileSink::~FileSink() {
  if (fd_ >= 0) ::close(fd_);
}

void FileSink::write_at(Offset offset, std::span<const std::uint8_t> bytes) {
  const std::uint64_t end = checked_end(offset, bytes.size());
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t written =
        ::pwrite(fd_, bytes.data() + done, bytes.size() - done, static_cast<off_t>(offset + done));
    if (written < 0) {
      if (errno == EINTR) continue;
      throw IoError("write to '" + path_.string() + "' at offset " + std::to_string(offset + done) +
                    " failed: " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(written);
  }
  update_max(size_, end);
}

void FileSink::resize(std::uint64_t size) {
  if (::ftruncate(fd_, static_cast<off_t>(size)) != 0) {
    throw IoError("cannot resize '" + path_.string() + "': " + std::strerror(errno));
  }
  size_.store(size);
}

void FileSink::flush() {
  if (::fsync(fd_) != 0) {
    throw IoError("cannot flush '" + path_.string() + "': " + std::strerror(errno));
  }
}

}  // namespace ife
