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

/// @file sink.hpp
/// @brief Positional byte sinks that accept concurrent writes to disjoint
/// ranges.

#ifndef IFE_SINK_HPP
#define IFE_SINK_HPP

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <shared_mutex>
#include <span>
#include <vector>

#include "ife/wire.hpp"

namespace ife {

class Sink {
 public:
  virtual ~Sink() = default;

  /// Writes `bytes` at `offset`, growing the sink as needed. Safe to call
  /// from several threads as long as the written ranges do not overlap.
  virtual void write_at(Offset offset, std::span<const std::uint8_t> bytes) = 0;

  /// Sets the logical length; new bytes read as zero. Not concurrent.
  virtual void resize(std::uint64_t size) = 0;

  /// Highest end offset written so far (or the last resize()).
  virtual std::uint64_t size() const = 0;

  virtual void flush() {}
};

/// Growable in-memory sink.
class MemorySink final : public Sink {
 public:
  MemorySink() = default;

  void write_at(Offset offset, std::span<const std::uint8_t> bytes) override;
  void resize(std::uint64_t size) override;
  std::uint64_t size() const override { return size_.load(); }

  /// Current contents. Must not race with writers.
  std::span<const std::uint8_t> bytes() const {
    return {data_.data(), static_cast<std::size_t>(size_.load())};
  }

  /// Moves the contents out and leaves the sink empty.
  std::vector<std::uint8_t> take();

 private:
  mutable std::shared_mutex mutex_;
  std::vector<std::uint8_t> data_;  // capacity region; zero beyond size_
  std::atomic<std::uint64_t> size_{0};
};

/// File-backed sink using positional writes; truncates any existing file.
class FileSink final : public Sink {
 public:
  explicit FileSink(const std::filesystem::path& path);
  ~FileSink() override;

  FileSink(const FileSink&) = delete;
  FileSink& operator=(const FileSink&) = delete;

  void write_at(Offset offset, std::span<const std::uint8_t> bytes) override;
  void resize(std::uint64_t size) override;
  std::uint64_t size() const override { return size_.load(); }
  void flush() override;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  std::atomic<std::uint64_t> size_{0};
};

}  // namespace ife

#endif  // IFE_SINK_HPP
