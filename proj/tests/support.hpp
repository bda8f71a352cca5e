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

#ifndef IFE_TESTS_SUPPORT_HPP
#define IFE_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ife/encoder.hpp"
#include "ife/file_view.hpp"
#include "ife/source.hpp"

namespace ife::testing {

inline constexpr std::uint64_t kFixtureSeed = 7;

inline SyntheticSource fixture_source(std::uint64_t seed = kFixtureSeed) {
  return SyntheticSource(seed, {{1, 1}, {2, 2}, {4, 4}});
}

struct Encoded {
  std::vector<std::uint8_t> bytes;
  EncodeReport report;

  FileView view() const { return FileView::borrow(bytes); }
};

inline Encoded encode(const SlideSource& source, EncodeParams params = {}) {
  MemorySink sink;
  auto report = encode_slide(source, params, sink);
  return Encoded{sink.take(), std::move(report)};
}

inline Encoded fixture(EncodeParams params = {}) { return encode(fixture_source(), params); }

/// Metadata touching every optional block.
inline SlideMetadata full_metadata() {
  SlideMetadata md;
  md.attributes.push_back(Attribute::ascii("scanner", "demo"));
  md.attributes.push_back(Attribute::dicom(0x0010, 0x0010, "Doe^Jane"));
  md.associated_images.push_back(AssociatedImage{ImageLabel::kThumbnail, EncodingFormat::kRawTest,
                                                 PixelFormat::kR8G8B8, 64, 48,
                                                 std::vector<std::uint8_t>(64 * 48 * 3, 0x5A)});
  md.icc_profile = {0x00, 0x00, 0x02, 0x0C, 'l', 'c', 'm', 's'};
  md.annotations.push_back(Annotation{1,
                                      AnnotationType::kTextUtf8,
                                      0.25f,
                                      0.5f,
                                      0.5f,
                                      0.25f,
                                      32,
                                      32,
                                      {'t', 'u', 'm', 'o', 'r'},
                                      0});
  md.annotations.push_back(
      Annotation{2, AnnotationType::kSvg, 0.1f, 0.1f, 0.2f, 0.2f, 16, 16, {'<', '/', '>'}, 1});
  md.annotation_groups.push_back(AnnotationGroup{"regions", {1, 2}});
  return md;
}

/// A temporary path removed on destruction.
class TempPath {
 public:
  explicit TempPath(const std::string& name) {
    std::random_device rd;
    path_ =
        std::filesystem::temp_directory_path() / ("ife-test-" + std::to_string(rd()) + "-" + name);
  }
  ~TempPath() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempPath(const TempPath&) = delete;
  TempPath& operator=(const TempPath&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string string() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace ife::testing

#endif  // IFE_TESTS_SUPPORT_HPP
