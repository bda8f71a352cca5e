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

#include "ife/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "ife/bench.hpp"
#include "ife/encoder.hpp"
#include "ife/recovery.hpp"
#include "ife/slide.hpp"
#include "ife/validator.hpp"

namespace ife::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

std::uint64_t parse_number(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::pair<std::uint32_t, std::uint32_t> parse_pair(std::string_view text, char separator,
                                                   std::string_view what) {
  const auto at = text.find(separator);
  if (at == std::string_view::npos) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  const auto a = parse_number(text.substr(0, at), what);
  const auto b = parse_number(text.substr(at + 1), what);
  if (a > UINT32_MAX || b > UINT32_MAX) {
    throw UsageError(std::string(what) + " out of range: '" + std::string(text) + "'");
  }
  return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
}

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(separator, start);
    parts.push_back(text.substr(start, at - start));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

struct SyntheticSpec {
  std::uint64_t seed = 0;
  std::vector<LayerSpec> layers;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> base_pixels;
};

/// "seed=N,layers=WxH:WxH:..." or "seed=N,base=WIDTHxHEIGHT".
SyntheticSpec parse_synthetic(std::string_view text) {
  SyntheticSpec spec;
  for (const auto item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("synthetic spec items are key=value: '" + std::string(item) + "'");
    }
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "seed") {
      spec.seed = parse_number(value, "seed");
    } else if (key == "layers") {
      for (const auto layer : split(value, ':')) {
        const auto [x, y] = parse_pair(layer, 'x', "layer extent");
        spec.layers.push_back(LayerSpec{x, y, std::nullopt});
      }
    } else if (key == "base") {
      spec.base_pixels = parse_pair(value, 'x', "base size");
    } else {
      throw UsageError("unknown synthetic spec key '" + std::string(key) + "'");
    }
  }
  if (spec.layers.empty() == !spec.base_pixels) {
    throw UsageError("synthetic spec needs exactly one of layers= or base=");
  }
  return spec;
}

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return bytes;
}

void write_all(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

ordered_json to_json(const Finding& finding) {
  ordered_json j;
  j["severity"] = finding.severity == Severity::kError ? "ERROR" : "WARNING";
  j["code"] = to_string(finding.code);
  j["byte_offset"] = finding.byte_offset;
  j["block_type"] =
      finding.block_type ? ordered_json(to_string(*finding.block_type)) : ordered_json(nullptr);
  j["message"] = finding.message;
  return j;
}

ordered_json to_json(const ValidationReport& report) {
  ordered_json j;
  j["ok"] = report.ok();
  j["errors"] = report.error_count();
  j["warnings"] = report.warning_count();
  j["findings"] = ordered_json::array();
  for (const auto& finding : report.findings) j["findings"].push_back(to_json(finding));
  return j;
}

ordered_json to_json(const PyramidLayout& layout) {
  ordered_json layers = ordered_json::array();
  for (const auto& layer : layout.layers()) {
    layers.push_back(
        {{"x_tiles", layer.x_tiles}, {"y_tiles", layer.y_tiles}, {"scale", layer.scale}});
  }
  return layers;
}

ordered_json to_json(const SalvageReport& report) {
  return {{"candidates_found", report.candidates_found},
          {"blocks_adopted", report.blocks_adopted},
          {"total_tiles", report.total_tiles},
          {"tiles_salvaged", report.tiles_salvaged},
          {"tiles_lost", report.tiles_lost},
          {"tiles_sparse", report.tiles_sparse},
          {"bytes_recovered", report.bytes_recovered},
          {"output_size", report.output_size},
          {"conflicts", report.conflicts},
          {"notes", report.notes}};
}

ordered_json to_json(const BenchResult& result) {
  return {{"path", result.path == BenchPath::kDecoded ? "decoded" : "compressed"},
          {"batch_size", result.batch_size},
          {"batches", result.tiles_per_sec},
          {"median_tiles_per_sec", result.median_tiles_per_sec},
          {"median_tpt_ms", result.median_tpt_ms},
          {"min_tpt_ms", result.min_tpt_ms},
          {"max_tpt_ms", result.max_tpt_ms}};
}

void print_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

/// Validation of a path, tolerating files too short to map.
ValidationReport validate_path(const std::filesystem::path& path, ValidationLevel level) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot open " + path.string() + ": " + ec.message());
  if (size < kFileHeaderSize) {
    ValidationReport report;
    report.findings.push_back(
        Finding{Severity::kError, BlockType::kFileHeader, 0, FindingCode::kOutOfBounds,
                "file is " + std::to_string(size) + " bytes, shorter than the " +
                    std::to_string(kFileHeaderSize) + "-byte file header"});
    return report;
  }
  return validate(FileView::open(path), level);
}

struct CreateOptions {
  std::string synthetic;
  std::string format = "raw-test";
  std::string pixel = "r8g8b8";
  int quality = 90;
  unsigned workers = 1;
  std::string placement = "structure-first";
  std::optional<std::uint64_t> shuffle;
  std::vector<std::string> attributes;
  std::vector<std::uint64_t> sparse;
  bool thumbnail = false;
  bool json = false;
  std::string output;
};

PixelBuffer thumbnail_of(const SlideSource& source) {
  const auto data = source.tile(TileCoord{0, 0, 0});
  PixelBuffer tile;
  if (const auto* pixels = std::get_if<PixelBuffer>(&data)) {
    tile = *pixels;
  } else if (const auto* compressed = std::get_if<PrecompressedTile>(&data)) {
    tile = CodecRegistry::global()
               .require(compressed->format)
               ->decode(compressed->bytes, kTileDimension, kTileDimension, source.pixel_format());
  } else {
    tile = PixelBuffer::make(kTileDimension, kTileDimension, source.pixel_format());
  }
  constexpr std::uint32_t kSide = 64;
  constexpr std::uint32_t kStep = kTileDimension / kSide;
  const std::uint32_t channels = bytes_per_pixel(tile.pixel_format);
  auto out = PixelBuffer::make(kSide, kSide, tile.pixel_format);
  for (std::uint32_t y = 0; y < kSide; ++y) {
    for (std::uint32_t x = 0; x < kSide; ++x) {
      const std::size_t from = (std::size_t{y} * kStep * kTileDimension + x * kStep) * channels;
      const std::size_t to = (std::size_t{y} * kSide + x) * channels;
      std::copy_n(tile.bytes.begin() + from, channels, out.bytes.begin() + to);
    }
  }
  return out;
}

class WithMetadata final : public SlideSource {
 public:
  WithMetadata(std::shared_ptr<const SlideSource> inner, SlideMetadata metadata)
      : inner_(std::move(inner)), metadata_(std::move(metadata)) {}

  const PyramidLayout& layout() const override { return inner_->layout(); }
  PixelFormat pixel_format() const override { return inner_->pixel_format(); }
  TileData tile(const TileCoord& coord) const override { return inner_->tile(coord); }
  SlideMetadata metadata() const override { return metadata_; }

 private:
  std::shared_ptr<const SlideSource> inner_;
  SlideMetadata metadata_;
};

int do_create(const CreateOptions& o, std::ostream& out) {
  const auto spec = parse_synthetic(o.synthetic);
  const auto format = parse_encoding_format(o.format);
  if (!format) throw UsageError("unknown encoding format '" + o.format + "'");
  const auto pixel = parse_pixel_format(o.pixel);
  if (!pixel) throw UsageError("unknown pixel format '" + o.pixel + "'");
  EncodeParams params;
  if (o.placement == "all-at-end") {
    params.placement = Placement::kAllAtEnd;
  } else if (o.placement != "structure-first") {
    throw UsageError("unknown placement '" + o.placement + "'");
  }
  params.encoding_format = *format;
  params.quality = o.quality;
  params.worker_count = o.workers;
  params.shuffle_seed = o.shuffle;

  SlideMetadata metadata;
  for (const auto& item : o.attributes) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("attributes are KEY=VALUE: '" + item + "'");
    }
    metadata.attributes.push_back(Attribute::ascii(item.substr(0, eq), item.substr(eq + 1)));
  }

  std::shared_ptr<const SlideSource> source;
  if (spec.base_pixels) {
    const auto tiles = [](std::uint32_t pixels) {
      return std::max<std::uint32_t>(1, (pixels + kTileDimension - 1) / kTileDimension);
    };
    auto base = std::make_shared<SyntheticSource>(
        spec.seed,
        std::vector<LayerSpec>{
            {tiles(spec.base_pixels->first), tiles(spec.base_pixels->second), std::nullopt}},
        *pixel);
    base->set_sparse({o.sparse.begin(), o.sparse.end()});
    source = std::make_shared<BoxFilterPyramid>(std::move(base));
  } else {
    auto synthetic = std::make_shared<SyntheticSource>(spec.seed, spec.layers, *pixel);
    synthetic->set_sparse({o.sparse.begin(), o.sparse.end()});
    source = std::move(synthetic);
  }
  if (o.thumbnail) {
    auto thumb = thumbnail_of(*source);
    metadata.associated_images.push_back(
        AssociatedImage{ImageLabel::kThumbnail, EncodingFormat::kRawTest, thumb.pixel_format,
                        thumb.width, thumb.height, std::move(thumb.bytes)});
  }
  const WithMetadata slide(source, std::move(metadata));

  FileSink sink(o.output);
  const auto report = encode_slide(slide, params, sink);
  if (o.json) {
    print_json(out, {{"output", o.output},
                     {"file_size", report.file_size},
                     {"layers", to_json(report.layout)},
                     {"total_tiles", report.layout.total_tiles()},
                     {"tiles_written", report.tiles_written},
                     {"sparse_tiles", report.sparse_tiles},
                     {"tile_table_offset", report.tile_table_offset},
                     {"metadata_offset", report.metadata_offset}});
  } else {
    out << "wrote " << o.output << ": " << report.file_size << " bytes, " << report.tiles_written
        << " tiles, " << report.sparse_tiles << " sparse\n";
  }
  return kOk;
}

int do_validate(const std::string& path, const std::string& level_name, bool json,
                std::ostream& out) {
  ValidationLevel level = ValidationLevel::kFull;
  if (level_name == "structure") {
    level = ValidationLevel::kStructure;
  } else if (level_name != "full") {
    throw UsageError("unknown validation level '" + level_name + "'");
  }
  const auto report = validate_path(path, level);
  if (json) {
    print_json(out, to_json(report));
  } else {
    out << report.to_text();
    out << (report.ok() ? "OK" : "INVALID") << ": " << report.error_count() << " error(s), "
        << report.warning_count() << " warning(s)\n";
  }
  return report.ok() ? kOk : kValidationFailed;
}

/// Opens a slide for reading, or prints its validation report and returns
/// the exit code.
std::optional<Slide> open_slide(const std::string& path, bool json, std::ostream& out, int& code) {
  const auto report = validate_path(path, ValidationLevel::kFull);
  if (!report.ok()) {
    if (json) {
      print_json(out, {{"error", "validation failed"}, {"report", to_json(report)}});
    } else {
      out << report.to_text();
    }
    code = kValidationFailed;
    return std::nullopt;
  }
  return Slide::open(path);
}

int do_info(const std::string& path, bool json, std::ostream& out) {
  int code = kOk;
  const auto slide = open_slide(path, json, out, code);
  if (!slide) return code;
  const auto attributes = slide->read_attributes();
  if (json) {
    ordered_json j;
    j["path"] = path;
    j["file_size"] = slide->view().size();
    j["encoding_format"] = to_string(slide->encoding_format());
    j["pixel_format"] = to_string(slide->pixel_format());
    j["tile_dimension"] = slide->tile_dimension();
    j["layers"] = to_json(slide->layout());
    j["total_tiles"] = slide->total_tiles();
    j["sparse_tiles"] = slide->sparse_tiles();
    j["attributes"] = ordered_json::array();
    for (const auto& a : attributes) {
      j["attributes"].push_back({{"key", a.key}, {"value", a.value}});
    }
    j["associated_images"] = ordered_json::array();
    for (const auto& image : slide->associated_images()) {
      j["associated_images"].push_back({{"label", to_string(image.label)},
                                        {"encoding_format", to_string(image.encoding_format)},
                                        {"pixel_format", to_string(image.pixel_format)},
                                        {"width", image.width},
                                        {"height", image.height},
                                        {"payload_size", image.payload_size}});
    }
    j["icc_profile_size"] = slide->icc_profile().size();
    j["annotation_count"] = slide->annotations().size();
    j["annotation_groups"] = ordered_json::array();
    for (const auto& group : slide->annotation_groups()) {
      j["annotation_groups"].push_back({{"name", group.name}, {"members", group.members}});
    }
    j["warnings"] = slide->report().warning_count();
    print_json(out, j);
    return kOk;
  }
  out << "file:          " << path << " (" << slide->view().size() << " bytes)\n"
      << "encoding:      " << to_string(slide->encoding_format()) << '\n'
      << "pixel format:  " << to_string(slide->pixel_format()) << '\n'
      << "tile size:     " << slide->tile_dimension() << '\n'
      << "layers:        " << slide->layout().layer_count() << '\n';
  for (std::uint32_t l = 0; l < slide->layout().layer_count(); ++l) {
    const auto& layer = slide->layout().layer(l);
    out << "  layer " << l << ": " << layer.x_tiles << "x" << layer.y_tiles << " tiles, scale "
        << layer.scale << '\n';
  }
  out << "total tiles:   " << slide->total_tiles() << '\n'
      << "sparse tiles:  " << slide->sparse_tiles() << '\n'
      << "attributes:    " << attributes.size() << '\n';
  for (const auto& a : attributes) out << "  " << a.key << " = " << a.value << '\n';
  out << "images:        " << slide->associated_images().size() << '\n';
  for (const auto& image : slide->associated_images()) {
    out << "  " << to_string(image.label) << ": " << image.width << "x" << image.height << " "
        << to_string(image.encoding_format) << '\n';
  }
  out << "icc profile:   " << slide->icc_profile().size() << " bytes\n"
      << "annotations:   " << slide->annotations().size() << '\n'
      << "groups:        " << slide->annotation_groups().size() << '\n';
  for (const auto& group : slide->annotation_groups()) {
    out << "  " << group.name << ": " << group.members.size() << " member(s)\n";
  }
  if (slide->report().warning_count() > 0) {
    out << "warnings:      " << slide->report().warning_count() << '\n';
  }
  return kOk;
}

struct ExtractOptions {
  std::string input;
  std::optional<std::uint64_t> tile;
  std::optional<std::string> associated;
  std::optional<std::uint32_t> annotation;
  bool decode = false;
  std::string output;
};

int do_extract(const ExtractOptions& o, std::ostream& out) {
  const int chosen = o.tile.has_value() + o.associated.has_value() + o.annotation.has_value();
  if (chosen != 1) {
    throw UsageError("extract needs exactly one of --tile, --associated, --annotation");
  }
  int code = kOk;
  const auto slide = open_slide(o.input, false, out, code);
  if (!slide) return code;

  if (o.tile) {
    if (*o.tile >= slide->total_tiles()) {
      throw UsageError("tile " + std::to_string(*o.tile) + " is out of range (" +
                       std::to_string(slide->total_tiles()) + " tiles)");
    }
    if (!slide->tile_range(*o.tile)) {
      throw UsageError("tile " + std::to_string(*o.tile) + " is sparse");
    }
    if (o.decode) {
      write_all(o.output, slide->read_tile(*o.tile)->bytes);
    } else {
      write_all(o.output, *slide->read_tile_compressed(*o.tile));
    }
  } else if (o.associated) {
    const auto label = parse_image_label(*o.associated);
    if (!label) throw UsageError("unknown image label '" + *o.associated + "'");
    if (o.decode) {
      write_all(o.output, slide->read_associated_image(*label).pixels.bytes);
    } else {
      write_all(o.output, slide->read_associated_image_compressed(*label));
    }
  } else {
    write_all(o.output, slide->read_annotation_payload(*o.annotation));
  }
  out << "wrote " << o.output << '\n';
  return kOk;
}

struct CorruptOptions {
  std::string input;
  std::string output;
  std::vector<std::uint64_t> flips;
  std::vector<std::string> zero_ranges;
  std::optional<std::uint64_t> truncate;
};

int do_corrupt(const CorruptOptions& o, std::ostream& out) {
  if (o.flips.empty() && o.zero_ranges.empty() && !o.truncate) {
    throw UsageError("corrupt needs --flip-byte, --zero-range or --truncate");
  }
  auto bytes = read_all(o.input);
  for (const auto at : o.flips) {
    if (at >= bytes.size()) {
      throw UsageError("--flip-byte " + std::to_string(at) + " is past the end");
    }
    bytes[at] ^= 0xFF;
  }
  for (const auto& range : o.zero_ranges) {
    const auto colon = range.find(':');
    if (colon == std::string::npos) throw UsageError("--zero-range is A:B");
    const auto a = parse_number(std::string_view(range).substr(0, colon), "range start");
    const auto b = parse_number(std::string_view(range).substr(colon + 1), "range end");
    if (a > b || b > bytes.size()) {
      throw UsageError("--zero-range " + range + " is outside the file");
    }
    std::fill(bytes.begin() + a, bytes.begin() + b, 0);
  }
  if (o.truncate) {
    if (*o.truncate > bytes.size()) throw UsageError("--truncate is past the end");
    bytes.resize(*o.truncate);
  }
  write_all(o.output, bytes);
  out << "wrote " << o.output << ": " << bytes.size() << " bytes\n";
  return kOk;
}

int do_repair(const std::string& input, const std::string& output, unsigned workers, bool json,
              std::ostream& out) {
  const auto bytes = read_all(input);
  const auto candidates = scan_candidates(bytes, workers);
  const auto recovered = rebuild(bytes, candidates);
  FileSink sink(output);
  const auto report = salvage(bytes, recovered, sink, workers);
  if (json) {
    print_json(out, to_json(report));
  } else {
    out << report.to_text();
  }
  return kOk;
}

int do_bench(const std::string& path, const BenchOptions& options, bool json, std::ostream& out) {
  int code = kOk;
  const auto slide = open_slide(path, json, out, code);
  if (!slide) return code;
  const auto result = bench_random_access(*slide, options);
  if (json) {
    print_json(out, to_json(result));
    return kOk;
  }
  out << std::fixed << std::setprecision(0);
  for (std::size_t i = 0; i < result.tiles_per_sec.size(); ++i) {
    out << "batch " << i + 1 << ": " << result.tiles_per_sec[i] << " tiles/s\n";
  }
  out << "median: [" << result.median_tiles_per_sec << "] tiles/s\n"
      << std::setprecision(4) << "tile time: " << result.median_tpt_ms << " ms ["
      << result.min_tpt_ms << ", " << result.max_tpt_ms << "]\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Create, inspect, damage and repair slide containers", "ife"};
  app.set_version_flag("--version", std::string(PROJECT_VERSION_STRING));
  app.require_subcommand(1);

  CreateOptions create;
  auto* create_cmd = app.add_subcommand("create", "Encode a synthetic slide");
  create_cmd
      ->add_option("--synthetic", create.synthetic,
                   "seed=N,layers=WxH:WxH:... or seed=N,base=WIDTHxHEIGHT")
      ->required();
  create_cmd->add_option("--format", create.format, "raw-test or jpeg")->capture_default_str();
  create_cmd->add_option("--pixel", create.pixel, "r8g8b8 or r8g8b8a8")->capture_default_str();
  create_cmd->add_option("--quality", create.quality, "JPEG quality")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  create_cmd->add_option("--workers", create.workers)->check(CLI::PositiveNumber);
  create_cmd->add_option("--placement", create.placement, "structure-first or all-at-end")
      ->capture_default_str();
  create_cmd->add_option("--shuffle", create.shuffle, "shuffle tile order with a seed");
  create_cmd->add_option("--attribute", create.attributes, "KEY=VALUE");
  create_cmd->add_option("--sparse", create.sparse, "global tile index to leave empty")
      ->delimiter(',');
  create_cmd->add_flag("--thumbnail", create.thumbnail, "store a 64x64 thumbnail");
  create_cmd->add_flag("--json", create.json);
  create_cmd->add_option("output", create.output)->required();

  std::string validate_path_arg;
  std::string level = "full";
  bool validate_json = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a file");
  validate_cmd->add_option("file", validate_path_arg)->required();
  validate_cmd->add_option("--level", level, "structure or full")->capture_default_str();
  validate_cmd->add_flag("--json", validate_json);

  std::string info_path;
  bool info_json = false;
  auto* info_cmd = app.add_subcommand("info", "Describe a valid file");
  info_cmd->add_option("file", info_path)->required();
  info_cmd->add_flag("--json", info_json);

  ExtractOptions extract;
  auto* extract_cmd = app.add_subcommand("extract", "Copy a tile or payload out");
  extract_cmd->add_option("file", extract.input)->required();
  extract_cmd->add_option("--tile", extract.tile, "global tile index");
  extract_cmd->add_option("--associated", extract.associated, "thumbnail, label or macro");
  extract_cmd->add_option("--annotation", extract.annotation, "annotation identifier");
  extract_cmd->add_flag("--decode", extract.decode, "write decoded pixels");
  extract_cmd->add_option("--out", extract.output)->required();

  CorruptOptions corrupt;
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Write a damaged copy");
  corrupt_cmd->add_option("input", corrupt.input)->required();
  corrupt_cmd->add_option("output", corrupt.output)->required();
  corrupt_cmd->add_option("--flip-byte", corrupt.flips, "invert the byte at N");
  corrupt_cmd->add_option("--zero-range", corrupt.zero_ranges, "zero bytes [A, B)");
  corrupt_cmd->add_option("--truncate", corrupt.truncate, "keep the first N bytes");

  std::string repair_in;
  std::string repair_out;
  unsigned repair_workers = 1;
  bool repair_json = false;
  auto* repair_cmd = app.add_subcommand("repair", "Salvage a damaged file");
  repair_cmd->add_option("input", repair_in)->required();
  repair_cmd->add_option("output", repair_out)->required();
  repair_cmd->add_option("--workers", repair_workers)->check(CLI::PositiveNumber);
  repair_cmd->add_flag("--json", repair_json);

  std::string bench_path;
  BenchOptions bench;
  std::string bench_mode = "decoded";
  bool bench_json = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time random tile reads");
  bench_cmd->add_option("file", bench_path)->required();
  bench_cmd->add_option("--batch", bench.batch_size)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--batches", bench.batches)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_option("--path", bench_mode, "decoded or compressed")->capture_default_str();
  bench_cmd->add_flag("--json", bench_json);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("ife");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& arg : argv_storage) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*create_cmd) return do_create(create, out);
    if (*validate_cmd) return do_validate(validate_path_arg, level, validate_json, out);
    if (*info_cmd) return do_info(info_path, info_json, out);
    if (*extract_cmd) return do_extract(extract, out);
    if (*corrupt_cmd) return do_corrupt(corrupt, out);
    if (*repair_cmd) return do_repair(repair_in, repair_out, repair_workers, repair_json, out);
    if (bench_mode == "compressed") {
      bench.path = BenchPath::kCompressed;
    } else if (bench_mode != "decoded") {
      throw UsageError("unknown bench path '" + bench_mode + "'");
    }
    return do_bench(bench_path, bench, bench_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnrecoverableError& e) {
    err << "unrecoverable: " << e.what() << '\n';
    return kUnrecoverable;
  } catch (const SlideOpenError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailed;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const OpenError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CodecUnavailableError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace ife::cli
