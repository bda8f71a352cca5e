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

#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ife/slide.hpp"
#include "support.hpp"

namespace ife {
namespace {

using testing::TempPath;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return Result{code, out.str(), err.str()};
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto created =
        run({"create", "--synthetic", "seed=7,layers=1x1:2x2:4x4", "--format", "raw-test",
             "--attribute", "scanner=demo", "--thumbnail", slide_.string()});
    ASSERT_EQ(created.code, 0) << created.err;
  }

  TempPath slide_{"cli.iris"};
};

TEST_F(Cli, CreateThenValidate) {
  const auto result = run({"validate", slide_.string()});
  EXPECT_EQ(result.code, 0);
  EXPECT_NE(result.out.find("OK"), std::string::npos);
}

TEST_F(Cli, CorruptRepairPipeline) {
  TempPath bad("bad.iris");
  TempPath fixed("fixed.iris");
  ASSERT_EQ(run({"corrupt", slide_.string(), "--zero-range", "0:46", bad.string()}).code, 0);
  EXPECT_EQ(run({"validate", bad.string()}).code, 1);
  const auto repaired = run({"repair", bad.string(), fixed.string(), "--json"});
  ASSERT_EQ(repaired.code, 0) << repaired.err;
  const auto report = nlohmann::json::parse(repaired.out);
  EXPECT_EQ(report["tiles_salvaged"], 21);
  EXPECT_EQ(report["tiles_lost"], 0);
  EXPECT_EQ(run({"validate", fixed.string()}).code, 0);
}

TEST_F(Cli, OtherCorruptionModes) {
  TempPath bad("flip.iris");
  ASSERT_EQ(run({"corrupt", slide_.string(), "--flip-byte", "46", bad.string()}).code, 0);
  const auto result = run({"validate", bad.string(), "--json"});
  EXPECT_EQ(result.code, 1);
  const auto report = nlohmann::json::parse(result.out);
  EXPECT_FALSE(report["ok"].get<bool>());
  EXPECT_EQ(report["findings"][0]["code"], "BAD_VALIDATION_TAG");

  TempPath cut("cut.iris");
  ASSERT_EQ(run({"corrupt", slide_.string(), "--truncate", "30", cut.string()}).code, 0);
  EXPECT_EQ(std::filesystem::file_size(cut.path()), 30u);
  EXPECT_EQ(run({"validate", cut.string()}).code, 1);
  TempPath out("cut-fixed.iris");
  EXPECT_EQ(run({"repair", cut.string(), out.string()}).code, 4);
}

TEST_F(Cli, ExtractTile) {
  TempPath tile("tile.bin");
  ASSERT_EQ(run({"extract", slide_.string(), "--tile", "4", "--out", tile.string()}).code, 0);
  const auto slide = Slide::open(slide_.path());
  const auto expected = *slide.read_tile_compressed(4);
  const auto got = slurp(tile.path());
  EXPECT_TRUE(std::equal(got.begin(), got.end(), expected.begin(), expected.end()));

  TempPath thumb("thumb.bin");
  ASSERT_EQ(
      run({"extract", slide_.string(), "--associated", "thumbnail", "--out", thumb.string()}).code,
      0);
  EXPECT_EQ(slurp(thumb.path()).size(), 64u * 64 * 3);
  EXPECT_EQ(run({"extract", slide_.string(), "--tile", "21", "--out", tile.string()}).code, 2);
}

TEST_F(Cli, InfoIsConsistentWithLibrary) {
  const auto result = run({"info", slide_.string(), "--json"});
  ASSERT_EQ(result.code, 0);
  const auto info = nlohmann::json::parse(result.out);
  const auto slide = Slide::open(slide_.path());
  EXPECT_EQ(info["total_tiles"], slide.total_tiles());
  EXPECT_EQ(info["sparse_tiles"], slide.sparse_tiles());
  EXPECT_EQ(info["layers"].size(), slide.layout().layer_count());
  EXPECT_EQ(info["layers"][2]["x_tiles"], 4);
  EXPECT_EQ(info["encoding_format"], "raw-test");
  EXPECT_EQ(info["pixel_format"], "r8g8b8");
  EXPECT_EQ(info["attributes"][0]["key"], "scanner");
  EXPECT_EQ(info["associated_images"][0]["label"], "thumbnail");
  EXPECT_EQ(info["annotation_count"], 0);

  const auto text = run({"info", slide_.string()});
  EXPECT_NE(text.out.find("total tiles:   21"), std::string::npos);
}

TEST_F(Cli, Bench) {
  const auto result = run({"bench", slide_.string(), "--batch", "100", "--batches", "3"});
  ASSERT_EQ(result.code, 0);
  EXPECT_NE(result.out.find("batch 3:"), std::string::npos);
  EXPECT_NE(result.out.find("median: ["), std::string::npos);
  const auto json = nlohmann::json::parse(
      run({"bench", slide_.string(), "--batch", "100", "--path", "compressed", "--json"}).out);
  EXPECT_EQ(json["batches"].size(), 3u);
  EXPECT_EQ(json["path"], "compressed");
}

TEST_F(Cli, Deterministic) {
  TempPath again("again.iris");
  ASSERT_EQ(run({"create", "--synthetic", "seed=7,layers=1x1:2x2:4x4", "--format", "raw-test",
                 "--attribute", "scanner=demo", "--thumbnail", again.string()})
                .code,
            0);
  EXPECT_EQ(slurp(again.path()), slurp(slide_.path()));
}

TEST_F(Cli, WorkerCountKeepsTiles) {
  TempPath parallel("parallel.iris");
  ASSERT_EQ(run({"create", "--synthetic", "seed=7,layers=1x1:2x2:4x4", "--format", "raw-test",
                 "--attribute", "scanner=demo", "--thumbnail", "--workers", "4", parallel.string()})
                .code,
            0);
  const auto a = Slide::open(slide_.path());
  const auto b = Slide::open(parallel.path());
  ASSERT_EQ(a.layout(), b.layout());
  for (std::uint64_t i = 0; i < a.layout().total_tiles(); ++i) {
    EXPECT_EQ(a.read_tile(i)->bytes, b.read_tile(i)->bytes) << i;
  }
}

TEST(CliUsage, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"create", "--synthetic", "seed=1", "x.iris"}).code, 2);
  EXPECT_EQ(run({"create", "--synthetic", "seed=1,layers=2y2", "x.iris"}).code, 2);
  EXPECT_EQ(run({"validate", "/nonexistent/slide.iris"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliCreate, PyramidFromBaseSize) {
  TempPath path("pyramid.iris");
  ASSERT_EQ(
      run({"create", "--synthetic", "seed=3,base=1000x600", "--sparse", "0", path.string()}).code,
      0);
  const auto slide = Slide::open(path.path());
  ASSERT_EQ(slide.layout().layer_count(), 3u);
  EXPECT_EQ(slide.layout().layer(2), (LayerExtent{4, 3, 4.0f}));
  EXPECT_EQ(slide.layout().layer(0), (LayerExtent{1, 1, 1.0f}));
}

}  // namespace
}  // namespace ife
