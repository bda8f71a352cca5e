# Copyright 2026 The ife Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import shutil
import subprocess

import numpy as np
import pytest

import ife
from ife.benchmark import format_report


def cli():
    path = os.environ.get("IFE_CLI") or shutil.which("ife")
    if not path:
        pytest.skip("the ife command-line tool is not available")
    return path


@pytest.fixture(scope="module")
def slide_path(tmp_path_factory):
    out = tmp_path_factory.mktemp("slides") / "synthetic.iris"
    subprocess.run(
        [cli(), "create", "--synthetic", "seed=7,layers=1x1:2x2:4x4",
         "--attribute", "scanner=demo", "--thumbnail", "--sparse", "3", str(out)],
        check=True, capture_output=True)
    return str(out)


def test_info_matches_layout(slide_path):
    summary = ife.info(slide_path)
    assert [(l["x_tiles"], l["y_tiles"]) for l in summary["layers"]] == [(1, 1), (2, 2), (4, 4)]
    assert summary["total_tiles"] == 21
    assert summary["sparse_tiles"] == 1
    assert summary["encoding_format"] == "raw-test"
    assert summary["attributes"] == {"scanner": "demo"}
    assert summary["associated_images"] == ["thumbnail"]


def test_read_tile_matches_cli(slide_path, tmp_path):
    slide = ife.open(slide_path)
    for index in range(slide.total_tiles):
        tile = ife.read_tile(slide, index)
        if index == 3:
            assert tile is None
            continue
        assert tile.shape == (256, 256, 3) and tile.dtype == np.uint8
        out = tmp_path / f"tile{index}.bin"
        subprocess.run([cli(), "extract", slide_path, "--tile", str(index), "--decode",
                        "--out", str(out)], check=True, capture_output=True)
        assert tile.tobytes() == out.read_bytes()
        assert slide.read_tile_compressed(index) == tile.tobytes()


def test_tile_index_and_range(slide_path):
    slide = ife.open(slide_path)
    assert slide.tile_index(2, 3, 3) == 20
    with pytest.raises(IndexError):
        slide.read_tile(21)


def test_invalid_file_names_first_error(slide_path, tmp_path):
    bad = tmp_path / "bad.iris"
    data = bytearray(open(slide_path, "rb").read())
    data[0] ^= 0xFF
    bad.write_bytes(bytes(data))
    with pytest.raises(ife.InvalidSlideError, match="BAD_VALIDATION_TAG"):
        ife.open(str(bad))
    assert not ife.validate(str(bad))["ok"]


def test_bench_reports_median(slide_path):
    result = ife.bench(slide_path, batch_size=200, batches=3)
    assert len(result["batches"]) == 3
    assert result["median_tiles_per_sec"] == sorted(result["batches"])[1]
    assert "median: [" in format_report(result)
