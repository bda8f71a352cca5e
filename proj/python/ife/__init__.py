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

"""Read-only access to slide containers."""

from ._ife import InvalidSlideError, Slide, open, validate

__all__ = ["InvalidSlideError", "Slide", "info", "open", "read_tile", "bench", "validate"]


def info(path):
    """Summary of a slide as plain Python values."""
    slide = open(path)
    return {
        "path": path,
        "file_size": slide.file_size,
        "encoding_format": slide.encoding_format,
        "pixel_format": slide.pixel_format,
        "tile_dimension": slide.tile_dimension,
        "layers": slide.layers,
        "total_tiles": slide.total_tiles,
        "sparse_tiles": slide.sparse_tiles,
        "attributes": slide.attributes,
        "associated_images": slide.associated_image_labels,
        "annotation_count": len(slide.annotation_ids),
    }


def read_tile(slide, index):
    """Decoded tile as a (256, 256, channels) uint8 array; None if sparse."""
    return slide.read_tile(index)


def bench(path, batch_size=10000, batches=3, seed=0, path_kind="decoded"):
    """Random-access throughput, in the same schema as `ife bench --json`."""
    return open(path).bench(batch_size, batches, seed, path_kind)
