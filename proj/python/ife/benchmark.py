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

"""Times random tile reads in batches and reports the median rate."""

import argparse
import json
import sys

import ife


def format_report(result):
    lines = [
        f"batch {i + 1}: {rate:.0f} tiles/s" for i, rate in enumerate(result["batches"])
    ]
    lines.append(f"median: [{result['median_tiles_per_sec']:.0f}] tiles/s")
    lines.append(
        f"tile time: {result['median_tpt_ms']:.4g} ms "
        f"[{result['min_tpt_ms']:.4g}, {result['max_tpt_ms']:.4g}]"
    )
    return "\n".join(lines)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="ife-bench", description=__doc__)
    parser.add_argument("file")
    parser.add_argument("--batch", type=int, default=10000)
    parser.add_argument("--batches", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--path", choices=["decoded", "compressed"], default="decoded")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    result = ife.bench(args.file, args.batch, args.batches, args.seed, args.path)
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        print(format_report(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
