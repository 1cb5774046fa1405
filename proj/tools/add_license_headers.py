#!/usr/bin/env python3
"""Prepend the Apache-2.0 header to every .h/.cc file that lacks it."""
import pathlib
import sys

HEADER = """// Copyright 2026 The Tabletop Authors
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

"""

SKIP = {"vendor", "build", "examples", ".git"}


def main() -> int:
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".").resolve()
    changed = 0
    for path in sorted(root.rglob("*")):
        if path.suffix not in (".h", ".cc") or SKIP & set(path.relative_to(root).parts):
            continue
        text = path.read_text()
        if text.startswith("// Copyright 2026 The Tabletop Authors"):
            continue
        path.write_text(HEADER + text)
        changed += 1
    print(f"added headers to {changed} files")
    return 0


if __name__ == "__main__":
    sys.exit(main())
