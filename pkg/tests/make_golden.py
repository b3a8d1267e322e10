"""Regenerate the golden CLI output files from GOLDEN_CASES."""

import contextlib
import io
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from golden_cases import GOLDEN_CASES

from lqt.cli import main


def regenerate() -> None:
    golden_dir = os.path.join(os.path.dirname(__file__), "golden")
    os.makedirs(golden_dir, exist_ok=True)
    for filename, argv in GOLDEN_CASES:
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = main(argv)
        if code != 0:
            raise SystemExit(f"{filename}: exit code {code} for {argv}")
        path = os.path.join(golden_dir, filename)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(buffer.getvalue())
        print(f"wrote {path}")


if __name__ == "__main__":
    regenerate()
