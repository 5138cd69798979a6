"""Write the six figure datasets and a manifest into a directory.

    python3 scripts/reproduce_figures.py [out_dir] [--jobs N]
"""

import argparse
import json
import sys
from pathlib import Path

from multiphoton.cli import run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", nargs="?", default="figures")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    code = run(["figures", "--out", args.out_dir, "--jobs", str(args.jobs)], sys.stdout, sys.stderr)
    if code:
        return code
    manifest = json.loads((Path(args.out_dir) / "manifest.json").read_text())
    print(json.dumps(manifest, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
