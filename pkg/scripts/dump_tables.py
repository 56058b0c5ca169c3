"""Write the C_p table, kernel dimensions and Lambda matrices for one example.

    python3 scripts/dump_tables.py a1 out_dir/
"""

import sys
from pathlib import Path

from dixmier.cli import main as cli


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print(__doc__, file=sys.stderr)
        return 2
    example, out = argv
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for command in ("table", "kernel", "lambda"):
        status |= cli([command, "--example", example, "--out", str(out / f"{example}-{command}.json")])
    return status


if __name__ == "__main__":
    sys.exit(main())
