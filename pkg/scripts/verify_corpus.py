"""Run the full verification matrix and write it as JSON plus a text summary."""

import argparse
import sys
import time
from pathlib import Path

from cosetlab.config import Caps
from cosetlab.verify import DEFAULT_CORPUS, corpus_entries, dumps, format_matrix, matrix_ok, run_verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="verify_matrix.json")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--max-order", type=int, default=24)
    ap.add_argument("groups", nargs="*", help="preset names (default: the built-in corpus)")
    args = ap.parse_args()

    t0 = time.perf_counter()
    matrix = run_verify(corpus_entries(args.groups or DEFAULT_CORPUS), Caps(max_order=args.max_order), args.jobs)
    Path(args.out).write_text(dumps(matrix), encoding="utf-8")
    sys.stdout.write(format_matrix(matrix))
    print(f"wrote {args.out} in {time.perf_counter() - t0:.1f}s")
    return 0 if matrix_ok(matrix) else 1


if __name__ == "__main__":
    sys.exit(main())
