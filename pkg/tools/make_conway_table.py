#!/usr/bin/env python3
"""Regenerate src/hermag/data/conway_polynomials.txt from the definition.

Slow (minutes); run only when the entry list changes.  The shipped file is
committed so normal installs never execute this search.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hermag.conwaygen import conway_polynomial  # noqa: E402

ENTRIES = (
    [(p, k) for p in (2, 3, 5, 7, 11, 13) for k in (1, 2, 3, 4, 6)]
    + [(2, 8), (2, 9), (2, 12), (2, 18), (3, 8), (3, 12)]
)

HEADER = """\
# Conway polynomials C(p, k) over GF(p).
# Format: p k c0 c1 ... ck   (little-endian coefficients, ck = 1)
# Regenerate with tools/make_conway_table.py; entries are re-verified
# (monic, irreducible, primitive) every time the table is loaded.
"""


def main() -> None:
    out = Path(__file__).resolve().parents[1] / "src" / "hermag" / "data" / "conway_polynomials.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    cache: dict[tuple[int, int], tuple[int, ...]] = {}
    lines = [HEADER]
    for p, k in sorted(set(ENTRIES)):
        t0 = time.time()
        coeffs = conway_polynomial(p, k, cache)
        print(f"C({p},{k}) = {coeffs}   [{time.time() - t0:.2f}s]", flush=True)
        lines.append(f"{p} {k} " + " ".join(str(c) for c in coeffs))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
