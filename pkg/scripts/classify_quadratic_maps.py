"""Partition the sixteen eps into pseudo-isometry classes and show one witness each."""

from __future__ import annotations

import time

from pcgroup.families import eps_str
from pcgroup.quadform import classify_epsilons, gl


def main() -> int:
    t0 = time.perf_counter()
    print(f"|GL(4,2)| = {len(gl(4))}")
    cls = classify_epsilons()
    for i, c in enumerate(cls.classes):
        print(f"class {i}: " + " ".join(eps_str(e) for e in c))
        for e in c[1:]:
            src, w = cls.witnesses[e]
            g = " ".join("".join(map(str, r)) for r in w.g)
            h = " ".join("".join(map(str, r)) for r in w.h)
            print(f"    {eps_str(src)} -> {eps_str(e)}  g = {g}  h = {h}")
    print(f"{time.perf_counter() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
