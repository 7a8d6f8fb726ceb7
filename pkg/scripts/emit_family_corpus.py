"""Write presentation documents of H_n^eps for a survey run.

    python3 scripts/emit_family_corpus.py corpus/ --n 1
    pcgroup survey corpus/ --report corpus/report.txt
"""

from __future__ import annotations

import argparse
from pathlib import Path

from pcgroup.families import EPSILONS, eps_str, family
from pcgroup.pc import write_presentation


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out")
    ap.add_argument("--n", type=int, nargs="+", default=[1])
    a = ap.parse_args()
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    for n in a.n:
        for eps in EPSILONS:
            write_presentation(family(n, eps), out / f"H{n}_{eps_str(eps)}.json")
    print(f"wrote {16 * len(a.n)} files to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
