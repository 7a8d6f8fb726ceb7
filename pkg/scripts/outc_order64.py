"""|Aut|, |Aut_c|, |Inn| and |Out_c| for all sixteen H_1^eps (order 64).

The exact orders have no published value; this script is where they come from.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from pcgroup.automorphism import out_c
from pcgroup.families import EPSILONS, eps_str, family
from pcgroup.quadform import classify_epsilons


@dataclass
class Config:
    n: int = 1
    cap: int = 128


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--cap", type=int, default=Config.cap)
    a = ap.parse_args()
    cfg = Config(a.n, a.cap)

    cls = classify_epsilons()
    print(f"{'eps':6} {'class':>5} {'|Aut|':>7} {'|Aut_c|':>8} {'|Inn|':>6} {'|Out_c|':>8} {'sec':>6}")
    for eps in EPSILONS:
        t0 = time.perf_counter()
        r = out_c(family(cfg.n, eps), cfg.cap)
        print(f"{eps_str(eps):6} {cls.class_of(eps):>5} {r.aut_order:>7} {r.aut_c_order:>8} "
              f"{r.inn_order:>6} {r.order:>8} {time.perf_counter() - t0:>6.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
