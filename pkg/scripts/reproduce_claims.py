"""Run every desk-scale structural check on the families and print a summary.

    python3 scripts/reproduce_claims.py --n-max 6
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from pcgroup.claims import drop_relation, run_claims


@dataclass
class Config:
    n_max: int = 6
    outc: bool = True
    corrupt: str | None = None
    json_out: str | None = None


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--skip-outc", action="store_true")
    ap.add_argument("--corrupt", help="drop one relation, e.g. conj:1,6")
    ap.add_argument("--json-out")
    a = ap.parse_args()
    cfg = Config(a.n_max, not a.skip_outc, a.corrupt, a.json_out)

    t0 = time.perf_counter()
    claims = run_claims(cfg.n_max, drop_relation(cfg.corrupt) if cfg.corrupt else None, cfg.outc)
    for c in claims:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.checked}]  {c.values or ''}")
        for d in c.details:
            print("    " + d)
    print(f"{time.perf_counter() - t0:.1f}s")
    if cfg.json_out:
        with open(cfg.json_out, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "claims": [asdict(c) for c in claims]}, fh, indent=2)
    return 0 if all(c.passed for c in claims) else 1


if __name__ == "__main__":
    raise SystemExit(main())
