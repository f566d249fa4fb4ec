"""Tabulate generator counting polynomials of the surjection and Barratt-Eccles complexes."""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from typing import List

from multichain.surjection import counting_polynomial_be, counting_polynomial_sur


@dataclass
class CountingConfig:
    ks: List[int] = field(default_factory=lambda: [2, 3, 4])
    ds: List[int] = field(default_factory=lambda: [2, 3])
    be_budget: int = 200_000  # skip BE cases whose total would exceed this many simplices
    out: str = ""


def run(cfg: CountingConfig) -> list:
    rows = []
    for k in cfg.ks:
        for d in cfg.ds:
            t0 = time.perf_counter()
            sur = counting_polynomial_sur(k, d)
            t1 = time.perf_counter()
            row = {"k": k, "d": d, "sur": sur.factored(), "sur_total": sur.total, "sur_s": round(t1 - t0, 3)}
            # crude size guard: the BE count grows like (k!)^(C(k,2)(d-1))
            if k ** (k * (k - 1) // 2 * (d - 1)) <= cfg.be_budget:
                be = counting_polynomial_be(k, d)
                row.update(be=be.factored(), be_total=be.total, be_s=round(time.perf_counter() - t1, 3))
            rows.append(row)
            print(f"k={k} d={d}  Pchi = {row['sur']:<40} PB = {row.get('be', 'skipped')}")
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ks", type=int, nargs="+", default=CountingConfig().ks)
    ap.add_argument("--ds", type=int, nargs="+", default=CountingConfig().ds)
    ap.add_argument("--out", default="")
    cfg = CountingConfig(**vars(ap.parse_args()))
    rows = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
