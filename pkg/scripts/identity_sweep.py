"""Random sweep of the chain-level identities (EZ/AW square, chain maps, cup algebra) over Z."""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from multichain.exactlin import parse_ring
from multichain.ezaw import check_identities
from multichain.msets import StandardMultisimplex
from multichain.surjection import Surjection


@dataclass
class SweepConfig:
    samples: int = 1000
    max_degree: int = 4
    seed: int = 0
    ring: str = "Z"


def instances():
    return {"Sur(2)": Surjection(2), "Sur(3)": Surjection(3),
            "Delta(2,1,1)": StandardMultisimplex((2, 1, 1)), "Delta(1,2)": StandardMultisimplex((1, 2))}


def run(cfg: SweepConfig) -> int:
    rng = random.Random(cfg.seed)
    ring = parse_ring(cfg.ring)
    total_failures = 0
    for name, X in instances().items():
        pool = [x for n in range(cfg.max_degree + 1) for x in X.basis(n)]
        fails: Counter = Counter()
        t0 = time.perf_counter()
        for _ in range(cfg.samples):
            for check in check_identities(X, rng.choice(pool), ring, rng):
                fails[check] += 1
        dt = time.perf_counter() - t0
        total_failures += sum(fails.values())
        print(f"{name:<14} {cfg.samples} inputs in {dt:.1f}s  failures: {dict(fails) or 'none'}")
    return total_failures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(default), default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    raise SystemExit(1 if run(cfg) else 0)


if __name__ == "__main__":
    main()
