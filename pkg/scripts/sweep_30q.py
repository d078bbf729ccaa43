"""Randomized sweep of c_2.x.y = 30 q(x, y) over small K3 lattices.

Both sides are exact: the left from the blow-up of S x S, the right from the
lattice with the derived q(delta, delta).

    python scripts/sweep_30q.py --cases 500 --max-rank 4 --seed 1
"""
import argparse
import random
import time
from dataclasses import dataclass

from hkcycles.blowup import verify30q
from hkcycles.lattice import Lattice


@dataclass
class SweepConfig:
    cases: int = 300
    max_rank: int = 4
    entry_bound: int = 10
    vector_bound: int = 3
    seed: int = 0


def random_gram(rng: random.Random, cfg: SweepConfig) -> Lattice:
    n = rng.randint(0, cfg.max_rank)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(-cfg.entry_bound, cfg.entry_bound)
    return Lattice(tuple(map(tuple, m)))


def sweep(cfg: SweepConfig) -> int:
    rng = random.Random(cfg.seed)
    failures = 0
    by_rank: dict[int, int] = {}
    t0 = time.perf_counter()
    for _ in range(cfg.cases):
        lat = random_gram(rng, cfg)
        x = [rng.randint(-cfg.vector_bound, cfg.vector_bound) for _ in range(lat.rank + 1)]
        y = [rng.randint(-cfg.vector_bound, cfg.vector_bound) for _ in range(lat.rank + 1)]
        res = verify30q(lat, x, y)
        by_rank[lat.rank] = by_rank.get(lat.rank, 0) + 1
        if not res.equal:
            failures += 1
            print(f"MISMATCH gram={lat.gram} x={x} y={y}: {res.lhs} != {res.rhs}")
    dt = time.perf_counter() - t0
    print(f"{cfg.cases} cases ({dict(sorted(by_rank.items()))} by rank), {failures} mismatches, {dt:.2f}s")
    return failures


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    raise SystemExit(1 if sweep(cfg) else 0)
