"""Scan lambda and report where Eff_lambda sits strictly inside its dual.

For each lambda on a grid, prints the dual cone, the containment verdict and
c_2 against both effective rays, then the exact threshold where
c . (g^2 - lambda c) changes sign.

    python scripts/lambda_scan.py --lo 0 --hi 2 --steps 10
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from hkcycles import fano
from hkcycles.cones import contains, dual_cone, eff_cone, fano_pairing
from hkcycles.qq import fmt, qq


@dataclass
class ScanConfig:
    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(2)
    steps: int = 10


def scan(cfg: ScanConfig):
    m = fano_pairing()
    c2 = fano.c2().vector()
    print(f"{'lambda':>7}  {'dual rays':<22} {'verdict':<30} c2.c  c2.(g2-lc)")
    for i in range(cfg.steps + 1):
        lam = cfg.lo + (cfg.hi - cfg.lo) * Fraction(i, cfg.steps)
        eff = eff_cone(lam)
        try:
            nef = dual_cone(eff, m)
        except ValueError as err:
            print(f"{fmt(lam):>7}  {err}")
            continue
        rays = str([list(r.v) for r in nef.rays])
        print(f"{fmt(lam):>7}  {rays:<22} {contains(nef, eff).value:<30} {fmt(m(c2, (0, 1))):>4}  {fmt(m(c2, (1, -lam)))}")
    # c . (g^2 - lam c) = m01 - lam m11 vanishes here
    threshold = m.m[0][1] / m.m[1][1]
    print(f"\nEff_lambda can lie inside its dual only for lambda <= {fmt(threshold)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=qq, default=Fraction(0))
    ap.add_argument("--hi", type=qq, default=Fraction(2))
    ap.add_argument("--steps", type=int, default=10)
    scan(ScanConfig(**vars(ap.parse_args())))
