"""Exact 2-dimensional polyhedral cones with a symmetric pairing.

The ambient space is the numerical class space N with basis (g^2, c). The
pseudoeffective cone is modelled as ``Eff_lam = cone(c, g^2 - lam*c)`` with
``lam`` unknown inside an interval; nef classes form its dual under the
intersection pairing.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .chern import Poly
from .qq import ParseError, qq, qvec

BASIS = ("g2", "c")


def _det(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Ray2:
    """Primitive integer direction. Direction is kept: ``-v`` is another ray."""

    v: tuple[int, int]

    def __post_init__(self):
        q = qvec(self.v)
        if len(q) != 2:
            raise ValueError("rays live in a 2-dimensional space")
        if not any(q):
            raise ValueError("the zero vector is not a ray")
        den = lcm(q[0].denominator, q[1].denominator)
        ints = [int(x * den) for x in q]
        g = gcd(*ints)
        object.__setattr__(self, "v", (ints[0] // g, ints[1] // g))

    def __getitem__(self, i):
        return self.v[i]

    def __iter__(self):
        return iter(self.v)


class Cone2:
    """Salient cone spanned by zero, one or two rays.

    Two rays are stored counterclockwise (``det(r0, r1) > 0``), which makes
    equality and golden output canonical.
    """

    __slots__ = ("rays",)

    def __init__(self, rays: Sequence = ()):
        rs = [r if isinstance(r, Ray2) else Ray2(tuple(r)) for r in rays]
        if len(rs) > 2:
            raise ValueError("a 2-dimensional salient cone has at most two extremal rays")
        if len(rs) == 2:
            d = _det(rs[0], rs[1])
            if d == 0:
                if rs[0] == rs[1]:
                    raise ValueError("rays are proportional; pass a single ray")
                raise ValueError("cone is not salient (contains a line)")
            if d < 0:
                rs = [rs[1], rs[0]]
        self.rays = tuple(rs)

    def __eq__(self, other):
        return isinstance(other, Cone2) and self.rays == other.rays

    def __hash__(self):
        return hash(self.rays)

    def __repr__(self):
        return f"Cone2({[r.v for r in self.rays]})"

    def contains_point(self, y) -> bool:
        return _locate(self, qvec(y)) != "outside"

    def to_json(self) -> dict:
        return {"basis": list(BASIS), "rays": [list(r.v) for r in self.rays]}

    @classmethod
    def from_json(cls, data) -> "Cone2":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as err:
                raise ParseError(f"invalid cone JSON: {err.msg}", err.pos) from None
        if isinstance(data, list):
            data = {"rays": data}
        if not isinstance(data, dict) or "rays" not in data:
            raise ParseError("cone JSON needs a 'rays' key")
        basis = tuple(data.get("basis", BASIS))
        if basis != BASIS:
            raise ParseError(f"unsupported basis {list(basis)}; expected {list(BASIS)}")
        try:
            return cls([tuple(qq(x) for x in r) for r in data["rays"]])
        except (TypeError, ValueError) as err:
            raise ParseError(f"invalid cone: {err}") from None


@dataclass(frozen=True)
class Pairing2:
    m: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    def __post_init__(self):
        m = tuple(qvec(row) for row in self.m)
        if len(m) != 2 or any(len(row) != 2 for row in m):
            raise ValueError("pairing must be 2x2")
        if m[0][1] != m[1][0]:
            raise ValueError("pairing must be symmetric")
        object.__setattr__(self, "m", m)

    def __call__(self, x, y):
        return sum(x[i] * self.m[i][j] * y[j] for i in range(2) for j in range(2))

    def covector(self, r) -> tuple[Fraction, Fraction]:
        return (self.m[0][0] * r[0] + self.m[0][1] * r[1], self.m[1][0] * r[0] + self.m[1][1] * r[1])

    @property
    def det(self) -> Fraction:
        return self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]


def fano_pairing() -> Pairing2:
    from .fano import pairing_matrix

    return Pairing2(pairing_matrix())


def dual_cone(cone: Cone2, p: Pairing2) -> Cone2:
    """``{y : <y, r> >= 0 for every ray r}``, computed from the two walls."""
    if p.det == 0:
        raise ValueError("singular pairing")
    if len(cone.rays) < 2:
        raise ValueError("dual of a cone with fewer than two rays is not salient")
    r0, r1 = cone.rays
    f0, f1 = p.covector(r0), p.covector(r1)
    u0 = (-f0[1], f0[0])  # kills f0
    if f1[0] * u0[0] + f1[1] * u0[1] < 0:
        u0 = (-u0[0], -u0[1])
    u1 = (-f1[1], f1[0])
    if f0[0] * u1[0] + f0[1] * u1[1] < 0:
        u1 = (-u1[0], -u1[1])
    return Cone2([u0, u1])


def _locate(cone: Cone2, y) -> str:
    """'interior', 'boundary' or 'outside' (relative to R^2; 0 is boundary)."""
    if not any(y):
        return "boundary"
    if not cone.rays:
        return "outside"
    if len(cone.rays) == 1:
        u = cone.rays[0]
        on_line = _det(u, y) == 0 and u[0] * y[0] + u[1] * y[1] > 0
        return "boundary" if on_line else "outside"
    u0, u1 = cone.rays
    a, b = _det(u0, y), _det(y, u1)
    if a < 0 or b < 0:
        return "outside"
    return "interior" if a > 0 and b > 0 else "boundary"


class Containment(str, enum.Enum):
    STRICT = "strictly-contains"
    EQUAL = "equal"
    SHARED_BOUNDARY = "contains-with-shared-boundary"
    NO = "no"


def contains(a: Cone2, b: Cone2) -> Containment:
    """Does ``a`` contain ``b``? Decided by exact sign tests on b's rays."""
    if a == b:
        return Containment.EQUAL
    where = [_locate(a, r.v) for r in b.rays]
    if "outside" in where:
        return Containment.NO
    if all(w == "interior" for w in where):
        return Containment.STRICT
    return Containment.SHARED_BOUNDARY


def properly_contains(a: Cone2, b: Cone2) -> bool:
    return contains(a, b) in (Containment.STRICT, Containment.SHARED_BOUNDARY)


# ---------------------------------------------------------------------------
# The lambda-family of effective cones


def eff_cone(lam) -> Cone2:
    """cone(c, g^2 - lam*c)."""
    return Cone2([(0, 1), (1, -qq(lam))])


def _symbolic_pair(p: Pairing2, x, y) -> Poly:
    """Pairing of vectors whose entries are polynomials in lambda."""
    out = Poly.const(0, 1)
    for i in range(2):
        for j in range(2):
            out = out + (x[i] * p.m[i][j]) * y[j]
    return out


def _poly_coeffs(f: Poly) -> list[Fraction]:
    return [f.coefficient((d,)) for d in range(max(f.degree(), 0) + 1)]


def gap_report(pairing: Pairing2, endpoints: Sequence, c2=None) -> dict:
    """Certificate that Eff_lam is strictly inside its dual for lam in an interval.

    Per endpoint the dual cone is computed and compared. For the whole
    interval the witness W = dual(Eff_hi) is used:
    ``Eff_lam <= Eff_hi < W <= dual(Eff_lam)``. Every inequality needed for
    the outer two inclusions (and for c_2 being nef on Eff_lam) is a
    pairing that is affine in lam, checked symbolically, so nonnegativity
    at the two endpoints covers every lam in between.
    """
    lo, hi = (qq(e) for e in endpoints)
    if lo > hi:
        raise ValueError("empty lambda interval")
    if c2 is None:
        from .fano import c2 as fano_c2

        c2 = fano_c2().vector()
    c2 = qvec(c2)

    per_endpoint = []
    for lam in (lo, hi):
        eff = eff_cone(lam)
        nef = dual_cone(eff, pairing)
        verdict = contains(nef, eff)
        c2_vs = {"c": pairing(c2, (0, 1)), "g2-lambda*c": pairing(c2, (1, -lam))}
        per_endpoint.append(
            {
                "lambda": lam,
                "eff_rays": [list(r.v) for r in eff.rays],
                "dual_rays": [list(r.v) for r in nef.rays],
                "containment": verdict.value,
                "strict": verdict in (Containment.STRICT, Containment.SHARED_BOUNDARY),
                "c2_pairings": c2_vs,
                "c2_nef_on_eff": all(v > 0 for v in c2_vs.values()),
            }
        )

    lam = Poly.var(0, 1)
    one = Poly.const(1, 1)
    eff_sym = {"c": (0 * one, one), "g2-lambda*c": (one, -lam)}
    witness = dual_cone(eff_cone(hi), pairing)
    witness_strict = contains(witness, eff_cone(hi))

    checks = []
    for name, vec in [(f"witness{list(r.v)}", r.v) for r in witness.rays] + [("c2", c2)]:
        for ename, evec in eff_sym.items():
            f = _symbolic_pair(pairing, [one * x for x in vec], evec)
            checks.append({"class": name, "against": ename, "poly": _poly_coeffs(f), "degree": f.degree(), "f": f})
    # Eff_lam <= Eff_hi: g^2 - lam c = (g^2 - hi c) + (hi - lam) c
    slack = hi * one - lam
    checks.append({"class": "eff_hi", "against": "coefficient of c", "poly": _poly_coeffs(slack), "degree": slack.degree(), "f": slack})

    affine = all(ch["degree"] <= 1 for ch in checks)
    for ch in checks:
        f = ch.pop("f")
        ch["at_endpoints"] = [f(lo), f(hi)]
        ch["nonnegative"] = all(v >= 0 for v in ch["at_endpoints"])
    witness_ok = all(ch["nonnegative"] for ch in checks if ch["class"] != "c2")
    c2_ok = all(min(ch["at_endpoints"]) > 0 for ch in checks if ch["class"] == "c2")
    interval_certified = affine and witness_ok and witness_strict == Containment.STRICT

    return {
        "basis": list(BASIS),
        "pairing": [list(r) for r in pairing.m],
        "interval": [lo, hi],
        "endpoints": per_endpoint,
        "witness_rays": [list(r.v) for r in witness.rays],
        "witness_vs_eff_hi": witness_strict.value,
        "symbolic_checks": checks,
        "affine_in_lambda": affine,
        "interval_certified": interval_certified,
        "c2_nef_on_interval": affine and c2_ok,
        "nef_strictly_exceeds_eff": interval_certified and all(e["strict"] for e in per_endpoint),
        "note": "every checked pairing is affine in lambda, so endpoint signs certify the interval",
    }
