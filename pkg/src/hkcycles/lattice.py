"""Rational quadratic lattices and the Beauville-Bogomolov pairing.

For a Hilbert square X = S^[2] of a K3 surface, H^2(X) = H^2(S) + Z*delta is
an orthogonal sum and ``c_2(X).a.b = 30 q(a, b)`` for divisor classes a, b.
The square of delta is not stored as a literal: :meth:`HilbSquareH2.from_k3`
obtains it from the blow-up computation in :mod:`hkcycles.blowup`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .qq import ParseError, qq, qvec, to_json

C2_BB_CONSTANT_K3N2 = Fraction(30)


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        gram = tuple(qvec(row) for row in self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix must be symmetric")
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(n))
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for a rank-{n} lattice")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def diagonal(cls, *entries, labels: Sequence[str] = ()) -> "Lattice":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)), tuple(labels))

    @classmethod
    def hyperbolic_plane(cls, labels: Sequence[str] = ("e", "f")) -> "Lattice":
        return cls(((0, 1), (1, 0)), tuple(labels))

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        x, y = qvec(x), qvec(y)
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError(f"vectors must have length {self.rank}")
        return sum((x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def orthogonal_sum(self, other: "Lattice") -> "Lattice":
        n, m = self.rank, other.rank
        rows = [tuple(self.gram[i]) + (Fraction(0),) * m for i in range(n)]
        rows += [(Fraction(0),) * n + tuple(other.gram[i]) for i in range(m)]
        return Lattice(tuple(rows), self.labels + other.labels)

    def signature(self) -> tuple[int, int, int]:
        return signature(self)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "gram": to_json(self.gram)}

    @classmethod
    def from_json(cls, data) -> "Lattice":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as err:
                raise ParseError(f"invalid lattice JSON: {err.msg}", err.pos) from None
        if not isinstance(data, dict) or "gram" not in data:
            raise ParseError("lattice JSON needs a 'gram' key")
        try:
            return cls(tuple(tuple(qq(v) for v in row) for row in data["gram"]), tuple(data.get("labels", ())))
        except (TypeError, ValueError) as err:
            raise ParseError(f"invalid lattice: {err}") from None


def signature(lat: Lattice) -> tuple[int, int, int]:
    """Sylvester inertia (positive, negative, zero) by exact congruence.

    Diagonalizes by symmetric elimination over Q. When every remaining
    diagonal entry vanishes but some off-diagonal a_ij does not, the basis
    change e_i -> e_i + e_j creates the pivot 2*a_ij.
    """
    a = [list(row) for row in lat.gram]
    active = list(range(lat.rank))
    pos = neg = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(lat.rank):
                a[i][k] += a[j][k]
            for k in range(lat.rank):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = a[r][piv] / p
            if f:
                for s in active:
                    a[r][s] -= f * a[piv][s]
        for r in active:
            a[r][piv] = a[piv][r] = Fraction(0)
    return pos, neg, lat.rank - pos - neg


@dataclass(frozen=True)
class HilbSquareH2:
    """H^2 of S^[2] restricted to ``k3 + Z*delta`` (vectors end with delta)."""

    k3: Lattice
    delta_square: Fraction
    c2_constant: Fraction = C2_BB_CONSTANT_K3N2

    @classmethod
    def from_k3(cls, k3: Lattice) -> "HilbSquareH2":
        from .blowup import derive_delta_square

        return cls(k3, derive_delta_square())

    @property
    def rank(self) -> int:
        return self.k3.rank + 1

    def lattice(self) -> Lattice:
        return self.k3.orthogonal_sum(Lattice(((self.delta_square,),), ("delta",)))

    def q_pair(self, x: Sequence, y: Sequence) -> Fraction:
        x, y = qvec(x), qvec(y)
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError(f"vectors must have length {self.rank} (K3 part then delta)")
        return self.k3.pair(x[:-1], y[:-1]) + x[-1] * y[-1] * self.delta_square

    def c2_pairing(self, x: Sequence, y: Sequence) -> Fraction:
        """Predicted intersection number c_2(X).x.y."""
        return self.c2_constant * self.q_pair(x, y)


@dataclass(frozen=True)
class KummerH2:
    """H^2 of a generalized Kummer fourfold: ``H^2(A) + Z*e``.

    The multiple relating c_2 to q is left unset by default; pairing through
    c_2 raises until it is supplied.
    """

    abelian: Lattice
    e_square: Fraction
    c2_constant: Fraction | None = field(default=None)

    @property
    def rank(self) -> int:
        return self.abelian.rank + 1

    def q_pair(self, x: Sequence, y: Sequence) -> Fraction:
        x, y = qvec(x), qvec(y)
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError(f"vectors must have length {self.rank} (abelian part then e)")
        return self.abelian.pair(x[:-1], y[:-1]) + x[-1] * y[-1] * qq(self.e_square)

    def c2_pairing(self, x: Sequence, y: Sequence) -> Fraction:
        if self.c2_constant is None:
            raise ValueError("the c_2 / q constant for Kummer type is not configured")
        return qq(self.c2_constant) * self.q_pair(x, y)


def sym2_rank(b: int) -> int:
    return comb(b + 1, 2)


def rank_checks() -> dict:
    """Betti-number bookkeeping for K3^[2]-type and Kummer-type fourfolds."""
    b1_abelian_surface = 4
    b2_abelian = comb(b1_abelian_surface, 2)
    b2_kummer = b2_abelian + 1
    b2_k3 = 24 - 2  # chi_top(K3) = c_2 = 24 = 2 + b_2
    b2_hilb2 = b2_k3 + 1
    torsion3 = 3**b1_abelian_surface
    kummer_sym2 = sym2_rank(b2_kummer)
    report = {
        "k3n2": {"b2": b2_hilb2, "sym2_b2": sym2_rank(b2_hilb2)},
        "kummer": {
            "b2": b2_kummer,
            "sym2_b2": kummer_sym2,
            "unimodular_summand": 80,
            "b4": kummer_sym2 + 80,
            "b4_via_c2_perp": (kummer_sym2 - 1) + torsion3,
        },
        "abelian_3_torsion": torsion3,
    }
    report["ok"] = (
        report["k3n2"]["sym2_b2"] == 276
        and report["kummer"]["b4"] == 108
        and report["kummer"]["b4_via_c2_perp"] == report["kummer"]["b4"]
        and torsion3 == 81
    )
    return report
