"""Schubert calculus on small Grassmannians Gr(k, n).

Classes are sparse rational combinations of Schubert classes ``s[lam]`` with
``lam`` a partition inside the k x (n-k) box. Products use Littlewood-Richardson
coefficients counted by direct tableau enumeration; :func:`pieri` is kept as a
separate, much simpler rule so the two can check each other.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .chern import ChernVector, GradedClass
from .qq import ParseError, fmt

Partition = tuple[int, ...]

MAX_K = 3
MAX_N = 8


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a weakly decreasing tuple without trailing zeros."""
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p):
        raise ValueError(f"negative part in {p}")
    if any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"{p} is not weakly decreasing")
    while p and p[-1] == 0:
        p = p[:-1]
    return p


@lru_cache(maxsize=None)
def _box_partitions(rows: int, width: int) -> tuple[Partition, ...]:
    def rec(prefix, maxpart, remaining_rows):
        yield prefix
        if remaining_rows == 0:
            return
        for part in range(1, maxpart + 1):
            yield from rec(prefix + (part,), part, remaining_rows - 1)

    return tuple(sorted(rec((), width, rows), key=lambda p: (sum(p), [-x for x in p])))


@dataclass(frozen=True)
class Grassmannian:
    """Gr(k, n) of k-planes in an n-dimensional space."""

    k: int
    n: int

    def __post_init__(self):
        if not (1 <= self.k < self.n):
            raise ValueError(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        if self.k > MAX_K or self.n > MAX_N:
            raise ValueError(f"Gr({self.k},{self.n}) exceeds the supported range k<={MAX_K}, n<={MAX_N}")

    @property
    def width(self) -> int:
        return self.n - self.k

    @property
    def dim(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def top(self) -> Partition:
        return (self.width,) * self.k

    def fits(self, lam: Partition) -> bool:
        return len(lam) <= self.k and all(x <= self.width for x in lam)

    def complement(self, lam: Partition) -> Partition:
        padded = list(lam) + [0] * (self.k - len(lam))
        return partition(self.width - x for x in reversed(padded))

    def partitions(self, size: int | None = None) -> Iterator[Partition]:
        """All partitions in the box (optionally of a given size), graded order."""
        for lam in _box_partitions(self.k, self.width):
            if size is None or sum(lam) == size:
                yield lam

    # convenient constructors
    def schubert(self, *parts: int) -> "SchubertClass":
        return SchubertClass(self, {partition(parts): Fraction(1)})

    def one(self) -> "SchubertClass":
        return SchubertClass(self, {(): Fraction(1)})

    def zero(self) -> "SchubertClass":
        return SchubertClass(self, {})


class SchubertClass:
    """Rational combination of Schubert classes on a fixed Grassmannian."""

    __slots__ = ("gr", "terms")

    def __init__(self, gr: Grassmannian, terms: Mapping[Partition, Fraction] | None = None):
        self.gr = gr
        clean = {}
        for lam, c in (terms or {}).items():
            lam = partition(lam)
            if not gr.fits(lam):
                raise ValueError(f"partition {lam} does not fit Gr({gr.k},{gr.n})")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        self.terms = {lam: c for lam, c in clean.items() if c}

    @property
    def ring(self):
        return self.gr

    def _coerce(self, other) -> "SchubertClass":
        if isinstance(other, SchubertClass):
            if other.gr != self.gr:
                raise ValueError("Schubert classes on different Grassmannians")
            return other
        return SchubertClass(self.gr, {(): Fraction(other)})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return SchubertClass(self.gr, out)

    __radd__ = __add__

    def __neg__(self):
        return SchubertClass(self.gr, {lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, SchubertClass):
            return multiply(self, other)
        c = Fraction(other)
        return SchubertClass(self.gr, {lam: c * v for lam, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        out = self.gr.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SchubertClass):
            return self.gr == other.gr and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.gr, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"SchubertClass(Gr({self.gr.k},{self.gr.n}), {render(self)!r})"

    def __str__(self):
        return render(self)

    def coefficient(self, *parts: int) -> Fraction:
        return self.terms.get(partition(parts), Fraction(0))

    def degrees(self) -> set[int]:
        return {sum(lam) for lam in self.terms}

    def homogeneous_part(self, d: int) -> "SchubertClass":
        return SchubertClass(self.gr, {lam: c for lam, c in self.terms.items() if sum(lam) == d})

    def integrate(self) -> Fraction:
        return integrate(self)


# ---------------------------------------------------------------------------
# Pieri and Littlewood-Richardson


def pieri(lam: Partition, j: int, gr: Grassmannian) -> SchubertClass:
    """``s[lam] * s[j]``: sum over horizontal strips of size j inside the box."""
    lam = partition(lam)
    if not gr.fits(lam):
        raise ValueError(f"partition {lam} does not fit the box")
    padded = list(lam) + [0] * (gr.k - len(lam))
    out: dict[Partition, Fraction] = {}

    def rec(i, remaining, acc):
        if i == gr.k:
            if remaining == 0:
                out[partition(acc)] = Fraction(1)
            return
        upper = gr.width if i == 0 else padded[i - 1]
        for mu_i in range(padded[i], min(upper, padded[i] + remaining) + 1):
            rec(i + 1, remaining - (mu_i - padded[i]), acc + [mu_i])

    rec(0, j, [])
    return SchubertClass(gr, out)


@lru_cache(maxsize=None)
def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c^nu_{lam,mu}: number of LR tableaux of shape nu/lam and content mu.

    Cells are filled row by row, each row right to left, so that the reverse
    reading word is produced in order and the lattice condition can be
    checked incrementally. Rows weakly increase, columns strictly increase.
    """
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if len(lam) > len(nu) or any(a > b for a, b in zip(lam, nu)):
        return 0
    cells = []
    lam_p = list(lam) + [0] * (len(nu) - len(lam))
    for r in range(len(nu)):
        cells.extend((r, c) for c in range(nu[r] - 1, lam_p[r] - 1, -1))
    if not cells:
        return 1 if not mu else 0
    content = list(mu)
    used = [0] * len(content)
    filling: dict[tuple[int, int], int] = {}

    def rec(idx):
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        count = 0
        for v in range(len(content)):
            if used[v] >= content[v]:
                continue
            if v > 0 and used[v] + 1 > used[v - 1]:
                continue  # lattice word
            right = filling.get((r, c + 1))
            if right is not None and v > right:
                continue  # row weakly increasing
            above = filling.get((r - 1, c))
            if above is not None and v <= above:
                continue  # column strictly increasing
            filling[(r, c)] = v
            used[v] += 1
            count += rec(idx + 1)
            used[v] -= 1
            del filling[(r, c)]
        return count

    return rec(0)


def multiply(a: SchubertClass, b: SchubertClass) -> SchubertClass:
    if a.gr != b.gr:
        raise ValueError("Schubert classes on different Grassmannians")
    gr = a.gr
    out: dict[Partition, Fraction] = {}
    for lam, ca in a.terms.items():
        for mu, cb in b.terms.items():
            size = sum(lam) + sum(mu)
            if size > gr.dim:
                continue
            for nu in gr.partitions(size):
                coeff = lr_coefficient(lam, mu, nu)
                if coeff:
                    out[nu] = out.get(nu, 0) + ca * cb * coeff
    return SchubertClass(gr, out)


def integrate(a: SchubertClass) -> Fraction:
    """Degree of the top-dimensional part (coefficient of the point class)."""
    return a.terms.get(a.gr.top, Fraction(0))


# ---------------------------------------------------------------------------
# Tautological bundles


def tautological_chern(which: str, gr: Grassmannian) -> ChernVector:
    """Chern classes of ``U``, ``Udual`` or ``Q`` as Schubert classes.

    ``c(U^dual) = 1 + s[1] + s[1,1] + ...``; ``c(Q)`` is the inverse of
    ``c(U)`` by the Whitney formula for ``0 -> U -> O^n -> Q -> 0``.
    """
    udual = [gr.schubert(*([1] * i)) for i in range(1, gr.k + 1)]
    if which == "Udual":
        return ChernVector(gr.k, tuple(udual))
    u = ChernVector(gr.k, tuple(c if i % 2 == 0 else -c for i, c in enumerate(udual, 1)))
    if which == "U":
        return u
    if which == "Q":
        inv = GradedClass.from_chern(u, gr.dim, ring=gr).inverse()
        rank = gr.n - gr.k
        for d in range(rank + 1, gr.dim + 1):
            if inv[d]:
                raise ArithmeticError(f"c_{d}(Q) should vanish, got {inv[d]}")
        return ChernVector(rank, tuple(_as_class(inv[d], gr) for d in range(1, rank + 1)))
    raise ValueError(f"unknown tautological bundle {which!r}; expected U, Udual or Q")


def _as_class(x, gr: Grassmannian) -> SchubertClass:
    return x if isinstance(x, SchubertClass) else SchubertClass(gr, {(): Fraction(x)})


def total_chern(v: ChernVector, gr: Grassmannian) -> GradedClass:
    return GradedClass.from_chern(v, gr.dim, ring=gr)


# ---------------------------------------------------------------------------
# Text format: "3·s[2,1] - 1/2·s[1] + s[]"

_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(?:·|\*)\s*)?s\[([\d,\s]*)\]\s*")


def render(a: SchubertClass) -> str:
    if not a.terms:
        return "0"
    ordered = sorted(a.terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]]))
    out = []
    for i, (lam, c) in enumerate(ordered):
        sign = "-" if c < 0 else "+"
        body = f"s[{','.join(map(str, lam))}]"
        if abs(c) != 1:
            body = f"{fmt(abs(c))}·{body}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def parse_class(text: str, gr: Grassmannian) -> SchubertClass:
    """Inverse of :func:`render`; also accepts ``*`` for the product dot."""
    if text.strip() == "0":
        return gr.zero()
    pos = 0
    terms: dict[Partition, Fraction] = {}
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("expected a term like 3·s[2,1]", pos)
        sign, coeff, parts = m.groups()
        if sign is None and not first:
            raise ParseError("missing '+' or '-' between terms", pos)
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        try:
            lam = partition(int(x) for x in parts.split(",") if x.strip())
        except ValueError as err:
            raise ParseError(str(err), m.start(3)) from None
        if not gr.fits(lam):
            raise ParseError(f"partition {lam} does not fit Gr({gr.k},{gr.n})", m.start(3))
        terms[lam] = terms.get(lam, 0) + c
        pos = m.end()
        first = False
    if first:
        raise ParseError("empty class expression", 0)
    return SchubertClass(gr, terms)
