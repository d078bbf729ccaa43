"""Exact graded arithmetic and Chern classes of formal bundle constructions.

Chern classes of a construction (dual, tensor product, symmetric power of a
rank-2 bundle) are obtained through the splitting principle: the total Chern
class is written as a product over formal roots, expanded as a polynomial, and
reduced back to the elementary symmetric functions of each input alphabet.
The resulting universal polynomials are then evaluated in any commutative
coefficient ring whose elements support ``+``, ``-``, ``*`` and multiplication
by integers/Fractions (plain Fractions, or Schubert classes).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Sequence

Monomial = tuple[int, ...]


class Poly:
    """Sparse multivariate polynomial with Fraction coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: dict[Monomial, Fraction] | None = None, nvars: int = 1):
        self.nvars = nvars
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        for m in self.terms:
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls({tuple(m): Fraction(1)}, nvars)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly({m: c * v for m, v in self.terms.items()}, self.nvars)
        return self.mul_trunc(other, None)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly.const(1, self.nvars)
        for _ in range(e):
            out = out * self
        return out

    def mul_trunc(self, other: "Poly", maxdeg: int | None) -> "Poly":
        """Product, discarding monomials of total degree above ``maxdeg``."""
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            d1 = sum(m1)
            for m2, c2 in other.terms.items():
                if maxdeg is not None and d1 + sum(m2) > maxdeg:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        return f"Poly({dict(sorted(self.terms.items(), reverse=True))}, nvars={self.nvars})"

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly({m: c for m, c in self.terms.items() if sum(m) == d}, self.nvars)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def __call__(self, *values):
        """Evaluate at Fraction/int values (one per variable)."""
        return evaluate(self, [Fraction(v) for v in values], zero=Fraction(0))


def evaluate(p: Poly, values: Sequence[Any], zero=None):
    """Evaluate ``p`` with ``values[i]`` substituted for variable ``i``.

    ``values`` may be elements of any commutative ring supporting ``+``, ``*``
    and integer/Fraction scaling. The constant term is added as a scalar, so
    for non-scalar rings it must either vanish or the ring must accept scalar
    addition.
    """
    if len(values) != p.nvars:
        raise ValueError(f"expected {p.nvars} values, got {len(values)}")
    if zero is None:
        zero = values[0] * 0 if values else Fraction(0)
    powers: dict[tuple[int, int], Any] = {}

    def power(i, e):
        if (i, e) not in powers:
            powers[(i, e)] = values[i] if e == 1 else power(i, e - 1) * values[i]
        return powers[(i, e)]

    total = zero
    for m, c in sorted(p.terms.items()):
        term = None
        for i, e in enumerate(m):
            if e:
                term = power(i, e) if term is None else term * power(i, e)
        total = total + (c if term is None else term * c)
    return total


@lru_cache(maxsize=None)
def elementary(indices: tuple[int, ...], k: int, nvars: int) -> Poly:
    """Elementary symmetric polynomial e_k in the variables ``indices``."""
    if k == 0:
        return Poly.const(1, nvars)
    terms = {}
    for subset in combinations(indices, k):
        m = [0] * nvars
        for i in subset:
            m[i] = 1
        terms[tuple(m)] = Fraction(1)
    return Poly(terms, nvars)


def to_elementary(p: Poly, groups: Sequence[Sequence[int]]) -> Poly:
    """Rewrite ``p`` in the elementary symmetric functions of each group.

    ``groups`` partitions the variables of ``p`` into alphabets; ``p`` must be
    symmetric in each alphabet separately. The result is a polynomial in the
    variables ``e_1(G_1), ..., e_{|G_1|}(G_1), e_1(G_2), ...`` in that order.

    Uses the classical leading-term elimination: under lex order the leading
    monomial of a multi-symmetric polynomial has weakly decreasing exponents
    inside each group, and it equals the leading monomial of the matching
    product of elementary polynomials, which is subtracted off.
    """
    groups = [tuple(g) for g in groups]
    covered = sorted(i for g in groups for i in g)
    if covered != list(range(p.nvars)):
        raise ValueError("groups must partition the variables")
    out_nvars = sum(len(g) for g in groups)
    cache: dict[Monomial, Poly] = {}

    def product_of_elementaries(eexp: Monomial) -> Poly:
        if eexp not in cache:
            prod = Poly.const(1, p.nvars)
            pos = 0
            for g in groups:
                for j in range(1, len(g) + 1):
                    for _ in range(eexp[pos]):
                        prod = prod * elementary(g, j, p.nvars)
                    pos += 1
            cache[eexp] = prod
        return cache[eexp]

    rest = dict(p.terms)
    result: dict[Monomial, Fraction] = {}
    while rest:
        lead = max(rest)
        coeff = rest[lead]
        eexp: list[int] = []
        for g in groups:
            exps = [lead[i] for i in g]
            if any(a < b for a, b in zip(exps, exps[1:])):
                raise ValueError("polynomial is not symmetric in the given alphabets")
            eexp.extend(a - b for a, b in zip(exps, exps[1:] + [0]))
        eexp_t = tuple(eexp)
        result[eexp_t] = result.get(eexp_t, 0) + coeff
        for m, c in product_of_elementaries(eexp_t).terms.items():
            v = rest.get(m, 0) - coeff * c
            if v:
                rest[m] = v
            else:
                rest.pop(m, None)
    return Poly(result, out_nvars)


# ---------------------------------------------------------------------------
# Graded classes


@dataclass(frozen=True)
class GradedClass:
    """Truncated graded element ``parts[0] + parts[1] + ... + parts[trunc]``.

    ``parts[d]`` is the degree-``d`` piece; ``parts[0]`` is a scalar. ``ring``
    is a tag identifying the coefficient ring, checked on multiplication.
    """

    parts: tuple
    ring: Any = "QQ"

    @property
    def truncation(self) -> int:
        return len(self.parts) - 1

    @classmethod
    def one(cls, truncation: int, ring: Any = "QQ") -> "GradedClass":
        return cls((Fraction(1),) + (Fraction(0),) * truncation, ring)

    @classmethod
    def from_chern(cls, v: "ChernVector", truncation: int, ring: Any = "QQ") -> "GradedClass":
        """Total Chern class ``1 + c_1 + c_2 + ...`` truncated."""
        parts = [Fraction(1)]
        for d in range(1, truncation + 1):
            parts.append(v.c[d - 1] if d <= v.rank else Fraction(0))
        return cls(tuple(parts), ring)

    def __getitem__(self, d: int):
        return self.parts[d] if 0 <= d < len(self.parts) else Fraction(0)

    def __mul__(self, other: "GradedClass") -> "GradedClass":
        return trunc_mul(self, other)

    def inverse(self) -> "GradedClass":
        """Truncated power-series inverse; requires unit constant term 1."""
        if self.parts[0] != 1:
            raise ValueError("only classes with constant term 1 are inverted")
        inv = [Fraction(1)]
        for d in range(1, len(self.parts)):
            acc = Fraction(0)
            for i in range(1, d + 1):
                acc = acc + self.parts[i] * inv[d - i]
            inv.append(-acc)
        return GradedClass(tuple(inv), self.ring)

    def __truediv__(self, other: "GradedClass") -> "GradedClass":
        return trunc_mul(self, other.inverse())


def trunc_mul(a: GradedClass, b: GradedClass) -> GradedClass:
    """Graded convolution product, truncated at the common truncation degree."""
    if a.ring != b.ring or a.truncation != b.truncation:
        raise ValueError("incompatible graded rings")
    parts = []
    for d in range(a.truncation + 1):
        acc = Fraction(0)
        for i in range(d + 1):
            acc = acc + a.parts[i] * b.parts[d - i]
        parts.append(acc)
    return GradedClass(tuple(parts), a.ring)


# ---------------------------------------------------------------------------
# Chern vectors


@dataclass(frozen=True)
class ChernVector:
    """Chern classes ``c_1, ..., c_rank`` of a (formal) bundle; ``c_0 = 1``."""

    rank: int
    c: tuple

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if len(self.c) != self.rank:
            raise ValueError(f"expected {self.rank} Chern classes, got {len(self.c)}")

    def total(self, truncation: int, ring: Any = "QQ") -> GradedClass:
        return GradedClass.from_chern(self, truncation, ring)


def chern_dual(v: ChernVector) -> ChernVector:
    return ChernVector(v.rank, tuple(ci if i % 2 == 0 else -ci for i, ci in enumerate(v.c, 1)))


def _roots_product(roots: Sequence[Poly], maxdeg: int) -> Poly:
    nvars = roots[0].nvars
    total = Poly.const(1, nvars)
    for r in roots:
        total = total.mul_trunc(1 + r, maxdeg)
    return total


@lru_cache(maxsize=None)
def sym_power_rank2_universal(k: int) -> tuple[Poly, ...]:
    """Universal c_1..c_{k+1} of Sym^k of a rank-2 bundle, in (e_1, e_2)."""
    x, y = Poly.var(0, 2), Poly.var(1, 2)
    roots = [(k - i) * x + i * y for i in range(k + 1)]
    total = _roots_product(roots, k + 1)
    return tuple(to_elementary(total.homogeneous_part(d), [[0, 1]]) for d in range(1, k + 2))


@lru_cache(maxsize=None)
def tensor_universal(r: int, s: int, truncation: int) -> tuple[Poly, ...]:
    """Universal c_1..c_min(rs, truncation) of a tensor product of ranks r, s."""
    nvars = r + s
    xs = [Poly.var(i, nvars) for i in range(r)]
    ys = [Poly.var(r + j, nvars) for j in range(s)]
    top = min(r * s, truncation)
    total = _roots_product([xi + yj for xi in xs for yj in ys], top)
    groups = [list(range(r)), list(range(r, r + s))]
    return tuple(to_elementary(total.homogeneous_part(d), groups) for d in range(1, top + 1))


def chern_sym_power_rank2(k: int, v: ChernVector) -> ChernVector:
    """Chern classes of ``Sym^k V`` for a rank-2 ``V`` (roots ``(k-i)x + iy``)."""
    if v.rank != 2:
        raise ValueError("symmetric powers are implemented for rank 2 only")
    if k < 0:
        raise ValueError("k must be non-negative")
    zero = v.c[0] * 0
    if k == 0:
        return ChernVector(1, (zero,))
    polys = sym_power_rank2_universal(k)
    return ChernVector(k + 1, tuple(evaluate(p, list(v.c), zero) for p in polys))


def chern_tensor(a: ChernVector, b: ChernVector, truncation: int | None = None) -> ChernVector:
    """Chern classes of ``A (x) B``; classes above ``truncation`` are set to 0."""
    rank = a.rank * b.rank
    if truncation is None:
        truncation = rank
    values = list(a.c) + list(b.c)
    zero = values[0] * 0
    polys = tensor_universal(a.rank, b.rank, truncation)
    cs = [evaluate(p, values, zero) for p in polys]
    cs += [zero] * (rank - len(cs))
    return ChernVector(rank, tuple(cs))


def chern_from_roots(roots: Sequence) -> ChernVector:
    """Elementary symmetric functions of explicit (numeric) roots."""
    es = [Fraction(1)] + [Fraction(0)] * len(roots)
    for r in roots:
        for k in range(len(roots), 0, -1):
            es[k] = es[k] + es[k - 1] * r
    return ChernVector(len(roots), tuple(es[1:]))
