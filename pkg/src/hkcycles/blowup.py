"""Intersection numbers on the blow-up of S x S along the diagonal.

S is a K3 surface seen through a chosen sublattice of H^2(S) (its Gram matrix)
together with c_1(S) = 0 and c_2(S) = 24 pt. Cohomology classes are:

* :class:`SurfaceClass` -- graded pieces of H^*(S);
* :class:`ProductClass` -- sums of ``a (x) b`` on S x S, in a fixed basis
  ``1, e_1..e_r, pt`` of each factor;
* :class:`BlowupClass` -- polynomials in the exceptional divisor E whose
  coefficients are pulled back from S x S.

Conventions: ``E|_E = -xi`` where xi is the relative hyperplane class of the
projective bundle E -> Delta and the fiber integral of xi is 1. Then

    int pi^*x           = int_{SxS} x
    int E . pi^*x       = 0
    int E^m . pi^*x     = (-1)^(m-1) int_S s_{m-2}(T_S) . x|_Delta,  m >= 2

The quotient map to S^[2] has degree 2 and pulls delta back to E.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

from .lattice import C2_BB_CONSTANT_K3N2, HilbSquareH2, Lattice
from .qq import qq, qvec

K3_C2 = Fraction(24)
MAX_E_POWER = 4
DIM = 4  # complex dimension of the blow-up


@dataclass(frozen=True)
class SurfaceClass:
    degree0: Fraction = Fraction(0)
    degree2: tuple[Fraction, ...] = ()
    degree4: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "degree0", qq(self.degree0))
        object.__setattr__(self, "degree2", qvec(self.degree2))
        object.__setattr__(self, "degree4", qq(self.degree4))

    def _d2(self, other: "SurfaceClass"):
        n = max(len(self.degree2), len(other.degree2))
        a = self.degree2 + (Fraction(0),) * (n - len(self.degree2))
        b = other.degree2 + (Fraction(0),) * (n - len(other.degree2))
        return a, b

    def __add__(self, other: "SurfaceClass") -> "SurfaceClass":
        a, b = self._d2(other)
        return SurfaceClass(self.degree0 + other.degree0, tuple(x + y for x, y in zip(a, b)), self.degree4 + other.degree4)

    def __neg__(self) -> "SurfaceClass":
        return SurfaceClass(-self.degree0, tuple(-x for x in self.degree2), -self.degree4)

    def __sub__(self, other: "SurfaceClass") -> "SurfaceClass":
        return self + (-other)

    def __mul__(self, scalar) -> "SurfaceClass":
        s = qq(scalar)
        return SurfaceClass(s * self.degree0, tuple(s * x for x in self.degree2), s * self.degree4)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.degree0 and not any(self.degree2) and not self.degree4


class K3Surface:
    """H^*(S) for a K3 surface, with H^2 restricted to a given lattice."""

    def __init__(self, h2: Lattice | None = None):
        self.h2 = h2 if h2 is not None else Lattice(())
        self.r = self.h2.rank
        self.c2 = K3_C2

    # basis: 0 -> 1, 1..r -> e_k, r+1 -> pt
    @property
    def nbasis(self) -> int:
        return self.r + 2

    def basis(self, i: int) -> SurfaceClass:
        if i == 0:
            return self.one()
        if i == self.r + 1:
            return self.point()
        return self.divisor([1 if k == i - 1 else 0 for k in range(self.r)])

    def basis_degree(self, i: int) -> int:
        return 0 if i == 0 else (4 if i == self.r + 1 else 2)

    def coordinates(self, a: SurfaceClass) -> dict[int, Fraction]:
        d2 = a.degree2 + (Fraction(0),) * (self.r - len(a.degree2))
        if len(d2) != self.r:
            raise ValueError(f"degree-2 part has {len(a.degree2)} entries, lattice rank is {self.r}")
        out = {0: a.degree0, self.r + 1: a.degree4}
        out.update({k + 1: v for k, v in enumerate(d2)})
        return {i: c for i, c in out.items() if c}

    def one(self) -> SurfaceClass:
        return SurfaceClass(1, (0,) * self.r, 0)

    def point(self) -> SurfaceClass:
        return SurfaceClass(0, (0,) * self.r, 1)

    def divisor(self, v: Sequence) -> SurfaceClass:
        v = qvec(v)
        if len(v) != self.r:
            raise ValueError(f"divisor needs {self.r} coordinates")
        return SurfaceClass(0, v, 0)

    def mul(self, a: SurfaceClass, b: SurfaceClass) -> SurfaceClass:
        a2 = a.degree2 or (Fraction(0),) * self.r
        b2 = b.degree2 or (Fraction(0),) * self.r
        return SurfaceClass(
            a.degree0 * b.degree0,
            tuple(a.degree0 * y + b.degree0 * x for x, y in zip(a2, b2)),
            a.degree0 * b.degree4 + a.degree4 * b.degree0 + self.h2.pair(a2, b2),
        )

    def integrate(self, a: SurfaceClass) -> Fraction:
        return a.degree4

    @cached_property
    def _basis_products(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {
            (i, j): self.coordinates(self.mul(self.basis(i), self.basis(j)))
            for i in range(self.nbasis)
            for j in range(self.nbasis)
        }

    def basis_mul(self, i: int, j: int) -> dict[int, Fraction]:
        return self._basis_products[(i, j)]

    def chern_tangent(self) -> tuple[SurfaceClass, SurfaceClass]:
        return SurfaceClass(0, (0,) * self.r, 0), self.c2 * self.point()

    def segre_tangent(self) -> tuple[SurfaceClass, SurfaceClass, SurfaceClass]:
        """s_0, s_1, s_2 of T_S from ``s(T) c(T) = 1``."""
        c1, c2 = self.chern_tangent()
        return self.one(), -c1, self.mul(c1, c1) - c2


class ProductClass:
    """Class on S x S, ``terms[(i, j)]`` is the coefficient of ``b_i (x) b_j``."""

    __slots__ = ("surface", "terms")

    def __init__(self, surface: K3Surface, terms: Mapping[tuple[int, int], Fraction] | None = None):
        self.surface = surface
        self.terms = {k: qq(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def boxtimes(cls, surface: K3Surface, a: SurfaceClass, b: SurfaceClass) -> "ProductClass":
        ca, cb = surface.coordinates(a), surface.coordinates(b)
        return cls(surface, {(i, j): x * y for i, x in ca.items() for j, y in cb.items()})

    def degree_of(self, key: tuple[int, int]) -> int:
        return self.surface.basis_degree(key[0]) + self.surface.basis_degree(key[1])

    def __add__(self, other: "ProductClass") -> "ProductClass":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ProductClass(self.surface, out)

    def __neg__(self):
        return ProductClass(self.surface, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ProductClass):
            s = qq(other)
            return ProductClass(self.surface, {k: s * v for k, v in self.terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), x in self.terms.items():
            for (k, l), y in other.terms.items():
                for p, u in self.surface.basis_mul(i, k).items():
                    for q, w in self.surface.basis_mul(j, l).items():
                        out[(p, q)] = out.get((p, q), 0) + x * y * u * w
        return ProductClass(self.surface, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ProductClass) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"ProductClass({self.terms})"

    def integrate(self) -> Fraction:
        top = self.surface.r + 1
        return self.terms.get((top, top), Fraction(0))


def diagonal_restrict(p: ProductClass) -> SurfaceClass:
    """Delta^*(a (x) b) = a . b."""
    s = p.surface
    out = SurfaceClass(0, (0,) * s.r, 0)
    for (i, j), c in p.terms.items():
        out = out + c * s.mul(s.basis(i), s.basis(j))
    return out


def fiber_classes(surface: K3Surface) -> tuple[ProductClass, ProductClass]:
    """o_1 = pt (x) 1 and o_2 = 1 (x) pt (fibers of the two projections)."""
    pt, one = surface.point(), surface.one()
    return ProductClass.boxtimes(surface, pt, one), ProductClass.boxtimes(surface, one, pt)


def c2_product(surface: K3Surface) -> ProductClass:
    """c_2(S x S) = c_2(S) (x) 1 + c_1 (x) c_1 + 1 (x) c_2(S)."""
    c1, c2 = surface.chern_tangent()
    one = surface.one()
    return (
        ProductClass.boxtimes(surface, c2, one)
        + ProductClass.boxtimes(surface, c1, c1)
        + ProductClass.boxtimes(surface, one, c2)
    )


class BlowupClass:
    """``sum_m E^m . pi^*(coeffs[m])``."""

    __slots__ = ("surface", "coeffs")

    def __init__(self, surface: K3Surface, coeffs: Mapping[int, ProductClass] | None = None):
        self.surface = surface
        clean = {}
        for m, p in (coeffs or {}).items():
            if m < 0:
                raise ValueError("negative power of E")
            if p:
                clean[m] = p
        self.coeffs = clean

    @classmethod
    def pullback(cls, p: ProductClass) -> "BlowupClass":
        return cls(p.surface, {0: p})

    @classmethod
    def exceptional(cls, surface: K3Surface, power: int = 1) -> "BlowupClass":
        return cls(surface, {power: ProductClass.boxtimes(surface, surface.one(), surface.one())})

    def __add__(self, other: "BlowupClass") -> "BlowupClass":
        out = dict(self.coeffs)
        for m, p in other.coeffs.items():
            out[m] = out[m] + p if m in out else p
        return BlowupClass(self.surface, out)

    def __neg__(self):
        return BlowupClass(self.surface, {m: -p for m, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BlowupClass):
            return BlowupClass(self.surface, {m: p * other for m, p in self.coeffs.items()})
        out: dict[int, ProductClass] = {}
        for m1, p1 in self.coeffs.items():
            for m2, p2 in other.coeffs.items():
                if m1 + m2 > DIM:
                    continue  # above the top degree
                prod = p1 * p2
                prod = ProductClass(
                    self.surface,
                    {k: v for k, v in prod.terms.items() if prod.degree_of(k) + 2 * (m1 + m2) <= 2 * DIM},
                )
                m = m1 + m2
                out[m] = out[m] + prod if m in out else prod
        return BlowupClass(self.surface, out)

    __rmul__ = __mul__

    def e_degree(self) -> int:
        return max(self.coeffs, default=0)

    def __repr__(self):
        return f"BlowupClass({self.coeffs})"


def blowup_integrate(b: BlowupClass) -> Fraction:
    """Degree of ``b`` via the Segre-class pushforward rule."""
    if b.e_degree() > MAX_E_POWER:
        raise ValueError(f"E-degree {b.e_degree()} exceeds {MAX_E_POWER}")
    s = b.surface
    segre = s.segre_tangent()
    total = Fraction(0)
    for m, p in b.coeffs.items():
        if m == 0:
            total += p.integrate()
        elif m >= 2:
            total += (-1) ** (m - 1) * s.integrate(s.mul(segre[m - 2], diagonal_restrict(p)))
    return total


# ---------------------------------------------------------------------------
# Projective bundle E = P(N) over the diagonal


@dataclass(frozen=True)
class ProjectiveBundle:
    """P(V) -> S for a rank-2 bundle V with relation xi^2 = c_1 xi - c_2."""

    surface: K3Surface
    c1: SurfaceClass
    c2: Fraction

    @classmethod
    def cotangent(cls, surface: K3Surface) -> "ProjectiveBundle":
        c1, c2 = surface.chern_tangent()
        # c_1(Omega) = -c_1(T) = 0 and c_2(Omega) = c_2(T) for rank 2
        return cls(surface, -c1, c2.degree4)


MAX_XI_POWER = 3


def proj_bundle_integrate(poly: Mapping[int, SurfaceClass], bundle: ProjectiveBundle) -> Fraction:
    """Integrate ``sum_j xi^j . p^*(poly[j])`` over P(V)."""
    s = bundle.surface
    c2_class = bundle.c2 * s.point()

    def xi_power(j: int, y: SurfaceClass) -> Fraction:
        if j == 0:
            return Fraction(0)
        if j == 1:
            return s.integrate(y)
        return xi_power(j - 1, s.mul(bundle.c1, y)) - xi_power(j - 2, s.mul(c2_class, y))

    total = Fraction(0)
    for j, y in poly.items():
        if j < 0 or j > MAX_XI_POWER:
            raise ValueError(f"xi-degree {j} outside 0..{MAX_XI_POWER}")
        total += xi_power(j, y)
    return total


def blowup_integrate_via_bundle(b: BlowupClass) -> Fraction:
    """Degree of ``b`` by restricting E-terms to E = P(Omega_S), E|_E = -xi.

    Independent of :func:`blowup_integrate`: no Segre classes are used, only
    the projective bundle relation.
    """
    if b.e_degree() > MAX_E_POWER:
        raise ValueError(f"E-degree {b.e_degree()} exceeds {MAX_E_POWER}")
    bundle = ProjectiveBundle.cotangent(b.surface)
    total = Fraction(0)
    for m, p in b.coeffs.items():
        if m == 0:
            total += p.integrate()
        else:
            total += (-1) ** (m - 1) * proj_bundle_integrate({m - 1: diagonal_restrict(p)}, bundle)
    return total


# ---------------------------------------------------------------------------
# c_2 of the Hilbert square, pulled back


def pullback_c2x(surface: K3Surface) -> BlowupClass:
    """sigma^* c_2(S^[2]) = pi^* c_2(S x S) - 3 E^2."""
    return BlowupClass(surface, {0: c2_product(surface)}) - 3 * BlowupClass.exceptional(surface, 2)


def sigma_pullback(surface: K3Surface, x: Sequence) -> BlowupClass:
    """sigma^*(a + m delta) = pi^*(a (x) 1 + 1 (x) a) + m E; ``x = (a..., m)``."""
    x = qvec(x)
    if len(x) != surface.r + 1:
        raise ValueError(f"expected {surface.r + 1} coordinates (K3 part then delta)")
    a = surface.divisor(x[:-1])
    one = surface.one()
    sym = ProductClass.boxtimes(surface, a, one) + ProductClass.boxtimes(surface, one, a)
    return BlowupClass(surface, {0: sym}) + x[-1] * BlowupClass.exceptional(surface, 1)


def c2_intersection(surface: K3Surface, x: Sequence, y: Sequence, integrate=blowup_integrate) -> Fraction:
    """c_2(S^[2]).x.y computed upstairs; the 1/2 is the degree of sigma."""
    prod = pullback_c2x(surface) * sigma_pullback(surface, x) * sigma_pullback(surface, y)
    return integrate(prod) / 2


def derive_delta_square() -> Fraction:
    """q(delta, delta) from c_2.delta.delta = 30 q(delta, delta)."""
    s = K3Surface()
    return c2_intersection(s, [1], [1]) / C2_BB_CONSTANT_K3N2


class Verify30q(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


def verify30q(gram: Lattice, x: Sequence, y: Sequence) -> Verify30q:
    """Compare c_2.x.y from the blow-up with 30 q(x, y) from the lattice."""
    surface = K3Surface(gram)
    lhs = c2_intersection(surface, x, y)
    rhs = HilbSquareH2(gram, derive_delta_square()).c2_pairing(x, y)
    return Verify30q(lhs, rhs, lhs == rhs)
