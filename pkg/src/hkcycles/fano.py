"""The variety of lines X = F(Y) of a cubic fourfold Y, inside Gr(2,6).

X is cut out by a section of Sym^3 U^dual, so integration over X is
``alpha -> integral over Gr of alpha * c_4(Sym^3 U^dual)``. Codimension-2
classes are recorded in the basis (g^2, c) with ``g = s[1]`` and
``c = c_2(U^dual) = s[1,1]``; since ``s[1]^2 = s[2] + s[1,1]`` the restriction
is ``s[2] -> g^2 - c`` and ``s[1,1] -> c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chern import GradedClass, chern_sym_power_rank2, chern_tensor
from .grassmann import Grassmannian, SchubertClass, tautological_chern
from .qq import fmt, qq

GR26 = Grassmannian(2, 6)
TRUNCATION = 4


@dataclass(frozen=True)
class FanoClass2:
    """Codimension-2 class ``a*g^2 + b*c`` on X."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", qq(self.a))
        object.__setattr__(self, "b", qq(self.b))

    def __add__(self, other: "FanoClass2") -> "FanoClass2":
        return FanoClass2(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "FanoClass2") -> "FanoClass2":
        return FanoClass2(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "FanoClass2":
        return FanoClass2(-self.a, -self.b)

    def __mul__(self, scalar) -> "FanoClass2":
        s = qq(scalar)
        return FanoClass2(s * self.a, s * self.b)

    __rmul__ = __mul__

    def vector(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def lift(self) -> SchubertClass:
        """A Schubert class on Gr(2,6) restricting to this class."""
        return self.a * GR26.schubert(1) ** 2 + self.b * GR26.schubert(1, 1)

    def __str__(self):
        parts = [(coeff, sym) for coeff, sym in ((self.a, "g2"), (self.b, "c")) if coeff]
        if not parts:
            return "0"
        out = ""
        for coeff, sym in parts:
            body = sym if abs(coeff) == 1 else f"{fmt(abs(coeff))}*{sym}"
            if not out:
                out = ("-" if coeff < 0 else "") + body
            else:
                out += f" {'-' if coeff < 0 else '+'} {body}"
        return out


G2 = FanoClass2(1, 0)
C = FanoClass2(0, 1)


def restrict_codim2(alpha: SchubertClass) -> FanoClass2:
    """Restriction of a codimension-2 Schubert class to X."""
    if alpha.degrees() - {2}:
        raise ValueError("expected a codimension-2 class")
    s2, s11 = alpha.coefficient(2), alpha.coefficient(1, 1)
    return FanoClass2(s2, s11 - s2)


def restrict_codim1(alpha: SchubertClass) -> Fraction:
    """Restriction of a divisor class to X, as a multiple of g."""
    if alpha.degrees() - {1}:
        raise ValueError("expected a codimension-1 class")
    return alpha.coefficient(1)


@lru_cache(maxsize=None)
def fundamental_class() -> SchubertClass:
    """[X] = c_4(Sym^3 U^dual), expanded in the Schubert basis."""
    return chern_sym_power_rank2(3, tautological_chern("Udual", GR26)).c[3]


def integrate_on_x(alpha: SchubertClass) -> Fraction:
    if alpha.degrees() - {4}:
        raise ValueError("expected codimension-4 class")
    return (alpha * fundamental_class()).integrate()


@lru_cache(maxsize=None)
def chern_classes_of_x() -> tuple[Fraction, FanoClass2]:
    """(c_1(X) as a multiple of g, c_2(X) in the (g^2, c) basis).

    From ``0 -> T_X -> T_Gr|_X -> Sym^3 U^dual|_X -> 0`` with
    ``T_Gr = U^dual (x) Q``; the quotient of total Chern classes is taken on
    Gr and then restricted.
    """
    udual = tautological_chern("Udual", GR26)
    tangent = chern_tensor(udual, tautological_chern("Q", GR26), TRUNCATION)
    normal = chern_sym_power_rank2(3, udual)
    c_x = GradedClass.from_chern(tangent, TRUNCATION, GR26) / GradedClass.from_chern(
        normal, TRUNCATION, GR26
    )
    return restrict_codim1(c_x[1]), restrict_codim2(c_x[2])


@lru_cache(maxsize=None)
def pairing_matrix() -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Intersection matrix on codimension-2 classes in the basis (g^2, c)."""
    basis = [G2.lift(), C.lift()]
    return tuple(tuple(integrate_on_x(x * y) for y in basis) for x in basis)


def pair_fano(x: FanoClass2, y: FanoClass2) -> Fraction:
    m = pairing_matrix()
    xv, yv = x.vector(), y.vector()
    return sum(xv[i] * m[i][j] * yv[j] for i in range(2) for j in range(2))


def c2() -> FanoClass2:
    return chern_classes_of_x()[1]


def invariants() -> dict:
    """Summary of the computed invariants of X."""
    g = GR26.schubert(1)
    c = GR26.schubert(1, 1)
    c1, c2x = chern_classes_of_x()
    return {
        "ambient": "Gr(2,6)",
        "fundamental_class": str(fundamental_class()),
        "g4": integrate_on_x(g**4),
        "g2c": integrate_on_x(g**2 * c),
        "c2": integrate_on_x(c * c),
        "pairing_matrix": [list(r) for r in pairing_matrix()],
        "c1_X": c1,
        "c2_X": [c2x.a, c2x.b],
        "c2_X_str": str(c2x),
        "c2_X.g2": pair_fano(c2x, G2),
        "c2_X.c": pair_fano(c2x, C),
        "c2_X.c2_X": pair_fano(c2x, c2x),
    }
