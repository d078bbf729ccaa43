from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkcycles.chern import (
    ChernVector,
    GradedClass,
    Poly,
    chern_dual,
    chern_from_roots,
    chern_sym_power_rank2,
    chern_tensor,
    sym_power_rank2_universal,
    trunc_mul,
)
from hkcycles.grassmann import Grassmannian, tautological_chern

ints = st.integers(-12, 12)
roots = lambda n: st.lists(ints, min_size=n, max_size=n)  # noqa: E731


def graded(*parts):
    return GradedClass(tuple(Fraction(p) for p in parts))


def total(v: ChernVector) -> GradedClass:
    return v.total(v.rank)


def product_of_lines(rs, trunc):
    return reduce(trunc_mul, [GradedClass.from_chern(ChernVector(1, (r,)), trunc) for r in rs])


# --- truncated multiplication ---------------------------------------------


def test_difference_of_squares():
    assert trunc_mul(graded(1, 1, 0), graded(1, -1, 0)) == graded(1, 0, -1)


def test_unit():
    x = graded(1, 3, "1/2", -7)
    assert GradedClass.one(3) * x == x


def test_schubert_convolution_degree_one():
    gr = Grassmannian(2, 6)
    a = GradedClass((Fraction(1), gr.schubert(1), gr.schubert(1, 1), gr.zero(), gr.zero()), gr)
    b = GradedClass((Fraction(1),) + tuple(gr.schubert(i) for i in range(1, 5)), gr)
    assert (a * b)[1] == 2 * gr.schubert(1)


def test_incompatible_rings():
    with pytest.raises(ValueError, match="incompatible graded rings"):
        trunc_mul(graded(1, 1), graded(1, 1, 1))
    with pytest.raises(ValueError, match="incompatible graded rings"):
        trunc_mul(graded(1, 1), GradedClass((Fraction(1), Fraction(1)), Grassmannian(2, 4)))


graded3 = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=4, max_size=4)


@given(graded3, graded3, graded3)
def test_trunc_mul_commutative_associative(a, b, c):
    a, b, c = (GradedClass(tuple(x)) for x in (a, b, c))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(graded3)
def test_inverse(a):
    a = GradedClass((Fraction(1),) + tuple(a[1:]))
    assert a * a.inverse() == GradedClass.one(3)


# --- duals -----------------------------------------------------------------


def test_dual_sign_rule():
    v = ChernVector(2, (Fraction(3), Fraction(5)))
    assert chern_dual(v) == ChernVector(2, (Fraction(-3), Fraction(5)))


def test_u_from_udual():
    gr = Grassmannian(2, 6)
    u = chern_dual(tautological_chern("Udual", gr))
    assert u.c == (-gr.schubert(1), gr.schubert(1, 1))
    assert u == tautological_chern("U", gr)
    # consistent with Whitney against c(Q)
    q = tautological_chern("Q", gr)
    assert u.total(gr.dim, gr) * q.total(gr.dim, gr) == GradedClass.one(gr.dim, gr)


@given(st.integers(1, 5).flatmap(roots))
def test_dual_involution_and_roots(rs):
    v = chern_from_roots(rs)
    assert chern_dual(chern_dual(v)) == v
    assert chern_dual(v) == chern_from_roots([-r for r in rs])


# --- symmetric powers ------------------------------------------------------


def test_sym3_universal():
    e1, e2 = Poly.var(0, 2), Poly.var(1, 2)
    c = sym_power_rank2_universal(3)
    assert c[0] == 6 * e1
    assert c[3] == 9 * e2 * (2 * e1 * e1 + e2)


def test_sym_power_small_k():
    v = ChernVector(2, (Fraction(2), Fraction(7)))
    assert chern_sym_power_rank2(1, v) == v
    assert chern_sym_power_rank2(0, v) == ChernVector(1, (Fraction(0),))


@settings(max_examples=150)
@given(ints, ints, st.integers(0, 6))
def test_sym_power_root_oracle(x, y, k):
    got = chern_sym_power_rank2(k, chern_from_roots([x, y]))
    if k == 0:
        assert got.c == (0,)
        return
    assert got == chern_from_roots([(k - i) * x + i * y for i in range(k + 1)])
    # Whitney: Sym^k(L1 + L2) splits into line bundles
    assert total(got) == product_of_lines([(k - i) * x + i * y for i in range(k + 1)], k + 1)


@settings(max_examples=150)
@given(ints, ints)
def test_sym3_c4_closed_form(x, y):
    v = chern_from_roots([x, y])
    c1, c2 = v.c
    assert chern_sym_power_rank2(3, v).c[3] == 9 * c2 * (2 * c1 * c1 + c2)
    assert chern_sym_power_rank2(3, v).c[0] == 6 * c1


# --- tensor products -------------------------------------------------------


def test_tensor_line_bundles():
    a, b = ChernVector(1, (Fraction(3),)), ChernVector(1, (Fraction(-5),))
    assert chern_tensor(a, b).c == (-2,)


def test_tensor_trivial_twist():
    a = ChernVector(2, (Fraction(2), Fraction(9)))
    assert chern_tensor(a, ChernVector(1, (Fraction(0),))) == a


def test_tangent_bundle_of_gr26():
    gr = Grassmannian(2, 6)
    t = chern_tensor(tautological_chern("Udual", gr), tautological_chern("Q", gr), 4)
    assert t.c[0] == 6 * gr.schubert(1)


@settings(max_examples=150)
@given(st.integers(1, 3).flatmap(roots), st.integers(1, 3).flatmap(roots))
def test_tensor_root_oracle(ra, rb):
    got = chern_tensor(chern_from_roots(ra), chern_from_roots(rb))
    assert got == chern_from_roots([x + y for x in ra for y in rb])


@settings(max_examples=100)
@given(st.integers(1, 2).flatmap(roots), st.integers(1, 2).flatmap(roots), st.integers(1, 2).flatmap(roots))
def test_tensor_whitney(ra1, ra2, rb):
    b = chern_from_roots(rb)
    whole = chern_tensor(chern_from_roots(ra1 + ra2), b)
    parts = [chern_tensor(chern_from_roots(r), b) for r in (ra1, ra2)]
    n = whole.rank
    assert total(whole) == trunc_mul(parts[0].total(n), parts[1].total(n))


def test_tensor_truncation_zeroes_high_classes():
    v = chern_tensor(chern_from_roots([1, 2]), chern_from_roots([3, 4, 5]), truncation=2)
    full = chern_from_roots([x + y for x in (1, 2) for y in (3, 4, 5)])
    assert v.c[:2] == full.c[:2] and all(c == 0 for c in v.c[2:])
