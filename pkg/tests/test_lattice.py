from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import gram_and_vectors, grams, vectors

from hkcycles.blowup import K3Surface, c2_intersection, derive_delta_square
from hkcycles.lattice import HilbSquareH2, KummerH2, Lattice, rank_checks, signature, sym2_rank
from hkcycles.qq import ParseError

U = Lattice.hyperbolic_plane()


def test_signature_examples():
    assert signature(Lattice.diagonal(-2)) == (0, 1, 0)
    assert signature(U) == (1, 1, 0)
    assert signature(Lattice.diagonal(2, -2, 0)) == (1, 1, 1)
    assert signature(Lattice(())) == (0, 0, 0)


def test_k3_lattice_signature():
    e8 = [
        [2, -1, 0, 0, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0, 0, 0],
        [0, -1, 2, -1, 0, 0, 0, 0],
        [0, 0, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, -1],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, 0],
        [0, 0, 0, 0, -1, 0, 0, 2],
    ]
    e8_neg = Lattice(tuple(tuple(-v for v in row) for row in e8))
    k3 = U.orthogonal_sum(U).orthogonal_sum(U).orthogonal_sum(e8_neg).orthogonal_sum(e8_neg)
    assert k3.rank == 22
    assert signature(k3) == (3, 19, 0)
    assert round(abs(np.linalg.det(np.array(k3.gram, dtype=float)))) == 1
    h2 = HilbSquareH2.from_k3(k3)
    assert signature(h2.lattice()) == (3, 20, 0)


def unimodular(draw, n):
    p = np.eye(n, dtype=int)
    for _ in range(draw(st.integers(0, 8))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            p[:, i] *= -1
        else:
            p[:, i] += draw(st.integers(-2, 2)) * p[:, j]
    return p


@given(st.data())
def test_signature_unimodular_invariance(data):
    lat = data.draw(grams(1, 5))
    p = unimodular(data.draw, lat.rank)
    g = np.array(lat.gram, dtype=object).astype(int)
    conj = p.T @ g @ p
    assert signature(Lattice(tuple(tuple(int(v) for v in r) for r in conj))) == signature(lat)


@settings(max_examples=200)
@given(grams(1, 6))
def test_signature_eigenvalue_oracle(lat):
    g = np.array(lat.gram, dtype=float)
    eig = np.linalg.eigvalsh(g)
    pos, neg, zero = signature(lat)
    assert zero == lat.rank - np.linalg.matrix_rank(g)
    if zero == 0:
        assert (pos, neg) == (int((eig > 0).sum()), int((eig < 0).sum()))


def test_symmetric_gram_required():
    with pytest.raises(ValueError):
        Lattice(((0, 1), (2, 0)))


def test_json_roundtrip():
    lat = Lattice(((2, Fraction(1, 2)), (Fraction(1, 2), -2)), ("a", "b"))
    data = lat.to_json()
    assert data == {"labels": ["a", "b"], "gram": [[2, "1/2"], ["1/2", -2]]}
    assert Lattice.from_json(data) == lat
    for bad in ['{"gram": [[1, 2]]}', "[1", '{"labels": []}']:
        with pytest.raises(ParseError):
            Lattice.from_json(bad)


# --- Hilbert square H^2 ----------------------------------------------------


def test_q_pair_examples():
    h2 = HilbSquareH2.from_k3(U)
    assert h2.delta_square == -2 == h2.q_pair([0, 0, 1], [0, 0, 1])
    assert h2.q_pair([1, 3, 0], [0, 0, 1]) == 0
    assert h2.q_pair([1, 0, 0], [1, 0, 0]) == 0
    assert h2.c2_pairing([1, 0, 0], [1, 0, 0]) == 0
    assert h2.c2_pairing([1, 0, 0], [0, 2, 0]) == 60
    assert h2.c2_pairing([0, 0, 1], [0, 0, 1]) == -60


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        HilbSquareH2.from_k3(U).q_pair([1, 0], [1, 0, 0])
    with pytest.raises(ValueError):
        U.pair([1], [1, 0])


@given(st.data())
def test_q_symmetric_bilinear(data):
    lat = data.draw(grams(0, 4))
    h2 = HilbSquareH2.from_k3(lat)
    x, y, z = (data.draw(vectors(h2.rank)) for _ in range(3))
    a, b = data.draw(st.integers(-5, 5)), data.draw(st.integers(-5, 5))
    assert h2.q_pair(x, y) == h2.q_pair(y, x)
    lin = [a * u + b * v for u, v in zip(x, z)]
    assert h2.q_pair(lin, y) == a * h2.q_pair(x, y) + b * h2.q_pair(z, y)


@pytest.mark.parametrize(
    "k3", [U, U.orthogonal_sum(U), U.orthogonal_sum(Lattice.diagonal(-2))], ids=["U", "U+U", "U+<-2>"]
)
def test_isotropic_classes_have_zero_c2_degree(k3):
    h2 = HilbSquareH2.from_k3(k3)
    surface = K3Surface(k3)
    found = 0
    for x in product(range(-2, 3), repeat=h2.rank):
        if any(x) and h2.q_pair(x, x) == 0:
            found += 1
            assert h2.c2_pairing(x, x) == 0
            assert c2_intersection(surface, x, x) == 0
    assert found > 0


@settings(max_examples=150)
@given(gram_and_vectors())
def test_cross_oracle_with_blowup(case):
    lat, x, y = case
    h2 = HilbSquareH2.from_k3(lat)
    assert h2.c2_pairing(x, y) == c2_intersection(K3Surface(lat), x, y)


def test_delta_square_is_derived():
    assert HilbSquareH2.from_k3(U).delta_square == derive_delta_square() == -2


# --- Kummer type and rank bookkeeping --------------------------------------


def test_kummer_constant_unset():
    a = U.orthogonal_sum(U).orthogonal_sum(U)
    k = KummerH2(a, -6)
    assert k.rank == 7
    assert k.q_pair([0] * 6 + [1], [0] * 6 + [1]) == -6
    with pytest.raises(ValueError):
        k.c2_pairing([0] * 7, [0] * 7)
    assert KummerH2(a, -6, c2_constant=5).c2_pairing([0] * 6 + [1], [0] * 6 + [1]) == -30


def test_rank_checks():
    r = rank_checks()
    assert r["k3n2"] == {"b2": 23, "sym2_b2": 276}
    assert r["kummer"]["b2"] == 7
    assert r["kummer"]["sym2_b2"] + r["kummer"]["unimodular_summand"] == 108 == r["kummer"]["b4"]
    assert r["abelian_3_torsion"] == 81
    assert r["ok"] is True
    assert sym2_rank(23) == 23 * 24 // 2
