"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from hkcycles.lattice import Lattice


@st.composite
def grams(draw, min_rank=0, max_rank=4, bound=10):
    n = draw(st.integers(min_rank, max_rank))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(-bound, bound))
    return Lattice(tuple(tuple(r) for r in m))


def vectors(n, bound=3):
    return st.lists(st.integers(-bound, bound), min_size=n, max_size=n)


@st.composite
def gram_and_vectors(draw, min_rank=0, max_rank=4):
    """A K3 Gram of rank <= 4 and two vectors (K3 part, then delta)."""
    lat = draw(grams(min_rank, max_rank))
    x = draw(vectors(lat.rank + 1))
    y = draw(vectors(lat.rank + 1))
    return lat, x, y
