import numpy as np
from hypothesis import given, settings, strategies as st

from teamlogic import lattice


def tables(m):
    return st.lists(st.booleans(), min_size=1 << m, max_size=1 << m).map(lambda xs: np.array(xs, dtype=bool))


@given(tables(4), tables(4))
def test_union_product_brute(f, g):
    out = lattice.union_product(f, g)
    for z in range(16):
        want = any(f[x] and g[y] for x in range(16) for y in range(16) if x | y == z)
        assert out[z] == want


@given(tables(4), tables(4))
def test_disjoint_product_brute(f, g):
    out = lattice.disjoint_product(f, g)
    for z in range(16):
        want = any(f[x] and g[z ^ x] for x in range(16) if x & ~z == 0)
        assert out[z] == want


@settings(max_examples=50)
@given(tables(3))
def test_zeta_mobius_inverse(a):
    z = lattice.zeta(a.astype(np.int64))
    assert (lattice.mobius(z) == a).all()


@given(tables(4))
def test_union_closure_and_irreducibles(a):
    closed = lattice.union_closure(a)
    for x in range(16):
        for y in range(16):
            if closed[x] and closed[y]:
                assert closed[x | y]
    assert closed[0]
    irr = lattice.union_irreducible(closed)
    assert (lattice.union_closure(irr) == closed).all()
    for x in np.flatnonzero(irr):
        below = [y for y in range(16) if closed[y] and y != x and y & ~x == 0]
        u = 0
        for y in below:
            u |= y
        assert u != x
