"""Transforms over the subset lattice of a ground set of ``m`` points.

Arrays of length ``2**m`` are indexed by bitmasks of the ground set. All
routines are vectorised with numpy and run in O(m * 2**m) (or O(m**2 * 2**m)
for the disjoint product).
"""

from __future__ import annotations

import numpy as np

MAX_GROUND = 20


def _check(a: np.ndarray) -> int:
    m = int(a.shape[0]).bit_length() - 1
    if a.shape[0] != 1 << m:
        raise ValueError("array length must be a power of two")
    return m


def indices(m: int) -> np.ndarray:
    return np.arange(1 << m, dtype=np.int64)


def popcounts(m: int) -> np.ndarray:
    idx = indices(m)
    pc = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        pc += (idx >> i) & 1
    return pc


def zeta(a: np.ndarray) -> np.ndarray:
    """Subset-sum transform: out[X] = sum of a[Y] over Y subset of X."""
    m = _check(a)
    out = np.array(a, dtype=np.int64, copy=True)
    for i in range(m):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return out


def mobius(a: np.ndarray) -> np.ndarray:
    """Inverse of :func:`zeta`."""
    m = _check(a)
    out = np.array(a, dtype=np.int64, copy=True)
    for i in range(m):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return out


def superset_any(a: np.ndarray) -> np.ndarray:
    """out[X] is true iff some Y containing X has a[Y]."""
    m = _check(a)
    out = np.array(a, dtype=bool, copy=True)
    for i in range(m):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 0, :] |= v[:, 1, :]
    return out


def subset_any(a: np.ndarray) -> np.ndarray:
    """out[X] is true iff some Y contained in X has a[Y]."""
    m = _check(a)
    out = np.array(a, dtype=bool, copy=True)
    for i in range(m):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] |= v[:, 0, :]
    return out


def union_product(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """out[X] iff X = Y | Z for some Y with f[Y] and Z with g[Z]."""
    counts = mobius(zeta(f.astype(np.int64)) * zeta(g.astype(np.int64)))
    return counts > 0


def disjoint_product(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """out[X] iff X = Y + Z (disjoint) with f[Y] and g[Z] (subset convolution)."""
    m = _check(f)
    pc = popcounts(m)
    fr = [zeta(np.where(pc == k, f, 0)) for k in range(m + 1)]
    gr = [zeta(np.where(pc == k, g, 0)) for k in range(m + 1)]
    out = np.zeros(1 << m, dtype=bool)
    for k in range(m + 1):
        acc = np.zeros(1 << m, dtype=np.int64)
        for j in range(k + 1):
            acc += fr[j] * gr[k - j]
        h = mobius(acc)
        out |= (pc == k) & (h > 0)
    return out


def union_below(a: np.ndarray) -> np.ndarray:
    """out[X] = bitwise OR of every Y subset of X with a[Y] (0 if none)."""
    m = _check(a)
    out = np.where(a, indices(m), 0)
    for i in range(m):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] |= v[:, 0, :]
    return out


def union_closure(a: np.ndarray) -> np.ndarray:
    """Closure of a family under arbitrary unions (the empty union included)."""
    m = _check(a)
    return union_below(a) == indices(m)


def union_irreducible(a: np.ndarray) -> np.ndarray:
    """Nonempty members of ``a`` that are not the union of strictly smaller members."""
    m = _check(a)
    idx = indices(m)
    below = union_below(a)
    strict = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        bit = 1 << i
        has = (idx & bit) != 0
        strict = np.where(has, strict | below[idx ^ bit], strict)
    return a & (idx != 0) & (strict != idx)


def or_image(members: np.ndarray, m: int) -> np.ndarray:
    """For each X, OR of ``members[i]`` over the points i in X."""
    out = np.zeros(1 << m, dtype=np.int64)
    idx = indices(m)
    for i in range(m):
        bit = 1 << i
        out = np.where((idx & bit) != 0, out | members[i], out)
    return out


def every_point_has_neighbour(nbr: list[int], m: int) -> np.ndarray:
    """out[X] iff every point i in X has X & nbr[i] != 0."""
    idx = indices(m)
    ok = np.ones(1 << m, dtype=bool)
    for i, mask in enumerate(nbr):
        ok &= ((idx >> i) & 1 == 0) | ((idx & mask) != 0)
    return ok
