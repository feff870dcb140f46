"""Parallel composition with synchronization.

For an ``m``-cube ``x`` and an ``n``-cube ``y`` the synchronization grid is
the 1-skeleton of ``[m] x [n]`` plus one ``tau`` diagonal for every pair of
edges carrying complementary labels. The product of two labelled
precubical sets glues the coskeleta of all such grids along the face maps
of ``x`` and ``y``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable

from .colimit import Arrow, colimit
from .labels import TAU, LabelTuple, delete, involution
from .precubical import Builder, LabelledPrecubicalSet, PointedLPS, truncate
from .shells import cosk


class FunctorialityError(RuntimeError):
    """A face map failed to induce a map between coskeleta."""


@dataclass(frozen=True)
class SyncGrid:
    """``Z`` for a pair of cubes with the given label tuples.

    Vertex ids enumerate ``{0,1}^m x {0,1}^n`` in binary order, ``x``
    coordinates first. ``Z.coords`` lists the same bits reordered by a stable
    sort on the coordinates' labels, ``x`` before ``y`` on ties.
    """

    labels_m: LabelTuple
    labels_n: LabelTuple
    Z: LabelledPrecubicalSet
    edge_ids: dict[tuple[int, int], int]

    @property
    def m(self) -> int:
        return len(self.labels_m)

    @property
    def n(self) -> int:
        return len(self.labels_n)

    def vertex(self, eps: tuple[int, ...], eta: tuple[int, ...]) -> int:
        return _bits_to_int(eps + eta)

    def bits(self, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        b = _int_to_bits(v, self.m + self.n)
        return b[: self.m], b[self.m:]


def _bits_to_int(bits: tuple[int, ...]) -> int:
    out = 0
    for b in bits:
        out = 2 * out + b
    return out


def _int_to_bits(v: int, k: int) -> tuple[int, ...]:
    return tuple((v >> (k - 1 - c)) & 1 for c in range(k))


def coordinate_order(labels_m: LabelTuple, labels_n: LabelTuple) -> list[int]:
    keys = [(a, 0, k) for k, a in enumerate(labels_m)] + [(b, 1, k) for k, b in enumerate(labels_n)]
    m = len(labels_m)
    return [k if side == 0 else m + k for _, side, k in sorted(keys)]


@lru_cache(maxsize=None)
def sync_grid(labels_m: LabelTuple, labels_n: LabelTuple) -> SyncGrid:
    m, n = len(labels_m), len(labels_n)
    order = coordinate_order(labels_m, labels_n)
    b = Builder()
    for bits in itertools.product((0, 1), repeat=m + n):
        b.add_vertex(tuple(bits[c] for c in order))
    edge_ids: dict[tuple[int, int], int] = {}
    labels = tuple(labels_m) + tuple(labels_n)
    for v in range(2 ** (m + n)):
        bits = _int_to_bits(v, m + n)
        for c in range(m + n):
            if bits[c] == 0:
                t = v | (1 << (m + n - 1 - c))
                edge_ids[(v, t)] = b.add(1, (v, t), (labels[c],))
        for k in range(m):
            for l in range(n):
                if bits[k] == 0 and bits[m + l] == 0 and involution(labels_m[k]) == labels_n[l]:
                    t = v | (1 << (m + n - 1 - k)) | (1 << (n - 1 - l))
                    edge_ids[(v, t)] = b.add(1, (v, t), (TAU,))
    return SyncGrid(tuple(labels_m), tuple(labels_n), b.build(), edge_ids)


@lru_cache(maxsize=None)
def grid_cosk(labels_m: LabelTuple, labels_n: LabelTuple) -> LabelledPrecubicalSet:
    return cosk(sync_grid(labels_m, labels_n).Z)


@lru_cache(maxsize=None)
def induced_map(labels_m: LabelTuple, labels_n: LabelTuple, side: int, i: int, alpha: int):
    """Components of the map on coskeleta induced by ``d_i^alpha`` on one side.

    ``side`` 0 takes the face of the ``x`` cube, 1 of the ``y`` cube. The
    source grid is the one of the face, the target the one of the full pair.
    """
    if side == 0:
        small = (delete(labels_m, i), labels_n)
        pos = i - 1
    else:
        small = (labels_m, delete(labels_n, i))
        pos = len(labels_m) + i - 1
    G, g = sync_grid(labels_m, labels_n), sync_grid(*small)
    S, T = grid_cosk(*small), grid_cosk(labels_m, labels_n)
    k = g.m + g.n
    vmap = []
    for v in range(2 ** k):
        bits = _int_to_bits(v, k)
        vmap.append(_bits_to_int(bits[:pos] + (alpha,) + bits[pos:]))
    comps = [tuple(vmap)]
    emap = []
    for e in S.cubes(1):
        key = (vmap[S.faces[1][e][0]], vmap[S.faces[1][e][1]])
        if key not in G.edge_ids:
            raise FunctorialityError(f"grid edge {key} missing")
        emap.append(G.edge_ids[key])
    comps.append(tuple(emap))
    for n in range(2, S.dim + 1):
        lookup = {(T.faces[n][y], T.labels[n][y]): y for y in T.cubes(n)}
        row = []
        for x in S.cubes(n):
            key = (tuple(comps[n - 1][f] for f in S.faces[n][x]), S.labels[n][x])
            if key not in lookup:
                raise FunctorialityError(f"image of {n}-cube {x} is not filled")
            row.append(lookup[key])
        comps.append(tuple(row))
    return tuple(comps[: S.dim + 1])


def tensor_sigma(
    K: PointedLPS,
    L: PointedLPS,
    combine: Callable[[Any, Any], Any] | None = None,
    dim_cap: int | None = None,
) -> PointedLPS:
    """The synchronized tensor product of two pointed labelled precubical sets.

    ``combine`` builds the decoration of a product vertex from the two
    component decorations; without it decorations are dropped.
    """
    A, B = K.lps, L.lps
    keys = list(itertools.product(list(A.all_cubes()), list(B.all_cubes())))
    obj = {key: k for k, key in enumerate(keys)}
    truncated = False
    objects = []
    for (m, x), (n, y) in keys:
        C = grid_cosk(A.labels[m][x], B.labels[n][y])
        if dim_cap is not None and C.dim > dim_cap:
            C = truncate(C, dim_cap)
            truncated = True
        objects.append(C)
    arrows = []
    for k, ((m, x), (n, y)) in enumerate(keys):
        lx, ly = A.labels[m][x], B.labels[n][y]
        for i in range(1, m + 1):
            for alpha in (0, 1):
                src = obj[((m - 1, A.faces[m][x][2 * (i - 1) + alpha]), (n, y))]
                comps = induced_map(lx, ly, 0, i, alpha)
                arrows.append(Arrow(src, k, comps[: objects[src].dim + 1]))
        for j in range(1, n + 1):
            for beta in (0, 1):
                src = obj[((m, x), (n - 1, B.faces[n][y][2 * (j - 1) + beta]))]
                comps = induced_map(lx, ly, 1, j, beta)
                arrows.append(Arrow(src, k, comps[: objects[src].dim + 1]))
    col = colimit(objects, arrows)
    initial = col.inject(obj[((0, K.initial), (0, L.initial))], 0, 0)
    deco = None
    if combine is not None and K.decoration is not None and L.decoration is not None:
        d: list[Any] = [None] * col.lps.count(0)
        for u in A.cubes(0):
            for v in B.cubes(0):
                d[col.inject(obj[((0, u), (0, v))], 0, 0)] = combine(K.decoration[u], L.decoration[v])
        deco = tuple(d)
    return PointedLPS(
        col.lps, initial, deco,
        approximate=K.approximate or L.approximate,
        truncated=truncated or K.truncated or L.truncated,
    )
