"""Labelled shells and the labelled coskeleton.

An ``n``-shell of ``K`` is a family of ``2(n + 1)`` ``n``-cubes fitting
together like the boundary of an ``(n + 1)``-cube, with labels compatible
with one sorted tuple of length ``n + 1``. When the vertices of ``K`` carry
coordinates in ``{0,1}^p``, a shell is non-twisted when its vertex map only
duplicates and freezes coordinates in increasing order.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, Sequence

from .labels import LabelTuple, delete, is_sorted
from .precubical import LabelledPrecubicalSet, face_index, vertex_of


class ShellError(ValueError):
    pass


@dataclass(frozen=True)
class Shell:
    ambient: LabelledPrecubicalSet
    n: int
    faces: tuple[int, ...]
    tuple: LabelTuple

    def face(self, i: int, alpha: int) -> int:
        return self.faces[face_index(i, alpha)]


@dataclass(frozen=True)
class Certificate:
    """``x0 = psi . phi``.

    ``phi`` lists the shell coordinate copied into each free slot;
    ``psi_free`` are the ambient positions of those slots and ``psi_const``
    the frozen ambient coordinates with their values.
    """

    phi: tuple[int, ...]
    psi_free: tuple[int, ...]
    psi_const: tuple[tuple[int, int], ...]


def corners(k: int) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=k))


def shell_vertex_map(s: Shell) -> tuple[int, ...]:
    """Vertex of the shell at each corner of ``{0,1}^(n+1)``, in binary order.

    Every corner is reached through each face containing it; disagreement
    means the face family is not a shell.
    """
    K, n = s.ambient, s.n
    out = []
    for eps in corners(n + 1):
        seen = {
            vertex_of(K, n, s.face(i, eps[i - 1]), eps[: i - 1] + eps[i:])
            for i in range(1, n + 2)
        }
        if len(seen) != 1:
            raise ShellError(f"corner {eps} reached at vertices {sorted(seen)}")
        out.append(seen.pop())
    return tuple(out)


def factor_vertex_map(images: Sequence[Sequence[int]], k: int) -> Certificate | None:
    """Factor a map ``{0,1}^k -> {0,1}^p`` as a duplication then a cube map.

    ``images`` lists the image of every corner in binary order. Returns the
    certificate, or ``None`` when some ambient coordinate is neither constant
    nor a copy of one input coordinate, or when the copied indices are not
    weakly increasing from 1 to ``k`` covering every index.
    """
    pts = corners(k)
    if len(images) != len(pts):
        raise ValueError(f"expected {len(pts)} images, got {len(images)}")
    p = len(images[0])
    phi, free, const = [], [], []
    for c in range(p):
        column = [img[c] for img in images]
        if not any(column):
            const.append((c, 0))
        elif all(column):
            const.append((c, 1))
        else:
            j = next((j for j in range(k) if all(col == pt[j] for col, pt in zip(column, pts))), None)
            if j is None:
                return None
            phi.append(j + 1)
            free.append(c)
    if not phi or phi[0] != 1 or phi[-1] != k:
        return None
    if any(a > b for a, b in zip(phi, phi[1:])) or set(phi) != set(range(1, k + 1)):
        return None
    return Certificate(tuple(phi), tuple(free), tuple(const))


def non_twisted_certificate(s: Shell) -> Certificate | None:
    coords = s.ambient.coords
    if coords is None:
        raise ShellError("ambient vertices carry no {0,1}^p coordinates")
    return factor_vertex_map([coords[v] for v in shell_vertex_map(s)], s.n + 1)


def is_non_twisted(s: Shell) -> bool:
    return non_twisted_certificate(s) is not None


def labelled_shells(K: LabelledPrecubicalSet, n: int) -> Iterator[Shell]:
    """Every labelled ``n``-shell of ``K``, twisted or not.

    Faces are placed in the order ``(1,0), (2,0), (2,1), ..., (n+1,1), (1,1)``
    so that each new face is pinned by a face already placed.
    """
    if n < 1 or K.count(n) == 0:
        return
    index: dict[tuple[int, int], list[int]] = defaultdict(list)
    for x in K.cubes(n):
        for slot, f in enumerate(K.faces[n][x]):
            index[(slot, f)].append(x)
    order = [(1, 0)] + [(i, a) for i in range(2, n + 2) for a in (0, 1)] + [(1, 1)]
    fam: dict[tuple[int, int], int] = {}

    def face_of(x: int, i: int, alpha: int) -> int:
        return K.faces[n][x][face_index(i, alpha)]

    def fits(i: int, alpha: int, x: int) -> bool:
        for (j, beta), y in fam.items():
            if j < i and face_of(x, j, beta) != face_of(y, i - 1, alpha):
                return False
            if i < j and face_of(y, i, alpha) != face_of(x, j - 1, beta):
                return False
        return True

    def pool(i: int, alpha: int) -> Sequence[int]:
        if i >= 2:
            return index.get((face_index(1, 0), face_of(fam[(1, 0)], i - 1, alpha)), ())
        if (1, 0) in fam:
            return index.get((face_index(1, 0), face_of(fam[(2, 0)], 1, 1)), ())
        return K.cubes(n)

    def extend(k: int) -> Iterator[Shell]:
        if k == len(order):
            faces = tuple(fam[(i, a)] for i in range(1, n + 2) for a in (0, 1))
            lead = K.labels[n][fam[(2, 0)]]
            tup = lead[:1] + K.labels[n][fam[(1, 0)]]
            if is_sorted(tup) and all(
                K.labels[n][faces[face_index(i, a)]] == delete(tup, i)
                for i in range(1, n + 2) for a in (0, 1)
            ):
                yield Shell(K, n, faces, tup)
            return
        i, alpha = order[k]
        for x in pool(i, alpha):
            if fits(i, alpha, x):
                fam[(i, alpha)] = x
                yield from extend(k + 1)
                del fam[(i, alpha)]

    yield from extend(0)


def enumerate_shells(K: LabelledPrecubicalSet, n: int) -> list[Shell]:
    """Non-twisted labelled ``n``-shells of ``K`` in a deterministic order."""
    if K.coords is None:
        raise ShellError("ambient vertices carry no {0,1}^p coordinates")
    return [s for s in labelled_shells(K, n) if is_non_twisted(s)]


def fill(K: LabelledPrecubicalSet, shells: Sequence[Shell]) -> LabelledPrecubicalSet:
    """Add one cube per shell, in the given order, with the shell's tuple as label."""
    if not shells:
        return K
    n = shells[0].n + 1
    faces = list(K.faces) + [()] * max(0, n + 1 - len(K.faces))
    labels = list(K.labels) + [()] * max(0, n + 1 - len(K.labels))
    faces[n] = tuple(faces[n]) + tuple(s.faces for s in shells)
    labels[n] = tuple(labels[n]) + tuple(s.tuple for s in shells)
    return LabelledPrecubicalSet(tuple(faces), tuple(labels), K.coords)


def cosk(K: LabelledPrecubicalSet) -> LabelledPrecubicalSet:
    """Fill non-twisted shells dimension after dimension until none remain.

    ``K`` must be 1-dimensional with its vertices coordinatized by all of
    ``{0,1}^p``. Shell vertex maps are injective, so no cube of dimension
    above ``p`` can appear.
    """
    if K.dim > 1:
        raise ShellError(f"input has cubes in dimension {K.dim}; expected at most 1")
    if K.coords is None:
        raise ShellError("input vertices carry no {0,1}^p coordinates")
    p = len(K.coords[0]) if K.coords else 0
    if sorted(K.coords) != corners(p):
        raise ShellError("vertex coordinates are not a bijection onto {0,1}^p")
    if p < 2:
        return K
    n = 1
    while True:
        shells = enumerate_shells(K, n)
        if not shells:
            return K
        K = fill(K, shells)
        n += 1
