"""Finite labelled precubical sets.

A labelled precubical set is stored dimension by dimension. ``faces[n][x]``
is a flat tuple of length ``2n`` holding the ``n - 1``-cubes
``d_i^alpha(x)`` at index ``2 * (i - 1) + alpha`` (``i`` is 1-based), and
``labels[n][x]`` is the sorted label tuple of length ``n`` carried by ``x``.
Cube identifiers are dense integers per dimension.

Some constructions need the vertices identified with ``{0,1}^p``; such sets
carry ``coords``, one bit tuple per vertex.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .labels import LabelTuple, delete, is_sorted

Faces = tuple[int, ...]


def face_index(i: int, alpha: int) -> int:
    return 2 * (i - 1) + alpha


@dataclass(frozen=True)
class LabelledPrecubicalSet:
    faces: tuple[tuple[Faces, ...], ...] = ()
    labels: tuple[tuple[LabelTuple, ...], ...] = ()
    coords: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        if len(self.faces) != len(self.labels):
            raise ValueError("faces and labels disagree on the number of dimensions")
        faces, labels = list(self.faces), list(self.labels)
        while faces and not labels[-1]:
            faces.pop()
            labels.pop()
        object.__setattr__(self, "faces", tuple(faces))
        object.__setattr__(self, "labels", tuple(labels))
        if self.coords is not None and len(self.coords) != self.count(0):
            raise ValueError("coords must list one bit tuple per vertex")

    @property
    def dim(self) -> int:
        """Top dimension holding a cube, or -1 for the empty set."""
        return len(self.labels) - 1

    def count(self, n: int) -> int:
        return len(self.labels[n]) if 0 <= n < len(self.labels) else 0

    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.labels)

    def total(self) -> int:
        return sum(self.counts())

    def cubes(self, n: int) -> range:
        return range(self.count(n))

    def all_cubes(self) -> Iterator[tuple[int, int]]:
        for n in range(len(self.labels)):
            for x in range(len(self.labels[n])):
                yield n, x

    def face(self, n: int, x: int, i: int, alpha: int) -> int:
        return self.faces[n][x][face_index(i, alpha)]

    def label(self, n: int, x: int) -> LabelTuple:
        return self.labels[n][x]

    def source(self, e: int) -> int:
        return self.faces[1][e][0]

    def target(self, e: int) -> int:
        return self.faces[1][e][1]

    def edges(self) -> Iterator[tuple[int, int, int, str]]:
        """Yield ``(edge, source, target, label)`` for every 1-cube."""
        for e in self.cubes(1):
            yield e, self.faces[1][e][0], self.faces[1][e][1], self.labels[1][e][0]

    def label_alphabet(self) -> set[str]:
        return {a for level in self.labels for t in level for a in t}

    def summary(self) -> str:
        return "/".join(str(c) for c in self.counts()) or "0"


class Builder:
    """Accumulates cubes dimension by dimension, then freezes them."""

    def __init__(self) -> None:
        self.faces: list[list[Faces]] = []
        self.labels: list[list[LabelTuple]] = []
        self.coords: list[tuple[int, ...]] | None = None

    def _grow(self, n: int) -> None:
        while len(self.faces) <= n:
            self.faces.append([])
            self.labels.append([])

    def add(self, n: int, faces: Sequence[int], label: LabelTuple) -> int:
        self._grow(n)
        self.faces[n].append(tuple(faces))
        self.labels[n].append(tuple(label))
        return len(self.labels[n]) - 1

    def add_vertex(self, coord: tuple[int, ...] | None = None) -> int:
        if coord is not None:
            if self.coords is None:
                self.coords = []
            self.coords.append(tuple(coord))
        return self.add(0, (), ())

    def count(self, n: int) -> int:
        return len(self.labels[n]) if n < len(self.labels) else 0

    def build(self) -> LabelledPrecubicalSet:
        coords = tuple(self.coords) if self.coords is not None else None
        return LabelledPrecubicalSet(
            tuple(tuple(level) for level in self.faces),
            tuple(tuple(level) for level in self.labels),
            coords,
        )


EMPTY = LabelledPrecubicalSet()


@dataclass(frozen=True)
class Violation:
    kind: str
    dim: int
    cube: int
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.dim}-cube {self.cube}: {self.detail}"


def validate(K: LabelledPrecubicalSet) -> list[Violation]:
    """Check face arity, cubical relations and label compatibility.

    Violations are returned, never raised; an empty list means ``K`` is a
    well-formed labelled precubical set.
    """
    out: list[Violation] = []
    for n, level in enumerate(K.faces):
        for x, fs in enumerate(level):
            label = K.labels[n][x]
            if len(fs) != 2 * n:
                out.append(Violation("arity", n, x, f"{len(fs)} faces, expected {2 * n}"))
                continue
            if len(label) != n:
                out.append(Violation("label-length", n, x, f"label {label} has length {len(label)}"))
                continue
            if not is_sorted(label):
                out.append(Violation("label-order", n, x, f"label {label} is not sorted"))
            bad = [f for f in fs if not 0 <= f < K.count(n - 1)]
            if bad:
                out.append(Violation("dangling-face", n, x, f"face ids {bad} out of range"))
                continue
            for i in range(1, n + 1):
                for alpha in (0, 1):
                    f = fs[face_index(i, alpha)]
                    if K.labels[n - 1][f] != delete(label, i):
                        out.append(Violation(
                            "label-compatibility", n, x,
                            f"d_{i}^{alpha} has label {K.labels[n - 1][f]}, expected {delete(label, i)}",
                        ))
            if n < 2:
                continue
            for j in range(2, n + 1):
                for i in range(1, j):
                    for alpha in (0, 1):
                        for beta in (0, 1):
                            lhs = K.faces[n - 1][fs[face_index(j, beta)]][face_index(i, alpha)]
                            rhs = K.faces[n - 1][fs[face_index(i, alpha)]][face_index(j - 1, beta)]
                            if lhs != rhs:
                                out.append(Violation(
                                    "cubical-relation", n, x,
                                    f"d_{i}^{alpha} d_{j}^{beta} = {lhs} but "
                                    f"d_{j - 1}^{beta} d_{i}^{alpha} = {rhs}",
                                ))
    return out


def standard_cube(n: int, t: Sequence[str]) -> LabelledPrecubicalSet:
    """The labelled cube ``[n]`` with interior label ``t``.

    ``k``-cubes are the maps ``[k] -> [n]`` of the cube category: a sorted
    ``k``-subset of free coordinates plus a 0/1 value on the others. Vertices
    come in binary order (first coordinate most significant) and carry their
    coordinates.
    """
    t = tuple(t)
    if len(t) != n:
        raise ValueError(f"label tuple {t} has length {len(t)}, expected {n}")
    if not is_sorted(t):
        raise ValueError(f"label tuple {t} is not sorted")
    b = Builder()
    index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    for k in range(n + 1):
        for free in itertools.combinations(range(n), k):
            rest = [c for c in range(n) if c not in free]
            for bits in itertools.product((0, 1), repeat=n - k):
                point = [None] * n
                for c, v in zip(rest, bits):
                    point[c] = v
                key = (free, tuple(point))
                fs = []
                for pos, c in enumerate(free):
                    for alpha in (0, 1):
                        sub = list(point)
                        sub[c] = alpha
                        fs.append(index[(free[:pos] + free[pos + 1:], tuple(sub))])
                label = tuple(t[c] for c in free)
                if k == 0:
                    index[key] = b.add_vertex(tuple(point))
                else:
                    index[key] = b.add(k, fs, label)
    return b.build()


def truncate(K: LabelledPrecubicalSet, n: int) -> LabelledPrecubicalSet:
    """Drop every cube of dimension above ``n``."""
    if n >= K.dim:
        return K
    if n < 0:
        return EMPTY
    return LabelledPrecubicalSet(K.faces[: n + 1], K.labels[: n + 1], K.coords)


def boundary(n: int, t: Sequence[str]) -> LabelledPrecubicalSet:
    return truncate(standard_cube(n, t), n - 1)


def vertex_of(K: LabelledPrecubicalSet, n: int, x: int, eps: Sequence[int]) -> int:
    """The corner of the ``n``-cube ``x`` sitting at ``eps``.

    Faces are taken from the last coordinate down, so the remaining
    coordinates keep their positions.
    """
    if len(eps) != n:
        raise ValueError(f"corner {tuple(eps)} has length {len(eps)}, expected {n}")
    for i in range(n, 0, -1):
        x = K.faces[i][x][face_index(i, eps[i - 1])]
    return x


def vertices_of(K: LabelledPrecubicalSet, n: int, x: int) -> list[int]:
    """All ``2^n`` corners of ``x`` in binary order."""
    return [vertex_of(K, n, x, eps) for eps in itertools.product((0, 1), repeat=n)]


@dataclass(frozen=True)
class PointedLPS:
    """A labelled precubical set with a distinguished initial vertex.

    ``decoration`` optionally names a process term for every vertex.
    ``approximate`` marks a finite unfolding of a recursion and ``truncated``
    marks output clipped by a dimension cap.
    """

    lps: LabelledPrecubicalSet
    initial: int
    decoration: tuple[Any, ...] | None = None
    approximate: bool = False
    truncated: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.initial < self.lps.count(0):
            raise ValueError(f"initial vertex {self.initial} is not a vertex")
        if self.decoration is not None and len(self.decoration) != self.lps.count(0):
            raise ValueError("decoration must cover every vertex")

    def with_initial_decoration(self, term: Any) -> "PointedLPS":
        if self.decoration is None:
            return self
        deco = list(self.decoration)
        deco[self.initial] = term
        return PointedLPS(self.lps, self.initial, tuple(deco), self.approximate, self.truncated)


@dataclass(frozen=True)
class PrecubMorphism:
    source: LabelledPrecubicalSet
    target: LabelledPrecubicalSet
    components: tuple[tuple[int, ...], ...] = field(default=())

    def __call__(self, n: int, x: int) -> int:
        return self.components[n][x]

    def violations(self) -> list[str]:
        S, T = self.source, self.target
        out = []
        if len(self.components) < len(S.labels):
            return [f"missing components above dimension {len(self.components) - 1}"]
        for n, x in S.all_cubes():
            y = self.components[n][x]
            if not 0 <= y < T.count(n):
                out.append(f"{n}-cube {x} maps outside the target")
                continue
            if S.labels[n][x] != T.labels[n][y]:
                out.append(f"{n}-cube {x} changes label {S.labels[n][x]} -> {T.labels[n][y]}")
            image = tuple(self.components[n - 1][f] for f in S.faces[n][x]) if n else ()
            if image != T.faces[n][y]:
                out.append(f"{n}-cube {x} does not commute with faces")
        return out

    def is_injective(self) -> bool:
        return all(len(set(c)) == len(c) for c in self.components)


def coproduct_pointed(P: PointedLPS, Q: PointedLPS) -> PointedLPS:
    """Disjoint union of ``P`` and ``Q`` with the two initial vertices merged.

    ``P`` keeps its identifiers; ``Q``'s cubes follow, minus its initial
    vertex, which becomes ``P.initial``. The merged vertex keeps ``P``'s
    decoration.
    """
    return _amalgamate(P, P.initial, Q, keep_left_decoration=True)


def glue_pushout(A: PointedLPS, f: int, B: PointedLPS) -> PointedLPS:
    """Identify the vertex ``f`` of ``A`` with the initial vertex of ``B``.

    The glued vertex takes ``B``'s decoration of its initial state.
    """
    if not 0 <= f < A.lps.count(0):
        raise ValueError(f"{f} is not a vertex of the left operand")
    return _amalgamate(A, f, B, keep_left_decoration=False)


def _amalgamate(A: PointedLPS, f: int, B: PointedLPS, keep_left_decoration: bool) -> PointedLPS:
    K, L = A.lps, B.lps
    nv = K.count(0)
    vmap = []
    for v in L.cubes(0):
        if v == B.initial:
            vmap.append(f)
        else:
            vmap.append(nv)
            nv += 1
    maps: list[list[int]] = [vmap]
    faces = [list(K.faces[0]) + [()] * (L.count(0) - 1)]
    labels = [list(K.labels[0]) + [()] * (L.count(0) - 1)]
    for n in range(1, max(len(K.labels), len(L.labels))):
        off = K.count(n)
        maps.append([off + x for x in L.cubes(n)])
        faces.append(
            list(K.faces[n] if n < len(K.faces) else ())
            + [tuple(maps[n - 1][g] for g in L.faces[n][x]) for x in L.cubes(n)]
        )
        labels.append(list(K.labels[n] if n < len(K.labels) else ()) + [L.labels[n][x] for x in L.cubes(n)])
    lps = LabelledPrecubicalSet(tuple(map(tuple, faces)), tuple(map(tuple, labels)))
    deco = None
    if A.decoration is not None and B.decoration is not None:
        d = list(A.decoration) + [None] * (nv - K.count(0))
        for v in L.cubes(0):
            if v == B.initial and keep_left_decoration:
                continue
            d[vmap[v]] = B.decoration[v]
        deco = tuple(d)
    return PointedLPS(
        lps, A.initial, deco,
        approximate=A.approximate or B.approximate,
        truncated=A.truncated or B.truncated,
    )


def pullback_labels(K: LabelledPrecubicalSet, allowed: Iterable[str]) -> LabelledPrecubicalSet:
    """Keep the cubes whose labels all lie in ``allowed``; every vertex survives."""
    allowed = set(allowed)
    remap: list[dict[int, int]] = []
    faces, labels = [], []
    for n in range(len(K.labels)):
        keep = [x for x in K.cubes(n) if all(a in allowed for a in K.labels[n][x])]
        remap.append({x: k for k, x in enumerate(keep)})
        faces.append(tuple(tuple(remap[n - 1][g] for g in K.faces[n][x]) for x in keep))
        labels.append(tuple(K.labels[n][x] for x in keep))
    return LabelledPrecubicalSet(tuple(faces), tuple(labels), K.coords)


def relabel_ids(K: LabelledPrecubicalSet, perms: Sequence[Sequence[int]]) -> LabelledPrecubicalSet:
    """Rename cubes: old cube ``x`` of dimension ``n`` becomes ``perms[n][x]``."""
    faces, labels = [], []
    for n in range(len(K.labels)):
        f = [()] * K.count(n)
        lab = [()] * K.count(n)
        for x in K.cubes(n):
            y = perms[n][x]
            f[y] = tuple(perms[n - 1][g] for g in K.faces[n][x]) if n else ()
            lab[y] = K.labels[n][x]
        faces.append(tuple(f))
        labels.append(tuple(lab))
    coords = None
    if K.coords is not None:
        c = [None] * K.count(0)
        for v in K.cubes(0):
            c[perms[0][v]] = K.coords[v]
        coords = tuple(c)
    return LabelledPrecubicalSet(tuple(faces), tuple(labels), coords)
