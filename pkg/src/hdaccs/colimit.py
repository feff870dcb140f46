"""Finite colimits of labelled precubical sets, computed dimension-wise."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from scipy.cluster.hierarchy import DisjointSet

from .precubical import LabelledPrecubicalSet


class ColimitError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    """A morphism of the diagram between objects ``src`` and ``dst``.

    ``components[n][x]`` is the image of the ``n``-cube ``x`` of the source.
    """

    src: int
    dst: int
    components: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Colimit:
    lps: LabelledPrecubicalSet
    injections: tuple[tuple[tuple[int, ...], ...], ...]

    def inject(self, obj: int, n: int, x: int) -> int:
        return self.injections[obj][n][x]


def colimit(objects: Sequence[LabelledPrecubicalSet], arrows: Sequence[Arrow]) -> Colimit:
    """Quotient the disjoint union of ``objects`` by ``x ~ m(x)`` for each arrow.

    Classes are numbered by their least member in (object, cube id) order, so
    the result depends only on the order of ``objects``. Two cubes of
    different labels landing in one class raise :class:`ColimitError`.
    """
    top = max((K.dim for K in objects), default=-1)
    offsets: list[list[int]] = []
    sizes = [0] * (top + 1)
    for K in objects:
        row = []
        for n in range(top + 1):
            row.append(sizes[n])
            sizes[n] += K.count(n)
        offsets.append(row)

    owners: list[list[tuple[int, int]]] = [[] for _ in range(top + 1)]
    for k, K in enumerate(objects):
        for n in range(top + 1):
            owners[n].extend((k, x) for x in K.cubes(n))

    sets = [DisjointSet(range(sizes[n])) for n in range(top + 1)]
    for a in arrows:
        src, dst = objects[a.src], objects[a.dst]
        for n in range(src.dim + 1):
            comp = a.components[n]
            so, do = offsets[a.src][n], offsets[a.dst][n]
            for x in src.cubes(n):
                sets[n].merge(so + x, do + comp[x])

    faces: list[tuple[tuple[int, ...], ...]] = []
    labels: list[tuple[tuple[str, ...], ...]] = []
    class_of: list[list[int]] = []
    for n in range(top + 1):
        roots = [sets[n][g] for g in range(sizes[n])]
        numbering: dict[int, int] = {}
        ids = []
        for root in roots:
            if root not in numbering:
                numbering[root] = len(numbering)
            ids.append(numbering[root])
        class_of.append(ids)
        lab: list[tuple[str, ...] | None] = [None] * len(numbering)
        fs: list[tuple[int, ...] | None] = [None] * len(numbering)
        for g, c in enumerate(ids):
            k, x = owners[n][g]
            K = objects[k]
            here = K.labels[n][x]
            if lab[c] is None:
                lab[c] = here
            elif lab[c] != here:
                raise ColimitError(f"{n}-cube class {c} mixes labels {lab[c]} and {here}")
            image = tuple(class_of[n - 1][offsets[k][n - 1] + f] for f in K.faces[n][x]) if n else ()
            if fs[c] is None:
                fs[c] = image
            elif fs[c] != image:
                raise ColimitError(f"{n}-cube class {c} has inconsistent faces")
        faces.append(tuple(fs))
        labels.append(tuple(lab))

    injections = tuple(
        tuple(tuple(class_of[n][offsets[k][n] + x] for x in K.cubes(n)) for n in range(K.dim + 1))
        for k, K in enumerate(objects)
    )
    return Colimit(LabelledPrecubicalSet(tuple(faces), tuple(labels)), injections)
