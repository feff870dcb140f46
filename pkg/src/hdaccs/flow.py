"""The discrete flow of a labelled precubical set, up to dimension 2.

States are vertices. Morphisms from ``s`` to ``t`` are edge paths modulo the
swaps ``[d_1^0 c, d_2^1 c] = [d_2^0 c, d_1^1 c]`` across every 2-cube ``c``;
both sides run from the ``(0,0)`` corner of ``c`` to its ``(1,1)`` corner.
Cubes of dimension 3 and up play no role. There are no identity morphisms.
"""
from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Any, Iterable

from .ccs.terms import is_terminated
from .precubical import LabelledPrecubicalSet, PointedLPS

Path = tuple[int, ...]


class CyclicSkeletonError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CommWord:
    """A nonempty multiset of labels, multiplied by multiset union."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("a commutative word is never empty")
        object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    @classmethod
    def of(cls, *letters: str) -> "CommWord":
        return cls(tuple(letters))

    def __mul__(self, other: "CommWord") -> "CommWord":
        return CommWord(self.letters + other.letters)

    def counts(self) -> Counter:
        return Counter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "*".join(self.letters)


@dataclass(frozen=True)
class MorphismClass:
    id: int
    source: int
    target: int
    representative: Path
    members: frozenset[Path] = field(repr=False)
    label: CommWord
    length: int


@dataclass(frozen=True)
class FlowSet:
    states: int
    edges: tuple[tuple[int, int, str], ...]
    homs: dict[tuple[int, int], tuple[MorphismClass, ...]] = field(repr=False)
    by_path: dict[Path, MorphismClass] = field(repr=False, compare=False)

    def hom(self, s: int, t: int) -> tuple[MorphismClass, ...]:
        return self.homs.get((s, t), ())

    def classes(self) -> Iterable[MorphismClass]:
        for key in sorted(self.homs):
            yield from self.homs[key]

    def class_of(self, path: Path) -> MorphismClass:
        return self.by_path[tuple(path)]

    def compose(self, x: MorphismClass, y: MorphismClass) -> MorphismClass:
        if x.target != y.source:
            raise ValueError(f"class {x.id} ends at {x.target}, class {y.id} starts at {y.source}")
        return self.by_path[x.representative + y.representative]

    def outgoing(self, s: int) -> list[int]:
        return [e for e, (a, _, _) in enumerate(self.edges) if a == s]


def square_swaps(K: LabelledPrecubicalSet) -> dict[tuple[int, int], set[tuple[int, int]]]:
    swaps: dict[tuple[int, int], set[tuple[int, int]]] = defaultdict(set)
    if K.dim < 2:
        return swaps
    for fs in K.faces[2]:
        lower = (fs[0], fs[3])
        upper = (fs[2], fs[1])
        swaps[lower].add(upper)
        swaps[upper].add(lower)
    return swaps


def _check_acyclic(K: LabelledPrecubicalSet) -> None:
    ts = TopologicalSorter({v: set() for v in K.cubes(0)})
    for _, s, t, _ in K.edges():
        ts.add(t, s)
    try:
        ts.prepare()
    except CycleError as exc:
        raise CyclicSkeletonError(f"1-skeleton has a cycle through {exc.args[1]}") from None


def _paths_from(K: LabelledPrecubicalSet, s: int, out: list[list[int]]) -> dict[int, list[Path]]:
    found: dict[int, list[Path]] = defaultdict(list)
    stack: list[tuple[int, Path]] = [(s, ())]
    while stack:
        v, path = stack.pop()
        for e in out[v]:
            p = path + (e,)
            w = K.faces[1][e][1]
            found[w].append(p)
            stack.append((w, p))
    return found


def _close(paths: list[Path], swaps) -> list[set[Path]]:
    """Partition ``paths`` under elementary swaps, breadth first."""
    seen: set[Path] = set()
    classes = []
    for p in sorted(paths):
        if p in seen:
            continue
        seen.add(p)
        cls = {p}
        queue = deque([p])
        while queue:
            q = queue.popleft()
            for k in range(len(q) - 1):
                for alt in swaps.get((q[k], q[k + 1]), ()):
                    r = q[:k] + alt + q[k + 2:]
                    if r not in seen:
                        seen.add(r)
                        cls.add(r)
                        queue.append(r)
        classes.append(cls)
    return classes


def bad_realization_le2(K: LabelledPrecubicalSet) -> FlowSet:
    """Discrete flow of ``K`` truncated at dimension 2.

    Raises :class:`CyclicSkeletonError` when edges form a cycle, since hom
    sets would then be infinite.
    """
    _check_acyclic(K)
    out: list[list[int]] = [[] for _ in K.cubes(0)]
    for e, s, _, _ in K.edges():
        out[s].append(e)
    swaps = square_swaps(K)
    homs: dict[tuple[int, int], tuple[MorphismClass, ...]] = {}
    by_path: dict[Path, MorphismClass] = {}
    next_id = 0
    for s in K.cubes(0):
        found = _paths_from(K, s, out)
        for t in sorted(found):
            row = []
            for members in _close(found[t], swaps):
                rep = min(members)
                mc = MorphismClass(
                    next_id, s, t, rep, frozenset(members),
                    CommWord(tuple(K.labels[1][e][0] for e in rep)), len(rep),
                )
                next_id += 1
                row.append(mc)
                for p in members:
                    by_path[p] = mc
            homs[(s, t)] = tuple(row)
    edges = tuple((s, t, a) for _, s, t, a in K.edges())
    return FlowSet(K.count(0), edges, homs, by_path)


def path_classes(F: FlowSet, s: int, t: int) -> tuple[MorphismClass, ...]:
    if not (0 <= s < F.states and 0 <= t < F.states):
        raise KeyError(f"no state pair ({s}, {t})")
    return F.hom(s, t)


def word_label(F: FlowSet, m: MorphismClass) -> CommWord:
    return m.label


def class_length(F: FlowSet, m: MorphismClass) -> int:
    return m.length


@dataclass(frozen=True)
class Report:
    states: int
    cubes: tuple[int, ...]
    classes: dict[str, int]
    deadlocks: tuple[int, ...]
    finals: tuple[int, ...]
    initial: int | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "states": self.states,
            "cubes": list(self.cubes),
            "classes": self.classes,
            "deadlocks": list(self.deadlocks),
            "finals": list(self.finals),
            "initial": self.initial,
        }


def analyze(F: FlowSet, K: PointedLPS | LabelledPrecubicalSet) -> Report:
    """State, cube and class counts plus deadlocks.

    A state with no outgoing edge is final when it is decorated by a
    terminated term (or when no decoration is known) and a deadlock
    otherwise.
    """
    pointed = K if isinstance(K, PointedLPS) else None
    lps = pointed.lps if pointed else K
    deco = pointed.decoration if pointed else None
    has_out = {s for s, _, _ in F.edges}
    finals, deadlocks = [], []
    for v in range(F.states):
        if v in has_out:
            continue
        if deco is None or is_terminated(deco[v]):
            finals.append(v)
        else:
            deadlocks.append(v)
    classes = {f"{s}->{t}": len(row) for (s, t), row in sorted(F.homs.items()) if row}
    return Report(
        F.states, lps.counts(), classes, tuple(deadlocks), tuple(finals),
        pointed.initial if pointed else None,
    )
