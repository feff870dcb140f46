"""Isomorphism and embedding search between labelled precubical sets.

Backtracking assigns vertices first, in breadth-first order over the
1-skeleton, then higher cubes dimension by dimension. Candidates are pruned
by colour refinement (dimension, label, face colours, coface colours) and by
edge multiplicities between already placed vertices.
"""
from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .precubical import LabelledPrecubicalSet, PrecubMorphism


@dataclass(frozen=True)
class Isomorphism:
    forward: PrecubMorphism
    backward: PrecubMorphism


def _cofaces(K: LabelledPrecubicalSet) -> list[list[list[tuple[int, int]]]]:
    """``co[n][x]`` lists ``(y, slot)`` with ``faces[n + 1][y][slot] == x``."""
    co = [[[] for _ in K.cubes(n)] for n in range(K.dim + 1)]
    for n in range(1, K.dim + 1):
        for y, fs in enumerate(K.faces[n]):
            for slot, x in enumerate(fs):
                co[n - 1][x].append((y, slot))
    return co


def refine_colours(sets: Sequence[LabelledPrecubicalSet]) -> list[list[list[int]]]:
    """Stable colouring shared across ``sets`` (equal colours are comparable)."""
    cos = [_cofaces(K) for K in sets]
    table: dict = {}
    colours = [
        [[table.setdefault((n, K.labels[n][x]), len(table)) for x in K.cubes(n)] for n in range(K.dim + 1)]
        for K in sets
    ]
    distinct = len(table)
    while True:
        table = {}
        new = []
        for K, co, col in zip(sets, cos, colours):
            rows = []
            for n in range(K.dim + 1):
                row = []
                for x in K.cubes(n):
                    sig = (
                        col[n][x],
                        tuple(col[n - 1][f] for f in K.faces[n][x]) if n else (),
                        tuple(sorted((col[n + 1][y], slot) for y, slot in co[n][x])),
                    )
                    row.append(table.setdefault(sig, len(table)))
                rows.append(row)
            new.append(rows)
        colours = new
        if len(table) == distinct:
            return colours
        distinct = len(table)


def _adjacency(K: LabelledPrecubicalSet) -> list[dict[int, Counter]]:
    adj: list[dict[int, Counter]] = [defaultdict(Counter) for _ in K.cubes(0)]
    for _, s, t, a in K.edges():
        adj[s][t][(1, a)] += 1
        adj[t][s][(0, a)] += 1
    return adj


def _vertex_order(K: LabelledPrecubicalSet, colour: list[int]) -> list[int]:
    freq = Counter(colour)
    adj = [set() for _ in K.cubes(0)]
    for _, s, t, _a in K.edges():
        adj[s].add(t)
        adj[t].add(s)
    seen: set[int] = set()
    order = []
    for start in sorted(K.cubes(0), key=lambda v: (freq[colour[v]], v)):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(adj[v], key=lambda w: (freq[colour[w]], w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _search(
    K: LabelledPrecubicalSet,
    L: LabelledPrecubicalSet,
    colK: list[list[int]],
    colL: list[list[int]],
    exact: bool,
    fix: Iterable[tuple[int, int]] = (),
) -> tuple[tuple[int, ...], ...] | None:
    fixed = dict(fix)
    adjK, adjL = _adjacency(K), _adjacency(L)
    byK: dict[tuple[int, int], list[int]] = defaultdict(list)
    for w in L.cubes(0):
        byK[(0, colL[0][w])].append(w)
    index: dict[tuple, list[int]] = defaultdict(list)
    for n in range(1, L.dim + 1):
        for y in L.cubes(n):
            index[(n, L.faces[n][y], colL[n][y])].append(y)

    items = [(0, v) for v in _vertex_order(K, colK[0])]
    items += [(n, x) for n in range(1, K.dim + 1) for x in K.cubes(n)]
    assign: list[list[int]] = [[-1] * K.count(n) for n in range(K.dim + 1)]
    inverse: list[dict[int, int]] = [dict() for _ in range(max(K.dim, L.dim) + 1)]

    def vertex_ok(v: int, w: int) -> bool:
        for u, cnt in adjK[v].items():
            fu = assign[0][u]
            if fu < 0 and u != v:
                continue
            target = adjL[w].get(w if u == v else fu, Counter())
            if exact:
                if cnt != target:
                    return False
            elif any(target[key] < c for key, c in cnt.items()):
                return False
        if exact:
            for u2 in adjL[w]:
                if u2 != w and u2 in inverse[0] and inverse[0][u2] not in adjK[v]:
                    return False
        return True

    def candidates(n: int, x: int) -> list[int]:
        if n == 0:
            if x in fixed:
                pool = [fixed[x]] if colL[0][fixed[x]] == colK[0][x] else []
            else:
                pool = byK[(0, colK[0][x])]
            return [w for w in pool if w not in inverse[0] and vertex_ok(x, w)]
        image = tuple(assign[n - 1][f] for f in K.faces[n][x])
        return [y for y in index.get((n, image, colK[n][x]), ()) if y not in inverse[n]]

    stack: list[list[int]] = []
    pos = 0
    while True:
        if pos == len(items):
            return tuple(tuple(row) for row in assign)
        n, x = items[pos]
        if pos == len(stack):
            stack.append(candidates(n, x))
        pool = stack[pos]
        if pool:
            y = pool.pop(0)
            assign[n][x] = y
            inverse[n][y] = x
            pos += 1
            continue
        stack.pop()
        pos -= 1
        if pos < 0:
            return None
        n, x = items[pos]
        del inverse[n][assign[n][x]]
        assign[n][x] = -1


def iso_check(
    K: LabelledPrecubicalSet,
    L: LabelledPrecubicalSet,
    fix: Iterable[tuple[int, int]] = (),
) -> Isomorphism | None:
    """Find an isomorphism ``K -> L`` together with its inverse, or ``None``.

    ``fix`` optionally pins vertices, e.g. ``[(K_initial, L_initial)]``.
    """
    if K.counts() != L.counts():
        return None
    colK, colL = refine_colours([K, L])
    for n in range(K.dim + 1):
        if Counter(colK[n]) != Counter(colL[n]):
            return None
    comps = _search(K, L, colK, colL, exact=True, fix=fix)
    if comps is None:
        return None
    back = []
    for n, row in enumerate(comps):
        inv = [0] * len(row)
        for x, y in enumerate(row):
            inv[y] = x
        back.append(tuple(inv))
    return Isomorphism(PrecubMorphism(K, L, comps), PrecubMorphism(L, K, tuple(back)))


def find_embedding(
    K: LabelledPrecubicalSet,
    L: LabelledPrecubicalSet,
    fix: Iterable[tuple[int, int]] = (),
) -> PrecubMorphism | None:
    """Find an injective label- and face-preserving map ``K -> L``."""
    if any(K.count(n) > L.count(n) for n in range(K.dim + 1)):
        return None
    table: dict = {}
    colK = [[table.setdefault((n, K.labels[n][x]), len(table)) for x in K.cubes(n)] for n in range(K.dim + 1)]
    colL = [[table.setdefault((n, L.labels[n][x]), len(table)) for x in L.cubes(n)] for n in range(L.dim + 1)]
    comps = _search(K, L, colK, colL, exact=False, fix=fix)
    return None if comps is None else PrecubMorphism(K, L, comps)
