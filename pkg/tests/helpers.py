"""Shared test utilities: cached compilation and random mutations of cube sets."""
from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from hdaccs.ccs import CompileOptions, compile_term, parse
from hdaccs.precubical import LabelledPrecubicalSet, relabel_ids
from hdaccs.shells import fill, labelled_shells


@lru_cache(maxsize=None)
def compiled(text: str, depth: int = 2):
    return compile_term(parse(text), CompileOptions(rec_depth=depth))


def permute(K: LabelledPrecubicalSet, rng: random.Random) -> LabelledPrecubicalSet:
    perms = []
    for n in range(K.dim + 1):
        p = list(K.cubes(n))
        rng.shuffle(p)
        perms.append(p)
    return relabel_ids(K, perms)


def maximal_cubes(K: LabelledPrecubicalSet) -> list[tuple[int, int]]:
    used = {(n - 1, f) for n in range(1, K.dim + 1) for fs in K.faces[n] for f in fs}
    return [c for c in K.all_cubes() if c not in used]


def delete_cube(K: LabelledPrecubicalSet, n: int, x: int) -> LabelledPrecubicalSet:
    """Remove one cube that is no face of another cube."""
    faces = [list(level) for level in K.faces]
    labels = [list(level) for level in K.labels]
    del faces[n][x]
    del labels[n][x]
    if n + 1 < len(faces):
        faces[n + 1] = [tuple(f - (f > x) for f in fs) for fs in faces[n + 1]]
    coords = K.coords
    if n == 0 and coords is not None:
        coords = coords[:x] + coords[x + 1:]
    return LabelledPrecubicalSet(tuple(map(tuple, faces)), tuple(map(tuple, labels)), coords)


def add_high_cubes(K: LabelledPrecubicalSet, rng: random.Random, dims=(3, 4)) -> LabelledPrecubicalSet:
    """Add cubes of dimension 3 or 4: fill random labelled shells, or duplicate existing cubes."""
    for n in dims:
        shells = list(labelled_shells(K, n - 1)) if K.count(n - 1) else []
        if shells:
            K = fill(K, rng.sample(shells, rng.randint(1, len(shells))))
        if K.count(n):
            x = rng.randrange(K.count(n))
            faces = list(K.faces)
            labels = list(K.labels)
            faces[n] = faces[n] + (faces[n][x],)
            labels[n] = labels[n] + (labels[n][x],)
            K = LabelledPrecubicalSet(tuple(faces), tuple(labels), K.coords)
    return K


def face_graph(K: LabelledPrecubicalSet) -> nx.DiGraph:
    """Cubes as nodes, one edge per face map tagged with its index."""
    G = nx.DiGraph()
    for n, x in K.all_cubes():
        G.add_node((n, x), kind=(n, K.labels[n][x]))
        for slot, f in enumerate(K.faces[n][x] if n else ()):
            G.add_edge((n, x), (n - 1, f), slot=slot)
    return G


def vf2_isomorphic(K: LabelledPrecubicalSet, L: LabelledPrecubicalSet) -> bool:
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(
        face_graph(K), face_graph(L),
        node_match=lambda a, b: a["kind"] == b["kind"],
        edge_match=lambda a, b: a["slot"] == b["slot"],
    )
    return matcher.is_isomorphic()
