"""JSON documents and DOT export for labelled precubical sets."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .ccs.parser import parse
from .ccs.terms import Term, to_text
from .labels import TAU, LabelSet
from .precubical import LabelledPrecubicalSet, PointedLPS, validate

FORMAT = "hdaccs-lps"
SCHEMA_VERSION = 1


class DocumentError(ValueError):
    pass


@dataclass(frozen=True)
class Document:
    lps: LabelledPrecubicalSet
    initial: int | None = None
    decoration: tuple[Term, ...] | None = None
    sigma: LabelSet = field(default_factory=lambda: LabelSet(frozenset()))
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def from_pointed(cls, K: PointedLPS, sigma: LabelSet | None = None, **meta: Any) -> "Document":
        sigma = (sigma or LabelSet(frozenset())).union(LabelSet(frozenset(K.lps.label_alphabet())))
        info = {"approximation": K.approximate, "truncated": K.truncated, **meta}
        return cls(K.lps, K.initial, K.decoration, sigma, info)

    def pointed(self) -> PointedLPS:
        if self.initial is None:
            raise DocumentError("document has no initial vertex")
        return PointedLPS(
            self.lps, self.initial, self.decoration,
            approximate=bool(self.meta.get("approximation", False)),
            truncated=bool(self.meta.get("truncated", False)),
        )


def to_json(doc: Document) -> dict[str, Any]:
    K = doc.lps
    cubes = []
    for n in range(K.dim + 1):
        level = []
        for x in K.cubes(n):
            fs = K.faces[n][x]
            level.append({
                "id": x,
                "faces": [[fs[2 * i], fs[2 * i + 1]] for i in range(n)],
                "label": list(K.labels[n][x]),
            })
        cubes.append(level)
    out: dict[str, Any] = {
        "format": FORMAT,
        "sigma": {
            "labels": sorted(doc.sigma.labels),
            "involution": [list(p) for p in doc.sigma.pairs()],
        },
        "cubes": cubes,
        "initial": doc.initial,
        "decorations": [to_text(t) for t in doc.decoration] if doc.decoration is not None else None,
        "meta": {"tool": "hdaccs", "version": __version__, "schema_version": SCHEMA_VERSION, **doc.meta},
    }
    if K.coords is not None:
        out["coords"] = [list(c) for c in K.coords]
    return out


def dumps(doc: Document) -> str:
    return json.dumps(to_json(doc), indent=2) + "\n"


def from_json(data: dict[str, Any]) -> Document:
    if data.get("format") != FORMAT:
        raise DocumentError(f"not a {FORMAT} document")
    meta = dict(data.get("meta") or {})
    if meta.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema version {meta.get('schema_version')!r}")
    faces, labels = [], []
    try:
        for n, level in enumerate(data["cubes"]):
            fl, ll = [], []
            for k, cube in enumerate(level):
                if cube["id"] != k:
                    raise DocumentError(f"{n}-cube ids must run 0, 1, 2, ...; found {cube['id']} at {k}")
                if len(cube["faces"]) != n:
                    raise DocumentError(f"{n}-cube {k} lists {len(cube['faces'])} face pairs")
                fl.append(tuple(f for pair in cube["faces"] for f in pair))
                ll.append(tuple(cube["label"]))
            faces.append(tuple(fl))
            labels.append(tuple(ll))
        coords = tuple(tuple(c) for c in data["coords"]) if data.get("coords") is not None else None
        lps = LabelledPrecubicalSet(tuple(faces), tuple(labels), coords)
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed document: {exc}") from None
    problems = validate(lps)
    if problems:
        raise DocumentError(f"invalid precubical set: {problems[0]}")
    sigma = LabelSet(frozenset(data.get("sigma", {}).get("labels", [])) | frozenset(lps.label_alphabet()))
    deco = data.get("decorations")
    decoration = tuple(parse(s) for s in deco) if deco is not None else None
    initial = data.get("initial")
    if initial is not None and not 0 <= initial < lps.count(0):
        raise DocumentError(f"initial vertex {initial} does not exist")
    if decoration is not None and len(decoration) != lps.count(0):
        raise DocumentError("decorations must cover every vertex")
    for key in ("tool", "version", "schema_version"):
        meta.pop(key, None)
    return Document(lps, initial, decoration, sigma, meta)


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not JSON: {exc}") from None
    return from_json(data)


def load(path: str | Path) -> Document:
    return loads(Path(path).read_text())


def save(doc: Document, path: str | Path) -> None:
    Path(path).write_text(dumps(doc))


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', r"\"").replace("\n", r"\n") + '"'


def to_dot(doc: Document, name: str = "lps") -> str:
    """DOT digraph of the 1-skeleton; ``tau`` edges are dashed and squares listed as comments."""
    K = doc.lps
    if K.dim < 0:
        return f"digraph {name} {{\n}}\n"
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for v in K.cubes(0):
        text = str(v)
        if doc.decoration is not None:
            text += "\n" + to_text(doc.decoration[v])
        shape = ', shape=doublecircle' if v == doc.initial else ""
        lines.append(f"  v{v} [label={_quote(text)}{shape}];")
    for e, s, t, a in K.edges():
        style = ", style=dashed" if a == TAU else ""
        lines.append(f"  v{s} -> v{t} [label={_quote(a)}{style}];  // edge {e}")
    for c in K.cubes(2):
        fs = K.faces[2][c]
        lines.append(f"  // square {c} ({','.join(K.labels[2][c])}): edges {fs[0]} {fs[1]} {fs[2]} {fs[3]}")
    lines.append("}")
    return "\n".join(lines) + "\n"
