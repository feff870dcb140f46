"""Translation of CCS terms into pointed labelled precubical sets."""
from __future__ import annotations

from dataclasses import dataclass

from ..labels import involution
from ..precubical import (
    PointedLPS,
    coproduct_pointed,
    glue_pushout,
    pullback_labels,
    standard_cube,
    truncate,
)
from ..tensor import tensor_sigma
from .terms import Nil, Par, Prefix, Rec, Restrict, Sum, Term, Var, free_vars, guardedness_check, to_text, unfold


class CompileError(ValueError):
    pass


@dataclass(frozen=True)
class CompileOptions:
    rec_depth: int = 2
    dim_cap: int | None = None
    decorate: bool = True

    def __post_init__(self) -> None:
        if self.rec_depth < 0:
            raise ValueError("rec_depth must be nonnegative")
        if self.dim_cap is not None and self.dim_cap < 0:
            raise ValueError("dim_cap must be nonnegative")


def compile_term(term: Term, opts: CompileOptions | None = None) -> PointedLPS:
    """Build the labelled precubical set of a closed, guarded term.

    Recursion is unfolded ``opts.rec_depth`` times from ``nil``; the result
    is then flagged ``approximate``. Cubes above ``opts.dim_cap`` are cut and
    the result flagged ``truncated``.
    """
    opts = opts or CompileOptions()
    free = free_vars(term)
    if free:
        raise CompileError(f"term has free variables: {', '.join(sorted(free))}")
    bad = guardedness_check(term)
    if bad:
        raise CompileError(f"unguarded recursion variables: {', '.join(bad)}")
    return _compile(term, opts)


def _cap(K: PointedLPS, opts: CompileOptions) -> PointedLPS:
    if opts.dim_cap is None or K.lps.dim <= opts.dim_cap:
        return K
    return PointedLPS(truncate(K.lps, opts.dim_cap), K.initial, K.decoration, K.approximate, True)


def _compile(t: Term, opts: CompileOptions) -> PointedLPS:
    deco = opts.decorate
    if isinstance(t, Nil):
        return PointedLPS(standard_cube(0, ()), 0, (t,) if deco else None)
    if isinstance(t, Prefix):
        edge = PointedLPS(standard_cube(1, (t.label,)), 0, (Prefix(t.label, Nil()), Nil()) if deco else None)
        if isinstance(t.body, Nil):
            return edge
        return glue_pushout(edge, 1, _compile(t.body, opts)).with_initial_decoration(t)
    if isinstance(t, Sum):
        left, right = _compile(t.left, opts), _compile(t.right, opts)
        return coproduct_pointed(left, right).with_initial_decoration(t)
    if isinstance(t, Restrict):
        K = _compile(t.body, opts)
        kept = K.lps.label_alphabet() - {t.label, involution(t.label)}
        d = tuple(Restrict(t.label, s) for s in K.decoration) if K.decoration is not None else None
        return PointedLPS(pullback_labels(K.lps, kept), K.initial, d, K.approximate, K.truncated)
    if isinstance(t, Par):
        left, right = _compile(t.left, opts), _compile(t.right, opts)
        return _cap(tensor_sigma(left, right, Par if deco else None, opts.dim_cap), opts)
    if isinstance(t, Rec):
        K = _compile(unfold(t, opts.rec_depth), opts)
        return PointedLPS(K.lps, K.initial, K.decoration, True, K.truncated).with_initial_decoration(t)
    if isinstance(t, Var):
        raise CompileError(f"free variable {t.name}")
    raise TypeError(f"not a process term: {t!r}")


def describe(K: PointedLPS) -> str:
    """One line summary: cube counts plus approximation flags."""
    flags = [f for f, on in (("approximate", K.approximate), ("truncated", K.truncated)) if on]
    text = f"cubes {K.lps.summary()}"
    if K.decoration is not None:
        text += f"; initial {to_text(K.decoration[K.initial])}"
    return text + (f" [{', '.join(flags)}]" if flags else "")
