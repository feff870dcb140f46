"""Abstract syntax of CCS process terms without message passing."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Nil:
    pass


@dataclass(frozen=True)
class Prefix:
    label: str
    body: "Term"


@dataclass(frozen=True)
class Restrict:
    label: str
    body: "Term"


@dataclass(frozen=True)
class Sum:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Par:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Rec:
    var: str
    body: "Term"


@dataclass(frozen=True)
class Var:
    name: str


Term = Union[Nil, Prefix, Restrict, Sum, Par, Rec, Var]

_SUM, _PAR, _UNARY = 0, 1, 2


def to_text(term: Term) -> str:
    """Print ``term`` in the concrete syntax accepted by :func:`parse`."""
    return _show(term, _SUM, True)


def _show(t: Term, prec: int, tail: bool) -> str:
    if isinstance(t, Nil):
        return "nil"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Prefix):
        return f"{t.label}.{_show(t.body, _UNARY, tail)}"
    if isinstance(t, Restrict):
        return f"(nu {t.label}) {_show(t.body, _UNARY, tail)}"
    if isinstance(t, Rec):
        text = f"rec {t.var} . {_show(t.body, _SUM, True)}"
        return text if tail else f"({text})"
    if isinstance(t, Sum):
        text = f"{_show(t.left, _SUM, False)} + {_show(t.right, _PAR, tail or prec > _SUM)}"
        return text if prec <= _SUM else f"({text})"
    if isinstance(t, Par):
        text = f"{_show(t.left, _PAR, False)} || {_show(t.right, _UNARY, tail or prec > _PAR)}"
        return text if prec <= _PAR else f"({text})"
    raise TypeError(f"not a process term: {t!r}")


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Rec):
        return free_vars(t.body) - {t.var}
    if isinstance(t, (Prefix, Restrict)):
        return free_vars(t.body)
    if isinstance(t, (Sum, Par)):
        return free_vars(t.left) | free_vars(t.right)
    return set()


def bound_vars(t: Term) -> set[str]:
    if isinstance(t, Rec):
        return {t.var} | bound_vars(t.body)
    if isinstance(t, (Prefix, Restrict)):
        return bound_vars(t.body)
    if isinstance(t, (Sum, Par)):
        return bound_vars(t.left) | bound_vars(t.right)
    return set()


def labels_of(t: Term) -> set[str]:
    if isinstance(t, (Prefix, Restrict)):
        return {t.label} | labels_of(t.body)
    if isinstance(t, (Sum, Par)):
        return labels_of(t.left) | labels_of(t.right)
    if isinstance(t, Rec):
        return labels_of(t.body)
    return set()


def _fresh(base: str, avoid: set[str]) -> str:
    for k in itertools.count(1):
        name = f"{base}{k}"
        if name not in avoid:
            return name
    raise AssertionError("unreachable")


def substitute(t: Term, x: str, q: Term) -> Term:
    """Replace the free occurrences of ``x`` in ``t`` by ``q``, renaming binders that would capture."""
    if isinstance(t, Var):
        return q if t.name == x else t
    if isinstance(t, Nil):
        return t
    if isinstance(t, Prefix):
        return Prefix(t.label, substitute(t.body, x, q))
    if isinstance(t, Restrict):
        return Restrict(t.label, substitute(t.body, x, q))
    if isinstance(t, Sum):
        return Sum(substitute(t.left, x, q), substitute(t.right, x, q))
    if isinstance(t, Par):
        return Par(substitute(t.left, x, q), substitute(t.right, x, q))
    if isinstance(t, Rec):
        if t.var == x or x not in free_vars(t.body):
            return t
        fq = free_vars(q)
        if t.var in fq:
            y = _fresh(t.var, fq | free_vars(t.body) | {x})
            return Rec(y, substitute(substitute(t.body, t.var, Var(y)), x, q))
        return Rec(t.var, substitute(t.body, x, q))
    raise TypeError(f"not a process term: {t!r}")


def unfold(t: Rec, depth: int) -> Term:
    """``P^depth(nil)`` for ``t = rec x . P(x)``."""
    out: Term = Nil()
    for _ in range(depth):
        out = substitute(t.body, t.var, out)
    return out


def guardedness_check(t: Term) -> list[str]:
    """Recursion variables occurring outside any prefix below their binder.

    An empty list means every bound variable is guarded.
    """
    bad: list[str] = []

    def walk(u: Term, env: dict[str, bool]) -> None:
        if isinstance(u, Var):
            if u.name in env and not env[u.name] and u.name not in bad:
                bad.append(u.name)
        elif isinstance(u, Prefix):
            walk(u.body, {k: True for k in env})
        elif isinstance(u, Restrict):
            walk(u.body, env)
        elif isinstance(u, (Sum, Par)):
            walk(u.left, env)
            walk(u.right, env)
        elif isinstance(u, Rec):
            walk(u.body, {**env, u.var: False})

    walk(t, {})
    return bad


def is_terminated(t: Term) -> bool:
    """True for terms that can never act, such as ``nil`` or ``(nu a) nil``."""
    if isinstance(t, Nil):
        return True
    if isinstance(t, Restrict):
        return is_terminated(t.body)
    if isinstance(t, (Sum, Par)):
        return is_terminated(t.left) and is_terminated(t.right)
    if isinstance(t, Rec):
        return is_terminated(t.body)
    return False
