"""Action labels: the involution ``a <-> ~a``, the silent action and label tuples.

Labels are plain strings. The co-label of ``a`` is spelled ``~a`` and the
silent action is the reserved name ``tau``, which is its own co-label. The
total order used to sort label tuples is plain string order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

TAU = "tau"
CO = "~"

LabelTuple = tuple[str, ...]


def involution(label: str) -> str:
    if label == TAU:
        return TAU
    if label.startswith(CO):
        return label[len(CO):]
    return CO + label


def normalize(label: str) -> str:
    """Collapse repeated ``~`` prefixes, so ``~~a`` becomes ``a``."""
    stripped = label.lstrip(CO)
    count = len(label) - len(stripped)
    if stripped == TAU:
        return TAU
    return CO + stripped if count % 2 else stripped


def sort_labels(labels: Iterable[str]) -> LabelTuple:
    return tuple(sorted(labels))


def is_sorted(t: Sequence[str]) -> bool:
    return all(t[k] <= t[k + 1] for k in range(len(t) - 1))


def delete(t: LabelTuple, i: int) -> LabelTuple:
    """Remove the ``i``-th entry (1-based) of a label tuple."""
    return t[: i - 1] + t[i:]


@dataclass(frozen=True)
class LabelSet:
    """A finite alphabet closed under the involution and containing ``tau``."""

    labels: frozenset[str]

    def __post_init__(self) -> None:
        closed = set(self.labels) | {TAU}
        closed |= {involution(a) for a in closed}
        object.__setattr__(self, "labels", frozenset(closed))

    @classmethod
    def of(cls, *names: str) -> "LabelSet":
        return cls(frozenset(normalize(n) for n in names))

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def __iter__(self):
        return iter(sorted(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def involution(self, label: str) -> str:
        if label not in self.labels:
            raise KeyError(label)
        return involution(label)

    @property
    def tau(self) -> str:
        return TAU

    def without(self, *names: str) -> frozenset[str]:
        """The labels left after removing each name and its co-label."""
        drop = set()
        for n in names:
            drop.add(n)
            drop.add(involution(n))
        return self.labels - drop

    def union(self, other: "LabelSet") -> "LabelSet":
        return LabelSet(self.labels | other.labels)

    def pairs(self) -> list[tuple[str, str]]:
        """Involution pairs ``(a, ~a)`` with ``a`` the plain name, plus ``(tau, tau)``."""
        return sorted({(a, involution(a)) for a in self.labels if not a.startswith(CO)})
