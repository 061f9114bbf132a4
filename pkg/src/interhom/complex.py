"""Simplices, simplicial complexes, coverings and interacting tuples.

A simplex is a strictly increasing tuple of non-negative vertex ids.  All
collections are kept in graded-lexicographic order (dimension first, then
vertex lists), which fixes every downstream matrix layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Simplex = tuple[int, ...]
InteractionTuple = tuple[Simplex, ...]


class MalformedSimplexError(ValueError):
    """Raised for empty vertex lists, repeated or negative vertex ids."""


def simplex_key(s: Simplex) -> tuple[int, Simplex]:
    return (len(s), s)


def tuple_key(t: InteractionTuple) -> tuple[tuple[int, ...], InteractionTuple]:
    return (tuple(len(s) - 1 for s in t), t)


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Return ``vertices`` as a sorted simplex, rejecting malformed input."""
    vs = list(vertices)
    if not vs:
        raise MalformedSimplexError("simplex must have at least one vertex")
    for v in vs:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise MalformedSimplexError(f"vertex ids must be non-negative integers, got {v!r}")
    s = tuple(sorted(vs))
    if len(set(s)) != len(s):
        raise MalformedSimplexError(f"duplicate vertex in simplex {vs}")
    return s


def dimension(s: Simplex) -> int:
    return len(s) - 1


def faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces; the r-th entry omits vertex r."""
    if len(s) == 1:
        return []
    return [s[:r] + s[r + 1:] for r in range(len(s))]


class SimplicialComplex:
    """Finite set of simplices in canonical order.

    The constructor stores exactly what it is given.  Use :func:`make_complex`
    to obtain a face-closed complex.
    """

    def __init__(self, simplices: Iterable[Simplex] = ()):
        members = {as_simplex(s) for s in simplices}
        self.simplices: tuple[Simplex, ...] = tuple(sorted(members, key=simplex_key))
        self._set = frozenset(members)

    def __contains__(self, s: object) -> bool:
        return s in self._set

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"SimplicialComplex({[list(s) for s in self.simplices]})"

    @property
    def dim(self) -> int:
        """Top dimension, ``-1`` for the empty complex."""
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for s in self.simplices for v in s}))

    @cached_property
    def by_dim(self) -> dict[int, tuple[Simplex, ...]]:
        out: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        return {d: tuple(v) for d, v in out.items()}

    def count(self, d: int) -> int:
        return len(self.by_dim.get(d, ()))

    @cached_property
    def star(self) -> dict[int, dict[int, tuple[Simplex, ...]]]:
        """``star[d][v]``: the d-simplices containing vertex v, in order."""
        out: dict[int, dict[int, list[Simplex]]] = {}
        for s in self.simplices:
            per_v = out.setdefault(len(s) - 1, {})
            for v in s:
                per_v.setdefault(v, []).append(s)
        return {d: {v: tuple(ss) for v, ss in m.items()} for d, m in out.items()}

    def is_closed(self) -> bool:
        return all(f in self._set for s in self.simplices for f in faces(s))

    def issubset(self, other: SimplicialComplex) -> bool:
        return self._set <= other._set

    def union(self, *others: SimplicialComplex) -> SimplicialComplex:
        members = set(self._set)
        for o in others:
            members |= o._set
        return SimplicialComplex(members)

    def relabel(self, mapping: Mapping[int, int]) -> SimplicialComplex:
        """Apply an injective vertex relabelling."""
        return SimplicialComplex(tuple(mapping[v] for v in s) for s in self.simplices)


def make_complex(simplices: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Face closure of a list of vertex lists."""
    closed: set[Simplex] = set()
    for raw in simplices:
        s = as_simplex(raw)
        if s in closed:
            continue
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    return SimplicialComplex(closed)


@dataclass(frozen=True)
class InteractionSpace:
    """A complex ``total`` together with a covering by subcomplexes ``parts``."""

    total: SimplicialComplex
    parts: tuple[SimplicialComplex, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def top_degree(self) -> int:
        """Largest degree that can carry an interacting tuple (-1 if none)."""
        if any(len(p) == 0 for p in self.parts):
            return -1
        return sum(p.dim for p in self.parts)

    @classmethod
    def from_parts(cls, parts: Sequence[SimplicialComplex]) -> InteractionSpace:
        parts = tuple(parts)
        total = parts[0].union(*parts[1:]) if parts else SimplicialComplex()
        return cls(total, parts)

    @classmethod
    def self_covering(cls, K: SimplicialComplex, n: int) -> InteractionSpace:
        return cls(K, (K,) * n)

    def relabel(self, mapping: Mapping[int, int]) -> InteractionSpace:
        return InteractionSpace(self.total.relabel(mapping),
                                tuple(p.relabel(mapping) for p in self.parts))


@dataclass
class ValidationReport:
    violations: list[dict] = field(default_factory=list)
    warnings: list[dict] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, kind: str, **detail) -> None:
        self.violations.append({"kind": kind, **detail})

    def warn(self, kind: str, **detail) -> None:
        self.warnings.append({"kind": kind, **detail})

    def to_dict(self) -> dict:
        return {"valid": self.valid, "violations": self.violations, "warnings": self.warnings}


def validate_interaction_space(total: SimplicialComplex,
                               parts: Sequence[SimplicialComplex]) -> ValidationReport:
    report = ValidationReport()
    if not parts:
        report.add("no-parts")
        return report
    if not total.is_closed():
        report.add("non-face-closed-total")
    covered: set[Simplex] = set()
    for i, part in enumerate(parts):
        if len(part) == 0:
            report.warn("empty-part", part=i)
        for s in part:
            if s not in total:
                report.add("part-not-subcomplex", part=i, simplex=list(s))
        if not part.is_closed():
            missing = sorted({f for s in part for f in faces(s) if f not in part}, key=simplex_key)
            for f in missing:
                report.add("non-face-closed-part", part=i, simplex=list(f))
        covered.update(part)
    for s in total:
        if s not in covered:
            report.add("covering-gap", simplex=list(s))
    return report


def validate_space(space: InteractionSpace) -> ValidationReport:
    return validate_interaction_space(space.total, space.parts)


def tuple_interacts(members: Sequence[Simplex]) -> bool:
    common = set(members[0])
    for s in members[1:]:
        common.intersection_update(s)
        if not common:
            return False
    return bool(common)


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` with entry i in ``0..caps[i]``, in lex order."""
    if len(caps) == 1:
        if 0 <= total <= caps[0]:
            yield (total,)
        return
    rest_cap = sum(caps[1:])
    for first in range(max(0, total - rest_cap), min(total, caps[0]) + 1):
        for tail in _compositions(total - first, caps[1:]):
            yield (first,) + tail


def enumerate_interacting_tuples(space: InteractionSpace, degree: int) -> list[InteractionTuple]:
    """All interacting tuples of the given degree, in canonical order.

    Candidates for factor ``i > 0`` are drawn from the stars of the vertices
    still in the running intersection, so non-interacting prefixes are never
    extended.
    """
    if degree < 0 or space.top_degree < degree:
        return []
    parts = space.parts
    caps = [p.dim for p in parts]
    out: list[InteractionTuple] = []

    def extend(i: int, comp: tuple[int, ...], prefix: list[Simplex], common: frozenset[int]):
        star = parts[i].star.get(comp[i], {})
        cands: set[Simplex] = set()
        for v in common:
            cands.update(star.get(v, ()))
        last = i == len(parts) - 1
        for s in sorted(cands):
            if last:
                out.append(tuple(prefix) + (s,))
            else:
                prefix.append(s)
                extend(i + 1, comp, prefix, common.intersection(s))
                prefix.pop()

    for comp in _compositions(degree, caps):
        for s in parts[0].by_dim.get(comp[0], ()):
            if len(parts) == 1:
                out.append((s,))
            else:
                extend(1, comp, [s], frozenset(s))
    return out
