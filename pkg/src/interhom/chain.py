"""Interaction chain complexes.

The chain group in degree p has the interacting tuples of degree p as its
basis.  Non-interacting monomials span a subcomplex of the tensor product,
so quotienting by them amounts to dropping those terms from every boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import (
    InteractionSpace,
    InteractionTuple,
    enumerate_interacting_tuples,
    tuple_interacts,
)
from .linalg import SparseMatrix

FormalSum = dict[InteractionTuple, int]


class ChainComplexError(RuntimeError):
    """The assembled differential does not square to zero."""


class ContainmentError(ValueError):
    """A sub interaction space is not contained part by part in the space."""


def boundary_of_tuple(t: InteractionTuple) -> FormalSum:
    """Tensor differential of ``t`` with non-interacting terms dropped.

    Face r of factor i carries sign (-1)**(r + dim of the factors before i).
    """
    out: FormalSum = {}
    shift = 0
    for i, s in enumerate(t):
        if len(s) > 1:
            head, tail = t[:i], t[i + 1:]
            for r in range(len(s)):
                face = head + (s[:r] + s[r + 1:],) + tail
                if tuple_interacts(face):
                    out[face] = -1 if (shift + r) % 2 else 1
        shift += len(s) - 1
    return out


@dataclass(frozen=True)
class ChainComplex:
    """Based chain complex truncated at ``p_max + 1``.

    ``boundaries[p]`` maps degree p to degree p - 1; ``boundaries[0]`` is the
    zero map onto the zero group.
    """

    bases: tuple[tuple[InteractionTuple, ...], ...]
    boundaries: tuple[SparseMatrix, ...]
    p_max: int

    @property
    def index(self) -> list[dict[InteractionTuple, int]]:
        return [{t: k for k, t in enumerate(b)} for b in self.bases]

    def sizes(self) -> list[int]:
        return [len(b) for b in self.bases]

    def boundary(self, p: int) -> SparseMatrix:
        if p < 0 or p >= len(self.boundaries):
            raise IndexError(f"boundary in degree {p} not computed (p_max={self.p_max})")
        return self.boundaries[p]

    def check_d_squared(self) -> None:
        for p in range(2, len(self.boundaries)):
            prod = self.boundaries[p - 1] @ self.boundaries[p]
            if not prod.is_zero():
                raise ChainComplexError(f"d∘d != 0 in degree {p}")


def _resolve_p_max(space: InteractionSpace, p_max: int | None) -> int:
    if p_max is None:
        return max(space.top_degree, 0)
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    return p_max


def _assemble(bases: list[list[InteractionTuple]], p_max: int) -> ChainComplex:
    boundaries = [SparseMatrix(0, len(bases[0]))]
    for p in range(1, len(bases)):
        row_of = {t: k for k, t in enumerate(bases[p - 1])}
        cols = []
        for t in bases[p]:
            col = {}
            for face, sign in boundary_of_tuple(t).items():
                k = row_of.get(face)
                if k is not None:
                    col[k] = sign
            cols.append(col)
        boundaries.append(SparseMatrix(len(bases[p - 1]), len(bases[p]), cols))
    cc = ChainComplex(tuple(tuple(b) for b in bases), tuple(boundaries), p_max)
    cc.check_d_squared()
    return cc


def build_chain_complex(space: InteractionSpace, p_max: int | None = None) -> ChainComplex:
    """Bases in degrees ``0..p_max+1`` and the boundaries between them.

    ``p_max=None`` means the full degree range of ``space``.
    """
    p_max = _resolve_p_max(space, p_max)
    bases = [enumerate_interacting_tuples(space, p) for p in range(p_max + 2)]
    return _assemble(bases, p_max)


def check_containment(space: InteractionSpace, sub: InteractionSpace) -> None:
    if sub.n != space.n:
        raise ContainmentError(f"sub has {sub.n} parts, space has {space.n}")
    for i, (a, x) in enumerate(zip(sub.parts, space.parts)):
        if not a.issubset(x):
            raise ContainmentError(f"sub part {i} is not contained in space part {i}")


def inside(t: InteractionTuple, sub: InteractionSpace) -> bool:
    return all(s in part for s, part in zip(t, sub.parts))


def build_relative_complex(space: InteractionSpace, sub: InteractionSpace,
                           p_max: int | None = None) -> ChainComplex:
    """Quotient of the space's complex by the sub's, on the complementary tuples."""
    check_containment(space, sub)
    p_max = _resolve_p_max(space, p_max)
    bases = [[t for t in enumerate_interacting_tuples(space, p) if not inside(t, sub)]
             for p in range(p_max + 2)]
    return _assemble(bases, p_max)
