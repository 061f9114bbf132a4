"""Interaction simplicial maps and the chain/homology maps they induce."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .chain import ChainComplex, build_chain_complex
from .complex import InteractionSpace, InteractionTuple, Simplex, ValidationReport, tuple_interacts
from .homology import HomologyBasis, homology_map_matrix
from .linalg import QQ, CoefficientRing, SparseMatrix


class InvalidMapError(ValueError):
    """The vertex maps do not form an interaction simplicial map."""


class ChainMapError(RuntimeError):
    """The induced matrices fail to commute with the boundaries."""


@dataclass(frozen=True)
class InteractionMap:
    """One vertex map per covering part, from ``source`` to ``target``."""

    vertex_maps: tuple[Mapping[int, int], ...]
    source: InteractionSpace
    target: InteractionSpace

    def __post_init__(self):
        object.__setattr__(self, "vertex_maps", tuple(dict(m) for m in self.vertex_maps))

    @classmethod
    def identity(cls, space: InteractionSpace) -> InteractionMap:
        return cls(tuple({v: v for v in p.vertices} for p in space.parts), space, space)

    def compose(self, first: InteractionMap) -> InteractionMap:
        """``self ∘ first``."""
        maps = tuple({v: g[w] for v, w in f.items() if w in g}
                     for f, g in zip(first.vertex_maps, self.vertex_maps))
        return InteractionMap(maps, first.source, self.target)

    def image(self, i: int, s: Simplex) -> Simplex:
        """Image vertex set of ``s`` under the i-th map, deduplicated."""
        f = self.vertex_maps[i]
        return tuple(sorted({f[v] for v in s}))


def validate_map(m: InteractionMap) -> ValidationReport:
    """Simplicial-map, agreement and cross-image checks.

    The cross condition (images coincide iff simplices coincide) is only
    imposed between distinct parts; within one part collapses are allowed.
    """
    report = ValidationReport()
    src, tgt = m.source, m.target
    if not (len(m.vertex_maps) == src.n == tgt.n):
        report.add("part-count-mismatch", maps=len(m.vertex_maps), source=src.n, target=tgt.n)
        return report
    ok_parts = []
    for i, (f, part) in enumerate(zip(m.vertex_maps, src.parts)):
        missing = [v for v in part.vertices if v not in f]
        for v in missing:
            report.add("unmapped-vertex", part=i, vertex=v)
        if missing:
            continue
        ok_parts.append(i)
        for s in part:
            img = m.image(i, s)
            if img not in tgt.parts[i]:
                report.add("not-simplicial", part=i, simplex=list(s), image=list(img))
    for a in ok_parts:
        for b in ok_parts:
            if b <= a:
                continue
            fa, fb = m.vertex_maps[a], m.vertex_maps[b]
            shared = set(src.parts[a].vertices) & set(src.parts[b].vertices)
            for v in sorted(shared):
                if fa[v] != fb[v]:
                    report.add("disagree", parts=[a, b], vertex=v, images=[fa[v], fb[v]])
            by_image: dict[Simplex, list[Simplex]] = {}
            for t in src.parts[b]:
                by_image.setdefault(m.image(b, t), []).append(t)
            for s in src.parts[a]:
                for t in by_image.get(m.image(a, s), ()):
                    if t != s:
                        report.add("cross-image", parts=[a, b], simplices=[list(s), list(t)],
                                   image=list(m.image(a, s)))
    return report


def _oriented_image(f: Mapping[int, int], s: Simplex) -> tuple[int, Simplex | None]:
    """Sign and sorted image of an oriented simplex; ``None`` if it collapses."""
    img = [f[v] for v in s]
    if len(set(img)) < len(img):
        return 0, None
    inversions = sum(1 for x in range(len(img)) for y in range(x + 1, len(img)) if img[x] > img[y])
    return (-1 if inversions % 2 else 1), tuple(sorted(img))


def _chain_matrix(m: InteractionMap, src_basis: Sequence[InteractionTuple],
                  tgt_basis: Sequence[InteractionTuple]) -> SparseMatrix:
    row_of = {t: k for k, t in enumerate(tgt_basis)}
    cols = []
    for t in src_basis:
        sign, members = 1, []
        for i, s in enumerate(t):
            e, img = _oriented_image(m.vertex_maps[i], s)
            if img is None:
                sign = 0
                break
            sign *= e
            members.append(img)
        if not sign:
            cols.append({})
            continue
        image = tuple(members)
        if not tuple_interacts(image):
            raise InvalidMapError(f"interacting tuple {t} maps to non-interacting {image}")
        k = row_of.get(image)
        if k is None:
            raise InvalidMapError(f"image tuple {image} is not in the target complex")
        cols.append({k: sign})
    return SparseMatrix(len(tgt_basis), len(src_basis), cols)


def _ensure_valid(m: InteractionMap) -> None:
    report = validate_map(m)
    if not report.valid:
        first = report.violations[0]
        raise InvalidMapError(f"not an interaction simplicial map: {first}")


def induced_chain_map(m: InteractionMap, p: int, source_cc: ChainComplex | None = None,
                      target_cc: ChainComplex | None = None, validate: bool = True) -> SparseMatrix:
    """Matrix of the chain map in degree ``p``.

    Collapsed factors give zero.  Commutation with the boundary in degree
    ``p`` is checked before returning.  ``validate=False`` skips the map
    checks but not the commutation check.
    """
    if validate:
        _ensure_valid(m)
    if source_cc is None:
        source_cc = build_chain_complex(m.source, p)
    if target_cc is None:
        target_cc = build_chain_complex(m.target, p)
    f_p = _chain_matrix(m, source_cc.bases[p], target_cc.bases[p])
    if p > 0:
        f_q = _chain_matrix(m, source_cc.bases[p - 1], target_cc.bases[p - 1])
        if target_cc.boundary(p) @ f_p != f_q @ source_cc.boundary(p):
            raise ChainMapError(f"induced map does not commute with d in degree {p}")
    return f_p


def induced_homology_map(m: InteractionMap, p: int, field: CoefficientRing = QQ,
                         source_cc: ChainComplex | None = None,
                         target_cc: ChainComplex | None = None) -> SparseMatrix:
    """Induced map on H_p in the canonical homology bases of source and target.

    The matrix depends on those bases; its rank and behaviour under
    composition do not.
    """
    _ensure_valid(m)
    if source_cc is None:
        source_cc = build_chain_complex(m.source, p)
    if target_cc is None:
        target_cc = build_chain_complex(m.target, p)
    f_p = induced_chain_map(m, p, source_cc, target_cc, validate=False)
    hs = HomologyBasis(source_cc, p, field)
    ht = HomologyBasis(target_cc, p, field)
    return homology_map_matrix([f_p.apply(z) for z in hs.reps], ht)
