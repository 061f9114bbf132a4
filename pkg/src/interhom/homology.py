"""Interaction homology, cohomology, characteristics and the long exact sequence."""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import (
    ChainComplex,
    build_chain_complex,
    build_relative_complex,
    check_containment,
    inside,
)
from .complex import InteractionSpace, SimplicialComplex, enumerate_interacting_tuples
from .linalg import (
    QQ,
    ZZ,
    CoefficientRing,
    Echelon,
    SparseMatrix,
    kernel_sparse,
    rank,
    smith_normal_form,
)


@dataclass
class HomologySummary:
    betti: list[int]
    torsion: list[list[int]]
    euler: int
    ring: CoefficientRing

    @property
    def degrees(self) -> list[int]:
        return list(range(len(self.betti)))

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.name,
            "degrees": self.degrees,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "euler": self.euler,
        }


def interaction_euler(space: InteractionSpace) -> int:
    """Alternating count of interacting tuples over every degree."""
    return sum((-1) ** p * len(enumerate_interacting_tuples(space, p))
               for p in range(space.top_degree + 1))


def wu_characteristic(K: SimplicialComplex) -> int:
    """Sum of (-1)^(dim s + dim t) over ordered pairs of intersecting simplices."""
    by_vertex: dict[int, list[int]] = {}
    for k, s in enumerate(K.simplices):
        for v in s:
            by_vertex.setdefault(v, []).append(k)
    total = 0
    for s in K.simplices:
        meets: set[int] = set()
        for v in s:
            meets.update(by_vertex[v])
        signed = sum(1 if len(K.simplices[k]) % 2 else -1 for k in meets)
        total += signed if len(s) % 2 else -signed
    return total


def _field_betti(cc: ChainComplex, field: CoefficientRing, transpose: bool = False) -> list[int]:
    ranks = [0]
    for p in range(1, cc.p_max + 2):
        d = cc.boundary(p)
        ranks.append(rank(d.transpose() if transpose else d, field))
    ranks.append(0)
    sizes = cc.sizes()
    return [sizes[p] - ranks[p] - ranks[p + 1] for p in range(cc.p_max + 1)]


def betti(space: InteractionSpace, p_max: int | None = None,
          field: CoefficientRing = QQ) -> HomologySummary:
    cc = build_chain_complex(space, p_max)
    b = _field_betti(cc, field)
    return HomologySummary(b, [[] for _ in b], interaction_euler(space), field)


def cohomology_betti(space: InteractionSpace, p_max: int | None = None,
                     field: CoefficientRing = QQ) -> HomologySummary:
    """Cohomology dimensions from the transposed (coboundary) matrices."""
    cc = build_chain_complex(space, p_max)
    b = _field_betti(cc, field, transpose=True)
    return HomologySummary(b, [[] for _ in b], interaction_euler(space), field)


def _integer_summary(cc: ChainComplex, euler: int) -> HomologySummary:
    factors = [[]] + [smith_normal_form(cc.boundary(p)) for p in range(1, cc.p_max + 2)]
    factors.append([])
    sizes = cc.sizes()
    free = [sizes[p] - len(factors[p]) - len(factors[p + 1]) for p in range(cc.p_max + 1)]
    torsion = [[d for d in factors[p + 1] if d > 1] for p in range(cc.p_max + 1)]
    return HomologySummary(free, torsion, euler, ZZ)


def integer_homology(space: InteractionSpace, p_max: int | None = None) -> HomologySummary:
    """Free ranks and torsion coefficients from Smith normal forms."""
    return _integer_summary(build_chain_complex(space, p_max), interaction_euler(space))


def relative_betti(space: InteractionSpace, sub: InteractionSpace, p_max: int | None = None,
                   field: CoefficientRing = QQ) -> HomologySummary:
    cc = build_relative_complex(space, sub, p_max)
    euler = interaction_euler(space) - interaction_euler(sub)
    if not field.is_field:
        return _integer_summary(cc, euler)
    b = _field_betti(cc, field)
    return HomologySummary(b, [[] for _ in b], euler, field)


class HomologyBasis:
    """Chosen homology basis in one degree, with coordinate extraction.

    Representatives are kernel vectors of ``d_p`` that are independent modulo
    the image of ``d_{p+1}``; coordinates are unique because boundaries and
    representatives are reduced together into one echelon form.
    """

    def __init__(self, cc: ChainComplex, p: int, field: CoefficientRing):
        self.degree = p
        self.field = field
        self.echelon = Echelon(field, track=True)
        for j, col in enumerate(cc.boundary(p + 1).cols):
            if col:
                self.echelon.add(col, ("b", j))
        self.reps: list[dict] = []
        for z in kernel_sparse(cc.boundary(p), field):
            if self.echelon.add(z, ("h", len(self.reps))) is None:
                self.reps.append(z)

    def __len__(self) -> int:
        return len(self.reps)

    def coordinates(self, cycle: dict) -> list:
        coeffs, rem = self.echelon.reduce(cycle)
        if rem:
            raise ArithmeticError(f"vector is not a cycle in degree {self.degree}")
        return [coeffs.get(("h", k), 0) for k in range(len(self.reps))]


def homology_map_matrix(images: list[dict], target: HomologyBasis) -> SparseMatrix:
    """Matrix whose column k holds the target coordinates of ``images[k]``."""
    cols = [{i: x for i, x in enumerate(target.coordinates(w)) if x} for w in images]
    return SparseMatrix(len(target), len(images), cols)


def _reindex(vec: dict, src: tuple, dst_index: dict) -> dict:
    return {dst_index[src[k]]: x for k, x in vec.items()}


@dataclass
class ExactnessReport:
    nodes: list[dict] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(n["exact"] for n in self.nodes)

    def to_dict(self) -> dict:
        return {"exact": self.exact, "nodes": self.nodes}


def _is_zero(m: SparseMatrix, field: CoefficientRing) -> bool:
    if field.p is None:
        return m.is_zero()
    return m.mod(field.p).is_zero()


def les_check(space: InteractionSpace, sub: InteractionSpace, p_max: int,
              field: CoefficientRing = QQ) -> ExactnessReport:
    """Check exactness of H(sub) -> H(space) -> H(space, sub) -> H(sub) up to ``p_max``.

    The connecting map lifts a relative cycle to the space, takes its
    boundary and reads the result as a cycle of the sub.
    """
    check_containment(space, sub)
    top = p_max + 1
    X = build_chain_complex(space, top)
    A = build_chain_complex(sub, top)
    R = build_relative_complex(space, sub, top)
    Xi, Ai, Ri = X.index, A.index, R.index
    HX = [HomologyBasis(X, p, field) for p in range(top + 1)]
    HA = [HomologyBasis(A, p, field) for p in range(top + 1)]
    HR = [HomologyBasis(R, p, field) for p in range(top + 1)]

    inc, proj, conn = [], [], []
    for p in range(top + 1):
        inc.append(homology_map_matrix(
            [_reindex(z, A.bases[p], Xi[p]) for z in HA[p].reps], HX[p]))
        proj.append(homology_map_matrix(
            [{Ri[p][X.bases[p][k]]: x for k, x in z.items() if not inside(X.bases[p][k], sub)}
             for z in HX[p].reps], HR[p]))
        if p == 0:
            conn.append(SparseMatrix(0, len(HR[0])))
            continue
        images = []
        for z in HR[p].reps:
            bd = X.boundary(p).apply(_reindex(z, R.bases[p], Xi[p]))
            if field.p is not None:
                bd = {k: x % field.p for k, x in bd.items() if x % field.p}
            images.append(_reindex(bd, X.bases[p - 1], Ai[p - 1]))
        conn.append(homology_map_matrix(images, HA[p - 1]))

    report = ExactnessReport()
    for p in range(p_max, -1, -1):
        zero_out = SparseMatrix(0, len(HR[p]))
        triples = [
            ("sub", len(HA[p]), conn[p + 1], inc[p]),
            ("space", len(HX[p]), inc[p], proj[p]),
            ("relative", len(HR[p]), proj[p], conn[p] if p else zero_out),
        ]
        for node, dim, incoming, outgoing in triples:
            image_rank = rank(incoming, field)
            kernel_dim = dim - rank(outgoing, field)
            composite_zero = _is_zero(outgoing @ incoming, field)
            report.nodes.append({
                "degree": p,
                "node": node,
                "dim": dim,
                "image_rank": image_rank,
                "kernel_dim": kernel_dim,
                "exact": composite_zero and image_rank == kernel_dim,
            })
    return report


def homology_summary(space: InteractionSpace, p_max: int | None = None,
                     field: CoefficientRing = QQ) -> HomologySummary:
    """Field Betti numbers or integer homology depending on ``field``."""
    if field.is_field:
        return betti(space, p_max, field)
    return integer_homology(space, p_max)

