"""Labelled point clouds, Vietoris-Rips coverings and interaction Betti curves.

Coordinates and scales are converted to exact rationals (decimal reading of
the input), and an edge is present when the squared distance is at most the
squared scale, so ties are included and never depend on rounding.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Real
from typing import Iterable, NamedTuple, Sequence

from .complex import InteractionSpace, SimplicialComplex
from .homology import betti
from .linalg import QQ, CoefficientRing


def to_rational(x) -> Fraction:
    """Exact rational value of a decimal string, int, float or Fraction.

    Floats are read through their shortest decimal ``repr`` so ``0.1`` means
    one tenth, matching what a CSV file would have said.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Integral):
        return Fraction(int(x))
    if isinstance(x, Real):
        return Fraction(repr(float(x)))
    raise TypeError(f"cannot read {x!r} as a rational number")


def format_scale(x: Fraction) -> str:
    """Exact decimal text for terminating fractions, ``a/b`` otherwise."""
    den, k2, k5 = x.denominator, 0, 0
    while den % 2 == 0:
        den //= 2
        k2 += 1
    while den % 5 == 0:
        den //= 5
        k5 += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(k2, k5)
    if digits == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * 10 ** digits // x.denominator
    sign = "-" if x < 0 else ""
    text = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


@dataclass(frozen=True)
class LabeledPointCloud:
    points: tuple[tuple[Fraction, ...], ...]
    labels: tuple[frozenset[int], ...]

    def __post_init__(self):
        pts = tuple(tuple(to_rational(c) for c in p) for p in self.points)
        labs = tuple(frozenset(int(v) for v in ls) for ls in self.labels)
        if not pts:
            raise ValueError("point cloud needs at least one point")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("all points must have the same dimension")
        if len(labs) != len(pts):
            raise ValueError(f"{len(pts)} points but {len(labs)} label sets")
        for k, ls in enumerate(labs):
            if not ls:
                raise ValueError(f"point {k} has an empty label set")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labs)

    @classmethod
    def unlabeled(cls, points: Iterable[Sequence]) -> LabeledPointCloud:
        pts = list(points)
        return cls(pts, [{0}] * len(pts))

    @property
    def label_ids(self) -> list[int]:
        return sorted(set().union(*self.labels))

    def __len__(self) -> int:
        return len(self.points)


def read_point_csv(source) -> LabeledPointCloud:
    """Read rows ``x1,...,xd,labels`` with ``;``-separated integer labels.

    ``source`` is a path or an open text stream.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="") as fh:
            return read_point_csv(fh)
    points, labels = [], []
    for lineno, row in enumerate(csv.reader(source), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < 2:
            raise ValueError(f"line {lineno}: expected coordinates followed by labels")
        try:
            points.append([Fraction(c.strip()) for c in row[:-1]])
        except ValueError:
            raise ValueError(f"line {lineno}: coordinates must be decimal numbers") from None
        try:
            labels.append({int(v) for v in row[-1].split(";") if v.strip()})
        except ValueError:
            raise ValueError(f"line {lineno}: labels must be ';'-separated integers") from None
    return LabeledPointCloud(points, labels)


def write_point_csv(cloud: LabeledPointCloud) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for p, ls in zip(cloud.points, cloud.labels):
        writer.writerow([format_scale(c) for c in p] + [";".join(map(str, sorted(ls)))])
    return buf.getvalue()


def parse_mode(mode: str) -> tuple[str, int | None]:
    """``"by_label"`` or ``"self:N"`` (also ``self_N``)."""
    if mode == "by_label":
        return ("by_label", None)
    for prefix in ("self:", "self_", "self_n:"):
        if mode.startswith(prefix):
            n = int(mode[len(prefix):])
            if n < 1:
                raise ValueError("self covering needs n >= 1")
            return ("self", n)
    raise ValueError(f"unknown covering mode {mode!r}; expected by_label or self:N")


@dataclass(frozen=True)
class ScaleSweep:
    scales: tuple[Fraction, ...]
    p_max: int | None = 2
    mode: str = "self:2"
    max_dim: int = 2

    def __post_init__(self):
        scales = tuple(to_rational(s) for s in self.scales)
        if not scales:
            raise ValueError("scale sweep needs at least one scale")
        if scales[0] < 0:
            raise ValueError("scales must be non-negative")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise ValueError("scales must be strictly increasing")
        if self.p_max is not None and self.p_max < 0:
            raise ValueError("p_max must be non-negative")
        if self.max_dim < 0:
            raise ValueError("max_dim must be non-negative")
        parse_mode(self.mode)
        object.__setattr__(self, "scales", scales)


def _squared_distance(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0))


def _neighbours(points: Sequence[Sequence[Fraction]], r) -> list[set[int]]:
    r = to_rational(r)
    if r < 0:
        raise ValueError("scale must be non-negative")
    r2 = r * r
    nbrs: list[set[int]] = [set() for _ in points]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if _squared_distance(points[i], points[j]) <= r2:
                nbrs[i].add(j)
                nbrs[j].add(i)
    return nbrs


def _clique_complex(nbrs: Sequence[set[int]], vertices: Iterable[int],
                    max_dim: int) -> SimplicialComplex:
    verts = sorted(vertices)
    allowed = set(verts)
    out: list[tuple[int, ...]] = []

    def grow(clique: tuple[int, ...], cands: list[int]):
        out.append(clique)
        if len(clique) > max_dim:
            return
        for k, v in enumerate(cands):
            grow(clique + (v,), [w for w in cands[k + 1:] if w in nbrs[v]])

    for v in verts:
        grow((v,), sorted(w for w in nbrs[v] if w > v and w in allowed))
    return SimplicialComplex(out)


def vietoris_rips(points: Sequence[Sequence], r, max_dim: int) -> SimplicialComplex:
    """Clique complex of the graph joining points at distance <= r.

    Vertex ids are point indices; cliques are capped at ``max_dim + 1`` vertices.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    pts = [tuple(to_rational(c) for c in p) for p in points]
    return _clique_complex(_neighbours(pts, r), range(len(pts)), max_dim)


def build_covering(cloud: LabeledPointCloud, r, max_dim: int, mode: str) -> InteractionSpace:
    """Interaction space of a cloud at scale ``r``.

    ``by_label``: one Rips complex per label (points carrying it), total is
    their union.  ``self:N``: N copies of the full Rips complex.
    """
    kind, n = parse_mode(mode)
    nbrs = _neighbours(cloud.points, r)
    if kind == "self":
        K = _clique_complex(nbrs, range(len(cloud)), max_dim)
        return InteractionSpace.self_covering(K, n)
    parts = [
        _clique_complex(nbrs, [k for k, ls in enumerate(cloud.labels) if label in ls], max_dim)
        for label in cloud.label_ids
    ]
    return InteractionSpace.from_parts(parts)


class CurveRow(NamedTuple):
    scale: Fraction
    degree: int
    betti: int


def _betti_numbers(args) -> list[int]:
    space, p_max, field = args
    return betti(space, p_max, field).betti


def betti_curve(cloud: LabeledPointCloud, sweep: ScaleSweep, field: CoefficientRing = QQ,
                n_jobs: int = 1) -> list[CurveRow]:
    """Interaction Betti numbers at every scale of the sweep, ordered by (scale, degree).

    Each scale's covering must contain the previous one part by part, which
    makes every tuple basis contain the previous basis.
    """
    spaces = [build_covering(cloud, r, sweep.max_dim, sweep.mode) for r in sweep.scales]
    for prev, cur in zip(spaces, spaces[1:]):
        if prev.n != cur.n or not all(a.issubset(b) for a, b in zip(prev.parts, cur.parts)):
            raise AssertionError("Rips coverings are not nested along the sweep")
    jobs = [(s, sweep.p_max, field) for s in spaces]
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(_betti_numbers, jobs))
    else:
        results = [_betti_numbers(j) for j in jobs]
    return [CurveRow(r, p, b) for r, bs in zip(sweep.scales, results) for p, b in enumerate(bs)]
