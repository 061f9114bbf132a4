"""Exact sparse linear algebra over Q, GF(p) and Z.

Matrices are column-major: a list of ``{row: value}`` dicts with no stored
zeros.  Values are Python ints or :class:`fractions.Fraction`, so nothing
overflows and nothing is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = dict[int, object]


class UnsupportedRingError(ValueError):
    """Raised when a field-only operation is asked to work over Z."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # "Q", "GF" or "Z"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Q", "GF", "Z"):
            raise ValueError(f"unknown coefficient ring {self.kind!r}")
        if self.kind == "GF" and (self.p is None or not _is_prime(self.p)):
            raise ValueError(f"GF(p) needs a prime p, got {self.p!r}")
        if self.kind != "GF" and self.p is not None:
            raise ValueError("only GF takes a characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.kind == "GF" else self.kind

    def __str__(self) -> str:
        return self.name


QQ = CoefficientRing("Q")
ZZ = CoefficientRing("Z")


def GF(p: int) -> CoefficientRing:
    return CoefficientRing("GF", p)


def parse_ring(field: str, prime: int | None = None) -> CoefficientRing:
    """Map the command-line spellings ``q``, ``gfp`` and ``z`` to a ring."""
    key = field.lower()
    if key in ("q", "qq"):
        return QQ
    if key in ("z", "zz"):
        return ZZ
    if key in ("gfp", "gf"):
        if prime is None:
            raise ValueError("field gfp requires a prime")
        return GF(prime)
    raise ValueError(f"unknown field {field!r}; expected q, gfp or z")


def _require_field(ring: CoefficientRing) -> None:
    if not ring.is_field:
        raise UnsupportedRingError("operation needs field coefficients; use smith_normal_form over Z")


class SparseMatrix:
    """Column-major sparse matrix with exact entries."""

    def __init__(self, nrows: int, ncols: int, cols: Sequence[Vector] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(cols)}")
        self.cols: list[Vector] = []
        for col in cols:
            clean = {}
            for r, x in col.items():
                if not 0 <= r < nrows:
                    raise IndexError(f"row index {r} out of range for {nrows} rows")
                if x:
                    clean[r] = x
            self.cols.append(clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], ncols: int | None = None) -> SparseMatrix:
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: list[Vector] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, [{j: 1} for j in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def to_dense(self) -> list[list[object]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def transpose(self) -> SparseMatrix:
        cols: list[Vector] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def apply(self, vec: Vector) -> Vector:
        """Matrix-vector product with a sparse vector."""
        out: Vector = {}
        for j, a in vec.items():
            for i, x in self.cols[j].items():
                y = out.get(i, 0) + a * x
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def mod(self, p: int) -> SparseMatrix:
        return SparseMatrix(self.nrows, self.ncols,
                            [{i: _to_mod(x, p) for i, x in c.items()} for c in self.cols])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def _to_mod(x, p: int) -> int:
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return x % p


def _integral(vec: Vector) -> tuple[dict[int, int], int]:
    """Scale a rational vector to integers; returns (vector, scale)."""
    den = 1
    for x in vec.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        return {i: int(x) for i, x in vec.items()}, 1
    return {i: int(x * den) for i, x in vec.items()}, den


def _content(*vecs: dict) -> int:
    g = 0
    for v in vecs:
        for x in v.values():
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _axpy(c: dict, s, p: dict, mod: int | None = None) -> None:
    """c += s * p in place, dropping zeros."""
    if mod is None:
        for r, x in p.items():
            y = c.get(r, 0) + s * x
            if y:
                c[r] = y
            else:
                del c[r]
    else:
        for r, x in p.items():
            y = (c.get(r, 0) + s * x) % mod
            if y:
                c[r] = y
            else:
                c.pop(r, None)


class Echelon:
    """Incremental column echelon form over a field.

    Each stored pivot vector has a distinct lowest (largest-index) nonzero
    row.  Over Q the pivots are kept as primitive integer vectors and the
    elimination is fraction free.  With ``track=True`` every pivot remembers
    its expression in terms of the labelled vectors that were added.
    """

    def __init__(self, ring: CoefficientRing, track: bool = False):
        _require_field(ring)
        self.ring = ring
        self.mod = ring.p
        self.track = track
        self.pivot_of: dict[int, int] = {}
        self.vecs: list[dict] = []
        self.combos: list[dict] = []

    @property
    def rank(self) -> int:
        return len(self.vecs)

    def _prepare(self, vec: Vector, label) -> tuple[dict, dict]:
        if self.mod is None:
            c, scale = _integral(vec)
            combo = {label: scale} if self.track else {}
        else:
            c = {}
            for i, x in vec.items():
                y = _to_mod(x, self.mod)
                if y:
                    c[i] = y
            combo = {label: 1} if self.track else {}
        return c, combo

    def add(self, vec: Vector, label=None) -> dict | None:
        """Insert ``vec``.

        Returns ``None`` if it was independent of the stored pivots, otherwise
        a dependency ``{label: coef}`` whose combination of added vectors is
        zero (empty when not tracking).
        """
        c, combo = self._prepare(vec, label)
        mod = self.mod
        pivot_of, vecs, combos, track = self.pivot_of, self.vecs, self.combos, self.track
        while c:
            r = max(c)
            k = pivot_of.get(r)
            if k is None:
                break
            piv = vecs[k]
            if mod is None:
                a, b = piv[r], c[r]
                g = gcd(a, b)
                a, b = a // g, b // g
                if a < 0:
                    a, b = -a, -b
                if a != 1:
                    for i in c:
                        c[i] *= a
                    if track:
                        for i in combo:
                            combo[i] *= a
                _axpy(c, -b, piv)
                if track:
                    _axpy(combo, -b, combos[k])
            else:
                s = mod - c[r]
                _axpy(c, s, piv, mod)
                if track:
                    _axpy(combo, s, combos[k], mod)
        if not c:
            if mod is None and combo:
                g = _content(combo)
                combo = {i: x // g for i, x in combo.items()}
            return combo
        r = max(c)
        if mod is None:
            g = _content(c, combo)
            if c[r] < 0:
                g = -g
            if g != 1:
                c = {i: x // g for i, x in c.items()}
                combo = {i: x // g for i, x in combo.items()}
        else:
            inv = pow(c[r], -1, mod)
            if inv != 1:
                c = {i: x * inv % mod for i, x in c.items()}
                combo = {i: x * inv % mod for i, x in combo.items()}
        pivot_of[r] = len(vecs)
        vecs.append(c)
        combos.append(combo)
        return None

    def reduce(self, vec: Vector) -> tuple[dict, dict]:
        """Express ``vec`` = sum(coef * added[label]) + remainder.

        The remainder is zero exactly when ``vec`` lies in the span.
        """
        mod = self.mod
        if mod is None:
            c = {i: Fraction(x) for i, x in vec.items() if x}
        else:
            c = {i: _to_mod(x, mod) for i, x in vec.items()}
            c = {i: x for i, x in c.items() if x}
        coeffs: dict = {}
        while c:
            r = max(c)
            k = self.pivot_of.get(r)
            if k is None:
                break
            piv = self.vecs[k]
            if mod is None:
                s = c[r] / piv[r]
                _axpy(c, -s, piv)
                _axpy(coeffs, s, self.combos[k])
            else:
                s = c[r]
                _axpy(c, mod - s, piv, mod)
                _axpy(coeffs, s, self.combos[k], mod)
        if mod is None:
            coeffs = {k: _simplify(x) for k, x in coeffs.items()}
            c = {k: _simplify(x) for k, x in c.items()}
        return coeffs, c


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def rank(m: SparseMatrix, field: CoefficientRing) -> int:
    ech = Echelon(field)
    for col in m.cols:
        if col:
            ech.add(col)
    return ech.rank


def _normalize_kernel_vector(vec: dict, field: CoefficientRing) -> dict:
    lead = vec[min(vec)]
    if field.p is None:
        if lead < 0:
            return {i: -x for i, x in vec.items()}
        return vec
    inv = pow(lead, -1, field.p)
    return {i: x * inv % field.p for i, x in vec.items()}


def kernel_sparse(m: SparseMatrix, field: CoefficientRing) -> list[dict]:
    """Right null space basis as sparse vectors, one per non-pivot column."""
    ech = Echelon(field, track=True)
    out = []
    for j, col in enumerate(m.cols):
        dep = ech.add(col, label=j)
        if dep is not None:
            out.append(_normalize_kernel_vector(dep, field))
    return out


def kernel_basis(m: SparseMatrix, field: CoefficientRing) -> list[list]:
    return [[v.get(j, 0) for j in range(m.ncols)] for v in kernel_sparse(m, field)]


def solve(m: SparseMatrix, b: Sequence | Vector, field: CoefficientRing) -> list | None:
    """Some ``x`` with ``m @ x == b``, or ``None`` when the system is inconsistent."""
    _require_field(field)
    bvec = dict(b) if isinstance(b, dict) else {i: x for i, x in enumerate(b) if x}
    if isinstance(b, Sequence) and len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    ech = Echelon(field, track=True)
    for j, col in enumerate(m.cols):
        ech.add(col, label=j)
    coeffs, rem = ech.reduce(bvec)
    if rem:
        return None
    return [coeffs.get(j, 0) for j in range(m.ncols)]


def smith_normal_form(m: SparseMatrix) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Unit pivots are eliminated sparsely first; whatever is left (usually
    small) goes through a dense min-pivot diagonalisation.
    """
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for j, col in enumerate(m.cols):
        for i, x in col.items():
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("smith_normal_form needs integer entries")
                x = x.numerator
            rows.setdefault(i, {})[j] = x
            col_rows.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows):
            row = rows.get(r)
            if not row:
                continue
            best = None
            for c, x in row.items():
                if x == 1 or x == -1:
                    if best is None or len(col_rows[c]) < len(col_rows[best]):
                        best = c
            if best is None:
                continue
            u = row[best]
            for r2 in list(col_rows[best]):
                if r2 == r:
                    continue
                other = rows[r2]
                f = other[best] * u
                for c, x in row.items():
                    y = other.get(c, 0) - f * x
                    if y:
                        if c not in other:
                            col_rows[c].add(r2)
                        other[c] = y
                    elif c in other:
                        del other[c]
                        col_rows[c].discard(r2)
                if not other:
                    del rows[r2]
            for c in row:
                col_rows[c].discard(r)
            del col_rows[best]
            del rows[r]
            units += 1
            progress = True

    live_cols = sorted(c for c, rs in col_rows.items() if rs)
    dense = [[rows[r].get(c, 0) for c in live_cols] for r in sorted(rows) if rows[r]]
    factors = [1] * units + _dense_diagonal(dense)
    return _divisibility_chain(factors)


def _dense_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonalise by unimodular row/column operations; returns |diagonal|."""
    a = [row[:] for row in a]
    diag: list[int] = []
    while a and a[0]:
        nz = [(abs(x), i, j) for i, row in enumerate(a) for j, x in enumerate(row) if x]
        if not nz:
            break
        _, i0, j0 = min(nz)
        a[0], a[i0] = a[i0], a[0]
        for row in a:
            row[0], row[j0] = row[j0], row[0]
        while True:
            piv = a[0][0]
            for i in range(1, len(a)):
                if a[i][0]:
                    q = a[i][0] // piv
                    a[i] = [x - q * y for x, y in zip(a[i], a[0])]
            for j in range(1, len(a[0])):
                if a[0][j]:
                    q = a[0][j] // piv
                    for row in a:
                        row[j] -= q * row[0]
            rest = [(abs(a[i][0]), i, 0) for i in range(1, len(a)) if a[i][0]]
            rest += [(abs(a[0][j]), 0, j) for j in range(1, len(a[0])) if a[0][j]]
            if not rest:
                break
            _, i1, j1 = min(rest)
            if i1:
                a[0], a[i1] = a[i1], a[0]
            else:
                for row in a:
                    row[0], row[j1] = row[j1], row[0]
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
    return diag


def _divisibility_chain(d: list[int]) -> list[int]:
    d = sorted(x for x in d if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def dense_vector(vec: Vector, n: int) -> list:
    return [vec.get(i, 0) for i in range(n)]


def sparse_vector(values: Iterable) -> Vector:
    return {i: x for i, x in enumerate(values) if x}
