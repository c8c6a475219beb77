"""Exact integer linear algebra: Laplacians, determinants, Smith normal form.

Everything here runs over arbitrary-precision integers; no overflow is ever
acceptable because tree numbers in the recursive families grow geometrically.
Small determinants go through fraction-free (Bareiss) elimination, large ones
through the CRT kernel in :mod:`trisand._kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels

_BAREISS_CUTOFF = 16


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix of Python ints, row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        m = len(rows)
        n = len(rows[0]) if m else 0
        flat = []
        for row in rows:
            if len(row) != n:
                raise ValueError("ragged rows")
            flat.extend(int(x) for x in row)
        return cls(m, n, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out) if self.rows and other.cols else IntMatrix(self.rows, other.cols, ())


@dataclass(frozen=True)
class AbelianGroupShape:
    """Free rank plus invariant-factor chain d1 | d2 | ... with each di >= 2."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError("divisibility chain violated")
            prev = d

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{d}" for d in self.torsion]
        return "+".join(parts) if parts else "0"


def log_int(n: int) -> float:
    """Natural log of a positive integer, safe for values beyond float range."""
    if n <= 0:
        raise ValueError("log of a non-positive integer")
    bits = n.bit_length()
    if bits <= 900:
        return math.log(n)
    shift = bits - 900
    return math.log(n >> shift) + shift * math.log(2)


def determinant_bareiss(M: IntMatrix) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(M: IntMatrix) -> int:
    """Exact determinant; dispatches to Bareiss or the CRT kernel by size."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    if M.rows <= _BAREISS_CUTOFF:
        return determinant_bareiss(M)
    return _kernels.det_exact_crt(M.to_rows())


def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _add_row(a, u, dst, src, q):
    # row[dst] += q * row[src]
    ad, as_ = a[dst], a[src]
    for j in range(len(ad)):
        ad[j] += q * as_[j]
    ud, us = u[dst], u[src]
    for j in range(len(ud)):
        ud[j] += q * us[j]


def _add_col(a, v, dst, src, q):
    for row in a:
        row[dst] += q * row[src]
    for row in v:
        row[dst] += q * row[src]


def smith_normal_form(M: IntMatrix) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith normal form with transforms: U * M * V = diag(d1..dr, 0..).

    U and V are unimodular; d1 | d2 | ... and all di >= 0.  Pivoting picks the
    smallest absolute nonzero entry, ties broken by row-major position, which
    makes the reduction deterministic.
    """
    m, n = M.rows, M.cols
    a = M.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    for k in range(min(m, n)):
        while True:
            # locate pivot: smallest |nonzero| in the trailing block
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != k:
                _swap_rows(a, u, k, best[0])
            if best[1] != k:
                _swap_cols(a, v, k, best[1])

            dirty = False
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    _add_row(a, u, i, k, -q)
                    if a[i][k] != 0:
                        dirty = True
            for j in range(k + 1, n):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    _add_col(a, v, j, k, -q)
                    if a[k][j] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry for the chain to hold
            offender = None
            d = a[k][k]
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if a[i][j] % d != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row(a, u, k, offender, 1)
        if a[k][k] < 0:
            _add_row(a, u, k, k, -2)  # negate row k

    diag = [a[i][i] for i in range(min(m, n))]
    return diag, IntMatrix.from_rows(u) if m else IntMatrix(0, 0, ()), \
        IntMatrix.from_rows(v) if n else IntMatrix(0, 0, ())


def group_from_presentation(n_generators: int, relations: Iterable[Sequence[int]]) -> AbelianGroupShape:
    """Cokernel shape of the relation matrix over the given generators."""
    rel = [list(r) for r in relations]
    for r in rel:
        if len(r) != n_generators:
            raise ValueError("relation length does not match generator count")
    if not rel:
        return AbelianGroupShape(free_rank=n_generators)
    diag, _, _ = smith_normal_form(IntMatrix.from_rows(rel))
    rank = sum(1 for d in diag if d != 0)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroupShape(free_rank=n_generators - rank, torsion=torsion)


def direct_sum(*shapes: AbelianGroupShape) -> AbelianGroupShape:
    """Invariant-factor normal form of a direct sum of group shapes."""
    factors = [d for s in shapes for d in s.torsion]
    free = sum(s.free_rank for s in shapes)
    if not factors:
        return AbelianGroupShape(free_rank=free)
    rel = [[factors[i] if i == j else 0 for j in range(len(factors))] for i in range(len(factors))]
    inner = group_from_presentation(len(factors), rel)
    return AbelianGroupShape(free_rank=free, torsion=inner.torsion)


def laplacian(D) -> IntMatrix:
    """Asymmetric Laplacian L = B - A in the digraph's vertex order."""
    verts = list(D.vertices)
    index = {x: i for i, x in enumerate(verts)}
    n = len(verts)
    rows = [[0] * n for _ in range(n)]
    for arc in D.arcs:
        rows[index[arc.tail]][index[arc.tail]] += 1
        rows[index[arc.tail]][index[arc.head]] -= 1
    return IntMatrix.from_rows(rows)


def reduced_laplacian(D, omit) -> IntMatrix:
    """Laplacian with the row and column of vertex `omit` deleted."""
    verts = list(D.vertices)
    if omit not in verts:
        raise ValueError(f"unknown vertex {omit}")
    L = laplacian(D)
    skip = verts.index(omit)
    keep = [i for i in range(len(verts)) if i != skip]
    rows = L.to_rows()
    return IntMatrix.from_rows([[rows[i][j] for j in keep] for i in keep])


def tree_number(D) -> int:
    """Number of spanning arborescences from any root: det of L' (omit last)."""
    return determinant(reduced_laplacian(D, D.vertices[-1]))


def sandpile_group(D, omit=None) -> AbelianGroupShape:
    """Torsion of coker(L'); for connected Eulerian D the free rank is 0."""
    if omit is None:
        omit = D.vertices[-1]
    diag, _, _ = smith_normal_form(reduced_laplacian(D, omit))
    if any(d == 0 for d in diag):
        raise ValueError("digraph is disconnected: sandpile group is not finite")
    return AbelianGroupShape(free_rank=0, torsion=tuple(d for d in diag if d > 1))
