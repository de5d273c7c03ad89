"""Exact linear algebra over GF(2).

Rows are packed into Python ints: bit ``j`` of a row holds column ``j``.
Everything here is immutable and exact; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

DEFAULT_CAP = 4096


class InconsistentSystem(ValueError):
    """Raised when ``Mx = b`` has no solution over GF(2)."""


class CapExceeded(ValueError):
    """Raised when an enumeration would produce more vectors than allowed."""


@dataclass(frozen=True, order=False)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits >> self.length:
            raise ValueError(f"bits exceed length {self.length}")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> BitVector:
        bits = 0
        for j, x in enumerate(entries):
            if x not in (0, 1):
                raise ValueError(f"entry {x!r} is not 0 or 1")
            if x:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        bits = 0
        for j in indices:
            if not 0 <= j < length:
                raise IndexError(j)
            bits |= 1 << j
        return cls(length, bits)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __iter__(self):
        return (self[j] for j in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def to_list(self) -> list[int]:
        return list(self)

    def support(self) -> list[int]:
        return [j for j in range(self.length) if (self.bits >> j) & 1]

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def is_zero(self) -> bool:
        return self.bits == 0

    def lex_key(self) -> tuple[int, ...]:
        return tuple(self)

    def __str__(self) -> str:
        return "".join(str(x) for x in self)


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row has bits beyond ncols")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            packed.append(BitVector.from_list(row).bits)
        return cls(len(rows), ncols, tuple(packed))

    @classmethod
    def from_text(cls, text: str) -> BitMatrix:
        """Parse one row per line of ``0``/``1`` characters."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        rows = []
        for ln in lines:
            if set(ln) - {"0", "1"}:
                raise ValueError(f"bad matrix row {ln!r}")
            rows.append([int(ch) for ch in ln])
        return cls.from_lists(rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column(self, j: int) -> BitVector:
        return BitVector(self.nrows, sum(((r >> j) & 1) << i for i, r in enumerate(self.rows)))

    def to_lists(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.nrows)]

    def to_text(self) -> str:
        return "".join(str(self.row(i)) + "\n" for i in range(self.nrows))

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.ncols, self.nrows, tuple(self.column(j).bits for j in range(self.ncols)))

    def matvec(self, x: BitVector) -> BitVector:
        if x.length != self.ncols:
            raise ValueError(f"vector length {x.length} != {self.ncols} columns")
        bits = 0
        for i, r in enumerate(self.rows):
            if bin(r & x.bits).count("1") & 1:
                bits |= 1 << i
        return BitVector(self.nrows, bits)


def _rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduce ``rows`` in place to reduced row echelon form.

    Only the first ``ncols`` bits are used for pivoting, so an augmented
    column can ride along at bit ``ncols``. Returns the reduced rows and the
    pivot column of each leading row.
    """
    pivots = []
    r = 0
    for c in range(ncols):
        mask = 1 << c
        p = next((k for k in range(r, len(rows)) if rows[k] & mask), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k] & mask:
                rows[k] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(M: BitMatrix) -> int:
    return len(_rref(list(M.rows), M.ncols)[1])


def nullspace(M: BitMatrix) -> list[BitVector]:
    """Basis of ``{x : Mx = 0}``, one vector per free column in column order."""
    rows, pivots = _rref(list(M.rows), M.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for row, p in zip(rows, pivots):
            if (row >> free) & 1:
                bits |= 1 << p
        basis.append(BitVector(M.ncols, bits))
    return basis


def solve_affine(M: BitMatrix, b: BitVector) -> tuple[BitVector, list[BitVector]] | None:
    """One solution of ``Mx = b`` plus a nullspace basis, or None if inconsistent.

    The particular solution sets every free variable to 0.
    """
    if b.length != M.nrows:
        raise ValueError(f"rhs length {b.length} != {M.nrows} rows")
    n = M.ncols
    aug = [r | (((b.bits >> i) & 1) << n) for i, r in enumerate(M.rows)]
    rows, pivots = _rref(aug, n)
    for row in rows[len(pivots):]:
        if row >> n:
            return None
    bits = 0
    for row, p in zip(rows, pivots):
        if row >> n:
            bits |= 1 << p
    return BitVector(n, bits), nullspace(M)


def span(basis: Sequence[BitVector], length: int) -> list[BitVector]:
    """All GF(2) combinations of ``basis`` (with repeats if dependent)."""
    out = []
    for coeffs in product((0, 1), repeat=len(basis)):
        bits = 0
        for c, v in zip(coeffs, basis):
            if c:
                bits ^= v.bits
        out.append(BitVector(length, bits))
    return out


def enumerate_solutions(M: BitMatrix, b: BitVector, cap: int = DEFAULT_CAP) -> list[BitVector]:
    """Every solution of ``Mx = b``, sorted lexicographically by entries."""
    solved = solve_affine(M, b)
    if solved is None:
        raise InconsistentSystem("system Mx = b is inconsistent over GF(2)")
    particular, basis = solved
    if 2 ** len(basis) > cap:
        raise CapExceeded(f"{2 ** len(basis)} solutions exceed cap {cap}")
    sols = [particular ^ v for v in span(basis, M.ncols)]
    return sorted(sols, key=BitVector.lex_key)


def is_independent(vectors: Sequence[BitVector]) -> bool:
    if not vectors:
        return True
    length = vectors[0].length
    return rank(BitMatrix(len(vectors), length, tuple(v.bits for v in vectors))) == len(vectors)
