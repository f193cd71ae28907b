"""Linear algebra over GF(2) on bit-packed vectors.

A vector is a Python ``int`` whose bit ``i`` is the coordinate ``i``.  A
matrix is stored column-wise: ``cols[j]`` is the image of the ``j``-th basis
vector, packed over the row index.  Python integers are arbitrary length, so
a column with 10^4 rows is one machine object and row operations are a
single XOR.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


def bits(v: int) -> Iterator[int]:
    """Indices of the set bits of ``v``, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def popcount(v: int) -> int:
    return bin(v).count("1")


class Echelon:
    """Incrementally built basis in leading-bit echelon form.

    Each stored vector has a distinct leading (highest) bit.  ``reduce``
    performs leading-term reduction and, when asked, tracks which inserted
    vectors were used so that solutions can be read back.
    """

    __slots__ = ("_rows",)

    def __init__(self, vectors: Iterable[int] = ()):
        self._rows: dict[int, tuple[int, int]] = {}
        for i, v in enumerate(vectors):
            self.add(v, 1 << i)

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: int) -> tuple[int, int]:
        """Return ``(residual, combination)``; residual is 0 iff ``v`` is in the span."""
        combo = 0
        rows = self._rows
        while v:
            entry = rows.get(v.bit_length() - 1)
            if entry is None:
                break
            v ^= entry[0]
            combo ^= entry[1]
        return v, combo

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert ``v`` (labelled by ``tag``); returns False if it was dependent."""
        v, combo = self.reduce(v)
        if not v:
            return False
        self._rows[v.bit_length() - 1] = (v, combo ^ tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def vectors(self) -> list[int]:
        return [self._rows[p][0] for p in sorted(self._rows)]


@dataclass(frozen=True)
class SparseBinaryMatrix:
    rows: int
    cols: int
    entries: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")

    @classmethod
    def from_dense(cls, data: list[list[int]]) -> "SparseBinaryMatrix":
        n_rows = len(data)
        n_cols = len(data[0]) if data else 0
        entries = frozenset(
            (r, c) for r, row in enumerate(data) for c, x in enumerate(row) if x % 2
        )
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_columns(cls, rows: int, cols: list[int]) -> "SparseBinaryMatrix":
        return cls(rows, len(cols), frozenset((r, c) for c, v in enumerate(cols) for r in bits(v)))

    @classmethod
    def identity(cls, n: int) -> "SparseBinaryMatrix":
        return cls(n, n, frozenset((i, i) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseBinaryMatrix":
        return cls(rows, cols, frozenset())

    def columns(self) -> list[int]:
        out = [0] * self.cols
        for r, c in self.entries:
            out[c] |= 1 << r
        return out

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c in self.entries:
            out[r][c] = 1
        return out

    def __matmul__(self, other: "SparseBinaryMatrix") -> "SparseBinaryMatrix":
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        mine = self.columns()
        cols = []
        for v in other.columns():
            acc = 0
            for r in bits(v):
                acc ^= mine[r]
            cols.append(acc)
        return SparseBinaryMatrix.from_columns(self.rows, cols)

    def is_zero(self) -> bool:
        return not self.entries


def _columns(M) -> tuple[int, list[int]]:
    if isinstance(M, SparseBinaryMatrix):
        return M.rows, M.columns()
    raise TypeError(f"expected SparseBinaryMatrix, got {type(M).__name__}")


def rank_cols(cols: Iterable[int]) -> int:
    ech = Echelon()
    return sum(1 for v in cols if ech.add(v))


def kernel_cols(cols: list[int]) -> list[int]:
    """Kernel basis of the map whose ``j``-th column is ``cols[j]``."""
    ech = Echelon()
    kernel = []
    for j, v in enumerate(cols):
        residual, combo = ech.reduce(v)
        if residual:
            ech._rows[residual.bit_length() - 1] = (residual, combo ^ (1 << j))
        else:
            kernel.append(combo ^ (1 << j))
    return kernel


def rank_f2(M: SparseBinaryMatrix) -> int:
    return rank_cols(_columns(M)[1])


def kernel_basis_f2(M: SparseBinaryMatrix) -> list[int]:
    return kernel_cols(_columns(M)[1])


def image_basis_f2(M: SparseBinaryMatrix) -> list[int]:
    ech = Echelon()
    return [v for v in _columns(M)[1] if v and ech.add(v)]


def solve_f2(M: SparseBinaryMatrix, b: int) -> int | None:
    """Some ``x`` with ``M x = b``, or None when ``b`` is not in the image.

    The returned solution is the one produced by eliminating columns in
    index order, so it is deterministic.
    """
    n_rows, cols = _columns(M)
    if b >> n_rows:
        raise ValueError(f"right-hand side has bits beyond row {n_rows}")
    ech = Echelon()
    for j, v in enumerate(cols):
        ech.add(v, 1 << j)
    residual, combo = ech.reduce(b)
    return None if residual else combo


def apply_cols(cols: list[int], x: int) -> int:
    acc = 0
    for j in bits(x):
        acc ^= cols[j]
    return acc
