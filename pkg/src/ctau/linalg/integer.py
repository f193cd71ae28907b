"""Exact integer matrices and the Smith normal form.

All arithmetic is on Python integers, so pivots never overflow; there is
no fixed-width path to fall back from.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SparseIntegerMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), x in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if x:
                clean[(r, c)] = int(x)
        object.__setattr__(self, "entries", clean)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    @classmethod
    def from_dense(cls, data: list[list[int]], cols: int | None = None) -> "SparseIntegerMatrix":
        n_cols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(
            len(data),
            n_cols,
            {(r, c): x for r, row in enumerate(data) for c, x in enumerate(row) if x},
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseIntegerMatrix":
        return cls(rows, cols, {})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def __matmul__(self, other: "SparseIntegerMatrix") -> "SparseIntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), x in other.entries.items():
            by_row.setdefault(r, []).append((c, x))
        out: dict[tuple[int, int], int] = {}
        for (r, k), x in self.entries.items():
            for c, y in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + x * y
        return SparseIntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries


def _matmul(a, b):
    n, m, p = len(a), len(b), (len(b[0]) if b else 0)
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


@dataclass
class SmithForm:
    invariant_factors: list[int]
    U: list[list[int]]
    V: list[list[int]]
    D: list[list[int]]


def smith_form(M: SparseIntegerMatrix, verify: bool = True) -> SmithForm:
    """Unimodular ``U``, ``V`` with ``U M V = D`` diagonal and d1 | d2 | ...."""
    m, n = M.rows, M.cols
    A = M.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = [A[k][k] for k in range(min(m, n)) if A[k][k]]
    if verify:
        if _matmul(_matmul(U, M.to_dense()), V) != A:
            raise ArithmeticError("Smith normal form failed its U M V = D check")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ArithmeticError("invariant factors violate the divisibility chain")
    return SmithForm(factors, U, V, A)


def smith_normal_form(M: SparseIntegerMatrix) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of ``M`` (zeros omitted)."""
    return tuple(smith_form(M).invariant_factors)


def rank_q(M: SparseIntegerMatrix) -> int:
    return len(smith_form(M, verify=False).invariant_factors)


def odd_part(n: int) -> int:
    n = abs(n)
    while n and n % 2 == 0:
        n //= 2
    return n


def two_part(n: int) -> int:
    n = abs(n)
    return n // odd_part(n) if n else 0
