"""Homogeneous linear algebra over the graded ring F2[tau].

Free modules carry a weight per basis element, and tau lowers weight by one.
A homogeneous vector of weight ``w`` is a bitmask over basis indices ``i``
with ``weights[i] >= w``; its coefficient at ``i`` is ``tau**(weights[i] - w)``.
Because every coefficient is a monomial fixed by the weights, a map between
such modules is a GF(2) bit matrix plus the two weight lists, and all row and
column operations of the graded Smith form are plain XORs.

Plain GF(2) is the special case where every weight is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .f2 import Echelon, bits


@dataclass(frozen=True)
class GradedMatrix:
    """Column-packed bits; ``cols[j]`` is the image of source basis vector ``j``."""

    row_weights: tuple[int, ...]
    col_weights: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if len(self.cols) != len(self.col_weights):
            raise ValueError("column count and column weights disagree")
        for j, v in enumerate(self.cols):
            if v >> len(self.row_weights):
                raise ValueError(f"column {j} has bits beyond the last row")
            for i in bits(v):
                if self.row_weights[i] < self.col_weights[j]:
                    raise ValueError(
                        f"entry ({i}, {j}) would need a negative power of tau"
                    )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_weights), len(self.col_weights)

    def exponent(self, i: int, j: int) -> int:
        return self.row_weights[i] - self.col_weights[j]

    def apply(self, v: int) -> int:
        acc = 0
        for j in bits(v):
            acc ^= self.cols[j]
        return acc

    def at_weight(self, w: int) -> tuple[list[int], list[int], list[int]]:
        """GF(2) slice in weight ``w``: (kept source indices, kept target indices, columns).

        Columns are repacked over the kept target indices.
        """
        src = [j for j, cw in enumerate(self.col_weights) if cw >= w]
        tgt = [i for i, rw in enumerate(self.row_weights) if rw >= w]
        pos = {i: k for k, i in enumerate(tgt)}
        out = []
        for j in src:
            v = 0
            for i in bits(self.cols[j]):
                v |= 1 << pos[i]
            out.append(v)
        return src, tgt, out


@dataclass
class GradedSmith:
    """Result of :func:`graded_smith`.

    ``target_basis[i]`` / ``source_basis[j]`` are homogeneous vectors in the
    original coordinates (weights ``row_weights[i]`` / ``col_weights[j]``).  In
    these bases the map is diagonal: ``source_basis[c] -> tau**e * target_basis[r]``
    for each ``(r, c, e)`` in ``pivots`` and zero on the other source vectors.
    """

    row_weights: tuple[int, ...]
    col_weights: tuple[int, ...]
    pivots: list[tuple[int, int, int]]
    target_basis: list[int]
    source_basis: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel(self) -> list[tuple[int, int]]:
        used = {c for _, c, _ in self.pivots}
        return [
            (self.source_basis[j], self.col_weights[j])
            for j in range(len(self.col_weights))
            if j not in used
        ]

    def invariant_exponents(self) -> list[int]:
        return sorted(e for _, _, e in self.pivots)


def graded_smith(M: GradedMatrix) -> GradedSmith:
    """Smith form over F2[tau] with homogeneous base changes.

    The pivot is always a nonzero entry of least tau-exponent among the
    remaining rows and columns, which makes every elimination step a legal
    homogeneous operation.
    """
    n_rows, n_cols = M.shape
    rw, cw = M.row_weights, M.col_weights
    # Reindex columns so that a lower bit is a heavier column; the lowest set
    # bit of a row is then its least-exponent entry.
    order = sorted(range(n_cols), key=lambda j: (-cw[j], j))
    pos = {j: k for k, j in enumerate(order)}
    rows = [0] * n_rows
    for j, v in enumerate(M.cols):
        bit = 1 << pos[j]
        for i in bits(v):
            rows[i] |= bit
    target = [1 << i for i in range(n_rows)]
    source = [1 << j for j in range(n_cols)]
    active = set(range(n_rows))
    pivots = []
    while True:
        best = None
        for i in active:
            r = rows[i]
            if not r:
                continue
            k = (r & -r).bit_length() - 1
            e = rw[i] - cw[order[k]]
            if best is None or e < best[0] or (e == best[0] and (i, k) < best[1:]):
                best = (e, i, k)
        if best is None:
            break
        e, p, k = best
        bit = 1 << k
        prow = rows[p]
        for i in active:
            if i != p and rows[i] & bit:
                rows[i] ^= prow
                target[p] ^= target[i]
        c = order[k]
        for kk in bits(prow ^ bit):
            source[order[kk]] ^= source[c]
        rows[p] = bit
        active.discard(p)
        pivots.append((p, c, e))
    return GradedSmith(tuple(rw), tuple(cw), pivots, target, source)


@dataclass(frozen=True)
class TauModule:
    """A finitely generated graded F2[tau]-module in normal form.

    ``free`` lists generator weights of free summands; ``torsion`` lists
    ``(weight, order)`` for summands F2[tau]/tau**order.
    """

    free: tuple[int, ...] = ()
    torsion: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(sorted(self.free, reverse=True)))
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion, reverse=True)))

    def dim_at(self, w: int) -> int:
        """GF(2)-dimension of the weight-``w`` part."""
        n = sum(1 for g in self.free if w <= g)
        n += sum(1 for g, k in self.torsion if g - k < w <= g)
        return n

    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    @property
    def free_rank(self) -> int:
        return len(self.free)


@dataclass
class GradedHomology:
    """Homology at the middle of ``C_in -> C -> C_out`` with explicit generators.

    Generators are homogeneous vectors over the middle basis.
    """

    module: TauModule
    free_generators: list[tuple[int, int]]  # (vector, weight)
    torsion_generators: list[tuple[int, int, int]]  # (vector, weight, order)
    boundary: GradedSmith  # Smith data of the incoming map


def graded_homology(
    d_in: GradedMatrix | None, d_out: GradedMatrix | None, weights: tuple[int, ...]
) -> GradedHomology:
    """ker(d_out) / im(d_in) as a graded F2[tau]-module."""
    n = len(weights)
    if d_in is None:
        d_in = GradedMatrix(tuple(weights), (), ())
    if d_out is None:
        d_out = GradedMatrix((), tuple(weights), tuple(0 for _ in weights))
    if d_in.row_weights != tuple(weights) or d_out.col_weights != tuple(weights):
        raise ValueError("middle weights do not match the differentials")
    for v in d_in.cols:
        if d_out.apply(v):
            raise ValueError("not a complex: d_out . d_in != 0")
    snf = graded_smith(d_in)
    pivot_rows = {r: e for r, _, e in snf.pivots}
    torsion = [
        (snf.target_basis[r], weights[r], e) for r, e in sorted(pivot_rows.items()) if e > 0
    ]
    rest = [i for i in range(n) if i not in pivot_rows]
    restricted = GradedMatrix(
        d_out.row_weights,
        tuple(weights[i] for i in rest),
        tuple(d_out.apply(snf.target_basis[i]) for i in rest),
    )
    ker = graded_smith(restricted).kernel()
    free = []
    for combo, w in ker:
        v = 0
        for k in bits(combo):
            v ^= snf.target_basis[rest[k]]
        free.append((v, w))
    module = TauModule(tuple(w for _, w in free), tuple((w, e) for _, w, e in torsion))
    return GradedHomology(module, free, torsion, snf)


def homology_coordinates(
    h: GradedHomology, d_in: GradedMatrix | None, weights: tuple[int, ...], v: int, w: int
) -> list[tuple[str, int, int]] | None:
    """Write the weight-``w`` cocycle ``v`` as a sum of tau-multiples of generators.

    Returns ``[(kind, index, tau_power), ...]`` with kind "free" or "torsion",
    or None when ``v`` is not in the span (it is then not a cocycle).  The
    empty list means ``v`` is a boundary.
    """
    keep = [i for i, x in enumerate(weights) if x >= w]
    pos = {i: k for k, i in enumerate(keep)}

    def proj(u):
        out = 0
        for i in bits(u):
            if i not in pos:
                raise ValueError("vector has support below its weight")
            out |= 1 << pos[i]
        return out

    ech = Echelon()
    if d_in is not None:
        _, tgt, cols = d_in.at_weight(w)
        for c in cols:
            u = 0
            for k in bits(c):
                u |= 1 << tgt[k]
            ech.add(proj(u))
    labels = []
    gens = [("free", i, g, gw, None) for i, (g, gw) in enumerate(h.free_generators)]
    gens += [("torsion", i, g, gw, e) for i, (g, gw, e) in enumerate(h.torsion_generators)]
    for kind, idx, g, gw, e in gens:
        if gw < w or (e is not None and gw - w >= e):
            continue
        labels.append((kind, idx, gw - w))
        ech.add(proj(g), 1 << (len(labels) - 1))
    residual, combo = ech.reduce(proj(v))
    if residual:
        return None
    return [labels[k] for k in bits(combo)]
