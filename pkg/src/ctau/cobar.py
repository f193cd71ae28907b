"""Normalized cobar complexes and their cohomology.

``SliceCobar`` works over a :class:`~ctau.steenrod.HopfSlice` with ground ring
F2 or F2[tau].  A cochain of filtration s and internal degree t is a sum of
bar words [g_1|...|g_s] of positive-degree basis elements; the module
weight of a word is the sum of the weights, and a coefficient tau^k lowers
it by k.  So every cochain group is a graded free F2[tau]-module and every
differential is a :class:`~ctau.linalg.tau.GradedMatrix`.

``BPCobar`` is the cobar complex of the BP Hopf algebroid over the 2-local
integers, written in polynomial form Z[v][t^(1), ..., t^(s)].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bidegree import novikov_to_motivic
from .bp import BPAlgebroid, Layout, build_algebroid, gen_degree, p_str, p_substitute
from .linalg import INTEGER_2LOCAL, FiniteAbelianGroup, SparseIntegerMatrix, homology_at
from .linalg.f2 import Echelon, bits, rank_cols
from .linalg.integer import smith_form
from .linalg.tau import GradedMatrix, TauModule, graded_homology


class DSquaredError(ArithmeticError):
    pass


class RangeError(ValueError):
    pass


@dataclass(frozen=True)
class ExtClass:
    """A cohomology class: filtration s, internal degree t, weight w, and a representative.

    ``vector`` is a homogeneous bitmask over the basis of C^{s,t} with
    coefficient tau^(weight_i - w) at basis word i (or an integer vector for
    the BP complex).
    """

    s: int
    t: int
    w: int
    vector: object
    name: str = ""

    @property
    def stem(self) -> int:
        return self.t - self.s

    def tridegree(self) -> tuple[int, int, int]:
        return (self.s, self.t, self.w)


def _parity_xor(acc: dict, key, k):
    if acc.get(key) == k:
        del acc[key]
    elif key in acc:
        raise ArithmeticError("inhomogeneous coefficient")
    else:
        acc[key] = k


class SliceCobar:
    def __init__(self, slice_, s_max: int, t_max: int, check: bool = True):
        if t_max > slice_.degree_bound * max(1, s_max + 1):
            pass
        self.slice = slice_
        self.s_max = s_max
        self.t_max = t_max
        self.tau_ground = slice_.tau_ground
        self.positive = [i for i in range(len(slice_)) if slice_.degrees[i][0] > 0]
        if any(slice_.degrees[i][0] > slice_.degree_bound for i in self.positive):
            raise RangeError("slice has elements beyond its own bound")
        self._bases: dict = {}
        self._diffs: dict = {}
        self._reduced = {}
        pos = set(self.positive)
        for i in self.positive:
            self._reduced[i] = [(k, a, b) for k, a, b in slice_.coproduct[i] if a in pos and b in pos]
        if check:
            for s in range(0, s_max):
                for t in range(0, t_max + 1):
                    self.check_d_squared(s, t)

    # -- bases --------------------------------------------------------------
    def basis(self, s: int, t: int) -> tuple[list[tuple], dict, tuple[int, ...]]:
        key = (s, t)
        hit = self._bases.get(key)
        if hit is not None:
            return hit
        deg = self.slice.degrees
        words: list[tuple] = []

        def rec(prefix, remaining, left):
            if left == 0:
                if remaining == 0:
                    words.append(tuple(prefix))
                return
            for g in self.positive:
                d = deg[g][0]
                if d <= remaining - (left - 1):
                    rec(prefix + [g], remaining - d, left - 1)

        if s == 0:
            if t == 0:
                words.append(())
        else:
            rec([], t, s)
        index = {w: i for i, w in enumerate(words)}
        weights = tuple(sum(deg[g][1] for g in w) for w in words)
        out = (words, index, weights)
        self._bases[key] = out
        return out

    def differential(self, s: int, t: int) -> GradedMatrix:
        """d: C^{s,t} -> C^{s+1,t}."""
        key = (s, t)
        hit = self._diffs.get(key)
        if hit is not None:
            return hit
        if s < 0 or s > self.s_max or t > self.t_max:
            raise RangeError(f"(s, t) = ({s}, {t}) outside the built range s <= {self.s_max}, t <= {self.t_max}")
        src, _, src_w = self.basis(s, t)
        tgt, tgt_index, tgt_w = self.basis(s + 1, t)
        cols = []
        for word in src:
            acc: dict = {}
            for j, g in enumerate(word):
                for k, a, b in self._reduced[g]:
                    new = word[:j] + (a, b) + word[j + 1:]
                    _parity_xor(acc, tgt_index[new], k)
            v = 0
            for idx in acc:
                v |= 1 << idx
            cols.append(v)
        M = GradedMatrix(tgt_w, src_w, tuple(cols))
        self._diffs[key] = M
        return M

    def check_d_squared(self, s: int, t: int) -> None:
        d1 = self.differential(s, t)
        d2 = self.differential(s + 1, t) if s + 1 <= self.s_max else None
        if d2 is None:
            return
        for v in d1.cols:
            if d2.apply(v):
                raise DSquaredError(f"d o d != 0 at (s, t) = ({s}, {t})")

    # -- cohomology ---------------------------------------------------------
    def _d_in(self, s, t):
        if s == 0:
            return None
        return self.differential(s - 1, t)

    def _d_out(self, s, t):
        if s >= self.s_max:
            raise RangeError(f"Ext at s = {s} needs the complex through s = {s + 1}; built to {self.s_max}")
        return self.differential(s, t)

    def homology(self, s: int, t: int):
        if t > self.t_max or s < 0:
            raise RangeError(f"(s, t) = ({s}, {t}) outside the built range")
        _, _, weights = self.basis(s, t)
        return graded_homology(self._d_in(s, t), self._d_out(s, t), weights)

    def ext_group(self, s: int, t: int) -> TauModule:
        """Over F2[tau] a graded module; over F2 the ``free`` weights list one F2 per class."""
        return self.homology(s, t).module

    def ext_dims(self, s: int, t: int) -> dict[int, int]:
        """F2-dimension of Ext^{s,t} in each weight (mod-tau slices) or of its generators."""
        mod = self.ext_group(s, t)
        out: dict[int, int] = {}
        for w in mod.free:
            out[w] = out.get(w, 0) + 1
        for w, _ in mod.torsion:
            out[w] = out.get(w, 0) + 1
        return out

    def ext_rank(self, s: int, t: int) -> int:
        """Number of cyclic summands; over F2 this is the dimension, computed slice by slice."""
        if self.tau_ground:
            mod = self.ext_group(s, t)
            return len(mod.free) + len(mod.torsion)
        return sum(self.ext_dims_f2(s, t).values())

    def ext_dims_f2(self, s: int, t: int) -> dict[int, int]:
        """Over F2 (weights are preserved): dimension of Ext^{s,t} in each weight by ranks."""
        if self.tau_ground:
            raise ValueError("weight slices are not F2 summands over F2[tau]")
        _, _, weights = self.basis(s, t)
        d_out = self._d_out(s, t)
        d_in = self._d_in(s, t)
        out = {}
        for w in sorted(set(weights)):
            n = sum(1 for x in weights if x == w)
            r_out = rank_cols(_slice_cols(d_out, w))
            r_in = rank_cols(_slice_cols(d_in, w)) if d_in is not None else 0
            if n - r_out - r_in:
                out[w] = n - r_out - r_in
        return out

    # -- cochains -----------------------------------------------------------
    def word_vector(self, s: int, t: int, words) -> int:
        _, index, _ = self.basis(s, t)
        v = 0
        for w in words:
            v ^= 1 << index[tuple(w)]
        return v

    def generator_class(self, label: str, name: str = "") -> ExtClass:
        g = self.slice.index(label)
        t, w = self.slice.degrees[g]
        return ExtClass(1, t, w, self.word_vector(1, t, [(g,)]), name or f"[{label}]")

    def unit(self) -> ExtClass:
        return ExtClass(0, 0, 0, 1, "1")

    def tau(self) -> ExtClass:
        if not self.tau_ground:
            raise ValueError("tau is zero over F2")
        return ExtClass(0, 0, -1, 1, "tau")

    def is_cocycle(self, c: ExtClass) -> bool:
        return self.differential(c.s, c.t).apply(c.vector) == 0

    def product(self, x: ExtClass, y: ExtClass, name: str = "") -> ExtClass:
        """Concatenation of representatives; signs are trivial in characteristic 2."""
        s, t = x.s + y.s, x.t + y.t
        if t > self.t_max or s > self.s_max:
            raise RangeError(f"product lands in (s, t) = ({s}, {t}) beyond the built range")
        xw, _, _ = self.basis(x.s, x.t)
        yw, _, _ = self.basis(y.s, y.t)
        _, index, _ = self.basis(s, t)
        v = 0
        for i in bits(x.vector):
            for j in bits(y.vector):
                v ^= 1 << index[xw[i] + yw[j]]
        return ExtClass(s, t, x.w + y.w, v, name or _join(x.name, y.name))

    cup_product = product

    def boundary_space(self, s: int, t: int, w: int) -> tuple[Echelon, list[int], list[int]]:
        """Echelon basis of the weight-w boundaries in C^{s,t}, plus the slice index maps."""
        ech = Echelon()
        if s == 0:
            return ech, [], []
        d = self.differential(s - 1, t)
        src, tgt, cols = d.at_weight(w)
        for v in cols:
            ech.add(_unpack(v, tgt))
        return ech, src, tgt

    def solve_boundary(self, c: ExtClass) -> ExtClass | None:
        """Lexicographically first u of weight c.w with du = c, or None."""
        if c.s == 0:
            return None if c.vector else ExtClass(-1, c.t, c.w, 0)
        d = self.differential(c.s - 1, c.t)
        src, tgt, cols = d.at_weight(c.w)
        ech = Echelon()
        for j, v in enumerate(cols):
            ech.add(_unpack(v, tgt), 1 << j)
        residual, combo = ech.reduce(c.vector)
        if residual:
            return None
        u = 0
        for j in bits(combo):
            u |= 1 << src[j]
        return ExtClass(c.s - 1, c.t, c.w, u)

    def is_zero_class(self, c: ExtClass) -> bool:
        if c.vector == 0:
            return True
        return self.solve_boundary(c) is not None

    def cocycles(self, s: int, t: int, w: int) -> list[int]:
        """A basis of the weight-w cocycles in C^{s,t}, as full-coordinate bitmasks."""
        d = self.differential(s, t)
        src, tgt, cols = d.at_weight(w)
        ech = Echelon()
        out = []
        for j, v in enumerate(cols):
            residual, combo = ech.reduce(v)
            if residual:
                ech.add(residual, combo ^ (1 << j))
            else:
                out.append(_unpack(combo ^ (1 << j), src))
        return out

    def ext_slice_basis(self, s: int, t: int, w: int) -> list[int]:
        """Representatives of an F2-basis of the weight-w part of Ext^{s,t}."""
        bnd, _, _ = self.boundary_space(s, t, w)
        out = []
        for z in self.cocycles(s, t, w):
            if bnd.add(z):
                out.append(z)
        return out

    def massey_triple(self, x: ExtClass, y: ExtClass, z: ExtClass) -> "MasseyResult":
        xy, yz = self.product(x, y), self.product(y, z)
        u, v = self.solve_boundary(xy), self.solve_boundary(yz)
        if u is None or v is None:
            raise ValueError("bracket undefined: a product is nonzero in cohomology")
        s = x.s + y.s + z.s - 1
        t = x.t + y.t + z.t
        w = x.w + y.w + z.w
        value = 0
        if u.s >= 0:
            value ^= self.product(u, z).vector
        if v.s >= 0:
            value ^= self.product(x, v).vector
        rep = ExtClass(s, t, w, value, f"<{x.name}, {y.name}, {z.name}>")
        if not self.is_cocycle(rep):
            raise ArithmeticError("Massey representative is not a cocycle")
        # indeterminacy: x * Ext + Ext * z in the target tridegree
        indet = []
        s1, t1, w1 = y.s + z.s - 1, y.t + z.t, y.w + z.w
        if s1 >= 0:
            for a in self.cocycles(s1, t1, w1) if s1 > 0 else _scalars(s1, t1, w1):
                indet.append(self.product(x, ExtClass(s1, t1, w1, a)).vector)
        s2, t2, w2 = x.s + y.s - 1, x.t + y.t, x.w + y.w
        if s2 >= 0:
            for a in self.cocycles(s2, t2, w2) if s2 > 0 else _scalars(s2, t2, w2):
                indet.append(self.product(ExtClass(s2, t2, w2, a), z).vector)
        bnd, _, _ = self.boundary_space(s, t, w)
        indet_basis = []
        for vec in indet:
            if bnd.add(vec):
                indet_basis.append(vec)
        return MasseyResult(rep, indet_basis, self)


def _slice_cols(d: GradedMatrix, w: int) -> list[int]:
    # over F2 every entry has tau exponent zero, so a weight slice is a block
    src = [j for j, x in enumerate(d.col_weights) if x == w]
    return [d.cols[j] for j in src]


def _scalars(s, t, w):
    # C^0 is F2[tau] on the empty word; the weight-w slice is nonzero iff w <= 0
    return [1] if s == 0 and t == 0 and w <= 0 else []


def _join(a: str, b: str) -> str:
    if a in ("", "1"):
        return b
    if b in ("", "1"):
        return a
    return f"{a} {b}"


def _unpack(v: int, positions: list[int]) -> int:
    out = 0
    for k in bits(v):
        out |= 1 << positions[k]
    return out


@dataclass
class MasseyResult:
    representative: ExtClass
    indeterminacy: list[int]
    complex: SliceCobar

    @property
    def has_indeterminacy(self) -> bool:
        return bool(self.indeterminacy)

    def contains(self, c: ExtClass) -> bool:
        """Whether ``c`` lies in the coset value + indeterminacy (modulo boundaries)."""
        r = self.representative
        if c.tridegree() != r.tridegree():
            return False
        bnd, _, _ = self.complex.boundary_space(r.s, r.t, r.w)
        for vec in self.indeterminacy:
            bnd.add(vec)
        return bnd.contains(r.vector ^ c.vector)

    def is_zero(self) -> bool:
        return self.complex.is_zero_class(self.representative)

    def coset(self) -> list[int]:
        """Every representative in the coset, modulo boundaries (full enumeration)."""
        out = []
        base = self.representative.vector
        n = len(self.indeterminacy)
        for mask in range(1 << n):
            v = base
            for i in range(n):
                if mask >> i & 1:
                    v ^= self.indeterminacy[i]
            out.append(v)
        return out


# -- BP cobar -----------------------------------------------------------------


class BPCobar:
    """Cobar complex of (BP_*, BP_*BP) in polynomial form, over the 2-local integers."""

    def __init__(self, alg: BPAlgebroid | None = None, s_max: int = 3, t_max: int = 12, check: bool = True):
        self.alg = alg or build_algebroid(2, t_max)
        self.k = self.alg.k
        self.s_max = s_max
        self.t_max = t_max
        self._bases: dict = {}
        self._diffs: dict = {}
        if check:
            for s in range(0, s_max):
                for t in range(0, t_max + 1, 2):
                    self.check_d_squared(s, t)

    def _monomials(self, count: int, degree: int, positive: bool):
        degs = [gen_degree(n) for n in range(1, self.k + 1)]

        def rec(i, budget, acc):
            if i == count:
                if budget == 0:
                    yield tuple(acc)
                return
            for e in range(budget // degs[i] + 1):
                yield from rec(i + 1, budget - e * degs[i], acc + [e])

        for mono in rec(0, degree, []):
            if positive and not any(mono):
                continue
            yield mono

    def basis(self, s: int, t: int):
        key = (s, t)
        hit = self._bases.get(key)
        if hit is not None:
            return hit
        words = []
        if t % 2 == 0 and t >= 0:
            def rec(j, budget, acc):
                if j == s:
                    for v in self._monomials(self.k, budget, False):
                        words.append(v + acc)
                    return
                for d in range(2, budget + 1, 2):
                    for m in self._monomials(self.k, d, True):
                        yield_ = acc + m
                        rec(j + 1, budget - d, yield_)

            rec(0, t, ())
        words.sort()
        index = {w: i for i, w in enumerate(words)}
        self._bases[key] = (words, index)
        return words, index

    def _face_images(self, s: int, face: int) -> list:
        """Images of v_1..v_k, t^(1)..t^(s) under the i-th coface, in Layout(k, s+1)."""
        k = self.k
        L = Layout(k, s + 1)
        from .bp import p_var

        if face == 0:
            v_img = [self.alg.moved_coefficient(n, 2, L) for n in range(1, k + 1)]
            t_img = [p_var(L, L.t(j + 1, n)) for j in range(1, s + 1) for n in range(1, k + 1)]
            return v_img + t_img
        v_img = [p_var(L, L.v(n)) for n in range(1, k + 1)]
        if face == s + 1:
            t_img = [p_var(L, L.t(j, n)) for j in range(1, s + 1) for n in range(1, k + 1)]
            return v_img + t_img
        t_img = []
        moved = [self.alg.moved_coefficient(n, face, L) for n in range(1, k + 1)]
        for j in range(1, s + 1):
            for n in range(1, k + 1):
                if j < face:
                    t_img.append(p_var(L, L.t(j, n)))
                elif j > face:
                    t_img.append(p_var(L, L.t(j + 1, n)))
                else:
                    dt = self.alg.delta[n - 1]
                    images = moved + [p_var(L, L.t(face, m)) for m in range(1, k + 1)]
                    images += [p_var(L, L.t(face + 1, m)) for m in range(1, k + 1)]
                    t_img.append(p_substitute(dt, images, L))
        return v_img + t_img

    def differential(self, s: int, t: int) -> SparseIntegerMatrix:
        key = (s, t)
        hit = self._diffs.get(key)
        if hit is not None:
            return hit
        if s > self.s_max or t > self.t_max:
            raise RangeError(f"(s, t) = ({s}, {t}) outside the built range")
        src, _ = self.basis(s, t)
        tgt, tindex = self.basis(s + 1, t)
        faces = [self._face_images(s, i) for i in range(s + 2)]
        L = Layout(self.k, s + 1)
        entries: dict = {}
        for c, word in enumerate(src):
            mono = {word: Fraction(1)}
            total: dict = {}
            for i, img in enumerate(faces):
                part = p_substitute(mono, img, L)
                sign = -1 if i % 2 else 1
                for e, x in part.items():
                    total[e] = total.get(e, 0) + sign * x
            for e, x in total.items():
                if not x:
                    continue
                if x.denominator != 1:
                    raise ArithmeticError("non-integral cobar differential")
                r = tindex.get(e)
                if r is None:
                    raise ArithmeticError(f"differential leaves the normalized complex at ({s}, {t})")
                entries[(r, c)] = int(x)
        M = SparseIntegerMatrix(len(tgt), len(src), entries)
        self._diffs[key] = M
        return M

    def check_d_squared(self, s: int, t: int) -> None:
        if s + 1 > self.s_max:
            return
        if not (self.differential(s + 1, t) @ self.differential(s, t)).is_zero():
            raise DSquaredError(f"d o d != 0 at (s, t) = ({s}, {t})")

    def ext_group(self, f: int, t: int) -> FiniteAbelianGroup:
        if f < 0 or t < 0:
            return FiniteAbelianGroup.zero()
        if f > self.s_max - 1 or t > self.t_max:
            raise RangeError(
                f"Ext^{{{f},{t}}} needs s <= {self.s_max - 1} and t <= {self.t_max}"
            )
        n = len(self.basis(f, t)[0])
        d_in = self.differential(f - 1, t) if f > 0 else SparseIntegerMatrix.zero(n, 0)
        return homology_at(d_in, self.differential(f, t), INTEGER_2LOCAL)

    def certified(self, t: int) -> bool:
        return self.alg.certified(t)

    def generators(self, f: int, t: int) -> list[str]:
        """Names of cocycles generating the cyclic summands (torsion part), for display."""
        words, _ = self.basis(f, t)
        if f == 0 or not words:
            return []
        d_in = self.differential(f - 1, t)
        sf = smith_form(d_in, verify=False)
        # U d_in V = D, so the rows of U^{-1} give the target basis; read the
        # nontrivial invariant directions from U^{-1} columns
        inv = _unimodular_inverse(sf.U)
        L = Layout(self.k, f)
        out = []
        for r, dval in enumerate(sf.invariant_factors):
            if abs(dval) in (0, 1) or dval % 2:
                continue
            col = [inv[i][r] for i in range(len(words))]
            poly = {words[i]: Fraction(c) for i, c in enumerate(col) if c}
            out.append(p_str(poly, L).replace("'", ""))
        return out

    def chart(self, f_max: int | None = None) -> list[dict]:
        f_max = self.s_max - 1 if f_max is None else f_max
        rows = []
        for f in range(0, f_max + 1):
            for t in range(0, self.t_max + 1, 2):
                g = self.ext_group(f, t)
                s, w = novikov_to_motivic(f, t)
                rows.append(
                    {
                        "f": f,
                        "t": t,
                        "stem": t - f,
                        "motivic": [s, w],
                        "group": str(g),
                        "free_rank": g.free_rank,
                        "torsion": list(g.torsion),
                        "certified": self.certified(t),
                    }
                )
        return rows


def _unimodular_inverse(U: list[list[int]]) -> list[list[int]]:
    n = len(U)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c])
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = [[int(x) for x in row[n:]] for row in A]
    return out
