"""The truncated Brown-Peterson Hopf algebroid at p = 2.

Structure maps are generated from the universal 2-typical logarithm with
Hazewinkel generators: 2 m_n = sum_{i<n} m_i v_{n-i}^{2^i}, the right unit
from eta_R(m_n) = sum m_i t_{n-i}^{2^i}, and the coproduct from
sum m_i Delta(t_j)^{2^i} = sum m_i t_j^{2^i} (x) t_k^{2^{i+j}}.  All
intermediate arithmetic is over Q with exact fractions; integrality is
asserted at the end.

Polynomials live in Q[v_1..v_k, t^(1)_1..t^(1)_k, ..., t^(s)_1..t^(s)_k]: the
v variables are the left coefficients and t^(j) the j-th tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Poly = dict  # exponent tuple -> Fraction (nonzero)

CONVENTION = "Hazewinkel"


def gen_degree(n: int) -> int:
    return 2 * (2**n - 1)


@dataclass(frozen=True)
class Layout:
    """Variable layout: k generators, s tensor factors."""

    k: int
    s: int

    @property
    def size(self) -> int:
        return self.k * (self.s + 1)

    def v(self, n: int) -> int:
        return n - 1

    def t(self, factor: int, n: int) -> int:
        return self.k * factor + n - 1

    def degree(self, exps: tuple) -> int:
        return sum(e * gen_degree(i % self.k + 1) for i, e in enumerate(exps))


def p_const(layout: Layout, c) -> Poly:
    return {(0,) * layout.size: Fraction(c)} if c else {}


def p_var(layout: Layout, index: int) -> Poly:
    e = [0] * layout.size
    e[index] = 1
    return {tuple(e): Fraction(1)}


def p_add(a: Poly, b: Poly, scale=1) -> Poly:
    out = dict(a)
    for e, c in b.items():
        x = out.get(e, 0) + scale * c
        if x:
            out[e] = x
        else:
            out.pop(e, None)
    return out


def p_scale(a: Poly, c) -> Poly:
    return {e: x * c for e, x in a.items()} if c else {}


def p_mul(a: Poly, b: Poly) -> Poly:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            x = out.get(e, 0) + ca * cb
            if x:
                out[e] = x
            else:
                out.pop(e, None)
    return out


def p_pow(a: Poly, n: int, layout: Layout) -> Poly:
    out = p_const(layout, 1)
    base = a
    while n:
        if n & 1:
            out = p_mul(out, base)
        n >>= 1
        if n:
            base = p_mul(base, base)
    return out


def p_substitute(a: Poly, images: list[Poly], target: Layout) -> Poly:
    """Ring map sending variable i to ``images[i]``."""
    out: dict = {}
    cache: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = p_pow(images[i], e, target)
        return cache[key]

    for exps, c in a.items():
        term = p_const(target, c)
        for i, e in enumerate(exps):
            if e:
                term = p_mul(term, power(i, e))
                if not term:
                    break
        out = p_add(out, term)
    return out


def p_embed(a: Poly, source: Layout, target: Layout, factor_map: dict[int, int] | None = None) -> Poly:
    """Re-index variables: v stays, t^(j) goes to t^(factor_map[j])."""
    factor_map = factor_map or {j: j for j in range(1, source.s + 1)}
    out = {}
    for exps, c in a.items():
        e = [0] * target.size
        for n in range(1, source.k + 1):
            e[target.v(n)] = exps[source.v(n)]
            for j in range(1, source.s + 1):
                if exps[source.t(j, n)]:
                    e[target.t(factor_map[j], n)] += exps[source.t(j, n)]
        out[tuple(e)] = c
    return out


def p_is_integral(a: Poly) -> bool:
    return all(c.denominator == 1 for c in a.values())


def p_degrees(a: Poly, layout: Layout) -> set[int]:
    return {layout.degree(e) for e in a}


def p_str(a: Poly, layout: Layout) -> str:
    if not a:
        return "0"
    names = [f"v{n}" for n in range(1, layout.k + 1)]
    for j in range(1, layout.s + 1):
        prime = "" if layout.s == 1 else ("'" * j)
        names += [f"t{n}{prime}" for n in range(1, layout.k + 1)]
    terms = []
    for exps, c in sorted(a.items(), key=lambda kv: tuple(-x for x in kv[0])):
        mono = " ".join(
            (names[i] if e == 1 else f"{names[i]}^{e}") for i, e in enumerate(exps) if e
        )
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c} {mono}")
    return " + ".join(terms).replace("+ -", "- ")


class IntegralityError(ArithmeticError):
    pass


# -- generation ---------------------------------------------------------------


def log_coefficients(k: int) -> list[Poly]:
    """m_0 .. m_k in Q[v_1..v_k] from 2 m_n = sum_{i<n} m_i v_{n-i}^{2^i}."""
    if k < 1:
        raise ValueError("need k >= 1")
    L = Layout(k, 0)
    m = [p_const(L, 1)]
    for n in range(1, k + 1):
        acc: Poly = {}
        for i in range(n):
            acc = p_add(acc, p_mul(m[i], p_pow(p_var(L, L.v(n - i)), 2**i, L)))
        m.append(p_scale(acc, Fraction(1, 2)))
    return m


@dataclass
class BPAlgebroid:
    """(BP_*, BP_*BP) through generators v_1..v_k, t_1..t_k."""

    k: int
    t_max: int
    log: list[Poly]
    eta_r: list[Poly]  # eta_R(v_n) in Layout(k, 1), index n-1
    delta: list[Poly]  # Delta(t_n) in Layout(k, 2), index n-1
    convention: str = CONVENTION
    _rk_cache: dict = field(default_factory=dict, repr=False)

    @property
    def smallest_omitted_degree(self) -> int:
        return gen_degree(self.k + 1)

    def certified(self, t: int) -> bool:
        """True when no omitted generator can contribute in internal degree t."""
        return t < self.smallest_omitted_degree

    def counit(self, x: Poly, layout: Layout) -> Poly:
        """Set every t variable to zero."""
        return {e: c for e, c in x.items() if not any(e[layout.k:])}

    def right_unit(self, n: int) -> Poly:
        return self.eta_r[n - 1]

    def coproduct(self, n: int) -> Poly:
        return self.delta[n - 1]

    def moved_coefficient(self, n: int, position: int, layout: Layout) -> Poly:
        """v_n sitting just left of tensor factor ``position``, rewritten with all coefficients on the left.

        R_1(v) = v and R_{i+1}(v) = eta_R(v) with v -> R_i(v), t -> t^(i).
        """
        key = (n, position, layout)
        hit = self._rk_cache.get(key)
        if hit is not None:
            return hit
        if position == 1:
            out = p_var(layout, layout.v(n))
        else:
            images = [self.moved_coefficient(j, position - 1, layout) for j in range(1, self.k + 1)]
            images += [p_var(layout, layout.t(position - 1, j)) for j in range(1, self.k + 1)]
            out = p_substitute(self.eta_r[n - 1], images, layout)
        self._rk_cache[key] = out
        return out

    def to_json(self) -> dict:
        L1, L2 = Layout(self.k, 1), Layout(self.k, 2)
        return {
            "convention": self.convention,
            "k": self.k,
            "t_max": self.t_max,
            "log": [p_str(m, Layout(self.k, 0)) for m in self.log],
            "eta_R": {f"v{n}": p_str(self.eta_r[n - 1], L1) for n in range(1, self.k + 1)},
            "Delta": {f"t{n}": p_str(self.delta[n - 1], L2) for n in range(1, self.k + 1)},
        }


def _right_unit_from_log(k: int, m: list[Poly]) -> list[Poly]:
    L0, L1 = Layout(k, 0), Layout(k, 1)
    mm = [p_embed(x, L0, L1) for x in m]

    def eta_m(n):
        acc: Poly = {}
        for i in range(n + 1):
            t = p_const(L1, 1) if n - i == 0 else p_pow(p_var(L1, L1.t(1, n - i)), 2**i, L1)
            acc = p_add(acc, p_mul(mm[i], t))
        return acc

    eta = []
    for n in range(1, k + 1):
        acc = p_scale(eta_m(n), 2)
        for i in range(1, n):
            acc = p_add(acc, p_mul(eta_m(i), p_pow(eta[n - i - 1], 2**i, L1)), -1)
        eta.append(acc)
    return eta


def _coproduct_from_log(k: int, m: list[Poly]) -> list[Poly]:
    L0, L2 = Layout(k, 0), Layout(k, 2)
    mm = [p_embed(x, L0, L2) for x in m]

    def t(factor, n, power):
        if n == 0:
            return p_const(L2, 1)
        return p_pow(p_var(L2, L2.t(factor, n)), power, L2)

    delta: list[Poly] = []
    for n in range(1, k + 1):
        acc: Poly = {}
        for i in range(n + 1):
            for j in range(n - i + 1):
                kk = n - i - j
                acc = p_add(acc, p_mul(mm[i], p_mul(t(1, j, 2**i), t(2, kk, 2 ** (i + j)))))
        for i in range(1, n + 1):
            j = n - i
            dj = p_const(L2, 1) if j == 0 else delta[j - 1]
            acc = p_add(acc, p_mul(mm[i], p_pow(dj, 2**i, L2)), -1)
        delta.append(acc)
    return delta


def build_algebroid(k: int = 2, t_max: int = 12, right_unit_override: dict | None = None) -> BPAlgebroid:
    """Generate the structure maps; ``right_unit_override`` injects faults for testing."""
    if k < 1:
        raise ValueError("need k >= 1")
    if gen_degree(k) > t_max:
        raise ValueError(f"generator v{k} of degree {gen_degree(k)} exceeds t_max = {t_max}")
    m = log_coefficients(k)
    eta = _right_unit_from_log(k, m)
    for n, poly in (right_unit_override or {}).items():
        eta[n - 1] = poly
    delta = _coproduct_from_log(k, m)
    return BPAlgebroid(k, t_max, m, eta, delta)


def right_unit(n: int, k: int = 2) -> Poly:
    alg = build_algebroid(max(k, n), max(12, gen_degree(max(k, n))))
    out = alg.right_unit(n)
    if not p_is_integral(out):
        raise IntegralityError(f"eta_R(v{n}) is not integral")
    return out


# -- verification ---------------------------------------------------------------


@dataclass
class AlgebroidReport:
    k: int
    t_max: int
    ok: bool
    checks: int
    failures: list[str]

    def to_json(self) -> dict:
        return {"k": self.k, "t_max": self.t_max, "ok": self.ok, "checks": self.checks, "failures": self.failures}


def verify_algebroid_axioms(alg: BPAlgebroid | None = None, k: int = 2, t_max: int = 12) -> AlgebroidReport:
    """Integrality, degrees, counits, coassociativity, Delta-eta_R compatibility, and the logarithm.

    Each identity is checked on generators and on every monomial in the v's
    and t's of internal degree <= t_max, by expanding both sides.
    """
    alg = alg or build_algebroid(k, t_max)
    k, t_max = alg.k, alg.t_max
    L0, L1, L2, L3 = (Layout(k, s) for s in range(4))
    failures: list[str] = []
    checks = 0

    def check(cond, msg):
        nonlocal checks
        checks += 1
        if not cond:
            failures.append(msg)

    for n in range(1, k + 1):
        d = gen_degree(n)
        er, dt = alg.eta_r[n - 1], alg.delta[n - 1]
        check(p_is_integral(er), f"integrality: eta_R(v{n})")
        check(p_is_integral(dt), f"integrality: Delta(t{n})")
        check(p_degrees(er, L1) <= {d}, f"degree: eta_R(v{n})")
        check(p_degrees(dt, L2) <= {d}, f"degree: Delta(t{n})")
        check(alg.counit(er, L1) == p_var(L1, L1.v(n)), f"counit: eps(eta_R(v{n})) != v{n}")
        t_n = p_var(L1, L1.t(1, n))
        left = {}
        for e, c in dt.items():
            if not any(e[L2.t(1, 1): L2.t(1, k) + 1]):
                left[e] = c
        check(p_embed(left, L2, L1, {1: 1, 2: 1}) == t_n, f"counit: (eps (x) 1) Delta(t{n})")
        right = {e: c for e, c in dt.items() if not any(e[L2.t(2, 1): L2.t(2, k) + 1])}
        check(p_embed(right, L2, L1, {1: 1, 2: 1}) == t_n, f"counit: (1 (x) eps) Delta(t{n})")

    # coassociativity: substitute Delta into the first or second factor of Delta(t_n)
    def delta_into(factor_a: int, factor_b: int, target: Layout, coeff_position: int):
        images = [alg.moved_coefficient(j, coeff_position, target) for j in range(1, k + 1)]
        images += [p_var(target, target.t(factor_a, j)) for j in range(1, k + 1)]
        images += [p_var(target, target.t(factor_b, j)) for j in range(1, k + 1)]
        return [p_substitute(alg.delta[n - 1], images, target) for n in range(1, k + 1)]

    left_inner = delta_into(1, 2, L3, 1)  # Delta on the first factor: coefficients already left
    right_inner = delta_into(2, 3, L3, 2)  # Delta on the second factor: coefficients moved past factor 1
    for n in range(1, k + 1):
        dt = alg.delta[n - 1]
        lhs = p_substitute(
            dt,
            [p_var(L3, L3.v(j)) for j in range(1, k + 1)]
            + left_inner
            + [p_var(L3, L3.t(3, j)) for j in range(1, k + 1)],
            L3,
        )
        rhs = p_substitute(
            dt,
            [p_var(L3, L3.v(j)) for j in range(1, k + 1)]
            + [p_var(L3, L3.t(1, j)) for j in range(1, k + 1)]
            + right_inner,
            L3,
        )
        check(lhs == rhs, f"coassociativity: Delta(t{n})")

    # Delta(eta_R(v)) = 1 (x) eta_R(v): the right unit of the second factor
    delta_t = [alg.delta[j - 1] for j in range(1, k + 1)]
    for n in range(1, k + 1):
        lhs = p_substitute(alg.eta_r[n - 1], [p_var(L2, L2.v(j)) for j in range(1, k + 1)] + delta_t, L2)
        rhs = alg.moved_coefficient(n, 3, L2)
        check(lhs == rhs, f"compatibility: Delta(eta_R(v{n})) != 1 (x) eta_R(v{n})")

    # logarithm: eta_R(m_n) = sum m_i t_{n-i}^{2^i}
    mm = [p_embed(x, L0, L1) for x in alg.log]
    eta_images = list(alg.eta_r) + [p_var(L1, L1.t(1, j)) for j in range(1, k + 1)]
    for n in range(1, k + 1):
        lhs = p_substitute(mm[n], eta_images, L1)
        rhs: Poly = {}
        for i in range(n + 1):
            t = p_const(L1, 1) if n == i else p_pow(p_var(L1, L1.t(1, n - i)), 2**i, L1)
            rhs = p_add(rhs, p_mul(mm[i], t))
        check(lhs == rhs, f"logarithm: eta_R(m{n}) disagrees with the right-unit formula")

    # products: ring maps must stay integral and degree-preserving on every monomial in range
    for exps in _monomials(L1, t_max):
        mono = {exps: Fraction(1)}
        img = p_substitute(mono, eta_images, L1)
        check(p_is_integral(img) and p_degrees(img, L1) <= {L1.degree(exps)},
              f"products: eta_R on {p_str(mono, L1)}")
        check(alg.counit(p_substitute({e: c for e, c in mono.items() if not any(e[k:])}, eta_images, L1), L1)
              == {e: c for e, c in mono.items() if not any(e[k:])},
              f"products: counit on {p_str(mono, L1)}")
    return AlgebroidReport(k, t_max, not failures, checks, failures)


def _monomials(layout: Layout, t_max: int):
    degs = [gen_degree(i % layout.k + 1) for i in range(layout.size)]

    def rec(i, budget, acc):
        if i == len(degs):
            yield tuple(acc)
            return
        for e in range(budget // degs[i] + 1):
            yield from rec(i + 1, budget - e * degs[i], acc + [e])

    yield from rec(0, t_max, [])
