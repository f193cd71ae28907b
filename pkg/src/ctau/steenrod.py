"""The mod-2 motivic dual Steenrod algebra and its finite slices.

Monomials are triples ``(xi, taus, beta)``: ``xi`` is a tuple of exponents of
xi_1, xi_2, ... (trailing zeros stripped), ``taus`` a bitmask of the exterior
generators tau_0, tau_1, ..., and ``beta`` a 0/1 flag for beta_tau.  An
element is a frozenset of ``(k, monomial)`` pairs standing for a sum of
``tau**k * monomial`` over F2; the scalar tau lives in the pair, never in the
monomial.

Degrees are (topological, weight) in the homology convention:
|xi_i| = (2^{i+1}-2, 2^i-1), |tau_i| = (2^{i+1}-1, 2^i-1), |tau| = (0,-1),
|beta_tau| = (1,-1).

A :class:`HopfSlice` is the finite table form (basis through a degree bound,
product and coproduct structure constants in F2[tau]) that the verifier,
the dualizer and the cobar engine consume.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

Mono = tuple  # (xi: tuple[int, ...], taus: int, beta: int)
ONE: Mono = ((), 0, 0)


class Variant(str, Enum):
    DUAL_A_FULL = "DualA_full"
    DUAL_A_MOD_TAU = "DualA_modTau"
    DUAL_A_MOD_TAU_BETA = "DualA_modTau_betaTau"
    A1_DUAL = "A1_dual"
    A1_DUAL_MOD_TAU = "A1_dual_modTau"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        aliases = {
            "dual-a": cls.DUAL_A_FULL,
            "dual-a-full": cls.DUAL_A_FULL,
            "dual-a-mod-tau": cls.DUAL_A_MOD_TAU,
            "dual-a-mod-tau-beta": cls.DUAL_A_MOD_TAU_BETA,
            "a1-dual": cls.A1_DUAL,
            "a1-dual-mod-tau": cls.A1_DUAL_MOD_TAU,
        }
        if text in aliases:
            return aliases[text]
        for v in cls:
            if v.value.lower() == text.lower():
                return v
        raise ValueError(f"unknown variant {text!r}; choose from {sorted(aliases)}")

    @property
    def mod_tau(self) -> bool:
        return self in (Variant.DUAL_A_MOD_TAU, Variant.DUAL_A_MOD_TAU_BETA, Variant.A1_DUAL_MOD_TAU)

    @property
    def has_beta(self) -> bool:
        return self is Variant.DUAL_A_MOD_TAU_BETA

    @property
    def is_a1(self) -> bool:
        return self in (Variant.A1_DUAL, Variant.A1_DUAL_MOD_TAU)


def xi_degree(i: int) -> tuple[int, int]:
    return (2 ** (i + 1) - 2, 2**i - 1)


def tau_gen_degree(i: int) -> tuple[int, int]:
    return (2 ** (i + 1) - 1, 2**i - 1)


BETA_DEGREE = (1, -1)
TAU_DEGREE = (0, -1)


def mono_degree(m: Mono) -> tuple[int, int]:
    xi, taus, beta = m
    t = w = 0
    for i, e in enumerate(xi, start=1):
        dt, dw = xi_degree(i)
        t += e * dt
        w += e * dw
    i = 0
    while taus >> i:
        if taus >> i & 1:
            dt, dw = tau_gen_degree(i)
            t += dt
            w += dw
        i += 1
    if beta:
        t, w = t + 1, w - 1
    return (t, w)


def _strip(xi) -> tuple:
    xi = list(xi)
    while xi and not xi[-1]:
        xi.pop()
    return tuple(xi)


def _xi_add(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    return _strip(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def mono_name(m: Mono) -> str:
    xi, taus, beta = m
    parts = []
    for i, e in enumerate(xi, start=1):
        if e == 1:
            parts.append(f"xi{i}")
        elif e:
            parts.append(f"xi{i}^{e}")
    i = 0
    while taus >> i:
        if taus >> i & 1:
            parts.append(f"tau{i}")
        i += 1
    if beta:
        parts.append("beta")
    return " ".join(parts) if parts else "1"


def term_name(k: int, m: Mono) -> str:
    base = mono_name(m)
    if not k:
        return base
    t = "tau" if k == 1 else f"tau^{k}"
    return t if base == "1" else f"{t} {base}"


def element_name(x) -> str:
    if not x:
        return "0"
    return " + ".join(term_name(k, m) for k, m in sorted(x, key=_term_key))


def _term_key(term):
    k, m = term
    return (mono_degree(m), k, mono_sort_key(m))


def mono_sort_key(m: Mono):
    """Lexicographic on (xi exponents from the highest index down, tau generators descending, beta)."""
    xi, taus, beta = m
    return (tuple(reversed(xi)), bin(taus)[2:], beta)


def _xor(acc: set, terms) -> None:
    for t in terms:
        if t in acc:
            acc.remove(t)
        else:
            acc.add(t)


class DualSteenrod:
    """Generative arithmetic for one variant."""

    def __init__(self, variant: Variant | str, overrides: dict | None = None):
        self.variant = Variant.parse(variant) if isinstance(variant, str) else variant
        # seeded faults: generator name -> replacement coproduct (set of (k, m1, m2))
        self.overrides = dict(overrides or {})
        self._mul = lru_cache(maxsize=None)(self._mul_mono)
        self._delta_cache: dict[Mono, frozenset] = {}

    # -- products ---------------------------------------------------------
    def allowed(self, m: Mono) -> bool:
        if not self.variant.is_a1:
            return True
        xi, taus, _ = m
        return len(xi) <= 1 and all(e <= 1 for e in xi) and taus < 4

    def _mul_mono(self, a: Mono, b: Mono) -> frozenset:
        (xa, ta, ba), (xb, tb, bb) = a, b
        if ba and bb:
            return frozenset()
        common = ta & tb
        k = 0
        xi = _xi_add(xa, xb)
        if common:
            if self.variant.mod_tau:
                return frozenset()
            # tau_i^2 = tau * xi_{i+1}
            i = 0
            extra = []
            while common >> i:
                if common >> i & 1:
                    k += 1
                    extra.append(i + 1)
                i += 1
            bump = [0] * (max(extra) if extra else 0)
            for j in extra:
                bump[j - 1] += 1
            xi = _xi_add(xi, tuple(bump))
        m = (xi, ta ^ tb, ba | bb)
        if not self.allowed(m):
            return frozenset()
        return frozenset({(k, m)})

    def mul_mono(self, a: Mono, b: Mono) -> frozenset:
        return self._mul(a, b)

    def mul(self, x, y) -> frozenset:
        acc: set = set()
        for k1, a in x:
            for k2, b in y:
                _xor(acc, ((k1 + k2 + k, m) for k, m in self.mul_mono(a, b)))
        return frozenset(acc)

    # -- coproducts -------------------------------------------------------
    def gen_mono(self, name: str) -> Mono:
        if name == "beta":
            return ((), 0, 1)
        kind, i = re.fullmatch(r"(xi|tau)(\d+)", name).groups()
        i = int(i)
        if kind == "xi":
            if i < 1:
                raise ValueError("xi generators start at xi1")
            return (tuple([0] * (i - 1) + [1]), 0, 0)
        return ((), 1 << i, 0)

    def _xi_power(self, i: int, e: int) -> Mono:
        return (_strip([0] * (i - 1) + [e]), 0, 0) if i else ONE

    def delta_gen(self, name: str) -> frozenset:
        if name in self.overrides:
            return frozenset(self.overrides[name])
        if name == "beta":
            b = ((), 0, 1)
            return frozenset({(0, b, ONE), (0, ONE, b)})
        kind, n = re.fullmatch(r"(xi|tau)(\d+)", name).groups()
        n = int(n)
        acc: set = set()
        if kind == "xi":
            for k in range(n + 1):
                left = self._xi_power(n - k, 2**k)
                right = self._xi_power(k, 1)
                if self.allowed(left) and self.allowed(right):
                    _xor(acc, [(0, left, right)])
        else:
            acc.add((0, ((), 1 << n, 0), ONE))
            for k in range(n + 1):
                left = self._xi_power(n - k, 2**k)
                right = ((), 1 << k, 0)
                if self.allowed(left):
                    _xor(acc, [(0, left, right)])
        return frozenset(acc)

    def tensor_mul(self, x, y) -> frozenset:
        acc: set = set()
        for k1, a1, b1 in x:
            for k2, a2, b2 in y:
                for ka, a in self.mul_mono(a1, a2):
                    for kb, b in self.mul_mono(b1, b2):
                        _xor(acc, [(k1 + k2 + ka + kb, a, b)])
        return frozenset(acc)

    def delta_mono(self, m: Mono) -> frozenset:
        hit = self._delta_cache.get(m)
        if hit is not None:
            return hit
        if m == ONE:
            out = frozenset({(0, ONE, ONE)})
        else:
            name, rest = _split_off_generator(m)
            out = self.tensor_mul(self.delta_gen(name), self.delta_mono(rest))
        self._delta_cache[m] = out
        return out

    def delta(self, x) -> frozenset:
        acc: set = set()
        for k, m in x:
            _xor(acc, ((k + kk, a, b) for kk, a, b in self.delta_mono(m)))
        return frozenset(acc)

    # -- bases ------------------------------------------------------------
    def basis(self, top_max: int) -> list[Mono]:
        """F2[tau]-basis monomials (or F2-basis mod tau) of topological degree <= top_max."""
        out: list[Mono] = []
        xi_idx = [i for i in range(1, 64) if xi_degree(i)[0] <= top_max]
        tau_idx = [i for i in range(0, 64) if tau_gen_degree(i)[0] <= top_max]
        if self.variant.is_a1:
            xi_idx = xi_idx[:1]
            tau_idx = tau_idx[:2]

        def rec_xi(j, budget, acc):
            if j == len(xi_idx):
                yield tuple(acc), budget
                return
            d = xi_degree(xi_idx[j])[0]
            cap = budget // d
            if self.variant.is_a1:
                cap = min(cap, 1)
            for e in range(cap + 1):
                yield from rec_xi(j + 1, budget - e * d, acc + [e])

        for xi, budget in rec_xi(0, top_max, []):
            xi = _strip(xi)
            for mask in range(1 << len(tau_idx)):
                cost = sum(tau_gen_degree(tau_idx[b])[0] for b in range(len(tau_idx)) if mask >> b & 1)
                if cost > budget:
                    continue
                taus = 0
                for b in range(len(tau_idx)):
                    if mask >> b & 1:
                        taus |= 1 << tau_idx[b]
                for beta in ((0, 1) if self.variant.has_beta else (0,)):
                    if cost + beta <= budget:
                        out.append((xi, taus, beta))
        out.sort(key=lambda m: (mono_degree(m)[0], -mono_degree(m)[1], mono_sort_key(m)))
        return out

    def generator_names(self, top_max: int) -> list[str]:
        names = [f"xi{i}" for i in range(1, 64) if xi_degree(i)[0] <= top_max]
        names += [f"tau{i}" for i in range(64) if tau_gen_degree(i)[0] <= top_max]
        if self.variant.is_a1:
            names = [n for n in names if n in ("xi1", "tau0", "tau1")]
        if self.variant.has_beta and top_max >= 1:
            names.append("beta")
        return names


def _split_off_generator(m: Mono) -> tuple[str, Mono]:
    xi, taus, beta = m
    if beta:
        return "beta", (xi, taus, 0)
    if taus:
        i = (taus & -taus).bit_length() - 1
        return f"tau{i}", (xi, taus ^ (1 << i), 0)
    for i, e in enumerate(xi):
        if e:
            rest = list(xi)
            rest[i] -= 1
            return f"xi{i + 1}", (_strip(rest), 0, 0)
    raise ValueError("the unit has no generator factor")


_TOKEN = re.compile(r"(tau\d+|xi\d+|tau|beta)(?:\^(\d+))?")


def normal_form(expr: str, variant: Variant | str = Variant.DUAL_A_FULL) -> frozenset:
    """Normal form of a product of generators, e.g. ``"tau1^3"`` or ``"xi1*xi1"``.

    Each application of tau_i^2 -> tau xi_{i+1} removes two tau_i factors, so
    rewriting terminates, and the result does not depend on the order.
    """
    alg = DualSteenrod(variant)
    acc = frozenset({(0, ONE)})
    text = expr.replace("*", " ").strip()
    pos = 0
    for tok in text.split():
        mt = _TOKEN.fullmatch(tok)
        if not mt:
            raise ValueError(f"cannot parse factor {tok!r} at position {pos}")
        name, power = mt.group(1), int(mt.group(2) or 1)
        pos += 1
        for _ in range(power):
            if name == "tau":
                acc = frozenset((k + 1, m) for k, m in acc)
            else:
                acc = alg.mul(acc, {(0, alg.gen_mono(name))})
    return acc


# -- finite table form --------------------------------------------------------


@dataclass
class HopfSlice:
    """Structure constants of a bigraded Hopf algebra through a degree bound.

    ``product[(i, j)]`` and ``coproduct[i]`` are tuples of ``(k, index)`` and
    ``(k, index, index)``; ``k`` is the power of tau in the coefficient.
    ``tau_weight`` is the weight of the scalar tau: -1 on the homology side,
    +1 after dualizing.  Products whose degree exceeds the bound are absent.
    """

    variant: str
    degree_bound: int
    weight_window: tuple[int, int]
    labels: tuple[str, ...]
    degrees: tuple[tuple[int, int], ...]
    tau_ground: bool
    tau_weight: int
    product: dict
    coproduct: dict
    unit: int
    counit: frozenset
    generators: tuple[int, ...] = ()
    keys: tuple = field(default=(), repr=False)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis_in_degree(self, t: int, w: int | None = None) -> list[int]:
        return [i for i, (dt, dw) in enumerate(self.degrees) if dt == t and (w is None or dw == w)]

    def rank_in_degree(self, t: int) -> int:
        return sum(1 for dt, _ in self.degrees if dt == t)

    def mul(self, i: int, j: int) -> tuple:
        try:
            return self.product[(i, j)]
        except KeyError:
            raise ValueError(
                f"product {self.labels[i]} * {self.labels[j]} exceeds the degree bound {self.degree_bound}"
            ) from None

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "degree_bound": self.degree_bound,
            "weight_window": list(self.weight_window),
            "labels": list(self.labels),
            "degrees": [list(d) for d in self.degrees],
            "tau_ground": self.tau_ground,
            "tau_weight": self.tau_weight,
            "unit": self.unit,
            "counit": sorted(self.counit),
            "generators": list(self.generators),
            "product": [[i, j, [list(t) for t in v]] for (i, j), v in sorted(self.product.items())],
            "coproduct": [[i, [list(t) for t in v]] for i, v in sorted(self.coproduct.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HopfSlice":
        return cls(
            variant=data["variant"],
            degree_bound=data["degree_bound"],
            weight_window=tuple(data["weight_window"]),
            labels=tuple(data["labels"]),
            degrees=tuple(tuple(d) for d in data["degrees"]),
            tau_ground=data["tau_ground"],
            tau_weight=data["tau_weight"],
            product={(i, j): tuple(tuple(t) for t in v) for i, j, v in data["product"]},
            coproduct={i: tuple(tuple(t) for t in v) for i, v in data["coproduct"]},
            unit=data["unit"],
            counit=frozenset(data["counit"]),
            generators=tuple(data["generators"]),
        )


def build_slice(variant: Variant | str, degree_bound: int, overrides: dict | None = None) -> HopfSlice:
    alg = DualSteenrod(variant, overrides)
    basis = alg.basis(degree_bound)
    pos = {m: i for i, m in enumerate(basis)}
    degrees = tuple(mono_degree(m) for m in basis)
    product = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if degrees[i][0] + degrees[j][0] > degree_bound:
                continue
            product[(i, j)] = tuple(sorted((k, pos[m]) for k, m in alg.mul_mono(a, b)))
    coproduct = {}
    for i, m in enumerate(basis):
        coproduct[i] = tuple(sorted((k, pos[a], pos[b]) for k, a, b in alg.delta_mono(m)))
    gens = tuple(pos[alg.gen_mono(n)] for n in alg.generator_names(degree_bound))
    weights = [w for _, w in degrees]
    return HopfSlice(
        variant=alg.variant.value,
        degree_bound=degree_bound,
        weight_window=(min(weights), max(weights)),
        labels=tuple(mono_name(m) for m in basis),
        degrees=degrees,
        tau_ground=not alg.variant.mod_tau,
        tau_weight=-1,
        product=product,
        coproduct=coproduct,
        unit=pos[ONE],
        counit=frozenset({pos[ONE]}),
        generators=gens,
        keys=tuple(basis),
    )


def mod_tau(slice_: HopfSlice) -> HopfSlice:
    """Set tau = 0: drop every structure constant carrying a positive tau power."""
    if not slice_.tau_ground:
        raise ValueError("slice is already over F2")
    variant = {
        Variant.DUAL_A_FULL.value: Variant.DUAL_A_MOD_TAU.value,
        Variant.A1_DUAL.value: Variant.A1_DUAL_MOD_TAU.value,
    }.get(slice_.variant, slice_.variant + "/tau")
    return HopfSlice(
        variant=variant,
        degree_bound=slice_.degree_bound,
        weight_window=slice_.weight_window,
        labels=slice_.labels,
        degrees=slice_.degrees,
        tau_ground=False,
        tau_weight=slice_.tau_weight,
        product={key: tuple(t for t in v if t[0] == 0) for key, v in slice_.product.items()},
        coproduct={key: tuple(t for t in v if t[0] == 0) for key, v in slice_.coproduct.items()},
        unit=slice_.unit,
        counit=slice_.counit,
        generators=slice_.generators,
        keys=slice_.keys,
    )


def adjoin_beta_tau(slice_: HopfSlice) -> HopfSlice:
    """Free rank-two extension by an exterior primitive beta_tau of degree (1,-1)."""
    if slice_.variant != Variant.DUAL_A_MOD_TAU.value:
        raise ValueError("beta_tau is adjoined to the mod-tau dual Steenrod algebra only")
    return build_slice(Variant.DUAL_A_MOD_TAU_BETA, slice_.degree_bound)


def dualize_in_range(slice_: HopfSlice) -> HopfSlice:
    """Transpose product and coproduct: the graded dual through the same bound.

    In the dual, x* y* has coefficient tau^k on z* exactly when tau^k x (x) y
    occurs in the coproduct of z, and dually for the coproduct.  Dual basis
    elements keep the labels (starred) and degrees of their partners.
    """
    n = len(slice_)
    product: dict = {}
    for z, terms in slice_.coproduct.items():
        for k, a, b in terms:
            product.setdefault((a, b), []).append((k, z))
    coproduct: dict = {i: [] for i in range(n)}
    for (a, b), terms in slice_.product.items():
        for k, z in terms:
            coproduct[z].append((k, a, b))
    bound = slice_.degree_bound
    full_product = {}
    for i in range(n):
        for j in range(n):
            if slice_.degrees[i][0] + slice_.degrees[j][0] <= bound:
                full_product[(i, j)] = tuple(sorted(_reduce_mod2(product.get((i, j), []))))
    labels = tuple(_star(lbl) for lbl in slice_.labels)
    return HopfSlice(
        variant=f"dual({slice_.variant})" if not slice_.variant.startswith("dual(") else slice_.variant[5:-1],
        degree_bound=bound,
        weight_window=slice_.weight_window,
        labels=labels,
        degrees=slice_.degrees,
        tau_ground=slice_.tau_ground,
        tau_weight=-slice_.tau_weight,
        product=full_product,
        coproduct={i: tuple(sorted(_reduce_mod2(v))) for i, v in coproduct.items()},
        unit=slice_.unit,
        counit=slice_.counit,
        generators=(),
        keys=slice_.keys,
    )


def _star(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def _parity(terms: list) -> set:
    return {t for t, c in Counter(terms).items() if c & 1}


def _reduce_mod2(terms) -> set:
    acc: set = set()
    _xor(acc, terms)
    return acc


# -- axiom verification -------------------------------------------------------


@dataclass
class HopfReport:
    variant: str
    bound: int
    ok: bool
    checks: int
    failures: list[str]

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "bound": self.bound,
            "ok": self.ok,
            "checks": self.checks,
            "failures": self.failures[:20],
        }


def _degree_ok(s: HopfSlice, parts, target, k) -> bool:
    t = sum(s.degrees[p][0] for p in parts)
    w = sum(s.degrees[p][1] for p in parts)
    return t == s.degrees[target][0] and w == s.degrees[target][1] + k * s.tau_weight


def verify_hopf_axioms(
    slice_: HopfSlice,
    bound: int | None = None,
    all_pairs_bound: int | None = None,
    max_failures: int = 50,
) -> HopfReport:
    """Counit, coassociativity, degree preservation and multiplicativity of the coproduct.

    Multiplicativity Delta(ab) = Delta(a)Delta(b) is checked on every basis
    pair whose product lies within ``all_pairs_bound`` (default: the full
    bound) and, beyond that, on every generator times basis pair.  Products
    are also checked for associativity on generator triples and unitality.
    """
    s = slice_
    bound = s.degree_bound if bound is None else min(bound, s.degree_bound)
    pair_bound = bound if all_pairs_bound is None else min(all_pairs_bound, bound)
    checks = 0
    idx = [i for i in range(len(s)) if s.degrees[i][0] <= bound]

    found: list[tuple[int, int, str]] = []

    def fail(msg, degree):
        # failures are reported lowest degree first
        found.append((degree, len(found), msg))

    def lbl(i):
        return s.labels[i]

    eps = s.counit
    for i in idx:
        delta = s.coproduct[i]
        checks += 1
        for k, a, b in delta:
            if not _degree_ok(s, (a, b), i, -k):
                fail(f"degree: coproduct of {lbl(i)} has term {lbl(a)} (x) {lbl(b)} of the wrong degree", s.degrees[i][0])
                break
        left = _reduce_mod2((k, b) for k, a, b in delta if a in eps)
        right = _reduce_mod2((k, a) for k, a, b in delta if b in eps)
        if left != {(0, i)} or right != {(0, i)}:
            fail(f"counit fails at {lbl(i)}", s.degrees[i][0])
        lhs: set = set()
        for k, a, b in delta:
            _xor(lhs, ((k + kk, x, y, b) for kk, x, y in s.coproduct[a]))
        rhs: set = set()
        for k, a, b in delta:
            _xor(rhs, ((k + kk, a, x, y) for kk, x, y in s.coproduct[b]))
        if lhs != rhs:
            fail(f"coassociativity fails at {lbl(i)}", s.degrees[i][0])

    def delta_of(terms) -> set:
        out = []
        for k, z in terms:
            out.extend((k + kk, a, b) for kk, a, b in s.coproduct[z])
        return _parity(out)

    product = s.product

    def tensor_mul(x, y) -> set:
        out = []
        for k1, a1, b1 in x:
            for k2, a2, b2 in y:
                pa = product[(a1, a2)]
                if not pa:
                    continue
                pb = product[(b1, b2)]
                if not pb:
                    continue
                k12 = k1 + k2
                for ka, a in pa:
                    for kb, b in pb:
                        out.append((k12 + ka + kb, a, b))
        return _parity(out)

    # when the product is commutative the multiplicativity check is symmetric in (i, j)
    commutative = True
    for (i, j), v in product.items():
        if i < j and product[(j, i)] != v:
            commutative = False
    gens = set(s.generators)
    for i in idx:
        for j in idx:
            d = s.degrees[i][0] + s.degrees[j][0]
            if d > bound:
                continue
            if d > pair_bound and i not in gens and j not in gens:
                continue
            if commutative and j < i and (d <= pair_bound or j in gens):
                continue
            prod = product[(i, j)]
            checks += 1
            for k, z in prod:
                if not _degree_ok(s, (i, j), z, k):
                    fail(f"degree: {lbl(i)} * {lbl(j)} has a term {lbl(z)} of the wrong degree", d)
            if delta_of(prod) != tensor_mul(s.coproduct[i], s.coproduct[j]):
                fail(f"multiplicativity fails at ({lbl(i)}, {lbl(j)})", d)
    for i in idx:
        checks += 1
        if s.product.get((s.unit, i)) != ((0, i),) or s.product.get((i, s.unit)) != ((0, i),):
            fail(f"unit fails at {lbl(i)}", s.degrees[i][0])
    triple = sorted(gens) if gens else [i for i in idx if s.degrees[i][0] <= max(2, bound // 4)]
    for a in triple:
        for b in triple:
            for c in triple:
                if s.degrees[a][0] + s.degrees[b][0] + s.degrees[c][0] > bound:
                    continue
                checks += 1
                left: set = set()
                for k, ab in s.product[(a, b)]:
                    _xor(left, ((k + kk, z) for kk, z in s.product[(ab, c)]))
                right: set = set()
                for k, bc in s.product[(b, c)]:
                    _xor(right, ((k + kk, z) for kk, z in s.product[(a, bc)]))
                if left != right:
                    fail(f"associativity fails at ({lbl(a)}, {lbl(b)}, {lbl(c)})", s.degrees[a][0] + s.degrees[b][0] + s.degrees[c][0])
    failures = [msg for _, _, msg in sorted(found)[:max_failures]]
    return HopfReport(s.variant, bound, not found, checks, failures)


# -- A(1) ---------------------------------------------------------------------

A1_WORDS = ("", "1", "2", "12", "21", "121", "212", "1212")


def _word_degree(word: str) -> tuple[int, int]:
    # operations grading: Sq1 = (1,0), Sq2 = (2,1), scalar tau has weight +1
    return (sum(int(c) for c in word), word.count("2"))


def reduce_a1_word(word: str) -> tuple[int, str] | None:
    """Normal form of a word in Sq1, Sq2 as ``(tau power, basis word)`` or None for zero.

    Relations: Sq1 Sq1 = 0, Sq2 Sq2 = tau Sq1 Sq2 Sq1, Sq2 Sq1 Sq2 Sq1 =
    Sq1 Sq2 Sq1 Sq2; every word of length five or more vanishes.
    """
    k = 0
    while True:
        if "11" in word:
            return None
        if "22" in word:
            word = word.replace("22", "121", 1)
            k += 1
            continue
        if "2121" in word:
            word = word.replace("2121", "1212", 1)
            continue
        break
    if len(word) >= 5:
        return None
    return k, word


@dataclass(frozen=True)
class A1Algebra:
    """The operations side of A(1) over F2[tau] (or F2 when ``mod_tau``)."""

    mod_tau: bool = False
    words: tuple[str, ...] = A1_WORDS

    def degree(self, i: int) -> tuple[int, int]:
        return _word_degree(self.words[i])

    def mul(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        r = reduce_a1_word(self.words[i] + self.words[j])
        if r is None or (self.mod_tau and r[0]):
            return ()
        return ((r[0], self.words.index(r[1])),)

    def __len__(self) -> int:
        return len(self.words)


@dataclass
class A1Presentation:
    algebra: A1Algebra
    dual: HopfSlice
    operations_dual: HopfSlice
    word_images: dict
    report: HopfReport


def a1_presentation(mod_tau_: bool = False) -> A1Presentation:
    """The hard-coded A(1) table together with the dual quotient slice, cross-checked.

    Sq1 and Sq2 are identified with the duals of tau_0 and xi_1; every basis
    word is evaluated in the dual of the A(1) quotient coalgebra, and the
    table must agree with that algebra on all pairs.  Any disagreement
    raises with the failing triple.
    """
    variant = Variant.A1_DUAL_MOD_TAU if mod_tau_ else Variant.A1_DUAL
    dual = build_slice(variant, 6)
    report = verify_hopf_axioms(dual)
    if not report.ok:
        raise AssertionError(f"A(1) dual coalgebra fails its axioms: {report.first_failure}")
    ops = dualize_in_range(dual)
    algebra = A1Algebra(mod_tau_)
    sq = {"1": ops.index("tau0*"), "2": ops.index("xi1*")}

    def mult(x, y):
        acc: set = set()
        for k1, a in x:
            for k2, b in y:
                _xor(acc, ((k1 + k2 + k, z) for k, z in ops.product[(a, b)]))
        return frozenset(acc)

    images = {"": frozenset({(0, ops.unit)})}
    for w in algebra.words[1:]:
        x = images[""]
        for c in w:
            x = mult(x, {(0, sq[c])})
        images[w] = x
    # the images must be a basis: distinct leading generators mod tau
    leads = set()
    for w, x in images.items():
        untwisted = {z for k, z in x if k == 0}
        if not untwisted:
            raise AssertionError(f"word {w!r} vanishes mod tau in the dual")
        leads.add(frozenset(untwisted))
        if ops.degrees[next(iter(untwisted))] != _word_degree(w):
            raise AssertionError(f"word {w!r} lands in the wrong degree")
    if len(leads) != len(images):
        raise AssertionError("word images are linearly dependent mod tau")
    for i, u in enumerate(algebra.words):
        for j, v in enumerate(algebra.words):
            if ops.degrees[ops.unit][0] + _word_degree(u)[0] + _word_degree(v)[0] > 6:
                table = algebra.mul(i, j)
                if table:
                    raise AssertionError(f"({u!r}, {v!r}) -> nonzero above the top degree")
                continue
            table = algebra.mul(i, j)
            lhs: set = set()
            for k, z in table:
                _xor(lhs, ((k + kk, y) for kk, y in images[algebra.words[z]]))
            if frozenset(lhs) != mult(images[u], images[v]):
                raise AssertionError(f"A(1) table disagrees with the dual at ({u!r}, {v!r}, {u + v!r})")
    return A1Presentation(algebra, dual, ops, images, report)
