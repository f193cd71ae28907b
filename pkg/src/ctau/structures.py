"""Graded ring presentations, the beta_tau extensions, and quotients by a regular tau.

A presentation is a polynomial ring over the 2-adic integers (or F2) on
named generators with degrees (stem, weight), modulo monomial relations of
two shapes: rewrite rules ``m = rhs`` and annihilators ``c * m = 0``.  That
covers every ring in play here, e.g. Z2[tau, eta, a, b]/(2 eta, tau eta^3,
a eta, a^2 = 4 b).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .linalg.groups import FiniteAbelianGroup

Z2HAT = "Z2hat"
F2 = "F2"

Mono = tuple  # exponent vector aligned with the generator list
Poly = dict  # Mono -> int


class PresentationError(ValueError):
    pass


class TauTorsionError(PresentationError):
    pass


@dataclass(frozen=True)
class RingGenerator:
    name: str
    degree: tuple[int, int]
    exterior: bool = False


@dataclass(frozen=True)
class Relation:
    """``coefficient * lhs = rhs``; ``coefficient`` is 1 for rewrite rules."""

    lhs: Mono
    coefficient: int
    rhs: tuple  # sorted (mono, coeff) pairs

    @property
    def is_rewrite(self) -> bool:
        return self.coefficient == 1

    def rhs_poly(self) -> Poly:
        return dict(self.rhs)


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class GradedRingPresentation:
    coefficients: str
    generators: tuple[RingGenerator, ...]
    relations: tuple[Relation, ...] = ()
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.coefficients not in (Z2HAT, F2):
            raise PresentationError(f"unknown coefficient ring {self.coefficients!r}")
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise PresentationError("duplicate generator names")
        zero_stem = [g for g in self.generators if g.degree[0] == 0]
        if len(zero_stem) > 1 or any(g.degree[0] < 0 for g in self.generators):
            raise PresentationError("at most one generator of stem zero and none of negative stem")
        if zero_stem and zero_stem[0].degree[1] == 0:
            raise PresentationError("a stem-zero generator needs nonzero weight")
        rels = list(self.relations)
        for i, g in enumerate(self.generators):
            if g.exterior:
                m = tuple(2 if j == i else 0 for j in range(len(self.generators)))
                rels.append(Relation(m, 1, ()))
        self.relations = tuple(rels)
        for r in self.relations:
            d = self.degree(r.lhs)
            for m, c in r.rhs:
                if self.degree(m) != d:
                    raise PresentationError(f"relation {self.format_relation(r)} is not homogeneous")

    # -- construction from text -------------------------------------------------
    @classmethod
    def parse(cls, coefficients: str, generators, relations=(), name: str = "") -> "GradedRingPresentation":
        """``generators``: (name, (stem, weight)[, exterior]); ``relations``: strings like "a^2 = 4*b"."""
        gens = tuple(RingGenerator(g[0], tuple(g[1]), bool(g[2]) if len(g) > 2 else False) for g in generators)
        P = cls(coefficients, gens, (), name)
        rels = []
        for text in relations:
            left, _, right = text.partition("=")
            lp = P.parse_poly(left)
            if len(lp) != 1:
                raise PresentationError(f"left side of {text!r} must be a single term")
            (m, c), = lp.items()
            rp = P.parse_poly(right)
            if c != 1 and rp:
                raise PresentationError(f"{text!r}: annihilators must have zero right side")
            rels.append(Relation(m, abs(c), tuple(sorted(rp.items()))))
        return cls(coefficients, gens, tuple(rels), name)

    def parse_poly(self, text: str) -> Poly:
        text = text.strip().replace("-", "+-")
        out: Poly = {}
        for term in text.split("+"):
            term = term.strip()
            if not term or term == "0":
                continue
            coeff = 1
            mono = [0] * len(self.generators)
            for factor in term.split("*"):
                factor = factor.strip()
                if factor.lstrip("-").isdigit():
                    coeff *= int(factor)
                    continue
                if factor.startswith("-"):
                    coeff = -coeff
                    factor = factor[1:]
                if factor in self._index:
                    mono[self._index[factor]] += 1
                    continue
                base, _, exp = factor.rpartition("^")
                if base in self._index and exp.isdigit():
                    mono[self._index[base]] += int(exp)
                    continue
                raise PresentationError(f"unknown factor {factor!r}")
            m = tuple(mono)
            out[m] = out.get(m, 0) + coeff
        return {m: c for m, c in out.items() if c}

    def mono(self, text: str) -> Mono:
        p = self.parse_poly(text)
        if len(p) != 1:
            raise PresentationError(f"{text!r} is not a monomial")
        return next(iter(p))

    # -- grading ----------------------------------------------------------------
    def degree(self, m: Mono) -> tuple[int, int]:
        s = sum(e * g.degree[0] for e, g in zip(m, self.generators))
        w = sum(e * g.degree[1] for e, g in zip(m, self.generators))
        return (s, w)

    def monomials(self, stem: int, weight: int):
        """All monomials (normal or not) of the given bidegree."""
        pos = [i for i, g in enumerate(self.generators) if g.degree[0] > 0]
        zero = [i for i, g in enumerate(self.generators) if g.degree[0] == 0]
        n = len(self.generators)

        def rec(k, budget, acc):
            if k == len(pos):
                if budget:
                    return
                m = list(acc)
                w = sum(m[i] * self.generators[i].degree[1] for i in range(n))
                if zero:
                    z = zero[0]
                    dz = self.generators[z].degree[1]
                    q, r = divmod(weight - w, dz)
                    if r or q < 0:
                        return
                    m[z] = q
                elif w != weight:
                    return
                yield tuple(m)
                return
            i = pos[k]
            d = self.generators[i].degree[0]
            for e in range(budget // d + 1):
                acc[i] = e
                yield from rec(k + 1, budget - e * d, acc)
            acc[i] = 0

        yield from rec(0, stem, [0] * n)

    # -- arithmetic ---------------------------------------------------------------
    def order(self, m: Mono) -> int | None:
        """Additive order of a normal monomial: None for infinite, 1 for zero."""
        if self._rewrite(m) is not None:
            raise PresentationError("order is defined on normal monomials")
        mod = 2 if self.coefficients == F2 else 0
        for r in self.relations:
            if _divides(r.lhs, m):
                if r.is_rewrite and not r.rhs:
                    return 1
                if not r.is_rewrite:
                    mod = r.coefficient if mod == 0 else _gcd(mod, r.coefficient)
        return mod or None

    def _rewrite(self, m: Mono):
        for r in self.relations:
            if r.is_rewrite and _divides(r.lhs, m):
                return r
        return None

    def normal_form(self, p: Poly) -> Poly:
        todo = dict(p)
        out: Poly = {}
        steps = 0
        while todo:
            m, c = todo.popitem()
            steps += 1
            if steps > 100000:
                raise PresentationError("rewriting does not terminate")
            r = self._rewrite(m)
            if r is None:
                out[m] = out.get(m, 0) + c
                continue
            q = _sub(m, r.lhs)
            for m2, c2 in r.rhs:
                k = _add(m2, q)
                todo[k] = todo.get(k, 0) + c * c2
                if not todo[k]:
                    del todo[k]
        res = {}
        for m, c in out.items():
            o = self.order(m)
            c = c % o if o else c
            if c:
                res[m] = c
        return res

    def mul(self, p: Poly, q: Poly) -> Poly:
        acc: Poly = {}
        for a, x in p.items():
            for b, y in q.items():
                m = _add(a, b)
                acc[m] = acc.get(m, 0) + x * y
        return self.normal_form({m: c for m, c in acc.items() if c})

    def one(self) -> Poly:
        return {tuple(0 for _ in self.generators): 1}

    def gen(self, name: str) -> Poly:
        return {self.mono(name): 1}

    # -- additive structure ---------------------------------------------------------
    def basis(self, stem: int, weight: int) -> list[tuple[Mono, int | None]]:
        out = []
        for m in self.monomials(stem, weight):
            if self._rewrite(m) is not None:
                continue
            o = self.order(m)
            if o != 1:
                out.append((m, o))
        return sorted(out)

    def group(self, stem: int, weight: int) -> FiniteAbelianGroup:
        free = 0
        torsion = []
        for _, o in self.basis(stem, weight):
            if o is None:
                free += 1
            else:
                torsion.append(o)
        return FiniteAbelianGroup.from_invariant_factors(torsion, free_rank=free) if torsion else FiniteAbelianGroup(free, ())

    def rank(self, stem: int, weight: int) -> int:
        return len(self.basis(stem, weight))

    def weight_window(self, stem: int, tau_depth: int = 4) -> range:
        """Weights of monomials in this stem, allowing up to ``tau_depth`` powers of a stem-zero generator."""
        lo = hi = 0
        for g in self.generators:
            if g.degree[0] > 0:
                k = stem // g.degree[0]
                lo = min(lo, k * g.degree[1])
                hi = max(hi, k * g.degree[1])
            elif g.degree[0] == 0:
                lo = min(lo, lo + tau_depth * g.degree[1])
                hi = max(hi, hi + tau_depth * g.degree[1])
        return range(lo, hi + 1)

    # -- text ------------------------------------------------------------------------
    def format_mono(self, m: Mono) -> str:
        parts = [g.name if e == 1 else f"{g.name}^{e}" for g, e in zip(self.generators, m) if e]
        return "*".join(parts) or "1"

    def format_poly(self, p: Poly) -> str:
        if not p:
            return "0"
        terms = []
        for m in sorted(p):
            c = p[m]
            body = self.format_mono(m)
            terms.append(body if c == 1 else f"{c}*{body}" if body != "1" else str(c))
        return " + ".join(terms)

    def format_relation(self, r: Relation) -> str:
        lhs = self.format_mono(r.lhs)
        if r.coefficient != 1:
            lhs = f"{r.coefficient}*{lhs}"
        return f"{lhs} = {self.format_poly(r.rhs_poly())}"

    def describe(self) -> str:
        ring = "Z2hat" if self.coefficients == Z2HAT else "F2"
        gens = ", ".join(g.name for g in self.generators if not g.exterior)
        ext = [g.name for g in self.generators if g.exterior]
        rels = [self.format_relation(r) for r in self.relations if not self.generators_exterior_rule(r)]
        text = f"{ring}[{gens}]"
        if ext:
            text += f" (x) E({', '.join(ext)})"
        if rels:
            text += " / (" + ", ".join(rels) + ")"
        return text

    def generators_exterior_rule(self, r: Relation) -> bool:
        if not r.is_rewrite or r.rhs or sum(r.lhs) != 2:
            return False
        i = next(j for j, e in enumerate(r.lhs) if e)
        return r.lhs[i] == 2 and self.generators[i].exterior

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "coefficients": self.coefficients,
            "generators": [[g.name, list(g.degree), g.exterior] for g in self.generators],
            "relations": [self.format_relation(r) for r in self.relations if not self.generators_exterior_rule(r)],
        }

    @classmethod
    def from_json(cls, d: dict) -> "GradedRingPresentation":
        return cls.parse(d["coefficients"], [tuple(g) for g in d["generators"]], d["relations"], d.get("name", ""))

    def same_as(self, other: "GradedRingPresentation") -> bool:
        return self.to_json() | {"name": ""} == other.to_json() | {"name": ""}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# -- concrete presentations ---------------------------------------------------------


def pi_kgl() -> GradedRingPresentation:
    return GradedRingPresentation.parse(Z2HAT, [("tau", (0, -1)), ("v1", (2, 1))], (), "pi(kgl)")


def pi_kq() -> GradedRingPresentation:
    return GradedRingPresentation.parse(
        Z2HAT,
        [("tau", (0, -1)), ("eta", (1, 1)), ("a", (4, 2)), ("b", (8, 4))],
        ["2*eta = 0", "tau*eta^3 = 0", "a*eta = 0", "a^2 = 4*b"],
        "pi(kq)",
    )


def pi_kq_ctau() -> GradedRingPresentation:
    return GradedRingPresentation.parse(Z2HAT, [("eta", (1, 1)), ("v1^2", (4, 2))], ["2*eta = 0"], "pi(kq Ctau)")


def pi_kgl_ctau() -> GradedRingPresentation:
    return GradedRingPresentation.parse(Z2HAT, [("v1", (2, 1))], (), "pi(kgl Ctau)")


def _homology_generators(stem_max: int, kq: bool):
    gens = [("tau", (0, -1))]
    i = 1
    while 2 ** (i + 1) - 2 <= stem_max:
        d = (2 ** (i + 1) - 2, 2**i - 1)
        if i == 1 and kq:
            if 2 * d[0] <= stem_max:
                gens.append(("xi1^2", (2 * d[0], 2 * d[1])))
        else:
            gens.append((f"xi{i}", d))
        i += 1
    rels = []
    i = 2
    while 2 ** (i + 1) - 1 <= stem_max:
        gens.append((f"tau{i}", (2 ** (i + 1) - 1, 2**i - 1)))
        if 2 * (2 ** (i + 1) - 1) <= stem_max:
            rels.append(f"tau{i}^2 = tau*xi{i + 1}")
        i += 1
    return gens, rels


def homology_kq(stem_max: int = 30) -> GradedRingPresentation:
    """F2[tau][xi1^2, xi2, ...][tau2, tau3, ...]/(tau_i^2 = tau xi_{i+1}) through ``stem_max``."""
    gens, rels = _homology_generators(stem_max, kq=True)
    return GradedRingPresentation.parse(F2, gens, rels, "H(kq)")


def homology_kgl(stem_max: int = 30) -> GradedRingPresentation:
    gens, rels = _homology_generators(stem_max, kq=False)
    return GradedRingPresentation.parse(F2, gens, rels, "H(kgl)")


def homology_sphere() -> GradedRingPresentation:
    return GradedRingPresentation.parse(F2, [("tau", (0, -1))], (), "H(S)")


# -- quotients by tau -------------------------------------------------------------------


def tau_torsion_witness(P: GradedRingPresentation, stem_max: int, tau: str = "tau"):
    """A normal monomial m in range whose tau-multiple has smaller order, or None."""
    if tau not in P._index:
        raise PresentationError(f"no generator named {tau!r}")
    t = P.mono(tau)
    for stem in range(0, stem_max + 1):
        for w in P.weight_window(stem):
            for m, o in P.basis(stem, w):
                img = P.normal_form({_add(m, t): 1})
                if len(img) != 1:
                    return m
                (m2, c), = img.items()
                if c % 2 == 0 and P.coefficients == Z2HAT and (o is None or c % o):
                    return m
                if P.order(m2) != o:
                    return m
    return None


def tau_free_homotopy_quotient(P: GradedRingPresentation, stem_max: int = 16, tau: str = "tau") -> GradedRingPresentation:
    """pi(X smash Ctau) = pi(X)/tau when tau is injective; raises on tau-torsion."""
    witness = tau_torsion_witness(P, stem_max, tau)
    if witness is not None:
        raise TauTorsionError(
            f"tau is not injective ({P.format_mono(witness)} is tau-torsion); use tau_les_assemble instead"
        )
    return _set_tau_zero(P, tau, f"{P.name}/{tau}" if P.name else "")


def _set_tau_zero(P: GradedRingPresentation, tau: str, name: str) -> GradedRingPresentation:
    ti = P._index[tau]
    gens = [g for i, g in enumerate(P.generators) if i != ti]

    def drop(m):
        return tuple(e for i, e in enumerate(m) if i != ti)

    rels = []
    for r in P.relations:
        if r.lhs[ti] or P.generators_exterior_rule(r):
            continue
        rhs = tuple(sorted((drop(m), c) for m, c in r.rhs if not m[ti]))
        rels.append(Relation(drop(r.lhs), r.coefficient, rhs))
    return GradedRingPresentation(P.coefficients, tuple(gens), tuple(rels), name)


def adjoin_polynomial_tau(P: GradedRingPresentation, degree=(0, -1), tau: str = "tau") -> GradedRingPresentation:
    gens = (RingGenerator(tau, tuple(degree)),) + P.generators
    rels = tuple(
        Relation((0,) + r.lhs, r.coefficient, tuple(((0,) + m, c) for m, c in r.rhs))
        for r in P.relations
        if not P.generators_exterior_rule(r)
    )
    return GradedRingPresentation(P.coefficients, gens, rels, f"{P.name}[{tau}]")


def round_trip_ranks_agree(P: GradedRingPresentation, stem_max: int, tau: str = "tau") -> bool:
    Q = adjoin_polynomial_tau(tau_free_homotopy_quotient(P, stem_max, tau), P.generators[P._index[tau]].degree, tau)
    for stem in range(stem_max + 1):
        for w in sorted(set(P.weight_window(stem)) | set(Q.weight_window(stem))):
            if P.group(stem, w) != Q.group(stem, w):
                return False
    return True


@dataclass(frozen=True)
class CohomologyQuotient:
    presentation: GradedRingPresentation
    shift: tuple[int, int]

    def rank(self, a: int, b: int) -> int:
        return self.presentation.rank(a - self.shift[0], b - self.shift[1])


def tau_free_cohomology_quotient(P: GradedRingPresentation, stem_max: int = 16, tau: str = "tau") -> CohomologyQuotient:
    """H(X smash Ctau) = H(Sigma^{1,-1} X)/tau when tau is injective on H(X)."""
    witness = tau_torsion_witness(P, stem_max, tau)
    if witness is not None:
        raise TauTorsionError(
            f"tau is not injective on cohomology ({P.format_mono(witness)} is tau-torsion); the quotient lemma does not apply"
        )
    return CohomologyQuotient(_set_tau_zero(P, tau, f"{P.name}/{tau}"), (1, -1))


@dataclass(frozen=True)
class TauGradedModule:
    """A graded F2[tau]-module by summands: ``free`` degrees and ``torsion`` (degree, order)."""

    free: tuple = ()
    torsion: tuple = ()
    tau_degree: tuple[int, int] = (0, 1)


def cofiber_of_tau_cohomology(M: TauGradedModule) -> list[tuple[int, int]]:
    """Degrees of an F2-basis of H(X smash Ctau) from the long exact sequence of tau.

    Cokernel part: each summand generator at d gives d + (1, -1).  Kernel
    part: a torsion summand of order e at d gives tau^(e-1) x at d + (e-1) |tau|.
    """
    out = []
    for d in M.free:
        out.append((d[0] + 1, d[1] - 1))
    for d, e in M.torsion:
        out.append((d[0] + 1, d[1] - 1))
        out.append((d[0] + (e - 1) * M.tau_degree[0], d[1] + (e - 1) * M.tau_degree[1]))
    return sorted(out)


def hct_cohomology(M: TauGradedModule) -> list[tuple[int, int]]:
    """H Ctau-cohomology of X, i.e. H^{**}(X smash D Ctau) with D Ctau = Sigma^{-1,1} Ctau."""
    return sorted((a - 1, b + 1) for a, b in cofiber_of_tau_cohomology(M))


# -- beta_tau extensions ------------------------------------------------------------


class ExtensionVariant(str, Enum):
    SMASH_SQUARE = "SmashSquare"
    ENDOMORPHISM = "Endomorphism"


@dataclass
class BetaTauExtension:
    """R[beta]/beta^2 with the SmashSquare or Endomorphism multiplication.

    Elements are pairs ``(x, y)`` of polynomials meaning x + beta y.
    """

    base: GradedRingPresentation
    variant: ExtensionVariant
    D: object = None  # callable Mono -> Poly (Endomorphism only)
    stem_range: tuple[int, int] = (0, 8)

    @property
    def beta_degree(self) -> tuple[int, int]:
        return (1, -1) if self.variant == ExtensionVariant.SMASH_SQUARE else (-1, 1)

    def D_poly(self, p: Poly) -> Poly:
        if self.D is None:
            return {}
        acc: Poly = {}
        for m, c in p.items():
            for m2, c2 in self.D(m).items():
                acc[m2] = acc.get(m2, 0) + c * c2
        return self.base.normal_form({m: c for m, c in acc.items() if c})

    def _sign(self, m: Mono) -> int:
        return -1 if self.base.degree(m)[0] % 2 else 1

    def mul(self, x, y):
        R = self.base
        x0, x1 = x
        y0, y1 = y
        if self.variant == ExtensionVariant.SMASH_SQUARE:
            return (R.mul(x0, y0), _padd(R, R.mul(x1, y0), R.mul(x0, y1)))
        # alpha o alpha' = alpha alpha'; alpha o beta alpha' = (-1)^|alpha| beta alpha alpha' + D(alpha) alpha';
        # beta alpha o alpha' = beta alpha alpha'; beta alpha o beta alpha' = beta D(alpha) alpha'
        first = R.mul(x0, y0)
        beta = R.mul(x1, y0)
        for m, c in x0.items():
            a = {m: c}
            beta = _padd(R, beta, _pscale(R, R.mul(a, y1), self._sign(m)))
            first = _padd(R, first, R.mul(self.D_poly(a), y1))
        beta = _padd(R, beta, R.mul(self.D_poly(x1), y1))
        return (first, beta)

    def degree(self, x) -> set:
        R = self.base
        out = {R.degree(m) for m in x[0]}
        b = self.beta_degree
        out |= {(R.degree(m)[0] + b[0], R.degree(m)[1] + b[1]) for m in x[1]}
        return out

    def beta(self):
        return ({}, self.base.one())

    def embed(self, p: Poly):
        return (p, {})


def _padd(R, p, q):
    acc = dict(p)
    for m, c in q.items():
        acc[m] = acc.get(m, 0) + c
    return R.normal_form({m: c for m, c in acc.items() if c})


def _pscale(R, p, k):
    return R.normal_form({m: c * k for m, c in p.items()})


def _base_basis(R: GradedRingPresentation, stem_range) -> list[Mono]:
    out = []
    for stem in range(stem_range[0], stem_range[1] + 1):
        for w in R.weight_window(stem):
            out.extend(m for m, _ in R.basis(stem, w))
    return sorted(set(out))


def build_smash_square(R: GradedRingPresentation, stem_range=(0, 8)) -> BetaTauExtension:
    return BetaTauExtension(R, ExtensionVariant.SMASH_SQUARE, None, stem_range)


def build_endomorphism(R: GradedRingPresentation, D, stem_range=(0, 8)) -> BetaTauExtension:
    """Validate that D has degree (-1, 1) and D o D = 0 on the basis in range."""
    ext = BetaTauExtension(R, ExtensionVariant.ENDOMORPHISM, D, stem_range)
    for m in _base_basis(R, stem_range):
        d = R.degree(m)
        img = ext.D_poly({m: 1})
        for m2 in img:
            if R.degree(m2) != (d[0] - 1, d[1] + 1):
                raise PresentationError(f"D({R.format_mono(m)}) has the wrong degree")
        if ext.D_poly(img):
            raise PresentationError(f"D o D != 0 on {R.format_mono(m)}")
    return ext


@dataclass
class CoherenceReport:
    variant: str
    ok: bool
    checks: dict
    failures: list

    def to_json(self) -> dict:
        return {"variant": self.variant, "ok": self.ok, "checks": self.checks, "failures": self.failures}


def _elem_eq(R, x, y) -> bool:
    return R.normal_form(x[0]) == R.normal_form(y[0]) and R.normal_form(x[1]) == R.normal_form(y[1])


def _elem_sub(R, x, y):
    return (_padd(R, x[0], _pscale(R, y[0], -1)), _padd(R, x[1], _pscale(R, y[1], -1)))


def check_table_coherence(ext: BetaTauExtension, stem_range=None) -> CoherenceReport:
    R = ext.base
    rng = stem_range or ext.stem_range
    base = _base_basis(R, rng)
    elems = [({m: 1}, {}) for m in base] + [({}, {m: 1}) for m in base]
    one = (R.one(), {})
    beta = ext.beta()
    checks = {}
    failures = []

    def fail(name, detail):
        failures.append({"check": name, "detail": detail})

    def show(x):
        return f"{R.format_poly(x[0])} + beta*({R.format_poly(x[1])})"

    ok = True
    for x in elems:
        for y in elems:
            z = ext.mul(x, y)
            if len(ext.degree(z)) > 1:
                ok = False
                fail("degree", f"{show(x)} * {show(y)}")
            elif ext.degree(z):
                dx, dy = next(iter(ext.degree(x))), next(iter(ext.degree(y)))
                if ext.degree(z) != {(dx[0] + dy[0], dx[1] + dy[1])}:
                    ok = False
                    fail("degree", f"{show(x)} * {show(y)}")
    checks["degree_additive"] = ok

    ok = all(_elem_eq(R, ext.mul(one, x), x) and _elem_eq(R, ext.mul(x, one), x) for x in elems)
    checks["unital"] = ok

    ok = True
    for x in elems:
        for y in elems:
            for z in elems[:8]:
                s = (_padd(R, x[0], z[0]), _padd(R, x[1], z[1]))
                lhs = ext.mul(s, y)
                rhs_ = ext.mul(x, y)
                rhs2 = ext.mul(z, y)
                if not _elem_eq(R, lhs, (_padd(R, rhs_[0], rhs2[0]), _padd(R, rhs_[1], rhs2[1]))):
                    ok = False
    checks["bilinear"] = ok

    checks["beta_squared_zero"] = _elem_eq(R, ext.mul(beta, beta), ({}, {}))

    ok = True
    for m in base:
        a = ({m: 1}, {})
        left = ext.mul(a, beta)
        right = ext.mul(beta, a)
        sign = ext._sign(m) if ext.variant == ExtensionVariant.ENDOMORPHISM else 1
        comm = _elem_sub(R, left, (_pscale(R, right[0], sign), _pscale(R, right[1], sign)))
        want = (ext.D_poly({m: 1}), {})
        if not _elem_eq(R, comm, want):
            ok = False
            fail("commutator", f"alpha = {R.format_mono(m)}: got {show(comm)}")
    checks["commutator_identity"] = ok

    ok = True
    for x in elems:
        for y in elems:
            for z in elems:
                l = ext.mul(ext.mul(x, y), z)
                r = ext.mul(x, ext.mul(y, z))
                if not _elem_eq(R, l, r):
                    ok = False
                    fail("associativity", f"({show(x)}, {show(y)}, {show(z)}): defect {show(_elem_sub(R, l, r))}")
    checks["associative"] = ok

    if ext.variant == ExtensionVariant.SMASH_SQUARE:
        ok = True
        for x in elems:
            for y in elems:
                if not _elem_eq(R, ext.mul(x, y), ext.mul(y, x)):
                    ok = False
                    fail("commutativity", f"{show(x)}, {show(y)}")
        checks["commutative"] = ok
    required = [k for k in checks if not (k == "associative" and ext.variant == ExtensionVariant.ENDOMORPHISM)]
    return CoherenceReport(ext.variant.value, all(checks[k] for k in required), checks, failures)

