"""Obstruction bidegrees for A-infinity / E-infinity structures and their audit.

Every obstruction group is reduced to a homotopy group of Ctau (or of the
mod-2 Moore object over Ctau) or an endomorphism group of Ctau at an explicit
bidegree; the audit then asks the region predicates whether that group is
forced to vanish.  ``symbolic_audit`` proves the same verdict for the whole
unbounded parameter family by Fourier-Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

from .bidegree import (
    Bidegree,
    RegionVerdict,
    ct_endo_region_zero,
    ct_pi_region_zero,
    moore_pi_region_zero,
)
from .linalg.groups import FiniteAbelianGroup, extensions


class Kind(str, Enum):
    AINF_EXIST = "AinfExist"
    AINF_UNIQUE = "AinfUnique"
    EINF_EXIST = "EinfExist"
    EINF_UNIQUE = "EinfUnique"
    MOORE_AINF = "MooreAinf"
    MOORE_EINF = "MooreEinf"

    @classmethod
    def parse(cls, text: str) -> "Kind":
        key = text.replace("-", "").replace("_", "").lower()
        for k in cls:
            if k.value.lower() == key:
                return k
        raise ValueError(f"unknown obstruction kind {text!r}")


EXISTENCE, UNIQUENESS = "existence", "uniqueness"


@dataclass(frozen=True)
class WedgeDecomposition:
    summands: tuple[tuple[Bidegree, int], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.summands)


def smash_power_decomposition(n: int) -> WedgeDecomposition:
    """Ctau^n splits as a wedge of C(n-1, i) copies of Sigma^{i,-i} Ctau."""
    if n < 2:
        raise ValueError(f"smash power needs n >= 2 (got {n})")
    return WedgeDecomposition(
        tuple((Bidegree.motivic(i, -i), comb(n - 1, i)) for i in range(n))
    )


# both are pure and called with heavily repeated arguments in the audits
_motivic = lru_cache(maxsize=None)(Bidegree.motivic)
_comb = lru_cache(maxsize=None)(comb)


def einfty_obstruction_bidegrees(n: int, kind: str = EXISTENCE) -> list[tuple[int, int, Bidegree, int]]:
    """(m, i, bidegree, multiplicity) of the endomorphism groups holding E-infinity obstructions."""
    if n < 4:
        raise ValueError(f"E-infinity obstructions start at n = 4 (got {n})")
    shift = _shift(kind, 3, 2)
    return [
        (m, i, _motivic(n - shift + i, -i), _comb(m - 1, i))
        for m in range(2, n + 1)
        for i in range(m)
    ]


def ainfty_obstruction_bidegree(n: int, kind: str = EXISTENCE) -> Bidegree:
    if n < 3:
        raise ValueError(f"A-infinity obstructions start at n = 3 (got {n})")
    return _motivic(2 * n - _shift(kind, 3, 2), -n)


def moore_ainfty_obstruction_bidegrees(n: int, kind: str = EXISTENCE) -> list[tuple[int, Bidegree, int]]:
    """(i, bidegree, multiplicity) for the Moore object; groups pi_{2n-3+i,-i}."""
    if n < 3:
        raise ValueError(f"A-infinity obstructions start at n = 3 (got {n})")
    shift = _shift(kind, 3, 2)
    return [(i, _motivic(2 * n - shift + i, -i), _comb(n, i)) for i in range(n + 1)]


def moore_einfty_obstruction_bidegrees(n: int, kind: str = EXISTENCE) -> list[tuple[int, int, Bidegree, int]]:
    """(m, i, bidegree, multiplicity) for the Moore object.

    The m-fold smash power is replaced by that of the unit cofiber
    Sigma^{1,0} Ctau, which after the Ctau splitting and the free-forget
    adjunction leaves the groups pi_{n-3+m+i,-i}.
    """
    if n < 4:
        raise ValueError(f"E-infinity obstructions start at n = 4 (got {n})")
    shift = _shift(kind, 3, 2)
    return [
        (m, i, _motivic(n - shift + m + i, -i), _comb(m - 1, i))
        for m in range(2, n + 1)
        for i in range(m)
    ]


def _shift(kind: str, exist: int, unique: int) -> int:
    if kind == EXISTENCE:
        return exist
    if kind == UNIQUENESS:
        return unique
    raise ValueError(f"kind must be {EXISTENCE!r} or {UNIQUENESS!r}, got {kind!r}")


@dataclass(frozen=True)
class ObstructionEntry:
    n: int
    m: int | None
    i: int | None
    bidegree: Bidegree
    multiplicity: int
    verdict: RegionVerdict
    role: str = EXISTENCE

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "i": self.i,
            "role": self.role,
            "bidegree": list(self.bidegree.as_tuple()),
            "multiplicity": self.multiplicity,
            "verdict": self.verdict.to_json(),
        }


@dataclass(frozen=True)
class ObstructionReport:
    kind: Kind
    entries: tuple[ObstructionEntry, ...]

    @property
    def all_zero(self) -> bool:
        return all(e.verdict.is_provably_zero for e in self.entries)

    def failures(self) -> list[ObstructionEntry]:
        return [e for e in self.entries if not e.verdict.is_provably_zero]

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "all_zero": self.all_zero,
            "count": len(self.entries),
            "entries": [e.to_json() for e in self.entries],
        }


# bidegrees repeat across m and n, so verdicts are memoized
_pi_zero = lru_cache(maxsize=None)(ct_pi_region_zero)
_endo_zero = lru_cache(maxsize=None)(ct_endo_region_zero)
_moore_zero = lru_cache(maxsize=None)(moore_pi_region_zero)


def _enumerate(kind: Kind, n: int):
    if kind in (Kind.AINF_EXIST, Kind.AINF_UNIQUE):
        role = EXISTENCE if kind is Kind.AINF_EXIST else UNIQUENESS
        b = ainfty_obstruction_bidegree(n, role)
        yield ObstructionEntry(n, None, None, b, 1, _pi_zero(*b.as_tuple()), role)
    elif kind in (Kind.EINF_EXIST, Kind.EINF_UNIQUE):
        role = EXISTENCE if kind is Kind.EINF_EXIST else UNIQUENESS
        for m, i, b, mult in einfty_obstruction_bidegrees(n, role):
            yield ObstructionEntry(n, m, i, b, mult, _endo_zero(*b.as_tuple()), role)
    elif kind is Kind.MOORE_AINF:
        for role in (EXISTENCE, UNIQUENESS):
            for i, b, mult in moore_ainfty_obstruction_bidegrees(n, role):
                yield ObstructionEntry(n, None, i, b, mult, _moore_zero(*b.as_tuple()), role)
    else:
        for role in (EXISTENCE, UNIQUENESS):
            for m, i, b, mult in moore_einfty_obstruction_bidegrees(n, role):
                yield ObstructionEntry(n, m, i, b, mult, _moore_zero(*b.as_tuple()), role)


def min_n(kind: Kind) -> int:
    return 3 if kind in (Kind.AINF_EXIST, Kind.AINF_UNIQUE, Kind.MOORE_AINF) else 4


def audit(kind: Kind | str, n_max: int) -> ObstructionReport:
    kind = kind if isinstance(kind, Kind) else Kind.parse(kind)
    lo = min_n(kind)
    if n_max < lo:
        raise ValueError(f"{kind.value} audit needs n_max >= {lo} (got {n_max})")
    entries = [e for n in range(lo, n_max + 1) for e in _enumerate(kind, n)]
    entries.sort(key=lambda e: (e.n, e.m or 0, e.i or 0, e.role))
    return ObstructionReport(kind, tuple(entries))


# -- symbolic certificates --------------------------------------------------

# A linear form is a dict from variable name (or "" for the constant) to Fraction.


def _lf(**coeffs) -> dict:
    return {k if k != "c" else "": Fraction(v) for k, v in coeffs.items() if v}


def _fmt(form: dict) -> str:
    parts = []
    for var in sorted(k for k in form if k):
        c = form[var]
        coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
        parts.append(f"{coef}{var}")
    c = form.get("", Fraction(0))
    if c or not parts:
        parts.append(str(c))
    return " + ".join(parts).replace("+ -", "- ")


def _combine(a: dict, ca: Fraction, b: dict, cb: Fraction) -> dict:
    out = {}
    for k in set(a) | set(b):
        v = ca * a.get(k, 0) + cb * b.get(k, 0)
        if v:
            out[k] = v
    return out


def _sup(objective: dict, constraints: list[dict], variables: list[str], log: list[str]):
    """Supremum of ``objective`` subject to ``form >= 0`` for each constraint.

    Fourier-Motzkin elimination with an auxiliary variable z <= objective.
    Returns a Fraction, or None when unbounded above.  Each combination step
    is appended to ``log``.
    """
    rows = [dict(c) for c in constraints]
    rows.append(_combine(objective, Fraction(1), {"z": Fraction(1)}, Fraction(-1)))
    for var in variables:
        pos = [r for r in rows if r.get(var, 0) > 0]
        neg = [r for r in rows if r.get(var, 0) < 0]
        keep = [r for r in rows if not r.get(var, 0)]
        for p in pos:
            for q in neg:
                new = _combine(p, -q[var], q, p[var])
                new.pop(var, None)
                if any(k for k in new) or new.get("", 0) < 0:
                    keep.append(new)
                    log.append(f"eliminate {var}: {_fmt(new)} >= 0")
        rows = keep
    bounds = []
    for r in rows:
        z = r.get("z", 0)
        if z < 0:
            bounds.append(r.get("", Fraction(0)) / -z)
    return min(bounds) if bounds else None


@dataclass
class Certificate:
    kind: Kind
    ok: bool
    family: str
    steps: list[str] = field(default_factory=list)
    counterexample: tuple | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "ok": self.ok,
            "family": self.family,
            "steps": list(self.steps),
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


def _families(kind: Kind):
    """(description, s form, w form, constraint forms, variables, predicate)."""
    ge = lambda **k: _lf(**k)  # noqa: E731
    if kind in (Kind.AINF_EXIST, Kind.AINF_UNIQUE):
        d = 3 if kind is Kind.AINF_EXIST else 2
        yield (
            f"(s, w) = (2n-{d}, -n), n >= 3",
            _lf(n=2, c=-d), _lf(n=-1), [ge(n=1, c=-3)], ["n"], "pi",
        )
    elif kind in (Kind.EINF_EXIST, Kind.EINF_UNIQUE):
        d = 3 if kind is Kind.EINF_EXIST else 2
        yield (
            f"(s, w) = (n-{d}+i, -i), n >= 4, 2 <= m <= n, 0 <= i <= m-1",
            _lf(n=1, i=1, c=-d), _lf(i=-1),
            [ge(n=1, c=-4), ge(m=1, c=-2), ge(n=1, m=-1), ge(i=1), ge(m=1, i=-1, c=-1)],
            ["n", "m", "i"], "endo",
        )
    elif kind is Kind.MOORE_AINF:
        for d in (3, 2):
            yield (
                f"(s, w) = (2n-{d}+i, -i), n >= 3, 0 <= i <= n",
                _lf(n=2, i=1, c=-d), _lf(i=-1),
                [ge(n=1, c=-3), ge(i=1), ge(n=1, i=-1)], ["n", "i"], "moore",
            )
    else:
        for d in (3, 2):
            yield (
                f"(s, w) = (n-{d}+m+i, -i), n >= 4, 2 <= m <= n, 0 <= i <= m-1",
                _lf(n=1, m=1, i=1, c=-d), _lf(i=-1),
                [ge(n=1, c=-4), ge(m=1, c=-2), ge(n=1, m=-1), ge(i=1), ge(m=1, i=-1, c=-1)],
                ["n", "m", "i"], "moore",
            )


def symbolic_audit(kind: Kind | str) -> list[Certificate]:
    """Prove that every obstruction bidegree of ``kind`` sits in a vanishing region.

    For each parameter family the certificate bounds, over all real points
    of the parameter polyhedron, 2w - s from above by a nonpositive number
    (the nonpositive-filtration rule) and s from below by at least 1 (so the
    (0,0) exception is never reached).  Moore families repeat the bound for
    the second flanking group at (s-1, w).
    """
    kind = kind if isinstance(kind, Kind) else Kind.parse(kind)
    out = []
    for family, s, w, cons, variables, pred in _families(kind):
        steps = [f"family {family}", "constraints: " + ", ".join(f"{_fmt(c)} >= 0" for c in cons)]
        ok = True
        shifts = (0, 1) if pred == "moore" else (0,)
        for shift in shifts:
            s_eff = _combine(s, Fraction(1), _lf(c=-shift), Fraction(1))
            label = "s" if not shift else "s-1"
            filt = _combine(w, Fraction(2), s_eff, Fraction(-1))
            log: list[str] = []
            top = _sup(filt, cons, variables, log)
            steps.append(f"2w - {label} = {_fmt(filt)}")
            steps += ["  " + x for x in log]
            if top is None or top > 0:
                ok = False
                steps.append(f"  sup(2w - {label}) = {top}: does not close")
            else:
                steps.append(f"  sup(2w - {label}) = {top} <= 0, so 2w <= {label}")
            neg_s = _combine(s_eff, Fraction(-1), {}, Fraction(0))
            log = []
            top = _sup(neg_s, cons, variables, log)
            low = None if top is None else -top
            steps += ["  " + x for x in log]
            if low is None or low < 1:
                ok = False
                steps.append(f"  inf({label}) = {low}: the (0,0) exception is not excluded")
            else:
                steps.append(f"  inf({label}) = {low} >= 1, so ({label}, w) != (0,0)")
        counter = None if ok else _search_counterexample(kind)
        out.append(Certificate(kind, ok, family, steps, counter))
    return out


def _search_counterexample(kind: Kind, n_max: int = 40):
    for e in audit(kind, n_max).entries:
        if not e.verdict.is_provably_zero:
            return (e.n, e.m, e.i, e.bidegree.first, e.bidegree.second)
    return None


# -- three-term exactness ---------------------------------------------------


class ForcedStatus(str, Enum):
    FORCED = "Forced"
    EXTENSION_AMBIGUOUS = "ExtensionAmbiguous"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ForcedGroupResult:
    status: ForcedStatus
    value: FiniteAbelianGroup | None = None
    candidates: tuple[FiniteAbelianGroup, ...] = ()

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "value": self.value.to_json() if self.value is not None else None,
            "candidates": [str(g) for g in self.candidates],
        }


def forced_les_group(left: FiniteAbelianGroup | None, right: FiniteAbelianGroup | None) -> ForcedGroupResult:
    """The middle term E of an exact 0 -> left -> E -> right -> 0.

    ``None`` stands for zero.  With a zero flank E is forced; otherwise the
    finite extensions are listed, and infinite flanks give ``Unknown``.
    """
    left = left or FiniteAbelianGroup.zero()
    right = right or FiniteAbelianGroup.zero()
    if left.is_zero():
        return ForcedGroupResult(ForcedStatus.FORCED, right)
    if right.is_zero():
        return ForcedGroupResult(ForcedStatus.FORCED, left)
    options = extensions(left, right)
    if options is None:
        return ForcedGroupResult(ForcedStatus.UNKNOWN)
    return ForcedGroupResult(ForcedStatus.EXTENSION_AMBIGUOUS, None, tuple(options))
