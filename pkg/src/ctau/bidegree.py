"""Bidegrees, the motivic/Novikov regrading, and vanishing-region predicates.

A motivic bidegree (s, w) of Ctau corresponds to the Adams-Novikov
bidegree (f, t) = (2w - s, 2w).  The region predicates below are the
stated (not sharpened) vanishing rules; a ``NotCovered`` verdict says
nothing about non-vanishing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Convention(str, Enum):
    MOTIVIC = "MotivicSW"
    NOVIKOV = "NovikovFT"


class Rule(str, Enum):
    ABOVE_SLOPE_ONE = "AboveSlopeOne"
    NONPOSITIVE_FILTRATION = "NonpositiveFiltration"
    NEGATIVE_STEM = "NegativeStem"
    EXCEPTION = "Exception"
    NOT_COVERED = "NotCovered"


@dataclass(frozen=True, order=True)
class Bidegree:
    first: int
    second: int
    convention: Convention = Convention.MOTIVIC

    @classmethod
    def motivic(cls, s: int, w: int) -> "Bidegree":
        return cls(s, w, Convention.MOTIVIC)

    @classmethod
    def novikov(cls, f: int, t: int) -> "Bidegree":
        return cls(f, t, Convention.NOVIKOV)

    def to_novikov(self) -> "Bidegree":
        if self.convention is Convention.NOVIKOV:
            return self
        return Bidegree.novikov(*motivic_to_novikov(self.first, self.second))

    def to_motivic(self) -> "Bidegree":
        if self.convention is Convention.MOTIVIC:
            return self
        return Bidegree.motivic(*novikov_to_motivic(self.first, self.second))

    def __add__(self, other: "Bidegree") -> "Bidegree":
        if self.convention is not other.convention:
            raise ValueError("cannot add bidegrees in different conventions")
        return Bidegree(self.first + other.first, self.second + other.second, self.convention)

    def as_tuple(self) -> tuple[int, int]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


@dataclass(frozen=True)
class RegionVerdict:
    is_provably_zero: bool
    rule: Rule

    def to_json(self) -> dict:
        return {"is_provably_zero": self.is_provably_zero, "rule": self.rule.value}


class RegradingError(ValueError):
    pass


def motivic_to_novikov(s: int, w: int) -> tuple[int, int]:
    return (2 * w - s, 2 * w)


def novikov_to_motivic(f: int, t: int) -> tuple[int, int]:
    if t % 2:
        raise RegradingError("no motivic preimage; internal degree must be even")
    return (t - f, t // 2)


def _first_rule(s: int, w: int, stem_bound: int, slope_offset: int) -> Rule | None:
    # fixed reporting priority: NegativeStem > NonpositiveFiltration > AboveSlopeOne
    if s < stem_bound:
        return Rule.NEGATIVE_STEM
    if 2 * w <= s:
        return Rule.NONPOSITIVE_FILTRATION
    if w > s + slope_offset:
        return Rule.ABOVE_SLOPE_ONE
    return None


def ct_pi_region_zero(s: int, w: int) -> RegionVerdict:
    """Vanishing of pi_{s,w}(Ctau): w > s, 2w <= s, or s < 0, except at (0,0)."""
    if (s, w) == (0, 0):
        return RegionVerdict(False, Rule.EXCEPTION)
    rule = _first_rule(s, w, 0, 0)
    return RegionVerdict(rule is not None, rule or Rule.NOT_COVERED)


def ct_endo_region_zero(s: int, w: int) -> RegionVerdict:
    """Vanishing of [Sigma^{s,w} Ctau, Ctau]: w > s+2, 2w <= s, or s < -1, except at (0,0)."""
    if (s, w) == (0, 0):
        return RegionVerdict(False, Rule.EXCEPTION)
    rule = _first_rule(s, w, -1, 2)
    return RegionVerdict(rule is not None, rule or Rule.NOT_COVERED)


def moore_pi_region_zero(s: int, w: int) -> RegionVerdict:
    """Vanishing of pi_{s,w} of the cofiber of 2 on Ctau.

    The cofiber sequence gives an exact piece pi_{s,w}(Ctau) -> pi_{s,w} ->
    pi_{s-1,w}(Ctau), so both flanking Ctau verdicts must vanish.  The
    reported rule is the one that fired at (s, w), falling back to (s-1, w).
    """
    here, below = ct_pi_region_zero(s, w), ct_pi_region_zero(s - 1, w)
    for v in (here, below):
        if v.rule is Rule.EXCEPTION:
            return RegionVerdict(False, Rule.EXCEPTION)
    if here.is_provably_zero and below.is_provably_zero:
        return RegionVerdict(True, here.rule)
    return RegionVerdict(False, Rule.NOT_COVERED)


def novikov_region_rule(f: int, t: int) -> Rule | None:
    """The Adams-Novikov vanishing rule at (f, t), phrased in Novikov terms.

    Negative stem t - f < 0, nonpositive filtration f <= 0 (away from the
    origin), or above the slope-one line: f > t - f.
    """
    if (f, t) == (0, 0):
        return Rule.EXCEPTION
    if t - f < 0:
        return Rule.NEGATIVE_STEM
    if f <= 0:
        return Rule.NONPOSITIVE_FILTRATION
    if f > t - f:
        return Rule.ABOVE_SLOPE_ONE
    return None


@dataclass(frozen=True)
class PageCorrespondence:
    anss_differential: int
    bockstein_differential: int
    anss_page: int
    bockstein_page: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.anss_differential, self.bockstein_differential, self.anss_page, self.bockstein_page)


def anss_bockstein_correspondence(r: int) -> PageCorrespondence:
    """An Adams-Novikov d_{2r+1} is a tau-Bockstein d_r; page 2r+2 matches page r+1."""
    if r < 1:
        raise ValueError(f"r must be >= 1 (got {r}); the Bockstein d_0 is undefined")
    return PageCorrespondence(2 * r + 1, r, 2 * r + 2, r + 1)


def bockstein_to_anss(bockstein_differential: int) -> int:
    """Inverse on the differential index: d_r of the Bockstein gives d_{2r+1}."""
    return anss_bockstein_correspondence(bockstein_differential).anss_differential


def anss_to_bockstein(anss_differential: int) -> int:
    if anss_differential < 3 or anss_differential % 2 == 0:
        raise ValueError("only odd Adams-Novikov differentials d_3, d_5, ... correspond")
    return (anss_differential - 1) // 2
