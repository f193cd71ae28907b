"""Finitely generated abelian groups in primary-decomposed normal form."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod


def _factor_prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def _prime_of(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


@dataclass(frozen=True, order=True)
class FiniteAbelianGroup:
    """Z^free_rank plus a multiset of prime-power cyclic factors.

    In the 2-complete setting ``free_rank`` counts copies of the 2-adic
    integers.  ``torsion`` is kept sorted ascending.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for q in self.torsion:
            if q < 2 or len(_factor_prime_powers(q)) != 1:
                raise ValueError(f"torsion factor {q} is not a prime power >= 2")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    @classmethod
    def zero(cls) -> "FiniteAbelianGroup":
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        """Z/n, or Z when n == 0."""
        if n == 0:
            return cls(1)
        return cls(0, tuple(_factor_prime_powers(abs(n))))

    @classmethod
    def from_invariant_factors(
        cls, factors, free_rank: int = 0, localize_at: int | None = None
    ) -> "FiniteAbelianGroup":
        torsion = []
        for d in factors:
            d = abs(d)
            if d == 0:
                free_rank += 1
                continue
            for q in _factor_prime_powers(d):
                if localize_at is None or _prime_of(q) == localize_at:
                    torsion.append(q)
        return cls(free_rank, tuple(torsion))

    @classmethod
    def f2_vector_space(cls, rank: int) -> "FiniteAbelianGroup":
        return cls(0, (2,) * rank)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        return prod(self.torsion) if self.is_finite() else None

    def __add__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def primary_part(self, p: int) -> tuple[int, ...]:
        return tuple(q for q in self.torsion if _prime_of(q) == p)

    def kernel_of_multiplication(self, n: int) -> "FiniteAbelianGroup":
        """Kernel of x -> n x, for n != 0."""
        if n == 0:
            raise ValueError("multiplication by zero is not supported")
        out = []
        for q in self.torsion:
            g = _gcd(q, n)
            if g > 1:
                out.append(g)
        return FiniteAbelianGroup(0, tuple(out))

    def cokernel_of_multiplication(self, n: int) -> "FiniteAbelianGroup":
        """Cokernel of x -> n x, for n != 0."""
        if n == 0:
            raise ValueError("multiplication by zero is not supported")
        out = []
        for q in self.torsion:
            g = _gcd(q, n)
            if g > 1:
                out.append(g)
        out += _factor_prime_powers(abs(n)) * self.free_rank
        return FiniteAbelianGroup(0, tuple(out))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{q}" for q in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteAbelianGroup":
        return cls(data["free_rank"], tuple(data["torsion"]))


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# -- extensions of finite abelian p-groups ---------------------------------


def _partition(group_part: tuple[int, ...], p: int) -> tuple[int, ...]:
    exps = []
    for q in group_part:
        e = 0
        while q > 1:
            q //= p
            e += 1
        exps.append(e)
    return tuple(sorted(exps, reverse=True))


def _partitions(n: int, max_part: int | None = None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def lr_coefficient(lam, mu, nu) -> int:
    """Littlewood-Richardson coefficient c^lam_{mu,nu} by counting LR tableaux."""
    lam, mu, nu = list(lam), list(mu), list(nu)
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    mu = mu + [0] * (len(lam) - len(mu))
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        return 0
    cells = [(r, c) for r in range(len(lam)) for c in range(lam[r] - 1, mu[r] - 1, -1)]
    # rows filled right-to-left, top-to-bottom = reverse reading word order
    n_labels = len(nu)
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * n_labels

    def rec(k: int) -> int:
        if k == len(cells):
            return int(counts == nu)
        r, c = cells[k]
        total = 0
        for x in range(n_labels):
            if counts[x] >= nu[x]:
                continue
            if x > 0 and counts[x] + 1 > counts[x - 1]:
                continue
            right = filling.get((r, c + 1))
            if right is not None and right < x:
                continue
            above = filling.get((r - 1, c))
            if above is not None and above >= x:
                continue
            filling[(r, c)] = x
            counts[x] += 1
            total += rec(k + 1)
            counts[x] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


def extensions(sub: FiniteAbelianGroup, quotient: FiniteAbelianGroup) -> list[FiniteAbelianGroup] | None:
    """All abelian groups E with ``sub`` <= E and E/sub = ``quotient``.

    Returns None when either group is infinite (the list is not finite-type
    enumerable from ranks alone).  For finite groups the answer is exact: an
    extension of type lam exists iff the LR coefficient c^lam_{mu,nu} > 0
    (Green's theorem on Hall polynomials), prime by prime.
    """
    if not (sub.is_finite() and quotient.is_finite()):
        return None
    primes = sorted({_prime_of(q) for q in sub.torsion + quotient.torsion})
    per_prime = []
    for p in primes:
        mu = _partition(sub.primary_part(p), p)
        nu = _partition(quotient.primary_part(p), p)
        options = [
            lam
            for lam in _partitions(sum(mu) + sum(nu))
            if lr_coefficient(lam, mu, nu) > 0
        ]
        per_prime.append([tuple(p**k for k in lam) for lam in options])
    out = [
        FiniteAbelianGroup(0, tuple(q for part in choice for q in part))
        for choice in product(*per_prime)
    ]
    return sorted(set(out))
