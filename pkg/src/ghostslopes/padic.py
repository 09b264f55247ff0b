"""p-adic valuations of integers and base-p digit sums.

Only valuations are modelled here; there is no p-adic number type.
All values are Python ints or :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Valuation = Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeContext:
    """A prime ``p >= 7``."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 7 or not _is_prime(self.p):
            raise ValueError(f"p must be a prime ≥ 7, got {self.p!r}")


def vp(ctx: PrimeContext, n: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    p = ctx.p
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def dig(ctx: PrimeContext, m: int) -> int:
    """Sum of the base-p digits of ``m >= 0``."""
    if m < 0:
        raise ValueError(f"digit sum needs m >= 0, got {m}")
    p = ctx.p
    total = 0
    while m:
        m, r = divmod(m, p)
        total += r
    return total


def vp_range_sum(ctx: PrimeContext, m1: int, m2: int) -> int:
    """``sum(vp(i) for m1 < i <= m2)`` through Legendre's digit-sum identity."""
    if m1 < 0 or m2 < m1:
        raise ValueError(f"need 0 <= m1 <= m2, got ({m1}, {m2})")
    num = (m2 - dig(ctx, m2)) - (m1 - dig(ctx, m1))
    q, r = divmod(num, ctx.p - 1)
    assert r == 0
    return q
