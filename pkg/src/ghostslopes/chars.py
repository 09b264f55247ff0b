"""Characters, weights, the s <-> (a, b) parametrization and evaluation points.

A point ``w*`` of the open unit disk is never constructed.  It is modelled by
a :class:`WStarProfile`: its distance ``t`` to an anchor (a ghost zero
``w_k`` or the origin), from which every ``v_p(w* - w_k)`` follows by the
ultrametric inequality.  Ghost zeros satisfy ``v_p(w_k - w_k') = 1 +
v_p(k - k')``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .padic import PrimeContext, vp


@dataclass(frozen=True)
class EpsilonChar:
    """The character ``eps = eps1 x eps1 * omega^(k0 - 2)`` with ``eps1 = omega^c``."""

    ctx: PrimeContext
    c: int
    k0: int

    def __post_init__(self) -> None:
        p = self.ctx.p
        if not 0 <= self.c <= p - 2:
            raise ValueError(f"c must lie in [0, p-2] = [0, {p - 2}], got {self.c}")
        if not 2 <= self.k0 <= p:
            raise ValueError(f"k0 must lie in [2, p] = [2, {p}], got {self.k0}")

    @classmethod
    def of(cls, p: int, c: int, k0: int) -> "EpsilonChar":
        return cls(PrimeContext(p), c, k0)

    @property
    def p(self) -> int:
        return self.ctx.p

    def weight(self, k: int) -> "WeightK":
        return WeightK(self, k)

    def weight_kb(self, kb: int) -> "WeightK":
        return WeightK(self, (self.p - 1) * kb + self.k0)


@dataclass(frozen=True)
class WeightK:
    """A weight ``k = (p-1) * k_bullet + k0`` of the class K."""

    eps: EpsilonChar
    k: int

    def __post_init__(self) -> None:
        p, k0 = self.eps.p, self.eps.k0
        if self.k < 2:
            raise ValueError(f"weight must be >= 2, got {self.k}")
        if (self.k - k0) % (p - 1) != 0 or self.k < k0:
            raise ValueError(f"weight {self.k} is not in K (k = k0 mod {p - 1}, k >= k0 = {k0})")

    @property
    def kb(self) -> int:
        return (self.k - self.eps.k0) // (self.eps.p - 1)


def _residue(eps: EpsilonChar, n: int) -> int:
    return n % (eps.p - 1)


def iota(eps: EpsilonChar, s: int) -> tuple[int, int]:
    """The eps-related pair ``(a, b)`` attached to ``s``."""
    p = eps.p
    if not 0 <= s <= p - 2:
        raise ValueError(f"s must lie in [0, {p - 2}], got {s}")
    return _residue(eps, eps.k0 - 2 - 2 * s), _residue(eps, eps.c + s)


def is_related(eps: EpsilonChar, a: int, b: int) -> bool:
    p = eps.p
    if not (0 <= a <= p - 2 and 0 <= b <= p - 2):
        return False
    return (a + 2 * b - 2 * eps.c - eps.k0 + 2) % (p - 1) == 0


def iota_inv(eps: EpsilonChar, a: int, b: int) -> int:
    if not is_related(eps, a, b):
        raise ValueError(f"(a, b) = ({a}, {b}) is not related to eps (c={eps.c}, k0={eps.k0})")
    return _residue(eps, b - eps.c)


def companion(eps: EpsilonChar, s: int) -> int:
    """The parameter ``s'`` with ``s + s' = k0 - 1 (mod p-1)``."""
    if not 0 <= s <= eps.p - 2:
        raise ValueError(f"s must lie in [0, {eps.p - 2}], got {s}")
    return _residue(eps, eps.k0 - 1 - s)


def companion_pair(eps: EpsilonChar, a: int, b: int) -> tuple[int, int]:
    """``({p-3-a}, {a+b+1})``, the companion of an eps-related pair."""
    return _residue(eps, eps.p - 3 - a), _residue(eps, a + b + 1)


def s_set(eps: EpsilonChar) -> list[int]:
    lo = (eps.k0 + 2) // 2          # ceil((k0+1)/2)
    hi = (eps.k0 - 4 + eps.p) // 2
    return list(range(lo, hi + 1))


def wdist(k: WeightK, k2: WeightK) -> int:
    """``v_p(w_k - w_k')`` for distinct weights of one class."""
    if k.eps != k2.eps:
        raise ValueError("weights belong to different classes")
    if k.k == k2.k:
        raise ValueError("v_p(w_k - w_k) is infinite")
    return 1 + vp(k.eps.ctx, k.k - k2.k)


@dataclass(frozen=True)
class WStarProfile:
    """A point ``w*`` at distance ``t`` from ``w_anchor`` (or from 0 when ``anchor`` is None).

    Distances to all other ghost zeros take the generic value
    ``min(t, v_p(w_anchor - w_k))``.
    """

    eps: EpsilonChar
    anchor: Optional[WeightK]
    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", Fraction(self.t))
        if self.t <= 0:
            raise ValueError(f"profile valuation t must be positive, got {self.t}")
        if self.anchor is not None and self.anchor.eps != self.eps:
            raise ValueError("anchor weight is in a different class")

    @property
    def anchor_k(self) -> int:
        """Anchor weight, with the origin identified with ``w_2 = 0``."""
        return 2 if self.anchor is None else self.anchor.k

    def __str__(self) -> str:
        return format_profile(self)


def profile_eval(w: WStarProfile, k: WeightK) -> Fraction:
    """``v_p(w* - w_k)``."""
    if k.eps != w.eps:
        raise ValueError("weight and profile belong to different classes")
    diff = k.k - w.anchor_k
    if diff == 0:
        return w.t
    return min(w.t, Fraction(1 + vp(w.eps.ctx, diff)))


def _vp_array(p: int, x: np.ndarray) -> np.ndarray:
    """Elementwise v_p of a nonzero integer array."""
    x = np.abs(x.astype(np.int64))
    out = np.zeros(x.shape, dtype=np.int64)
    mask = x % p == 0
    while mask.any():
        out[mask] += 1
        x = np.where(mask, x // p, x)
        mask = (x % p == 0) & (x != 0)
    return out


def profile_split(w: WStarProfile, kbs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized profile evaluation on ``k_bullet`` values.

    Returns ``(is_t, dist)``: ``v_p(w* - w_k)`` equals ``t`` where ``is_t``
    holds and the integer ``dist`` elsewhere.
    """
    p, k0 = w.eps.p, w.eps.k0
    diff = (p - 1) * kbs.astype(np.int64) + k0 - w.anchor_k
    at_anchor = diff == 0
    dist = np.where(at_anchor, 0, 1 + _vp_array(p, np.where(at_anchor, 1, diff)))
    t = Fraction(w.t)
    is_t = at_anchor | (dist * t.denominator >= t.numerator)
    return is_t, np.where(is_t, 0, dist)


_RAT = r"-?\d+(?:/\d+)?"
_PROFILE_RE = re.compile(rf"^(?:origin|k=(-?\d+)):t=({_RAT})$")


def parse_profile(eps: EpsilonChar, text: str) -> WStarProfile:
    """Parse ``origin:t=<q>`` or ``k=<int>:t=<q>``."""
    m = _PROFILE_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad profile {text!r}; expected 'origin:t=<q>' or 'k=<int>:t=<q>'")
    anchor = None if m.group(1) is None else eps.weight(int(m.group(1)))
    return WStarProfile(eps, anchor, Fraction(m.group(2)))


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_profile(w: WStarProfile) -> str:
    head = "origin" if w.anchor is None else f"k={w.anchor.k}"
    return f"{head}:t={format_rational(w.t)}"


def parse_profile_family(eps: EpsilonChar, text: str) -> list[WStarProfile]:
    """Expand a sweep such as ``anchors=kb:0..200;t=1/2..20/1:step1/2``.

    ``anchors`` is a comma list whose items are ``origin``, ``kb:<lo>..<hi>``
    or ``k=<int>``; ``t`` is ``<lo>..<hi>:step<q>`` or a comma list of
    rationals.  Profiles are ordered anchor-major.  An empty string gives an
    empty family.
    """
    text = text.strip()
    if not text:
        return []
    fields = {}
    for part in text.split(";"):
        key, _, val = part.partition("=")
        if key not in ("anchors", "t") or not val:
            raise ValueError(f"bad profile family clause {part!r}")
        fields[key] = val
    if set(fields) != {"anchors", "t"}:
        raise ValueError("profile family needs both 'anchors=' and 't=' clauses")
    anchors: list[Optional[WeightK]] = []
    for item in fields["anchors"].split(","):
        item = item.strip()
        if item == "origin":
            anchors.append(None)
        elif item.startswith("kb:"):
            lo, _, hi = item[3:].partition("..")
            for kb in range(int(lo), int(hi or lo) + 1):
                anchors.append(eps.weight_kb(kb))
        elif item.startswith("k="):
            anchors.append(eps.weight(int(item[2:])))
        else:
            raise ValueError(f"bad anchor item {item!r}")
    tv = fields["t"]
    m = re.match(rf"^({_RAT})\.\.({_RAT}):step({_RAT})$", tv)
    if m:
        lo, hi, step = (Fraction(g) for g in m.groups())
        if step <= 0:
            raise ValueError("t step must be positive")
        ts = []
        t = lo
        while t <= hi:
            ts.append(t)
            t += step
    else:
        ts = [Fraction(x) for x in tv.split(",")]
    return [WStarProfile(eps, a, t) for a in anchors for t in ts]


def iter_weights(eps: EpsilonChar, kb_max: int) -> Iterator[WeightK]:
    for kb in range(kb_max + 1):
        yield eps.weight_kb(kb)
