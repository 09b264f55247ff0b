"""Local invariants of a single ghost series around one ghost zero ``w_k``.

``delta_prime(l)`` is the valuation at ``w_k`` of the coefficient of index
``d_iw/2 + l`` with its own ``(w - w_k)`` factors removed, minus
``(k-2)/2 * l``, for ``|l| <= d_new/2`` where ``d_new = d_iw - 2*d_ur``.
Its lower convex hull controls the near-Steinberg range of a point close to
``w_k``.  The digit-sum closed forms here are cross-checks of the direct
computation, which stays the source of truth.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Optional

import numpy as np

from .chars import EpsilonChar, WeightK, WStarProfile, profile_eval, s_set
from .dims import ModuleSpec, SParam, beta, d_iw, d_ur
from .ghost import exponent_table, hat_distances
from .newton import _np_from_scaled, h_values
from .padic import dig


def d_new(sp: SParam, k: WeightK) -> int:
    return d_iw(sp, k) - 2 * d_ur(sp, k)


def theta(sp: SParam, k: WeightK, l: int) -> int:
    p = sp.eps.p
    n = k.kb - sp.delta - l
    return beta(sp, n) - beta(sp, n + 1) + (p + 1) // 2


def theta_closed(sp: SParam, k: WeightK, l: int) -> int:
    """Parity closed form of :func:`theta`, valid for ``s`` in S."""
    p, k0, s = sp.eps.p, sp.eps.k0, sp.s
    if (k.kb + 1 - l) % 2 == 0:
        return 2 * s + 2 - k0
    return p - 1 - 2 * s + k0


def ab_values(sp: SParam, k: WeightK, l: int) -> tuple[int, int]:
    p = sp.eps.p
    th = theta(sp, k, l + 1)
    a2 = k.k - 2 - (p + 1) * l + th
    b2 = k.k - 2 + (p + 1) * l - th
    if a2 % 2 or b2 % 2:
        raise ArithmeticError(f"A/B half-sums are not integral at s={sp.s}, k={k.k}, l={l}")
    return a2 // 2, b2 // 2


def _check_l(sp: SParam, k: WeightK, l: int) -> int:
    half = d_new(sp, k) // 2
    if abs(l) > half:
        raise ValueError(f"l = {l} outside [-{half}, {half}]")
    return half


def _table(sp: SParam, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Exponent table covering column ``n`` and its column sums.

    Sizes are rounded up to a power of two so that nearby weights share one
    cached table.
    """
    size = 64
    while size < n:
        size *= 2
    return _table_sized(sp.eps, sp.s, size)


@lru_cache(maxsize=64)
def _table_sized(eps: EpsilonChar, s: int, size: int) -> tuple[np.ndarray, np.ndarray]:
    table = exponent_table(ModuleSpec.of(eps, [s]), size, False)
    colsum = table.sum(axis=0)
    colsum.setflags(write=False)
    return table, colsum


def _hat_sum(eps: EpsilonChar, kb: int, table: np.ndarray, colsum: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """``sum_{k' != k} m(k') * (1 + v_p(k_bullet - k'_bullet))`` for columns ``lo..hi``.

    Uses ``1 + v_p(d) = 1 + #{j >= 1 : p^j | d}``: the plain column sum plus
    one strided sum per power of ``p``, each corrected for the row ``kb``.
    """
    p = eps.p
    rows = table.shape[0]
    own = table[kb, lo:hi + 1] if kb < rows else np.zeros(hi - lo + 1, dtype=np.int64)
    out = colsum[lo:hi + 1] - own
    q = p
    while q < rows:
        out = out + table[kb % q::q, lo:hi + 1].sum(axis=0) - own
        q *= p
    return out


def _twice_values(sp: SParam, k: WeightK) -> list[int]:
    """``2 * delta_prime(l)`` for ``l = -half..half`` as plain integers."""
    half = d_new(sp, k) // 2
    mid = d_iw(sp, k) // 2
    table, colsum = _table(sp, mid + half)
    raw = _hat_sum(sp.eps, k.kb, table, colsum, mid - half, mid + half).tolist()
    return [2 * raw[l + half] - (k.k - 2) * l for l in range(-half, half + 1)]


def delta_values(sp: SParam, k: WeightK) -> dict[int, Fraction]:
    """``{l: delta_prime(l)}`` over the full symmetric range, from one exponent table."""
    twice = _twice_values(sp, k)
    half = len(twice) // 2
    return {l: Fraction(twice[l + half], 2) for l in range(-half, half + 1)}


def delta_prime(sp: SParam, k: WeightK, l: int) -> Fraction:
    _check_l(sp, k, l)
    n = d_iw(sp, k) // 2 + l
    table, _ = _table(sp, n)
    dist = hat_distances(sp.eps, k.kb, table.shape[0])
    return int(dist @ table[:, n]) - Fraction(k.k - 2, 2) * l


def delta_increment(sp: SParam, k: WeightK, l: int) -> Fraction:
    """Digit-sum closed form of ``delta_prime(l) - delta_prime(l - 1)`` for ``s`` in S."""
    if sp.s not in s_set(sp.eps):
        raise ValueError(f"s = {sp.s} is not in S")
    half = d_new(sp, k) // 2
    if not 1 <= l <= half:
        raise ValueError(f"l = {l} outside [1, {half}]")
    ctx, p = sp.eps.ctx, sp.eps.p
    th = theta(sp, k, l)
    A, B = ab_values(sp, k, l)
    # (p-1)(l-1)+th over 2, plus th + Dig(A) + 2 Dig(l-1) - Dig(B) over p-1
    num = (p - 1) * ((p - 1) * (l - 1) + th) + 2 * (th + dig(ctx, A) + 2 * dig(ctx, l - 1) - dig(ctx, B))
    return Fraction(num, 2 * (p - 1))


@dataclass(frozen=True)
class DeltaTable:
    sp: SParam
    k: WeightK
    d_new: int
    values: dict[int, Fraction]
    hull: dict[int, Fraction]

    @property
    def symmetric(self) -> bool:
        return all(self.values[l] == self.values[-l] for l in self.values)

    def asymmetries(self) -> list[int]:
        return [l for l in self.values if l > 0 and self.values[l] != self.values[-l]]

    def hull_increments(self) -> dict[int, Fraction]:
        """``hull(l) - hull(l-1)`` for ``l = 1..d_new/2``."""
        return {l: self.hull[l] - self.hull[l - 1] for l in range(1, self.d_new // 2 + 1)}

    def rows(self) -> list[tuple[int, Fraction, Fraction]]:
        return [(l, self.values[l], self.hull[l]) for l in sorted(self.values)]


def delta_hull(sp: SParam, k: WeightK) -> DeltaTable:
    twice = _twice_values(sp, k)
    half = len(twice) // 2
    vals = {l: Fraction(twice[l + half], 2) for l in range(-half, half + 1)}
    poly = _np_from_scaled(twice, 2)
    ys = h_values(poly, 2 * half)
    hull = {l: ys[l + half] for l in range(-half, half + 1)}
    return DeltaTable(sp, k, 2 * half, vals, hull)


def s_kl(eps: EpsilonChar, k: WeightK, l: int) -> int:
    if (k.kb + 1 - l) % 2 == 1:
        return (eps.k0 + 2) // 2
    return (eps.k0 + eps.p - 4) // 2


def p_kl(eps: EpsilonChar, k: WeightK, l: int) -> Fraction:
    """The slope ``P_{k,l}`` built from digit sums at the boundary parameter ``s_{k,l}``."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    ctx, p = eps.ctx, eps.p
    sp = SParam(eps, s_kl(eps, k, l))
    A0, B0 = ab_values(sp, k, l)
    A1, B1 = ab_values(sp, k, l + 1)
    twice = (Fraction((p - 1) * (2 * l - 1) + p + 1, 2)
             + Fraction(p + 1 + 2 * (dig(ctx, l) + dig(ctx, l - 1)), p - 1)
             - Fraction(dig(ctx, B1) - dig(ctx, A0) + dig(ctx, B0) - dig(ctx, A1), p - 1))
    return twice / 2


def slope_hypothesis(sp: SParam, k: WeightK, l: int, r: int) -> bool:
    """Whether ``(l, r)`` meets the divisibility hypothesis under which the chord slope is ``P_{k,l}``.

    Needs ``v_p(l) >= 1``, ``1 <= r <= p^(v_p(l)-1)``, ``3l <= d_new`` and no
    multiple of ``p^v_p(l)`` in ``(B_{l-r+1}, B_{l+r}]``.  When ``v_p(l) = 0``
    the range for ``r`` is empty and the answer is False.
    """
    p = sp.eps.p
    if l < 1 or 3 * l > d_new(sp, k):
        return False
    v = 0
    m = l
    while m % p == 0:
        m //= p
        v += 1
    if v == 0 or not 1 <= r <= p ** (v - 1):
        return False
    q = p ** v
    lo = ab_values(sp, k, l - r + 1)[1]
    hi = ab_values(sp, k, l + r)[1]
    return hi // q == lo // q


def f_value(sp: SParam, k: WeightK, r: int, l_center: int) -> Fraction:
    """Difference of the increments at ``l_center + r`` and ``l_center - r + 1``."""
    half = d_new(sp, k) // 2
    idx = (l_center + r, l_center + r - 1, l_center - r + 1, l_center - r)
    if any(abs(l) > half for l in idx):
        raise ValueError(f"r = {r} around {l_center} leaves [-{half}, {half}]")
    vals = delta_values(sp, k)
    return (vals[l_center + r] - vals[l_center + r - 1]) - (vals[l_center - r + 1] - vals[l_center - r])


@dataclass(frozen=True)
class NearSteinberg:
    L: int
    center: int

    @property
    def range(self) -> tuple[int, int]:
        """Open interval ``(center - L, center + L)``."""
        return self.center - self.L, self.center + self.L


def near_steinberg(sp: SParam, k: WeightK, w: WStarProfile,
                   table: Optional[DeltaTable] = None) -> Optional[NearSteinberg]:
    table = table or delta_hull(sp, k)
    v = profile_eval(w, k)
    good = [l for l, inc in table.hull_increments().items() if v >= inc]
    if not good:
        return None
    return NearSteinberg(max(good), k.kb + 1)
