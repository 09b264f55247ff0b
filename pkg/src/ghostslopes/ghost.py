"""Ghost series: exponents, coefficients and their valuations at a point.

The n-th ghost coefficient is ``prod_k (w - w_k)^{m_n(k)}`` over the weight
class, with

    m_n(k) = min(n - d_ur, d_iw - d_ur - n)   if d_ur < n < d_iw - d_ur
           = 0                                otherwise,

``d_ur, d_iw`` being the (plain or dagger) dimensions of the spec at ``k``.
Coefficients are kept as exponent maps; nothing is ever expanded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .chars import EpsilonChar, WeightK, WStarProfile, _vp_array, profile_split
from .dims import ModuleSpec, spec_dims, spec_dims_array

# extra k_bullet indices checked past the scan bound
SCAN_GUARD = 3


def m_exp(spec: ModuleSpec, n: int, k: WeightK | int, dagger: bool = False) -> int:
    ur, iw = spec_dims(spec, k, dagger)
    if ur < n < iw - ur:
        return min(n - ur, iw - ur - n)
    return 0


@dataclass(frozen=True, eq=True)
class GhostCoefficient:
    """Exponent map ``{weight k: m_n(k)}`` of one ghost coefficient."""

    n: int
    factors: Mapping[int, int]

    __hash__ = None  # type: ignore[assignment]

    @property
    def degree(self) -> int:
        return sum(self.factors.values())

    def to_json(self) -> dict:
        return {"n": self.n, "factors": [{"k": k, "e": e} for k, e in sorted(self.factors.items())]}


def coefficient(spec: ModuleSpec, n: int, dagger: bool = False) -> GhostCoefficient:
    """The n-th coefficient, found by scanning ``k_bullet`` upward.

    The scan stops at the first ``k_bullet`` whose ``d_ur`` reaches ``n``;
    ``d_ur`` is nondecreasing so nothing beyond can contribute.  A few more
    indices are checked anyway and a contribution there is an error.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    eps = spec.eps
    factors: dict[int, int] = {}
    kb = 0
    while spec_dims(spec, kb, dagger)[0] < n:
        e = m_exp(spec, n, kb, dagger)
        if e:
            factors[(eps.p - 1) * kb + eps.k0] = e
        kb += 1
    for extra in range(kb, kb + SCAN_GUARD + 1):
        if m_exp(spec, n, extra, dagger):
            raise RuntimeError(f"ghost support extends past the scan bound at k_bullet={extra}")
    return GhostCoefficient(n, factors)


def scan_bound(spec: ModuleSpec, N: int, dagger: bool = False) -> int:
    """First ``k_bullet`` with ``d_ur >= N``: no coefficient up to ``N`` has support there or beyond."""
    kb = 0
    while spec_dims(spec, kb, dagger)[0] < N:
        kb += 1
    return kb


@lru_cache(maxsize=32)
def exponent_table(spec: ModuleSpec, N: int, dagger: bool = False) -> np.ndarray:
    """Matrix ``M[kb, n] = m_n(k)`` for ``0 <= n <= N`` and all relevant ``k_bullet``.

    Rows run from ``k_bullet = 0`` to the scan bound plus a guard band; the
    guard rows must be zero.  The result is read-only.
    """
    rows = scan_bound(spec, N, dagger) + SCAN_GUARD + 1
    kbs = np.arange(rows, dtype=np.int64)
    ur, iw = spec_dims_array(spec, kbs, dagger)
    n = np.arange(N + 1, dtype=np.int64)
    lo = n[None, :] - ur[:, None]
    hi = (iw - ur)[:, None] - n[None, :]
    table = np.maximum(np.minimum(lo, hi), 0)
    if table[-SCAN_GUARD - 1:].any():
        raise RuntimeError("ghost support extends into the guard band")
    table = table.astype(np.int64)
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class GhostSeries:
    """Ghost series of ``spec`` truncated at degree ``N``."""

    spec: ModuleSpec
    N: int
    dagger: bool = False

    def __post_init__(self) -> None:
        if self.N < 0:
            raise ValueError(f"truncation degree must be >= 0, got {self.N}")

    @property
    def table(self) -> np.ndarray:
        return exponent_table(self.spec, self.N, self.dagger)

    def coefficient(self, n: int) -> GhostCoefficient:
        if not 0 <= n <= self.N:
            raise IndexError(f"coefficient {n} is outside the truncation 0..{self.N}")
        eps = self.spec.eps
        col = self.table[:, n]
        nz = np.nonzero(col)[0]
        return GhostCoefficient(n, {int((eps.p - 1) * kb + eps.k0): int(col[kb]) for kb in nz})

    @property
    def coeffs(self) -> list[GhostCoefficient]:
        return [self.coefficient(n) for n in range(self.N + 1)]

    def __len__(self) -> int:
        return self.N + 1


def series(spec: ModuleSpec, N: int, dagger: bool = False) -> GhostSeries:
    return GhostSeries(spec, N, dagger)


def eval_split(gs: GhostSeries, w: WStarProfile) -> tuple[np.ndarray, np.ndarray]:
    """Valuations as ``T[n] * t + I[n]`` with integer arrays ``(T, I)``."""
    if w.eps != gs.spec.eps:
        raise ValueError("profile and series belong to different characters")
    table = gs.table
    kbs = np.arange(table.shape[0], dtype=np.int64)
    is_t, dist = profile_split(w, kbs)
    T = table[is_t].sum(axis=0)
    I = dist @ table
    return T, I


def eval_valuations(gs: GhostSeries, w: WStarProfile) -> list[Fraction]:
    """``v_p(g_n(w*))`` for ``n = 0..N``."""
    T, I = eval_split(gs, w)
    t = w.t
    return [int(a) * t + int(b) for a, b in zip(T, I)]


def hat_distances(eps: EpsilonChar, kb: int, rows: int) -> np.ndarray:
    """``v_p(w_k - w_k')`` over ``k'_bullet = 0..rows-1``, with 0 at ``k' = k``."""
    diff = np.arange(rows, dtype=np.int64) - kb
    own = diff == 0
    d = 1 + _vp_array(eps.p, np.where(own, 1, diff))
    return np.where(own, 0, d)


def eval_at_wk_hat(spec: ModuleSpec, n: int, k: WeightK, dagger: bool = False) -> int:
    """``v_p`` at ``w_k`` of the n-th coefficient with its ``(w - w_k)`` factors removed."""
    table = exponent_table(spec, n, dagger)
    dist = hat_distances(spec.eps, k.kb, table.shape[0])
    return int(dist @ table[:, n])
