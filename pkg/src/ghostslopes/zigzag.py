"""Direct sums of primitive modules: partitions, odd dominance, the zigzag
criterion, the pairing condition and polygon comparisons.

Tuples of ``s`` values are always put in nondecreasing order before any
partition-based step.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .chars import EpsilonChar, WStarProfile, s_set
from .dims import ModuleSpec, SParam
from .ghost import exponent_table
from .newton import ghost_polygon, h_values, merge_all, np_equal_upto


@dataclass(frozen=True)
class Partition:
    n: int
    u: int
    parts: tuple[int, ...]


def partition(n: int, u: int) -> Partition:
    """Split ``n`` into ``u`` near-equal parts, even parts first and odd parts last."""
    if u < 1:
        raise ValueError(f"u must be positive, got {u}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    q = n // u
    if q % 2 == 0:
        cut = u * (q + 1) - n
        parts = [q] * cut + [q + 1] * (u - cut)
    else:
        cut = n - u * q
        parts = [q + 1] * cut + [q] * (u - cut)
    return Partition(n, u, tuple(parts))


def _regular(x: int, y: int) -> bool:
    return abs(x - y) <= 1 and (x == y or y % 2 == 1)


@dataclass(frozen=True)
class OddDominance:
    ok: bool
    witness: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_odd_dominant(phi: Mapping[int, int]) -> OddDominance:
    """Check every pair ``s < s'`` is regular: values within 1, and a change lands on an odd value.

    Consecutive pairs decide the answer; all pairs are checked as well and a
    disagreement between the two is an internal error.
    """
    keys = sorted(phi)
    bad = next(((s, t) for s, t in zip(keys, keys[1:]) if not _regular(phi[s], phi[t])), None)
    bad_all = next(((s, t) for s, t in itertools.combinations(keys, 2) if not _regular(phi[s], phi[t])), None)
    if (bad is None) != (bad_all is None):
        raise AssertionError(f"consecutive and all-pairs checks disagree on {dict(phi)}")
    return OddDominance(bad is None, bad)


def _canonical_tuple(eps: EpsilonChar, s_bar: Sequence[int]) -> tuple[int, ...]:
    allowed = set(s_set(eps))
    outside = [s for s in s_bar if s not in allowed]
    if outside:
        raise ValueError(f"entries {outside} are outside S = {sorted(allowed)}")
    out = tuple(sorted(s_bar))
    if out != tuple(s_bar):
        warnings.warn(f"tuple {tuple(s_bar)} reordered to {out}", stacklevel=3)
    return out


@dataclass(frozen=True)
class Factorization:
    ok: bool
    first_failure: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def _padded(table: np.ndarray, rows: int) -> np.ndarray:
    if table.shape[0] >= rows:
        return table[:rows]
    pad = np.zeros((rows - table.shape[0], table.shape[1]), dtype=table.dtype)
    return np.vstack([table, pad])


def factorization_check(eps: EpsilonChar, s_bar: Sequence[int], N: int) -> Factorization:
    """Compare the joint dagger exponents with partition-indexed component exponents for ``n <= N``."""
    s_bar = _canonical_tuple(eps, s_bar)
    u = len(s_bar)
    joint = exponent_table(ModuleSpec.of(eps, s_bar), N, True)
    comps = {s: exponent_table(ModuleSpec.of(eps, [s]), N, True) for s in set(s_bar)}
    rows = max([joint.shape[0]] + [c.shape[0] for c in comps.values()])
    joint = _padded(joint, rows)
    comps = {s: _padded(c, rows) for s, c in comps.items()}
    for n in range(N + 1):
        parts = partition(n, u).parts
        total = sum(comps[s][:, ni] for s, ni in zip(s_bar, parts))
        if not np.array_equal(joint[:, n], total):
            return Factorization(False, n)
    return Factorization(True)


@dataclass(frozen=True)
class ZigzagVerdict:
    holds: bool
    checked_upto: int
    failure: Optional[tuple[int, int, int]] = None  # (n, i, j), 1-based i < j

    def __bool__(self) -> bool:
        return self.holds


def zigzag_check(eps: EpsilonChar, s_bar: Sequence[int], w: WStarProfile, N: int) -> ZigzagVerdict:
    """Parity-alternating comparison of component polygon increments.

    With ``dh_i(n) = h_i(n+1) - h_i(n)`` taken from the dagger polygon of
    ``s_i`` at ``w``, require for all ``i < j``: ``dh_j(n) >= dh_i(n)`` when
    ``n`` is odd and ``dh_j(n) <= dh_i(n)`` when ``n`` is even.  Only ``n``
    with ``n + 1`` inside every component's confirmed prefix are examined.
    """
    s_bar = _canonical_tuple(eps, s_bar)
    polys = {s: ghost_polygon(ModuleSpec.of(eps, [s]), w, N, True) for s in set(s_bar)}
    limit = min(P.confirmed_upto for P in polys.values())
    h = {s: h_values(P, limit) for s, P in polys.items()}
    for n in range(limit):
        for i, j in itertools.combinations(range(len(s_bar)), 2):
            si, sj = s_bar[i], s_bar[j]
            if si == sj:
                continue
            di = h[si][n + 1] - h[si][n]
            dj = h[sj][n + 1] - h[sj][n]
            if (n % 2 == 1 and dj < di) or (n % 2 == 0 and dj > di):
                return ZigzagVerdict(False, limit, (n, i + 1, j + 1))
    return ZigzagVerdict(True, limit)


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    non_generic: tuple[int, ...] = ()
    convention: str = "s_i = s_j or s_i + s_j = k0 - 1 (mod p-1); companion b' = {a+b+1}"

    def __bool__(self) -> bool:
        return self.holds


SpecLike = Union[ModuleSpec, int]


def _flatten(eps: EpsilonChar, items: Iterable[SpecLike]) -> tuple[int, ...]:
    out: list[int] = []
    for it in items:
        if isinstance(it, ModuleSpec):
            out.extend(it.s_tuple)
        else:
            out.append(int(it))
    return tuple(out)


def theorem_condition(eps: EpsilonChar, items: Iterable[SpecLike]) -> ConditionResult:
    """Pairwise condition under which the direct sum polygon is the merge of the parts.

    Non-generic entries are reported in ``non_generic``; the verdict is still
    computed for them.
    """
    s_vals = _flatten(eps, items)
    non_generic = tuple(sorted({s for s in s_vals if not SParam(eps, s).generic}))
    m = eps.p - 1
    holds = all(a == b or (a + b - eps.k0 + 1) % m == 0
                for a, b in itertools.combinations(s_vals, 2))
    return ConditionResult(holds, non_generic)


@dataclass(frozen=True)
class CompareVerdict:
    equal: bool
    confirmed_upto: int
    diverges_at: Optional[int] = None

    def __bool__(self) -> bool:
        return self.equal

    @property
    def label(self) -> str:
        return "equal" if self.equal else "diverges"


def _as_specs(eps: EpsilonChar, items: Iterable[SpecLike]) -> list[ModuleSpec]:
    return [it if isinstance(it, ModuleSpec) else ModuleSpec.of(eps, [int(it)]) for it in items]


def direct_sum_compare(eps: EpsilonChar, items: Iterable[SpecLike], w: WStarProfile, N: int,
                       dagger: bool = False) -> CompareVerdict:
    """Compare the polygon of the direct sum with the merge of the summands' polygons.

    Both sides are truncated at ``N`` (each summand separately) and compared
    over the smaller of their confirmed prefixes.
    """
    specs = _as_specs(eps, items)
    joint = specs[0]
    for sp in specs[1:]:
        joint = joint + sp
    P = ghost_polygon(joint, w, N, dagger)
    Q = merge_all([ghost_polygon(sp, w, N, dagger) for sp in specs])
    x_max = min(P.confirmed_upto, Q.confirmed_upto)
    cmp = np_equal_upto(P, Q, x_max)
    return CompareVerdict(cmp.equal, x_max, cmp.diverges_at)


@dataclass(frozen=True)
class Witness:
    profile: WStarProfile
    diverges_at: int


def witness_search(eps: EpsilonChar, s_bar: Sequence[SpecLike], profiles: Iterable[WStarProfile],
                   N: int, dagger: bool = False) -> Optional[Witness]:
    """First profile in ``profiles`` at which the direct sum polygon is not the merge, if any.

    This is a finite scan, so ``None`` says nothing about other points.
    """
    for w in profiles:
        v = direct_sum_compare(eps, s_bar, w, N, dagger)
        if not v.equal:
            return Witness(w, v.diverges_at)
    return None
