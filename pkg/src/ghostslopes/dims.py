"""Dimension formulas for primitive modules and their direct sums.

A primitive module is indexed by ``s`` in ``[0, p-2]``; a direct sum with
multiplicities is a :class:`ModuleSpec`.  For a weight with index
``kb = k_bullet``:

* ``d_iw = 2*kb + 2 - 2*delta_s``
* ``d_ur = floor((kb - t1)/(p+1)) + floor((kb - t2)/(p+1)) + 2``

and the dagger normalization adds ``delta_s`` to ``d_ur`` and ``2*delta_s``
to ``d_iw``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .chars import EpsilonChar, WeightK, companion_pair, iota, iota_inv


@dataclass(frozen=True, order=False)
class SParam:
    eps: EpsilonChar
    s: int

    def __post_init__(self) -> None:
        if not 0 <= self.s <= self.eps.p - 2:
            raise ValueError(f"s must lie in [0, {self.eps.p - 2}], got {self.s}")

    @cached_property
    def a(self) -> int:
        return (self.eps.k0 - 2 - 2 * self.s) % (self.eps.p - 1)

    @cached_property
    def b(self) -> int:
        return iota(self.eps, self.s)[1]

    @cached_property
    def delta(self) -> int:
        p = self.eps.p
        return (self.s + (self.a + self.s) % (p - 1)) // (p - 1)

    @cached_property
    def t1(self) -> int:
        return self._t[0]

    @cached_property
    def t2(self) -> int:
        return self._t[1]

    @cached_property
    def _t(self) -> tuple[int, int]:
        p, s, a, d = self.eps.p, self.s, self.a, self.delta
        if a + s < p - 1:
            return s + d, a + s + d + 2
        return (a + s) % (p - 1) + d + 1, s + d + 1

    @property
    def generic(self) -> bool:
        return 1 <= self.a <= self.eps.p - 4


def table_row(sp: SParam) -> tuple[int, int, int]:
    """``(delta, t1, t2)`` read off the four-range table in ``s``."""
    p, k0, s = sp.eps.p, sp.eps.k0, sp.s
    if s <= (k0 - 2) // 2:
        return 0, s, k0 - s
    if s <= k0 - 2:
        return 0, k0 - s - 1, s + 1
    if s <= (k0 - 2 + p - 1) // 2:
        return 1, s + 1, p + k0 - s
    return 1, k0 - s + p - 1, s + 2


def beta(sp: SParam, n: int) -> int:
    if n % 2 == 0:
        return sp.t1
    return sp.t2 - (sp.eps.p + 1) // 2


def _kb(sp_or_eps, k) -> int:
    return k.kb if isinstance(k, WeightK) else int(k)


def d_iw(sp: SParam, k: WeightK | int) -> int:
    """Iwahori dimension; ``k`` may be a :class:`WeightK` or a bare k_bullet."""
    return 2 * _kb(sp, k) + 2 - 2 * sp.delta


def d_ur(sp: SParam, k: WeightK | int) -> int:
    kb = _kb(sp, k)
    q = sp.eps.p + 1
    return (kb - sp.t1) // q + (kb - sp.t2) // q + 2


def d_dagger(sp: SParam, k: WeightK | int) -> tuple[int, int]:
    """``(d_ur + delta, 2*kb + 2)``."""
    kb = _kb(sp, k)
    return d_ur(sp, kb) + sp.delta, 2 * kb + 2


@dataclass(frozen=True)
class ModuleSpec:
    """A direct sum of primitive modules, kept sorted by ``s`` with merged multiplicities."""

    eps: EpsilonChar
    components: tuple[tuple[SParam, int], ...] = field(default=())

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for sp, mult in self.components:
            if isinstance(sp, int):
                sp = SParam(self.eps, sp)
            if sp.eps != self.eps:
                raise ValueError("component belongs to a different character")
            if mult < 1:
                raise ValueError(f"multiplicity must be positive, got {mult}")
            merged[sp.s] = merged.get(sp.s, 0) + mult
        if not merged:
            raise ValueError("a module spec needs at least one component")
        canon = tuple((SParam(self.eps, s), merged[s]) for s in sorted(merged))
        object.__setattr__(self, "components", canon)

    @classmethod
    def of(cls, eps: EpsilonChar, s_values: Iterable[int]) -> "ModuleSpec":
        """Spec with one copy of ``H(s)`` per listed ``s`` (repeats accumulate)."""
        return cls(eps, tuple((s, 1) for s in s_values))

    def __add__(self, other: "ModuleSpec") -> "ModuleSpec":
        if other.eps != self.eps:
            raise ValueError("cannot add specs for different characters")
        return ModuleSpec(self.eps, self.components + other.components)

    @property
    def s_tuple(self) -> tuple[int, ...]:
        """The nondecreasing tuple of ``s`` values, repeated by multiplicity."""
        return tuple(sp.s for sp, m in self.components for _ in range(m))

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.components)

    @property
    def delta_total(self) -> int:
        return sum(m * sp.delta for sp, m in self.components)

    def __str__(self) -> str:
        return "+".join(f"s:{sp.s}" + (f"x{m}" if m > 1 else "") for sp, m in self.components)


def spec_dims(spec: ModuleSpec, k: WeightK | int, dagger: bool = False) -> tuple[int, int]:
    """Multiplicity-weighted ``(d_ur, d_iw)`` of a direct sum."""
    kb = _kb(spec, k)
    ur = iw = 0
    for sp, m in spec.components:
        if dagger:
            u, i = d_dagger(sp, kb)
        else:
            u, i = d_ur(sp, kb), d_iw(sp, kb)
        ur += m * u
        iw += m * i
    return ur, iw


def spec_dims_array(spec: ModuleSpec, kbs: np.ndarray, dagger: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """:func:`spec_dims` over an integer array of k_bullet values."""
    kbs = kbs.astype(np.int64)
    q = spec.eps.p + 1
    ur = np.zeros_like(kbs)
    iw = np.zeros_like(kbs)
    for sp, m in spec.components:
        u = (kbs - sp.t1) // q + (kbs - sp.t2) // q + 2
        i = 2 * kbs + 2 - 2 * sp.delta
        if dagger:
            u = u + sp.delta
            i = i + 2 * sp.delta
        ur += m * u
        iw += m * i
    return ur, iw


def spec_from_rbar(eps: EpsilonChar, parts: Sequence[tuple[int, int, bool, int]]) -> ModuleSpec:
    """Expand ``(a, b, split, mult)`` types into a spec of primitive components.

    A split type contributes both ``(a, b)`` and its companion
    ``({p-3-a}, {a+b+1})`` with the same multiplicity.
    """
    comps: list[tuple[int, int]] = []
    for a, b, split, mult in parts:
        comps.append((iota_inv(eps, a, b), mult))
        if split:
            a2, b2 = companion_pair(eps, a, b)
            comps.append((iota_inv(eps, a2, b2), mult))
    return ModuleSpec(eps, tuple(comps))


_TERM_S = re.compile(r"^s:(\d+)(?:x(\d+))?$")
_TERM_AB = re.compile(r"^ab:(\d+),(\d+)(?:,(split|nonsplit))?(?:x(\d+))?$")


def parse_spec(eps: EpsilonChar, text: str) -> ModuleSpec:
    """Parse ``s:3x2+s:0`` or ``ab:2,3,split`` style spec strings (terms joined by ``+``)."""
    comps: list[tuple[int, int]] = []
    rbar: list[tuple[int, int, bool, int]] = []
    for term in text.replace(" ", "").split("+"):
        m = _TERM_S.match(term)
        if m:
            comps.append((int(m.group(1)), int(m.group(2) or 1)))
            continue
        m = _TERM_AB.match(term)
        if m:
            rbar.append((int(m.group(1)), int(m.group(2)), m.group(3) == "split", int(m.group(4) or 1)))
            continue
        raise ValueError(f"bad spec term {term!r}; expected 's:<s>[x<m>]' or 'ab:<a>,<b>[,split][x<m>]'")
    spec = ModuleSpec(eps, tuple(comps)) if comps else None
    if rbar:
        extra = spec_from_rbar(eps, rbar)
        spec = extra if spec is None else spec + extra
    assert spec is not None
    return spec
