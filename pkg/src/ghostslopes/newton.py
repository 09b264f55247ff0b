"""Newton polygons of valuation sequences over exact rationals.

A polygon is stored as its base ordinate plus one slope per unit step in x,
sorted.  Vertices are derived from the places where the slope changes.

Polygons built from a truncated series carry ``truncated=True`` and a
``confirmed_upto`` abscissa: the part over ``[0, confirmed_upto]`` agrees
with the polygon at twice the truncation, the rest is provisional.
Comparisons beyond the confirmed prefix are refused.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .chars import WStarProfile, format_rational
from .dims import ModuleSpec
from .ghost import eval_split, series


class UnconfirmedRangeError(ValueError):
    """A comparison reached past the confirmed prefix of a polygon."""


@dataclass(frozen=True)
class NewtonPolygon:
    base: Fraction
    slopes: tuple[Fraction, ...] = ()
    confirmed_upto: Optional[int] = None
    truncated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", Fraction(self.base))
        slopes = tuple(s if type(s) is Fraction else Fraction(s) for s in self.slopes)
        if any(a > b for a, b in zip(slopes, slopes[1:])):
            raise ValueError("slopes must be nondecreasing")
        object.__setattr__(self, "slopes", slopes)
        if self.confirmed_upto is None:
            object.__setattr__(self, "confirmed_upto", len(slopes))
        elif not 0 <= self.confirmed_upto <= len(slopes):
            raise ValueError("confirmed_upto outside the polygon")

    @property
    def length(self) -> int:
        return len(self.slopes)

    @property
    def vertices(self) -> list[tuple[int, Fraction]]:
        out = [(0, self.base)]
        y = self.base
        for x, s in enumerate(self.slopes, start=1):
            y += s
            if x == len(self.slopes) or self.slopes[x] != s:
                out.append((x, y))
        return out

    def slope_multiset(self) -> list[tuple[Fraction, int]]:
        out: list[tuple[Fraction, int]] = []
        for s in self.slopes:
            if out and out[-1][0] == s:
                out[-1] = (s, out[-1][1] + 1)
            else:
                out.append((s, 1))
        return out

    def to_json(self) -> dict:
        return {
            "base": format_rational(self.base),
            "vertices": [[x, format_rational(y)] for x, y in self.vertices],
            "slopes": [format_rational(s) for s in self.slopes],
            "confirmed_upto": self.confirmed_upto,
        }


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Vertices of the lower convex hull (monotone chain, collinear points dropped)."""
    hull: list = []
    for pt in sorted(points):
        if hull and hull[-1][0] == pt[0]:
            continue  # sorted by y too, keep the lowest
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def np_from_points(points: Sequence[tuple[int, Fraction]], confirmed_upto: Optional[int] = None,
                   truncated: bool = False) -> NewtonPolygon:
    """Newton polygon of the points ``(n, v_n)`` for ``n = 0..N``."""
    if not points:
        raise ValueError("cannot build a Newton polygon from no points")
    ys = [Fraction(y) for _, y in points]
    if [int(x) for x, _ in points] != list(range(len(ys))):
        raise ValueError("points must sit at x = 0, 1, ..., N")
    den = lcm(*(y.denominator for y in ys))
    return _np_from_scaled([y.numerator * (den // y.denominator) for y in ys], den,
                           confirmed_upto, truncated)


def _np_from_scaled(ys: Sequence[int], den: int, confirmed_upto: Optional[int] = None,
                    truncated: bool = False) -> NewtonPolygon:
    """Polygon of the points ``(n, ys[n] / den)`` with the hull taken over integers."""
    hull = lower_hull(list(enumerate(ys)))
    slopes: list[Fraction] = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        slopes.extend([Fraction(y1 - y0, (x1 - x0) * den)] * (x1 - x0))
    return NewtonPolygon(Fraction(hull[0][1], den), tuple(slopes), confirmed_upto, truncated)


def np_from_values(values: Sequence[Fraction], **kw) -> NewtonPolygon:
    return np_from_points(list(enumerate(values)), **kw)


def _certain_bound(a: NewtonPolygon) -> Fraction | float:
    """Largest slope value all of whose occurrences in the true polygon are known."""
    if not a.truncated and a.confirmed_upto == a.length:
        return float("inf")
    if a.confirmed_upto == 0:
        return float("-inf")
    return a.slopes[a.confirmed_upto - 1]


def merge(a: NewtonPolygon, b: NewtonPolygon) -> NewtonPolygon:
    """``a # b``: bases add, slope multisets are united.

    The merged confirmed prefix covers exactly the slopes not exceeding the
    smallest slope at which either operand stops being certain.
    """
    slopes = tuple(sorted(a.slopes + b.slopes))
    bound = min(_certain_bound(a), _certain_bound(b))
    if bound == float("inf"):
        confirmed = len(slopes)
    elif bound == float("-inf"):
        confirmed = 0
    else:
        confirmed = bisect_right(slopes, bound)
    return NewtonPolygon(a.base + b.base, slopes, confirmed, a.truncated or b.truncated)


def merge_all(polys: Sequence[NewtonPolygon]) -> NewtonPolygon:
    if not polys:
        raise ValueError("nothing to merge")
    out = polys[0]
    for q in polys[1:]:
        out = merge(out, q)
    return out


def stretch(a: NewtonPolygon, m: int) -> NewtonPolygon:
    """Scale ``a`` by ``m`` in both directions."""
    if m < 1:
        raise ValueError(f"stretch factor must be >= 1, got {m}")
    slopes = tuple(s for s in a.slopes for _ in range(m))
    return NewtonPolygon(a.base * m, slopes, a.confirmed_upto * m, a.truncated)


def h_values(a: NewtonPolygon, upto: int) -> list[Fraction]:
    """Ordinates of the polygon at ``x = 0..upto``."""
    if not 0 <= upto <= a.length:
        raise IndexError(f"x = {upto} is beyond the polygon (length {a.length})")
    out = [a.base]
    for s in a.slopes[:upto]:
        out.append(out[-1] + s)
    return out


@dataclass(frozen=True)
class Comparison:
    equal: bool
    diverges_at: Optional[int] = None
    x_max: int = 0

    def __bool__(self) -> bool:
        return self.equal


def np_equal_upto(a: NewtonPolygon, b: NewtonPolygon, x_max: int) -> Comparison:
    """Compare two polygons over ``[0, x_max]``, reporting the first abscissa where they split."""
    limit = min(a.confirmed_upto, b.confirmed_upto)
    if x_max > limit:
        raise UnconfirmedRangeError(f"x_max = {x_max} exceeds the confirmed range {limit}")
    if a.base != b.base:
        return Comparison(False, 0, x_max)
    for i in range(x_max):
        if a.slopes[i] != b.slopes[i]:
            return Comparison(False, i + 1, x_max)
    return Comparison(True, None, x_max)


def confirmed_from_doubling(short: NewtonPolygon, long: NewtonPolygon) -> int:
    """Largest shared vertex abscissa up to which both vertex lists coincide."""
    confirmed = 0
    for va, vb in zip(short.vertices, long.vertices):
        if va != vb:
            break
        confirmed = va[0]
    return confirmed


def truncated_polygon(values: Sequence[Fraction], N: int) -> NewtonPolygon:
    """Polygon of ``values[:N+1]`` confirmed against the polygon of all of ``values``."""
    if len(values) < N + 1:
        raise ValueError("need at least N+1 values")
    ys = [Fraction(v) for v in values]
    den = lcm(*(y.denominator for y in ys))
    return _truncated_scaled([y.numerator * (den // y.denominator) for y in ys], den, N)


def _truncated_scaled(ys: Sequence[int], den: int, N: int) -> NewtonPolygon:
    short = _np_from_scaled(ys[:N + 1], den)
    long = _np_from_scaled(ys, den)
    c = confirmed_from_doubling(short, long)
    return NewtonPolygon(short.base, short.slopes, c, truncated=True)


def ghost_polygon(spec: ModuleSpec, w: WStarProfile, N: int, dagger: bool = False) -> NewtonPolygon:
    """Newton polygon of the ghost series at ``w`` truncated at ``N``, confirmed at ``2N``."""
    T, I = eval_split(series(spec, 2 * N, dagger), w)
    num, den = w.t.numerator, w.t.denominator
    ys = (T * num + I * den).tolist()
    return _truncated_scaled(ys, den, N)


def confirmed_prefix(spec: ModuleSpec, w: WStarProfile, N: int, dagger: bool = False) -> int:
    if N < 2:
        raise ValueError(f"truncation must be >= 2, got {N}")
    return ghost_polygon(spec, w, N, dagger).confirmed_upto
