"""Command-line front end.

Every subcommand writes one record per line (JSON by default, TSV with
``--format tsv``).  Exit codes: 0 on success, 1 when a divergence, a failed
criterion or a witness is found, 2 on invalid input.  All input is validated
before anything is printed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .chars import (EpsilonChar, WStarProfile, format_profile, format_rational, parse_profile,
                    parse_profile_family)
from .delta import delta_hull
from .dims import ModuleSpec, SParam, parse_spec
from .ghost import series
from .newton import ghost_polygon
from .zigzag import direct_sum_compare, theorem_condition, zigzag_check

JOBS_ENV = "GHOSTSLOPES_JOBS"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    eps: EpsilonChar
    command: str
    specs: tuple[ModuleSpec, ...] = ()
    profiles: tuple[WStarProfile, ...] = ()
    N: int = 0
    dagger: bool = False
    fmt: str = "json"
    jobs: int = 1
    extra: dict = field(default_factory=dict)


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ConfigError(f"{JOBS_ENV} must be an integer, got {raw!r}")
    return jobs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghostslopes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--c", type=int, default=0)
        sp.add_argument("--k0", type=int, required=True)
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--jobs", type=int, default=None,
                        help=f"worker processes (default from ${JOBS_ENV}, else 1)")
        return sp

    g = common("ghost", "dump ghost coefficients 0..N")
    g.add_argument("--spec", required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--dagger", action="store_true")

    n = common("np", "Newton polygon of the ghost series at a point")
    n.add_argument("--spec", required=True)
    n.add_argument("--profile", required=True)
    n.add_argument("--n", type=int, required=True)
    n.add_argument("--dagger", action="store_true")

    for name, help_ in (("compare", "direct sum polygon against the merge of the summands"),
                        ("zigzag", "zigzag criterion on component polygons"),
                        ("search", "scan a profile family for a divergence")):
        c = common(name, help_)
        c.add_argument("--spec", action="append", required=True,
                       help="a summand; give once with several terms to use its components")
        c.add_argument("--profile", action="append", default=[])
        c.add_argument("--family", default=None, help="e.g. anchors=origin,kb:0..20;t=1/2..5/1:step1/2")
        c.add_argument("--n", type=int, default=200)
        if name != "zigzag":
            c.add_argument("--dagger", action="store_true")

    d = common("delta", "Delta' table and its lower hull at one weight")
    d.add_argument("--s", type=int, required=True)
    d.add_argument("--kbullet", type=int, required=True)
    return parser


def _summands(eps: EpsilonChar, texts: Sequence[str]) -> tuple[ModuleSpec, ...]:
    specs = [parse_spec(eps, t) for t in texts]
    if len(specs) == 1:
        return tuple(ModuleSpec.of(eps, [s]) for s in specs[0].s_tuple)
    return tuple(specs)


def make_config(args: argparse.Namespace) -> RunConfig:
    """Validate parsed arguments; raises ``ValueError`` with a diagnostic."""
    eps = EpsilonChar.of(args.p, args.c, args.k0)
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {jobs}")
    cmd = args.command
    base = dict(eps=eps, command=cmd, fmt=args.format, jobs=jobs)
    if cmd == "delta":
        sp = SParam(eps, args.s)
        return RunConfig(**base, extra={"sp": sp, "k": eps.weight_kb(args.kbullet)})
    if args.n < 0 or (cmd != "ghost" and args.n < 2):
        raise ConfigError(f"--n must be {'>= 0' if cmd == 'ghost' else '>= 2'}, got {args.n}")
    if cmd == "ghost":
        return RunConfig(**base, specs=(parse_spec(eps, args.spec),), N=args.n, dagger=args.dagger)
    if cmd == "np":
        return RunConfig(**base, specs=(parse_spec(eps, args.spec),),
                         profiles=(parse_profile(eps, args.profile),), N=args.n, dagger=args.dagger)
    specs = _summands(eps, args.spec)
    profiles = [parse_profile(eps, t) for t in args.profile]
    if args.family is not None:
        profiles += parse_profile_family(eps, args.family)
    if cmd == "zigzag":
        for sp in specs:
            if len(sp.components) != 1 or sp.rank != 1:
                raise ConfigError("zigzag takes primitive summands only")
    if cmd in ("compare", "zigzag") and not profiles:
        raise ConfigError("no profiles given; use --profile or --family")
    return RunConfig(**base, specs=specs, profiles=tuple(profiles), N=args.n,
                     dagger=getattr(args, "dagger", False))


# work units, module-level so that they pickle

def _compare_unit(item):
    eps, specs, w, N, dagger = item
    return direct_sum_compare(eps, specs, w, N, dagger)


def _zigzag_unit(item):
    eps, s_bar, w, N = item
    return zigzag_check(eps, s_bar, w, N), direct_sum_compare(eps, s_bar, w, N, True)


def _run(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _s_list(specs: Iterable[ModuleSpec]) -> list[int]:
    return [s for sp in specs for s in sp.s_tuple]


def _emit(records: list[dict], fmt: str, out, columns: Optional[Sequence[str]] = None) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r, separators=(",", ":"), ensure_ascii=False) + "\n")
        return
    cols = list(columns or (records[0].keys() if records else []))
    out.write("\t".join(cols) + "\n")
    for r in records:
        out.write("\t".join(_tsv_cell(r.get(c)) for c in cols) + "\n")


def _tsv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return ",".join(_tsv_cell(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def cmd_ghost(cfg: RunConfig, out) -> int:
    gs = series(cfg.specs[0], cfg.N, cfg.dagger)
    if cfg.fmt == "json":
        _emit([c.to_json() for c in gs.coeffs], "json", out)
    else:
        rows = [{"n": c.n, "k": k, "e": e} for c in gs.coeffs for k, e in sorted(c.factors.items())]
        _emit(rows, "tsv", out, ("n", "k", "e"))
    return 0


def cmd_np(cfg: RunConfig, out) -> int:
    poly = ghost_polygon(cfg.specs[0], cfg.profiles[0], cfg.N, cfg.dagger)
    if cfg.fmt == "json":
        rec = {"spec": str(cfg.specs[0]), "profile": format_profile(cfg.profiles[0])}
        rec.update(poly.to_json())
        _emit([rec], "json", out)
    else:
        rows = [{"x": x, "y": format_rational(y)} for x, y in poly.vertices]
        _emit(rows, "tsv", out, ("x", "y"))
    return 0


def cmd_compare(cfg: RunConfig, out) -> int:
    cond = theorem_condition(cfg.eps, cfg.specs)
    items = [(cfg.eps, cfg.specs, w, cfg.N, cfg.dagger) for w in cfg.profiles]
    verdicts = _run(_compare_unit, items, cfg.jobs)
    s = _s_list(cfg.specs)
    records = [{"s": s, "profile": format_profile(w), "verdict": v.label,
                "confirmed_upto": v.confirmed_upto, "diverges_at": v.diverges_at,
                "condition": cond.holds, "convention": cond.convention}
               for w, v in zip(cfg.profiles, verdicts)]
    _emit(records, cfg.fmt, out)
    return 0 if all(v.equal for v in verdicts) else 1


def cmd_zigzag(cfg: RunConfig, out) -> int:
    s_bar = tuple(sorted(_s_list(cfg.specs)))
    items = [(cfg.eps, s_bar, w, cfg.N) for w in cfg.profiles]
    results = _run(_zigzag_unit, items, cfg.jobs)
    records = []
    for w, (z, c) in zip(cfg.profiles, results):
        records.append({"s": list(s_bar), "profile": format_profile(w),
                        "verdict": "holds" if z.holds else "fails",
                        "failure": list(z.failure) if z.failure else None,
                        "checked_upto": z.checked_upto, "compare": c.label,
                        "agree": z.holds == c.equal})
    _emit(records, cfg.fmt, out)
    return 0 if all(z.holds for z, _ in results) else 1


def cmd_search(cfg: RunConfig, out) -> int:
    cond = theorem_condition(cfg.eps, cfg.specs)
    items = [(cfg.eps, cfg.specs, w, cfg.N, cfg.dagger) for w in cfg.profiles]
    verdicts = _run(_compare_unit, items, cfg.jobs)
    hit = next(((w, v) for w, v in zip(cfg.profiles, verdicts) if not v.equal), None)
    rec = {"s": _s_list(cfg.specs), "scanned": len(items), "condition": cond.holds,
           "convention": cond.convention}
    if hit is None:
        rec.update(witness="none")
    else:
        rec.update(witness=format_profile(hit[0]), diverges_at=hit[1].diverges_at)
    _emit([rec], cfg.fmt, out)
    return 0 if hit is None else 1


def cmd_delta(cfg: RunConfig, out) -> int:
    table = delta_hull(cfg.extra["sp"], cfg.extra["k"])
    rows = [{"l": l, "delta": format_rational(v), "hull": format_rational(h)} for l, v, h in table.rows()]
    _emit(rows, cfg.fmt, out, ("l", "delta", "hull"))
    return 0


COMMANDS = {"ghost": cmd_ghost, "np": cmd_np, "compare": cmd_compare, "zigzag": cmd_zigzag,
            "search": cmd_search, "delta": cmd_delta}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = make_config(args)
    except ValueError as e:
        print(f"ghostslopes: error: {e}", file=sys.stderr)
        return 2
    return COMMANDS[cfg.command](cfg, out)


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
