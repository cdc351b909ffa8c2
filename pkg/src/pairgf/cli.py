"""Command line front end.

Subcommands
-----------
fig-r0     origin densities rho0 / rho_f0 / rho_c0 / rho_e0 over an E grid
ldos       density components over an r grid at fixed E, or an E grid at
           fixed r
g0         origin density and its cutoff Hilbert transform (needs --cutoff-w)
selfcheck  run the built-in oracle battery, emit a JSON report

Outputs are CSV (RFC quoting, ``#``-prefixed header block) or JSON
({"header": ..., "rows": [...]}) and are byte-identical across runs with
the same configuration.  ``--plot`` renders a PNG next to the data file.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Thread count for grid evaluation comes from ``--threads`` or the
``PAIRGF_THREADS`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__, ldos
from .errors import ConfigError, CutoffRequired, PairGFError
from .pair import g0_dos, g0_real
from .quadrature import QuadratureSpec
from .selfcheck import run_selfcheck

_UNITS = {
    "energy": "Hartree",
    "length": "r_B",
    "pair_density": "r_B^-6",
    "single_density": "r_B^-3",
}


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


@dataclass
class RunConfig:
    """Echoable record of one CLI invocation."""

    command: str
    energies: list = field(default_factory=list)
    r_values: list = field(default_factory=list)
    cutoff_w: float | None = None
    l_max: int = 40
    rel_tol: float = 1e-7
    abs_tol: float = 1e-14
    c_k: float = 1.0
    c_K: float = 0.25
    out: str | None = None
    format: OutputFormat = OutputFormat.CSV
    plot: bool = False
    threads: int = 1
    split: bool = False
    pseudo: bool = False
    strict: bool = False

    def echo(self) -> dict:
        d = {
            "command": self.command,
            "c_K": self.c_K,
            "c_k": self.c_k,
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
        }
        if self.energies:
            d["energies"] = [self.energies[0], self.energies[-1],
                             len(self.energies)]
        if self.r_values:
            d["r_grid"] = [self.r_values[0], self.r_values[-1],
                           len(self.r_values)]
        if self.cutoff_w is not None:
            d["cutoff_w"] = self.cutoff_w
        return d


def _grid(lo: float, hi: float, n: int, log: bool) -> list:
    if n < 1:
        raise ConfigError("grid must be nonempty")
    if n == 1:
        return [lo]
    if hi <= lo:
        raise ConfigError("grid must be strictly increasing")
    if log:
        if lo <= 0:
            raise ConfigError("log grid requires positive bounds")
        ratio = (hi / lo) ** (1.0 / (n - 1))
        return [lo * ratio ** i for i in range(n)]
    step = (hi - lo) / (n - 1)
    return [lo + step * i for i in range(n)]


def _parallel_map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_output(cfg: RunConfig, columns, rows):
    header = {
        "generator": f"pairgf {__version__}",
        "units": _UNITS,
        "config": cfg.echo(),
    }
    if cfg.format is OutputFormat.CSV:
        buf = io.StringIO()
        buf.write(f"# generator: pairgf {__version__}\n")
        buf.write(f"# units: {json.dumps(_UNITS, sort_keys=True)}\n")
        buf.write(f"# config: {json.dumps(cfg.echo(), sort_keys=True)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        text = buf.getvalue()
    else:
        payload = {
            "header": header,
            "rows": [{c: row[c] for c in columns} for row in rows],
        }
        text = json.dumps(payload, indent=1, sort_keys=False) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _maybe_plot(cfg: RunConfig, rows, renderer):
    if not cfg.plot:
        return
    if not cfg.out:
        raise ConfigError("--plot requires --out to name the figure file")
    from . import plotting
    base, _ = os.path.splitext(cfg.out)
    renderer(rows, base + ".png")


# =============================================================================
# SUBCOMMANDS
# =============================================================================

def cmd_fig_r0(cfg: RunConfig):
    """Origin densities over the energy grid."""
    spec = QuadratureSpec(abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol,
                          max_depth=24)

    def point(E):
        rho0 = g0_dos(E, c_K=cfg.c_K, c_k=cfg.c_k, spec=spec)
        rho_f0 = E * E / (16.0 * math.pi ** 3) if E > 0 else 0.0
        if E > 0:
            refs = ldos.rho_single_refs(E)
            rho_c0, rho_e0 = refs["rho_c0"], refs["rho_e0"]
        else:
            rho_c0 = rho_e0 = 0.0
        return {"E": E, "rho0": rho0, "rho_f0": rho_f0,
                "rho_c0": rho_c0, "rho_e0": rho_e0}

    rows = _parallel_map(point, cfg.energies, cfg.threads)
    columns = ["E", "rho0", "rho_f0", "rho_c0", "rho_e0"]
    _write_output(cfg, columns, rows)
    from .plotting import render_fig_r0
    _maybe_plot(cfg, rows, render_fig_r0)
    return rows


_LDOS_COLUMNS = ["r", "E", "rho_plus", "rho_minus", "rho_even", "rho_odd",
                 "rho_total", "rho_spinless"]


def cmd_ldos(cfg: RunConfig):
    """Density components on an (r, E) product grid (one axis swept)."""
    spec = QuadratureSpec(abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol,
                          max_depth=24)

    def point(args):
        r, E = args
        pt = ldos.rho_point(r, E, c_K=cfg.c_K, c_k=cfg.c_k, spec=spec)
        return {c: getattr(pt, c) for c in _LDOS_COLUMNS}

    tasks = [(r, E) for E in cfg.energies for r in cfg.r_values]
    rows = _parallel_map(point, tasks, cfg.threads)
    columns = list(_LDOS_COLUMNS)
    if cfg.split:
        columns = ["r", "E", "rho_even", "rho_odd"]
    elif cfg.pseudo:
        columns = ["r", "E", "rho_minus"]
    _write_output(cfg, columns, rows)
    from .plotting import render_ldos
    _maybe_plot(cfg, rows, render_ldos)
    return rows


def cmd_g0(cfg: RunConfig):
    """Origin density and cutoff Hilbert transform over the energy grid."""
    if cfg.cutoff_w is None:
        raise CutoffRequired("g0 needs --cutoff-w (no universal default)")
    spec = QuadratureSpec(abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol,
                          max_depth=24)

    def point(E):
        return {
            "E": E,
            "rho0": g0_dos(E, c_K=cfg.c_K, c_k=cfg.c_k, spec=spec),
            "re_g0": g0_real(E, cfg.cutoff_w, c_K=cfg.c_K, c_k=cfg.c_k),
        }

    rows = _parallel_map(point, cfg.energies, cfg.threads)
    _write_output(cfg, ["E", "rho0", "re_g0"], rows)
    from .plotting import render_g0
    _maybe_plot(cfg, rows, render_g0)
    return rows


def cmd_selfcheck(cfg: RunConfig) -> dict:
    """Oracle battery; exit nonzero on any failed check."""
    report = run_selfcheck(strict=cfg.strict)
    text = json.dumps(report, indent=1) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report


# =============================================================================
# ARGUMENT PARSING
# =============================================================================

def _add_common(p):
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--plot", action="store_true",
                   help="render a PNG next to the output file")
    p.add_argument("--rel-tol", type=float, default=1e-7)
    p.add_argument("--abs-tol", type=float, default=1e-14)
    p.add_argument("--c-k", type=float, default=1.0,
                   help="relative-motion kinetic coefficient "
                        "(expert override, e.g. 0.5 for hydrogen-like)")
    p.add_argument("--c-big-k", type=float, default=0.25,
                   help="center-of-mass kinetic coefficient")
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("PAIRGF_THREADS", "1")))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pairgf",
        description="Green's function and LDOS of a repulsive electron pair")
    ap.add_argument("--version", action="version",
                    version=f"pairgf {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig-r0", help="origin densities over an energy grid")
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--log", action="store_true")
    _add_common(p)

    p = sub.add_parser("ldos", help="LDOS components over r or E")
    p.add_argument("--energy", type=float, help="fixed energy (r sweep)")
    p.add_argument("--r", type=float, help="fixed distance (E sweep)")
    p.add_argument("--rmin", type=float, default=0.1)
    p.add_argument("--rmax", type=float)
    p.add_argument("--emin", type=float)
    p.add_argument("--emax", type=float)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--log", action="store_true")
    p.add_argument("--split", action="store_true",
                   help="emit only the even/odd columns")
    p.add_argument("--pseudo", action="store_true",
                   help="emit only the exchange (pseudo) component")
    _add_common(p)

    p = sub.add_parser("g0", help="origin density and Re g0 with a cutoff")
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--log", action="store_true")
    p.add_argument("--cutoff-w", type=float,
                   help="band cutoff W for the Hilbert transform")
    _add_common(p)

    p = sub.add_parser("selfcheck", help="run the oracle battery")
    p.add_argument("--strict", action="store_true",
                   help="include the coincidence extrapolation check")
    p.add_argument("--out", help="write the JSON report to a file")

    return ap


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("out", "rel_tol", "abs_tol", "threads", "plot",
                 "split", "pseudo", "strict", "cutoff_w"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "format"):
        cfg.format = OutputFormat(args.format)
    if hasattr(args, "c_k"):
        cfg.c_k = args.c_k
        cfg.c_K = args.c_big_k
    if cfg.threads < 1:
        raise ConfigError("--threads must be >= 1")

    if args.command == "ldos":
        if getattr(args, "split", False) and getattr(args, "pseudo", False):
            raise ConfigError("--split and --pseudo are mutually exclusive")
        if args.energy is not None and args.r is None:
            if args.rmax is None:
                raise ConfigError("r sweep needs --rmax")
            cfg.energies = [args.energy]
            cfg.r_values = _grid(args.rmin, args.rmax, args.n, args.log)
        elif args.r is not None and args.energy is None:
            if args.emin is None or args.emax is None:
                raise ConfigError("E sweep needs --emin and --emax")
            cfg.r_values = [args.r]
            cfg.energies = _grid(args.emin, args.emax, args.n, args.log)
        else:
            raise ConfigError("ldos needs exactly one of --energy / --r")
        if any(r <= 0 for r in cfg.r_values):
            raise ConfigError("distances must be positive")
    elif args.command in ("fig-r0", "g0"):
        cfg.energies = _grid(args.emin, args.emax, args.n, args.log)
    return cfg


_DISPATCH = {
    "fig-r0": cmd_fig_r0,
    "ldos": cmd_ldos,
    "g0": cmd_g0,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = _config_from_args(args)
        if args.command == "selfcheck":
            report = cmd_selfcheck(cfg)
            return 0 if report["passed"] else 3
        _DISPATCH[args.command](cfg)
        return 0
    except (ConfigError, CutoffRequired) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PairGFError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
