"""
Batch command-line front end.

Every subcommand writes one table (CSV with a header row, or JSON) to
``--out`` (``-`` for stdout). Failures print a one-line JSON error record
to stderr and exit with 2 (bad parameters) or 1 (numerical failure).

Examples::

    cyclewalk simulate --kind quantum --n-sites 10 --theta hadamard \\
        --coin symmetric+ --x0 6 --steps 100 --out dist.csv
    cyclewalk entropy --kind classical --n-sites 10 --steps 2000
    cyclewalk distance-sweep --max-sites 60 --steps 200
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Optional, Sequence

import numpy as np

from . import analysis, crw, oracle, qrw, scaling
from .distance import distance_sweep
from .errors import ComputationError, DomainError, FitError
from .qrw import CoinSpec

THETA_PRESETS = {"hadamard": qrw.HADAMARD}

_PI_RE = re.compile(r"^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Parse ``0.5``, ``pi/6``, ``5pi/12``, ``5*pi/12`` or ``hadamard``."""
    t = text.strip().lower()
    if t in THETA_PRESETS:
        return THETA_PRESETS[t]
    m = _PI_RE.match(t)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def parse_grid(text: str) -> list[int]:
    """``10:200:10`` (inclusive range) or ``10,20,40``."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            start, stop = parts[0], parts[1]
            stride = parts[2] if len(parts) > 2 else 1
            if stride < 1:
                raise ValueError
            return list(range(start, stop + 1, stride))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a size grid: {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _coin_from_args(args) -> CoinSpec:
    if args.coin == "bloch":
        return CoinSpec.bloch(args.theta, args.bloch_theta, args.bloch_phi)
    return CoinSpec(theta=args.theta, initial=args.coin)


def _x0(args, n_sites: int) -> int:
    return n_sites // 2 if args.x0 is None else args.x0


def _steps(args, kind: str, n_sites: int) -> int:
    return analysis.default_n_max(kind, n_sites) if args.steps is None else args.steps


class Table:
    """Columns plus rows, with run parameters carried into JSON output."""

    def __init__(self, command: str, columns: Sequence[str], rows, params: dict):
        self.command = command
        self.columns = list(columns)
        self.rows = [[_plain(v) for v in row] for row in rows]
        self.params = params

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "params": self.params,
            "columns": self.columns,
            "rows": self.rows,
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


def _emit(table: Table, fmt: str, out: str) -> None:
    text = table.to_json() if fmt == "json" else table.to_csv()
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _walk_params(args, n_sites, x0, steps, coin) -> dict:
    p = {"kind": args.kind, "n_sites": n_sites, "x0": x0, "steps": steps}
    if args.kind == "quantum":
        p["coin"] = coin.describe()
    return p


def cmd_simulate(args) -> Table:
    n, coin = args.n_sites, _coin_from_args(args)
    x0, steps = _x0(args, n), _steps(args, args.kind, n)
    rows = []
    if args.kind == "quantum":
        state = qrw.make_initial_state(n, coin, x0)
        dists = qrw.iter_distributions(state, coin.theta, steps)
        p0 = qrw.position_distribution(state).probs
    else:
        start = crw.delta(n, x0)
        dists = crw.iter_probabilities(start, steps)
        p0 = start.probs
    for step, p in enumerate([p0], start=0):
        rows.extend([step, x, p[x]] for x in range(n))
    for step, p in enumerate(dists, start=1):
        rows.extend([step, x, p[x]] for x in range(n))
    return Table("simulate", ["step", "site", "probability"], rows, _walk_params(args, n, x0, steps, coin))


def cmd_entropy(args) -> Table:
    n, coin = args.n_sites, _coin_from_args(args)
    x0, steps = _x0(args, n), _steps(args, args.kind, n)
    series = analysis.entropy_series(args.kind, n, steps, coin, x0)
    rows = zip(series.steps.tolist(), series.values.tolist())
    return Table("entropy", ["step", "entropy_bits"], rows, _walk_params(args, n, x0, steps, coin))


def _meetings(args, n, coin, x0, steps):
    trace = analysis.trace_walk(args.kind, n, steps, coin, x0)
    return trace, analysis.detect_meeting_points(
        trace.probe, n, x0, rel_prominence=args.rel_prominence
    )


def cmd_meetings(args) -> Table:
    n, coin = args.n_sites, _coin_from_args(args)
    x0, steps = _x0(args, n), _steps(args, args.kind, n)
    _, meet = _meetings(args, n, coin, x0, steps)
    params = _walk_params(args, n, x0, steps, coin)
    params["rel_prominence"] = args.rel_prominence
    return Table("meetings", ["n_meet"], ([m] for m in meet.steps.tolist()), params)


def cmd_meet_entropy(args) -> Table:
    """Meeting points come from the quantum walk; ``--kind`` picks whose entropy is averaged."""
    n, coin = args.n_sites, _coin_from_args(args)
    x0 = _x0(args, n)
    steps = _steps(args, "quantum", n)
    q = analysis.trace_walk("quantum", n, steps, coin, x0)
    meet = analysis.detect_meeting_points(q.probe, n, x0, rel_prominence=args.rel_prominence)
    if len(meet) == 0:
        raise ComputationError("no meeting points found; increase --steps")
    series = q.entropy if args.kind == "quantum" else analysis.entropy_series("classical", n, steps, None, x0)
    table = analysis.meeting_averaged_entropy(series, meet)
    rows = [[int(m), h] for m, h in table.tolist()]
    params = _walk_params(args, n, x0, steps, coin)
    params["coin"] = coin.describe()
    params["rel_prominence"] = args.rel_prominence
    return Table("meet-entropy", ["n_meet", "H_meet_bits"], rows, params)


def cmd_time_average(args) -> Table:
    n, coin = args.n_sites, _coin_from_args(args)
    x0, steps = _x0(args, n), _steps(args, args.kind, n)
    avg = analysis.time_averaged_distribution(args.kind, n, steps, coin, x0)
    rows = [[x, p] for x, p in enumerate(avg.probs.tolist())]
    return Table("time-average", ["site", "probability"], rows, _walk_params(args, n, x0, steps, coin))


def cmd_scaling_sweep(args) -> Table:
    coin = _coin_from_args(args) if args.kind == "quantum" else None
    grid = args.n_grid if args.n_grid is not None else scaling.default_quantum_grid().tolist()
    data = scaling.sweep_saturated_entropy(
        args.kind, grid, coin, n_max=args.steps, window_fraction=args.window, jobs=args.jobs
    )
    params = {"kind": args.kind, "window_fraction": args.window, "n_max": data.meta["n_max"]}
    if coin is not None:
        params["coin"] = coin.describe()
    rows = zip(data.n_sites.tolist(), data.entropy.tolist())
    return Table("scaling-sweep", ["N", "entropy_bits"], rows, params)


def _read_dataset(path: str) -> scaling.ScalingDataset:
    fh = sys.stdin if path == "-" else open(path, newline="")
    try:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"N", "entropy_bits"} <= set(reader.fieldnames):
            raise DomainError(f"{path}: expected columns N, entropy_bits")
        try:
            rows = [(int(r["N"]), float(r["entropy_bits"])) for r in reader]
        except (TypeError, ValueError) as exc:
            raise DomainError(f"{path}: malformed row ({exc})") from None
    finally:
        if fh is not sys.stdin:
            fh.close()
    if not rows:
        raise DomainError(f"{path}: no data rows")
    n, h = zip(*rows)
    return scaling.ScalingDataset(np.array(n), np.array(h), "quantum")


def cmd_fit(args) -> Table:
    data = _read_dataset(args.data)
    rows = []
    for nu in args.nu:
        fit = scaling.fit_scaling(data, nu)
        rows.append([fit.nu, fit.alpha, fit.beta, fit.residual])
    return Table("fit", ["nu", "alpha", "beta", "residual"], rows, {"data": args.data, "nu": args.nu})


def cmd_distance_sweep(args) -> Table:
    if args.min_sites > args.max_sites:
        raise DomainError("--min-sites exceeds --max-sites")
    coin = _coin_from_args(args)
    grid = list(range(args.min_sites, args.max_sites + 1))
    res = distance_sweep(grid, coin, args.steps, x0=args.x0 or 0, jobs=args.jobs)
    rows = [[int(n), d, "even" if int(n) % 2 == 0 else "odd"] for n, d in res.tolist()]
    params = {"steps": args.steps, "x0": args.x0 or 0, "coin": coin.describe()}
    return Table("distance-sweep", ["N", "D_l1_bits", "parity"], rows, params)


VERIFY_THETAS = ("pi/12", "pi/6", "pi/4", "pi/3", "5pi/12")


def cmd_verify(args) -> Table:
    rows = []
    for n in (4, 5, 10):
        for label in VERIFY_THETAS:
            coin = CoinSpec.symmetric(parse_angle(label))
            state = qrw.make_initial_state(n, coin, 0)
            worst = 0.0
            for k in range(args.max_steps + 1):
                ref = oracle.path_sum_amplitudes(n, coin, 0, k)
                worst = max(worst, float(np.max(np.abs(state.amplitudes - ref))))
                state = qrw.step(state, coin.theta)
            rows.append(["path_sum", n, label, args.max_steps, worst, worst <= 1e-10])
        p = crw.delta(n, 0)
        worst = 0.0
        for k in range(31):
            worst = max(worst, float(np.max(np.abs(p.probs - oracle.wrapped_binomial(n, 0, k)))))
            p = crw.crw_step(p)
        rows.append(["wrapped_binomial", n, "", 30, worst, worst <= 1e-12])
    table = Table(
        "verify", ["check", "N", "theta", "max_steps", "max_abs_error", "passed"], rows, {}
    )
    table.failed = not all(r[-1] for r in rows)
    return table


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclewalk", description="Quantum and classical walks on cycles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-", help="output path, '-' for stdout")

    def walk(p, kind=True, n_sites=True):
        if kind:
            p.add_argument("--kind", choices=analysis.WALK_KINDS, default="quantum")
        if n_sites:
            p.add_argument("--n-sites", type=int, required=True)
        p.add_argument("--theta", type=parse_angle, default=qrw.HADAMARD,
                       help="coin angle in (0, pi/2); accepts 'hadamard', 'pi/6', 0.3, ...")
        p.add_argument("--coin", choices=qrw.INITIAL_KINDS, default="symmetric+")
        p.add_argument("--bloch-theta", type=parse_angle, default=0.0)
        p.add_argument("--bloch-phi", type=parse_angle, default=0.0)
        p.add_argument("--x0", type=int, default=None, help="start site (default N // 2)")

    def steps(p, default=None):
        p.add_argument("--steps", type=int, default=default,
                       help="number of steps (default: long enough to saturate)")

    for name, fn, helptext in (
        ("simulate", cmd_simulate, "position distribution P(x, n) per step"),
        ("entropy", cmd_entropy, "Shannon entropy per step"),
        ("time-average", cmd_time_average, "time-averaged position distribution"),
    ):
        p = sub.add_parser(name, help=helptext)
        walk(p)
        steps(p)
        output(p)
        p.set_defaults(func=fn)

    for name, fn, helptext in (
        ("meetings", cmd_meetings, "meeting points of the return probability"),
        ("meet-entropy", cmd_meet_entropy, "entropy averaged between meeting points"),
    ):
        p = sub.add_parser(name, help=helptext)
        walk(p)
        steps(p)
        p.add_argument("--rel-prominence", type=float, default=0.5)
        output(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("scaling-sweep", help="saturated entropy over system sizes")
    walk(p, n_sites=False)
    p.add_argument("--n-grid", type=parse_grid, default=None, help="'10:200:10' or '10,20,40'")
    steps(p)
    p.add_argument("--window", type=float, default=0.5, help="saturation window fraction")
    p.add_argument("--jobs", type=int, default=None)
    output(p)
    p.set_defaults(func=cmd_scaling_sweep)

    p = sub.add_parser("fit", help="fit alpha*log2(1+beta*N^nu) to a scaling-sweep CSV")
    p.add_argument("--data", required=True, help="CSV with columns N, entropy_bits ('-' for stdin)")
    p.add_argument("--nu", type=int, choices=scaling.NU_VALUES, action="append")
    output(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("distance-sweep", help="l1 distance of quantum vs classical entropy series")
    walk(p, kind=False, n_sites=False)
    p.add_argument("--min-sites", type=int, default=4)
    p.add_argument("--max-sites", type=int, default=60)
    steps(p, default=200)
    p.add_argument("--jobs", type=int, default=None)
    output(p)
    p.set_defaults(func=cmd_distance_sweep)

    p = sub.add_parser("verify", help="check the engines against brute-force oracles")
    p.add_argument("--max-steps", type=int, default=12)
    output(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "nu", 0) is None:
            args.nu = list(scaling.NU_VALUES)
        if getattr(args, "steps", None) is not None and args.steps < 1:
            raise DomainError("--steps must be >= 1")
        if getattr(args, "max_steps", 0) > oracle.MAX_PATH_STEPS:
            raise DomainError(f"--max-steps must be <= {oracle.MAX_PATH_STEPS}")
        table = args.func(args)
        _emit(table, args.format, args.out)
    except (UsageError, DomainError, argparse.ArgumentTypeError) as exc:
        return _fail("usage", str(exc), 2)
    except FitError as exc:
        return _fail("fit", str(exc), 1)
    except (ComputationError, FloatingPointError, np.linalg.LinAlgError) as exc:
        return _fail("computation", str(exc), 1)
    except OSError as exc:
        return _fail("io", str(exc), 1)
    return 1 if getattr(table, "failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())
