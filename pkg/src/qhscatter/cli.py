"""
Command-line sweeps writing CSV to stdout.

    qhscatter two-delta    --lambda 1 --a 1 --sweep-k 0.1:5:50
    qhscatter square-well  --lambda 1 --a 1 --sweep-k 0.1:8:200
    qhscatter single-delta --lambda 1 --epsilon 0.1 --sweep-q 0.2:5:25
    qhscatter metric-wave  --lambda 1 --epsilon 0.1 --q 1 --sweep-x -20:20:81
    qhscatter bound-state  --alpha 1 --lambda 1 --sweep-L 3:6:4
    qhscatter scatter      --potential pot.json --sweep-k 0.5:3:6
    qhscatter check

Sweeps are ``lo:hi:count`` with an optional ``:log`` suffix. Numbers are
written with 17 significant digits. QHSCATTER_THREADS caps parallelism;
rows always come out in sweep order.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import analytic, boundstate, metric, transfer
from .errors import QHScatterError
from .model import (
    Potential1D,
    single_delta_potential,
    square_well_potential,
    two_delta_potential,
)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    lo: float
    hi: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"sweep needs lo < hi, got {self.lo}:{self.hi}")
        if self.count < 2:
            raise ValueError(f"sweep needs count >= 2, got {self.count}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown sweep scale {self.scale!r}")
        if self.scale == "log" and self.lo <= 0:
            raise ValueError("log sweep needs lo > 0")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


def parse_sweep(text: str, variable: str = "") -> SweepSpec:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(f"expected lo:hi:count[:log], got {text!r}")
    try:
        spec = SweepSpec(
            variable,
            float(parts[0]),
            float(parts[1]),
            int(parts[2]),
            parts[3] if len(parts) == 4 else "linear",
        )
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return spec


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(v)
    return format(float(v), ".17g")


def _threads() -> int:
    raw = os.environ.get("QHSCATTER_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    return max(n, 1)


def _rows(fn: Callable[[float], Sequence], values) -> list:
    n = _threads()
    if n == 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, values))


def _emit(header: Sequence[str], rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])


def _two_delta(args, out):
    pot = two_delta_potential(args.lam, args.a)

    def row(k):
        amps = analytic.two_delta_amplitudes(analytic.TwoDeltaParams(args.lam, args.a, k))
        tm = transfer.scattering_coefficients(pot, k)
        # deviation relative to the larger amplitude; C may vanish exactly
        agree = max(abs(amps.refl - tm.refl), abs(amps.trans - tm.trans)) / max(
            abs(amps.refl), abs(amps.trans)
        )
        s = transfer.probability_summary(amps)
        return (k, amps.refl.real, amps.refl.imag, amps.trans.real, amps.trans.imag,
                s.R, s.T, s.total, agree)

    _emit(["k", "ReC", "ImC", "ReD", "ImD", "R", "T", "total", "agree"],
          _rows(row, args.sweep_k.values()), out)


def _square_well(args, out):
    pot = square_well_potential(args.lam, args.a)
    _sweep_potential(pot, args.sweep_k, out)


def _scatter(args, out):
    with open(args.potential) as fh:
        pot = Potential1D.from_json(fh.read())
    _sweep_potential(pot, args.sweep_k, out)


def _sweep_potential(pot, sweep, out):
    def row(k):
        s = transfer.probability_summary(transfer.scattering_coefficients(pot, k))
        return (k, s.R, s.T, s.total)

    _emit(["k", "R", "T", "total"], _rows(row, sweep.values()), out)


def _single_delta(args, out):
    pot = single_delta_potential(args.lam, args.epsilon)

    def row(q):
        p = analytic.SingleDeltaParams.from_q(args.lam, args.epsilon, q)
        s = transfer.probability_summary(transfer.scattering_coefficients(pot, p.k))
        f = metric.corrected_flux_factors(p)
        return (q, s.R, s.T, s.total, f.incoming, f.reflected, f.transmitted,
                metric.conservation_residual(p))

    _emit(["q", "R", "T", "total", "corrected_incoming", "corrected_R", "corrected_T",
           "conservation_residual"], _rows(row, args.sweep_q.values()), out)


def _metric_wave(args, out):
    p = analytic.SingleDeltaParams.from_q(args.lam, args.epsilon, args.q)

    def row(x):
        big = metric.corrected_wavefunction(x, p)
        small = metric.bare_wavefunction(x, p)
        return (x, big.real, big.imag, abs(big) ** 2, small.real, small.imag, abs(small) ** 2)

    _emit(["x", "RePsi", "ImPsi", "absPsi2", "Repsi", "Impsi", "abspsi2"],
          _rows(row, args.sweep_x.values()), out)


def _bound_state(args, out):
    def row(L):
        m = boundstate.ThreeDeltaModel(args.alpha, args.lam, L)
        sol = boundstate.solve_kappa(m, tol=args.tol)
        chk = boundstate.pt_symmetry_check(sol, m)
        return (L, sol.kappa, boundstate.large_L_kappa(m), chk.amp_defect, chk.phase)

    _emit(["L", "kappa_exact", "kappa_asymptotic", "amp_defect", "phase"],
          _rows(row, args.sweep_L.values()), out)


def _check(args, out):
    from .checks import run_checks

    results = run_checks()
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}", file=out)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhscatter",
        description="Scattering, metric corrections and bound states for 1D complex potentials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def sweep(name):
        return lambda text: parse_sweep(text, name)

    p = sub.add_parser("two-delta", help="two imaginary deltas, closed form vs transfer matrix")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--sweep-k", type=sweep("k"), required=True)
    p.set_defaults(func=_two_delta)

    p = sub.add_parser("square-well", help="imaginary square well transmission")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--sweep-k", type=sweep("k"), required=True)
    p.set_defaults(func=_square_well)

    p = sub.add_parser("scatter", help="any potential read from a JSON description")
    p.add_argument("--potential", required=True)
    p.add_argument("--sweep-k", type=sweep("k"), required=True)
    p.set_defaults(func=_scatter)

    p = sub.add_parser("single-delta", help="single complex delta with metric-corrected fluxes")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--sweep-q", type=sweep("q"), required=True)
    p.set_defaults(func=_single_delta)

    p = sub.add_parser("metric-wave", help="corrected wavefunction Psi = rho psi along x")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--sweep-x", type=sweep("x"), required=True)
    p.set_defaults(func=_metric_wave)

    p = sub.add_parser("bound-state", help="three-delta bound state versus spike distance L")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--sweep-L", dest="sweep_L", type=sweep("L"), required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_bound_state)

    p = sub.add_parser("check", help="run the built-in invariant suite")
    p.set_defaults(func=_check)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args, out)
    except (QHScatterError, ValueError) as exc:
        params = {k: v for k, v in vars(args).items() if k != "func"}
        print(f"qhscatter: error: {exc} (parameters: {params})", file=sys.stderr)
        return 1
    return 0 if code is None else code


if __name__ == "__main__":
    sys.exit(main())
