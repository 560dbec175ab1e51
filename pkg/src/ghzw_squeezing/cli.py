"""Command-line front end: single-point evaluation, no-squeezing tables with
the reproduction report, full sweeps, and the embedded self-check suite."""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import channels, sweep
from .collective import (
    Direction,
    SpinEnsemble,
    mean_spin_direction,
    min_perpendicular_variance,
    squeezing_parameter,
)
from .kernels import backend_name
from .qstate import density_from_pure, superposition_state


def cmd_point(
    channel: str,
    alpha: float,
    theta_deg: float,
    phi_deg: float,
    gamma_t: float,
    direction_mode: str = "given",
) -> int:
    """Evaluate one (channel, alpha, theta, phi, gamma_t) point and print the result."""
    ensemble = SpinEnsemble(sweep.SWEEP_N_QUBITS)
    rho = density_from_pure(superposition_state(alpha))
    rho = channels.apply_channel_all_qubits(rho, channels.kraus_set(channel, gamma_t), ensemble.n_qubits)
    direction = Direction(theta_deg, phi_deg)
    if direction_mode == "mean":
        mean_dir = mean_spin_direction(rho, ensemble)
        if mean_dir is None:
            print("mean spin vector is degenerate; using the given direction instead")
        else:
            direction = mean_dir
    elif direction_mode != "given":
        raise ValueError(f"direction mode must be given or mean, got {direction_mode!r}")
    result = squeezing_parameter(rho, direction, ensemble)
    print(f"channel        = {channels.normalize_kind(channel)}")
    print(f"alpha          = {alpha:.12g}")
    print(f"gamma_t        = {gamma_t:.12g}")
    print(f"direction      = (theta={direction.theta_deg:.12g} deg, phi={direction.phi_deg:.12g} deg)")
    print(f"epsilon        = {result.epsilon:.12g}")
    print(f"v_min          = {result.v_min:.12g}")
    print(f"phi_star_rad   = {result.phi_star_rad:.12g}")
    print(
        "mean_spin      = "
        f"({result.mean_spin.jx:.12g}, {result.mean_spin.jy:.12g}, {result.mean_spin.jz:.12g})"
    )
    squeezed = result.epsilon < 1.0 - sweep.NO_SQUEEZE_TOL
    print(f"squeezed       = {'yes' if squeezed else 'no'}  (epsilon < 1 - {sweep.NO_SQUEEZE_TOL:g})")
    return 0


def cmd_table(
    channel: str,
    tol: float = sweep.NO_SQUEEZE_TOL,
    out: str | None = None,
    spec: sweep.SweepSpec | None = None,
) -> int:
    """Run no-squeezing detection on the (default) grids, print the verdicts,
    and write the reproduction report."""
    kind = channels.normalize_kind(channel)
    if spec is None:
        spec = sweep.SweepSpec(channel_kind=kind)
    records = sweep.run_sweep(spec)
    verdicts = sweep.verdicts_from_records(records, tol)
    print(f"channel: {kind}  (directions: {len(verdicts)}, tol: {tol:g})")
    for v in verdicts:
        status = "no squeezing" if v.flagged else "squeezing found"
        print(
            f"  (theta={v.theta_deg:5.1f}, phi={v.phi_deg:6.1f})  "
            f"min epsilon = {v.min_epsilon_over_grid:.9f}  {status}"
        )
    alpha_claims = None
    depol_claims = None
    if kind == channels.DEPOLARIZING:
        depol_claims = sweep.depolarizing_claims_from_records(records, tol)
    else:
        directions = [(t, p) for t in spec.theta_grid_deg for p in spec.phi_grid_deg]
        alpha_claims = {
            kind: sweep.alpha_claim_summary(kind, directions, spec.gamma_t_grid, tol=tol)
        }
    report_path = out or f"report_{kind}.txt"
    sweep.discrepancy_report(
        {kind: verdicts},
        alpha_claims=alpha_claims,
        depolarizing_claims=depol_claims,
        tol=tol,
        path=report_path,
    )
    print(f"reproduction report written to {report_path}")
    return 0


def cmd_sweep(
    spec: sweep.SweepSpec,
    format: str = "csv",
    out: str | None = None,
    jobs: int | None = None,
) -> int:
    """Run a sweep and write the records to disk."""
    records = sweep.run_sweep(spec, max_workers=jobs)
    path = out or f"sweep_{channels.normalize_kind(spec.channel_kind)}.{format}"
    sweep.emit_results(records, format, path)
    best = min(records, key=lambda r: r.epsilon)
    print(f"wrote {len(records)} records to {path}")
    print(
        f"min epsilon = {best.epsilon:.9f} at alpha={best.alpha:g}, "
        f"theta={best.theta_deg:g}, phi={best.phi_deg:g}, gamma_t={best.gamma_t:g}"
    )
    return 0


def _random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def _brute_min_perp_variance(rho: np.ndarray, direction: Direction, ensemble: SpinEnsemble) -> float:
    """Scan 3600 in-plane angles, then polish with golden-section search."""
    from .collective import collective_operator, perpendicular_basis

    e1, e2 = perpendicular_basis(direction.unit_vector())
    js = [collective_operator(a, ensemble) for a in ("x", "y", "z")]
    je1 = sum(c * j for c, j in zip(e1, js))
    je2 = sum(c * j for c, j in zip(e2, js))

    def var(phi: float) -> float:
        jp = math.cos(phi) * je1 + math.sin(phi) * je2
        m = np.einsum("ij,ji->", rho, jp).real
        m2 = np.einsum("ij,ji->", rho, jp @ jp).real
        return float(m2 - m * m)

    grid = np.linspace(0.0, math.pi, 3600, endpoint=False)
    values = [var(p) for p in grid]
    best = int(np.argmin(values))
    lo = grid[best] - math.pi / 3600
    hi = grid[best] + math.pi / 3600
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    for _ in range(80):
        if var(c) < var(d):
            hi = d
        else:
            lo = c
        c = hi - invphi * (hi - lo)
        d = lo + invphi * (hi - lo)
    return min(min(values), var(0.5 * (lo + hi)))


def _check_kraus_completeness(inject_sign_error: bool) -> tuple[bool, str]:
    worst = 0.0
    for kind in channels.CHANNEL_KINDS:
        for k in range(51):
            dev = channels.validate_kraus(channels.kraus_set(kind, k * 0.1)).completeness_dev
            worst = max(worst, dev)
    if inject_sign_error:
        # amplitude-damping E1 with the exponent sign flipped: completeness must fail
        gt = 1.0
        bad = channels.KrausSet(
            channels.AMPLITUDE_DAMPING,
            gt,
            (
                np.array([[1.0, 0.0], [0.0, math.sqrt(math.exp(gt))]], dtype=complex),
                np.array([[0.0, math.sqrt(1.0 - math.exp(-gt))], [0.0, 0.0]], dtype=complex),
            ),
        )
        worst = max(worst, channels.validate_kraus(bad).completeness_dev)
    return worst < 1e-12, f"max completeness deviation {worst:.3e}"


def _check_variance_oracle() -> tuple[bool, str]:
    rng = np.random.default_rng(20240811)
    ensemble = SpinEnsemble(3)
    worst = 0.0
    for _ in range(5):
        rho = _random_density(rng, 8)
        for _ in range(4):
            direction = Direction(float(rng.uniform(0, 180)), float(rng.uniform(0, 360)))
            closed, _ = min_perpendicular_variance(rho, direction, ensemble)
            brute = _brute_min_perp_variance(rho, direction, ensemble)
            worst = max(worst, abs(closed - brute))
    return worst < 1e-9, f"max |closed-form - brute-force| = {worst:.3e}"


def _check_css_baseline() -> tuple[bool, str]:
    ensemble = SpinEnsemble(3)
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 1.0
    eps = squeezing_parameter(rho, Direction(0.0, 0.0), ensemble).epsilon
    return abs(eps - 1.0) < 1e-12, f"|epsilon - 1| = {abs(eps - 1.0):.3e}"


def _check_identity_at_zero() -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        rho = _random_density(rng, 8)
        for kind in channels.CHANNEL_KINDS:
            out = channels.apply_channel_all_qubits(rho, channels.kraus_set(kind, 0.0), 3)
            worst = max(worst, float(np.abs(out - rho).max()))
    return worst < 1e-14, f"max |rho' - rho| at gamma_t = 0: {worst:.3e}"


def _check_depolarizing_fixed_point() -> tuple[bool, str]:
    mixed = np.eye(8, dtype=complex) / 8.0
    worst = 0.0
    for k in range(11):
        out = channels.apply_channel_all_qubits(mixed, channels.depolarizing_kraus(k * 0.5), 3)
        worst = max(worst, float(np.abs(out - mixed).max()))
    return worst < 1e-12, f"max |rho' - I/8| for the mixed state: {worst:.3e}"


def cmd_check(verbose: bool = False, inject_sign_error: bool = False) -> int:
    """Run the embedded invariant suite; exit 0 iff every check passes."""
    checks = [
        ("kraus-completeness", lambda: _check_kraus_completeness(inject_sign_error)),
        ("variance-minimizer-oracle", _check_variance_oracle),
        ("css-baseline", _check_css_baseline),
        ("identity-at-zero", _check_identity_at_zero),
        ("depolarizing-fixed-point", _check_depolarizing_fixed_point),
    ]
    print(f"kernel backend: {backend_name()}")
    failed = []
    for name, fn in checks:
        passed, detail = fn()
        status = "PASS" if passed else "FAIL"
        line = f"check: {name:28s} {status}"
        if verbose or not passed:
            line += f"  ({detail})"
        print(line)
        if not passed:
            failed.append(name)
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return 1
    print("all checks passed")
    return 0


def _parse_grid(parser: argparse.ArgumentParser, text: str, name: str) -> tuple[float, ...]:
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError("expected start:stop:step")
            start, stop, step = (float(p) for p in parts)
            return tuple(sweep.grid_range(start, stop, step))
        values = tuple(float(tok) for tok in text.split(","))
        if not values:
            raise ValueError("no values")
        return values
    except ValueError as exc:
        parser.error(f"invalid --{name} grid {text!r}: {exc}")
        raise AssertionError  # parser.error always exits


def _spec_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> sweep.SweepSpec:
    return sweep.SweepSpec(
        channel_kind=args.channel,
        alpha_grid=_parse_grid(parser, args.alpha, "alpha") if args.alpha else sweep.DEFAULT_ALPHA_GRID,
        theta_grid_deg=_parse_grid(parser, args.theta, "theta") if args.theta else sweep.DEFAULT_THETA_GRID,
        phi_grid_deg=_parse_grid(parser, args.phi, "phi") if args.phi else sweep.DEFAULT_PHI_GRID,
        gamma_t_grid=_parse_grid(parser, args.gammat, "gammat") if args.gammat else sweep.DEFAULT_GAMMA_T_GRID,
        direction_mode=args.direction_mode,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzw-squeezing",
        description=(
            "Kitagawa-Ueda spin squeezing of the three-qubit GHZ/W superposition "
            "under amplitude-damping, phase-damping and depolarizing noise."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_point = sub.add_parser("point", help="evaluate a single parameter point")
    p_point.add_argument("--channel", required=True)
    p_point.add_argument("--alpha", type=float, required=True)
    p_point.add_argument("--theta", type=float, required=True)
    p_point.add_argument("--phi", type=float, required=True)
    p_point.add_argument("--gammat", type=float, required=True)
    p_point.add_argument("--direction-mode", choices=sweep.DIRECTION_MODES, default="given")

    p_table = sub.add_parser("table", help="no-squeezing verdict table plus reproduction report")
    p_table.add_argument("--channel", required=True)
    p_table.add_argument("--alpha", help="override alpha grid (start:stop:step or comma list)")
    p_table.add_argument("--theta", help="override theta grid (degrees)")
    p_table.add_argument("--phi", help="override phi grid (degrees)")
    p_table.add_argument("--gammat", help="override gamma_t grid")
    p_table.add_argument("--direction-mode", choices=sweep.DIRECTION_MODES, default="given")
    p_table.add_argument("--tol", type=float, default=sweep.NO_SQUEEZE_TOL)
    p_table.add_argument("--out", help="report path (default report_<channel>.txt)")

    p_sweep = sub.add_parser("sweep", help="full parameter sweep to CSV or JSON")
    p_sweep.add_argument("--channel", required=True)
    p_sweep.add_argument("--alpha", help="alpha grid (start:stop:step or comma list)")
    p_sweep.add_argument("--theta", help="theta grid (degrees)")
    p_sweep.add_argument("--phi", help="phi grid (degrees)")
    p_sweep.add_argument("--gammat", help="gamma_t grid")
    p_sweep.add_argument("--direction-mode", choices=sweep.DIRECTION_MODES, default="given")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", help="output path (default sweep_<channel>.<format>)")
    p_sweep.add_argument("--jobs", type=int, default=None, help="thread pool size for the sweep")

    p_check = sub.add_parser("check", help="run the embedded invariant suite")
    p_check.add_argument("--verbose", action="store_true")
    p_check.add_argument(
        "--inject-sign-error",
        action="store_true",
        help="flip the amplitude-damping E1 exponent sign to force a completeness failure",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "point":
            return cmd_point(
                args.channel, args.alpha, args.theta, args.phi, args.gammat, args.direction_mode
            )
        if args.subcommand == "table":
            spec = _spec_from_args(parser, args)
            spec.validate()
            return cmd_table(args.channel, tol=args.tol, out=args.out, spec=spec)
        if args.subcommand == "sweep":
            spec = _spec_from_args(parser, args)
            spec.validate()
            return cmd_sweep(spec, format=args.format, out=args.out, jobs=args.jobs)
        if args.subcommand == "check":
            return cmd_check(verbose=args.verbose, inject_sign_error=args.inject_sign_error)
        raise AssertionError(f"unhandled subcommand {args.subcommand}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
