"""Command-line front end.

``bound`` reports the variational bound matrix for one configuration,
``compare`` tabulates simultaneous-versus-individual strategies over a
photon-number or transmissivity grid, and ``sweep`` is the configurable
form of the same table. Tables are CSV with columns
x, se_ideal, se_cq, se_exact, ie_bound, regime; cells a strategy cannot
fill stay empty. Output is deterministic: rerunning a command reproduces
the bytes exactly.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .baselines import ie_total_variance, regime_classify
from .bounds import SingularBoundError, cq_matrix, optimize_delta
from .fock import PhaseMoments, build_basis, phase_moments
from .loss import DEFAULT_DENSE_CAP, apply_loss, phase_factors, uniform_loss
from .probes import custom_probe, generalized_noon, generalized_noon_moments
from .qfi import qfi_mixed, qfi_pure
from .fock import DensityOperator

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SINGULAR = 3
EXIT_OUTPUT = 4

STRATEGIES = ("se-ideal", "se-cq", "se-exact", "ie")
CSV_HEADER = "x,se_ideal,se_cq,se_exact,ie_bound,regime"


class UsageError(ValueError):
    """Invalid arguments or configuration; maps to exit code 2."""


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _parse_delta(text: str):
    if text in ("zero", "diag", "opt"):
        return text
    if text.startswith("value="):
        return float(text[len("value="):])
    raise ValueError(f"bad delta strategy {text!r}")


def _parse_theta(text: str) -> tuple:
    return tuple(float(tok) for tok in text.split(","))


def _parse_range(text: str, *, integer: bool) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}: {exc}") from None
    if step <= 0.0:
        raise UsageError("range step must be positive")
    if stop < start:
        raise UsageError("range stop must not precede start")
    values = []
    k = 0
    while True:
        x = start + k * step
        if x > stop + 1e-9 * max(1.0, step):
            break
        values.append(x)
        k += 1
    if integer:
        out = []
        for x in values:
            n = round(x)
            if abs(x - n) > 1e-9:
                raise UsageError(f"photon-number grid point {x} is not an integer")
            out.append(int(n))
        return out
    return values


def _parse_occupation(text: str, modes: int, n: int) -> tuple:
    text = text.strip()
    if "," in text:
        tokens = [tok.strip() for tok in text.split(",")]
    else:
        tokens = list(text)  # compact form: one symbol per mode
    if len(tokens) != modes:
        raise UsageError(
            f"occupation {text!r} has {len(tokens)} modes, expected {modes}"
        )
    occ = []
    for tok in tokens:
        if tok in ("N", "n"):
            occ.append(n)
        else:
            try:
                occ.append(int(tok))
            except ValueError:
                raise UsageError(f"bad occupation entry {tok!r}") from None
    return tuple(occ)


def _parse_amps(text: str, modes: int, n: int) -> list:
    terms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        occ_text, sep, amp_text = chunk.rpartition(":")
        if not sep:
            raise UsageError(f"amplitude term {chunk!r} needs occupation:amp")
        try:
            amp = complex(amp_text)
        except ValueError:
            raise UsageError(f"bad amplitude {amp_text!r}") from None
        terms.append((_parse_occupation(occ_text, modes, n), amp))
    if not terms:
        raise UsageError("no amplitude terms given")
    return terms


def _probe_moments(args, n: int) -> PhaseMoments:
    if args.probe == "gnoon":
        return generalized_noon_moments(args.d, n)
    return phase_moments(_probe_state(args, n))


def _probe_state(args, n: int):
    if args.probe == "gnoon":
        return generalized_noon(args.d, n)
    if args.amps is None:
        raise UsageError(f"--probe {args.probe} needs --amps")
    modes = args.d + 1
    if args.probe == "ie2" and args.d != 1:
        raise UsageError("--probe ie2 estimates a single phase; use --d 1")
    basis = build_basis(modes, n)
    return custom_probe(basis, _parse_amps(args.amps, modes, n))


def _require(condition: bool, message: str):
    if not condition:
        raise UsageError(message)


def _check_common(args):
    _require(args.d >= 1, "--d must be at least 1")
    if getattr(args, "eta", None) is not None:
        _require(0.0 <= args.eta <= 1.0, "--eta must lie in [0, 1]")
    _require(args.dense_cap >= 1, "--dense-cap must be at least 1")


def cmd_bound(args) -> int:
    _check_common(args)
    _require(args.n >= 1, "--n must be at least 1")
    _require(args.eta is not None, "bound needs --eta")
    mom = _probe_moments(args, args.n)
    if args.delta == "zero":
        label, bound = "zero", cq_matrix(mom, args.eta, 0.0)
    elif args.delta == "diag":
        _require(args.eta < 1.0, "--delta diag is undefined at eta = 1")
        value = args.eta / (1.0 - args.eta)
        label, bound = "diag", cq_matrix(mom, args.eta, value)
    elif args.delta == "opt":
        delta_star, bound = optimize_delta(mom, args.eta)
        label = "opt"
    else:
        label, bound = "value", cq_matrix(mom, args.eta, float(args.delta))
    if not math.isfinite(bound.trace_inverse):
        print("bound matrix is singular: some phase combination carries no "
              "information in this probe", file=sys.stderr)
        return EXIT_SINGULAR
    lines = [f"probe: {args.probe} d={args.d} n={args.n} eta={_fmt(args.eta)}"]
    lines.append("C_Q matrix [1/rad^2]:")
    for row in bound.matrix:
        lines.append("  " + " ".join(_fmt(v) for v in row))
    lines.append(
        "delta (" + label + "): " + " ".join(_fmt(v) for v in bound.delta.delta)
    )
    lines.append(f"Tr[C_Q^-1] [rad^2]: {_fmt(bound.trace_inverse)}")
    kappa_n = (1.0 - args.eta) / args.eta * args.n if args.eta > 0 else math.inf
    lines.append(
        f"regime: {regime_classify(args.n, args.eta)} (kappa*N = {_fmt(kappa_n)})"
    )
    if args.theta is not None:
        lines.append(_theta_self_check(args))
    print("\n".join(lines))
    return EXIT_OK


def _theta_self_check(args) -> str:
    # the angles commute through the loss; the exact QFI cannot see them
    theta = args.theta
    _require(len(theta) == args.d, "--theta needs one angle per phase mode")
    _require(args.n <= args.dense_cap,
             "--theta self-check needs the dense path; raise --dense-cap or lower --n")
    state = _probe_state(args, args.n)
    channel = uniform_loss(args.eta, args.d + 1, args.n)
    rho = apply_loss(state, channel, dense_cap=args.dense_cap)
    factors = phase_factors(rho.basis, theta)
    rotated = DensityOperator(rho.basis, rho.matrix * np.outer(factors, factors.conj()))
    drift = float(np.max(np.abs(qfi_mixed(rotated).matrix - qfi_mixed(rho).matrix)))
    return f"theta self-check: max |QFI(theta) - QFI(0)| = {_fmt(drift)}"


def _grid(args) -> tuple[str, list]:
    if (args.n_range is None) == (args.eta_range is None):
        raise UsageError("give exactly one of --n-range or --eta-range")
    if args.n_range is not None:
        _require(args.eta is not None, "an n sweep needs a fixed --eta")
        return "n", _parse_range(args.n_range, integer=True)
    _require(args.n is not None and args.n >= 1, "an eta sweep needs a fixed --n")
    values = _parse_range(args.eta_range, integer=False)
    for x in values:
        _require(0.0 <= x <= 1.0, f"eta grid point {x} outside [0, 1]")
    return "eta", values


def _sweep_rows(args, strategies) -> list[str]:
    axis, grid = _grid(args)
    if "se-exact" in strategies:
        worst_n = max(grid) if axis == "n" else args.n
        _require(
            worst_n <= args.dense_cap,
            f"se-exact needs n <= dense cap ({args.dense_cap}); trim the grid "
            "or raise --dense-cap",
        )
    rows = []
    for x in grid:
        n = int(x) if axis == "n" else args.n
        eta = args.eta if axis == "n" else float(x)
        cells = {name: "" for name in STRATEGIES}
        mom = _probe_moments(args, n)
        if "se-ideal" in strategies:
            ideal = qfi_pure(mom).trace_inverse
            if math.isfinite(ideal):
                cells["se-ideal"] = _fmt(ideal)
        if "se-cq" in strategies and 0.0 < eta:
            try:
                _, bound = optimize_delta(mom, eta)
                if math.isfinite(bound.trace_inverse):
                    cells["se-cq"] = _fmt(bound.trace_inverse)
            except (SingularBoundError, ValueError):
                pass
        if "se-exact" in strategies:
            state = _probe_state(args, n)
            channel = uniform_loss(eta, args.d + 1, n)
            exact = qfi_mixed(apply_loss(state, channel, dense_cap=args.dense_cap))
            if math.isfinite(exact.trace_inverse):
                cells["se-exact"] = _fmt(exact.trace_inverse)
        if "ie" in strategies and 0.0 < eta and n % args.d == 0:
            cells["ie"] = _fmt(ie_total_variance(args.d, n, eta).total)
        regime = regime_classify(n, eta) if eta > 0.0 else ""
        x_text = str(n) if axis == "n" else _fmt(eta)
        rows.append(",".join(
            [x_text, cells["se-ideal"], cells["se-cq"], cells["se-exact"],
             cells["ie"], regime]
        ))
    return rows


def _emit_csv(args, rows: list[str]) -> int:
    text = "\n".join([CSV_HEADER] + rows) + "\n"
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="ascii", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK


def cmd_compare(args) -> int:
    _check_common(args)
    return _emit_csv(args, _sweep_rows(args, set(STRATEGIES)))


def cmd_sweep(args) -> int:
    _check_common(args)
    names = [tok.strip() for tok in args.strategies.split(",") if tok.strip()]
    for name in names:
        _require(name in STRATEGIES,
                 f"unknown strategy {name!r}; choose from {', '.join(STRATEGIES)}")
    strategies = set(names)
    if not strategies:
        return _emit_csv(args, [])  # degenerate config: header only
    return _emit_csv(args, _sweep_rows(args, strategies))


def _add_probe_flags(parser):
    parser.add_argument("--probe", choices=("gnoon", "custom", "ie2"),
                        default="gnoon",
                        help="probe family (default: generalized N00N)")
    parser.add_argument("--amps", default=None,
                        help="custom amplitudes 'n0,n1,...:amp;...'; "
                             "'N' stands for the photon total")
    parser.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP,
                        help="largest n for dense density-matrix work "
                             f"(default {DEFAULT_DENSE_CAP})")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiphase",
        description="Precision bounds for simultaneous multi-phase "
                    "estimation under photon loss",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="bound matrix at one configuration")
    bound.add_argument("--d", type=int, required=True, help="number of phases")
    bound.add_argument("--n", type=int, required=True, help="photon budget")
    bound.add_argument("--eta", type=float, required=True,
                       help="transmissivity in [0, 1]")
    bound.add_argument("--delta", type=_parse_delta, default="opt",
                       help="gauge strategy: zero | diag | opt | value=<x>")
    bound.add_argument("--theta", type=_parse_theta, default=None,
                       help="comma-separated angles; runs the phase-"
                            "invariance self-check on the dense path")
    _add_probe_flags(bound)
    bound.set_defaults(func=cmd_bound)

    common = dict(formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    compare = sub.add_parser("compare", help="strategy comparison table",
                             **common)
    sweep = sub.add_parser("sweep", help="configurable strategy sweep",
                           **common)
    for p in (compare, sweep):
        p.add_argument("--d", type=int, required=True, help="number of phases")
        p.add_argument("--n", type=int, default=None,
                       help="photon budget (fixed during an eta sweep)")
        p.add_argument("--eta", type=float, default=None,
                       help="transmissivity (fixed during an n sweep)")
        p.add_argument("--n-range", default=None, metavar="A:B:STEP",
                       help="photon-number grid")
        p.add_argument("--eta-range", default=None, metavar="A:B:STEP",
                       help="transmissivity grid")
        p.add_argument("--out", default=None, help="CSV path (default stdout)")
        _add_probe_flags(p)
    sweep.add_argument("--strategies", default=",".join(STRATEGIES),
                       help="comma-separated subset of "
                            f"{', '.join(STRATEGIES)}; empty for header only")
    sweep.add_argument("--theta", type=_parse_theta, default=None,
                       help="accepted for symmetry; the tabulated "
                            "quantities are phase-independent")
    compare.set_defaults(func=cmd_compare)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularBoundError as exc:
        print(f"singular bound: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
