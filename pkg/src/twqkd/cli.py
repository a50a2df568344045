"""Batch command-line front end.

Subcommands: ``curves`` (bound-comparison CSV plus rate thresholds),
``simulate`` (protocol Monte Carlo, JSON report), ``verify`` (closed-form
consistency checks) and ``spectrum`` (Gram matrix inspection).  Exit codes:
0 success, 1 verification failure, 2 usage error, 3 unreadable or invalid
attack file.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .attacks import (
    AncillaOverlaps,
    identity_attack,
    phase_covariant_attack,
    symmetric_attack,
    validate,
)
from .bounds import NoiseModel, bound_curve, curve_csv, get_protocol, rate_zero_crossings
from .checks import DEFAULT_QF_SWEEP, run_all
from .ensembles import Ensemble, gram_matrix, named_ensemble, spectrum_of
from .errors import TwqkdError
from .linalg import von_neumann_entropy
from .simulate import SimulationConfig, run


def spectrum_json(attack: AncillaOverlaps, ensemble: Ensemble, name: str) -> dict:
    gram = gram_matrix(attack, ensemble)
    spectrum = spectrum_of(attack, ensemble)
    return {
        "ensemble": name,
        "attack": json.loads(attack.to_json()),
        "gram": [[[z.real, z.imag] for z in row] for row in gram],
        "eigenvalues": [float(v) for v in spectrum],
        "entropy": von_neumann_entropy(spectrum),
    }


class UsageError(Exception):
    pass


class AttackFileError(Exception):
    pass


def parse_attack(spec: str) -> AncillaOverlaps:
    """identity | symmetric:<qf> | phase:<d> | file:<path>"""
    if spec == "identity":
        return identity_attack()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise UsageError(f"malformed attack spec {spec!r}")
    if kind == "symmetric":
        return symmetric_attack(_parse_float(arg, "symmetric qf"))
    if kind == "phase":
        return phase_covariant_attack(_parse_float(arg, "phase d"))
    if kind == "file":
        try:
            with open(arg, encoding="utf-8") as fh:
                attack = AncillaOverlaps.from_json(fh.read())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise AttackFileError(f"cannot load attack from {arg!r}: {exc}")
        if not validate(attack).ok:
            raise AttackFileError(f"attack in {arg!r} fails physicality checks")
        return attack
    raise UsageError(f"unknown attack kind {kind!r}")


def _parse_float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"invalid {what}: {text!r}") from None


def parse_noise(text: str, qf: float = 0.0) -> NoiseModel:
    if text == "equal-forward":
        return NoiseModel(qf=qf)
    if text.startswith("qb="):
        return NoiseModel(
            qf=qf, mode="independent-backward", qb=_parse_float(text[3:], "qb")
        )
    raise UsageError(f"noise must be 'equal-forward' or 'qb=<v>', got {text!r}")


def cmd_curves(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    if not 0.0 <= args.qf_min <= args.qf_max <= 1.0:
        raise UsageError("need 0 <= qf-min <= qf-max <= 1")
    noise = parse_noise(args.noise)
    grid = np.linspace(args.qf_min, args.qf_max, args.steps)
    csv_text = curve_csv(bound_curve(grid, noise))

    threshold_lines = []
    for name, root in rate_zero_crossings(noise).items():
        if root is None:
            threshold_lines.append(f"# r zero crossing [{name}]: none in domain")
        else:
            threshold_lines.append(
                f"# r zero crossing [{name}]: qf = {root:.12g}"
            )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        print("\n".join(threshold_lines))
    else:
        sys.stdout.write(csv_text)
        print("\n".join(threshold_lines), file=sys.stderr)
    return 0


def cmd_simulate(args) -> int:
    protocol = get_protocol(args.protocol)
    if args.pc is not None:
        if not 0.0 <= args.pc <= 1.0:
            raise UsageError("--pc must lie in [0, 1]")
        from dataclasses import replace

        protocol = replace(protocol, p_control=args.pc, p_encode=1.0 - args.pc)
    attack = parse_attack(args.attack)
    # nominal forward noise: the attack's flip weight along its reference axis
    qf_nominal = float(attack.g[1, 1].real)
    if args.qb:
        noise = NoiseModel(qf=qf_nominal, mode="independent-backward", qb=args.qb)
    else:
        noise = NoiseModel(qf=qf_nominal)
    report = run(
        SimulationConfig(
            protocol=protocol,
            attack=attack,
            noise=noise,
            n_rounds=args.rounds,
            seed=args.seed,
            em_sample_fraction=args.em_fraction,
        )
    )
    print(report.to_json())
    return 0


def cmd_verify(args) -> int:
    qf_values = (args.qf,) if args.qf is not None else DEFAULT_QF_SWEEP
    results = run_all(qf_values)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.status.upper():4s}  {r.name:<{width}s}  qf={r.qf:<6g} {r.detail}")
    n_fail = sum(r.failed for r in results)
    n_pass = sum(r.status == "pass" for r in results)
    n_skip = sum(r.status == "skip" for r in results)
    print(f"{n_pass} passed, {n_fail} failed, {n_skip} skipped")
    return 1 if n_fail else 0


def cmd_spectrum(args) -> int:
    attack = parse_attack(args.attack)
    ensemble = named_ensemble(args.ensemble)
    print(json.dumps(spectrum_json(attack, ensemble, args.ensemble), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twqkd",
        description="Two-way QKD security workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curves", help="export bound-comparison curves as CSV")
    p.add_argument("--qf-min", type=float, default=0.0)
    p.add_argument("--qf-max", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--noise", default="equal-forward",
                   help="equal-forward or qb=<v>")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("simulate", help="Monte-Carlo protocol run, JSON report")
    p.add_argument("--protocol", required=True)
    p.add_argument("--attack", required=True,
                   help="identity | symmetric:<qf> | phase:<d> | file:<path>")
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pc", type=float, default=None,
                   help="control-mode probability (default: protocol's)")
    p.add_argument("--qb", type=float, default=0.0,
                   help="backward-channel flip probability")
    p.add_argument("--em-fraction", type=float, default=0.1,
                   help="disclosed share of valid encoding rounds")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the closed-form consistency checks")
    p.add_argument("--qf", type=float, default=None,
                   help="single forward-noise value (default: a small sweep)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="Gram matrix, spectrum and entropy")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--attack", required=True)
    p.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AttackFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TwqkdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
