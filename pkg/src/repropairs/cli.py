"""Command-line interface.

Exit status: 0 when the verdict succeeds, 2 when it fails (for instance the
inputs are not a reproducing pair), 1 on malformed or incompatible input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import fileio, scenarios
from .hilbert import DEFAULT_TOL, check_compatible, mixed_frame_operator
from .pairs import (
    DEFAULT_KAPPA_MAX,
    DEFAULT_TREND_TOL,
    check_pair,
    classify,
    construct_partner,
    kernel_projection,
    kernel_spectrum,
)
from .report import Report, emit_curves

COMMANDS = ("classify", "pair-check", "partner", "kernel", "example")


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    kappa_max: float = DEFAULT_KAPPA_MAX
    tol: float = DEFAULT_TOL
    trend_tol: float = DEFAULT_TREND_TOL
    levels: int | None = None
    out: str | None = None
    curves: str | None = None
    seed: int = 0
    name: str | None = None
    dim: int | None = None
    m: float | None = None
    M: float | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}; valid: {', '.join(COMMANDS)}")
        if not self.tol > 0 or not self.trend_tol > 0:
            raise ValueError("tolerances must be > 0")
        if self.kappa_max < 1:
            raise ValueError("kappa_max must be >= 1")
        if self.levels is not None and self.levels < 1:
            raise ValueError("levels must be >= 1")

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("curves")
        return d


def _need_inputs(config, count):
    if len(config.inputs) != count:
        raise fileio.InputError(f"{config.command} needs exactly {count} --input file(s), got {len(config.inputs)}")
    return [fileio.read_family(p) for p in config.inputs]


def _pair_check(config):
    psi, phi = _need_inputs(config, 2)
    check_compatible(psi, phi)
    rep = check_pair(psi, phi, config.kappa_max)
    return rep.to_dict(), {}, rep.ok


def _partner(config):
    (phi,) = _need_inputs(config, 1)
    rep = construct_partner(phi, tol=config.tol)
    result = rep.to_dict()
    if rep.feasible:
        s = mixed_frame_operator(rep.psi, phi).matrix
        result["identity_error"] = float(np.max(np.abs(s - np.eye(phi.dim))))
        result["partner"] = fileio.family_to_dict(rep.psi)
    return result, {}, rep.feasible


def _kernel(config):
    psi, phi = _need_inputs(config, 2)
    check_compatible(psi, phi)
    pair = check_pair(psi, phi, config.kappa_max)
    result = {"pair": pair.to_dict()}
    if not pair.ok:
        return result, {}, False
    spec = kernel_spectrum(kernel_projection(psi, phi, config.kappa_max))
    result["kernel"] = spec
    ok = spec["within_tol"] and spec["idempotence_error"] <= 1e-8
    return result, {}, ok


def _classify(config):
    if not config.inputs:
        raise fileio.InputError("classify needs at least one --input file")
    fams = [fileio.read_family(p) for p in config.inputs]
    try:
        cls = classify(fams, config.trend_tol, config.tol)
    except ValueError as exc:
        raise fileio.InputError(str(exc)) from None
    curves = {"lower_bound": list(enumerate(b[0] for b in cls.bounds_per_level)),
              "upper_bound": list(enumerate(b[1] for b in cls.bounds_per_level))}
    ok = cls.kind in ("frame", "upper_semi_frame", "lower_semi_frame")
    return cls.to_dict(), curves, ok


def _example(config):
    name = config.name
    if name not in scenarios.SCENARIOS:
        raise fileio.InputError(f"unknown example {name!r}; valid names: {', '.join(scenarios.SCENARIOS)}")
    kwargs = {"seed": config.seed, "trend_tol": config.trend_tol}
    if config.dim is not None:
        kwargs["dim"] = config.dim
    if config.levels is not None:
        kwargs["levels"] = config.levels
    if name == "spherical":
        if len(config.inputs) > 1:
            raise fileio.InputError("spherical takes at most one --input coefficient table")
        if config.inputs:
            kwargs["coeffs"] = fileio.read_spherical(config.inputs[0])
        kwargs["m"], kwargs["M"] = config.m, config.M
    elif config.inputs:
        raise fileio.InputError(f"example {name} takes no --input")
    return scenarios.SCENARIOS[name](**kwargs)


DISPATCH = {
    "pair-check": _pair_check,
    "partner": _partner,
    "kernel": _kernel,
    "classify": _classify,
    "example": _example,
}


def run(config: RunConfig) -> Report:
    """Execute one command; raises fileio.InputError/ValueError on bad input."""
    result, curves, ok = DISPATCH[config.command](config)
    report = Report(config.command, config.echo(), result, curves, bool(ok))
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(report.render())
    if config.curves:
        emit_curves(report, config.curves)
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="repropairs", description="Reproducing-pair diagnostics on discretized families.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-i", "--input", action="append", default=[], dest="inputs",
                        help="input file (repeat for pairs and sequences)")
        sp.add_argument("--kappa-max", type=float, default=DEFAULT_KAPPA_MAX)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative rank tolerance")
        sp.add_argument("--trend-tol", type=float, default=DEFAULT_TREND_TOL,
                        help="relative per-level change treated as stable")
        sp.add_argument("--levels", type=int)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the report here instead of standard output")
        sp.add_argument("--curves", help="write (level, value) series as CSV")

    helps = {
        "classify": "frame / semi-frame classification of a refinement sequence (one -i per level)",
        "pair-check": "verify that two families (-i psi -i phi) form a reproducing pair",
        "partner": "construct the minimal-norm partner of one family",
        "kernel": "spectrum of the reproducing kernel of a pair (-i psi -i phi)",
    }
    for name, text in helps.items():
        common(sub.add_parser(name, help=text))
    ex = sub.add_parser("example", help=f"run a named scenario: {', '.join(scenarios.SCENARIOS)}")
    ex.add_argument("name")
    common(ex)
    ex.add_argument("--dim", type=int)
    ex.add_argument("--m", type=float, help="lower symbol bound for the spherical partner condition")
    ex.add_argument("--M", type=float, help="upper symbol bound for the spherical partner condition")
    return p


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    try:
        config = RunConfig(**args)
        report = run(config)
    except (fileio.InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not config.out:
        sys.stdout.write(report.render())
    return 0 if report.success else 2


if __name__ == "__main__":
    sys.exit(main())
