"""Command line front end.

One subcommand per bench plus ``sample`` (event streams), ``chsh``
(Bell-inequality estimate), ``diffmap`` (wedge signal-difference scan),
``audit`` (no-signaling sweep with a pass/fail exit code), and ``run``
(everything above, driven by a config file).

Exit codes: 0 success, 1 usage or config error, 2 audit found a
deviation above tolerance.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from . import pathbench, polarization, sampler, wedge
from .config import ConfigError, RunConfig, parse_angle, parse_config
from .output import Table, emit_table
from .pathbench import AliceMode
from .wedge import SamplingError, WedgeGeometry

_MODE_BY_NAME = {
    "in": AliceMode.SPLITTER_IN,
    "out": AliceMode.SPLITTER_OUT,
    "stop": AliceMode.BEAM_STOP,
}


@dataclass(frozen=True)
class NoSignalReport:
    """Outcome of one no-signaling audit sweep."""

    bench: str
    configurations: int
    max_deviation: float
    worst_at: tuple
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        where = ", ".join(f"{v:.6g}" if isinstance(v, float) else str(v)
                          for v in self.worst_at)
        return (
            f"[{verdict}] {self.bench}: max marginal deviation "
            f"{self.max_deviation:.3e} at ({where}) over "
            f"{self.configurations} configurations "
            f"(tolerance {self.tolerance:.1e})"
        )


def _linspace(stop: float, count: int) -> list[float]:
    if count < 2:
        return [0.0]
    step = stop / (count - 1)
    return [i * step for i in range(count)]


def audit_polar(grid: int = 200, tolerance: float = 1e-12) -> NoSignalReport:
    """Bob's polarization marginals must be (1/2, 1/2) for every setting."""
    worst = 0.0
    worst_at: tuple = ()
    count = 0
    for alpha in _linspace(math.pi / 2, grid):
        for theta in _linspace(math.pi, grid):
            marg = polarization.polar_bob_marginals(alpha, theta)
            dev = max(abs(marg.p_b1 - 0.5), abs(marg.p_b0 - 0.5))
            if dev >= worst:
                worst, worst_at = dev, (alpha, theta)
            count += 1
    return NoSignalReport("polar", count, worst, worst_at, tolerance)


def audit_mz(grid: int = 50, tolerance: float = 1e-12) -> NoSignalReport:
    """Bob's path marginals must not depend on phi_a or on Alice's mode."""
    worst = 0.0
    worst_at: tuple = ()
    count = 0
    modes = (AliceMode.SPLITTER_IN, AliceMode.SPLITTER_OUT, AliceMode.BEAM_STOP)
    for alpha in _linspace(math.pi / 2, grid):
        for phi_b in _linspace(2 * math.pi, grid):
            want = pathbench.expected_bob_marginals(alpha, phi_b)
            for phi_a in _linspace(2 * math.pi, grid):
                for mode in modes:
                    got = pathbench.mz_bob_marginals(alpha, phi_a, phi_b, mode)
                    dev = max(abs(got.p_b1 - want.p_b1), abs(got.p_b0 - want.p_b0))
                    if dev >= worst:
                        worst, worst_at = dev, (alpha, phi_a, phi_b, mode.value)
                    count += 1
    return NoSignalReport("mz", count, worst, worst_at, tolerance)


def audit_wedge(
    grid: int = 3,
    tolerance: float = 1e-4,
    geometry: WedgeGeometry | None = None,
) -> NoSignalReport:
    """Integrated wedge singles must track the phi_a-free closed form."""
    geom = geometry if geometry is not None else WedgeGeometry()
    worst = 0.0
    worst_at: tuple = ()
    count = 0
    for alpha in _linspace(math.pi / 2, max(grid, 2)):
        for phi_b in _linspace(2 * math.pi, max(grid, 2)):
            want = pathbench.expected_bob_marginals(alpha, phi_b)
            for phi_a in (0.0, math.pi / 2):
                got = wedge.wedge_bob_singles(alpha, phi_a, phi_b, geom)
                dev = max(abs(got[0].value - want.p_b1),
                          abs(got[1].value - want.p_b0))
                if dev >= worst:
                    worst, worst_at = dev, (alpha, phi_a, phi_b)
                count += 1
    return NoSignalReport("wedge", count, worst, worst_at, tolerance)


def run_no_signal_audit(
    bench: str = "all",
    grid: int | None = None,
    tolerance: float | None = None,
    geometry: WedgeGeometry | None = None,
) -> list[NoSignalReport]:
    reports = []
    if bench in ("polar", "all"):
        reports.append(audit_polar(grid or 200, tolerance or 1e-12))
    if bench in ("mz", "all"):
        reports.append(audit_mz(grid or 50, tolerance or 1e-12))
    if bench in ("wedge", "all"):
        reports.append(audit_wedge(grid or 3, tolerance or 1e-4, geometry))
    if not reports:
        raise ConfigError(f"unknown audit bench {bench!r}")
    return reports


def _geometry_from_items(items: list[str] | None) -> WedgeGeometry:
    fields: dict = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--geom expects key=value, got {item!r}")
        key, _, raw = item.partition("=")
        fields[key.strip()] = raw.strip()
    cfg = RunConfig(bench="wedge", geometry={
        k: (int(v) if k.startswith("samples_") else float(v)) for k, v in fields.items()
    })
    return cfg.wedge_geometry()


def _emit(table: Table, args) -> None:
    text = emit_table(table, fmt=args.format, path=args.out)
    if args.out is None:
        sys.stdout.write(text)
    else:
        sys.stderr.write(f"wrote {args.out}\n")


def _cmd_polar(args) -> int:
    if args.grid:
        alphas = _linspace(math.pi / 2, args.grid)
        thetas = _linspace(math.pi, args.grid)
        table = polarization.polar_sweep(alphas, thetas)
    else:
        probs = polarization.polar_joint_probabilities(args.alpha, args.theta)
        table = Table(
            columns=("alpha", "theta", "p_hh", "p_hv", "p_vh", "p_vv"),
            rows=[(args.alpha, args.theta) + probs.as_tuple()],
        )
    _emit(table, args)
    return 0


def _cmd_mz(args) -> int:
    mode = _MODE_BY_NAME[args.bs_a]
    if args.marginals:
        n = max(args.grid, 2)
        table = pathbench.mz_marginal_sweep(
            _linspace(math.pi / 2, n), _linspace(2 * math.pi, n)
        )
    elif args.grid:
        alphas = _linspace(math.pi / 2, args.grid)
        phis = _linspace(2 * math.pi, args.grid)
        table = pathbench.mz_sweep(alphas, phis, phis, (mode,))
    else:
        marg = pathbench.mz_bob_marginals(args.alpha, args.phi_a, args.phi_b, mode)
        if mode is AliceMode.BEAM_STOP:
            joints = (math.nan,) * 4
        else:
            joints = pathbench.mz_joint_probabilities(
                args.alpha, args.phi_a, args.phi_b, mode
            ).as_tuple()
        table = Table(
            columns=(
                "alpha", "phi_a", "phi_b", "mode",
                "p_a1b1", "p_a1b0", "p_a0b1", "p_a0b0", "p_b1", "p_b0",
            ),
            rows=[(args.alpha, args.phi_a, args.phi_b, mode.value)
                  + joints + (marg.p_b1, marg.p_b0)],
        )
    _emit(table, args)
    return 0


def _cmd_wedge(args) -> int:
    geom = _geometry_from_items(args.geom)
    if args.profile:
        table = wedge.wedge_profile_table(args.alpha, args.phi_a, args.phi_b, geom)
    else:
        b1, b0 = wedge.wedge_bob_singles(args.alpha, args.phi_a, args.phi_b, geom)
        table = Table(
            columns=("alpha", "phi_a", "phi_b", "p_b1", "p_b0", "err_b1", "err_b0"),
            rows=[(args.alpha, args.phi_a, args.phi_b,
                   b1.value, b0.value, b1.error_estimate, b0.error_estimate)],
        )
    _emit(table, args)
    return 0


def _cmd_diffmap(args) -> int:
    geom = _geometry_from_items(args.geom)
    n = max(args.grid, 2)
    table = wedge.signal_difference_map(
        _linspace(math.pi / 2, n), _linspace(2 * math.pi, n), args.phi_a, geom
    )
    _emit(table, args)
    return 0


def _sampler_config(args):
    if args.bench == "polar":
        return polarization.PolarizationConfig(args.alpha, args.theta)
    return pathbench.PathConfig(args.alpha, args.phi_a, args.phi_b, _MODE_BY_NAME[args.bs_a])


def _cmd_sample(args) -> int:
    spec = sampler.SamplerSpec(_sampler_config(args), n=args.n, seed=args.seed)
    result = sampler.sample_outcome_codes(spec, workers=args.workers)
    if args.summary:
        marg = sampler.empirical_marginals(result)
        table = Table(
            columns=("n", "p_b1", "p_b0", "se_b1", "se_b0"),
            rows=[(marg.n, marg.p_b1, marg.p_b0, marg.se_b1, marg.se_b0)],
        )
    else:
        table = sampler.events_table(result)
    _emit(table, args)
    return 0


def _cmd_chsh(args) -> int:
    angles = tuple(parse_angle(a, "angles") for a in args.angles.split(","))
    est = sampler.estimate_chsh(angles=angles, n=args.n, seed=args.seed)
    table = Table(
        columns=("s_value", "std_error", "n_per_setting",
                 "e_ab", "e_abp", "e_apb", "e_apbp"),
        rows=[(est.s_value, est.std_error, est.n_per_setting or 0)
              + est.correlations],
    )
    _emit(table, args)
    return 0


def _cmd_audit(args) -> int:
    geom = _geometry_from_items(args.geom)
    reports = run_no_signal_audit(args.bench, args.grid, args.tolerance, geom)
    for report in reports:
        sys.stdout.write(report.line() + "\n")
    return 0 if all(r.passed for r in reports) else 2


def _cmd_run(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    p = cfg.parameters

    class _A:  # noqa: N801 - argparse stand-in for the shared handlers
        pass

    ns = _A()
    ns.out = cfg.out
    ns.format = cfg.format
    ns.alpha = p.get("alpha", 0.0)
    ns.theta = p.get("theta", 0.0)
    ns.phi_a = p.get("phi_a", 0.0)
    ns.phi_b = p.get("phi_b", 0.0)
    ns.bs_a = p.get("mode", "in")
    ns.grid = p.get("grid", 0)
    ns.n = p.get("n", 1000)
    ns.seed = p.get("seed", 0)
    ns.workers = p.get("workers", 1)
    ns.bench = p.get("bench", "all")
    ns.summary = True
    ns.profile = False
    ns.marginals = False
    ns.geom = [f"{k}={v}" for k, v in cfg.geometry.items()]
    ns.tolerance = p.get("tolerance")
    if cfg.bench == "chsh":
        ns.angles = ",".join(repr(a) for a in p.get(
            "angles", (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8)))
        return _cmd_chsh(ns)
    handler = {
        "polar": _cmd_polar,
        "mz": _cmd_mz,
        "wedge": _cmd_wedge,
        "diffmap": _cmd_diffmap,
        "sample": _cmd_sample,
        "audit": _cmd_audit,
    }[cfg.bench]
    return handler(ns)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="write the table here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_angle(p: argparse.ArgumentParser, name: str, default: str) -> None:
    p.add_argument(
        name,
        type=lambda s: parse_angle(s, name.lstrip("-")),
        default=parse_angle(default),
        help=f"radians or a pi fraction (default {default})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eprsim",
        description="Two-photon entanglement benches and no-signaling audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polar", help="polarization bench probabilities")
    _add_angle(p, "--alpha", "0")
    _add_angle(p, "--theta", "0")
    p.add_argument("--grid", type=int, default=0, help="sweep an NxN grid instead")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_polar)

    p = sub.add_parser("mz", help="path-interferometer bench probabilities")
    _add_angle(p, "--alpha", "0")
    _add_angle(p, "--phi-a", "0")
    _add_angle(p, "--phi-b", "0")
    p.add_argument("--bs-a", choices=sorted(_MODE_BY_NAME), default="in",
                   help="Alice's analyzer: splitter in place, removed, or beam stop")
    p.add_argument("--grid", type=int, default=0, help="sweep an NxNxN grid instead")
    p.add_argument("--marginals", action="store_true",
                   help="emit only Bob's singles over an (alpha, phi_b) grid")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_mz)

    p = sub.add_parser("wedge", help="wedge-mirror bench integrated singles")
    _add_angle(p, "--alpha", "0")
    _add_angle(p, "--phi-a", "0")
    _add_angle(p, "--phi-b", "0")
    p.add_argument("--profile", action="store_true",
                   help="emit the detector-plane profile instead of integrals")
    p.add_argument("--geom", action="append", metavar="KEY=VALUE",
                   help="override a geometry field (repeatable)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_wedge)

    p = sub.add_parser("diffmap", help="wedge singles difference over a settings grid")
    _add_angle(p, "--phi-a", "pi/2")
    p.add_argument("--grid", type=int, default=3)
    p.add_argument("--geom", action="append", metavar="KEY=VALUE")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_diffmap)

    p = sub.add_parser("sample", help="draw a deterministic event stream")
    p.add_argument("--bench", choices=("polar", "mz"), default="polar")
    _add_angle(p, "--alpha", "0")
    _add_angle(p, "--theta", "0")
    _add_angle(p, "--phi-a", "0")
    _add_angle(p, "--phi-b", "0")
    p.add_argument("--bs-a", choices=sorted(_MODE_BY_NAME), default="in")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--summary", action="store_true",
                   help="emit empirical marginals instead of raw events")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("chsh", help="CHSH estimate at alpha=0")
    p.add_argument("--angles", default="0,pi/8,pi/4,3*pi/8",
                   help="a,b,a',b' as four comma-separated angles")
    p.add_argument("--n", type=int, default=None,
                   help="events per setting pair (omit for the analytic value)")
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_chsh)

    p = sub.add_parser("audit", help="no-signaling sweep; exit 2 on failure")
    p.add_argument("--bench", choices=("polar", "mz", "wedge", "all"), default="all")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--geom", action="append", metavar="KEY=VALUE")
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("run", help="execute a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(handler=_cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except (ConfigError, SamplingError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
