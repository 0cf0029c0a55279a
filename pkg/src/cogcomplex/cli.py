"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error, 2 computation error.
Diagnostics go to stderr; data goes to files or stdout.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .calibration import (
    CalibrationTargets,
    RootFindConfig,
    calibrate,
    equivalent_age,
    find_intersection,
    find_peak,
)
from .combinatorics import enumerate_states
from .complexity import DEFAULT_H
from .errors import InputError, ModelError, ParameterError, UsageError
from .io import (
    build_report,
    parse_scenario_file,
    read_params_file,
    write_params_file,
    write_trajectory_csv,
)
from .plot import emit_plot_svg
from .scenarios import simulate


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _fmt(x: float) -> str:
    return format(x, ".6f")


def _solver(args: argparse.Namespace) -> RootFindConfig:
    try:
        return RootFindConfig(abs_tol=args.abs_tol, max_iter=args.max_iter)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def _load(args: argparse.Namespace, path: str):
    params = read_params_file(args.params) if getattr(args, "params", None) else None
    scenario, cognition = parse_scenario_file(path, params)
    return scenario, cognition, params


def cmd_simulate(args: argparse.Namespace) -> int:
    scenario, cognition, params = _load(args, args.scenario)
    if cognition is None and args.depth:
        if params is None:
            raise UsageError("--depth needs cognition in the scenario file or a --params file")
        cognition = params.cognition
    t_end = args.to if args.to is not None else scenario.horizon
    traj = simulate(scenario, args.t_from, t_end, args.step, cognition)
    write_trajectory_csv(traj, args.out)
    return 0


def cmd_calibrate(args: argparse.Namespace) -> int:
    try:
        targets = CalibrationTargets(args.peak, tuple(args.baseline_equiv), tuple(args.weaken_equiv),
                                     args.intersection, args.horizon)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    cfg = _solver(args)
    cal = calibrate(targets, args.h, cfg, args.n_max)
    write_params_file(cal, args.out, cfg)
    g = cal.growth
    print(f"b {g.b:.9g}\ntau_g {g.tau_g:.9g}\nweakening_tau {cal.weakening_tau:.9g}\n"
          f"k {cal.cognition.k:.9g}\nlam {cal.cognition.lam:.9g}")
    return 0


def cmd_equiv_age(args: argparse.Namespace) -> int:
    scenario, _, _ = _load(args, args.scenario)
    baseline, _, _ = _load(args, args.baseline)
    print(_fmt(equivalent_age(scenario, args.at, baseline, _solver(args))))
    return 0


def cmd_find_peak(args: argparse.Namespace) -> int:
    scenario, _, _ = _load(args, args.scenario)
    print(_fmt(find_peak(scenario, _solver(args), args.scan_step)))
    return 0


def cmd_intersect(args: argparse.Namespace) -> int:
    scenario, cognition, params = _load(args, args.scenario)
    if cognition is None:
        if params is None:
            raise UsageError("intersect needs cognition in the scenario file or a --params file")
        cognition = params.cognition
    print(_fmt(find_intersection(cognition, scenario, _solver(args))))
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    baseline, _, params = _load(args, args.baseline)
    cfg = _solver(args)
    reports = []
    for path in args.scenario:
        scenario, cognition, _ = _load(args, path)
        if cognition is None and params is not None:
            cognition = params.cognition
        reports.append(build_report(scenario, baseline, args.at, cognition, cfg))
    text = "[\n" + ",\n".join(r.to_json().rstrip("\n") for r in reports) + "\n]\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    hist = enumerate_states(args.neurons)
    print(" ".join(str(c) for c in hist.counts))
    print(f"total {hist.total}")
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    loaded = [_load(args, p) for p in args.scenario]
    baseline = _load(args, args.baseline)[0] if args.baseline else None
    horizon = loaded[0][0].horizon
    t_end = args.to if args.to is not None else horizon
    trajectories = [simulate(s, args.t_from, t_end, args.step) for s, _, _ in loaded]
    emit_plot_svg(trajectories, args.out, title=args.title, y_mode=args.y_mode, baseline=baseline)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cogcomplex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help: str, params: bool = True, solver: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if params:
            p.add_argument("--params", help="params file written by `calibrate`")
        if solver:
            p.add_argument("--abs-tol", type=float, default=1e-3)
            p.add_argument("--max-iter", type=int, default=200)
        return p

    def grid(p: argparse.ArgumentParser) -> None:
        p.add_argument("--from", dest="t_from", type=float, default=0.0)
        p.add_argument("--to", type=float, default=None, help="default: scenario horizon")
        p.add_argument("--step", type=float, default=1.0)

    p = add("simulate", "sample a scenario and write CSV")
    p.add_argument("--scenario", required=True)
    grid(p)
    p.add_argument("--depth", action="store_true", help="add cognitive depth from the params file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = add("calibrate", "fit growth, weakening tau and cognition to the anchors", params=False, solver=True)
    p.add_argument("--peak", type=float, default=300.0)
    p.add_argument("--baseline-equiv", type=float, nargs=2, default=[1000.0, 138.0], metavar=("AT", "MONTH"))
    p.add_argument("--weaken-equiv", type=float, nargs=2, default=[1000.0, 97.0], metavar=("AT", "MONTH"))
    p.add_argument("--intersection", type=float, default=600.0)
    p.add_argument("--horizon", type=float, default=1200.0)
    p.add_argument("--h", type=float, default=DEFAULT_H)
    p.add_argument("--n-max", type=float, default=1e6)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_calibrate)

    p = add("equiv-age", "equivalent baseline month of a scenario", solver=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--baseline", required=True)
    p.add_argument("--at", type=float, required=True)
    p.set_defaults(func=cmd_equiv_age)

    p = add("find-peak", "month of maximum complexity", solver=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--scan-step", type=float, default=1.0)
    p.set_defaults(func=cmd_find_peak)

    p = add("intersect", "month where cognitive depth meets complexity", solver=True)
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=cmd_intersect)

    p = add("compare", "JSON run reports for several scenarios", solver=True)
    p.add_argument("--scenario", action="append", required=True)
    p.add_argument("--baseline", required=True)
    p.add_argument("--at", type=float, action="append", default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = add("enumerate", "brute-force firing-state histogram", params=False)
    p.add_argument("--neurons", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = add("plot", "render trajectories as SVG")
    p.add_argument("--scenario", action="append", required=True)
    p.add_argument("--baseline")
    grid(p)
    p.add_argument("--title", default="")
    p.add_argument("--y-mode", choices=("log2", "equivalent-age"), default="log2")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "compare" and args.at is None:
            args.at = [1000.0]
        return args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
