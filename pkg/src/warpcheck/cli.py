"""Command line interface.

    warpcheck check <scenario.json> [--tol T] [--seed S] [--count N] [--out P]
    warpcheck suite <catalog-name>  [same flags]
    warpcheck catalog list
    warpcheck fd-check <catalog-name> [--h H] [--seed S] [--count N] [--out P]

Reports are written as JSON; WARPCHECK_REPORT_DIR sets the default output
directory.  Exit status is 0 iff every non-skipped check passes.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import catalog as cat
from .errors import EngineError
from .reports import ReportFile
from .scenario import load_scenario, run_scenario, scenario_from_dict


def _out_path(arg: str | None, scenario_name: str) -> Path:
    if arg:
        return Path(arg)
    base = os.environ.get("WARPCHECK_REPORT_DIR", ".")
    return Path(base) / f"{scenario_name}.report.json"


def _print_report(report: ReportFile) -> None:
    for suite in report.suites:
        for check in suite.checks:
            res = "-" if check.max_residual is None else f"{check.max_residual:.3e}"
            tol = "-" if check.tolerance is None else f"{check.tolerance:.1e}"
            print(f"[{check.status:>8}] {suite.suite} / {check.name}  "
                  f"residual={res} tol={tol}")
    print(f"scenario {report.scenario}: {'PASS' if report.passed else 'FAIL'}")


def _run_and_write(scn, args) -> int:
    report = run_scenario(
        scn,
        tolerance=getattr(args, "tol", None),
        seed=args.seed,
        count=args.count,
    )
    out = _out_path(args.out, report.scenario)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_json(), encoding="utf-8")
    _print_report(report)
    print(f"report written to {out}")
    return 0 if report.passed else 1


def _fd_scenario_doc(name: str, h: float) -> dict:
    doc = dict(cat.CATALOG[name])
    scn = cat.get_scenario(name)
    suites = []
    for chart_name in sorted(scn.charts):
        suites.append({
            "name": f"fd:{chart_name}",
            "suite": "fd-cross-check",
            "manifold": chart_name,
            "h": h,
            "christoffel_tol": 1e-5,
            "riemann_tol": 1e-3,
            "ricci_tol": 1e-3,
        })
    doc = {**doc, "name": f"{name}-fd-check", "suites": suites}
    return doc


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="warpcheck",
        description="Numerical verification of warped-product soliton identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_tol=True):
        if with_tol:
            p.add_argument("--tol", type=float, default=None,
                           help="override every check tolerance")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--count", type=int, default=None)
        p.add_argument("--out", type=str, default=None,
                       help="report path (default: $WARPCHECK_REPORT_DIR/<name>.report.json)")

    p_check = sub.add_parser("check", help="run a scenario file")
    p_check.add_argument("scenario")
    add_common(p_check)

    p_suite = sub.add_parser("suite", help="run a built-in catalog scenario")
    p_suite.add_argument("catalog_name")
    add_common(p_suite)

    p_cat = sub.add_parser("catalog", help="inspect the built-in catalog")
    p_cat.add_argument("action", choices=["list"])

    p_fd = sub.add_parser("fd-check", help="finite-difference oracle over a catalog entry")
    p_fd.add_argument("catalog_name")
    p_fd.add_argument("--h", type=float, default=1e-4, dest="h")
    add_common(p_fd, with_tol=False)

    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _run_and_write(load_scenario(args.scenario), args)
        if args.command == "suite":
            return _run_and_write(cat.get_scenario(args.catalog_name), args)
        if args.command == "catalog":
            for name in cat.catalog():
                print(name)
            return 0
        if args.command == "fd-check":
            doc = _fd_scenario_doc(args.catalog_name, args.h)
            return _run_and_write(scenario_from_dict(doc), args)
    except (EngineError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
