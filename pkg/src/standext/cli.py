"""Command-line front end.

Subcommands: validate, info, check (qh | koszul | conditions), ext-delta,
verify-main-theorem, examples.  Every compute command emits a deterministic
JSON report (see report.py).  Exit codes: 0 pass, 1 definite failure,
2 input error, 3 inconclusive because a degree bound truncated the
computation before a verdict was reached.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict
from importlib import resources

from .algebra import NotFiniteDimensionalError, build_algebra
from .homological import ext_dims
from .koszul import (
    build_E_delta,
    build_E_nabla,
    check_conditions,
    check_koszul,
    verify_main_theorem,
)
from .modules import ModuleError
from .presentation import PresentationError, parse_algebra, validate
from .quasihereditary import check_qh, tilting_family
from .report import build_report, render

EXAMPLE_NAMES = (
    "semisimple1",
    "a2-dominant",
    "sl2-regular",
    "sl2-regular-badht",
    "digon-s1",
    "a3-zero",
)
# alternate height assignments for the a3-zero quiver, emittable by name
EXAMPLE_VARIANTS = ("a3-zero-desc", "a3-zero-mixed")


def _read_input(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        raise PresentationError(f"input file not found: {path}")
    except OSError as exc:
        raise PresentationError(f"cannot read {path}: {exc}")


def _load(path: str):
    document = _read_input(path)
    pres = parse_algebra(document)
    validate(pres)
    return document, build_algebra(pres)


def _emit(report: dict, out: str | None) -> None:
    text = render(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    document = _read_input(args.path)
    pres = parse_algebra(document)
    validate(pres)
    sys.stdout.write(f"ok: {pres.name}\n")
    return 0


def cmd_info(args) -> int:
    document, algebra = _load(args.path)
    body = {
        "name": algebra.presentation.name,
        "hilbert": algebra.hilbert(),
        "species": algebra.species(),
        "heights": {x: algebra.ht(x) for x in algebra.vertices},
        "total_dim": algebra.total_dim(),
        "generated_in_degree_one": algebra.generated_in_degree_one(),
    }
    report = build_report("info", document, body, ok=True, exit_code=0)
    _emit(report, args.out)
    return 0


def cmd_check(args) -> int:
    document, algebra = _load(args.path)
    start = time.perf_counter()
    truncated = False
    if args.which == "qh":
        r = check_qh(algebra)
        body = {"stage": "qh", **asdict(r)}
        ok = r.ok
    elif args.which == "koszul":
        r = check_koszul(algebra, n_bound=args.max_degree)
        body = {"stage": "koszul", **asdict(r)}
        ok, truncated = r.ok, r.truncated
    else:
        qh = check_qh(algebra)
        if not qh.ok:
            body = {"stage": "conditions", "prerequisite": asdict(qh)}
            report = build_report(
                "check", document, body, ok=False, exit_code=1,
                timings={"total": time.perf_counter() - start},
            )
            _emit(report, args.out)
            return 1
        try:
            tiltings = tilting_family(algebra)
            r = check_conditions(
                algebra, max_degree=args.max_degree, tiltings=tiltings
            )
        except ModuleError as exc:
            body = {"stage": "conditions", "witnesses": [str(exc)]}
            report = build_report(
                "check", document, body, ok=False, exit_code=1,
                timings={"total": time.perf_counter() - start},
            )
            _emit(report, args.out)
            return 1
        body = {"stage": "conditions", **asdict(r)}
        ok, truncated = r.ok, r.truncated
    code = 0 if ok else 1
    if ok and truncated:
        code = 3
    body["truncated"] = truncated
    report = build_report(
        "check", document, body, ok=ok, exit_code=code,
        timings={"total": time.perf_counter() - start},
    )
    _emit(report, args.out)
    return code


def cmd_ext_delta(args) -> int:
    document, algebra = _load(args.path)
    start = time.perf_counter()
    cat_d = build_E_delta(algebra, n_bound=args.n_bound)
    cat_n = build_E_nabla(algebra, n_bound=args.n_bound)
    body = {
        "n_bound": args.n_bound,
        "ext_delta": {
            "dims": cat_d.dims(),
            "total_dim": cat_d.total_dim(),
            "composition_ranks": cat_d.composition_ranks(),
        },
        "ext_nabla": {
            "dims": cat_n.dims(),
            "total_dim": cat_n.total_dim(),
            "composition_ranks": cat_n.composition_ranks(),
        },
    }
    report = build_report(
        "ext-delta", document, body, ok=True, exit_code=0,
        timings={"total": time.perf_counter() - start},
    )
    _emit(report, args.out)
    return 0


def cmd_verify_main_theorem(args) -> int:
    document, algebra = _load(args.path)
    start = time.perf_counter()
    try:
        r = verify_main_theorem(
            algebra, bound=args.max_degree, iso_search_cap=args.iso_cap
        )
    except ModuleError as exc:
        body = {"failed_stage": "conditions", "witnesses": [str(exc)]}
        report = build_report(
            "verify-main-theorem", document, body, ok=False, exit_code=1,
            timings={"total": time.perf_counter() - start},
        )
        _emit(report, args.out)
        return 1
    body = asdict(r)
    if r.duality is not None:
        body["duality"]["verdict"] = r.duality.verdict
    code = 0 if r.ok else 1
    if r.ok and r.truncated:
        code = 3
    report = build_report(
        "verify-main-theorem", document, body, ok=r.ok, exit_code=code,
        timings={"total": time.perf_counter() - start},
    )
    _emit(report, args.out)
    return code


def fixture_text(name: str) -> str:
    if name not in EXAMPLE_NAMES + EXAMPLE_VARIANTS:
        raise PresentationError(f"unknown example {name!r}")
    ref = resources.files("standext").joinpath("fixtures", f"{name}.json")
    return ref.read_text(encoding="utf-8")


def cmd_examples(args) -> int:
    if args.action == "list":
        for name in EXAMPLE_NAMES:
            sys.stdout.write(name + "\n")
        return 0
    if not args.name:
        raise PresentationError("emit requires an example name")
    text = fixture_text(args.name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="standext",
        description=(
            "Quasi-hereditary and Koszul structure of finite-dimensional "
            "positively graded quiver algebras."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a presentation file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="Hilbert, species and height tables")
    p.add_argument("path")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check", help="run one verification stage")
    p.add_argument("path")
    p.add_argument("which", choices=("qh", "koszul", "conditions"))
    p.add_argument("--max-degree", type=int, default=8,
                   help="bound on resolution length (default 8)")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser(
        "ext-delta",
        help="bigraded Ext tables of the standard and costandard families",
    )
    p.add_argument("path")
    p.add_argument("--n-bound", type=int, default=6,
                   help="bound on homological degree (default 6)")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=cmd_ext_delta)

    p = sub.add_parser(
        "verify-main-theorem", help="run the full verification pipeline"
    )
    p.add_argument("path")
    p.add_argument("--max-degree", type=int, default=6,
                   help="bound on resolution length (default 6)")
    p.add_argument("--iso-cap", type=int, default=16,
                   help="dimension cap for the explicit-isomorphism search")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=cmd_verify_main_theorem)

    p = sub.add_parser("examples", help="list or emit the built-in examples")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("--out", help="write the emitted example to this file")
    p.set_defaults(func=cmd_examples)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PresentationError, NotFiniteDimensionalError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
