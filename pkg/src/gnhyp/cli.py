"""Command-line front end: ``gnhyp {eval,verify,table,quadstudy}``.

Exit codes are the machine contract: eval returns 0, 2 on a domain or
parameter problem, 3 on non-convergence; verify returns 0 iff every check
passes, 1 otherwise.  Output never uses colour, so NO_COLOR is honoured
trivially.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .bases import default_base
from .closedforms import gn_closed
from .contour import ContourSpec, gn_via_multicontour, gn_via_recursion
from .errors import ConvergenceError, GnError
from .multiseries import Evaluation, TruncationSpec, eval_gn_series
from .suites import run_suite

METHODS = ("series", "recursion", "multicontour", "closed")
EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_CONVERGENCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    n: int = 2
    point: tuple[complex, ...] = ()
    methods: tuple[str, ...] = ("series",)
    tol: float | None = None
    output_format: str = "text"
    seed: int = 0
    suite: str = "all"
    max_degree: int = 12
    grid: tuple[float, float, int] = (0.0, 0.1, 3)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
            if m in ("closed", "multicontour") and self.n > 3:
                raise ValueError(f"method {m} requires n <= 3")
        if self.point and len(self.point) != self.n:
            raise ValueError(f"--point has {len(self.point)} coordinates, --n is {self.n}")


def evaluate(method: str, x: tuple[complex, ...], tol: float | None) -> Evaluation:
    n = len(x)
    if method == "series":
        return eval_gn_series(x, TruncationSpec(target_tol=tol or 1e-15))
    if method == "recursion":
        return gn_via_recursion(x, default_base(n - 1), tol=tol or 1e-13)
    if method == "multicontour":
        return gn_via_multicontour(x, tol=tol or 1e-10)
    if method == "closed":
        return Evaluation(complex(gn_closed(x)), 0.0, 0, 0)
    raise ValueError(method)


def _num(v: complex) -> str:
    v = complex(v)
    return repr(v.real) if v.imag == 0 else repr(v)


def _row(x, method, ev: Evaluation) -> dict:
    row = {"n": len(x)}
    row.update({f"x{i + 1}": _num(v) for i, v in enumerate(x)})
    value = complex(ev.value)
    row.update(method=method, value_re=repr(value.real), value_im=repr(value.imag),
               err_est=repr(float(ev.error_estimate)), nodes_or_terms=int(ev.terms_used))
    return row


def _render(rows: list[dict], fmt: str, extra_text: list[str] = ()) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            keys = list(rows[0])
            for r in rows[1:]:
                keys += [k for k in r if k not in keys]
            w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    lines = []
    for r in rows:
        pt = ", ".join(r[f"x{i + 1}"] for i in range(r["n"]))
        val = complex(float(r["value_re"]), float(r["value_im"]))
        lines.append(f"G_{r['n']}({pt}) [{r['method']}] = {_num(val)}  "
                     f"err~{float(r['err_est']):.2e}  nodes/terms={r['nodes_or_terms']}")
    return "\n".join(lines + list(extra_text)) + "\n"


def run_eval(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    rows, values = [], []
    for method in cfg.methods:
        try:
            ev = evaluate(method, cfg.point, cfg.tol)
        except ConvergenceError as exc:
            print(f"error [{method}]: not converged: {exc}", file=err)
            return EXIT_CONVERGENCE
        except (GnError, ValueError) as exc:
            print(f"error [{method}]: {type(exc).__name__}: {exc}", file=err)
            return EXIT_DOMAIN
        rows.append(_row(cfg.point, method, ev))
        values.append(complex(ev.value))
    extra = []
    if len(values) > 1:
        for m, v in zip(cfg.methods[1:], values[1:]):
            extra.append(f"delta {m} - {cfg.methods[0]}: {abs(v - values[0]):.3e}")
    out.write(_render(rows, cfg.output_format, extra))
    return EXIT_OK


def run_verify(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    kwargs = {"seed": cfg.seed, "max_degree": cfg.max_degree}
    if cfg.extra.get("n_given"):
        kwargs["n"] = cfg.n
    try:
        checks = run_suite(cfg.suite, **kwargs)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=err)
        return EXIT_DOMAIN
    if cfg.output_format == "text":
        out.write("\n".join(c.line() for c in checks) + "\n")
    else:
        rows = [{"check": c.name, "passed": c.passed, "worst": repr(c.worst),
                 "tolerance": repr(c.tolerance), "counterexample": c.counterexample or ""}
                for c in checks]
        if cfg.output_format == "json":
            out.write(json.dumps(rows, indent=2) + "\n")
        else:
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
            out.write(buf.getvalue())
    failed = [c for c in checks if not c.passed]
    if failed:
        repro = f"gnhyp verify --suite {cfg.suite} --seed {cfg.seed} --max-degree {cfg.max_degree}"
        if cfg.extra.get("n_given"):
            repro += f" --n {cfg.n}"
        print(f"{len(failed)} check(s) failed; first: {failed[0].name} at "
              f"{failed[0].counterexample}\nreproduce with: {repro}", file=err)
        return EXIT_FAIL
    return EXIT_OK


def grid_points(n: int, lo: float, hi: float, count: int) -> list[tuple[complex, ...]]:
    axis = np.linspace(lo, hi, count)
    return [tuple(complex(v) for v in p) for p in itertools.product(axis, repeat=n)]


def run_table(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    rows = []
    code = EXIT_OK
    for x in grid_points(cfg.n, *cfg.grid):
        for method in cfg.methods:
            try:
                rows.append(_row(x, method, evaluate(method, x, cfg.tol)))
            except ConvergenceError as exc:
                print(f"skip {x} [{method}]: not converged: {exc}", file=err)
                code = max(code, EXIT_CONVERGENCE)
            except (GnError, ValueError) as exc:
                print(f"skip {x} [{method}]: {exc}", file=err)
                code = max(code, EXIT_DOMAIN)
    out.write(_render(rows, cfg.output_format))
    return code


def run_quadstudy(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    """Fixed-node trapezoidal estimates of the recursion against an oracle."""
    x = cfg.point
    n = len(x)
    try:
        oracle = complex(gn_closed(x)) if n <= 3 else eval_gn_series(x).value
    except GnError as exc:
        print(f"error: no oracle at {x}: {exc}", file=err)
        return EXIT_DOMAIN
    base = default_base(n - 1)
    rows = []
    for nodes in (16, 32, 64, 128, 256, 512, 1024, 2048):
        try:
            # a single level: tol = inf stops after the first doubling
            ev = gn_via_recursion(x, base, ContourSpec(1.0, 0.5, nodes),
                                  tol=float("inf"), max_nodes=nodes)
        except GnError as exc:
            print(f"error at {nodes} nodes: {exc}", file=err)
            return EXIT_DOMAIN
        rows.append({"nodes": ev.terms_used, "value_re": repr(ev.value.real),
                     "value_im": repr(ev.value.imag), "abs_error": repr(abs(ev.value - oracle))})
    if cfg.output_format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(f"oracle G_{n} = {_num(oracle)}\n")
        for r in rows:
            out.write(f"{r['nodes']:>6} nodes  |error| = {float(r['abs_error']):.3e}\n")
    return EXIT_OK


def _parse_point(text: str) -> tuple[complex, ...]:
    return tuple(complex(s.strip().replace(" ", "")) for s in text.split(","))


def _parse_grid(text: str) -> tuple[float, float, int]:
    lo, hi, count = text.split(",")
    return float(lo), float(hi), int(count)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gnhyp", description="Evaluate and check the G_n hypergeometric family.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", choices=("text", "csv", "json"), default="text")
        sp.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")

    e = sub.add_parser("eval", help="evaluate G_n at one point")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--point", type=_parse_point, required=True, help="comma-separated, e.g. 0.1,0.05+0.01j")
    e.add_argument("--method", default="series", help=f"comma-separated subset of {','.join(METHODS)}")
    e.add_argument("--tol", type=float)
    common(e)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--n", type=int)
    v.add_argument("--max-degree", type=int, default=12)
    common(v)

    t = sub.add_parser("table", help="compare methods over a grid in [lo, hi]^n")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--grid", type=_parse_grid, default=(0.0, 0.1, 3), help="lo,hi,count per axis")
    t.add_argument("--method", default="series,closed")
    t.add_argument("--tol", type=float)
    common(t)

    q = sub.add_parser("quadstudy", help="trapezoidal convergence of the contour recursion")
    q.add_argument("--point", type=_parse_point, required=True)
    common(q)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cmd = args.command
    methods = tuple(m.strip() for m in getattr(args, "method", "series").split(","))
    point = getattr(args, "point", ()) or ()
    n = getattr(args, "n", None)
    if n is None:
        n = len(point) if point else 2
    return RunConfig(
        command=cmd, n=n, point=point,
        methods=methods if cmd in ("eval", "table") else ("series",),
        tol=getattr(args, "tol", None), output_format=args.output,
        seed=getattr(args, "seed", 0), suite=getattr(args, "suite", "all"),
        max_degree=getattr(args, "max_degree", 12),
        grid=getattr(args, "grid", (0.0, 0.1, 3)),
        extra={"n_given": getattr(args, "n", None) is not None},
    )


RUNNERS = {"eval": run_eval, "verify": run_verify, "table": run_table, "quadstudy": run_quadstudy}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            return RUNNERS[cfg.command](cfg, out=fh, err=sys.stderr)
    return RUNNERS[cfg.command](cfg, out=sys.stdout, err=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
