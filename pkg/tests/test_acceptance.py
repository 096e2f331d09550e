"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import time

import numpy as np
import pytest

from gnhyp.bases import default_base
from gnhyp.closedforms import g2, g3, gn_closed
from gnhyp.contour import gn_via_multicontour, gn_via_recursion
from gnhyp.multiseries import TruncationSpec, eval_gn_series, in_omega_n
from gnhyp.suites import run_suite


@pytest.fixture
def report(pytestconfig):
    term = pytestconfig.pluginmanager.get_plugin("terminalreporter")

    def emit(number: int, title: str, passed: bool, detail: str):
        line = f"[criterion {number:>2}] {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        if term is not None:
            term.write_line("")
            term.write_line(line)
        else:
            print(line)
        return passed
    return emit


def rel(a, b):
    return abs(a - b) / abs(b)


def checks_line(checks):
    worst = max(c.worst for c in checks)
    bad = [c.name for c in checks if not c.passed]
    return f"{len(checks)} checks, worst residual {worst:.2e}" + (f", failing: {bad}" if bad else "")


def select(checks, *prefixes):
    return [c for c in checks if c.name.startswith(prefixes)]


def test_criterion_01_closed_form_n2(report):
    axis = np.linspace(0, 0.2, 10)
    pts = [(a, b) for a in axis for b in axis if in_omega_n((a, b))]
    start = time.perf_counter()
    worst = max(rel(eval_gn_series(p).value, g2(*p)) for p in pts)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-10 and elapsed < 1.0
    assert report(1, "series vs closed form, n=2", ok,
                  f"{len(pts)} pts, max rel {worst:.2e} (< 1e-10), {elapsed:.2f} s (< 1 s)")


def test_criterion_02_closed_form_n3(report):
    axis = np.linspace(0, 0.08, 5)
    trunc = TruncationSpec(max_total_degree=60)
    pts = [(a, b, c) for a in axis for b in axis for c in axis]
    start = time.perf_counter()
    worst, top = 0.0, 0
    for p in pts:
        ev = eval_gn_series(p, trunc)
        top = max(top, ev.degree_reached)
        worst = max(worst, rel(ev.value, g3(p)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 30 and top <= 60
    assert report(2, "series (degree <= 60) vs closed form, n=3", ok,
                  f"{len(pts)} pts, max rel {worst:.2e} (< 1e-9), max degree {top}, {elapsed:.2f} s (< 30 s)")


def recursion_points(n):
    rng = np.random.default_rng(100 + n)
    pts = [tuple(complex(v) for v in rng.uniform(-0.04, 0.04, n)) for _ in range(10)]
    pts.append(tuple([0.02 + 0.01j] * n))
    pts.append((0.1, 0.1) if n == 2 else (0.02,) * n)
    return pts


def test_criterion_03_recursion(report):
    parts, ok = [], True
    for n in (2, 3, 4):
        worst, nodes = 0.0, 0
        pts = recursion_points(n)
        for x in pts:
            ev = gn_via_recursion(x, default_base(n - 1))
            oracle = gn_closed(x) if n <= 3 else eval_gn_series(x).value
            worst = max(worst, rel(ev.value, oracle))
            nodes = max(nodes, ev.terms_used)
        ok &= worst < 1e-8 and nodes <= 2048 and len(pts) >= 10
        parts.append(f"n={n}: {len(pts)} pts max rel {worst:.1e} nodes {nodes}")
    assert report(3, "contour recursion", ok, "; ".join(parts) + " (< 1e-8, <= 2048 nodes)")


def test_criterion_04_multicontour(report):
    rng = np.random.default_rng(4)
    parts, ok = [], True
    for n, tol in ((1, 1e-7), (2, 1e-7), (3, 1e-6)):
        pts = [tuple(complex(v) for v in rng.uniform(-0.03, 0.03, n)) for _ in range(5)]
        pts.append((0.05,) * n)
        worst = max(rel(gn_via_multicontour(x).value, gn_closed(x)) for x in pts)
        ok &= worst < tol
        parts.append(f"n={n}: {len(pts)} pts max rel {worst:.1e} (< {tol:g})")
    assert report(4, "nested-contour representation", ok, "; ".join(parts))


@pytest.fixture(scope="module")
def suites():
    return {name: run_suite(name, seed=0) for name in
            ("pde", "qcov", "uinv", "quasi", "elliptic", "riccati", "appell", "legendre", "kernel")}


def test_criterion_05_exact_identities(report, suites):
    checks = (suites["pde"] + suites["qcov"] + suites["uinv"]
              + select(suites["riccati"], "log-derivative", "coefficient differences")
              + select(suites["elliptic"], "quartic discriminant"))
    ok = all(c.passed and c.worst == 0 for c in checks)
    assert report(5, "exact rational identities", ok, checks_line(checks))


def test_criterion_06_riccati(report, suites):
    checks = select(suites["riccati"], "psi(0)", "Riccati", "linear ODE")
    ok = len(checks) == 3 and all(c.passed for c in checks)
    assert report(6, "Riccati and linear ODE residuals", ok, checks_line(checks))


def test_criterion_07_quasi_invariance(report, suites):
    checks = suites["quasi"]
    ok = all(c.passed for c in checks)
    assert report(7, "branch-tracked quasi-invariance and H invariance", ok, checks_line(checks))


def test_criterion_08_appell(report, suites):
    checks = suites["appell"]
    ok = all(c.passed for c in checks)
    assert report(8, "Appell transformation identities", ok, checks_line(checks))


def test_criterion_09_kernel(report, suites):
    checks = suites["kernel"]
    ok = all(c.passed for c in checks)
    assert report(9, "kernel contour vs 2F1 vs P_k sums", ok, checks_line(checks))


def test_criterion_10_elliptic(report, suites):
    invariants = select(suites["elliptic"], "reduction")
    limits = select(suites["elliptic"], "limits")
    ok = len(invariants) == 4 and all(c.passed for c in invariants + limits)
    detail = (f"{checks_line(invariants)} (< 1e-10 rel); limits at eps=1e-6 deviate by "
              f"{limits[0].worst:.1e} (O(eps), < {limits[0].tolerance:g})")
    assert report(10, "elliptic reduction invariants", ok, detail)


def test_criterion_11_legendre(report, suites):
    checks = suites["legendre"]
    ok = all(c.passed for c in checks)
    assert report(11, "Legendre generating function", ok, checks_line(checks))
