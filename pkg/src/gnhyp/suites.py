"""Identity suites run by ``gnhyp verify`` and by the acceptance tests.

Every suite returns a list of :class:`Check` records in a fixed order, so a
given seed always produces the same report.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import closedforms as cf
from .contour import kernel_via_contour
from .gauss2f1 import kernel_K, kernel_series
from .multiseries import (TruncationSpec, check_pde_coefficients, eval_f4_series, eval_gn_series,
                          f4_via_gauss)
from .symmetry import (Permutation, RationalPoint, hn, qn, random_rational_point, t_involution,
                       u_invariant, verify_h_invariance, verify_q_covariance,
                       verify_quasi_invariance, verify_u_invariance)


@dataclass
class Check:
    name: str
    passed: bool
    worst: float
    tolerance: float
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  first failure: {self.counterexample}" if self.counterexample else ""
        return f"{status}  {self.name:<44} worst={self.worst:.3e} tol={self.tolerance:.1e}{tail}"


def _numeric(name, cases, residual: Callable, tol: float) -> Check:
    worst, first = 0.0, None
    for case in cases:
        r = float(residual(case))
        worst = max(worst, r)
        if not r < tol and first is None:
            first = repr(case)
    return Check(name, first is None, worst, tol, first)


def _exact(name, cases, holds: Callable) -> Check:
    first = None
    count = 0
    for case in cases:
        count += 1
        if not holds(case):
            first = repr(tuple(str(v) for v in case) if isinstance(case, tuple) else case)
            break
    return Check(f"{name} ({count} cases)", first is None, 0.0 if first is None else 1.0, 0.0, first)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# -- point generators ---------------------------------------------------------

def rational_points(seed: int, n: int, count: int, accept: Callable = lambda p: True) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = random_rational_point(rng, n)
        try:
            if accept(p):
                out.append(p)
        except ZeroDivisionError:
            continue
    return out


def small_complex_points(seed: int, count: int, radius: float = 0.05) -> list:
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        z = rng.uniform(-radius, radius, 3) + 1j * rng.uniform(-radius, radius, 3)
        if np.all(np.abs(z) > 1e-3):
            pts.append(tuple(complex(v) for v in z))
    return pts


def negative_points(n: int) -> list:
    """Ten real points with all coordinates negative."""
    grid = {2: (0.05, 0.1, 0.2, 0.3), 3: (0.02, 0.05, 0.1)}[n]
    pts = [tuple(-v for v in p) for p in itertools.product(grid, repeat=n)]
    step = max(1, len(pts) // 10)
    return pts[::step][:max(10, len(pts) // step)]


def grid_n2(size: int = 10, hi: float = 0.2) -> list:
    axis = np.linspace(0, hi, size)
    return [(float(a), float(b)) for a in axis for b in axis
            if np.sqrt(a) + np.sqrt(b) < 1]


# -- suites -------------------------------------------------------------------

def suite_pde(n: int | None = None, max_degree: int = 12, **_) -> list[Check]:
    out = []
    for k in ([n] if n else [1, 2, 3, 4]):
        rep = check_pde_coefficients(k, max_degree)
        out.append(Check(f"coefficient identities n={k} |l|<={max_degree} ({rep.checked} cases)",
                         rep.ok, 0.0 if rep.ok else 1.0, 0.0, rep.counterexample))
    return out


def suite_qcov(seed: int = 0, n: int | None = None, count: int = 50, **_) -> list[Check]:
    out = []
    for k in ([n] if n else [1, 2, 3, 4]):
        for j in range(1, k + 1):
            pts = rational_points(seed + 101 * k + j, k, count, lambda p: p[j - 1] != 0)
            out.append(_exact(f"Q covariance n={k} j={j}", pts,
                              lambda p: verify_q_covariance(j, p)))
    return out


def suite_uinv(seed: int = 0, count: int = 50, **_) -> list[Check]:
    out = []
    for j in (1, 2, 3):
        def ok(p, j=j):
            return p[j - 1] != 0 and qn(p) != 0 and qn(t_involution(j, p)) != 0
        pts = rational_points(seed + 307 + j, 3, count, ok)
        out.append(_exact(f"u invariance j={j}", pts, lambda p: verify_u_invariance(j, p)))
    pts = rational_points(seed + 311, 3, count, lambda p: qn(p) != 0)
    out.append(_exact("u permutation closure", pts,
                      lambda p: all(u_invariant(Permutation(s)(p)) == u_invariant(p)
                                    for s in itertools.permutations((1, 2, 3)))))
    third = Fraction(1, 9)
    out.append(_exact("u(1/9, 1/9, 1/9) = 1", [RationalPoint((third,) * 3)],
                      lambda p: u_invariant(p) == 1))
    # sqrt x + sqrt y + sqrt z = 1 with rational roots
    witnesses = [RationalPoint((a * a, b * b, (1 - a - b) ** 2))
                 for a in (Fraction(1, 5), Fraction(1, 3), Fraction(2, 7))
                 for b in (Fraction(1, 4), Fraction(1, 6))]
    out.append(_exact("u = 1 on the sqrt-sum boundary", witnesses, lambda p: u_invariant(p) == 1))
    return out


def suite_quasi(**_) -> list[Check]:
    out = []
    for n in (2, 3):
        pts = negative_points(n)
        for j in range(1, n + 1):
            out.append(_numeric(f"quasi-invariance n={n} j={j} ({len(pts)} pts)", pts,
                                lambda p: verify_quasi_invariance(n, j, p), 1e-9))
            out.append(_numeric(f"H invariance n={n} j={j} ({len(pts)} pts)", pts,
                                lambda p: verify_h_invariance(n, j, p), 1e-9))
    grid = grid_n2()
    trunc = TruncationSpec(target_tol=1e-16)
    out.append(_numeric(f"H_2 = 1 on the n=2 grid ({len(grid)} pts)", grid,
                        lambda p: abs(hn(p, eval_gn_series(p, trunc).value) - 1), 1e-11))
    return out


def suite_elliptic(seed: int = 0, count: int = 50, **_) -> list[Check]:
    pts = small_complex_points(seed + 5, count)
    tol = 1e-10
    out = []
    residuals = [cf.reduction_residuals(cf.elliptic_reduction(p), p) for p in pts]
    for key in ("factorization", "cross_ratio", "mu_product", "root_product"):
        out.append(_numeric(f"reduction {key} ({count} pts)", range(count),
                            lambda i, key=key: residuals[i][key], tol))
    eps = 1e-6
    lim = cf.small_x_limits(eps)
    out.append(Check("limits at x=(eps,eps,eps), all O(eps)", max(lim.values()) < 10 * eps,
                     max(lim.values()), 10 * eps))
    out.append(_numeric(f"elliptic integral vs closed form ({count} pts)", pts,
                        lambda p: _rel(cf.g3_via_elliptic_integral(p).value, cf.g3(p)), 1e-9))

    def branch_swap(p):
        a, b = cf.elliptic_reduction(p, 1), cf.elliptic_reduction(p, -1)
        return max(_rel(a.lam, b.lam) if a.lam else abs(b.lam), _rel(a.mu, b.mu))
    out.append(_numeric("lambda, mu independent of sqrt(x1 x2) sign", pts, branch_swap, 1e-9))
    rat = rational_points(seed + 17, 3, 20)
    out.append(_exact("quartic discriminant product form, exact", rat, lambda p: cf.quartic_product_exact(p) == 0))
    return out


def riccati_grid() -> list[float]:
    return [k / 1000 for k in range(8)] + [0.0078125]


def suite_riccati(seed: int = 0, count: int = 50, **_) -> list[Check]:
    ts = riccati_grid()
    out = [
        Check("psi(0) = 12", cf.psi(0) == 12, abs(cf.psi(0) - 12), 0.0),
        _numeric(f"Riccati residual ({len(ts)} t)", ts, lambda t: abs(cf.riccati_residual(t)), 1e-9),
        _numeric(f"linear ODE residual ({len(ts)} t)", ts,
                 lambda t: abs(cf.hypergeo_ode_residual(t)), 1e-9),
    ]

    def ok(p):
        return p[0] != 0 and p[1] != 0 and p[2] != 0 and qn(p) != 0
    pts = rational_points(seed + 23, 3, count, ok)
    out.append(_exact("log-derivative identities of Q, exact", pts,
                      lambda p: cf.log_derivative_residuals(p) == (0, 0)))
    out.append(_exact("coefficient differences, exact", pts,
                      lambda p: all(r == 0 for r in cf.a_difference_residuals(p))))
    return out


def suite_appell(**_) -> list[Check]:
    axis = np.linspace(0, 0.05, 4)
    grid = [(float(a), float(b)) for a in axis for b in axis]
    out = [
        _numeric(f"F_4 Gauss resummation ({len(grid)} pts)", grid,
                 lambda p: _rel(f4_via_gauss(1, 1, 1, 1, *p).value,
                                eval_f4_series(1, 1, 1, 1, *p).value), 1e-8),
    ]

    def chain(p):
        vals = cf.g2_via_appell_chain(*p)
        ref = cf.g2(*p)
        return max(_rel(v, ref) for v in vals.values())
    out.append(_numeric(f"F_2 -> F_1 -> elementary chain ({len(grid)} pts)", grid, chain, 1e-8))
    pts3 = [(0.05, 0.05, 0.05), (0.02, 0.04, 0.03), (0.01, 0.0, 0.05), (-0.03, 0.02, 0.04)]
    out.append(_numeric("F_4 expansion of G_3, K=20", pts3,
                        lambda p: _rel(cf.g3_f4_expansion(p, 20).value, cf.g3(p)), 1e-8))
    return out


def legendre_points() -> list[tuple[float, float]]:
    return [(0.15, 0.05), (0.1, 0.0), (0.05, 0.15), (0.2, 0.1), (0.12, 0.02),
            (0.2, 0.15), (0.06, 0.01), (0.0, 0.1), (0.12, 0.1), (0.18, 0.08)]


def suite_legendre(**_) -> list[Check]:
    pts = legendre_points()
    return [_numeric(f"Legendre generating function ({len(pts)} pts)", pts,
                     lambda p: cf.legendre_generating_check(*p, N=200), 1e-9)]


def kernel_cases() -> list[tuple[complex, complex]]:
    us = (0.0, 0.1, -0.2, 0.3, 0.15 + 0.15j)
    zs = (0, 1, 1.5, 2 + 1j)
    return [(u, z) for u in us for z in zs]


def suite_kernel(**_) -> list[Check]:
    def spread(case):
        u, z = case
        a = kernel_via_contour(u, z).value
        b = kernel_K(u, z).value
        c = kernel_series(u, z).value
        return max(_rel(a, b), _rel(c, b))
    cases = kernel_cases()
    return [_numeric(f"kernel contour / 2F1 / P_k sums ({len(cases)} cases)", cases, spread, 1e-8)]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "pde": suite_pde,
    "qcov": suite_qcov,
    "uinv": suite_uinv,
    "quasi": suite_quasi,
    "elliptic": suite_elliptic,
    "riccati": suite_riccati,
    "appell": suite_appell,
    "legendre": suite_legendre,
    "kernel": suite_kernel,
}


def run_suite(name: str, **kwargs) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](**kwargs)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name](**kwargs)
