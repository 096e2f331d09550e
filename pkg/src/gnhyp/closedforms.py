"""Closed forms for G_1, G_2, G_3 and the identities behind them.

Covers the elliptic reduction of G_3 (quartic roots, cross-ratio, Riemann
normal form), the Appell-function routes to G_2 and G_3, the Cauchy-problem
coefficients with their Riccati and linear ODEs, and the Legendre
generating-function view of G_2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (BranchCutError, ConvergenceError, DomainError, PoleError,
                     SingularQ, ZeroCoordinate, ZeroX3)
from .gauss2f1 import hyp2f1, hyp2f1_array, hyp2f1_derivatives
from .multiseries import (DEFAULT_TRUNC, Evaluation, TruncationSpec, eval_f1_series,
                          eval_f2_series, eval_f4_series)
from .symmetry import qn, qn_array, u_invariant

RIEMANN_A, RIEMANN_B = 0.25, 0.75


def g1(x: complex) -> complex:
    x = complex(x)
    if x == 1:
        raise PoleError("G_1 has a pole at x = 1")
    return 1 / (1 - x)


def _checked_sqrt_q(x) -> complex:
    q = complex(qn([complex(v) for v in x]))
    if q == 0:
        raise SingularQ(f"Q vanishes at {tuple(x)}")
    if q.imag == 0 and q.real < 0:
        raise BranchCutError(f"Q = {q.real:g} lies on the principal cut of the square root")
    return cmath.sqrt(q)


def g2(x1: complex, x2: complex) -> complex:
    """1 / sqrt(Q_2(x1, x2)), principal branch."""
    return 1 / _checked_sqrt_q((x1, x2))


def g3(x: Sequence[complex]) -> complex:
    """2F1(1/4, 3/4; 1; u(x)) / sqrt(Q_3(x)), principal branches."""
    x = [complex(v) for v in x]
    if len(x) != 3:
        raise ValueError("g3 takes a point with three coordinates")
    root = _checked_sqrt_q(x)
    u = complex(u_invariant(x))
    if u.imag == 0 and u.real >= 1:
        raise BranchCutError(f"u = {u.real:g} lies on the cut [1, inf)")
    return hyp2f1(RIEMANN_A, RIEMANN_B, 1, u).value / root


def gn_closed(x: Sequence[complex]) -> complex:
    n = len(x)
    if n == 1:
        return g1(x[0])
    if n == 2:
        return g2(*x)
    if n == 3:
        return g3(x)
    raise DomainError("closed forms exist for n <= 3 only")


# -- vectorised variants (for contour base evaluators) -----------------------

def _q_ok(q: np.ndarray) -> np.ndarray:
    return (q != 0) & ~((q.imag == 0) & (q.real < 0))


def g2_domain(pts: np.ndarray) -> np.ndarray:
    return _q_ok(qn_array(pts))


def g2_array(pts: np.ndarray) -> np.ndarray:
    return 1 / np.sqrt(qn_array(np.asarray(pts, dtype=complex)))


def g3_domain(pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, dtype=complex)
    q = qn_array(pts)
    ok = _q_ok(q)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = 64 * pts.prod(axis=1) / q ** 2
        w = u / (u - 1)
    on_cut = (u.imag == 0) & (u.real >= 1)
    summable = np.minimum(np.abs(u), np.abs(w)) < 0.99
    return ok & ~on_cut & summable


def g3_array(pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, dtype=complex)
    q = qn_array(pts)
    u = 64 * pts.prod(axis=1) / q ** 2
    return hyp2f1_array(RIEMANN_A, RIEMANN_B, 1, u) / np.sqrt(q)


# -- Appell routes ------------------------------------------------------------

def g2_via_appell_chain(x1: float, x2: float, trunc: TruncationSpec = DEFAULT_TRUNC) -> dict:
    """G_2 three ways: an F_2 representation, its reduction to F_1, and the
    elementary value of that F_1.

    Returns a dict with keys ``f2``, ``f1`` and ``elementary``.
    """
    r = cmath.sqrt(complex(x2))
    scale = (1 + r) ** -2
    a, b = complex(x1) * scale, 4 * r * scale
    f2 = scale * eval_f2_series(1, (1, 0.5), (1, 1), a, b, trunc).value
    # F_2(al,(be,be'),(ga,al),a,b) = (1-b)^(-be') F_1(be,(al-be',be'),ga,a,a/(1-b))
    f1_arg = a / (1 - b)
    f1 = scale * (1 - b) ** -0.5 * eval_f1_series(1, (0.5, 0.5), 1, a, f1_arg, trunc).value
    elementary = scale * (1 - b) ** -0.5 * ((1 - a) * (1 - f1_arg)) ** -0.5
    return {"f2": f2, "f1": f1, "elementary": elementary}


def g3_f4_expansion(x: Sequence[complex], K: int, trunc: TruncationSpec = DEFAULT_TRUNC) -> Evaluation:
    """sum_{k=0..K} F_4(k+1, k+1, 1, 1; x_1, x_2) x_3^k."""
    if K < 0:
        raise ValueError("K must be >= 0")
    x1, x2, x3 = (complex(v) for v in x)
    total, err, terms = 0j, 0.0, 0
    power = complex(1.0)
    for k in range(K + 1):
        f = eval_f4_series(k + 1, k + 1, 1, 1, x1, x2, trunc)
        total += f.value * power
        err += f.error_estimate * abs(power)
        terms += f.terms_used
        power *= x3
    return Evaluation(total, err, terms, K)


# -- elliptic reduction -------------------------------------------------------

@dataclass(frozen=True)
class EllipticReduction:
    a_plus: complex
    a_minus: complex
    t1: complex
    t2: complex
    t3: complex
    t4: complex
    Q: complex
    u: complex
    lam: complex
    mu: complex

    @property
    def roots(self) -> tuple[complex, complex, complex, complex]:
        return self.t1, self.t2, self.t3, self.t4


def _root_pair(a: complex, x3: complex) -> tuple[complex, complex]:
    # roots of x3 t^2 - a t + 1: (a -+ d)/(2 x3); the small one via the product 1/x3
    d = cmath.sqrt(a * a - 4 * x3)
    return 2 / (a + d), (a + d) / (2 * x3)


def elliptic_reduction(x: Sequence[complex], root_sign: int = 1) -> EllipticReduction:
    """Roots of the quartic under the G_3 integral and its Riemann normal form.

    ``root_sign`` selects the sign of sqrt(x_1 x_2); flipping it swaps
    (t1, t3) with (t2, t4) and leaves lambda and mu unchanged.
    """
    x1, x2, x3 = (complex(v) for v in x)
    if x3 == 0:
        raise ZeroX3("the reduction divides by x_3; permute a nonzero coordinate into the last slot")
    q = complex(qn([x1, x2, x3]))
    if q == 0:
        raise SingularQ(f"Q vanishes at {(x1, x2, x3)}")
    w = root_sign * cmath.sqrt(x1 * x2)
    base = 1 - x1 - x2 + x3
    a_plus, a_minus = base + 2 * w, base - 2 * w
    t1, t3 = _root_pair(a_plus, x3)
    t2, t4 = _root_pair(a_minus, x3)
    u = 64 * x1 * x2 * x3 / q ** 2
    s = cmath.sqrt(1 - u)
    lam = u / (1 + s) ** 2  # (1-s)/(1+s) without cancellation at small u
    mu = -q / 2 * (1 + s)
    return EllipticReduction(a_plus, a_minus, t1, t2, t3, t4, q, u, lam, mu)


def quartic(x: Sequence[complex], t: complex) -> complex:
    """P(x; t) = ((1-t)(1-x_3 t) + (x_1+x_2) t)^2 - 4 x_1 x_2 t^2."""
    x1, x2, x3 = (complex(v) for v in x)
    return ((1 - t) * (1 - x3 * t) + (x1 + x2) * t) ** 2 - 4 * x1 * x2 * t * t


_SAMPLE_T = (-1.0, -0.5j, 0.3, 3 + 1j, 7 - 2j)


def _paired_gaps(red: EllipticReduction, x3: complex) -> tuple[complex, complex]:
    # t2 - t1 and t4 - t3 without cancellation when sqrt(x1 x2) is small
    ap, am = red.a_plus, red.a_minus
    dp, dm = cmath.sqrt(ap * ap - 4 * x3), cmath.sqrt(am * am - 4 * x3)
    if abs(dp + dm) < 1e-8 * (abs(dp) + abs(dm) + 1e-300):
        return red.t2 - red.t1, red.t4 - red.t3
    gap = (ap - am) * (1 + (ap + am) / (dp + dm))  # (a+ + d+) - (a- + d-)
    return 2 * gap / ((ap + dp) * (am + dm)), -gap / (2 * x3)


def reduction_residuals(red: EllipticReduction, x: Sequence[complex]) -> dict:
    """Relative residuals of the reduction invariants."""
    x3 = complex(x[2])
    t1, t2, t3, t4 = red.roots
    fact = 0.0
    for t in _SAMPLE_T:
        p = quartic(x, t)
        prod = x3 ** 2 * (t - t1) * (t - t2) * (t - t3) * (t - t4)
        fact = max(fact, abs(p - prod) / (abs(p) + abs(prod)))
    d21, d43 = _paired_gaps(red, x3)
    cross = d43 * d21 / ((t4 - t1) * (t2 - t3))
    mu_prod = (t2 - t3) * (t4 - t1) * x3 ** 2
    s = cmath.sqrt(1 - red.u)
    lhs = 2 * x3 ** 2 * (t4 - t1) * (t2 - t3)
    rhs = -red.Q * (1 + s)
    return {
        "factorization": fact,
        "cross_ratio": abs(red.lam - cross) / max(abs(red.lam), abs(cross), 1e-300),
        "mu_product": abs(red.mu - mu_prod) / abs(red.mu),
        "root_product": abs(lhs - rhs) / abs(rhs),
    }


def small_x_limits(eps: float = 1e-6) -> dict:
    """Deviations from the x -> 0 limits at x = (eps, eps, eps).

    Each entry is O(eps): t1, t2 -> 1, t3, t4 -> infinity, lambda -> 0,
    mu -> -1.
    """
    red = elliptic_reduction((eps, eps, eps))
    return {
        "t1": abs(red.t1 - 1),
        "t2": abs(red.t2 - 1),
        "1/t3": abs(1 / red.t3),
        "1/t4": abs(1 / red.t4),
        "lambda": abs(red.lam),
        "mu": abs(red.mu + 1),
    }


def quartic_product_exact(x: Sequence) -> object:
    """(a+^2 - 4x_3)(a-^2 - 4x_3) - (Q^2 - 64 x_1 x_2 x_3), with sqrt(x_1 x_2)
    cleared through a+ a- and a+^2 + a-^2.  Zero in exact arithmetic."""
    x1, x2, x3 = x
    base = 1 - x1 - x2 + x3
    prod = base ** 2 - 4 * x1 * x2
    squares = 2 * base ** 2 + 8 * x1 * x2
    lhs = prod ** 2 - 4 * x3 * squares + 16 * x3 ** 2
    return lhs - (qn(x) ** 2 - 64 * x1 * x2 * x3)


def elliptic_k_trapezoid(lam: complex, tol: float = 1e-15, max_nodes: int = 1 << 16) -> Evaluation:
    """(2/pi) int_0^{pi/2} d theta / sqrt(1 - lam sin^2 theta) = 2F1(1/2, 1/2; 1; lam).

    The integrand is even and pi-periodic in theta, so the plain average over
    an equispaced grid converges geometrically.
    """
    lam = complex(lam)
    if lam.imag == 0 and lam.real >= 1:
        raise BranchCutError(f"lambda = {lam.real:g} lies on [1, inf)")
    m = 8
    prev = None
    while m <= max_nodes:
        theta = np.pi * np.arange(m) / m
        cur = complex(np.mean(1 / np.sqrt(1 - lam * np.sin(theta) ** 2)))
        if prev is not None and abs(cur - prev) < tol * max(1.0, abs(cur)):
            return Evaluation(cur, abs(cur - prev), m, 0)
        prev = cur
        m *= 2
    raise ConvergenceError(f"elliptic quadrature not converged with {max_nodes} nodes")


def g3_via_elliptic_integral(x: Sequence[complex], tol: float = 1e-14) -> Evaluation:
    """G_3 from the Riemann normal form: (i / sqrt(mu)) 2F1(1/2, 1/2; 1; lambda).

    i/sqrt(mu) is taken as sqrt(2/Q) (1 + sqrt(1-u))^(-1/2), which fixes the
    sign by the value 1 at x = 0.
    """
    red = elliptic_reduction(x)
    k = elliptic_k_trapezoid(red.lam, tol)
    pref = cmath.sqrt(2 / red.Q) / cmath.sqrt(1 + cmath.sqrt(1 - red.u))
    return Evaluation(pref * k.value, abs(pref) * k.error_estimate, k.terms_used, 0)


# -- Cauchy-problem coefficients and the ODEs for phi(v) ----------------------

def ode_variable(x: Sequence):
    """v = x_1 x_2 x_3 / Q_3^2 (so that u = 64 v)."""
    q = qn(x)
    if q == 0:
        raise SingularQ(f"Q vanishes at {tuple(x)}")
    return x[0] * x[1] * x[2] / q ** 2


def _dlogq(var_index: int, x: Sequence):
    s = sum(x)
    t = x[var_index - 1]
    return (-2 * (1 - s) - 4 * (s - t)) / qn(x)


def a_coefficients(var_index: int, x: Sequence):
    """(A2, A1, A0) for the coordinate ``var_index`` (1-based).

    Substituting F = phi(v)/sqrt(Q) into t d_t(t d_t F) gives
    (A2 phi'' + A1 phi' + A0 phi) / (t sqrt(Q)); v = x_1 x_2 x_3 / Q^2.
    Works with Fraction and complex inputs alike.
    """
    if var_index not in (1, 2, 3):
        raise ValueError("var_index must be 1, 2 or 3")
    t = x[var_index - 1]
    if t == 0:
        raise ZeroCoordinate(f"x_{var_index} must be nonzero")
    q = qn(x)
    if q == 0:
        raise SingularQ(f"Q vanishes at {tuple(x)}")
    v = ode_variable(x)
    d = _dlogq(var_index, x)
    a2 = (1 / t - 4 * d + 4 * t * d * d) * v * v
    a1 = (1 / t - 4 * t / q - 7 * d + 8 * t * d * d) * v
    a0 = -t / q - d / 2 + 3 * t * d * d / 4
    return a2, a1, a0


def a_difference_residuals(x: Sequence) -> tuple:
    """A_{k,x} - A_{k,y} - (x-y)/(xy) {(64v-1)v^2, (128v-1)v, 12v} for k = 2, 1, 0.

    All three vanish exactly, which turns the PDE into the linear ODE for phi.
    """
    xx, yy = x[0], x[1]
    v = ode_variable(x)
    ax, ay = a_coefficients(1, x), a_coefficients(2, x)
    f = (xx - yy) / (xx * yy)
    expect = ((64 * v - 1) * v * v, (128 * v - 1) * v, 12 * v)
    return tuple(a - b - f * e for a, b, e in zip(ax, ay, expect))


def log_derivative_residuals(x: Sequence) -> tuple:
    """(D_x Q - D_y Q - 4(x-y)/Q,
        x (D_x Q)^2 - y (D_y Q)^2 - 4(x-y)/Q - 16 (x-y) v/(xy)), D = d log."""
    xx, yy = x[0], x[1]
    q = qn(x)
    v = ode_variable(x)
    dx, dy = _dlogq(1, x), _dlogq(2, x)
    r1 = dx - dy - 4 * (xx - yy) / q
    r2 = xx * dx * dx - yy * dy * dy - 4 * (xx - yy) / q - 16 * (xx - yy) * v / (xx * yy)
    return r1, r2


def _phi_derivs(t):
    t = complex(t)
    z = 64 * t
    if z.imag == 0 and z.real >= 1:
        raise DomainError(f"64 t = {z.real:g} lies on the cut [1, inf)")
    f, f1, f2 = hyp2f1_derivatives(RIEMANN_A, RIEMANN_B, 1, z)
    return f, 64 * f1, 64 * 64 * f2


def psi(t) -> complex:
    """psi = phi'/phi with phi(t) = 2F1(1/4, 3/4; 1; 64 t)."""
    f, f1, _ = _phi_derivs(t)
    return f1 / f


def riccati_residual(t) -> complex:
    """t(64t-1) psi' + t(64t-1) psi^2 + (128t-1) psi + 12."""
    f, f1, f2 = _phi_derivs(t)
    p = f1 / f
    dp = f2 / f - p * p
    t = complex(t)
    return t * (64 * t - 1) * dp + t * (64 * t - 1) * p * p + (128 * t - 1) * p + 12


def hypergeo_ode_residual(t) -> complex:
    """t(64t-1) phi'' + (128t-1) phi' + 12 phi."""
    f, f1, f2 = _phi_derivs(t)
    t = complex(t)
    return t * (64 * t - 1) * f2 + (128 * t - 1) * f1 + 12 * f


# -- Legendre generating function --------------------------------------------

def legendre_generating_check(x1: float, x2: float, N: int = 60) -> float:
    """|sum_{n<=N} P_n(z) r^n - G_2(x1, x2)| with z = (x1+x2)/(x1-x2), r = x1-x2."""
    if x1 == x2:
        raise DomainError("x1 = x2 makes z infinite")
    r = x1 - x2
    z = (x1 + x2) / r
    if abs(r) * (abs(z) + math.sqrt(abs(z * z - 1))) >= 1:
        raise DomainError(f"generating series diverges at r = {r:g}, z = {z:g}")
    p_prev, p = 1.0, z
    total = 1.0 + z * r
    power = r
    for n in range(1, N):
        p_prev, p = p, ((2 * n + 1) * z * p - n * p_prev) / (n + 1)
        power *= r
        total += p * power
    return abs(total - g2(x1, x2))
