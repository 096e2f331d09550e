"""S-maps and trapezoidal contour quadrature.

Every ``(1/2 pi i) oint f(t) dt`` is computed with the periodic trapezoidal
rule on a circle, doubling the node count until two successive estimates
agree.  For integrands analytic in an annulus around the circle the error
decays geometrically in the node count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (BranchError, ConvergenceError, DomainError, EvaluationError,
                     PoleError, UnsupportedDimension)
from .multiseries import Evaluation


@dataclass(frozen=True)
class ContourSpec:
    """Positively oriented circle ``center + radius * exp(i theta)``."""

    center: complex = 1.0
    radius: float = 0.5
    nodes: int = 256

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        n = self.nodes
        if n < 16 or n & (n - 1):
            raise ValueError("nodes must be a power of two >= 16")

    def points(self, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Nodes t_k and the weights with (1/2 pi i) oint f dt ~ sum w_k f(t_k)."""
        n = n or self.nodes
        e = np.exp(2j * np.pi * np.arange(n) / n)
        return complex(self.center) + self.radius * e, self.radius * e / n


DEFAULT_CONTOUR = ContourSpec()


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    node_count_used: int
    successive_diff: float


def s_map(a: complex, t: complex) -> complex:
    """S(a; t) = t / ((t - 1)(1 - a t))."""
    a, t = complex(a), complex(t)
    den = (t - 1) * (1 - a * t)
    if den == 0:
        raise PoleError(f"S({a}; t) has a pole at t = {t}")
    return t / den


def _s(a, t):
    return t / ((t - 1) * (1 - a * t))


def s_map_multi(a_vec: Sequence[complex], t_vec: Sequence[complex]) -> complex:
    """S(a_1..a_m; t_1..t_m) = S(S(a_m; t_m) (a_1..a_{m-1}); (t_1..t_{m-1}))."""
    a = [complex(v) for v in a_vec]
    t = [complex(v) for v in t_vec]
    if len(a) != len(t) or not a:
        raise ValueError("a_vec and t_vec must be non-empty and of equal length")
    depth = 0
    while len(a) > 1:
        try:
            s = s_map(a[-1], t[-1])
        except PoleError as exc:
            raise PoleError(f"{exc} (recursion depth {depth})", depth) from None
        a = [s * v for v in a[:-1]]
        t = t[:-1]
        depth += 1
    try:
        return s_map(a[0], t[0])
    except PoleError as exc:
        raise PoleError(f"{exc} (recursion depth {depth})", depth) from None


def _eval_integrand(f, t):
    try:
        vals = np.asarray(f(t), dtype=complex)
    except DomainError:
        raise
    except Exception as exc:  # noqa: BLE001 - reported with the failing node set
        raise EvaluationError(f"integrand raised {type(exc).__name__}: {exc}") from exc
    if vals.shape != t.shape:
        vals = np.broadcast_to(vals, t.shape)
    if not np.all(np.isfinite(vals)):
        bad = t[~np.isfinite(vals)][0]
        raise EvaluationError(f"integrand is not finite at t = {bad}")
    return vals


def contour_integral(f: Callable[[np.ndarray], np.ndarray], c: ContourSpec = DEFAULT_CONTOUR,
                     tol: float = 1e-13, max_nodes: int = 1 << 16) -> QuadratureResult:
    """(1/2 pi i) oint_c f(t) dt with adaptive node doubling.

    ``f`` receives an array of nodes and must return an array of the same
    shape.  Doubling stops once ``|I_N - I_{N/2}| < tol * max(1, |I_N|)``.
    """
    n = c.nodes // 2
    t, w = c.points(n)
    partial = complex(np.sum(w * _eval_integrand(f, t)))
    diff = math.inf
    while True:
        n *= 2
        if n > max_nodes:
            raise ConvergenceError(
                f"trapezoidal rule not converged with {max_nodes} nodes "
                f"(last difference {diff:.3e})"
            )
        # new nodes are the odd ones of the doubled grid
        e = np.exp(2j * np.pi * (2 * np.arange(n // 2) + 1) / n)
        t_new = complex(c.center) + c.radius * e
        new = complex(np.sum(c.radius * e / n * _eval_integrand(f, t_new)))
        value = partial / 2 + new
        diff = abs(value - partial)
        partial = value
        if diff < tol * max(1.0, abs(value)):
            return QuadratureResult(value, n, diff)


@dataclass(frozen=True)
class BaseEvaluator:
    """Vectorised evaluator for G_{n-1} together with its domain predicate.

    ``func`` maps an (m, n-1) array of points to m values; ``domain`` maps
    the same array to a boolean mask.
    """

    dim: int
    func: Callable[[np.ndarray], np.ndarray]
    domain: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    def __call__(self, pts):
        return self.func(pts)


def gn_via_recursion(x: Sequence[complex], base: BaseEvaluator,
                     c: ContourSpec = DEFAULT_CONTOUR, tol: float = 1e-13,
                     max_nodes: int = 1 << 14) -> Evaluation:
    """G_n(x) = (1/2 pi i) oint G_{n-1}(S(x_n; t) x') S(x_n; t) dt / t.

    Before the integrand is used, every mapped argument ``S(x_n; t) x'`` is
    tested against ``base.domain``; a failing node raises DomainError.
    """
    xs = np.asarray([complex(v) for v in x])
    n = len(xs)
    if base.dim != n - 1:
        raise ValueError(f"base evaluator has dimension {base.dim}, need {n - 1}")
    xp, xn = xs[:-1], xs[-1]

    def integrand(t):
        s = _s(xn, t)
        if n == 1:
            return s / t
        pts = s[:, None] * xp[None, :]
        ok = base.domain(pts)
        if not np.all(ok):
            bad = pts[~ok][0]
            raise DomainError(f"mapped argument {tuple(bad)} leaves the base domain {base.name}")
        return base(pts) * s / t

    res = contour_integral(integrand, c, tol, max_nodes)
    return Evaluation(res.value, res.successive_diff, res.node_count_used, 0)


def multicontour_integrand(x: np.ndarray, ts: Sequence[np.ndarray]) -> np.ndarray:
    """prod_j S(x_j..x_n; t_j..t_n) / t_j on broadcast node arrays.

    S(x_j..x_n; t_j..t_n) is the j-th step of the backward recursion
    sigma_n = S(x_n; t_n), sigma_j = S(sigma_{j+1}..sigma_n x_j; t_j).
    """
    n = len(x)
    scale = 1.0
    out = 1.0
    for j in range(n - 1, -1, -1):
        sigma = _s(scale * x[j], ts[j])
        out = out * sigma / ts[j]
        scale = scale * sigma
    return out


_MULTI_LIMIT = {1: 1 << 16, 2: 1 << 10, 3: 1 << 8}


def gn_via_multicontour(x: Sequence[complex], c: ContourSpec | None = None,
                        tol: float = 1e-10, max_nodes: int | None = None) -> Evaluation:
    """G_n(x) as an n-fold trapezoidal integral over C_1^n (n <= 3)."""
    xs = np.asarray([complex(v) for v in x])
    n = len(xs)
    if n > 3:
        raise UnsupportedDimension(f"n-fold contour evaluation is capped at n = 3 (got {n})")
    c = c or ContourSpec(1.0, 0.5, 16)
    cap = max_nodes or _MULTI_LIMIT[n]
    nz = xs[xs != 0]
    if np.any(np.abs(1 / nz - complex(c.center)) <= c.radius):
        raise DomainError("contour would enclose a pole 1/x_j")

    def estimate(m):
        t, w = c.points(m)
        if n == 1:
            return complex(np.sum(w * multicontour_integrand(xs, [t])))
        inner = list(np.meshgrid(*([t] * (n - 1)), indexing="ij"))
        w_inner = w
        for _ in range(n - 2):
            w_inner = np.multiply.outer(w_inner, w)
        total = 0j
        # loop over the outermost variable to bound memory at n = 3
        for k in range(m):
            vals = multicontour_integrand(xs, inner + [t[k]])
            if not np.all(np.isfinite(vals)):
                raise EvaluationError("n-fold integrand is not finite on the contour")
            total += w[k] * complex(np.sum(w_inner * vals))
        return total

    m = c.nodes
    prev = estimate(m)
    while True:
        m *= 2
        if m > cap:
            raise ConvergenceError(f"n-fold trapezoidal rule not converged with {cap} nodes per axis")
        cur = estimate(m)
        diff = abs(cur - prev)
        if diff < tol * max(1.0, abs(cur)):
            return Evaluation(cur, diff, m ** n, 0)
        prev = cur


EULER_LOOP = ContourSpec(1.0, 1.0, 64)


def _smoothed_loop(c: ContourSpec, m: int):
    """Nodes and weights of a circle that starts and ends at its point
    ``center - radius``, with a doubled sin-type change of variable that
    flattens the integrand at that point.  Endpoint nodes are dropped."""
    s = np.arange(1, m) / m
    w, dw = s, np.ones_like(s)
    for _ in range(2):
        dw = dw * (1 - np.cos(2 * np.pi * w))
        w = w - np.sin(2 * np.pi * w) / (2 * np.pi)
    e = -np.exp(2j * np.pi * w)
    t = complex(c.center) + c.radius * e
    weights = c.radius * e * dw / m
    return t, weights


def _is_integer(z: complex) -> bool:
    return z.imag == 0 and z.real == round(z.real)


def kernel_via_contour(u, z, c: ContourSpec = EULER_LOOP, tol: float = 1e-12,
                       max_nodes: int = 1 << 16) -> Evaluation:
    """K(u, z) = (1/2 pi i) oint S(u; t)^(z+1) dt / t.

    The power uses the principal logarithm of S.  For non-integer z the
    integrand is multivalued around t = 1, so the loop has to start and end
    at t = 0: the default contour is the circle |t - 1| = 1, traversed from
    the origin.  Adjacent nodes whose arguments of S differ by pi or more
    raise :class:`BranchError` (this is what happens for non-integer z on a
    circle that does not pass through the origin).
    """
    u, z = complex(u), complex(z)
    p = z + 1
    single_valued = _is_integer(z)
    center = complex(c.center)
    through_origin = abs(abs(center) - c.radius) < 1e-12
    if u != 0 and abs(1 / u - center) <= c.radius:
        raise DomainError(f"pole 1/u = {1 / u} lies inside the contour")

    def nodes(m):
        if through_origin:
            return _smoothed_loop(c, m)
        return c.points(m)

    def estimate(m):
        t, w = nodes(m)
        s = _s(u, t)
        if not single_valued:
            arg = np.angle(s)
            closed = not through_origin
            jumps = np.abs(np.diff(np.concatenate([arg, arg[:1]]) if closed else arg))
            if np.any(jumps >= np.pi):
                k = int(np.argmax(jumps >= np.pi))
                raise BranchError(f"arg S(u; t) jumps by {jumps[k]:.3f} near t = {t[k]}")
        vals = np.exp(p * np.log(s)) / t
        if not np.all(np.isfinite(vals)):
            raise EvaluationError("kernel integrand is not finite on the contour")
        return complex(np.sum(w * vals))

    m = c.nodes
    prev = estimate(m)
    while True:
        m *= 2
        if m > max_nodes:
            raise ConvergenceError(f"kernel quadrature not converged with {max_nodes} nodes")
        cur = estimate(m)
        diff = abs(cur - prev)
        if diff < tol * max(1.0, abs(cur)):
            return Evaluation(cur, diff, m, 0)
        prev = cur
