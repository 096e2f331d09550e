"""Involutions T_{n,j}, the quadratic form Q_n, the invariant u and H_n.

Exact checks run on :class:`RationalPoint` (tuples of ``Fraction``); the
polynomial helpers are written generically so the same code serves
``Fraction``, ``complex`` and numpy inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import BranchPathError, DomainError, SingularQ, ZeroCoordinate
from .multiseries import TruncationSpec, eval_gn_series


class RationalPoint(tuple):
    """Point with exact rational coordinates."""

    def __new__(cls, coords):
        return super().__new__(cls, (Fraction(c) for c in coords))


Point = Union[Sequence[complex], RationalPoint]


def _rebuild(like, coords):
    if isinstance(like, RationalPoint):
        return RationalPoint(coords)
    return type(like)(coords) if isinstance(like, tuple) else tuple(coords)


def qn(x: Point):
    """Q_n(x) = (1 - sum x_j)^2 - 2 sum_{i != j} x_i x_j (ordered pairs)."""
    s = sum(x)
    e2 = sum(x[i] * x[j] for i in range(len(x)) for j in range(i + 1, len(x)))
    return (1 - s) ** 2 - 4 * e2


def qn_array(pts: np.ndarray) -> np.ndarray:
    """Q_n for an (m, n) array of points."""
    s = pts.sum(axis=1)
    return (1 - s) ** 2 - 2 * (s * s - (pts * pts).sum(axis=1))


def t_involution(j: int, x: Point):
    """T_{n,j}(x) = (x_1/x_j, ..., 1/x_j, ..., x_n/x_j), j 1-based."""
    n = len(x)
    if not 1 <= j <= n:
        raise IndexError(f"j = {j} outside 1..{n}")
    p = x[j - 1]
    if p == 0:
        raise ZeroCoordinate(f"T_{{{n},{j}}} needs x_{j} != 0")
    one = Fraction(1) if isinstance(p, Fraction) else 1
    coords = [one / p if k == j - 1 else x[k] / p for k in range(n)]
    return _rebuild(x, coords)


@dataclass(frozen=True)
class Involution:
    j: int

    def __call__(self, x):
        return t_involution(self.j, x)


@dataclass(frozen=True)
class Permutation:
    """x -> (x_{sigma(1)}, ..., x_{sigma(n)}), images 1-based."""

    sigma: tuple[int, ...]

    def __call__(self, x):
        if sorted(self.sigma) != list(range(1, len(x) + 1)):
            raise ValueError(f"{self.sigma} is not a permutation of 1..{len(x)}")
        return _rebuild(x, [x[k - 1] for k in self.sigma])


@dataclass(frozen=True)
class TransformWord:
    """Composition of involutions and permutations, applied left to right."""

    letters: tuple

    def __call__(self, x):
        for letter in self.letters:
            x = letter(x)
        return x


def u_invariant(x: Point):
    """u(x) = 64 x_1 x_2 x_3 / Q_3(x)^2."""
    if len(x) != 3:
        raise ValueError("u is defined for n = 3")
    q = qn(x)
    if q == 0:
        raise SingularQ(f"Q_3 vanishes at {tuple(x)}")
    return 64 * x[0] * x[1] * x[2] / q ** 2


def verify_q_covariance(j: int, x: Point) -> bool:
    """Exact check of Q_n(T_{n,j} x) x_j^2 = Q_n(x)."""
    x = RationalPoint(x)
    return qn(t_involution(j, x)) * x[j - 1] ** 2 == qn(x)


def verify_u_invariance(j: int, x: Point) -> bool:
    """Exact check of u(T_{3,j} x) = u(x)."""
    x = RationalPoint(x)
    return u_invariant(t_involution(j, x)) == u_invariant(x)


def random_rational_point(rng, n: int, lo: int = -20, hi: int = 20, qmax: int = 20) -> RationalPoint:
    return RationalPoint(Fraction(rng.randint(lo, hi), rng.randint(1, qmax)) for _ in range(n))


# -- branch tracking ---------------------------------------------------------

def default_base_point(n: int, delta: float = 1e-3) -> tuple[float, ...]:
    return (-delta,) * n


def _u_crosses_cut(ua: complex, ub: complex) -> bool:
    if ub.imag == 0 and ub.real >= 1:
        return True
    if (ua.imag > 0) != (ub.imag > 0) and ua.imag != ub.imag:
        frac = ua.imag / (ua.imag - ub.imag)
        return ua.real + frac * (ub.real - ua.real) >= 1
    return False


def _segment_zero(q0: complex, qh: complex, q1: complex, rel: float = 1e-12) -> float | None:
    """Parameter s in [0, 1] where the quadratic through (0, q0), (1/2, qh),
    (1, q1) vanishes, or None.

    Roots are accepted by the size of the quadratic at their real part, which
    stays reliable for the ill-conditioned double roots.
    """
    a = 2 * q1 - 4 * qh + 2 * q0
    b = 4 * qh - q1 - 3 * q0
    if a == 0 and b == 0:
        return None
    scale = max(abs(q0), abs(qh), abs(q1))
    for r in np.roots([a, b, q0]):
        s = min(max(r.real, 0.0), 1.0)
        if abs((a * s + b) * s + q0) <= rel * scale:
            return s
    return None


def track_sqrt_q(x: Sequence[complex], base: Sequence[complex] | None = None,
                 max_arg_step: float = math.pi / 4, check_u: bool = False) -> complex:
    """sqrt(Q_n(x)) continued along the segment from ``base`` to ``x``.

    The root is anchored to the principal value at the base point (where
    Q_n is close to 1) and updated in steps over which arg Q_n changes by
    at most ``max_arg_step``.  With ``check_u`` (n = 3) the path must also
    keep u off the cut [1, inf).
    """
    x = np.asarray([complex(v) for v in x])
    b = np.asarray(base if base is not None else default_base_point(len(x)), dtype=complex)

    def q_at(s):
        return complex(qn(list(b + s * (x - b))))

    def u_at(s, q):
        p = b + s * (x - b)
        return complex(64 * p[0] * p[1] * p[2] / q ** 2)

    q_cur = q_at(0.0)
    # Q is quadratic along the segment, so its zeros on the path are found exactly
    hit = _segment_zero(q_cur, q_at(0.5), q_at(1.0))
    if hit is not None:
        raise BranchPathError(f"Q vanishes on the path to {tuple(x)} at s = {hit:.6g}")
    root = cmath.sqrt(q_cur)
    u_cur = u_at(0.0, q_cur) if check_u else 0j
    s, h = 0.0, 1.0 / 64
    while s < 1.0:
        h = min(h, 1.0 - s)
        q_next = q_at(s + h)
        ok = q_next != 0 and abs(cmath.phase(q_next / q_cur)) <= max_arg_step
        if ok and check_u:
            u_next = u_at(s + h, q_next)
            ok = abs(u_next - u_cur) <= 0.5 * abs(1 - u_cur)
        if not ok:
            h /= 2
            if h < 1e-12:
                raise BranchPathError(f"path to {tuple(x)} runs into a branch locus near s = {s:.6g}")
            continue
        if check_u:
            if _u_crosses_cut(u_cur, u_next):
                raise BranchPathError(f"path to {tuple(x)} crosses the cut u in [1, inf)")
            u_cur = u_next
        root *= cmath.sqrt(q_next / q_cur)
        q_cur = q_next
        s += h
        h *= 2
    return root


def tracked_gn(x: Sequence[complex], base: Sequence[complex] | None = None) -> complex:
    """Closed-form G_n (n <= 3) with sqrt(Q_n) fixed by continuation from ``base``."""
    from .gauss2f1 import hyp2f1

    n = len(x)
    if n == 1:
        return 1 / (1 - complex(x[0]))
    if n == 2:
        return 1 / track_sqrt_q(x, base)
    if n == 3:
        root = track_sqrt_q(x, base, check_u=True)
        u = complex(u_invariant([complex(v) for v in x]))
        return hyp2f1(0.25, 0.75, 1, u).value / root
    raise DomainError("closed forms exist for n <= 3 only")


def hn(x: Sequence[complex], g: complex | None = None) -> complex:
    """H_n(x) = sqrt(Q_n(x)) G_n(x), principal root (n <= 3).

    ``g`` overrides the closed-form value of G_n(x), e.g. with a series value.
    """
    from .closedforms import g1, g2, g3

    x = [complex(v) for v in x]
    q = qn(x)
    if q == 0:
        raise SingularQ(f"Q_{len(x)} vanishes at {tuple(x)}")
    if g is None:
        g = {1: lambda: g1(x[0]), 2: lambda: g2(*x), 3: lambda: g3(x)}[len(x)]()
    return cmath.sqrt(q) * g


SERIES_RADIUS = 0.8


def _g_reference(x, trunc):
    # the shell series is slow near the boundary of Omega_n; stay well inside it
    if sum(abs(v) ** 0.5 for v in x) < SERIES_RADIUS:
        return eval_gn_series(x, trunc).value
    return tracked_gn(x)


def verify_quasi_invariance(n: int, j: int, x: Sequence[complex], tol: float = 1e-15) -> float:
    """|G_n(T_{n,j} x) + x_j G_n(x)|.

    G_n(T x) is the branch-tracked closed form; G_n(x) comes from the series
    when sum sqrt|x_j| < 0.8 (tracked closed form otherwise).
    """
    if n not in (1, 2, 3) or len(x) != n:
        raise DomainError("quasi-invariance is checked for n <= 3 with a matching point")
    x = tuple(complex(v) for v in x)
    tx = t_involution(j, x)
    trunc = TruncationSpec(target_tol=tol)
    return abs(tracked_gn(tx) + x[j - 1] * _g_reference(x, trunc))


def verify_h_invariance(n: int, j: int, x: Sequence[complex], tol: float = 1e-15) -> float:
    """|H_n(T_{n,j} x) - H_n(x)| with both square roots branch-tracked."""
    x = tuple(complex(v) for v in x)
    tx = t_involution(j, x)
    trunc = TruncationSpec(target_tol=tol)
    h_tx = track_sqrt_q(tx, check_u=n == 3) * tracked_gn(tx)
    h_x = track_sqrt_q(x, check_u=n == 3) * _g_reference(x, trunc)
    return abs(h_tx - h_x)


def principal_modulus_residual(n: int, j: int, x: Sequence[complex]) -> float:
    """| |G_n(T x)| - |x_j| |G_n(x)| | with principal-branch closed forms."""
    from .closedforms import g1, g2, g3

    g = {1: lambda p: g1(p[0]), 2: lambda p: g2(*p), 3: g3}[n]
    x = tuple(complex(v) for v in x)
    return abs(abs(g(t_involution(j, x))) - abs(x[j - 1]) * abs(g(x)))
