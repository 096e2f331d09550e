"""Multi-index power series: G_n, Lauricella F_C, Appell F_1, F_2, F_4.

All evaluators sum by total-degree shells.  Terms of shell ``d`` are
obtained from shell ``d - 1`` through the hypergeometric term ratio, so no
factorial is ever formed in floating point and the terms stay in the range
of the actual summands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError


@dataclass(frozen=True)
class MultiIndex:
    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) < 1:
            raise ValueError("a multi-index needs at least one entry")
        if any(int(i) != i or i < 0 for i in self.indices):
            raise ValueError(f"entries must be nonnegative integers: {self.indices}")
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))

    @property
    def order(self) -> int:
        """|l|, the sum of the entries."""
        return sum(self.indices)

    @property
    def factorial(self) -> int:
        """l!, the product of the entry factorials."""
        return math.prod(math.factorial(i) for i in self.indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


class CPoint(tuple):
    """A point of C^n.  Behaves as a tuple; ``coord(j)`` is 1-based."""

    def __new__(cls, coords):
        coords = tuple(complex(c) for c in coords)
        if not coords:
            raise ValueError("a point needs at least one coordinate")
        return super().__new__(cls, coords)

    @property
    def n(self) -> int:
        return len(self)

    def coord(self, j: int) -> complex:
        if not 1 <= j <= len(self):
            raise IndexError(f"coordinate index {j} outside 1..{len(self)}")
        return self[j - 1]


@dataclass(frozen=True)
class TruncationSpec:
    """Stop at ``max_total_degree`` shells or once the tail estimate drops
    below ``target_tol``, whichever comes first.  Exceeding ``max_terms``
    before either happens is a :class:`ConvergenceError`."""

    max_total_degree: int = 400
    target_tol: float = 1e-15
    max_terms: int = 2_000_000

    def __post_init__(self):
        if self.max_total_degree < 0:
            raise ValueError("max_total_degree must be >= 0")
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")


@dataclass(frozen=True)
class Evaluation:
    value: complex
    error_estimate: float = 0.0
    terms_used: int = 0
    degree_reached: int = 0
    shell_sums: tuple[complex, ...] = field(default=(), repr=False, compare=False)

    def __complex__(self):
        return complex(self.value)


DEFAULT_TRUNC = TruncationSpec()


def gn_coefficient(ell: MultiIndex | Sequence[int]) -> int:
    """(|l|! / l!)**2, exactly."""
    if not isinstance(ell, MultiIndex):
        ell = MultiIndex(tuple(ell))
    return (math.factorial(ell.order) // ell.factorial) ** 2


def in_omega_n(x: Sequence[complex]) -> bool:
    """True iff sum_j sqrt|x_j| < 1 (convergence domain of F_C and G_n)."""
    return sum(math.sqrt(abs(complex(c))) for c in x) < 1.0


def _compositions(d: int, n: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _shell_list(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_compositions(d, n))


@lru_cache(maxsize=None)
def _shell_index(n: int, d: int) -> dict:
    return {ell: i for i, ell in enumerate(_shell_list(n, d))}


@lru_cache(maxsize=None)
def shell(n: int, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Multi-indices of total degree ``d`` in lexicographic order.

    Returns ``(exps, parent, pivot)``: ``exps[i]`` is the i-th index,
    ``pivot[i]`` its first nonzero coordinate and ``parent[i]`` the position
    of ``exps[i] - e_pivot`` in shell ``d - 1``.
    """
    ells = _shell_list(n, d)
    exps = np.array(ells, dtype=np.int64).reshape(len(ells), n)
    if d == 0:
        return exps, np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    prev = _shell_index(n, d - 1)
    parent = np.empty(len(ells), dtype=np.int64)
    pivot = np.empty(len(ells), dtype=np.int64)
    for i, ell in enumerate(ells):
        j = next(k for k, e in enumerate(ell) if e)
        pivot[i] = j
        parent[i] = prev[ell[:j] + (ell[j] - 1,) + ell[j + 1:]]
    for arr in (exps, parent, pivot):
        arr.setflags(write=False)
    return exps, parent, pivot


# ratio(d, pivot, new_exponent) -> term[l] / term[l - e_pivot]
TAIL_SAFETY = 2.0

RatioFn = Callable[[int, np.ndarray, np.ndarray], np.ndarray]


def sum_shells(n: int, ratio: RatioFn, trunc: TruncationSpec = DEFAULT_TRUNC) -> Evaluation:
    """Sum a multi-index series shell by shell.

    The tail after shell ``d`` is estimated as ``2 m_d rho / (1 - rho)``
    where ``m_d`` is the l1 magnitude of the shell and ``rho`` the ratio of
    the last two shell magnitudes, clamped to [0, 0.99].  Shell ratios of
    these series creep up towards their limit, so the plain geometric tail
    undershoots slightly; the factor 2 absorbs that.
    """
    terms = np.ones(1, dtype=complex)
    total = complex(1.0)
    sums = [total]
    prev_mag = 1.0
    est = math.inf
    used = 1
    d = 0
    for d in range(1, trunc.max_total_degree + 1):
        exps, parent, pivot = shell(n, d)
        used += len(parent)
        if used > trunc.max_terms:
            raise ConvergenceError(
                f"max_terms={trunc.max_terms} exceeded at degree {d} "
                f"(tail estimate {est:.3e} > {trunc.target_tol:.1e})"
            )
        lj = exps[np.arange(len(pivot)), pivot]
        terms = terms[parent] * ratio(d, pivot, lj)
        s = complex(terms.sum())
        total += s
        sums.append(s)
        mag = float(np.abs(terms).sum())
        if prev_mag > 0:
            rho = min(max(mag / prev_mag, 0.0), 0.99)
        else:
            rho = 0.0 if mag == 0 else 0.99
        est = TAIL_SAFETY * mag * rho / (1.0 - rho)
        prev_mag = mag
        if not math.isfinite(est):
            raise ConvergenceError(f"series diverged at degree {d}")
        if est < trunc.target_tol:
            break
    return Evaluation(total, est if d else 0.0, used, d, tuple(sums))


def _as_array(x) -> np.ndarray:
    arr = np.asarray([complex(c) for c in x], dtype=complex)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("expected a non-empty sequence of coordinates")
    return arr


def _check_gamma(*gammas):
    for g in gammas:
        g = complex(g)
        if g.imag == 0 and g.real <= 0 and g.real == int(g.real):
            raise ParameterError(f"gamma parameter {g.real:g} is a nonpositive integer")


def eval_gn_series(x: Sequence[complex], trunc: TruncationSpec = DEFAULT_TRUNC) -> Evaluation:
    """G_n(x) = sum_l (|l|!/l!)^2 x^l for x in Omega_n."""
    xs = _as_array(x)
    if not in_omega_n(xs):
        raise DomainError(f"point {tuple(complex(v) for v in xs)} is outside Omega_{len(xs)}")

    def ratio(d, pivot, lj):
        return (d * d) * xs[pivot] / (lj * lj)

    return sum_shells(len(xs), ratio, trunc)


def eval_fc_series(alpha, beta, gamma: Sequence[complex], x: Sequence[complex],
                   trunc: TruncationSpec = DEFAULT_TRUNC) -> Evaluation:
    """Lauricella F_C(alpha, beta; gamma_1..gamma_n; x)."""
    xs = _as_array(x)
    gs = np.asarray([complex(g) for g in gamma])
    if gs.shape != xs.shape:
        raise ParameterError("need one gamma per variable")
    _check_gamma(*gs)
    if not in_omega_n(xs):
        raise DomainError(f"point {tuple(complex(v) for v in xs)} is outside Omega_{len(xs)}")
    a, b = complex(alpha), complex(beta)

    def ratio(d, pivot, lj):
        return (a + d - 1) * (b + d - 1) * xs[pivot] / ((gs[pivot] + lj - 1) * lj)

    return sum_shells(len(xs), ratio, trunc)


def eval_f4_series(alpha, beta, gamma, gamma_prime, x, y,
                   trunc: TruncationSpec = DEFAULT_TRUNC) -> Evaluation:
    """Appell F_4, i.e. F_C with two variables."""
    return eval_fc_series(alpha, beta, (gamma, gamma_prime), (x, y), trunc)


def eval_f2_series(alpha, beta: Sequence[complex], gamma: Sequence[complex], x, y,
                   trunc: TruncationSpec = DEFAULT_TRUNC) -> Evaluation:
    """Appell F_2(alpha; beta, beta'; gamma, gamma'; x, y).

    Restricted to |x| + |y| < 0.8.
    """
    b = np.asarray([complex(v) for v in beta])
    g = np.asarray([complex(v) for v in gamma])
    if b.shape != (2,) or g.shape != (2,):
        raise ParameterError("F_2 takes two beta and two gamma parameters")
    _check_gamma(*g)
    xs = _as_array((x, y))
    if abs(xs[0]) + abs(xs[1]) >= 0.8:
        raise DomainError(f"F_2 series restricted to |x|+|y| < 0.8, got {tuple(xs)}")
    a = complex(alpha)

    def ratio(d, pivot, lj):
        return (a + d - 1) * (b[pivot] + lj - 1) * xs[pivot] / ((g[pivot] + lj - 1) * lj)

    return sum_shells(2, ratio, trunc)


def eval_f1_series(alpha, beta: Sequence[complex], gamma, x, y,
                   trunc: TruncationSpec = DEFAULT_TRUNC) -> Evaluation:
    """Appell F_1(alpha; beta, beta'; gamma; x, y), restricted to max(|x|,|y|) < 0.9."""
    b = np.asarray([complex(v) for v in beta])
    if b.shape != (2,):
        raise ParameterError("F_1 takes two beta parameters")
    _check_gamma(gamma)
    xs = _as_array((x, y))
    if max(abs(xs[0]), abs(xs[1])) >= 0.9:
        raise DomainError(f"F_1 series restricted to max(|x|,|y|) < 0.9, got {tuple(xs)}")
    a, c = complex(alpha), complex(gamma)

    def ratio(d, pivot, lj):
        return (a + d - 1) * (b[pivot] + lj - 1) * xs[pivot] / ((c + d - 1) * lj)

    return sum_shells(2, ratio, trunc)


def f4_via_gauss(alpha, beta, gamma, gamma_prime, x, y, tol: float = 1e-15,
                 max_terms: int = 2000) -> Evaluation:
    """F_4 resummed as sum_l (alpha)_l (beta)_l / (gamma)_l 2F1(alpha+l, beta+l; gamma'; y) x^l / l!."""
    from .gauss2f1 import hyp2f1

    _check_gamma(gamma, gamma_prime)
    if not in_omega_n((x, y)):
        raise DomainError(f"({x}, {y}) is outside Omega_2")
    a, b, c = complex(alpha), complex(beta), complex(gamma)
    x = complex(x)
    coef = complex(1.0)
    total = 0j
    prev = math.inf
    for ell in range(max_terms):
        if ell:
            coef *= (a + ell - 1) * (b + ell - 1) / ((c + ell - 1) * ell) * x
        term = coef * hyp2f1(a + ell, b + ell, gamma_prime, y, tol=tol * 1e-2).value
        total += term
        if abs(term) <= tol * max(1.0, abs(total)) and abs(prev) <= tol * max(1.0, abs(total)):
            return Evaluation(total, abs(term), ell + 1, ell)
        prev = term
    raise ConvergenceError(f"F_4 Gauss resummation did not converge in {max_terms} terms")


@dataclass
class IdentityReport:
    """Outcome of an exact identity sweep; truthy iff every check held."""

    ok: bool
    checked: int
    counterexample: str | None = None

    def __bool__(self):
        return self.ok


def _gn_coeff_table(n: int, max_degree: int) -> dict:
    table = {}
    for d in range(max_degree + 1):
        for ell in _shell_list(n, d):
            table[ell] = gn_coefficient(ell)
    return table


def _bump(ell, j, k=1):
    return ell[:j] + (ell[j] + k,) + ell[j + 1:]


def check_pde_coefficients(n: int, max_degree: int, max_power: int = 3) -> IdentityReport:
    """Exact check of the coefficient identities behind the PDE for G_n.

    For every |l| <= max_degree:

    * l_j^2 a_l = |l|^2 a_{l - e_j}          (delta_j^2 G = x_j (D+1)^2 G)
    * ((1/x_j) delta_j^2)^k G has coefficients ((|l|+k)!/l!)^2, which also
      equals prod_{m<=k} (|l|+m)^2 a_l, for k <= max_power
    * (l_i+1)^2 a_{l+e_i} = (l_j+1)^2 a_{l+e_j} for every pair i < j.
    """
    if n < 1 or max_degree < 1:
        raise ValueError("need n >= 1 and max_degree >= 1")
    a = _gn_coeff_table(n, max_degree + max_power)
    checked = 0

    def fail(msg):
        return IdentityReport(False, checked, msg)

    for ell, coeff in a.items():
        if sum(ell) > max_degree:
            continue
        for j in range(n):
            if ell[j] >= 1:
                checked += 1
                lhs = ell[j] ** 2 * coeff
                rhs = sum(ell) ** 2 * a[_bump(ell, j, -1)]
                if lhs != rhs:
                    return fail(f"recurrence fails at l={ell}, j={j + 1}: {lhs} != {rhs}")
        for i in range(n):
            for j in range(i + 1, n):
                checked += 1
                lhs = (ell[i] + 1) ** 2 * a[_bump(ell, i)]
                rhs = (ell[j] + 1) ** 2 * a[_bump(ell, j)]
                if lhs != rhs:
                    return fail(f"cross identity fails at l={ell}, (i,j)=({i + 1},{j + 1})")

    for j in range(n):
        current = a
        for k in range(1, max_power + 1):
            top = max_degree + max_power - k
            current = {
                ell: (ell[j] + 1) ** 2 * current[_bump(ell, j)]
                for ell in current
                if sum(ell) <= top
            }
            for ell, val in current.items():
                if sum(ell) > max_degree:
                    continue
                checked += 1
                m = sum(ell)
                expected = (math.factorial(m + k) // math.prod(math.factorial(e) for e in ell)) ** 2
                via_euler = math.prod((m + q) ** 2 for q in range(1, k + 1)) * a[ell]
                if not val == expected == via_euler:
                    return fail(f"power identity fails at l={ell}, j={j + 1}, k={k}")
    return IdentityReport(True, checked)
