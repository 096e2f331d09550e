"""Gauss 2F1, the quadratic Pfaff check, P_k polynomials and the kernel K(u, z)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError
from .multiseries import Evaluation


@dataclass(frozen=True)
class Hyp2F1Params:
    a: complex
    b: complex
    c: complex
    z: complex

    def __post_init__(self):
        c = complex(self.c)
        if c.imag == 0 and c.real <= 0 and c.real == int(c.real):
            raise ParameterError(f"c = {c.real:g} is a nonpositive integer")

    def evaluate(self, tol: float = 1e-15) -> Evaluation:
        return hyp2f1(self.a, self.b, self.c, self.z, tol=tol)


def _direct_series(a, b, c, z: np.ndarray, tol: float, max_terms: int, derivs: int = 0):
    """Sum the Gauss series and up to two term-wise derivatives at every z."""
    z = np.asarray(z, dtype=complex)
    out = [np.zeros_like(z) for _ in range(derivs + 1)]
    coef = complex(1.0)
    p = [np.ones_like(z), np.zeros_like(z), np.zeros_like(z)]  # z^k, z^(k-1), z^(k-2)
    zabs = np.abs(z)
    quiet = 0
    for k in range(max_terms):
        contrib = [coef * p[0]]
        if derivs >= 1:
            contrib.append(k * coef * p[1])
        if derivs >= 2:
            contrib.append(k * (k - 1) * coef * p[2])
        for acc, term in zip(out, contrib):
            acc += term
        ratio = abs((a + k) * (b + k) / ((c + k) * (k + 1)))
        worst = max(float(np.max(np.abs(t))) for t in contrib)
        scale = max(1.0, max(float(np.max(np.abs(v))) for v in out))
        r = ratio * (float(zabs.max()) if zabs.size else 0.0)
        if coef == 0 or (worst <= tol * scale and r < 1):
            quiet += 1
            if quiet >= 2 or coef == 0:
                err = worst * r / (1 - r) if r < 1 else math.inf
                return out, err, k + 1
        else:
            quiet = 0
        coef *= (a + k) * (b + k) / ((c + k) * (k + 1))
        p = [p[0] * z, p[0], p[1]]
    raise ConvergenceError(f"2F1 series did not reach tol={tol:g} in {max_terms} terms")


def _check_c(c):
    c = complex(c)
    if c.imag == 0 and c.real <= 0 and c.real == int(c.real):
        raise ParameterError(f"c = {c.real:g} is a nonpositive integer")


def hyp2f1_array(a, b, c, z, tol: float = 1e-15, max_terms: int = 100_000) -> np.ndarray:
    """Vectorised 2F1(a, b; c; z).

    Each z is summed directly when |z| <= |z/(z-1)|, otherwise through
    Pfaff's transformation (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)).  Points
    where both moduli are >= 1 raise :class:`DomainError`.
    """
    _check_c(c)
    a, b, c = complex(a), complex(b), complex(c)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(z == 1, np.inf, z / (z - 1))
    direct = np.abs(z) <= np.abs(w)
    best = np.where(direct, np.abs(z), np.abs(w))
    if np.any(~(best < 1)):
        bad = z[~(best < 1)][0]
        raise DomainError(f"2F1 argument {bad} is outside the supported region")
    out = np.empty_like(z)
    if direct.any():
        (vals,), _, _ = _direct_series(a, b, c, z[direct], tol, max_terms)
        out[direct] = vals
    if (~direct).any():
        zz = z[~direct]
        (vals,), _, _ = _direct_series(a, c - b, c, w[~direct], tol, max_terms)
        out[~direct] = (1 - zz) ** (-a) * vals
    return out


def hyp2f1(a, b, c, z, tol: float = 1e-15, max_terms: int = 100_000) -> Evaluation:
    """2F1(a, b; c; z) with a tail estimate; see :func:`hyp2f1_array` for the region."""
    _check_c(c)
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    w = z / (z - 1) if z != 1 else complex(math.inf)
    if abs(z) <= abs(w):
        if not abs(z) < 1:
            raise DomainError(f"2F1 argument {z} is outside the supported region")
        (vals,), err, k = _direct_series(a, b, c, np.array([z]), tol, max_terms)
        return Evaluation(complex(vals[0]), err, k, k - 1)
    if not abs(w) < 1:
        raise DomainError(f"2F1 argument {z} is outside the supported region")
    (vals,), err, k = _direct_series(a, c - b, c, np.array([w]), tol, max_terms)
    pref = (1 - z) ** (-a)
    return Evaluation(complex(pref * vals[0]), abs(pref) * err, k, k - 1)


def hyp2f1_derivatives(a, b, c, z, tol: float = 1e-15, max_terms: int = 100_000):
    """(F, F', F'') at z from the term-wise differentiated series (|z| < 1 only)."""
    _check_c(c)
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError(f"differentiated 2F1 series needs |z| < 1, got {z}")
    vals, _, _ = _direct_series(complex(a), complex(b), complex(c), np.array([z]),
                                tol, max_terms, derivs=2)
    return tuple(complex(v[0]) for v in vals)


def pfaff_quadratic_check(a, b, z, tol: float = 1e-15) -> float:
    """|2F1(a,b;a-b+1;z) - (1+z)^(-a) 2F1(a/2,(1+a)/2;a-b+1;4z/(1+z)^2)|."""
    a, b, z = complex(a), complex(b), complex(z)
    c = a - b + 1
    lhs = hyp2f1(a, b, c, z, tol=tol).value
    zq = 4 * z / (1 + z) ** 2
    rhs = (1 + z) ** (-a) * hyp2f1(a / 2, (1 + a) / 2, c, zq, tol=tol).value
    return abs(lhs - rhs)


@dataclass(frozen=True)
class PkCoefficients:
    """C_{k,0..2k}: P_k(z) = prod_{j=1..k} (z+j)^2 = sum_j C_{k,j} z^j."""

    k: int
    coeffs: tuple[int, ...]

    def coefficient(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j <= 2 * self.k else 0

    def __call__(self, z):
        return sum(c * z ** j for j, c in enumerate(self.coeffs))


@lru_cache(maxsize=None)
def _pk(k: int) -> tuple[int, ...]:
    if k == 0:
        return (1,)
    prev = _pk(k - 1)
    factor = (k * k, 2 * k, 1)
    out = [0] * (len(prev) + 2)
    for i, p in enumerate(prev):
        for j, f in enumerate(factor):
            out[i + j] += p * f
    return tuple(out)


def pk_coefficients(k: int) -> PkCoefficients:
    if k < 1:
        raise ValueError("k must be >= 1")
    return PkCoefficients(k, _pk(k))


@lru_cache(maxsize=None)
def _pk_scaled(k: int) -> np.ndarray:
    # C_{k,j} / k!^2 in descending powers, ready for np.polyval
    kf2 = math.factorial(k) ** 2
    return np.array([float(Fraction(c, kf2)) for c in reversed(_pk(k))])


def kernel_K(u, z, tol: float = 1e-15) -> Evaluation:
    """K(u, z) = 2F1(z+1, z+1; 1; u), |u| < 1."""
    u, z = complex(u), complex(z)
    if not abs(u) < 1:
        raise DomainError(f"kernel needs |u| < 1, got {u}")
    return hyp2f1(z + 1, z + 1, 1, u, tol=tol)


def kernel_series(u, z, tol: float = 1e-15, max_k: int = 2000) -> Evaluation:
    """K(u, z) as sum_k P_k(z) u^k / k!^2 with P_k expanded through C_{k,j}."""
    u, z = complex(u), complex(z)
    if not abs(u) < 1:
        raise DomainError(f"kernel needs |u| < 1, got {u}")
    total = 0j
    power = complex(1.0)
    quiet = 0
    for k in range(max_k):
        term = complex(np.polyval(_pk_scaled(k), z)) * power
        total += term
        growth = abs((z + k + 1) / (k + 1)) ** 2 * abs(u)
        if abs(term) <= tol * max(1.0, abs(total)) and growth < 1:
            quiet += 1
            if quiet >= 2:
                return Evaluation(total, abs(term), k + 1, k)
        else:
            quiet = 0
        power *= u
    raise ConvergenceError(f"kernel series did not converge in {max_k} terms")
