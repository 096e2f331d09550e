"""Ready-made G_{n-1} evaluators for the contour recursion."""

from __future__ import annotations

import numpy as np

from .closedforms import g2_array, g2_domain, g3_array, g3_domain
from .contour import BaseEvaluator, ContourSpec, DEFAULT_CONTOUR, gn_via_recursion
from .errors import DomainError, UnsupportedDimension
from .multiseries import TruncationSpec, eval_gn_series

EMPTY_BASE = BaseEvaluator(0, lambda pts: np.ones(len(pts), dtype=complex),
                           lambda pts: np.ones(len(pts), dtype=bool), "G_0")


def _g1_array(pts):
    return 1 / (1 - pts[:, 0])


def _g1_domain(pts):
    return pts[:, 0] != 1


def closed_form_base(dim: int) -> BaseEvaluator:
    """Closed-form G_dim for dim <= 3 (principal branches)."""
    table = {
        0: EMPTY_BASE,
        1: BaseEvaluator(1, _g1_array, _g1_domain, "G_1 closed form"),
        2: BaseEvaluator(2, g2_array, g2_domain, "G_2 closed form"),
        3: BaseEvaluator(3, g3_array, g3_domain, "G_3 closed form"),
    }
    if dim not in table:
        raise UnsupportedDimension(f"no closed form for G_{dim}")
    return table[dim]


def _omega(pts):
    return np.sqrt(np.abs(pts)).sum(axis=1) < 1


def series_base(dim: int, trunc: TruncationSpec | None = None) -> BaseEvaluator:
    """G_dim by shell summation at every node (slow; for cross-checks)."""
    trunc = trunc or TruncationSpec(target_tol=1e-15)
    if dim == 0:
        return EMPTY_BASE

    def func(pts):
        return np.array([eval_gn_series(p, trunc).value for p in pts])

    return BaseEvaluator(dim, func, _omega, f"G_{dim} series")


def recursion_base(dim: int, c: ContourSpec = DEFAULT_CONTOUR, tol: float = 1e-13) -> BaseEvaluator:
    """G_dim by one more level of the contour recursion over closed-form G_{dim-1}."""
    inner = closed_form_base(dim - 1)

    def func(pts):
        return np.array([gn_via_recursion(p, inner, c, tol).value for p in pts])

    def domain(pts):
        ok = np.ones(len(pts), dtype=bool)
        for i, p in enumerate(pts):
            try:
                gn_via_recursion(p, inner, c, 1e-3, 64)
            except DomainError:
                ok[i] = False
            except Exception:  # noqa: BLE001 - convergence is re-checked by func
                pass
        return ok

    return BaseEvaluator(dim, func, domain, f"G_{dim} recursion")


def default_base(dim: int) -> BaseEvaluator:
    """Closed form where available, shell summation above that."""
    return closed_form_base(dim) if dim <= 3 else series_base(dim)
