"""Four ways to evaluate G_n at the same point.

G_n(x) = sum over multi-indices l of (|l|!/l!)^2 x^l.  The package offers a
truncated power series, closed forms for n <= 3, a contour recursion in n,
and a nested-contour formula.  They should agree to quadrature accuracy.
"""
import numpy as np

from gnhyp import (default_base, eval_gn_series, gn_closed, gn_via_multicontour,
                   gn_via_recursion)

x = (0.05, 0.05, 0.05)

series = eval_gn_series(x)
print(f"series:        {series.value.real:.15f}  (degree {series.degree_reached}, "
      f"tail estimate {series.error_estimate:.1e})")

closed = gn_closed(x)
print(f"closed form:   {complex(closed).real:.15f}")

rec = gn_via_recursion(x, default_base(2))
print(f"recursion:     {rec.value.real:.15f}  ({rec.terms_used} trapezoid nodes)")

multi = gn_via_multicontour(x)
print(f"multicontour:  {multi.value.real:.15f}")

# The series shells decay geometrically; the ratio tends to (sum sqrt(x_j))^2.
shells = np.abs(series.shell_sums)
ratio = shells[1:] / shells[:-1]
print(f"\nshell ratio at degree 10, 20, 30: {ratio[9]:.4f} {ratio[19]:.4f} {ratio[29]:.4f}; "
      f"(sum sqrt x)^2 = {np.sqrt(x).sum() ** 2:.4f}")

# Outside the convergence domain sum sqrt|x_j| < 1 the series refuses to run,
# while the closed form keeps going on its principal branch.
far = (0.2, 0.2, -0.3)
print(f"\nclosed form at {far}: {complex(gn_closed(far)):.12f}")
try:
    eval_gn_series(far)
except Exception as exc:
    print(f"series at {far}: {type(exc).__name__}")
