"""The involutions T_j and how G_n transforms under them.

T_j divides every coordinate by x_j and replaces x_j by 1/x_j.  Q_n picks up
a factor 1/x_j^2 and u = 64 x1 x2 x3 / Q_3^2 is unchanged, so
H_n = sqrt(Q_n) G_n is invariant once the square root is continued along a
path rather than taken on the principal sheet.
"""
from fractions import Fraction

from gnhyp import RationalPoint, hn, qn, t_involution, tracked_gn, u_invariant
from gnhyp.symmetry import track_sqrt_q, verify_quasi_invariance

# Exact arithmetic first: nothing is rounded here.
p = RationalPoint((Fraction(1, 10), Fraction(1, 5), Fraction(1, 7)))
for j in (1, 2, 3):
    q = t_involution(j, p)
    print(f"T_{j}: Q ratio = {qn(q) / qn(p)}, 1/x_j^2 = {1 / p[j - 1] ** 2}, "
          f"u unchanged: {u_invariant(q) == u_invariant(p)}")

# Negative real points stay off every cut after the involution.
x = (-0.05, -0.05, -0.05)
for j in (1, 2, 3):
    print(f"quasi-invariance residual j={j}: {verify_quasi_invariance(3, j, x):.2e}")
print(f"H_3{x} = {complex(hn(x)).real:.15f}")

# The tracked square root differs from the principal one once the path
# winds around a zero of Q.  For n = 1, Q = (1 - x)^2.
y = (3.0 + 0.5j,)
print(f"\nprincipal sqrt Q at {y[0]}: {complex(qn(y)) ** 0.5:.6f}")
print(f"tracked sqrt Q:             {track_sqrt_q(y):.6f}")
print(f"tracked G_1:                {tracked_gn(y):.6f}  (1/(1-x) = {1 / (1 - y[0]):.6f})")
