"""
Vertex-type twistor and the eight-vertex R matrix
=================================================

The twistor image E(zeta) is an infinite ordered product of 4x4 factors.
Even and odd factors act on different blocks, so the product only settles
in pairs; the truncation error shrinks by about sqrt(p) per factor.
"""

# %% imports
import numpy as np

from quasihopf import vertex as vx

q, p = 0.4, 0.3
zeta = 0.6 + 0.5j

# %% convergence of the ordered product
closed = vx.e_vv_closed(zeta, p, q)
print(" K   error      error^(1/K)")
for K in (10, 20, 30, 40, 60):
    err = np.abs(vx.e_vv_product(zeta, p, q, K)[0] - closed).max()
    print(f"{K:3d}  {err:.2e}  {err ** (1 / K):.3f}")
print("sqrt(p) =", round(p**0.5, 3))

# %% eight-vertex weights
wt = vx.eight_vertex_weights(zeta, p, q)
for k, v in wt.items():
    print(k, np.round(v, 6))

# at zeta = 1 the matrix is the permutation
print(np.round(vx.r_eight_vertex(1, p, q, normalized=True).real, 12))

# %% identities
print("gauge:", vx.check_vertex_gauge(0.9 + 0.5j, p, q).residual)
print("YBE:", vx.check_ybe_vertex(0.9 + 0.2j, 1.1 - 0.3j, 0.7 + 0.7j, p, q).residual)
print("YBE without d:", vx.check_ybe_vertex(0.9 + 0.2j, 1.1 - 0.3j, 0.7 + 0.7j, p, q, drop_d=True).residual)
print("L-relation:", vx.check_l_relation_vertex(zeta, p, q).residual)

# the other square root of p gives the same identities
print("L-relation, negative root:", vx.check_l_relation_vertex(zeta, p, q, sign=-1).residual)
