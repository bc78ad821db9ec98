"""
Face-type twistor for the affine algebra
========================================

The twistor image F(z) solves a linear difference equation in z with step p.
Here it is computed twice, by iterating that equation from F(0) and from the
basic hypergeometric closed form, and then used to gauge the trigonometric R
matrix into the elliptic face weights.
"""

# %% imports
import numpy as np

from quasihopf import affineface as af

np.set_printoptions(precision=5, suppress=True, linewidth=110)

q, p, w = 0.45, 0.12, 0.55
z = 0.5 + 0.3j

# %% difference equation vs closed form
sol = af.f_vv_by_difference(z, p, w, q)
closed = af.f_vv_closed(z, p, w, q)
print("iterations:", sol.iterations)
print("max deviation:", np.abs(sol.matrix - closed).max())
print(closed)

# convergence is geometric in p/w, so it slows down as w approaches p
for w_try in (0.9, 0.5, 0.2, 0.14):
    print(f"w={w_try}: {af.f_vv_by_difference(z, p, w_try, q).iterations} iterations")

# %% gauge transformation to the elliptic weights
zg = 0.9 + 0.4j
G = af.gauge_matrix(zg, p, w, q)
E = af.r_elliptic(zg, p, w, q)
print("twisted trig R vs elliptic R:", np.abs(G - E).max())
print(af.elliptic_weights(zg, p, w, q))

# %% small p
# the weights reduce to a finite twist of the trigonometric R; bbar keeps its w-dependence
rep = af.check_p0_limit(z, w, q)
print("limit residual:", rep.residual)
print("bbar minus trigonometric b:", rep.details["bbar_minus_trig_b"])

# %% dynamical YBE, and what happens without the shift
zs = (0.9 + 0.3j, 1.1 - 0.2j, 0.8 + 0.6j)
for exponent in (2, 0, -2):
    print(f"shift exponent {exponent:+d}:", af.dybe_residual(*zs, p, w, q, exponent))
