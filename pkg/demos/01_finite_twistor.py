"""
The sl2 face twistor, exactly
=============================

Builds the twistor as an ordered product of shifted R-matrix factors and as
a single sum, checks the two agree term by term, and then looks at its
two-dimensional image.
"""

# %% imports
import sympy

from quasihopf import facetwist as ft
from quasihopf.uqsl2 import counit

# %% two constructions of the same element
# N is the order in w, D the cap on e- and f-powers in each tensor slot
N, D = 3, 3
product = ft.build_product(N, D).element
closed = ft.build_closed(N, D).element
print("terms in the twistor:", len(product))
print("product form == closed form:", product == closed)

# the first few terms, sorted by the power of w
for line in product.render().splitlines()[:6]:
    print("  ", line)

# %% counit
# applying the counit to either slot kills every term with an e or f there
print("counit on slot 0 is 1:", counit(product, 0) == counit(product, 0).one_like())
print("counit on slot 1 is 1:", counit(product, 1) == counit(product, 1).one_like())

# %% shifted cocycle identity on the threefold tensor power
for n, d in [(2, 2), (3, 3), (4, 4)]:
    rep = ft.check_cocycle(n, d)
    print(f"cocycle N={n} D={d}: nonzero terms {rep.residual:g}")

# dropping one term must break it
print("corrupted twistor:", ft.check_cocycle(2, 2, corrupt=True).residual, "nonzero terms")

# %% two-dimensional image
# v is the square root of q; every geometric series in w is summed
M = ft.f_sl2_rational()
q = sympy.Symbol("q", positive=True)
sympy.pprint(M.subs(ft.V, sympy.sqrt(q)).applyfunc(sympy.factor))

# %% the dynamical Yang-Baxter equation at representation level
print("dynamical YBE, nonzero entries:", ft.check_dybe_sl2().residual)
print("with the wrong shift q^4:", ft.check_dybe_sl2(4).residual)
