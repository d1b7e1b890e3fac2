"""Regeneration script for the frozen roof-volume polynomials.

The distance between a point at offset lam on an edge of length y and a
point at offset mu on an edge of length z, with cross distances x_ab
between the four endpoints, is the lower envelope of four planes

    x00 + lam + mu          x01 + lam + (z - mu)
    x10 + (y - lam) + mu    x11 + (y - lam) + (z - mu)

over [0,y] x [0,z].  For fixed mu the envelope is min(A + lam, B + y - lam)
with A = min(x00 + mu, x01 + z - mu) and B = min(x10 + mu, x11 + z - mu),
whose integral over lam has a single crossover at lam* = (B - A + y)/2
(in range for compliant tuples).  The branch switches of A and B happen at

    mu0 = (z + x01 - x00)/2    (A switch)
    mu1 = (z + x11 - x10)/2    (B switch)

and mu0 >= mu1 iff x10 + x01 - x00 - x11 >= 0 (case sign L).  Integrating
mu over the three resulting pieces gives one degree-3 polynomial per sign
of L.  Run this script to re-derive them; the expanded coefficient tables
are frozen in contig/roof.py.
"""

import sympy as sp

y, z, lam, mu = sp.symbols("y z lam mu", positive=True)
x00, x01, x10, x11 = sp.symbols("x00 x01 x10 x11", nonnegative=True)

A1, A2 = x00 + mu, x01 + z - mu
B1, B2 = x10 + mu, x11 + z - mu
mu0 = (z + x01 - x00) / 2
mu1 = (z + x11 - x10) / 2


def inner(A, B):
    ls = (B - A + y) / 2
    return sp.expand(A * ls + ls**2 / 2 + B * (y - ls) + (y - ls) ** 2 / 2)


def piece(A, B, lo, hi):
    return sp.integrate(inner(A, B), (mu, lo, hi))


# L >= 0: mu1 <= mu0, pieces [0,mu1], [mu1,mu0], [mu0,z]
rho_plus = sp.expand(piece(A1, B1, 0, mu1) + piece(A1, B2, mu1, mu0)
                     + piece(A2, B2, mu0, z))
# L <= 0: mu0 <= mu1, pieces [0,mu0], [mu0,mu1], [mu1,z]
rho_minus = sp.expand(piece(A1, B1, 0, mu0) + piece(A2, B1, mu0, mu1)
                      + piece(A2, B2, mu1, z))

VARS = (y, z, x00, x01, x10, x11)


def table(expr):
    p = sp.Poly(expr, *VARS)
    return {m: c for m, c in zip(p.monoms(), p.coeffs())}


for name, expr in (("RHO_PLUS", rho_plus), ("RHO_MINUS", rho_minus)):
    print(f"{name} = {{")
    for m, c in sorted(table(expr).items()):
        print(f"    {m}: Fraction({sp.fraction(c)[0]}, {sp.fraction(c)[1]}),")
    print("}")

# sanity: unit-symmetric tuple has volume 3/2
subs = {y: 1, z: 1, x00: 1, x01: 1, x10: 1, x11: 1}
print("# xi(1,1,1,1,1,1) =", rho_plus.subs(subs), rho_minus.subs(subs))
# agreement on L = 0
diff = sp.simplify((rho_plus - rho_minus).subs(x11, x10 + x01 - x00))
print("# rho+ - rho- on L=0:", diff)
