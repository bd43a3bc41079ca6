"""Spectral inversion of the unit-step Laplacian, and what resolution buys.

We manufacture exact band-limited data (a closed 2-form F = T phi and a
mean free 0-form G), sample them on grids of increasing size and solve
box Z = T* F + T G.  On a grid that resolves every mode the residuals sit
at machine precision; on a grid that aliases the tail they measure the
sampling defect instead, and doubling the grid wins them back.
"""

import random
from fractions import Fraction

from divcurl import (
    Form,
    TrigPoly,
    apply_T,
    hodge_solve,
    labels,
    lp_norm,
    sample_form,
    spec_for,
)

rng = random.Random(41)
spec = spec_for(2, 2, 1, "diagonal")
n, N, q = spec.n, spec.N, 1


def band_poly():
    acc = None
    for _ in range(25):
        freq = tuple(rng.randint(-20, 20) for _ in range(n))
        if all(f == 0 for f in freq):
            freq = (1, 0)
        coef = Fraction(rng.randint(1, 9) * rng.choice((-1, 1)),
                        3 ** max(abs(f) for f in freq))
        w = TrigPoly.wave(n, freq, rng.randint(0, 1), coef)
        acc = w if acc is None else acc + w
    return acc


phi = Form(n, N, q, {lab: band_poly() for lab in labels(N, q)[:2]},
           backend="trig")
F_exact = apply_T(spec, phi)
G_exact = Form(n, N, 0, {(): band_poly()}, backend="trig")

print("continuum data: 25 modes per component, frequencies up to 20,")
print("amplitudes decaying like 3^(-|freq|)")
print()
print(f"{'P':>4}  {'closedness of F':>16}  {'residual T':>12}  {'residual T*':>12}")
for P in (32, 64, 128):
    F = sample_form(F_exact, P)
    G = sample_form(G_exact, P)
    Z, info = hodge_solve(spec, q, F=F, G=G, closed_tol=1e-2)
    rT = info["residual_T"] / lp_norm(F, 2)
    rS = info["residual_Tstar"] / lp_norm(G, 2)
    print(f"{P:>4}  {info['closedness_F']:>16.3e}  {rT:>12.3e}  {rS:>12.3e}")

print()
print("P = 32 aliases the 17..20 tail (Nyquist is 16); the solve is still")
print("well posed but the residual reports the defect honestly.")
