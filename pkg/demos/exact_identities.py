"""The operator calculus holds exactly, not just to rounding.

Everything here runs in rational arithmetic on trigonometric polynomials:
adjointness of the raising and lowering operators, the vanishing (or not)
of the double raise, and the agreement between the operator form of the
Laplacian and its integer coefficient tensor.
"""

import random

from divcurl import (
    apply_T,
    apply_T_star,
    box_apply,
    box_coeff_tensor,
    compose_TT,
    inner_product,
    random_trig_form,
    spec_for,
)

rng = random.Random(7)

spec = spec_for(2, 2, 1, "diagonal")
print(f"spec: n={spec.n} k={spec.k} ell={spec.ell} N={spec.N} "
      f"ordering={spec.ordering.kind}")

q = 1
F = random_trig_form(rng, spec.n, spec.N, q, components=3)
G = apply_T(spec, F) + random_trig_form(rng, spec.n, spec.N, q + 1,
                                        components=2)

lhs = inner_product(apply_T(spec, F), G)
rhs = inner_product(F, apply_T_star(spec, G))
print(f"<T F, G>  = {lhs}")
print(f"<F, T* G> = {rhs}")
print(f"adjointness exact: {lhs == rhs}")
print()

TT = compose_TT(spec, F)
print(f"T T F == 0 (odd step): {TT.is_zero()}")

even = spec_for(3, 2, 2)
F3 = random_trig_form(rng, 3, even.N, 0, components=3)
print(f"T T F == 0 for ell=2: {compose_TT(even, F3).is_zero()} "
      f"(the double raise survives on even steps)")
print()

C = box_coeff_tensor(spec, q)
H = random_trig_form(rng, spec.n, spec.N, q, components=3)
same = (box_apply(spec, H) - C.contract(H)).is_zero()
print(f"Laplacian tensor has {len(C.entries)} integer entries, "
      f"kronecker={C.is_kronecker()}")
print(f"operator route == tensor contraction: {same}")
