"""Exact identity battery for the operator family.

Every check here runs in rational arithmetic on the trig backend, so a
pass is an algebraic identity on the probe and a failure carries a
minimal counterexample (the first label and coefficient term where the
two sides differ, or the offending tensor entry).

The default case list sweeps every admissible increment for n in {2, 3}
and k in {1, 2, 3} with the canonical orderings that exist there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, asdict

from . import __version__
from .forms import Form, inner_product, hodge_star
from .multiindex import labels, multiindices
from .operators import (
    OperatorSpec,
    apply_T,
    apply_T_star,
    apply_T_star_coordinate,
    apply_Top,
    apply_Top_star,
    box_apply,
    box_coeff_closed_form,
    box_coeff_tensor,
    coeff_entry_direct,
    compose_TT,
    spec_for,
    top_coeff_tensor,
    tt_single_orientation,
)
from .randoms import random_trig_form
from .symbol import wave_symbol_check
from .inequalities import (
    divergence_defect,
    divergence_free_family,
    vs_lift,
    vs_reduction,
)

__all__ = ["CheckRecord", "default_cases", "identity_suite", "run_verify"]


@dataclass
class CheckRecord:
    name: str
    case: str
    passed: bool
    exact: bool
    detail: str = ""


def default_cases():
    """(n, k, ell, ordering kind) for every admissible increment with
    n in {2, 3}, k in {1, 2, 3}; ell = 1 also gets its special orderings."""
    from .increments import admissible_increments

    cases = []
    for n in (2, 3):
        for k in (1, 2, 3):
            for sol in admissible_increments(n, k):
                cases.append((n, k, sol.ell, "lexicographic"))
                if sol.ell == 1:
                    cases.append((n, k, sol.ell, "diagonal"))
                    if n == 2 and k >= 2:
                        cases.append((n, k, sol.ell, "chained"))
    return cases


def _case_tag(spec: OperatorSpec) -> str:
    return (f"n={spec.n} k={spec.k} ell={spec.ell} N={spec.N} "
            f"{spec.ordering.kind}")


def _first_difference(A: Form, B: Form) -> str:
    D = A - B
    for lab in sorted(D.coeffs):
        c = D.coeffs[lab]
        if not c.is_zero():
            term = sorted(c.terms.items())[0]
            return f"label {lab}: first differing term {term}"
    return "forms agree"


def _probe_degrees(spec: OperatorSpec):
    """A small spread of degrees with room for T (q + ell <= N)."""
    qs = {0, spec.N - spec.ell}
    if spec.N - spec.ell >= 1:
        qs.add(1)
    mid = (spec.N - spec.ell) // 2
    qs.add(mid)
    return sorted(q for q in qs if 0 <= q <= spec.N - spec.ell)


def identity_suite(spec: OperatorSpec, rng: random.Random, deep=False):
    """All exact identity checks for one spec; returns CheckRecords."""
    records = []
    tag = _case_tag(spec)

    def rec(name, passed, detail=""):
        records.append(CheckRecord(name, tag, bool(passed), True, detail))

    # adjointness and route agreement at each probe degree
    for q in _probe_degrees(spec):
        F = random_trig_form(rng, spec.n, spec.N, q, components=3)
        G = apply_T(spec, F) + random_trig_form(rng, spec.n, spec.N,
                                                q + spec.ell, components=2)
        lhs = inner_product(apply_T(spec, F), G)
        try:
            TsG = apply_T_star(spec, G)  # internally cross-checks both routes
            rhs = inner_product(F, TsG)
            rec(f"adjointness[q={q}]", lhs == rhs,
                "" if lhs == rhs else f"<TF,G>={lhs} but <F,T*G>={rhs}")
            rec(f"adjoint_routes[q={q}]", True)
        except ArithmeticError as e:
            rec(f"adjoint_routes[q={q}]", False, str(e))

    # T o T: zero for odd ell, doubling law for even ell (when degrees allow)
    for q in range(0, spec.N - 2 * spec.ell + 1):
        F = random_trig_form(rng, spec.n, spec.N, q, components=3)
        if spec.ell % 2 == 0:
            # guarantee a mixed-frequency mode so the nonzero-ness claim is
            # probed on a genuinely generic input (a function of one variable
            # has every mixed derivative zero, which would mask a false zero)
            from .trigpoly import TrigPoly

            witness = TrigPoly.wave(spec.n, tuple(range(1, spec.n + 1)), 0, 1)
            lab = labels(spec.N, q)[0]
            wf = Form(spec.n, spec.N, q, {lab: witness}, backend="trig")
            F = F + wf
        TT = compose_TT(spec, F)
        if spec.ell % 2 == 1:
            rec(f"TT_zero[q={q}]", TT.is_zero(),
                "" if TT.is_zero() else _first_difference(
                    TT, Form(spec.n, spec.N, q + 2 * spec.ell, {},
                             backend="trig")))
        else:
            half = tt_single_orientation(spec, F)
            ok_nz = not TT.is_zero()
            ok_db = (TT - half.scale(2)).is_zero()
            rec(f"TT_nonzero[q={q}]", ok_nz,
                "" if ok_nz else "T T vanished on a generic probe")
            rec(f"TT_doubling[q={q}]", ok_db,
                "" if ok_db else _first_difference(TT, half.scale(2)))

    # Laplacian: direct composition vs tensor contraction vs closed form
    box_degrees = sorted({0, spec.ell, min(spec.N, spec.ell + 1), spec.N})
    if deep:
        box_degrees = list(range(spec.N + 1))
    for q in box_degrees:
        H = random_trig_form(rng, spec.n, spec.N, q, components=3)
        B = box_apply(spec, H)
        t = box_coeff_tensor(spec, q)
        ok = (B - t.contract(H)).is_zero()
        rec(f"box_vs_tensor[q={q}]", ok,
            "" if ok else _first_difference(B, t.contract(H)))
        cf = box_coeff_closed_form(spec, q)
        if t.entries == cf.entries:
            rec(f"tensor_closed_form[q={q}]", True)
        else:
            keys = set(t.entries) | set(cf.entries)
            bad = next(k for k in sorted(keys)
                       if t.entries.get(k, 0) != cf.entries.get(k, 0))
            rec(f"tensor_closed_form[q={q}]", False,
                f"entry {bad}: summation {t.entries.get(bad, 0)} "
                f"closed-form {cf.entries.get(bad, 0)}")
        sym = all(t.value(I, M, b, a) == v
                  for (M, I, a, b), v in t.entries.items())
        rec(f"tensor_symmetry[q={q}]", sym)
        bound = all(abs(v) <= 2 for v in t.entries.values())
        rec(f"tensor_entry_bound[q={q}]", bound,
            "" if bound else "an entry exceeds 2 in absolute value")
        if spec.ell == 1:
            rec(f"tensor_kronecker[q={q}]", t.is_kronecker(),
                "" if t.is_kronecker() else "ell=1 tensor is not the identity")
        spot = list(sorted(t.entries.items()))[:4]
        ok_spot = all(coeff_entry_direct(spec, q, M, I, a, b) == v
                      for (M, I, a, b), v in spot)
        rec(f"tensor_direct_spot[q={q}]", ok_spot)

    # symbol action on integer waves
    xi = tuple(rng.randint(-3, 3) or 1 for _ in range(spec.n))
    for q in sorted({0, spec.ell}):
        try:
            wave_symbol_check(spec, q, xi)
            rec(f"symbol_wave[q={q}]", True, f"xi={xi}")
        except ArithmeticError as e:
            rec(f"symbol_wave[q={q}]", False, str(e))

    # source-space adjointness (when the source operator is nontrivial)
    if spec.n >= spec.ell:
        qs = [q for q in (0, 1) if q + spec.ell <= spec.n]
        for q in qs:
            f = random_trig_form(rng, spec.n, spec.n, q, components=2)
            h = apply_Top(spec, f) + random_trig_form(
                rng, spec.n, spec.n, q + spec.ell, components=2)
            lhs = inner_product(apply_Top(spec, f), h)
            try:
                rhs = inner_product(f, apply_Top_star(spec, h))
                rec(f"source_adjointness[q={q}]", lhs == rhs,
                    "" if lhs == rhs else f"{lhs} != {rhs}")
            except ArithmeticError as e:
                rec(f"source_adjointness[q={q}]", False, str(e))
        t = top_coeff_tensor(spec, min(spec.ell, spec.n))
        cf = box_coeff_closed_form(spec, min(spec.ell, spec.n), top=True)
        rec("source_tensor_closed_form", t.entries == cf.entries)

    # reduction / lift dictionary at degree N - ell
    g = divergence_free_family(spec, rng, terms=3)
    if g:
        F = vs_lift(spec, g)
        TF = apply_T(spec, F)
        rec("lift_closed", TF.is_zero(),
            "" if TF.is_zero() else _first_difference(
                TF, Form(spec.n, spec.N, spec.N, {}, backend="trig")))
        back = vs_reduction(spec, F)
        same = (set(back) == set(g)
                and all((back[a] - g[a]).is_zero() for a in g))
        rec("reduction_roundtrip", same)
        dd = divergence_defect(spec, g)
        rec("divergence_defect_zero", dd is None or dd.is_zero())

    # star involution on the hybrid space (backend sanity)
    q = min(spec.ell, spec.N)
    F = random_trig_form(rng, spec.n, spec.N, q, components=2)
    sign = (-1) ** (q * (spec.N - q))
    ok = (hodge_star(hodge_star(F)) - F.scale(sign)).is_zero()
    rec("star_involution", ok)

    return records


def run_verify(cases=None, seed=0, deep=False) -> dict:
    """Run the identity battery over the case list; JSON-ready report."""
    if cases is None:
        cases = default_cases()
    rng = random.Random(seed)
    records = []
    for (n, k, ell, kind) in cases:
        spec = spec_for(n, k, ell, kind=kind)
        records.extend(identity_suite(spec, rng, deep=deep))
    failed = [r for r in records if not r.passed]
    return {
        "schema": "divcurl.verify/1",
        "package_version": __version__,
        "seed": seed,
        "cases": [list(c) for c in cases],
        "checks_run": len(records),
        "checks_failed": len(failed),
        "all_passed": not failed,
        "records": [asdict(r) for r in records],
    }
