"""The order-k exterior operators, their adjoints, and Hodge Laplacians.

An OperatorSpec fixes (n, k, ell, N, ordering): the operator raises form
degree by ell and differentiates coefficients k times, coupling the
derivative multi-index alpha to the label block ordering(alpha):

    (T F)_L = sum_{I, alpha} epsilon^{ordering(alpha) I}_L d^k F_I / dx^alpha

for L of degree q + ell over N slots.  The source-space operator Top is
the same action with every label constrained to {1, ..., n}.

Adjoints are available through two independent routes that must agree:

* star conjugation: T* = (-1)^(k + q(N - ell - q)) star T star, with q the
  output degree, and
* the coordinate sum (T* H)_V = (-1)^k sum epsilon^{ordering(beta) V}_I
  d^k H_I / dx^beta,

where the global coordinate sign (-1)^k is the one forced by k-fold
integration by parts against the label-wise pairing.  On the exact
backend apply_T_star computes both and raises if they ever differ.

The Hodge Laplacian box = T T* + T* T acts on hybrid q-forms through an
integer coefficient tensor; box_coeff_tensor builds it by direct
summation over connecting labels and box_coeff_closed_form builds it
entry by entry from the overlap decomposition of the two derivative
blocks.  Both are exposed so they can be cross-checked exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .forms import Form, lp_norm, partial, pullback_linear, hodge_star, zero_form
from .gridfield import GridField, grid_points, _deriv_multiplier
from .increments import binom
from .multiindex import (
    Ordering,
    epsilon,
    labels,
    make_ordering,
    multiindices,
    perm_sign_between,
)
from .trigpoly import TrigPoly

__all__ = [
    "OperatorSpec",
    "spec_for",
    "apply_T",
    "apply_T_star",
    "apply_T_star_coordinate",
    "apply_Top",
    "apply_Top_star",
    "apply_Top_star_coordinate",
    "compose_TT",
    "tt_single_orientation",
    "box_apply",
    "box_apply_top",
    "CoeffTensor",
    "box_coeff_tensor",
    "box_coeff_closed_form",
    "coeff_entry_direct",
    "coeff_entry_closed_form",
    "top_coeff_tensor",
    "invariance_defect",
]


@dataclass(frozen=True)
class OperatorSpec:
    """Validated parameter bundle (n, k, ell, N, ordering)."""

    n: int
    k: int
    ell: int
    N: int
    ordering: Ordering

    def __post_init__(self):
        n, k, ell, N = self.n, self.k, self.ell, self.N
        if n < 2 or k < 1 or not (1 <= ell <= k):
            raise ValueError("need n >= 2, k >= 1 and 1 <= ell <= k")
        m = binom(n - 1 + k, k)
        if binom(N, ell) != m:
            raise ValueError(f"C({N},{ell}) != C({n - 1 + k},{k}); not admissible")
        if N < n - 1 + ell:
            raise ValueError("dimension constraint N >= n - 1 + ell violated")
        o = self.ordering
        if (o.n, o.k, o.ell, o.N) != (n, k, ell, N):
            raise ValueError("ordering parameters do not match the spec")

    def digest(self) -> str:
        return self.ordering.digest()

    def describe(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "ell": self.ell,
            "N": self.N,
            "ordering_kind": self.ordering.kind,
            "ordering_digest": self.digest(),
        }


def spec_for(n, k, ell, kind="lexicographic", table=None) -> OperatorSpec:
    """Resolve N from the admissibility equation and build the spec."""
    from .increments import admissible_increments

    for sol in admissible_increments(n, k):
        if sol.ell == ell:
            ordering = make_ordering(n, k, ell, sol.N, kind=kind, table=table)
            return OperatorSpec(n, k, ell, sol.N, ordering)
    raise ValueError(f"ell={ell} is not an admissible increment for (n={n}, k={k})")


# ---- coupling tables -------------------------------------------------------


@lru_cache(maxsize=None)
def _t_table(spec: OperatorSpec, q: int, top: bool):
    """Entries (I, alpha, L, sign) of the degree-raising action at degree q.

    With top=True all labels are constrained to {1..n} (the source-space
    operator); otherwise they run over {1..N}.
    """
    width = spec.n if top else spec.N
    entries = []
    for I in labels(width, q):
        setI = set(I)
        for alpha in multiindices(spec.n, spec.k):
            a = spec.ordering.label_of(alpha)
            if top and any(t > spec.n for t in a):
                continue
            if setI & set(a):
                continue
            L = tuple(sorted(a + I))
            entries.append((I, alpha, L, perm_sign_between(a + I, L)))
    return tuple(entries)


@lru_cache(maxsize=None)
def _tstar_table(spec: OperatorSpec, q: int, top: bool):
    """Entries (I, beta, V, sign) of the coordinate adjoint at degree q:
    V of degree q - ell collects epsilon^{ordering(beta) V}_I terms."""
    width = spec.n if top else spec.N
    entries = []
    for V in labels(width, q - spec.ell):
        setV = set(V)
        for beta in multiindices(spec.n, spec.k):
            b = spec.ordering.label_of(beta)
            if top and any(t > spec.n for t in b):
                continue
            if setV & set(b):
                continue
            I = tuple(sorted(b + V))
            if max(I, default=0) > width:
                continue
            entries.append((I, beta, V, perm_sign_between(b + V, I)))
    return tuple(entries)


def _apply_table(F: Form, entries, out_q: int, width: int, overall=1) -> Form:
    """Evaluate sum sign * d^alpha F_I on each output label of a table."""
    if F.backend == "grid":
        return _apply_table_grid(F, entries, out_q, width, overall)
    acc = {}
    for I, alpha, OUT, sign in entries:
        c = F.coeffs.get(I)
        if c is None:
            continue
        term = c.diff_alpha(alpha).scale(sign * overall)
        acc[OUT] = acc[OUT] + term if OUT in acc else term
    return Form(F.n, width, out_q, acc, backend="trig")


def _apply_table_grid(F: Form, entries, out_q, width, overall) -> Form:
    n = F.n
    P = F.grid_P()
    spectra = {lab: np.fft.fftn(c.samples) for lab, c in F.coeffs.items()}
    acc = {}
    for I, alpha, OUT, sign in entries:
        sp = spectra.get(I)
        if sp is None:
            continue
        mult = _deriv_multiplier(n, P, tuple(alpha))
        term = sp * mult
        if OUT in acc:
            acc[OUT] = acc[OUT] + sign * term
        else:
            acc[OUT] = sign * term
    coeffs = {OUT: GridField(n, P, np.fft.ifftn(sp).real * overall)
              for OUT, sp in acc.items()}
    if not coeffs:
        return zero_form(n, width, out_q, backend="grid", P=P)
    return Form(n, width, out_q, coeffs, backend="grid")


# ---- the operators ---------------------------------------------------------


def _check_hybrid(spec: OperatorSpec, F: Form):
    if (F.n, F.N) != (spec.n, spec.N):
        raise ValueError("form does not live on the spec's hybrid space")


def _check_source(spec: OperatorSpec, F: Form):
    if (F.n, F.N) != (spec.n, spec.n):
        raise ValueError("source forms live over N == n")


def apply_T(spec: OperatorSpec, F: Form) -> Form:
    """Degree-raising operator on hybrid q-forms; degree q + ell <= N."""
    _check_hybrid(spec, F)
    if F.q + spec.ell > spec.N:
        raise ValueError("output degree would exceed N")
    return _apply_table(F, _t_table(spec, F.q, False), F.q + spec.ell, spec.N)


def _apply_T_or_zero(spec, F):
    if F.q + spec.ell > spec.N:
        return Form(F.n, spec.N, min(F.q + spec.ell, spec.N), {}, backend=F.backend)
    return apply_T(spec, F)


def apply_T_star_coordinate(spec: OperatorSpec, H: Form) -> Form:
    """Coordinate route for the adjoint: global sign (-1)^k."""
    _check_hybrid(spec, H)
    if H.q < spec.ell:
        raise ValueError("adjoint needs degree q >= ell")
    return _apply_table(H, _tstar_table(spec, H.q, False), H.q - spec.ell,
                        spec.N, overall=(-1) ** spec.k)


def _star_conjugate(spec, H, top: bool) -> Form:
    width = spec.n if top else spec.N
    q_out = H.q - spec.ell
    sign = (-1) ** (spec.k + q_out * (width - spec.ell - q_out))
    inner = hodge_star(H)
    mid = apply_Top(spec, inner) if top else apply_T(spec, inner)
    return hodge_star(mid).scale(sign)


def apply_T_star(spec: OperatorSpec, H: Form, check=None) -> Form:
    """Adjoint of apply_T via star conjugation.

    On the exact backend (or with check=True) the coordinate route is
    evaluated as well and any disagreement raises; the two routes are
    algebraically identical, so a mismatch means a sign fault somewhere.
    """
    _check_hybrid(spec, H)
    if H.q < spec.ell:
        raise ValueError("adjoint needs degree q >= ell")
    out = _star_conjugate(spec, H, top=False)
    if check is None:
        check = H.backend == "trig"
    if check:
        other = apply_T_star_coordinate(spec, H)
        if not (out - other).is_zero():
            raise ArithmeticError(
                "adjoint routes disagree; an epsilon or sign table is corrupt"
            )
    return out


def _apply_T_star_or_zero(spec, H):
    if H.q < spec.ell:
        return Form(H.n, spec.N, max(H.q - spec.ell, 0), {}, backend=H.backend)
    return apply_T_star_coordinate(spec, H)


def apply_Top(spec: OperatorSpec, f: Form) -> Form:
    """Source-space operator: the same action with labels inside {1..n}.

    Returns the zero form when the output degree exceeds n.  Nontrivial
    only when n >= ell.
    """
    _check_source(spec, f)
    if spec.n < spec.ell:
        raise ValueError("source operator is trivial for n < ell")
    if f.q + spec.ell > spec.n:
        return Form(f.n, f.n, f.n, {}, backend=f.backend)
    return _apply_table(f, _t_table(spec, f.q, True), f.q + spec.ell, spec.n)


def apply_Top_star_coordinate(spec: OperatorSpec, h: Form) -> Form:
    _check_source(spec, h)
    if spec.n < spec.ell:
        raise ValueError("source operator is trivial for n < ell")
    if h.q < spec.ell:
        raise ValueError("adjoint needs degree q >= ell")
    return _apply_table(h, _tstar_table(spec, h.q, True), h.q - spec.ell,
                        spec.n, overall=(-1) ** spec.k)


def apply_Top_star(spec: OperatorSpec, h: Form, check=None) -> Form:
    _check_source(spec, h)
    if h.q < spec.ell:
        raise ValueError("adjoint needs degree q >= ell")
    out = _star_conjugate(spec, h, top=True)
    if check is None:
        check = h.backend == "trig"
    if check:
        other = apply_Top_star_coordinate(spec, h)
        if not (out - other).is_zero():
            raise ArithmeticError(
                "adjoint routes disagree; an epsilon or sign table is corrupt"
            )
    return out


def _apply_Top_or_zero(spec, f):
    if f.q + spec.ell > spec.n:
        return Form(f.n, f.n, f.n, {}, backend=f.backend)
    return apply_Top(spec, f)


def _apply_Top_star_or_zero(spec, h):
    if h.q < spec.ell:
        return Form(h.n, h.n, max(h.q - spec.ell, 0), {}, backend=h.backend)
    return apply_Top_star_coordinate(spec, h)


# ---- composition laws ------------------------------------------------------


def compose_TT(spec: OperatorSpec, F: Form) -> Form:
    """T applied twice; requires q + 2 ell <= N.

    Identically zero exactly when ell is odd; for even ell the result
    equals twice the single-orientation sum (see tt_single_orientation).
    """
    _check_hybrid(spec, F)
    if F.q + 2 * spec.ell > spec.N:
        raise ValueError("no room for two degree raises at this q")
    return apply_T(spec, apply_T(spec, F))


def tt_single_orientation(spec: OperatorSpec, F: Form) -> Form:
    """The half of T o T with the two derivative blocks in a fixed order:

        sum_{alpha < beta} epsilon^{ordering(beta) ordering(alpha) I}_M
                           d^{2k} F_I / dx^{alpha + beta}  on each M.
    """
    _check_hybrid(spec, F)
    if F.q + 2 * spec.ell > spec.N:
        raise ValueError("no room for two degree raises at this q")
    mis = multiindices(spec.n, spec.k)
    out_q = F.q + 2 * spec.ell
    acc = {}
    for I, c in F.coeffs.items():
        for ia, alpha in enumerate(mis):
            a = spec.ordering.label_of(alpha)
            for beta in mis[ia + 1:]:
                b = spec.ordering.label_of(beta)
                merged = b + a + I
                if len(set(merged)) != len(merged):
                    continue
                M = tuple(sorted(merged))
                sign = perm_sign_between(merged, M)
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                term = c.diff_alpha(gamma).scale(sign)
                acc[M] = acc[M] + term if M in acc else term
    return Form(F.n, spec.N, out_q, acc, backend=F.backend)


def box_apply(spec: OperatorSpec, H: Form) -> Form:
    """Hodge Laplacian T T* + T* T with degree guards at the edges."""
    _check_hybrid(spec, H)
    down = _apply_T_star_or_zero(spec, H)
    up = _apply_T_or_zero(spec, H)
    left = _apply_T_or_zero(spec, down)
    right = _apply_T_star_or_zero(spec, up)
    # guards can leave mismatched empty degrees at the extremes
    if left.q != H.q:
        left = Form(H.n, spec.N, H.q, {}, backend=H.backend)
    if right.q != H.q:
        right = Form(H.n, spec.N, H.q, {}, backend=H.backend)
    return left + right


def box_apply_top(spec: OperatorSpec, h: Form) -> Form:
    """Source-space Hodge Laplacian Top Top* + Top* Top."""
    _check_source(spec, h)
    down = _apply_Top_star_or_zero(spec, h)
    up = _apply_Top_or_zero(spec, h)
    left = _apply_Top_or_zero(spec, down)
    right = _apply_Top_star_or_zero(spec, up)
    if left.q != h.q:
        left = Form(h.n, h.n, h.q, {}, backend=h.backend)
    if right.q != h.q:
        right = Form(h.n, h.n, h.q, {}, backend=h.backend)
    return left + right


# ---- the Laplacian coefficient tensor ---------------------------------------


@dataclass(frozen=True)
class CoeffTensor:
    """Sparse integer tensor C^{M I}_{alpha beta} of a Hodge Laplacian.

    box H = (-1)^k sum_{M,I,alpha,beta} C^{MI}_{alpha beta}
            d^{2k} H_I / dx^{alpha+beta}  dz^M.

    Entries are keyed by (M, I, alpha, beta) and omitted when zero; every
    stored value lies in {-2, -1, 1, 2}.  The tensor is symmetric under
    the simultaneous swap (M, alpha) <-> (I, beta).
    """

    spec: OperatorSpec
    q: int
    top: bool
    entries: dict

    def value(self, M, I, alpha, beta) -> int:
        return self.entries.get((tuple(M), tuple(I), tuple(alpha), tuple(beta)), 0)

    def contract(self, H: Form) -> Form:
        """Apply the Laplacian through the tensor; must equal box_apply."""
        width = self.spec.n if self.top else self.spec.N
        if (H.n, H.N, H.q) != (self.spec.n, width, self.q):
            raise ValueError("form shape does not match the tensor")
        overall = (-1) ** self.spec.k
        acc = {}
        for (M, I, alpha, beta), val in self.entries.items():
            c = H.coeffs.get(I)
            if c is None:
                continue
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            term = c.diff_alpha(gamma).scale(val * overall)
            acc[M] = acc[M] + term if M in acc else term
        out = Form(H.n, width, self.q, acc, backend=H.backend)
        if H.backend == "grid" and not acc:
            return zero_form(H.n, width, self.q, backend="grid", P=H.grid_P())
        return out

    def to_obj(self) -> dict:
        rows = [
            [list(M), list(I), list(a), list(b), v]
            for (M, I, a, b), v in sorted(self.entries.items())
        ]
        return {
            "spec": self.spec.describe(),
            "q": self.q,
            "source_space": self.top,
            "entries": rows,
        }

    def is_kronecker(self) -> bool:
        """True when C^{MI}_{alpha beta} = delta_MI delta_alpha,beta."""
        width = self.spec.n if self.top else self.spec.N
        mis = [a for a in multiindices(self.spec.n, self.spec.k)
               if not self.top or all(
                   t <= self.spec.n for t in self.spec.ordering.label_of(a))]
        expected = {}
        for I in labels(width, self.q):
            for a in mis:
                expected[(I, I, a, a)] = 1
        return self.entries == expected


def _image_alphas(spec: OperatorSpec, top: bool):
    """(alpha, label) pairs of the ordering, restricted to {1..n} labels
    in the source-space case."""
    out = []
    for alpha in multiindices(spec.n, spec.k):
        a = spec.ordering.label_of(alpha)
        if top and any(t > spec.n for t in a):
            continue
        out.append((alpha, a))
    return out


def _tensor_by_summation(spec: OperatorSpec, q: int, top: bool) -> dict:
    width = spec.n if top else spec.N
    pairs = _image_alphas(spec, top)
    entries = {}

    def put(key, val):
        if val == 0:
            return
        newval = entries.get(key, 0) + val
        if newval == 0:
            entries.pop(key, None)
        else:
            entries[key] = newval

    if q + spec.ell <= width:
        for L in labels(width, q + spec.ell):
            setL = set(L)
            inside = [(alpha, a) for alpha, a in pairs if set(a) <= setL]
            for alpha, a in inside:
                I = tuple(t for t in L if t not in set(a))
                s1 = perm_sign_between(a + I, L)
                for beta, b in inside:
                    M = tuple(t for t in L if t not in set(b))
                    s2 = perm_sign_between(b + M, L)
                    put((M, I, alpha, beta), s1 * s2)
    if q - spec.ell >= 0:
        for K in labels(width, q - spec.ell):
            setK = set(K)
            outside = [(alpha, a) for alpha, a in pairs if not (set(a) & setK)]
            for alpha, a in outside:
                M = tuple(sorted(a + K))
                s1 = perm_sign_between(a + K, M)
                for beta, b in outside:
                    I = tuple(sorted(b + K))
                    s2 = perm_sign_between(b + K, I)
                    put((M, I, alpha, beta), s1 * s2)
    return entries


@lru_cache(maxsize=None)
def box_coeff_tensor(spec: OperatorSpec, q: int) -> CoeffTensor:
    """Tensor by direct summation over connecting labels L and K."""
    if not (0 <= q <= spec.N):
        raise ValueError("degree out of range")
    return CoeffTensor(spec, q, False, _tensor_by_summation(spec, q, False))


@lru_cache(maxsize=None)
def top_coeff_tensor(spec: OperatorSpec, q: int) -> CoeffTensor:
    """Source-space Laplacian tensor: labels in {1..n} only."""
    if spec.n < spec.ell:
        raise ValueError("source operator is trivial for n < ell")
    if not (0 <= q <= spec.n):
        raise ValueError("degree out of range")
    return CoeffTensor(spec, q, True, _tensor_by_summation(spec, q, True))


def coeff_entry_direct(spec, q, M, I, alpha, beta, top=False) -> int:
    """One tensor entry by the literal sums over all L and K."""
    width = spec.n if top else spec.N
    a = spec.ordering.label_of(alpha)
    b = spec.ordering.label_of(beta)
    total = 0
    if q + spec.ell <= width:
        for L in labels(width, q + spec.ell):
            total += (perm_sign_between(a + tuple(I), L)
                      * perm_sign_between(b + tuple(M), L))
    if q - spec.ell >= 0:
        for K in labels(width, q - spec.ell):
            total += (perm_sign_between(a + K, tuple(M))
                      * perm_sign_between(b + K, tuple(I)))
    return total


def coeff_entry_closed_form(spec, q, M, I, alpha, beta, top=False) -> int:
    """One tensor entry from the overlap decomposition, no label sums.

    With a = ordering(alpha), b = ordering(beta) and shared block
    lam = a intersect b:

    * lam disjoint from I and M (in particular lam empty) contributes the
      raising part epsilon^{a I}_{b M}; when lam is empty the lowering
      part equals (-1)^ell times it, giving the factor (1 + (-1)^(ell^2));
    * lam contained in both I and M contributes the lowering part
      epsilon^{a K}_M epsilon^{b K}_I with K = M minus a = I minus b;
    * every other overlap pattern gives zero.
    """
    M, I = tuple(M), tuple(I)
    a = spec.ordering.label_of(alpha)
    b = spec.ordering.label_of(beta)
    lam = set(a) & set(b)
    setI, setM = set(I), set(M)

    def lowering():
        if not (set(a) <= setM and set(b) <= setI):
            return 0
        K = tuple(t for t in M if t not in set(a))
        if tuple(t for t in I if t not in set(b)) != K:
            return 0
        return perm_sign_between(a + K, M) * perm_sign_between(b + K, I)

    if not lam:
        raising = perm_sign_between(a + I, b + M)
        return (1 + (-1) ** (spec.ell * spec.ell)) * raising
    if not (lam & setI) and not (lam & setM):
        return perm_sign_between(a + I, b + M)
    if lam <= setI and lam <= setM:
        return lowering()
    return 0


@lru_cache(maxsize=None)
def box_coeff_closed_form(spec: OperatorSpec, q: int, top: bool = False) -> CoeffTensor:
    """Full tensor rebuilt from coeff_entry_closed_form on the candidate
    support (all (M, I, alpha, beta) that either part could touch)."""
    width = spec.n if top else spec.N
    pairs = _image_alphas(spec, top)
    entries = {}
    for I in labels(width, q):
        setI = set(I)
        for alpha, a in pairs:
            for beta, b in pairs:
                cands = set()
                if not (set(a) & setI) and set(b) <= set(a) | setI:
                    cands.add(tuple(t for t in sorted(a + I) if t not in set(b)))
                if set(b) <= setI:
                    K = tuple(t for t in I if t not in set(b))
                    if not (set(a) & set(K)):
                        cands.add(tuple(sorted(a + K)))
                for M in cands:
                    val = coeff_entry_closed_form(spec, q, M, I, alpha, beta, top)
                    if val:
                        entries[(M, I, alpha, beta)] = val
    return CoeffTensor(spec, q, top, entries)


# ---- invariance under rotations ---------------------------------------------


def invariance_defect(spec: OperatorSpec, A, F: Form, center=None) -> float:
    """Norm of Top(pullback F) - pullback(Top F) for the map x -> A(x-c)+c.

    A must be orthogonal.  F is a source form (N == n).  On the exact
    backend A must be a signed permutation and the defect is reported as
    an exact coefficient bound; on the grid backend the pullback uses
    band-limited interpolation, so probes should be well localized away
    from the box seam.  The default center is the box midpoint on the
    grid backend (keeping localized probes away from the seam) and the
    origin on the exact backend (where the pullback is frequency
    relabeling and needs no centering).
    """
    A = np.asarray(A, dtype=float)
    if not np.allclose(A @ A.T, np.eye(spec.n), atol=1e-12):
        raise ValueError("expected an orthogonal matrix")
    _check_source(spec, F)
    if center is None and F.backend == "grid":
        center = np.full(spec.n, np.pi)
    TF = _apply_Top_or_zero(spec, F)
    left = _apply_Top_or_zero(spec, pullback_linear(F, A, center))
    right = pullback_linear(TF, A, center)
    diff = left - right
    if diff.backend == "trig":
        from .forms import form_max_abs

        return form_max_abs(diff)
    return lp_norm(diff, 2)
