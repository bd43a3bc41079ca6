"""Differential forms with coefficients on an n-torus and labels over N slots.

A Form of degree q carries one coefficient per label in labels(N, q).
Coefficients are functions of the first n variables only (the remaining
N - n slots are inert), so partial derivatives in slots beyond n vanish
and restriction to the source space is the identity on coefficients.
Two coefficient backends are supported: exact TrigPoly and numeric
GridField.  Forms are immutable; every operation returns a new Form.

Conventions fixed here and used throughout:

* the torus carries the normalized measure, so constants have unit norm
  and mean values are plain coefficient means;
* the Hodge star sends the I component to the I' = complement component
  with sign epsilon^{I I'}_{(1..N)};
* Lp norms aggregate components pointwise in little-l2 before taking the
  p-th power, while Sobolev norms p-sum the per-component, per-derivative
  Lp norms.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .gridfield import GridField, grid_points
from .multiindex import (
    complement,
    epsilon,
    labels,
    multiindices,
    perm_sign_between,
)
from .trigpoly import TrigPoly

__all__ = [
    "Form",
    "zero_form",
    "form_from_coeffs",
    "partial",
    "hodge_star",
    "wedge",
    "inner_product",
    "inner_product_wedge",
    "lp_norm",
    "sobolev_norm",
    "grad_lp_norm",
    "pullback_linear",
    "sample_form",
    "form_max_abs",
]


class Form:
    __slots__ = ("n", "N", "q", "coeffs", "backend")

    def __init__(self, n, N, q, coeffs, backend=None):
        if not (1 <= n <= N):
            raise ValueError("need 1 <= n <= N")
        if not (0 <= q <= N):
            raise ValueError(f"degree {q} out of range 0..{N}")
        valid = set(labels(N, q))
        clean = {}
        for lab, c in coeffs.items():
            lab = tuple(lab)
            if lab not in valid:
                raise ValueError(f"label {lab} invalid for degree {q} over N={N}")
            if isinstance(c, TrigPoly):
                kind = "trig"
                if c.n != n:
                    raise ValueError("coefficient dimension mismatch")
                if c.is_zero():
                    continue
            elif isinstance(c, GridField):
                kind = "grid"
                if c.n != n:
                    raise ValueError("coefficient dimension mismatch")
            else:
                raise TypeError("coefficients must be TrigPoly or GridField")
            if backend is None:
                backend = kind
            elif backend != kind:
                raise ValueError("mixed coefficient backends in one form")
            clean[lab] = c
        if backend is None:
            backend = "trig"
        if backend == "grid":
            Ps = {c.P for c in clean.values()}
            if len(Ps) > 1:
                raise ValueError("mixed grid resolutions in one form")
        self.n, self.N, self.q = n, N, q
        self.coeffs = clean
        self.backend = backend

    # ---- basic structure -------------------------------------------------

    def coeff(self, lab):
        """Coefficient on a label; implicit zeros materialize on demand."""
        lab = tuple(lab)
        if lab in self.coeffs:
            return self.coeffs[lab]
        if lab not in set(labels(self.N, self.q)):
            raise KeyError(lab)
        return self._zero_coeff()

    def _zero_coeff(self):
        if self.backend == "trig":
            return TrigPoly.zero(self.n)
        return GridField.zero(self.n, self.grid_P())

    def grid_P(self):
        if self.backend != "grid":
            raise ValueError("not a grid-backed form")
        for c in self.coeffs.values():
            return c.P
        raise ValueError("a grid form with no coefficients has no resolution")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def __add__(self, other):
        self._check_shape(other)
        out = dict(self.coeffs)
        for lab, c in other.coeffs.items():
            out[lab] = out[lab] + c if lab in out else c
        return Form(self.n, self.N, self.q, out, backend=self.backend)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Form(self.n, self.N, self.q,
                    {lab: -c for lab, c in self.coeffs.items()},
                    backend=self.backend)

    def scale(self, factor):
        return Form(self.n, self.N, self.q,
                    {lab: c.scale(factor) for lab, c in self.coeffs.items()},
                    backend=self.backend)

    def _check_shape(self, other):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if (self.n, self.N, self.q) != (other.n, other.N, other.q):
            raise ValueError(
                f"form shape mismatch: {(self.n, self.N, self.q)} vs "
                f"{(other.n, other.N, other.q)}"
            )
        if self.coeffs and other.coeffs and self.backend != other.backend:
            raise ValueError("backend mismatch")

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if (self.n, self.N, self.q) != (other.n, other.N, other.q):
            return False
        if self.backend == "trig" and other.backend == "trig":
            return (self - other).is_zero()
        return NotImplemented

    def __repr__(self):
        return (f"Form(n={self.n}, N={self.N}, q={self.q}, "
                f"backend={self.backend!r}, components={len(self.coeffs)})")

    # ---- serialization -----------------------------------------------------

    def to_obj(self):
        return {
            "n": self.n,
            "N": self.N,
            "q": self.q,
            "backend": self.backend,
            "coeffs": [[list(lab), c.to_obj()]
                       for lab, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_obj(cls, obj):
        maker = TrigPoly.from_obj if obj["backend"] == "trig" else GridField.from_obj
        coeffs = {tuple(lab): maker(c) for lab, c in obj["coeffs"]}
        return cls(obj["n"], obj["N"], obj["q"], coeffs, backend=obj["backend"])


def zero_form(n, N, q, backend="trig", P=None) -> Form:
    f = Form(n, N, q, {}, backend=backend)
    if backend == "grid" and P is not None:
        # materialize one explicit zero so the resolution is recoverable
        lab = labels(N, q)[0]
        return Form(n, N, q, {lab: GridField.zero(n, P)}, backend="grid")
    return f


def form_from_coeffs(n, N, q, coeffs) -> Form:
    return Form(n, N, q, coeffs)


# ---- calculus ---------------------------------------------------------------


def partial(F: Form, alpha) -> Form:
    """Componentwise mixed partial d^alpha.

    alpha may have length n or length N; any requested derivative in a
    slot beyond n returns the zero form, because coefficients do not
    depend on those variables.
    """
    alpha = tuple(alpha)
    if len(alpha) not in (F.n, F.N):
        raise ValueError("multi-index length must be n or N")
    if any(a < 0 for a in alpha):
        raise ValueError("negative derivative order")
    if any(alpha[F.n:]):
        return Form(F.n, F.N, F.q, {}, backend=F.backend)
    alpha = alpha[: F.n]
    return Form(F.n, F.N, F.q,
                {lab: c.diff_alpha(alpha) for lab, c in F.coeffs.items()},
                backend=F.backend)


def hodge_star(F: Form) -> Form:
    """Hodge star: the I coefficient lands on I' with sign epsilon^{I I'}."""
    out = {}
    for lab, c in F.coeffs.items():
        comp, _ = complement(lab, F.N)
        sign = perm_sign_between(lab + comp, tuple(range(1, F.N + 1)))
        out[comp] = c.scale(sign) if sign != 1 else c
        if sign == 0:
            raise AssertionError("complement produced an invalid permutation")
    return Form(F.n, F.N, F.N - F.q, out, backend=F.backend)


def wedge(F: Form, G: Form) -> Form:
    """Exterior product; zero form when the degrees overflow N."""
    if (F.n, F.N) != (G.n, G.N):
        raise ValueError("wedge needs matching (n, N)")
    if F.coeffs and G.coeffs and F.backend != G.backend:
        raise ValueError("backend mismatch")
    qr = F.q + G.q
    if qr > F.N:
        # identically zero; represented as the empty top-degree form
        return Form(F.n, F.N, F.N, {}, backend=F.backend)
    out = {}
    for labA, cA in F.coeffs.items():
        setA = set(labA)
        for labB, cB in G.coeffs.items():
            if setA & set(labB):
                continue
            target = tuple(sorted(labA + labB))
            sign = perm_sign_between(labA + labB, target)
            term = (cA * cB).scale(sign) if sign != 1 else cA * cB
            out[target] = out[target] + term if target in out else term
    return Form(F.n, F.N, qr, out, backend=F.backend)


def _integral(c):
    return c.mean()


def inner_product(F: Form, G: Form):
    """Label-wise pairing sum_I integral(F_I * G_I); exact on TrigPoly."""
    F._check_shape(G)
    total = Fraction(0) if F.backend == "trig" else 0.0
    for lab in set(F.coeffs) & set(G.coeffs):
        total += _integral(F.coeffs[lab] * G.coeffs[lab])
    return total


def inner_product_wedge(F: Form, G: Form):
    """Same pairing computed through the star and wedge route.

    Builds F wedge (star G), extracts the top coefficient with a second
    star, restricts to the source space, and integrates there.  Agrees
    exactly with inner_product on the exact backend.
    """
    F._check_shape(G)
    top = wedge(F, hodge_star(G))
    scalar = hodge_star(top)  # 0-form carrying the density
    c = scalar.coeff(())
    return _integral(c)


# ---- norms -------------------------------------------------------------------


def _auto_P(F: Form, p) -> int:
    """Oversampled power-of-two resolution for quadrature of |.|^p."""
    B = max((c.max_freq() for c in F.coeffs.values()), default=1)
    target = max(32, 4 * (B + 1))
    P = 32
    while P < target:
        P *= 2
    return P


def _stack_samples(F: Form, P=None) -> np.ndarray:
    """(components, grid...) array of samples of all coefficients."""
    labs = sorted(F.coeffs)
    if F.backend == "grid":
        return np.stack([F.coeffs[lab].samples for lab in labs]) if labs else \
            np.zeros((0,) + (2,) * F.n)
    P = P or _auto_P(F, 2)
    return np.stack([F.coeffs[lab].sample(P) for lab in labs]) if labs else \
        np.zeros((0,) + (P,) * F.n)


def lp_norm(F: Form, p, P=None) -> float:
    """Lp norm of the pointwise little-l2 magnitude of the component vector.

    Exactly band-limited integrands (p = 2) are integrated exactly by the
    grid mean once the resolution clears twice the bandwidth; other p are
    quadratures on an oversampled grid.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if not F.coeffs:
        return 0.0
    stack = _stack_samples(F, P)
    mag2 = np.sum(stack * stack, axis=0)
    return float(np.mean(mag2 ** (p / 2.0)) ** (1.0 / p))


def sobolev_norm(F: Form, a, p, P=None) -> float:
    """W^{a,p} norm: p-sum of per-component Lp norms of all partials of
    order up to a in the source variables."""
    if a < 0:
        raise ValueError("order must be non-negative")
    total = 0.0
    for s in range(a + 1):
        for beta in multiindices(F.n, s):
            D = partial(F, beta)
            if not D.coeffs:
                continue
            stack = _stack_samples(D, P)
            for comp in stack:
                total += float(np.mean(np.abs(comp) ** p))
    return total ** (1.0 / p)


def grad_lp_norm(F: Form, p, P=None) -> float:
    """Lp norm of the full first derivative array, aggregated pointwise in
    little-l2 over both the component and the differentiation axis."""
    if not F.coeffs:
        return 0.0
    pieces = []
    for axis in range(F.n):
        e = tuple(1 if t == axis else 0 for t in range(F.n))
        pieces.append(_stack_samples(partial(F, e), P))
    stack = np.concatenate([s for s in pieces if s.size], axis=0)
    if stack.size == 0:
        return 0.0
    mag2 = np.sum(stack * stack, axis=0)
    return float(np.mean(mag2 ** (p / 2.0)) ** (1.0 / p))


# ---- change of variables ------------------------------------------------------


def _minor_det_exact(A, rows, cols):
    """Exact determinant of an integer submatrix by Leibniz expansion."""
    size = len(rows)
    if size == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(size)):
        sign = perm_sign_between(tuple(perm), tuple(range(size)))
        prod = 1
        for r, pc in zip(rows, perm):
            prod *= A[r][cols[pc]]
            if prod == 0:
                break
        total += sign * prod
    return total


def _is_signed_permutation(A) -> bool:
    arr = np.asarray(A, dtype=float)
    if not np.all(np.isin(arr, (-1.0, 0.0, 1.0))):
        return False
    return (np.all(np.sum(np.abs(arr), axis=0) == 1)
            and np.all(np.sum(np.abs(arr), axis=1) == 1))


def _pullback_trig_coeff(c: TrigPoly, A_int) -> TrigPoly:
    """Exact composition x -> A x for a signed permutation matrix."""
    n = c.n
    terms = {}
    for (freq, phase), coeff in c.terms.items():
        # cos(w . Ax) = cos((A^T w) . x)
        new = [0] * n
        for i in range(n):
            for j in range(n):
                new[j] += A_int[i][j] * freq[i]
        key = (tuple(new), phase)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return TrigPoly(n, terms)


def pullback_linear(F: Form, A, center=None) -> Form:
    """Pullback of an ordinary form (N == n) by x -> A(x - c) + c.

    Coefficients are composed with the map and the label components mix
    through minors of A.  On the grid backend the composed coefficients
    are evaluated by direct Fourier summation of the band-limited
    interpolant at the mapped nodes; on the exact backend A must be a
    signed permutation so frequencies stay integral.
    """
    if F.N != F.n:
        raise ValueError("pullback is defined for forms with N == n")
    n = F.n
    A = np.asarray(A, dtype=float)
    if A.shape != (n, n):
        raise ValueError("matrix shape mismatch")
    if center is None:
        center = np.zeros(n)
    center = np.asarray(center, dtype=float)

    if F.backend == "trig":
        if not _is_signed_permutation(A):
            raise ValueError(
                "exact pullback needs a signed permutation matrix; "
                "sample to a grid for general rotations"
            )
        if np.any(center):
            # recentring shifts phases, which leaves the rational setting
            raise ValueError("exact pullback supports center=0 only")
        A_int = [[int(round(A[i, j])) for j in range(n)] for i in range(n)]
        out = {}
        for labJ in labels(n, F.q):
            acc = TrigPoly.zero(n)
            for labI, c in F.coeffs.items():
                rows = [i - 1 for i in labI]
                cols = [j - 1 for j in labJ]
                det = _minor_det_exact(A_int, rows, cols)
                if det == 0:
                    continue
                acc = acc + _pullback_trig_coeff(c, A_int).scale(det)
            if not acc.is_zero():
                out[labJ] = acc
        return Form(n, n, F.q, out, backend="trig")

    P = F.grid_P()
    pts = grid_points(n, P).reshape(-1, n)
    mapped = (pts - center) @ A.T + center
    evaluators = {lab: _fourier_eval(F.coeffs[lab], mapped) for lab in F.coeffs}
    out = {}
    for labJ in labels(n, F.q):
        acc = np.zeros(P ** n)
        hit = False
        for labI, vals in evaluators.items():
            rows = [i - 1 for i in labI]
            cols = [j - 1 for j in labJ]
            det = float(np.linalg.det(A[np.ix_(rows, cols)])) if rows else 1.0
            if abs(det) < 1e-15:
                continue
            acc = acc + det * vals
            hit = True
        if hit:
            out[labJ] = GridField(n, P, acc.reshape((P,) * n))
    if not out:
        return zero_form(n, n, F.q, backend="grid", P=P)
    return Form(n, n, F.q, out, backend="grid")


def _fourier_eval(field: GridField, points: np.ndarray) -> np.ndarray:
    """Evaluate the trigonometric interpolant of a grid field at arbitrary
    points (M, n) by separable mode summation."""
    n, P = field.n, field.P
    spec = np.fft.fftn(field.samples) / (P ** n)
    ks = np.fft.fftfreq(P, d=1.0 / P)
    phases = [np.exp(1j * np.outer(points[:, axis], ks)) for axis in range(n)]
    letters = "abcdefg"[:n]
    expr = ",".join(f"p{letters[axis]}" for axis in range(n))
    expr += f",{letters}->p"
    vals = np.einsum(expr, *phases, spec, optimize=True)
    return vals.real


def sample_form(F: Form, P: int) -> Form:
    """Sample an exact form onto the P grid."""
    if F.backend != "trig":
        raise ValueError("sample_form expects a TrigPoly-backed form")
    out = {lab: GridField(F.n, P, c.sample(P)) for lab, c in F.coeffs.items()}
    if not out:
        return zero_form(F.n, F.N, F.q, backend="grid", P=P)
    return Form(F.n, F.N, F.q, out, backend="grid")


def form_max_abs(F: Form) -> float:
    """Largest absolute coefficient value: exact term magnitude sum bound on
    TrigPoly (0 iff the form is exactly 0), max sample magnitude on grids."""
    if F.backend == "trig":
        return float(max((sum(abs(c) for c in poly.terms.values())
                          for poly in F.coeffs.values()), default=0))
    return max((c.max_abs() for c in F.coeffs.values()), default=0.0)
