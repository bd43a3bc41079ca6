"""Fourier symbols of the Hodge Laplacians and ellipticity probes.

Acting on a plane wave, box(zeta e^{i xi.x}) = S(xi) zeta e^{i xi.x} where
S(xi) is the symmetric matrix

    S(xi)_{M I} = sum_{alpha, beta} C^{M I}_{alpha beta} xi^{alpha + beta}

over the degree-q labels (the two (-1)^k factors, one from the operator
and one from 2k-fold differentiation of the wave, cancel).  For rational
xi everything here is exact Fraction arithmetic; floating point enters
only in dense eigenvalue scans for ell >= 2, and those are spot-checked
against exact Rayleigh quotients.

The strength measure is the Legendre-Hadamard style quotient

    lh_quotient = min_zeta <S(xi) zeta, zeta> / (|zeta|^2 |xi|^{2k})

which is scale invariant in xi, so scans only need directions; rational
points on the sphere come from the stereographic parametrization.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from .forms import Form
from .multiindex import labels, multiindices
from .operators import OperatorSpec, box_apply, box_coeff_tensor, top_coeff_tensor
from .trigpoly import TrigPoly

__all__ = [
    "box_symbol",
    "symbol_rayleigh",
    "lh_quotient",
    "min_symbol_eigenvalue",
    "rational_sphere_point",
    "ellipticity_scan",
    "source_symbol_scalar",
    "wave_symbol_check",
]


def _as_fractions(xi, n):
    xi = tuple(Fraction(x) for x in xi)
    if len(xi) != n:
        raise ValueError(f"direction must have {n} entries")
    return xi


def _xi_pow(xi, gamma):
    out = Fraction(1)
    for x, g in zip(xi, gamma):
        out *= x ** g
    return out


def box_symbol(spec: OperatorSpec, q: int, xi, source=False):
    """Exact symbol matrix of the Hodge Laplacian at frequency xi.

    Returns (labels, S) with S a nested list of Fractions indexed by the
    degree-q labels of the hybrid space (or the source space when
    source=True).
    """
    xi = _as_fractions(xi, spec.n)
    tensor = top_coeff_tensor(spec, q) if source else box_coeff_tensor(spec, q)
    width = spec.n if source else spec.N
    labs = labels(width, q)
    idx = {L: i for i, L in enumerate(labs)}
    size = len(labs)
    S = [[Fraction(0)] * size for _ in range(size)]
    for (M, I, alpha, beta), val in tensor.entries.items():
        gamma = tuple(a + b for a, b in zip(alpha, beta))
        S[idx[M]][idx[I]] += val * _xi_pow(xi, gamma)
    return labs, S


def symbol_rayleigh(spec, q, xi, zeta, source=False) -> Fraction:
    """Exact Rayleigh numerator <S(xi) zeta, zeta> for rational zeta."""
    labs, S = box_symbol(spec, q, xi, source=source)
    zeta = [Fraction(z) for z in zeta]
    if len(zeta) != len(labs):
        raise ValueError("zeta length must match the label count")
    return sum(S[i][j] * zeta[i] * zeta[j]
               for i in range(len(labs)) for j in range(len(labs)))


def _norm2k(xi, k) -> Fraction:
    return sum(x * x for x in xi) ** k


def min_symbol_eigenvalue(spec, q, xi, source=False):
    """Smallest eigenvalue of S(xi).

    Exact when ell = 1 (the matrix is a multiple of the identity there);
    otherwise a float from the dense symmetric eigensolver.
    """
    labs, S = box_symbol(spec, q, xi, source=source)
    if spec.ell == 1:
        diag = S[0][0]
        size = len(labs)
        if all(S[i][j] == (diag if i == j else 0)
               for i in range(size) for j in range(size)):
            return diag
    M = np.array([[float(v) for v in row] for row in S])
    return float(np.linalg.eigvalsh(M)[0])


def lh_quotient(spec, q, xi, source=False):
    """min eigenvalue of S(xi) divided by |xi|^{2k}; scale invariant."""
    xi = _as_fractions(xi, spec.n)
    nrm = _norm2k(xi, spec.k)
    if nrm == 0:
        raise ValueError("xi must be nonzero")
    ev = min_symbol_eigenvalue(spec, q, xi, source=source)
    if isinstance(ev, Fraction):
        return ev / nrm
    return ev / float(nrm)


def source_symbol_scalar(spec, xi) -> Fraction:
    """The scalar sigma(xi) = sum over source-coupled alpha of xi^{2 alpha}
    (requires ell = 1, where the source symbol is sigma times identity)."""
    if spec.ell != 1:
        raise ValueError("scalar symbol only for ell = 1")
    xi = _as_fractions(xi, spec.n)
    total = Fraction(0)
    for alpha in multiindices(spec.n, spec.k):
        lab = spec.ordering.label_of(alpha)
        if all(t <= spec.n for t in lab):
            total += _xi_pow(xi, tuple(2 * a for a in alpha))
    return total


def rational_sphere_point(u):
    """Stereographic image of a rational tuple u: a rational point on the
    unit sphere in one more dimension, (2u, 1 - |u|^2) / (1 + |u|^2)."""
    u = [Fraction(x) for x in u]
    s = sum(x * x for x in u)
    denom = 1 + s
    return tuple([2 * x / denom for x in u] + [(1 - s) / denom])


def ellipticity_scan(spec, q, source=False, samples=40, seed=0) -> dict:
    """Probe the symbol over coordinate axes, the diagonal direction and
    random rational sphere points; report the worst quotient seen.

    Exact zeros of the quotient are reported as witnesses (the scan
    proves degeneracy when it finds one; it only suggests ellipticity
    otherwise).
    """
    rng = random.Random(seed)
    n = spec.n
    dirs = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        dirs.append(tuple(e))
    dirs.append((1,) * n)
    for _ in range(samples):
        u = [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(n - 1)]
        pt = rational_sphere_point(u)
        if any(pt):
            dirs.append(pt)
    best = None
    worst = None
    witnesses = []
    exact = spec.ell == 1
    for xi in dirs:
        val = lh_quotient(spec, q, xi, source=source)
        fval = float(val)
        if worst is None or fval < worst[0]:
            worst = (fval, xi)
        if best is None or fval > best[0]:
            best = (fval, xi)
        if (val == 0) if exact else (fval < 1e-12):
            witnesses.append(tuple(str(x) for x in xi))
    return {
        "n": spec.n,
        "k": spec.k,
        "ell": spec.ell,
        "N": spec.N,
        "ordering_kind": spec.ordering.kind,
        "q": q,
        "source_space": source,
        "directions_tested": len(dirs),
        "min_quotient": worst[0],
        "min_at": [str(x) for x in worst[1]],
        "max_quotient": best[0],
        "degenerate_witnesses": witnesses,
        "exact_arithmetic": exact,
    }


def wave_symbol_check(spec, q, xi_int, zeta=None, source=False) -> bool:
    """Verify box(zeta cos(xi.x)) = (S(xi) zeta) cos(xi.x) exactly.

    xi_int must be integer so the wave lives on the exact backend; zeta
    defaults to all ones.  Returns True or raises with the discrepancy.
    """
    from .operators import box_apply_top

    xi_int = tuple(int(x) for x in xi_int)
    width = spec.n if source else spec.N
    labs, S = box_symbol(spec, q, xi_int, source=source)
    if zeta is None:
        zeta = [Fraction(1)] * len(labs)
    zeta = [Fraction(z) for z in zeta]
    wave = TrigPoly.wave(spec.n, xi_int, 0, Fraction(1))
    coeffs = {L: wave.scale(z) for L, z in zip(labs, zeta) if z != 0}
    H = Form(spec.n, width, q, coeffs, backend="trig")
    out = box_apply_top(spec, H) if source else box_apply(spec, H)
    expected = {}
    for i, L in enumerate(labs):
        val = sum(S[i][j] * zeta[j] for j in range(len(labs)))
        if val != 0:
            expected[L] = wave.scale(val)
    want = Form(spec.n, width, q, expected, backend="trig")
    diff = out - want
    if not diff.is_zero():
        raise ArithmeticError(f"symbol mismatch at xi={xi_int}: {diff.coeffs}")
    return True
