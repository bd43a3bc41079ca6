"""Seeded random generators used by the verification suites and tests."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .forms import Form
from .multiindex import labels
from .trigpoly import COS, SIN, TrigPoly

__all__ = [
    "random_rational",
    "random_trigpoly",
    "random_trig_form",
    "random_rotation",
    "random_signed_permutation",
]


def random_rational(rng: random.Random, span=4, den=6) -> Fraction:
    """Nonzero rational with small numerator and denominator."""
    num = rng.choice([i for i in range(-span, span + 1) if i != 0])
    return Fraction(num, rng.randint(1, den))


def random_trigpoly(rng: random.Random, n, max_freq=2, terms=2) -> TrigPoly:
    acc = TrigPoly.zero(n)
    for _ in range(terms):
        freq = tuple(rng.randint(-max_freq, max_freq) for _ in range(n))
        phase = rng.choice((COS, SIN))
        acc = acc + TrigPoly.wave(n, freq, phase, random_rational(rng))
    return acc


def random_trig_form(rng: random.Random, n, N, q, components=3,
                     max_freq=2, terms=2) -> Form:
    """Sparse random form: a few labels carry small rational trig coefficients."""
    labs = list(labels(N, q))
    rng.shuffle(labs)
    picked = labs[: min(components, len(labs))]
    coeffs = {}
    for lab in picked:
        poly = random_trigpoly(rng, n, max_freq=max_freq, terms=terms)
        if not poly.is_zero():
            coeffs[lab] = poly
    return Form(n, N, q, coeffs, backend="trig")


def random_rotation(rng: np.random.Generator, n) -> np.ndarray:
    """Haar-ish random element of SO(n) via QR with sign fixing."""
    M = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(M)
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_signed_permutation(rng: random.Random, n) -> np.ndarray:
    perm = list(range(n))
    rng.shuffle(perm)
    A = np.zeros((n, n))
    for i, j in enumerate(perm):
        A[i, j] = rng.choice((-1.0, 1.0))
    # keep it a rotation (det +1) so it composes with the rotation probes
    if np.linalg.det(A) < 0:
        A[0, :] = -A[0, :]
    return A
