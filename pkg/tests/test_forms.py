"""Forms over hybrid label spaces: star, wedge, pairings, norms, pullback."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from divcurl.forms import (
    Form,
    form_max_abs,
    grad_lp_norm,
    hodge_star,
    inner_product,
    inner_product_wedge,
    lp_norm,
    partial,
    pullback_linear,
    sample_form,
    sobolev_norm,
    wedge,
    zero_form,
)
from divcurl.gridfield import GridField, grid_points
from divcurl.randoms import random_trig_form
from divcurl.trigpoly import TrigPoly


def cosx1(n=2):
    return TrigPoly.wave(n, (1,) + (0,) * (n - 1), 0, 1)


def test_constructor_validation():
    f = cosx1()
    with pytest.raises(ValueError):
        Form(2, 3, 1, {(4,): f}, backend="trig")          # label out of range
    with pytest.raises(ValueError):
        Form(2, 3, 1, {(1, 2): f}, backend="trig")        # wrong degree
    with pytest.raises(ValueError):
        Form(2, 3, 1, {(2, 1): f}, backend="trig")        # not increasing
    with pytest.raises(ValueError):
        Form(2, 3, 1, {(1,): f}, backend="grid")          # backend mismatch
    g32 = GridField(2, 32, np.zeros((32, 32)))
    g16 = GridField(2, 16, np.zeros((16, 16)))
    with pytest.raises(ValueError):
        Form(2, 3, 1, {(1,): g32, (2,): g16}, backend="grid")  # mixed P


def test_hodge_star_classical_three_space():
    f = cosx1()
    F1 = Form(2, 3, 1, {(1,): f}, backend="trig")
    s = hodge_star(F1)
    assert s.q == 2 and s.coeff((2, 3)) == f
    F2 = Form(2, 3, 1, {(2,): f}, backend="trig")
    assert hodge_star(F2).coeff((1, 3)) == f.scale(-1)
    F3 = Form(2, 3, 1, {(3,): f}, backend="trig")
    assert hodge_star(F3).coeff((1, 2)) == f


def test_star_involution_sign_law():
    rng = random.Random(2)
    for N in (2, 3, 4):
        for q in range(N + 1):
            F = random_trig_form(rng, 2, N, q, components=3)
            sign = (-1) ** (q * (N - q))
            assert (hodge_star(hodge_star(F)) - F.scale(sign)).is_zero()


def test_wedge_graded_anticommutativity():
    rng = random.Random(4)
    for (q1, q2) in [(1, 1), (1, 2), (2, 1), (0, 2)]:
        F = random_trig_form(rng, 2, 4, q1, components=2)
        G = random_trig_form(rng, 2, 4, q2, components=2)
        sign = (-1) ** (q1 * q2)
        assert (wedge(F, G) - wedge(G, F).scale(sign)).is_zero()


def test_wedge_explicit_sign():
    f = cosx1()
    g = TrigPoly.wave(2, (0, 1), 1, 1)
    A = Form(2, 2, 1, {(2,): f}, backend="trig")
    B = Form(2, 2, 1, {(1,): g}, backend="trig")
    w = wedge(A, B)
    assert w.coeff((1, 2)) == (f * g).scale(-1)


def test_pairing_two_routes_agree_exactly():
    """Coordinate pairing versus the wedge-with-star route."""
    rng = random.Random(8)
    for N in (2, 3, 4):
        for q in range(N + 1):
            F = random_trig_form(rng, 2, N, q, components=3)
            G = F + random_trig_form(rng, 2, N, q, components=2)
            a = inner_product(F, G)
            b = inner_product_wedge(F, G)
            assert a == b and isinstance(a, Fraction)
            assert inner_product(F, G) == inner_product(G, F)


def test_norm_frozen_values():
    F = Form(2, 3, 1, {(1,): cosx1()}, backend="trig")
    assert inner_product(F, F) == Fraction(1, 2)
    assert abs(lp_norm(F, 2) - 1 / math.sqrt(2)) < 1e-12
    assert abs(sobolev_norm(F, 1, 2) - 1.0) < 1e-12
    assert abs(grad_lp_norm(F, 2) - 1 / math.sqrt(2)) < 1e-12
    # |cos| has kinks, so the L1 quadrature converges like P**-2
    err_default = abs(lp_norm(F, 1) - 2 / math.pi)
    err_fine = abs(lp_norm(F, 1, P=512) - 2 / math.pi)
    assert err_default < 5e-3
    assert err_fine < 1e-4 and err_fine < err_default / 50
    assert abs(grad_lp_norm(F, 1, P=512) - 2 / math.pi) < 1e-4


def test_norms_agree_across_backends():
    """At matched resolution both backends run the same quadrature sums."""
    rng = random.Random(12)
    F = random_trig_form(rng, 2, 3, 1, components=3)
    Fg = sample_form(F, 64)
    for p in (1, 2, 3):
        assert abs(lp_norm(F, p, P=64) - lp_norm(Fg, p)) < 1e-12
    assert abs(sobolev_norm(F, 1, 1.5, P=64) - sobolev_norm(Fg, 1, 1.5)) < 1e-11


def test_partial_and_zero_form():
    F = Form(2, 3, 1, {(1,): cosx1()}, backend="trig")
    d1 = partial(F, (1, 0))
    assert d1.coeff((1,)) == cosx1().diff(0)
    # a derivative slot beyond the base dimension annihilates hybrid forms
    assert partial(F, (0, 0, 1)).is_zero()
    z = zero_form(2, 3, 2, backend="grid", P=16)
    assert z.is_zero() and z.grid_P() == 16


def test_pullback_signed_permutation_exact():
    # quarter turn: psi(x) = (-x2, x1); pullback of dx1 is -dx2
    A = np.array([[0.0, -1.0], [1.0, 0.0]])
    F = Form(2, 2, 1, {(1,): TrigPoly.const(2, 1)}, backend="trig")
    pb = pullback_linear(F, A)
    assert pb.coeff((2,)) == TrigPoly.const(2, -1)
    assert pb.coeff((1,)).is_zero() if pb.coeffs.get((1,)) else True
    # scalars compose: cos(x1) o psi = cos(-x2) = cos(x2)
    G = Form(2, 2, 0, {(): cosx1()}, backend="trig")
    assert pullback_linear(G, A).coeff(()) == TrigPoly.wave(2, (0, 1), 0, 1)


def test_pullback_grid_rotation_matches_analytic():
    P = 64
    theta = 0.7
    A = np.array([[math.cos(theta), -math.sin(theta)],
                  [math.sin(theta), math.cos(theta)]])
    xs = grid_points(2, P)
    sig = 0.3
    gauss = np.exp(-((xs[..., 0] - np.pi) ** 2 + (xs[..., 1] - np.pi) ** 2)
                   / (2 * sig**2))
    F = Form(2, 2, 0, {(): GridField(2, P, gauss)}, backend="grid")
    center = np.array([np.pi, np.pi])
    pb = pullback_linear(F, A, center)
    pts = (xs.reshape(-1, 2) - center) @ A.T + center
    truth = np.exp(-((pts[:, 0] - np.pi) ** 2 + (pts[:, 1] - np.pi) ** 2)
                   / (2 * sig**2)).reshape(P, P)
    assert np.max(np.abs(pb.coeff(()).samples - truth)) < 1e-6


def test_pullback_exact_requires_signed_permutation():
    A = np.array([[0.6, -0.8], [0.8, 0.6]])
    F = Form(2, 2, 0, {(): cosx1()}, backend="trig")
    with pytest.raises(ValueError):
        pullback_linear(F, A)


def test_sampling_commutes_with_arithmetic():
    rng = random.Random(20)
    F = random_trig_form(rng, 2, 3, 1, components=2)
    G = random_trig_form(rng, 2, 3, 1, components=2)
    P = 32
    lhs = sample_form(F + G, P)
    rhs = sample_form(F, P) + sample_form(G, P)
    assert form_max_abs(lhs - rhs) < 1e-12
