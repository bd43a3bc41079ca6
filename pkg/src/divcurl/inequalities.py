"""Numerical probes for the duality and Gagliardo-Nirenberg style bounds.

Probes are built from separable periodized Gaussian bumps.  Dilation acts
on bump parameters (centers move toward the dilation point, widths
scale), which reproduces u(lam^{-1} x) without resampling artifacts for
bumps that stay localized inside the box.

The two probe families:

* duality_ratio: |<F, H>| / (||F||_1 ||grad H||_n), exactly invariant
  under simultaneous dilation of both arguments in the continuum;
* gn_ratio: ||u||_{W^{k-1, n/(n-1)}} / (||T u||_1 + ||T* u||_1) on source
  forms, meaningful away from the excluded degrees q in {1, n-1} (at the
  excluded degrees it is only meaningful for closed or coclosed inputs,
  which make_closed_source / make_coclosed_source construct).

hodge_solve inverts the ell = 1 Hodge Laplacian spectrally (the symbol
is scalar and positive away from the zero mode) and reports the
reconstruction residuals, which measure how far the sampled data are
from the discrete closed/coclosed subspaces.

vs_reduction / vs_lift translate top-complement closed forms into
families of scalar functions obeying a single k-th order divergence
equation, and back; the round trip is the identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import __version__
from .forms import (
    Form,
    grad_lp_norm,
    inner_product,
    lp_norm,
    sobolev_norm,
    zero_form,
)
from .gridfield import GridField, int_freqs
from .multiindex import labels, multiindices, perm_sign_between
from .operators import (
    OperatorSpec,
    apply_T,
    apply_T_star_coordinate,
    _apply_T_or_zero,
    _apply_T_star_or_zero,
    _apply_Top_or_zero,
    _apply_Top_star_or_zero,
    spec_for,
)

__all__ = [
    "BumpSpec",
    "bump_field",
    "bump_form",
    "random_bump_form",
    "dilate_form_specs",
    "duality_ratio",
    "duality_dilation_study",
    "gn_ratio",
    "make_closed_source",
    "make_coclosed_source",
    "classical_gn_ratio",
    "hodge_solve",
    "scalar_symbol_array",
    "vs_reduction",
    "vs_lift",
    "divergence_free_family",
    "divergence_defect",
    "run_suite",
    "default_config",
]


# ---- bump machinery ---------------------------------------------------------


def _periodized_gaussian_1d(P, center, sigma):
    x = np.arange(P) * (2 * np.pi / P)
    acc = np.zeros(P)
    for j in (-2, -1, 0, 1, 2):
        acc += np.exp(-((x - center - 2 * np.pi * j) ** 2) / (2 * sigma**2))
    return acc


@dataclass(frozen=True)
class BumpSpec:
    """A separable periodized Gaussian: amplitude * prod_j g(x_j; c_j, s_j)."""

    amplitude: float
    centers: tuple
    sigmas: tuple

    def field(self, n, P) -> np.ndarray:
        if len(self.centers) != n or len(self.sigmas) != n:
            raise ValueError("bump dimension mismatch")
        out = np.array(self.amplitude, dtype=float)
        for axis in range(n):
            line = _periodized_gaussian_1d(P, self.centers[axis], self.sigmas[axis])
            shape = [1] * n
            shape[axis] = P
            out = out * line.reshape(shape)
        return out

    def dilate(self, lam, about=np.pi):
        """Parameter-level dilation x -> about + lam (x - about)."""
        return BumpSpec(
            self.amplitude,
            tuple(about + lam * (c - about) for c in self.centers),
            tuple(lam * s for s in self.sigmas),
        )


def bump_field(n, P, bumps) -> GridField:
    acc = np.zeros((P,) * n)
    for b in bumps:
        acc = acc + b.field(n, P)
    return GridField(n, P, acc)


def bump_form(n, N, q, spec_map, P) -> Form:
    """Assemble a grid form from {label: [BumpSpec, ...]}."""
    coeffs = {lab: bump_field(n, P, bumps) for lab, bumps in spec_map.items() if bumps}
    if not coeffs:
        return zero_form(n, N, q, backend="grid", P=P)
    return Form(n, N, q, coeffs, backend="grid")


def random_bump_spec(rng: random.Random, n, sigma_range=(0.25, 0.4), spread=1.2):
    return BumpSpec(
        amplitude=rng.uniform(0.3, 1.0) * rng.choice((-1, 1)),
        centers=tuple(np.pi + rng.uniform(-spread, spread) for _ in range(n)),
        sigmas=tuple(rng.uniform(*sigma_range) for _ in range(n)),
    )


def random_bump_form(rng, n, N, q, P, components=2, sigma_range=(0.25, 0.4),
                     spread=1.2):
    """A random bump form together with its parameter map (for dilation)."""
    labs = labels(N, q)
    count = min(components, len(labs))
    chosen = rng.sample(labs, count) if count < len(labs) else list(labs)
    spec_map = {
        lab: [random_bump_spec(rng, n, sigma_range, spread)] for lab in chosen
    }
    return bump_form(n, N, q, spec_map, P), spec_map


def dilate_form_specs(spec_map, lam, about=np.pi):
    return {lab: [b.dilate(lam, about) for b in bumps]
            for lab, bumps in spec_map.items()}


# ---- ratio probes -----------------------------------------------------------


def duality_ratio(F: Form, H: Form) -> float:
    """|<F, H>| / (||F||_1 ||grad H||_n); dilation invariant in the
    continuum when both arguments dilate together."""
    if (F.n, F.N, F.q) != (H.n, H.N, H.q):
        raise ValueError("probe forms must share shape")
    num = abs(float(inner_product(F, H)))
    den = lp_norm(F, 1) * grad_lp_norm(H, F.n)
    if den == 0:
        raise ValueError("degenerate probe (zero denominator)")
    return num / den


def duality_dilation_study(n, N, q, F_specs, H_specs, lams, P) -> dict:
    ratios = []
    for lam in lams:
        F = bump_form(n, N, q, dilate_form_specs(F_specs, lam), P)
        H = bump_form(n, N, q, dilate_form_specs(H_specs, lam), P)
        ratios.append(duality_ratio(F, H))
    ratios = np.array(ratios)
    drift = float(ratios.max() / ratios.min() - 1) if ratios.min() > 0 else float("inf")
    return {"lams": list(map(float, lams)), "ratios": ratios.tolist(),
            "max_drift": drift}


EXCLUDED_NOTE = (
    "degree q in {1, n-1} needs a side condition: pass assume='closed' "
    "(q = n-1) or assume='coclosed' (q = 1) with an input that satisfies it, "
    "or allow_excluded=True to probe the unconstrained failure"
)


def gn_ratio(spec: OperatorSpec, u: Form, assume=None, allow_excluded=False,
             side_tol=1e-8) -> float:
    """||u||_{W^{k-1, n/(n-1)}} / (||T u||_1 + ||T* u||_1) on source forms.

    At the excluded degrees the unconstrained quotient is unbounded;
    assume='closed' / 'coclosed' asserts (and verifies) the side
    condition that restores meaning.
    """
    if (u.n, u.N) != (spec.n, spec.n):
        raise ValueError("gn_ratio expects a source form")
    n, q = spec.n, u.q
    if q in (1, n - 1) and assume is None and not allow_excluded:
        raise ValueError(EXCLUDED_NOTE)
    Tu = _apply_Top_or_zero(spec, u)
    Tsu = _apply_Top_star_or_zero(spec, u)
    scale = lp_norm(u, 1)
    if assume == "closed" and lp_norm(Tu, 1) > side_tol * max(scale, 1e-30):
        raise ValueError("input is not closed to the requested tolerance")
    if assume == "coclosed" and lp_norm(Tsu, 1) > side_tol * max(scale, 1e-30):
        raise ValueError("input is not coclosed to the requested tolerance")
    num = sobolev_norm(u, spec.k - 1, n / (n - 1))
    den = lp_norm(Tu, 1) + lp_norm(Tsu, 1)
    if den == 0:
        raise ValueError("degenerate probe (T u and T* u both vanish)")
    return num / den


def make_closed_source(spec: OperatorSpec, q, rng, P, components=2,
                       sigma_range=(0.25, 0.4)) -> Form:
    """A closed source q-form: u = T phi (closed since T T = 0 for odd ell)."""
    if spec.ell % 2 == 0:
        raise ValueError("T T = 0 needs odd ell; use a kernel projection instead")
    if q < spec.ell:
        raise ValueError("no closed range forms below degree ell")
    phi, _ = random_bump_form(rng, spec.n, spec.n, q - spec.ell, P,
                              components=components, sigma_range=sigma_range)
    u = _apply_Top_or_zero(spec, phi)
    if u.is_zero():
        raise ValueError("probe collapsed to zero; retry with another seed")
    return u


def make_coclosed_source(spec: OperatorSpec, q, rng, P, components=2,
                         sigma_range=(0.25, 0.4)) -> Form:
    """A coclosed source q-form: u = T* psi."""
    if spec.ell % 2 == 0:
        raise ValueError("T* T* = 0 needs odd ell")
    if q + spec.ell > spec.n:
        raise ValueError("no coclosed range forms above degree n - ell")
    psi, _ = random_bump_form(rng, spec.n, spec.n, q + spec.ell, P,
                              components=components, sigma_range=sigma_range)
    u = _apply_Top_star_or_zero(spec, psi)
    if u.is_zero():
        raise ValueError("probe collapsed to zero; retry with another seed")
    return u


def classical_gn_ratio(samples: np.ndarray) -> float:
    """Plain-numpy ||u||_{n/(n-1)} / ||grad u||_1 for a scalar grid sample,
    independent of the Form/operator classes (cross-check path)."""
    n = samples.ndim
    P = samples.shape[0]
    spec = np.fft.fftn(samples)
    ks = int_freqs(P)
    grads = []
    for axis in range(n):
        shape = [1] * n
        shape[axis] = P
        mult = (1j * ks.astype(complex)).reshape(shape)
        grads.append(np.fft.ifftn(spec * mult).real)
    gnorm = np.sqrt(sum(g * g for g in grads))
    dx = (2 * np.pi / P) ** n / (2 * np.pi) ** n
    p = n / (n - 1)
    num = (np.sum(np.abs(samples) ** p) * dx) ** (1 / p)
    den = np.sum(gnorm) * dx
    return num / den


# ---- spectral Hodge solve (ell = 1) -----------------------------------------


def scalar_symbol_array(spec: OperatorSpec, P) -> np.ndarray:
    """sigma(omega) = sum_alpha |m_alpha(omega)|^2 built from the discrete
    derivative multipliers (including their Nyquist handling), so that the
    spectral inverse is exact against the grid operators.  Away from the
    Nyquist modes this equals sum_alpha omega^{2 alpha}."""
    if spec.ell != 1:
        raise ValueError("scalar symbol requires ell = 1")
    from .gridfield import _deriv_multiplier

    sig = np.zeros((P,) * spec.n)
    for alpha in multiindices(spec.n, spec.k):
        sig = sig + np.abs(_deriv_multiplier(spec.n, P, tuple(alpha))) ** 2
    return sig


def hodge_solve(spec: OperatorSpec, q, F=None, G=None, closed_tol=1e-6) -> tuple:
    """Solve box Z = T* F + T G for the degree-q potential Z (ell = 1).

    F is a closed (q+1)-form, G a coclosed (q-1)-form (either may be
    None).  Both must be mean free; the solver verifies the side
    conditions to closed_tol relative accuracy and reports reconstruction
    residuals ||T Z - F|| and ||T* Z - G||, which vanish exactly when the
    sampled data are exactly closed/coclosed on the grid and otherwise
    measure their sampling defect.
    """
    if spec.ell != 1:
        raise ValueError("spectral inversion implemented for ell = 1")
    if F is None and G is None:
        raise ValueError("need at least one datum")
    probe = F if F is not None else G
    if probe.backend != "grid":
        raise ValueError("hodge_solve works on the grid backend")
    P = probe.grid_P()
    n, N = spec.n, spec.N

    pieces = []
    info = {}
    if F is not None:
        if (F.n, F.N, F.q) != (n, N, q + 1):
            raise ValueError("F must be a hybrid (q+1)-form")
        scaleF = max(lp_norm(F, 2), 1e-30)
        TF = _apply_T_or_zero(spec, F)
        info["closedness_F"] = lp_norm(TF, 2) / scaleF
        if info["closedness_F"] > closed_tol:
            raise ValueError("F is not closed to the requested tolerance")
        mean_ok = max((abs(float(c.mean())) for c in F.coeffs.values()), default=0.0)
        info["mean_F"] = mean_ok
        if mean_ok > closed_tol * scaleF:
            raise ValueError("F must be mean free")
        pieces.append(apply_T_star_coordinate(spec, F))
    if G is not None:
        if (G.n, G.N, G.q) != (n, N, q - 1):
            raise ValueError("G must be a hybrid (q-1)-form")
        scaleG = max(lp_norm(G, 2), 1e-30)
        TsG = _apply_T_star_or_zero(spec, G)
        info["coclosedness_G"] = lp_norm(TsG, 2) / scaleG
        if info["coclosedness_G"] > closed_tol:
            raise ValueError("G is not coclosed to the requested tolerance")
        meang = max((abs(float(c.mean())) for c in G.coeffs.values()), default=0.0)
        info["mean_G"] = meang
        if meang > closed_tol * scaleG:
            raise ValueError("G must be mean free")
        pieces.append(apply_T(spec, G))

    rhs = pieces[0]
    for extra in pieces[1:]:
        rhs = rhs + extra

    sig = scalar_symbol_array(spec, P)
    zero = (0,) * n
    coeffs = {}
    for lab in labels(N, q):
        c = rhs.coeffs.get(lab)
        if c is None:
            continue
        spectrum = np.fft.fftn(c.samples)
        out = np.zeros_like(spectrum)
        mask = sig > 0
        out[mask] = spectrum[mask] / sig[mask]
        out[zero] = 0.0
        coeffs[lab] = GridField(n, P, np.fft.ifftn(out).real)
    Z = (Form(n, N, q, coeffs, backend="grid") if coeffs
         else zero_form(n, N, q, backend="grid", P=P))

    if F is not None:
        info["residual_T"] = lp_norm(_apply_T_or_zero(spec, Z) - F, 2)
    if G is not None:
        info["residual_Tstar"] = lp_norm(_apply_T_star_or_zero(spec, Z) - G, 2)
    return Z, info


# ---- reduction to divergence form and back -----------------------------------


def vs_reduction(spec: OperatorSpec, F: Form) -> dict:
    """Scalar family {alpha: g_alpha} of a hybrid (N - ell)-form:

        g_alpha = sum_I epsilon^{ordering(alpha) I}_{(1..N)} F_I.

    When T F = 0 the family satisfies sum_alpha d^k g_alpha / dx^alpha = 0
    in the same exact arithmetic as F.
    """
    if (F.n, F.N) != (spec.n, spec.N):
        raise ValueError("form does not live on the spec's hybrid space")
    if F.q != spec.N - spec.ell:
        raise ValueError("reduction needs degree N - ell")
    full = tuple(range(1, spec.N + 1))
    out = {}
    for alpha in multiindices(spec.n, spec.k):
        a = spec.ordering.label_of(alpha)
        acc = None
        for I, c in F.coeffs.items():
            sign = perm_sign_between(a + I, full)
            if sign == 0:
                continue
            term = c.scale(sign) if F.backend == "trig" else c * sign
            acc = term if acc is None else acc + term
        if acc is not None and (not acc.is_zero()):
            out[alpha] = acc
    return out


def vs_lift(spec: OperatorSpec, g: dict, backend="trig", P=None) -> Form:
    """Rebuild the (N - ell)-form whose reduction is the family g:

        F_I = epsilon^{ordering(alpha) I}_{(1..N)} g_alpha,
        I the complement of ordering(alpha).
    """
    full = tuple(range(1, spec.N + 1))
    coeffs = {}
    for alpha, fn in g.items():
        a = spec.ordering.label_of(tuple(alpha))
        I = tuple(t for t in full if t not in set(a))
        sign = perm_sign_between(a + I, full)
        term = fn.scale(sign) if backend == "trig" else fn * sign
        coeffs[I] = coeffs[I] + term if I in coeffs else term
    q = spec.N - spec.ell
    if not coeffs:
        return zero_form(spec.n, spec.N, q, backend=backend, P=P)
    return Form(spec.n, spec.N, q, coeffs, backend=backend)


def divergence_defect(spec: OperatorSpec, g: dict):
    """sum_alpha d^k g_alpha / dx^alpha (exact on the trig backend)."""
    acc = None
    for alpha, fn in g.items():
        term = fn.diff_alpha(tuple(alpha))
        acc = term if acc is None else acc + term
    return acc


def divergence_free_family(spec: OperatorSpec, rng: random.Random, terms=3,
                           max_freq=2) -> dict:
    """A random exact-arithmetic family with vanishing k-th order divergence,
    built from antisymmetric pairs: g_a += d^b h, g_b -= d^a h."""
    from .randoms import random_trigpoly

    mis = multiindices(spec.n, spec.k)
    g = {alpha: None for alpha in mis}
    for _ in range(terms):
        ia, ib = rng.sample(range(len(mis)), 2)
        alpha, beta = mis[ia], mis[ib]
        h = random_trigpoly(rng, spec.n, max_freq=max_freq, terms=2)
        da = h.diff_alpha(beta)
        db = h.diff_alpha(alpha)
        g[alpha] = da if g[alpha] is None else g[alpha] + da
        g[beta] = (db.scale(-1) if g[beta] is None else g[beta] + db.scale(-1))
    return {a: fn for a, fn in g.items() if fn is not None and not fn.is_zero()}


# ---- suite runner ------------------------------------------------------------


def default_config() -> dict:
    return {
        "seed": 2024,
        "probes": [
            {"kind": "duality", "n": 2, "k": 1, "q": 1, "trials": 6, "P": 64,
             "lams": [1.0, 0.8, 0.6], "sigma_range": [0.25, 0.4]},
            {"kind": "gn", "n": 2, "k": 1, "ell": 1, "q": 0, "trials": 6,
             "P": 64, "sigma_range": [0.25, 0.4]},
            {"kind": "gn_dilation", "n": 2, "k": 2, "ell": 1,
             "ordering": "diagonal", "q": 0, "P": 128,
             "lams": [1.0, 0.85, 0.7], "sigma_range": [0.15, 0.2]},
            {"kind": "classical_gn", "n": 2, "trials": 4, "P": 64},
            {"kind": "hodge", "n": 2, "k": 2, "ell": 1,
             "ordering": "diagonal", "q": 0, "P": 32},
        ],
    }


def _probe_duality(entry, rng) -> dict:
    n, k, q = entry["n"], entry["k"], entry["q"]
    P = entry.get("P", 64)
    N = n  # duality pairs live on whatever label space; source space here
    ratios = []
    drifts = []
    for _ in range(entry.get("trials", 4)):
        _, F_specs = random_bump_form(rng, n, N, q, P,
                                      sigma_range=tuple(entry["sigma_range"]))
        _, H_specs = random_bump_form(rng, n, N, q, P,
                                      sigma_range=tuple(entry["sigma_range"]))
        study = duality_dilation_study(n, N, q, F_specs, H_specs,
                                       entry.get("lams", [1.0]), P)
        ratios.extend(study["ratios"])
        drifts.append(study["max_drift"])
    return {"kind": "duality", "ratios": ratios, "max_ratio": max(ratios),
            "max_drift": max(drifts)}


def _probe_gn(entry, rng) -> dict:
    spec = spec_for(entry["n"], entry["k"], entry["ell"],
                    kind=entry.get("ordering", "lexicographic"))
    q, P = entry["q"], entry.get("P", 64)
    ratios = []
    for _ in range(entry.get("trials", 4)):
        u, _ = random_bump_form(rng, spec.n, spec.n, q, P,
                                sigma_range=tuple(entry["sigma_range"]))
        ratios.append(gn_ratio(spec, u))
    return {"kind": "gn", "q": q, "ratios": ratios, "max_ratio": max(ratios)}


def _probe_gn_dilation(entry, rng) -> dict:
    spec = spec_for(entry["n"], entry["k"], entry["ell"],
                    kind=entry.get("ordering", "lexicographic"))
    q, P = entry["q"], entry.get("P", 128)
    _, specs = random_bump_form(rng, spec.n, spec.n, q, P,
                                sigma_range=tuple(entry["sigma_range"]),
                                spread=0.8)
    ratios = []
    for lam in entry["lams"]:
        u = bump_form(spec.n, spec.n, q, dilate_form_specs(specs, lam), P)
        ratios.append(gn_ratio(spec, u))
    arr = np.array(ratios)
    drift = float(arr.max() / arr.min() - 1)
    return {"kind": "gn_dilation", "q": q, "lams": entry["lams"],
            "ratios": ratios, "max_drift": drift}


def _probe_classical_gn(entry, rng) -> dict:
    n, P = entry["n"], entry.get("P", 64)
    spec = spec_for(n, 1, 1)
    rows = []
    for _ in range(entry.get("trials", 4)):
        u, _ = random_bump_form(rng, n, n, 0, P, sigma_range=(0.25, 0.4))
        ours = gn_ratio(spec, u)
        theirs = classical_gn_ratio(u.coeffs[()].samples)
        rows.append({"ours": ours, "independent": theirs,
                     "rel_gap": abs(ours - theirs) / theirs})
    return {"kind": "classical_gn", "rows": rows,
            "max_rel_gap": max(r["rel_gap"] for r in rows)}


def _probe_hodge(entry, rng) -> dict:
    spec = spec_for(entry["n"], entry["k"], entry["ell"],
                    kind=entry.get("ordering", "lexicographic"))
    q, P = entry["q"], entry.get("P", 32)
    phi, _ = random_bump_form(rng, spec.n, spec.N, q, P, components=2)
    F = _apply_T_or_zero(spec, phi)
    Z, info = hodge_solve(spec, q, F=F)
    return {"kind": "hodge", "q": q, "P": P,
            "residual_T": info["residual_T"],
            "closedness_F": info["closedness_F"]}


_PROBES = {
    "duality": _probe_duality,
    "gn": _probe_gn,
    "gn_dilation": _probe_gn_dilation,
    "classical_gn": _probe_classical_gn,
    "hodge": _probe_hodge,
}

_REQUIRED_KEYS = {
    "duality": ("n", "k", "q", "sigma_range"),
    "gn": ("n", "k", "ell", "q", "sigma_range"),
    "gn_dilation": ("n", "k", "ell", "q", "sigma_range", "lams"),
    "classical_gn": ("n",),
    "hodge": ("n", "k", "ell", "q"),
}


def run_suite(config: dict) -> dict:
    """Run the configured probe battery; deterministic for a fixed config."""
    seed = config.get("seed", 0)
    results = []
    for i, entry in enumerate(config.get("probes", [])):
        kind = entry.get("kind")
        if kind not in _PROBES:
            raise ValueError(f"unknown probe kind {kind!r}")
        missing = [key for key in _REQUIRED_KEYS[kind] if key not in entry]
        if missing:
            raise ValueError(f"probe {i} ({kind}): missing required "
                             f"keys {missing}")
        rng = random.Random(seed * 10007 + i)
        results.append(_PROBES[kind](entry, rng))
    return {
        "schema": "divcurl.report/1",
        "package_version": __version__,
        "seed": seed,
        "results": results,
    }
