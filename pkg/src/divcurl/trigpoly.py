"""Exact trigonometric polynomials with rational coefficients.

A TrigPoly is a finite sum  sum_w  a_w cos(w.x) + b_w sin(w.x)  with
integer frequency vectors w and Fraction coefficients.  The class is the
exact backend for forms on the torus [0, 2pi)^n: products use the
product-to-sum identities, derivatives and mean values are exact, and the
normalized mean over the torus is just the constant coefficient.

Terms are kept canonical: the first nonzero entry of a stored frequency
is positive (cos is even, sin is odd) and zero coefficients are dropped.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

COS, SIN = 0, 1

__all__ = ["TrigPoly", "COS", "SIN"]


def _canon(freq, phase, coeff):
    """Normalize (freq, phase, coeff) so the leading nonzero freq entry is
    positive; returns None for terms that are identically zero."""
    if coeff == 0:
        return None
    lead = next((f for f in freq if f != 0), 0)
    if lead == 0:
        if phase == SIN:
            return None  # sin(0) == 0
        return freq, COS, coeff
    if lead < 0:
        freq = tuple(-f for f in freq)
        if phase == SIN:
            coeff = -coeff
    return freq, phase, coeff


class TrigPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for (freq, phase), coeff in (terms or {}).items():
            if len(freq) != n:
                raise ValueError("frequency length does not match dimension")
            c = _canon(tuple(int(f) for f in freq), phase, Fraction(coeff))
            if c is None:
                continue
            freq, phase, coeff = c
            key = (freq, phase)
            coeff = clean.get(key, Fraction(0)) + coeff
            if coeff == 0:
                clean.pop(key, None)
            else:
                clean[key] = coeff
        self.terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def const(cls, n, value):
        return cls(n, {((0,) * n, COS): Fraction(value)})

    @classmethod
    def wave(cls, n, freq, phase=COS, coeff=1):
        return cls(n, {(tuple(freq), phase): Fraction(coeff)})

    # ---- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        merged = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, Fraction(0)) + c
        return TrigPoly(self.n, merged)

    def __neg__(self):
        return TrigPoly(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = Fraction(factor)
        return TrigPoly(self.n, {k: c * factor for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TrigPoly):
            return self.scale(other)
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        half = Fraction(1, 2)
        acc = {}

        def put(freq, phase, coeff):
            c = _canon(freq, phase, coeff)
            if c is None:
                return
            key = (c[0], c[1])
            acc[key] = acc.get(key, Fraction(0)) + c[2]

        for (u, pu), cu in self.terms.items():
            for (v, pv), cv in other.terms.items():
                c = cu * cv * half
                plus = tuple(a + b for a, b in zip(u, v))
                minus = tuple(a - b for a, b in zip(u, v))
                if pu == COS and pv == COS:
                    put(minus, COS, c)
                    put(plus, COS, c)
                elif pu == SIN and pv == SIN:
                    put(minus, COS, c)
                    put(plus, COS, -c)
                elif pu == SIN and pv == COS:
                    put(plus, SIN, c)
                    put(minus, SIN, c)
                else:  # cos * sin
                    put(plus, SIN, c)
                    put(minus, SIN, -c)
        return TrigPoly(self.n, acc)

    __rmul__ = __mul__

    # ---- calculus ------------------------------------------------------

    def diff(self, axis: int) -> "TrigPoly":
        """Exact partial derivative along one axis."""
        out = {}
        for (freq, phase), coeff in self.terms.items():
            w = freq[axis]
            if w == 0:
                continue
            if phase == COS:
                key = (freq, SIN)
                out[key] = out.get(key, Fraction(0)) - coeff * w
            else:
                key = (freq, COS)
                out[key] = out.get(key, Fraction(0)) + coeff * w
        return TrigPoly(self.n, out)

    def diff_alpha(self, alpha) -> "TrigPoly":
        """Mixed partial of multi-index alpha (length n, or longer with
        zeros in the extra slots)."""
        alpha = tuple(alpha)
        if len(alpha) > self.n:
            if any(alpha[self.n:]):
                raise ValueError("derivative slot beyond the variable count")
            alpha = alpha[: self.n]
        cur = self
        for axis, order in enumerate(alpha):
            for _ in range(order):
                cur = cur.diff(axis)
        return cur

    def mean(self) -> Fraction:
        """Mean value over the torus with normalized measure (2pi)^-n."""
        return self.terms.get(((0,) * self.n, COS), Fraction(0))

    # ---- predicates and helpers ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def max_freq(self) -> int:
        return max((max(abs(f) for f in freq) if freq else 0
                    for (freq, _), _ in ((k, v) for k, v in self.terms.items())),
                   default=0)

    def __eq__(self, other):
        return (
            isinstance(other, TrigPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"TrigPoly.zero({self.n})"
        bits = []
        for (freq, phase), coeff in sorted(self.terms.items()):
            fn = "cos" if phase == COS else "sin"
            bits.append(f"{coeff}*{fn}{freq}")
        return " + ".join(bits)

    # ---- sampling -------------------------------------------------------

    def sample(self, P: int) -> np.ndarray:
        """Evaluate on the uniform P^n grid of [0, 2pi)^n.

        Frequencies are folded modulo P into a discrete spectrum and
        inverted with the FFT, which agrees with pointwise evaluation at
        the grid nodes (including any aliasing when P is too small)."""
        spec = np.zeros((P,) * self.n, dtype=complex)
        for (freq, phase), coeff in self.terms.items():
            c = float(coeff)
            idx_p = tuple(f % P for f in freq)
            idx_m = tuple((-f) % P for f in freq)
            if phase == COS:
                spec[idx_p] += 0.5 * c
                spec[idx_m] += 0.5 * c
            else:
                spec[idx_p] += -0.5j * c
                spec[idx_m] += 0.5j * c
        vals = np.fft.ifftn(spec) * (P ** self.n)
        return np.ascontiguousarray(vals.real)

    def eval_at(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at arbitrary points, shape (..., n)."""
        pts = np.asarray(points, dtype=float)
        out = np.zeros(pts.shape[:-1])
        for (freq, phase), coeff in self.terms.items():
            angle = pts @ np.asarray(freq, dtype=float)
            wave = np.cos(angle) if phase == COS else np.sin(angle)
            out += float(coeff) * wave
        return out

    # ---- serialization --------------------------------------------------

    def to_obj(self):
        items = sorted(self.terms.items())
        return {
            "n": self.n,
            "terms": [
                [list(freq), phase, f"{c.numerator}/{c.denominator}"]
                for (freq, phase), c in items
            ],
        }

    @classmethod
    def from_obj(cls, obj):
        terms = {}
        for freq, phase, frac in obj["terms"]:
            num, den = frac.split("/")
            terms[(tuple(freq), phase)] = Fraction(int(num), int(den))
        return cls(obj["n"], terms)
