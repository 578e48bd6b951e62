"""Closed-form amplitude solutions used as ground truth for the propagators.

With lambda_b = sqrt(2) lambda_a and the system prepared in basis state 1,
the Schroedinger dynamics of both models is solvable in closed form. Writing
s = sqrt(2) lam t for the slow phase and f = sqrt(1 + nu^2/lam^2) * s for
the fast one, the exact-model amplitudes are

    d1 = [cos s + 1]/2 + lam^2/(2 (lam^2+nu^2)) [cos f - 1]
    d2 = d6 = -(i / (2 sqrt 2)) [sin s + lam/sqrt(lam^2+nu^2) sin f]
    d3 = d7 = lam nu / (2 (lam^2+nu^2)) [cos f - 1]
    d4 = d8 = +(i / (2 sqrt 2)) [sin s - lam/sqrt(lam^2+nu^2) sin f]
    d5 = d9 = [nu^2 + lam^2 cos f - (lam^2+nu^2) cos s] / (2 sqrt 2 (lam^2+nu^2))

and the effective-model amplitudes are

    d1 = (1 + cos s)/2,  d2 = d3 = -i sin(s)/2,  d4 = d5 = (1 - cos s)/(2 sqrt 2).

d1, d3, d5 are real and d2, d4 purely imaginary; the two polarization
branches carry identical amplitudes. Both families conserve probability:
|d1|^2 + 2(|d2|^2 + |d3|^2 + |d4|^2 + |d5|^2) = 1 exactly.

When sqrt(1 + nu^2/lam^2) is an even integer n and s is an odd multiple of
pi, every amplitude except d5 = d9 = 1/sqrt(2) vanishes and the atoms reach
the maximally entangled target state. entanglement_time and resonance_ratio
return those special times and coupling ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DIM, DIM_EFFECTIVE, SQRT2


@dataclass(frozen=True)
class ExactAmplitudes:
    """The nine single-excitation amplitudes of the exact model at one time."""

    d1: complex
    d2: complex
    d3: complex
    d4: complex
    d5: complex
    d6: complex
    d7: complex
    d8: complex
    d9: complex

    def as_vector(self) -> np.ndarray:
        """Full 11-component state vector (sink amplitudes identically zero)."""
        psi = np.zeros(DIM, dtype=complex)
        psi[:9] = [self.d1, self.d2, self.d3, self.d4, self.d5,
                   self.d6, self.d7, self.d8, self.d9]
        return psi

    def norm_identity_deviation(self) -> float:
        total = abs(self.d1) ** 2 + 2.0 * (
            abs(self.d2) ** 2 + abs(self.d3) ** 2 + abs(self.d4) ** 2 + abs(self.d5) ** 2
        )
        return abs(total - 1.0)


@dataclass(frozen=True)
class EffectiveAmplitudes:
    """The five amplitudes of the effective normal-mode model at one time."""

    d1: complex
    d2: complex
    d3: complex
    d4: complex
    d5: complex

    def as_vector(self) -> np.ndarray:
        return np.array([self.d1, self.d2, self.d3, self.d4, self.d5], dtype=complex)

    def norm_identity_deviation(self) -> float:
        total = abs(self.d1) ** 2 + 2.0 * abs(self.d2) ** 2 + 2.0 * abs(self.d4) ** 2
        return abs(total - 1.0)


def exact_amplitudes(lam: float, nu: float, t: float) -> ExactAmplitudes:
    """Closed-form exact-model amplitudes at time t (lam > 0, nu >= 0, t >= 0)."""
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    if nu < 0.0 or t < 0.0:
        raise ValueError("nu and t must be nonnegative")
    l2 = lam * lam + nu * nu
    ratio = math.sqrt(1.0 + (nu / lam) ** 2)
    s = SQRT2 * lam * t
    cos_s, sin_s = math.cos(s), math.sin(s)
    cos_f, sin_f = math.cos(ratio * s), math.sin(ratio * s)

    d1 = 0.5 * (cos_s + 1.0) + (lam * lam / (2.0 * l2)) * (cos_f - 1.0)
    d2 = -1j / (2.0 * SQRT2) * (sin_s + (lam / math.sqrt(l2)) * sin_f)
    d3 = (lam * nu / (2.0 * l2)) * (cos_f - 1.0)
    d4 = 1j / (2.0 * SQRT2) * (sin_s - (lam / math.sqrt(l2)) * sin_f)
    d5 = (nu * nu + lam * lam * cos_f - l2 * cos_s) / (2.0 * SQRT2 * l2)
    return ExactAmplitudes(d1, d2, d3, d4, d5, d2, d3, d4, d5)


def effective_amplitudes(lam: float, t: float) -> EffectiveAmplitudes:
    """Closed-form effective-model amplitudes at time t."""
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    s = SQRT2 * lam * t
    d1 = 0.5 * (1.0 + math.cos(s))
    d2 = -0.5j * math.sin(s)
    d4 = (1.0 - math.cos(s)) / (2.0 * SQRT2)
    return EffectiveAmplitudes(d1, d2, d2, d4, d4)


def entanglement_time(lam: float, m: int = 1) -> float:
    """First (m=1) or later odd-multiple times m pi / (sqrt 2 lam) of full transfer."""
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    if not isinstance(m, int) or m <= 0 or m % 2 == 0:
        raise ValueError("m must be a positive odd integer")
    return m * math.pi / (SQRT2 * lam)


def resonance_ratio(n: int) -> float:
    """Coupling ratio nu/lam = sqrt(n^2 - 1) that makes the fast phase commensurate.

    n must be a positive even integer; even n makes the fast oscillation
    return to its starting value at the entanglement times, closing every
    photonic amplitude simultaneously.
    """
    if not isinstance(n, int) or n <= 0 or n % 2 != 0:
        raise ValueError("n must be a positive even integer")
    return math.sqrt(float(n * n - 1))


__all__ = [
    "ExactAmplitudes",
    "EffectiveAmplitudes",
    "exact_amplitudes",
    "effective_amplitudes",
    "entanglement_time",
    "resonance_ratio",
    "DIM",
    "DIM_EFFECTIVE",
]
