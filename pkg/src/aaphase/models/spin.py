"""Spin-1/2 precessing in a constant magnetic field.

H = -mu*B0*sigma_z, initial state cos(theta/2)|up> + sin(theta/2)|down>.
Energies are reported in units of mu*B0, so the spectrum is {-1, +1}
exactly and gamma = pi*(1 - cos(theta)) follows from the general rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from ..engine import Spectrum, StateDecomposition
from ..oracle import DenseHamiltonian

__all__ = ["SpinHalfParams", "spin_half", "spin_half_dense"]


@dataclass(frozen=True)
class SpinHalfParams:
    mu_B0: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if not self.mu_B0 > 0:
            raise ValueError("mu_B0 must be positive")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")


def _amplitudes(theta: float) -> Tuple[complex, complex]:
    return complex(math.cos(theta / 2)), complex(math.sin(theta / 2))


def spin_half(params: SpinHalfParams) -> Tuple[Spectrum, StateDecomposition]:
    spectrum = Spectrum(
        levels=[("up", Fraction(-1)), ("down", Fraction(1))],
        unit=params.mu_B0)
    up, down = _amplitudes(params.theta)
    entries = [(label, amp) for label, amp in (("up", up), ("down", down))
               if amp != 0]
    return spectrum, StateDecomposition(entries=entries)


def spin_half_dense(params: SpinHalfParams) -> Tuple[DenseHamiltonian, np.ndarray]:
    h = DenseHamiltonian(np.diag([-1.0, 1.0]), unit=params.mu_B0)
    up, down = _amplitudes(params.theta)
    return h, np.array([up, down], dtype=complex)
