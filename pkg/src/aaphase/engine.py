"""Period, total phase, and geometric phase from an exact spectrum.

The closed-form route: with the occupied eigenvalues known exactly, the
period is 2*pi*hbar times the LCM of the inverse level spacings, the total
phase follows from any one occupied level via its branch integer, and the
geometric phase is the total phase plus the winding of the mean energy.

Eigenvalues are `fractions.Fraction` in units of ``Spectrum.unit``.  A
float eigenvalue marks a failed rationalization and is tolerated only
when at most two distinct values are occupied (two-level evolutions are
cyclic regardless of commensurability); with three or more distinct
values a float renders the state non-cyclic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Tuple, Union

from .rational import lcm_rationals

__all__ = [
    "Cyclicality",
    "NonCyclicError",
    "PhaseReport",
    "Spectrum",
    "StateDecomposition",
    "check_cyclicality",
    "gamma_from_single_eigenvalue_phi",
    "gamma_from_single_eigenvalue_tau",
    "gauge_shift",
    "geometric_phase",
    "mean_energy",
    "period",
    "total_phase",
]

TWO_PI = 2.0 * math.pi

Value = Union[Fraction, float]
NORMALIZATION_TOL = 1e-12


class NonCyclicError(ValueError):
    """The state does not undergo cyclic motion under this spectrum."""


def _coerce_value(v) -> Value:
    """Fractions (and ints/strings) stay exact; bare floats stay floats."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    return Fraction(v)


@dataclass(frozen=True)
class Spectrum:
    """Occupied-or-not eigenvalue table: (label, value) pairs in `unit`.

    Labels are unique; values may repeat (degeneracy allowed).
    """

    levels: Tuple[Tuple[str, Value], ...]
    unit: float = 1.0

    def __init__(self, levels, unit: float = 1.0):
        lv = tuple((str(lab), _coerce_value(val)) for lab, val in levels)
        if not lv:
            raise ValueError("spectrum needs at least one level")
        labels = [lab for lab, _ in lv]
        if len(set(labels)) != len(labels):
            raise ValueError("spectrum labels must be unique")
        if not unit > 0:
            raise ValueError("unit must be positive")
        object.__setattr__(self, "levels", lv)
        object.__setattr__(self, "unit", float(unit))

    def value(self, label: str) -> Value:
        for lab, val in self.levels:
            if lab == label:
                return val
        raise KeyError(label)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(lab for lab, _ in self.levels)


@dataclass(frozen=True)
class StateDecomposition:
    """Complex amplitudes of the state over spectrum labels.

    Zero-amplitude entries are rejected so the entry list IS the occupied
    set; total weight must be 1 within 1e-12.
    """

    entries: Tuple[Tuple[str, complex], ...]

    def __init__(self, entries):
        ent = tuple((str(lab), complex(a)) for lab, a in entries)
        if not ent:
            raise ValueError("state needs at least one entry")
        labels = [lab for lab, _ in ent]
        if len(set(labels)) != len(labels):
            raise ValueError("state labels must be unique")
        if any(a == 0 for _, a in ent):
            raise ValueError("zero-amplitude entries must be absent")
        total = math.fsum(abs(a) ** 2 for _, a in ent)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"state not normalized: sum |a|^2 = {total!r}")
        object.__setattr__(self, "entries", ent)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(lab for lab, _ in self.entries)

    def weights(self) -> dict[str, float]:
        return {lab: abs(a) ** 2 for lab, a in self.entries}


@dataclass(frozen=True)
class Cyclicality:
    kind: str  # "cyclic" | "stationary" | "non-cyclic"
    reason: Union[str, None] = None

    def __str__(self) -> str:
        return self.kind if self.reason is None else f"{self.kind}({self.reason})"


@dataclass(frozen=True)
class PhaseReport:
    """(tau, phi, gamma) with branch integers and method provenance.

    ``tau_cycles`` is tau in units of 2*pi*hbar/unit (exact when the
    spectrum is exact, float on the two-level irrational path, None when
    only the oracle produced the report).  ``phi_over_pi`` is the
    canonical total phase in pi units, exact when available.  ``phi`` is
    in (-pi, pi], ``gamma`` in [0, 2*pi).
    """

    method: str
    unit: float
    tau_cycles: Union[Fraction, float, None]
    tau: float
    phi_over_pi: Union[Fraction, None]
    phi: float
    gamma: float
    mean_energy: float
    branch_integers: Mapping[str, int] = field(default_factory=dict)
    stationary: bool = False
    fidelity: Union[float, None] = None


def _occupied(spectrum: Spectrum, state: StateDecomposition):
    """(label, value, weight) triples; errors on labels missing from the spectrum."""
    table = dict(spectrum.levels)
    out = []
    for lab, amp in state.entries:
        if lab not in table:
            raise ValueError(f"state/spectrum mismatch: unknown label {lab!r}")
        out.append((lab, table[lab], abs(amp) ** 2))
    return out


def _distinct_values(occ) -> list[Value]:
    vals: list[Value] = []
    for _, v, _ in occ:
        if not any(v == u for u in vals):
            vals.append(v)
    return vals


def check_cyclicality(spectrum: Spectrum, state: StateDecomposition) -> Cyclicality:
    """Classify the motion: stationary, cyclic, or non-cyclic(reason).

    All occupied eigenvalues equal -> stationary (the loop is a point).
    Exactly two distinct occupied values -> always cyclic, even when the
    values are irrational.  Three or more distinct values are cyclic only
    when all are exact rationals; any float (= failed rationalization)
    makes the spacings incommensurable.
    """
    occ = _occupied(spectrum, state)
    distinct = _distinct_values(occ)
    if len(distinct) == 1:
        return Cyclicality("stationary")
    if len(distinct) == 2:
        return Cyclicality("cyclic")
    if any(isinstance(v, float) for v in distinct):
        return Cyclicality("non-cyclic", "incommensurable")
    return Cyclicality("cyclic")


def _require_cyclic(spectrum: Spectrum, state: StateDecomposition):
    verdict = check_cyclicality(spectrum, state)
    if verdict.kind == "non-cyclic":
        raise NonCyclicError(f"non-cyclic state: {verdict.reason}")
    return verdict


def _exact_branch_data(distinct: Sequence[Fraction]):
    """(L, phi_over_2pi, {value: n}) for an all-rational occupied set.

    L is the LCM of inverse absolute spacings.  The canonical branch puts
    phi/(2*pi) = n - lambda*L in (-1/2, 1/2], the same value for every
    occupied lambda (their differences lambda_k*L - lambda_i*L are
    integers by construction of L); this is asserted, not assumed.
    """
    spacings = [a - b for i, a in enumerate(distinct) for b in distinct[i + 1:]]
    L = lcm_rationals([1 / s for s in spacings])
    g_ref = distinct[0] * L
    n_ref = math.floor(g_ref + Fraction(1, 2))
    phi_over_2pi = n_ref - g_ref  # in (-1/2, 1/2]
    branch: dict[Fraction, int] = {}
    for v in distinct:
        n_v = v * L + phi_over_2pi
        if n_v.denominator != 1:
            raise AssertionError(
                "internal consistency: branch integer is not an integer "
                f"for eigenvalue {v} (got {n_v})")
        branch[v] = int(n_v)
    return L, phi_over_2pi, branch


def _two_level_float_data(distinct: Sequence[Value]):
    """Float analogue of `_exact_branch_data` for two irrational levels."""
    v0, v1 = float(distinct[0]), float(distinct[1])
    L = 1.0 / abs(v1 - v0)
    g0 = v0 * L
    n0 = math.floor(g0 + 0.5)
    phi_over_2pi = n0 - g0
    branch = {}
    for v in distinct:
        branch[v] = round(float(v) * L + phi_over_2pi)
    return L, phi_over_2pi, branch


def _phase_data(spectrum: Spectrum, state: StateDecomposition):
    """Shared exact/two-level machinery behind period/total_phase/gamma."""
    occ = _occupied(spectrum, state)
    distinct = _distinct_values(occ)
    if len(distinct) == 1:
        raise NonCyclicError("stationary state: no spacing set")
    if all(isinstance(v, Fraction) for v in distinct):
        L, phi2pi, branch = _exact_branch_data(distinct)
    elif len(distinct) == 2:
        L, phi2pi, branch = _two_level_float_data(distinct)
    else:
        raise NonCyclicError("non-cyclic state: incommensurable")
    return occ, distinct, L, phi2pi, branch


def _stationary_report(spectrum: Spectrum, state: StateDecomposition,
                       hbar: float) -> PhaseReport:
    occ = _occupied(spectrum, state)
    lam = occ[0][1]
    if lam == 0:
        # Globally stationary: no phase winds at all, so no finite period
        # exists, but the loop-is-a-point convention gamma = 0 still applies.
        tau_cycles: Union[Fraction, float] = math.inf
        tau = math.inf
        n = 0
    else:
        tau_cycles = (1 / abs(lam)) if isinstance(lam, Fraction) else 1.0 / abs(lam)
        tau = TWO_PI * hbar * float(tau_cycles) / spectrum.unit
        n = 1 if lam > 0 else -1
    e_mean = mean_energy(spectrum, state)
    return PhaseReport(
        method="full-spectrum", unit=spectrum.unit,
        tau_cycles=tau_cycles, tau=tau,
        phi_over_pi=Fraction(0) if isinstance(lam, Fraction) else None, phi=0.0,
        gamma=0.0, mean_energy=e_mean,
        branch_integers={lab: n for lab, _, _ in occ},
        stationary=True)


def period(spectrum: Spectrum, state: StateDecomposition, *,
           hbar: float = 1.0) -> Union[Fraction, float]:
    """Period of the cyclic motion, in units of 2*pi*hbar/unit.

    Cyclic states: the LCM of inverse occupied spacings (exact Fraction
    when the spectrum is exact; float on the irrational two-level path).
    Stationary states: 1/|lambda| per the single-exponential special
    case; a zero eigenvalue has no finite period.
    """
    verdict = _require_cyclic(spectrum, state)
    if verdict.kind == "stationary":
        lam = _occupied(spectrum, state)[0][1]
        if lam == 0:
            raise NonCyclicError(
                "no finite period: the single occupied eigenvalue is zero")
        return (1 / abs(lam)) if isinstance(lam, Fraction) else 1.0 / abs(lam)
    _, _, L, _, _ = _phase_data(spectrum, state)
    return L


def total_phase(spectrum: Spectrum, state: StateDecomposition):
    """(phi_over_pi, branch_integers) on the canonical branch phi in (-pi, pi].

    phi = 2*pi*(n_lambda - lambda*L) for every occupied lambda; the branch
    integers n_lambda are recorded per label.  With 0 occupied, phi is 0
    (the 2*pi of the zero-eigenvalue rule, reduced to the canonical
    branch).  With more than two distinct eigenvalues phi/pi is asserted
    rational, exactly.
    """
    verdict = _require_cyclic(spectrum, state)
    if verdict.kind == "stationary":
        occ = _occupied(spectrum, state)
        lam = occ[0][1]
        n = 1 if lam > 0 else (-1 if lam < 0 else 0)
        return Fraction(0), {lab: n for lab, _, _ in occ}
    occ, distinct, L, phi2pi, branch = _phase_data(spectrum, state)
    exact = isinstance(L, Fraction)
    if len(distinct) > 2 and not exact:
        raise AssertionError("rationality of phi/pi violated")  # unreachable
    phi_over_pi = 2 * phi2pi if exact else None
    branch_by_label = {lab: branch[val] for lab, val, _ in occ}
    return (phi_over_pi if exact else float(2 * phi2pi)), branch_by_label


def mean_energy(spectrum, state) -> float:
    """<H> in energy units, from either input form.

    (Spectrum, StateDecomposition) evaluates sum of |c_k|^2 lambda_k;
    a dense Hermitian matrix object paired with a state vector is passed
    through to the brute-force expectation.
    """
    if hasattr(spectrum, "matrix"):
        from .oracle import expectation
        return expectation(spectrum, state)
    occ = _occupied(spectrum, state)
    return spectrum.unit * math.fsum(w * float(v) for _, v, w in occ)


def _canonical_gamma(total: float) -> float:
    """Reduce a phase to [0, 2*pi)."""
    g = math.fmod(total, TWO_PI)
    if g < 0:
        g += TWO_PI
    # Roundoff can leave g a few ulp below 2*pi when the true value is 0
    # (and the negative-input shift can land exactly on 2*pi); fold the
    # sliver back.  1e-14 rad is below every tolerance in use.
    if g >= TWO_PI - 1e-14:
        g = 0.0
    return g


def geometric_phase(spectrum: Spectrum, state: StateDecomposition, *,
                    hbar: float = 1.0) -> PhaseReport:
    """Full closed-form report: gamma = phi + (tau/hbar)<H>, reduced to [0, 2*pi).

    The reduction happens before leaving rational-weighted arithmetic:
    gamma/(2*pi) = sum_k w_k n_k + (phi/2*pi)(sum_k w_k - 1) modulo 1,
    which keeps float magnitudes at the size of the branch integers
    instead of tau*<H>.  Stationary states report gamma = 0 with the
    `stationary` flag set.
    """
    verdict = _require_cyclic(spectrum, state)
    if verdict.kind == "stationary":
        return _stationary_report(spectrum, state, hbar)
    occ, distinct, L, phi2pi, branch = _phase_data(spectrum, state)
    exact = isinstance(L, Fraction)

    total_weight = math.fsum(w for _, _, w in occ)
    phi2pi_f = float(phi2pi)
    # Weights are renormalized so the 1e-12 normalization slack cannot be
    # amplified by large branch integers; summing w*(n - n_min) keeps the
    # float magnitudes at the spread of the branch integers, and the
    # integer n_min drops out of the mod-1 reduction.
    n_min = min(branch.values())
    acc = math.fsum((w / total_weight) * (branch[val] - n_min) for _, val, w in occ)
    gamma = _canonical_gamma(TWO_PI * (acc - math.floor(acc)))

    e_mean = mean_energy(spectrum, state)
    tau = TWO_PI * hbar * float(L) / spectrum.unit
    return PhaseReport(
        method="full-spectrum", unit=spectrum.unit,
        tau_cycles=L, tau=tau,
        phi_over_pi=(2 * phi2pi) if exact else None,
        phi=TWO_PI * phi2pi_f,
        gamma=gamma, mean_energy=e_mean,
        branch_integers={lab: branch[val] for lab, val, _ in occ},
        stationary=False)


def gauge_shift(spectrum: Spectrum, c: Union[Fraction, int, float]) -> Spectrum:
    """Shift every eigenvalue by c (same unit); labels preserved.

    Adding a multiple of the identity to H moves the spectrum's origin
    and the total phase but not the geometric phase.
    """
    if isinstance(c, float) and not isinstance(c, int):
        shift: Value = c
    else:
        shift = Fraction(c)
    new_levels = []
    for lab, val in spectrum.levels:
        if isinstance(val, Fraction) and isinstance(shift, Fraction):
            new_levels.append((lab, val + shift))
        else:
            new_levels.append((lab, float(val) + float(shift)))
    return Spectrum(new_levels, unit=spectrum.unit)


def mean_energy_rational(spectrum: Spectrum,
                         weights: Mapping[str, Fraction]) -> Fraction:
    """Exact <H>/unit from exact weights over exact eigenvalues.

    For fixtures whose amplitude moduli square to exact rationals; the
    float route `mean_energy` is the general-purpose one.
    """
    total = Fraction(0)
    table = dict(spectrum.levels)
    for lab, w in weights.items():
        val = table[lab]
        if not isinstance(val, Fraction):
            raise ValueError("exact mean energy needs an exact spectrum")
        total += Fraction(w) * val
    return total


def branch_matched_phi_over_pi(phi_over_pi: Union[Fraction, float],
                               branch_n: int) -> Union[Fraction, float]:
    """Total phase re-expressed on one level's own branch, in pi units.

    The single-eigenvalue gamma route from phi holds only where
    lambda*tau/hbar = -phi exactly; the canonical representative differs
    from that by 2*pi*n_lambda.  Feed it phi and the level's branch
    integer (both straight from ``total_phase``) and pass the result on.
    """
    return phi_over_pi - 2 * branch_n


def gamma_from_single_eigenvalue_phi(lam: Union[Fraction, float],
                                     mean_H: Union[Fraction, float],
                                     phi: Union[float, None] = None, *,
                                     phi_over_pi: Union[Fraction, None] = None
                                     ) -> float:
    """gamma from one nonzero eigenvalue and an externally known total phase.

    gamma = phi * (1 - <H>/lambda) mod 2*pi, valid on the branch where
    lambda*tau/hbar = -phi exactly; feed the branch-matched phi
    (phi_canonical - 2*pi*n_lambda), not an arbitrary representative.
    lambda and <H> share one energy unit.  Pass the phase either as
    ``phi`` in radians or as ``phi_over_pi`` (exact, in pi units); with
    ``phi_over_pi`` and exact lam/mean_H the mod-2*pi reduction happens in
    rational arithmetic.
    """
    if (phi is None) == (phi_over_pi is None):
        raise ValueError("pass exactly one of phi, phi_over_pi")
    if lam == 0:
        raise ValueError("zero eigenvalue carries no period information: "
                         "phi is already 0 mod 2*pi; use a nonzero eigenvalue")
    if phi_over_pi is not None:
        a = Fraction(phi_over_pi)
        if isinstance(lam, Fraction) and isinstance(mean_H, Fraction):
            return _canonical_gamma(math.pi * float((a * (1 - mean_H / lam)) % 2))
        # a mod 2 first: keeps the float product small when the branch
        # integer inside a is large.
        k, b = divmod(a, 2)
        u = 1.0 - float(mean_H) / float(lam)
        total = 2.0 * math.fmod(int(k) * u, 1.0) + float(b) * u
        return _canonical_gamma(math.pi * math.fmod(total, 2.0))
    return _canonical_gamma(float(phi) * (1.0 - float(mean_H) / float(lam)))


def gamma_from_single_eigenvalue_tau(lam: Union[Fraction, float],
                                     mean_H: Union[Fraction, float],
                                     tau: Union[float, None] = None, *,
                                     tau_cycles: Union[Fraction, None] = None,
                                     hbar: float = 1.0) -> float:
    """gamma from one eigenvalue and an externally known period.

    gamma = (tau/hbar)(<H> - lambda) mod 2*pi.  lambda and <H> share one
    energy unit.  Pass the period either as ``tau`` in time units
    consistent with hbar, or as ``tau_cycles`` (exact, in 2*pi*hbar/unit
    units); with ``tau_cycles`` and exact lam/mean_H the reduction happens
    in rational arithmetic.
    """
    if (tau is None) == (tau_cycles is None):
        raise ValueError("pass exactly one of tau, tau_cycles")
    if tau_cycles is not None:
        tc = Fraction(tau_cycles)
        if tc <= 0:
            raise ValueError("tau must be positive")
        if isinstance(lam, Fraction) and isinstance(mean_H, Fraction):
            return _canonical_gamma(TWO_PI * float(((mean_H - lam) * tc) % 1))
        return _canonical_gamma(TWO_PI * math.fmod(
            (float(mean_H) - float(lam)) * float(tc), 1.0))
    if not float(tau) > 0:
        raise ValueError("tau must be positive")
    return _canonical_gamma(float(tau) * (float(mean_H) - float(lam)) / hbar)
