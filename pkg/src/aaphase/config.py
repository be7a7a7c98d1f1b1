"""INI-style run configuration for the command-line tools.

A [run] section names the model; a section of the same name holds its
parameters, with field names matching the parameter types.  Rationals
are written "p/q", complex numbers "re+im i", lists of complex numbers
';'-separated.  Decimal spectrum entries are rationalized at the
boundary (denominators up to 1000, tolerance 1e-9); entries that fail
stay floats for raw spectra, so the cyclicality test can reject them
with a physical reason, but are a hard error where exactness is
mandatory (constraint inputs).
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .constraints import PartialSpectrum
from .engine import Spectrum, StateDecomposition
from .models import (
    SpinHalfParams,
    ThreeMirrorParams,
    TwoMirrorParams,
    free_field,
    free_field_coherent,
    free_field_dense,
    spin_half,
    spin_half_dense,
    three_mirror_dense,
    three_mirror_exact,
    three_mirror_initial_state,
    two_mirror_dense,
    two_mirror_spectrum,
)
from .oracle import DenseHamiltonian
from .rational import IncommensurableError, parse_rational, rationalize

__all__ = [
    "ConfigError",
    "LoadedRun",
    "load_config",
    "parse_complex",
    "format_complex",
]

MODELS = ("spin_half", "free_field", "two_mirror", "three_mirror",
          "raw_spectrum", "dense_matrix", "partial_spectrum")

RATIONALIZE_DENOMINATOR = 1000
RATIONALIZE_TOL = 1e-9


class ConfigError(ValueError):
    """Malformed run configuration (usage error, exit code 64)."""


def parse_complex(text: str) -> complex:
    """Parse "re+im i" (also bare reals and "im i")."""
    s = text.strip()
    if not s:
        raise ConfigError("empty complex entry")
    try:
        if s.endswith("i"):
            body = s[:-1].strip()
            for idx in range(len(body) - 1, 0, -1):
                if body[idx] in "+-" and body[idx - 1] not in "eE":
                    return complex(float(body[:idx]), float(body[idx:]))
            return complex(0.0, float(body))
        return complex(float(s), 0.0)
    except ValueError as exc:
        raise ConfigError(f"bad complex entry {text!r}") from exc


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g} i"


def _complex_list(text: str) -> Tuple[complex, ...]:
    items = [piece for piece in text.split(";") if piece.strip()]
    if not items:
        raise ConfigError("empty amplitude list")
    return tuple(parse_complex(piece) for piece in items)


def _exact_value(text: str) -> Fraction:
    """Rational parse with decimal rationalization; floats are an error."""
    s = text.strip()
    try:
        return parse_rational(s)
    except ValueError:
        pass
    try:
        x = float(s)
    except ValueError as exc:
        raise ConfigError(f"bad rational entry {s!r}") from exc
    return rationalize(x, max_denominator=RATIONALIZE_DENOMINATOR,
                       tolerance=RATIONALIZE_TOL)


def _spectrum_value(text: str) -> Union[Fraction, float]:
    """Like _exact_value but incommensurable entries survive as floats."""
    try:
        return _exact_value(text)
    except IncommensurableError:
        return float(text.strip())


@dataclass
class LoadedRun:
    """Everything a command needs, already constructed."""

    model: str
    spectrum: Optional[Spectrum] = None
    state: Optional[StateDecomposition] = None
    dense: Optional[DenseHamiltonian] = None
    psi0: Optional[np.ndarray] = None
    partial: Optional[PartialSpectrum] = None
    trials: Tuple[Fraction, ...] = ()
    mean_energy_input: Union[Fraction, float, None] = None
    options: Dict[str, str] = field(default_factory=dict)

    def option(self, key: str, default, cast):
        raw = self.options.get(key)
        if raw is None:
            return default
        try:
            return cast(raw)
        except ValueError as exc:
            raise ConfigError(f"bad option {key} = {raw!r}") from exc


def _section(cp: configparser.ConfigParser, name: str):
    if not cp.has_section(name):
        raise ConfigError(f"missing [{name}] section")
    return cp[name]


def _get(sec, key: str) -> str:
    if key not in sec:
        raise ConfigError(f"missing key {key!r} in [{sec.name}]")
    return sec[key]


def _load_spin_half(sec) -> LoadedRun:
    params = SpinHalfParams(mu_B0=float(sec.get("mu_B0", "1")),
                            theta=float(_get(sec, "theta")))
    spectrum, state = spin_half(params)
    dense, psi0 = spin_half_dense(params)
    return LoadedRun(model="spin_half", spectrum=spectrum, state=state,
                     dense=dense, psi0=psi0)


def _load_free_field(sec) -> LoadedRun:
    omega = float(sec.get("omega", "1"))
    has_list = "occupied_n" in sec
    if has_list == ("alpha" in sec):
        raise ConfigError(
            "free_field needs either occupied_n+amplitudes or "
            "alpha+truncation")
    if has_list:
        ns = [int(tok) for tok in _get(sec, "occupied_n").split()]
        amps = _complex_list(_get(sec, "amplitudes"))
        if len(ns) != len(amps):
            raise ConfigError("occupied_n and amplitudes differ in length")
        spectrum, state = free_field(omega, ns, amps)
        dim = max(ns) + 1
        psi0 = np.zeros(dim, dtype=complex)
        for n, a in zip(ns, amps):
            psi0[n] = a
        psi0 = psi0 / np.linalg.norm(psi0)
    else:
        alpha = parse_complex(_get(sec, "alpha"))
        truncation = int(sec.get("truncation", "31"))
        spectrum, state = free_field_coherent(omega, alpha, truncation)
        psi0 = np.zeros(truncation, dtype=complex)
        for label, amp in state.entries:
            psi0[int(label)] = amp
        dim = truncation
    return LoadedRun(model="free_field", spectrum=spectrum, state=state,
                     dense=free_field_dense(omega, dim), psi0=psi0)


def _load_two_mirror(sec) -> LoadedRun:
    params = TwoMirrorParams(
        r=_exact_value(_get(sec, "r")),
        k_squared=_exact_value(_get(sec, "k_squared")),
        field_amplitudes=_complex_list(_get(sec, "field_amplitudes")),
        beta=parse_complex(sec.get("beta", "0+0 i")),
        mirror_truncation=int(sec.get("mirror_truncation", "40")),
        omega_m=float(sec.get("omega_m", "1")),
        k_sign=int(sec.get("k_sign", "1")))
    spectrum, state = two_mirror_spectrum(params)
    dense, psi0 = two_mirror_dense(params)
    return LoadedRun(model="two_mirror", spectrum=spectrum, state=state,
                     dense=dense, psi0=psi0)


def _mode_input(sec, key: str):
    raw = sec.get(key, "0+0 i")
    if ";" in raw:
        return _complex_list(raw)
    return parse_complex(raw)


def _ratio(sec, key: str, default: str = "0") -> Union[Fraction, float]:
    raw = sec.get(key, default).strip()
    try:
        return _exact_value(raw)
    except (ConfigError, IncommensurableError):
        return float(raw)


def _load_three_mirror(sec) -> LoadedRun:
    omega_m = float(sec.get("omega_m", "1"))

    def scaled(key: str) -> Union[Fraction, float]:
        value = _ratio(sec, key) if key in sec else Fraction(0)
        unit = _ratio(sec, "omega_m", "1")
        if isinstance(value, Fraction) and isinstance(unit, Fraction):
            return value / unit
        return float(value) / float(unit)

    truncs = tuple(int(tok) for tok in sec.get("truncations", "15 15 25").split())
    params = ThreeMirrorParams(
        rho_D=scaled("omega_D"), rho_S=scaled("omega_S"),
        kappa_D=scaled("C_D"), kappa_S=scaled("C_S"),
        alpha=_mode_input(sec, "alpha"), beta=_mode_input(sec, "beta"),
        mu=_mode_input(sec, "mu"), truncations=truncs, omega_m=omega_m)
    run = LoadedRun(model="three_mirror",
                    dense=three_mirror_dense(params),
                    psi0=three_mirror_initial_state(params))
    if params.exact_family:
        run.spectrum, run.state = three_mirror_exact(params)
    return run


def _load_raw_spectrum(sec) -> LoadedRun:
    values = [_spectrum_value(tok) for tok in _get(sec, "levels").split()]
    if not values:
        raise ConfigError("levels list is empty")
    amps = _complex_list(_get(sec, "amplitudes"))
    if len(amps) != len(values):
        raise ConfigError("levels and amplitudes differ in length")
    unit = float(sec.get("unit", "1"))
    labels = sec.get("labels", "").split() or [str(i) for i in
                                               range(len(values))]
    if len(labels) != len(values):
        raise ConfigError("labels and levels differ in length")
    spectrum = Spectrum(levels=list(zip(labels, values)), unit=unit)
    state = StateDecomposition(
        entries=[(lab, a) for lab, a in zip(labels, amps) if a != 0])
    matrix = np.diag([float(v) for v in values])
    psi0 = np.asarray(amps, dtype=complex)
    psi0 = psi0 / np.linalg.norm(psi0)
    return LoadedRun(model="raw_spectrum", spectrum=spectrum, state=state,
                     dense=DenseHamiltonian(matrix, unit=unit), psi0=psi0)


def _load_dense_matrix(sec) -> LoadedRun:
    dim = int(_get(sec, "dimension"))
    entries = [parse_complex(tok) for tok in _get(sec, "entries").split(",")]
    if len(entries) != dim * dim:
        raise ConfigError(f"expected {dim * dim} matrix entries, "
                          f"got {len(entries)}")
    matrix = np.array(entries, dtype=complex).reshape(dim, dim)
    psi0 = np.array([parse_complex(tok)
                     for tok in _get(sec, "psi0").split(",")], dtype=complex)
    if psi0.size != dim:
        raise ConfigError("psi0 length does not match dimension")
    psi0 = psi0 / np.linalg.norm(psi0)
    unit = float(sec.get("unit", "1"))
    try:
        dense = DenseHamiltonian(matrix, unit=unit)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return LoadedRun(model="dense_matrix", dense=dense, psi0=psi0)


def _load_partial(sec) -> LoadedRun:
    known = [_exact_value(tok) for tok in _get(sec, "known").split()]
    partial = PartialSpectrum(
        known=[(f"L{i + 1}", v) for i, v in enumerate(known)],
        unit=float(sec.get("unit", "1")))
    trials = tuple(_exact_value(tok)
                   for tok in sec.get("trials", "").split())
    mean_raw = sec.get("mean_energy", "").strip()
    mean: Union[Fraction, float, None] = None
    if mean_raw:
        try:
            mean = _exact_value(mean_raw)
        except IncommensurableError:
            mean = float(mean_raw)
    return LoadedRun(model="partial_spectrum", partial=partial,
                     trials=trials, mean_energy_input=mean)


_LOADERS = {
    "spin_half": _load_spin_half,
    "free_field": _load_free_field,
    "two_mirror": _load_two_mirror,
    "three_mirror": _load_three_mirror,
    "raw_spectrum": _load_raw_spectrum,
    "dense_matrix": _load_dense_matrix,
    "partial_spectrum": _load_partial,
}


def load_config(path: str) -> LoadedRun:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",),
                                   interpolation=None)
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    run_sec = _section(cp, "run")
    model = _get(run_sec, "model").strip()
    if model not in MODELS:
        raise ConfigError(f"unknown model {model!r}; "
                          f"expected one of {', '.join(MODELS)}")
    try:
        run = _LOADERS[model](_section(cp, model))
    except IncommensurableError:
        raise
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    if cp.has_section("options"):
        run.options = dict(cp["options"])
    return run
