"""Mean position of the particle prepared in a displaced (coherent) state.

With the bath in vacuum and the particle displaced to amplitude
sqrt(n_bar) * exp(-i*theta), the mean position is carried entirely by the
survival amplitude:

    q(t) = sqrt(2*hbar*n_bar/bar_omega) * Re[exp(-i*theta) * f00(t)].

``classical_path`` applies that projection to any precomputed amplitude
series; ``path_closed_forms`` writes it out per damping regime through the
pole terms and the branch-cut integral J(t), which is where the algebraic
structure (damped trig envelope plus a sin(theta)-weighted power-law tail)
is visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import AmplitudeSeries, _j_analytic, _validate_times
from .errors import DimensionMismatch, InputError
from .model import OhmicSystemSpec, RegimeKind, classify_regime

__all__ = ["CoherentPreparation", "classical_path", "path_closed_forms"]


@dataclass(frozen=True)
class CoherentPreparation:
    """Initial displaced state: amplitude sqrt(n_bar), phase angle theta."""

    n_bar: float
    theta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.n_bar) or self.n_bar < 0.0:
            raise InputError(f"n_bar must be a nonnegative number, got {self.n_bar!r}")
        if not math.isfinite(self.theta):
            raise InputError(f"theta must be finite, got {self.theta!r}")


def _scale(spec: OhmicSystemSpec, prep: CoherentPreparation) -> float:
    return math.sqrt(2.0 * spec.hbar * prep.n_bar / spec.bar_omega)


def classical_path(
    spec: OhmicSystemSpec,
    prep: CoherentPreparation,
    times,
    f00_source: AmplitudeSeries,
) -> np.ndarray:
    """Mean position from a precomputed survival-amplitude series.

    The series must have been computed for the same spec and on exactly
    the requested time grid; anything else raises rather than silently
    interpolating.
    """
    t = _validate_times(times)
    if f00_source.spec_snapshot != spec:
        raise InputError("amplitude series was computed for a different spec")
    if not np.array_equal(t, f00_source.times):
        raise DimensionMismatch("amplitude series grid does not match the times")
    phase = np.exp(-1j * prep.theta)
    return _scale(spec, prep) * np.real(phase * f00_source.values)


def path_closed_forms(
    spec: OhmicSystemSpec, prep: CoherentPreparation, times
) -> np.ndarray:
    """Mean position written out per regime.

    Underdamped:
        sqrt(hbar*n_bar/(2*bar_omega)) * ( [2*cos(kappa*t + theta)
            - (pi*g/kappa)*sin(kappa*t + theta)] * e^{-pi*g*t/2}
            + 2*sin(theta)*J(t) )
    Critical and overdamped replace the bracket by twice the cosine-weighted
    pole term.  Identical to classical_path over f00_closed by construction;
    kept separate so the J-free theta = 0 sections stay visible.
    """
    t = _validate_times(times)
    regime = classify_regime(spec)
    a = 0.5 * math.pi * spec.g
    theta = prep.theta
    pos = t > 0.0
    j_vals = np.empty(t.shape)
    if pos.any():
        j_vals[pos] = _j_analytic(spec, t[pos])

    if regime.kind is RegimeKind.UNDERDAMPED:
        kappa = regime.kappa_abs
        j_vals[~pos] = a / kappa
        envelope = (
            2.0 * np.cos(kappa * t + theta)
            - (2.0 * a / kappa) * np.sin(kappa * t + theta)
        ) * np.exp(-a * t)
        bracket = envelope + 2.0 * math.sin(theta) * j_vals
        return math.sqrt(spec.hbar * prep.n_bar / (2.0 * spec.bar_omega)) * bracket

    j_vals[~pos] = 0.0
    if regime.kind is RegimeKind.CRITICAL:
        pole = (1.0 - a * t) * np.exp(-a * t)
    else:
        kabs = regime.kappa_abs
        y_fast = a + kabs
        y_slow = spec.bar_omega**2 / y_fast
        pole = (y_fast * np.exp(-y_fast * t) - y_slow * np.exp(-y_slow * t)) / (
            2.0 * kabs
        )
    return _scale(spec, prep) * (math.cos(theta) * pole + math.sin(theta) * j_vals)
