"""Orthogonal map between bare coordinates and normal modes.

For the finite problem the full (N+1) x (N+1) transform is built from the
normal-mode frequencies alone: column r is

    t_0^r = [1 + sum_k c_k**2/(omega_k**2 - Omega_r**2)**2]**(-1/2) > 0,
    t_k^r = c_k * t_0^r / (omega_k**2 - Omega_r**2),

which is exactly the eigenvector of the potential matrix for eigenvalue
Omega_r**2, normalized and sign-fixed.  The cavity and small-cavity routes
only ever need the particle row (t_0^r)**2, exposed here as weight helpers.

``expansion_coefficient`` gives the overlap of a bare particle Fock level
with a product of normal-mode levels: a square-rooted multinomial times
powers of the particle-row entries.  It is evaluated in log space so large
levels degrade gracefully to zero instead of overflowing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InputError,
    NumericalFailure,
    OverflowGuardError,
    ParameterError,
    SingularityError,
)
from .model import OhmicSystemSpec, derive_parameters
from .spectrum import ModeSource, NormalModeSet, _mode_weights

__all__ = [
    "TransformMatrix",
    "ExpansionCoefficient",
    "finite_matrix",
    "cavity_weight_row",
    "small_L_weights",
    "dressed_from_normal",
    "expansion_coefficient",
]

_ORTHO_TOL = 1e-8
_MAX_PARTICLE_LEVEL = 20
_LOG_LINEAR_LIMIT = 300.0


@dataclass(frozen=True, eq=False)
class TransformMatrix:
    """Square orthogonal transform; rows are bare coordinates, columns modes."""

    entries: np.ndarray
    source: ModeSource

    def __post_init__(self) -> None:
        t = np.asarray(self.entries, dtype=float)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise InputError("transform entries must form a square matrix")
        if not np.all(np.isfinite(t)):
            raise InputError("transform entries must be finite")
        t.setflags(write=False)
        object.__setattr__(self, "entries", t)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])


@dataclass(frozen=True)
class ExpansionCoefficient:
    """Overlap of particle level n0' with a normal-mode occupation pattern."""

    value: float
    particle_level: int
    occupations: tuple


def finite_matrix(spec: OhmicSystemSpec, modes: NormalModeSet) -> TransformMatrix:
    """Full bare-to-normal transform of the finite-N problem.

    Requires a finite-N mode set holding all N+1 frequencies.  Raises
    SingularityError if a normal mode collides with a bath frequency (the
    column formula divides by the gap) and NumericalFailure if the built
    matrix misses orthonormality by more than 1e-8.
    """
    if modes.source is not ModeSource.FINITE_N:
        raise InputError("finite_matrix needs a finite-N mode set")
    n = spec.n_modes
    if modes.n_modes_total != n + 1:
        raise DimensionMismatch(
            f"expected {n + 1} modes for n_modes={n}, got {modes.n_modes_total}"
        )
    d = derive_parameters(spec)
    omega_k = d.delta_omega * np.arange(1, n + 1)
    c_k = d.eta * omega_k
    lam = modes.frequencies**2
    gap = omega_k[:, None] ** 2 - lam[None, :]
    if np.any(np.abs(gap) < 1e-12 * omega_k[:, None] ** 2):
        raise SingularityError("a normal mode coincides with a bath frequency")
    t0 = 1.0 / np.sqrt(1.0 + np.sum((c_k[:, None] / gap) ** 2, axis=0))
    t = np.empty((n + 1, n + 1))
    t[0, :] = t0
    t[1:, :] = c_k[:, None] * t0[None, :] / gap
    gram_err = np.max(np.abs(t.T @ t - np.eye(n + 1)))
    if gram_err > _ORTHO_TOL:
        raise NumericalFailure(
            f"transform columns miss orthonormality by {gram_err:.3e}"
        )
    return TransformMatrix(entries=t, source=ModeSource.FINITE_N)


def cavity_weight_row(spec: OhmicSystemSpec, modes: NormalModeSet) -> np.ndarray:
    """Particle weights (t_0^r)**2 for a cavity mode set.

    Recomputes the closed-form weight at each mode frequency; useful as an
    independent audit of the weights a solver attached to the set.
    """
    if modes.source is not ModeSource.CAVITY_CLOSED_FORM:
        raise InputError("cavity_weight_row needs a cavity mode set")
    d = derive_parameters(spec)
    return _mode_weights(d, spec.bar_omega**2, spec.g, modes.frequencies)


def small_L_weights(spec: OhmicSystemSpec, regime: str, k_max: int):
    """Leading small-cavity weights (w0, [w1..w_kmax]).

    The lowest mode keeps almost all of the particle: w0 = 1 - pi*delta in
    the weak-coupling regime, w0 = 1/(1 + pi*delta/2) in the strong one.
    Every ladder mode k carries w_k = 2*delta/(pi*k**2) in both regimes.
    Warns once delta passes 0.05, where the dropped delta**2 terms reach
    the percent scale.
    """
    if regime not in ("weak", "strong"):
        raise InputError(f"regime must be 'weak' or 'strong', got {regime!r}")
    if not isinstance(k_max, int) or k_max < 1:
        raise InputError(f"k_max must be a positive integer, got {k_max!r}")
    delta = derive_parameters(spec).delta
    if delta > 0.05:
        warnings.warn(
            f"delta = {delta:.6g} > 0.05: first-order cavity weights are "
            "only indicative here",
            stacklevel=2,
        )
    if regime == "weak":
        w0 = 1.0 - math.pi * delta
        if w0 <= 0.0:
            raise ParameterError(
                f"weak-regime weight 1 - pi*delta is not positive at delta = {delta:.6g}"
            )
    else:
        w0 = 1.0 / (1.0 + 0.5 * math.pi * delta)
    k = np.arange(1, k_max + 1, dtype=float)
    return w0, 2.0 * delta / (math.pi * k**2)


def dressed_from_normal(
    normal_amplitudes,
    matrix: TransformMatrix,
    modes: NormalModeSet,
    spec: OhmicSystemSpec,
) -> np.ndarray:
    """Map normal-mode amplitudes Q_r to bare-coordinate amplitudes.

    The dressed coordinate of bare oscillator mu is
    q_mu = (1/sqrt(w_mu)) * sum_r t_mu^r * sqrt(Omega_r) * Q_r with
    w_mu the bare frequency ladder [bar_omega, omega_1..omega_N]; the
    square roots make the map unitary on the oscillator ground-state
    widths rather than on raw coordinates.
    """
    q = np.asarray(normal_amplitudes, dtype=float)
    n = spec.n_modes
    if matrix.dim != n + 1 or modes.n_modes_total != n + 1 or q.shape != (n + 1,):
        raise DimensionMismatch(
            "matrix, modes and amplitudes must all describe n_modes + 1 oscillators"
        )
    d = derive_parameters(spec)
    bare = np.concatenate(([spec.bar_omega], d.delta_omega * np.arange(1, n + 1)))
    return (matrix.entries @ (np.sqrt(modes.frequencies) * q)) / np.sqrt(bare)


def expansion_coefficient(n0_prime: int, occupations, t0_row) -> ExpansionCoefficient:
    """Overlap of bare particle level n0' with normal-mode levels n_r.

    Value: sqrt(n0'! / prod n_r!) * prod (t_0^r)**n_r when sum n_r = n0',
    zero otherwise.  The magnitude is classified in log space: below
    e**-300 returns exactly 0.0 (documented underflow), above e**300
    raises, and particle levels above 20 are refused outright because the
    factorial route stops being meaningful in double precision there.
    In-range values are then evaluated through the exact integer
    multinomial so exhaustive normalization sums hold to ~1e-15.
    """
    if not isinstance(n0_prime, int) or n0_prime < 0:
        raise InputError(f"n0_prime must be a nonnegative integer, got {n0_prime!r}")
    if n0_prime > _MAX_PARTICLE_LEVEL:
        raise OverflowGuardError(
            f"particle level {n0_prime} exceeds the factorial guard "
            f"({_MAX_PARTICLE_LEVEL})"
        )
    occ = tuple(int(n) for n in occupations)
    if any(n < 0 for n in occ):
        raise InputError("occupations must be nonnegative integers")
    row = np.asarray(t0_row, dtype=float)
    if row.ndim != 1 or len(occ) > row.size:
        raise DimensionMismatch("need one particle-row entry per occupation")
    if np.any(row < 0.0):
        raise InputError("particle-row entries must be sign-fixed nonnegative")
    if sum(occ) != n0_prime:
        return ExpansionCoefficient(0.0, n0_prime, occ)
    log_mag = 0.5 * math.lgamma(n0_prime + 1)
    for n_r, t_r in zip(occ, row):
        if n_r == 0:
            continue
        if t_r == 0.0:
            return ExpansionCoefficient(0.0, n0_prime, occ)
        log_mag += -0.5 * math.lgamma(n_r + 1) + n_r * math.log(t_r)
    if log_mag <= -_LOG_LINEAR_LIMIT:
        return ExpansionCoefficient(0.0, n0_prime, occ)
    if log_mag >= _LOG_LINEAR_LIMIT:
        raise OverflowGuardError("expansion coefficient left the linear-scale window")
    multinomial = math.factorial(n0_prime)
    for n_r in occ:
        multinomial //= math.factorial(n_r)
    value = math.sqrt(float(multinomial))
    for n_r, t_r in zip(occ, row):
        if n_r:
            value *= t_r**n_r
    return ExpansionCoefficient(value, n0_prime, occ)
