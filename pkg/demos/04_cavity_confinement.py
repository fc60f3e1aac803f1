"""How small a cavity keeps a dressed particle from decaying.

A finite cavity discretizes the bath.  When the mode spacing beats the
coupling width, the survival probability stops decaying and just beats;
the worst-case bound over all times is an explicit polynomial in
delta = L*g/(2c), and in the strong-coupling regime that bound crosses
zero at a largest admissible cavity size.
"""

import math

import numpy as np

from dressedbath import (
    OhmicSystemSpec,
    cavity_min_bound,
    cavity_survival_series,
    derive_parameters,
    solve_cavity_spectrum,
    solve_delta_max,
)
from dressedbath.model import LIGHT_SPEED_SI

beta = 1.0 / 137
spec = OhmicSystemSpec.from_dimensionless(beta=beta, delta=0.005)
modes = solve_cavity_spectrum(spec, k_max=4000, variant="rederived")
d = derive_parameters(spec)
print(f"weak coupling, delta = {d.delta}: ladder spacing "
      f"{d.delta_omega:.3f} vs coupling width {math.pi * spec.g:.5f}")
print(f"lowest cavity mode sits at {modes.frequencies[0]:.6f} bar_omega")

period = 2.0 * math.pi / d.delta_omega
t = np.linspace(0.0, 3.0 * period, 2500)
curve = cavity_survival_series((modes.weights[0], modes.weights[1:]),
                               modes.frequencies, t)
bound = cavity_min_bound(d.delta, "weak")
print(f"survival over three beats: min {curve.min():.6f} "
      f"(analytic worst case {bound.min_probability:.6f})")

print("\nworst-case bound vs cavity size (weak regime):")
for delta in (0.001, 0.005, 0.02, 0.1):
    b = cavity_min_bound(delta, "weak")
    print(f"  delta = {delta:5}  bound = {b.min_probability:.4f}")

# strong coupling tolerates only cavities below delta_max
delta_max = solve_delta_max("strong")
print(f"\nstrong regime cutoff: delta_max = {delta_max:.6f}")
for bar_omega, name in ((2e10, "microwave"), (4e14, "red visible")):
    g = 10.0 * bar_omega
    L = 2.0 * LIGHT_SPEED_SI * delta_max / g
    print(f"  {name:12} bar_omega = {bar_omega:.0e}  ->  L_max = {L:.3e} m")

for delta in (0.1, 0.3, 0.5):
    b = cavity_min_bound(delta, "strong")
    tag = "unphysical" if b.unphysical else "ok"
    print(f"  delta = {delta}  strong bound = {b.min_probability:+.4f}  [{tag}]")
