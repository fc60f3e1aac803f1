"""Survival amplitude f00(t) across the damping regimes.

Shows the weak-coupling exponential law, the slow pole that protects the
particle at strong coupling, and the universal t**-3 branch-cut tail that
both regimes share.
"""

import math

import numpy as np

from dressedbath import (
    OhmicSystemSpec,
    bath_integral_J,
    decay_comparators,
    f00_closed,
    f00_quadrature,
    survival_probability,
)

# weak coupling: ln P(t) ~ -pi*g*t
g = 1.0 / 137
weak = OhmicSystemSpec(bar_omega=1.0, g=g, cavity_L=1.0, light_speed=1.0)
t = np.array([0.5, 1.0, 2.0, 3.0]) / (math.pi * g)
prob = survival_probability(f00_closed(weak, t))
print("weak coupling (beta = 1/137): survival vs golden-rule exponential")
for ti, p, ref in zip(t, prob, decay_comparators(weak, t).weak):
    print(f"  t = {ti:8.2f}  P = {p:.6f}  exp(-pi g t) = {ref:.6f}")

# strong coupling: decay stalls; the particle is dressed, not destroyed
strong = OhmicSystemSpec(bar_omega=1.0, g=10.0, cavity_L=1.0, light_speed=1.0)
t = np.array([1.0, 10.0, 30.0])
prob = survival_probability(f00_closed(strong, t))
print("\nstrong coupling (beta = 10): the slow pole drags the decay out")
for ti, p in zip(t, prob):
    print(f"  t = {ti:5.1f}  P = {p:.3e}")

# closed form vs direct quadrature of the continuum weight
t = np.geomspace(0.05, 20.0, 7)
for beta in (0.3, 3.0):
    s = OhmicSystemSpec(bar_omega=1.0, g=beta, cavity_L=1.0, light_speed=1.0)
    diff = np.abs(f00_closed(s, t).values - f00_quadrature(s, t).values)
    print(f"\nbeta = {beta}: max |closed - quadrature| = {diff.max():.2e}")

# the branch-cut integral settles onto 4g/(bar_omega**4 t**3)
print("\nbranch-cut tail J(t) * t**3 / (4g):")
for beta in (0.1, 0.8):
    s = OhmicSystemSpec(bar_omega=1.0, g=beta, cavity_L=1.0, light_speed=1.0)
    for ti in (50.0, 200.0, 500.0):
        r = bath_integral_J(s, ti) * ti**3 / (4.0 * beta)
        print(f"  beta = {beta}  t = {ti:5.0f}  ratio = {r:.4f}")
