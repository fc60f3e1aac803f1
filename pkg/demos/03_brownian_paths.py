"""Mean position of a displaced particle relaxing into the vacuum bath."""

import math

import numpy as np

from dressedbath import CoherentPreparation, OhmicSystemSpec, path_closed_forms

spec = OhmicSystemSpec(bar_omega=1.0, g=0.3, cavity_L=1.0, light_speed=1.0)

# theta = 0: textbook damped cosine, envelope rate pi*g/2
t = np.linspace(0.0, 25.0, 11)
q = path_closed_forms(spec, CoherentPreparation(n_bar=1.0, theta=0.0), t)
print("underdamped ringdown (beta = 0.3, theta = 0):")
for ti, qi in zip(t, q):
    bar = "#" * int(round(24 * abs(qi) / math.sqrt(2.0)))
    print(f"  t = {ti:5.1f}  q = {qi:+.4f}  {bar}")

# theta = pi/2 launches along the momentum direction; the late-time mean
# position then rides the branch-cut tail instead of the decaying pole
prep = CoherentPreparation(n_bar=1.0, theta=math.pi / 2)
print("\nquadrature launch: late-time q(t) * t**3 approaches 8g * sqrt(n/2):")
for ti in (50.0, 100.0, 300.0):
    qi = path_closed_forms(spec, prep, np.array([ti]))[0]
    print(f"  t = {ti:5.0f}  q t^3 = {qi * ti**3:.5f}"
          f"  (limit {8.0 * spec.g * math.sqrt(0.5):.5f})")

# overdamped: no oscillation, one sign change, then a slow crawl home
over = OhmicSystemSpec(bar_omega=1.0, g=3.0, cavity_L=1.0, light_speed=1.0)
t = np.array([0.0, 0.2, 0.485, 1.0, 5.0, 20.0])
q = path_closed_forms(over, CoherentPreparation(n_bar=1.0, theta=0.0), t)
print("\noverdamped crawl (beta = 3):")
print("  " + "  ".join(f"q({ti:g}) = {qi:+.2e}" for ti, qi in zip(t, q)))
