"""Polar quotients and the gradient exponent of a sextic, by two routes.

Run: python3 demos/02_polar_quotients.py
"""

from polarcalc import format_arc, gradient_exponent_complex, parse_poly, polar_branches, polar_quotients
from polarcalc.invariants import APPROX, POLAR

text = "1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5"
f = parse_poly(text)
print("f =", text)

print("\npolar branches (roots of df/dx that are not roots of f):")
for b in polar_branches(f).branches:
    print(f"  {format_arc(b.series):14s} ord f = {b.order_f}")

print("\nquotients along polar branches:", [str(v) for v in polar_quotients(f, route=POLAR).values])
print("quotients from root pairs:      ", [str(v) for v in polar_quotients(f, route=APPROX).values])

r = gradient_exponent_complex(f)
print("\nell along each polar branch:", {arc: str(v) for arc, v in r.ell_values})
print("gradient exponent L =", r.L, "attained along", r.witness)
for c in r.certificates:
    print("  certified:", c)
