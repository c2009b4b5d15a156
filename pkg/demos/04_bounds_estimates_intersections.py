"""Degree bounds, a numeric check of an exact exponent, and intersection
multiplicities.

Run: python3 demos/04_bounds_estimates_intersections.py
"""

from polarcalc import (
    degree_bounds,
    format_arc,
    gradient_exponent_complex,
    intersection_multiplicity,
    numeric_exponent_estimate,
    parse_arc,
    parse_poly,
)

f = parse_poly("1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5")
L = gradient_exponent_complex(f).L
gradient, classical, via_L, ok = degree_bounds(f, L)
print(f"L = {L}; degree bound {gradient}; classical exponent <= min({via_L}, {classical}); bound holds: {ok}")

# log|grad f| against log|f| along the polar branch where L is attained
arc = parse_arc("x = i*y^2")
slope = numeric_exponent_estimate(f, arc, 1e-6, 1e-3, 64)
print(f"numeric slope along {format_arc(arc)}: {slope:.5f} (exact {float(L):.5f})")

for a, b in (("x^2 - y^3", "y"), ("x^3 - y^2", "x^2 - y^5"), ("x^2 - y^3", "x^2 - y^3")):
    print(f"i({a}, {b}) = {intersection_multiplicity(parse_poly(a), parse_poly(b))}")
