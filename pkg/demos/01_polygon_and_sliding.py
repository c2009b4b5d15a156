"""Relative Newton polygon of x^3 - y^4 + y^5 and one sliding step.

Run: python3 demos/01_polygon_and_sliding.py
"""

from polarcalc import format_arc, parse_arc, parse_poly, relative_diagram, slide
from polarcalc.parser import format_coeff
from polarcalc.puiseux import highest_edge_roots

f = parse_poly("x^3 - y^4 + y^5")
phi = parse_arc("x = y^(4/3)")

d = relative_diagram(f, phi)
print("f   =", "x^3 - y^4 + y^5")
print("arc =", format_arc(phi))
print("dots (i, h):", [(dot.i, str(dot.h)) for dot in d.dots])
print("edge slopes:", [str(e.tan_theta) for e in d.edges])
print("lowest height on X = 0:", d.h0)

# the highest edge decides how the arc can be pushed closer to a root
tan, roots = highest_edge_roots(f, phi)
print(f"highest edge slope {tan}; its polynomial has roots {[(format_coeff(r), k) for r, k in roots]}")

nxt = slide(f, phi, roots[0][0])
print("after sliding:", format_arc(nxt), "with h0 =", relative_diagram(f, nxt).h0)
