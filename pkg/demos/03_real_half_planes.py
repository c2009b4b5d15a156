"""Real gradient exponents on the two half-planes y > 0 and y < 0.

For x^3 + 3xy^3 the polar curve x^2 = -y^3 is real only for y < 0, so the
half-planes give different exponents; the larger one matches the complex
exponent.

Run: python3 demos/03_real_half_planes.py
"""

from polarcalc import gradient_exponent_complex, gradient_exponent_real, parse_poly

for text in ("x^3 + 3*x*y^3", "x^2 - y^3", "x^2 - y^5"):
    f = parse_poly(text)
    real = gradient_exponent_real(f)
    cplx = gradient_exponent_complex(f)
    print(f"{text:16s} complex L = {str(cplx.L):5s} real L = {str(real.L):5s} "
          f"(y > 0: {real.L_plus}, y < 0: {real.L_minus})")
