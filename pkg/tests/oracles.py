"""Independent oracles for the test-suite.

``series_substitute`` evaluates ``f(phi(y), y)`` by Horner's rule in the
Puiseux series ring, bypassing the relative-polygon machinery.

``construction_quotients`` recomputes polar quotients of a branch product
straight from its construction: the roots of the norm of a branch
``sum a_e y^e`` (ramification ``N``) are its ``N`` conjugates, the term at
``y^e`` picking up ``zeta^(s*e*N)`` for conjugate ``s``. Contacts are read
off exactly with roots of unity tracked as integers modulo a common order.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from polarcalc import INF, PuiseuxSeries


def series_substitute(f, phi: PuiseuxSeries) -> PuiseuxSeries:
    """``f(phi(y), y)`` via series-ring Horner evaluation in ``x``."""
    cols = f.x_coeffs()
    acc = PuiseuxSeries.zero()
    for i in range(len(cols) - 1, -1, -1):
        col = PuiseuxSeries([(j, c) for j, c in cols[i].items()])
        acc = acc.mul(phi) + col
    return acc


def _conjugates(components):
    """Roots as ``(terms, multiplicity)``; terms map exponent to
    ``(rational coefficient, root-of-unity exponent over L)``."""
    L = lcm(*[N for _, N, _ in components])
    roots = []
    for branch, N, mu in components:
        for s in range(N):
            terms = {}
            for e, c in branch:
                k = (s * int(e * N) * (L // N)) % L
                terms[e] = (c, k)
            roots.append((terms, mu))
    return roots, L


def _same(a, b, L):
    (ca, ka), (cb, kb) = a, b
    if ca == cb:
        return ka == kb
    if ca == -cb:
        return L % 2 == 0 and (ka - kb) % L == L // 2
    return False


def _contact(r1, r2, L):
    for e in sorted(set(r1) | set(r2)):
        if e not in r1 or e not in r2 or not _same(r1[e], r2[e], L):
            return e
    return INF


def construction_quotients(components):
    """``(quotients, root count)`` from the known roots of the product."""
    roots, L = _conjugates(components)
    n = len(roots)
    contact = [[INF if a == b else _contact(roots[a][0], roots[b][0], L) for b in range(n)] for a in range(n)]
    values = set()
    for a in range(n):
        for b in range(a + 1, n):
            values.add(sum(Fraction(roots[k][1]) * min(contact[a][k], contact[b][k]) for k in range(n)))
    return values, n


def construction_exponent(components):
    values, n = construction_quotients(components)
    m = sum(N * mu for _, N, mu in components)
    if n < 2:
        return Fraction(m - 1, m)
    return max(1 - 1 / v for v in values)


def substitution_orders(f, components, rng, dps=60):
    """``{(a, b): (ord f, formula value)}`` along ``prefix + g*y^rho`` for
    every root pair.

    Roots come from the construction with numeric roots of unity; ``g`` is
    a fresh random Gaussian rational kept away from every root coefficient
    at ``y^rho``. Orders are read from a plain truncated Horner evaluation
    with mpmath numbers, so none of the library's series code runs.
    """
    import mpmath

    roots, L = _conjugates(components)
    n = len(roots)
    out = {}
    with mpmath.workdps(dps):
        cols = [
            {j: mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator, mpmath.mpf(c.im.numerator) / c.im.denominator) for j, c in col.items()}
            for col in f.x_coeffs()
        ]
        zeta = mpmath.exp(2j * mpmath.pi / L)

        def num(q):
            return mpmath.mpf(q.numerator) / q.denominator

        def coeff(r, e):
            if e not in r:
                return mpmath.mpc(0)
            c, k = r[e]
            return num(c) * zeta**k

        for a in range(n):
            for b in range(a + 1, n):
                rho = _contact(roots[a][0], roots[b][0], L)
                want = sum(
                    Fraction(roots[k][1]) * (rho if k == a else min(_contact(roots[a][0], roots[k][0], L), rho))
                    for k in range(n)
                )
                near = [coeff(roots[k][0], rho) for k in range(n) if k == a or _contact(roots[a][0], roots[k][0], L) >= rho]
                while True:
                    g = mpmath.mpc(num(Fraction(rng.randint(-99, 99), rng.randint(1, 9))), num(Fraction(rng.randint(-99, 99), rng.randint(1, 9))))
                    if all(abs(g - c) > mpmath.mpf(10) ** -3 for c in near):
                        break
                arc = {e: coeff(roots[a][0], e) for e in roots[a][0] if e < rho}
                arc[rho] = g
                order = _truncated_order(cols, arc, want + 1, dps)
                out[(a, b)] = (order, want)
    return out


def _truncated_order(cols, arc, cap, dps):
    """Order of ``sum_i cols[i](y) * arc(y)^i`` among exponents below
    ``cap``; None when every such term cancels. A term counts as zero
    when it is tiny next to the same sum taken over absolute values."""
    import mpmath

    acc, mag = {}, {}
    for i in range(len(cols) - 1, -1, -1):
        nxt, nmag = {}, {}
        for e1, c1 in acc.items():
            for e2, c2 in arc.items():
                e = e1 + e2
                if e < cap:
                    nxt[e] = nxt.get(e, 0) + c1 * c2
                    nmag[e] = nmag.get(e, 0) + mag[e1] * abs(c2)
        for j, c in cols[i].items():
            if j < cap:
                e = Fraction(j)
                nxt[e] = nxt.get(e, 0) + c
                nmag[e] = nmag.get(e, 0) + abs(c)
        acc, mag = nxt, nmag
    eps = mpmath.mpf(10) ** (-dps // 2)
    live = [e for e, v in acc.items() if abs(v) > mag[e] * eps]
    return min(live) if live else None
