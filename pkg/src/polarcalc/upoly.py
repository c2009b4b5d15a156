"""Univariate polynomials (coefficient lists, low degree first) and their
nonzero roots with multiplicities.

Exact inputs are split into squarefree factors first; each simple root is
then located numerically, polished with Newton's method in the approximate
field and promoted to an exact Gaussian rational whenever one satisfies the
polynomial exactly. Approximate inputs are clustered instead.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import mpmath
import numpy as np

from .numbers import DEFAULT_FIELD, GaussRat, is_exact, is_zero, to_mpc
from .sqf import _ydivmod, _ygcd, _ytrim, _ydivexact

CLUSTER_RTOL = 1e-3


def peval(p, z):
    acc = 0
    for c in reversed(p):
        acc = acc * z + c
    return acc


def pderiv(p, k=1):
    for _ in range(k):
        p = [c * i for i, c in enumerate(p)][1:]
    return p


def exact_sqf(p):
    """Squarefree decomposition over Q(i): ``[(factor, multiplicity)]``."""
    a = _ytrim(list(p))
    b = _ytrim(pderiv(a))
    c = _ygcd(a, b)
    w = _ydivexact(a, c)
    y = _ydivexact(b, c) if b else []
    z = _ysub(y, pderiv(w))
    out, k = [], 1
    while len(w) > 1:
        g = _ygcd(w, z) if z else w
        if len(g) > 1:
            out.append((g, k))
        w = _ydivexact(w, g)
        y = _ydivexact(z, g) if z else []
        z = _ysub(y, pderiv(w))
        k += 1
    return out


def _ysub(a, b):
    n = max(len(a), len(b))
    zero = GaussRat(0)
    return _ytrim([(a[k] if k < len(a) else zero) - (b[k] if k < len(b) else zero) for k in range(n)])


def _strip_zero_roots(p):
    k = 0
    while k < len(p) and is_zero(p[k]):
        k += 1
    return p[k:]


def _initial_roots(p):
    coeffs = [complex(c) for c in reversed(p)]
    if len(coeffs) <= 1:
        return []
    return list(np.roots(coeffs))


def _newton(p, z, ctx, k=0, steps=200):
    """Polish a root of the ``k``-th derivative of ``p`` (simple there)."""
    q = [to_mpc(c, ctx) for c in pderiv(p, k)]
    dq = pderiv(q)
    z = ctx.mpc(z)
    eps = ctx.mpf(2) ** (-(ctx.prec - 8))
    for _ in range(steps):
        d = peval(dq, z)
        if d == 0:
            break
        step = peval(q, z) / d
        z = z - step
        if abs(step) <= eps * max(abs(z), 1):
            break
    return z


def _recognise(p, r):
    """Exact Gaussian-rational root near ``r``, or None."""
    den = 1
    for c in p:
        den = lcm(den, c.re.denominator, c.im.denominator)
    lead = p[-1] * den
    approx = complex(r) * complex(lead)
    w = GaussRat(round(approx.real), round(approx.imag))
    cand = w / lead
    if abs(complex(cand) - complex(r)) > 1e-9 * max(1.0, abs(complex(r))):
        return None
    if not peval(p, cand):
        return cand
    return None


def _is_real_poly(p):
    for c in p:
        if is_exact(c):
            if c.im:
                return False
        elif not is_zero(c.context.mpc(c.imag), abs(c) or 1):
            return False
    return True


def _snap_real(z, real_poly):
    if real_poly and abs(z.imag) <= z.context.tol * max(abs(z), 1):
        return z.context.mpc(z.real, 0)
    return z


def _simple_roots_exact(p, field):
    """Roots of a squarefree exact polynomial."""
    out = []
    guesses = _initial_roots(p)
    polished = [_newton(p, g, field) for g in guesses]
    distinct = all(
        abs(polished[a] - polished[b]) > CLUSTER_RTOL * max(1, abs(polished[a]))
        for a in range(len(polished))
        for b in range(a)
    )
    if not distinct:
        with field.workprec(field.prec * 2):
            polished = field.polyroots([to_mpc(c, field) for c in reversed(p)], maxsteps=400, extraprec=field.prec)
        polished = [field.mpc(z) for z in polished]
    real_poly = _is_real_poly(p)
    for z in polished:
        ex = _recognise(p, z)
        out.append(ex if ex is not None else _snap_real(z, real_poly))
    return out


def _roots_approx(p, field):
    real_poly = _is_real_poly(p)
    guesses = _initial_roots(p)
    clusters = []
    for g in guesses:
        for cl in clusters:
            if abs(cl[0] - g) <= CLUSTER_RTOL * max(1.0, abs(g)):
                cl.append(g)
                break
        else:
            clusters.append([g])
    scale = [abs(to_mpc(c, field)) for c in p]
    out = []
    for cl in clusters:
        k = len(cl)
        centre = sum(cl) / k
        z = _newton(p, centre, field, k=k - 1)
        if k > 1 and not _cluster_ok(p, z, k, scale, field):
            for g in cl:
                out.append((_snap_real(_newton(p, g, field), real_poly), 1))
            continue
        out.append((_snap_real(z, real_poly), k))
    return out


def _cluster_ok(p, z, k, scale, field):
    az = max(abs(z), 1)
    for j in range(k):
        dj = pderiv(p, j)
        s = sum(scale[i + j] * az**i for i in range(len(dj))) or 1
        if abs(peval([to_mpc(c, field) for c in dj], z)) > field.tol * s:
            return False
    return True


def nonzero_roots(p, field=DEFAULT_FIELD):
    """Nonzero roots of ``p`` as ``[(root, multiplicity)]`` sorted by value."""
    p = _strip_zero_roots(list(p))
    while p and is_zero(p[-1]):
        p.pop()
    if len(p) <= 1:
        return []
    if all(is_exact(c) for c in p):
        roots = []
        for factor, mult in exact_sqf(p):
            for r in _simple_roots_exact(factor, field):
                roots.append((r, mult))
    else:
        roots = _roots_approx(p, field)
    return sorted(roots, key=lambda rm: _root_key(rm[0]))


def _root_key(r):
    z = complex(r)
    return (0 if is_exact(r) else 1, round(z.real, 12), round(z.imag, 12))


__all__ = ["peval", "pderiv", "exact_sqf", "nonzero_roots"]
_ = (Fraction, mpmath, _ydivmod)
