"""Exact gcd and squarefree decomposition in ``x`` over ``Q(i)(y)``.

Polynomials are handled as elements of ``Q(i)[y][x]``: a list (index = x
degree) of y-polynomials, each a list of Gaussian rationals low to high.
Gcds use remainder sequences that keep every intermediate value polynomial
in ``y``; real inputs run over ``Z[y]`` with a modular coprimality check.
"""

from __future__ import annotations

from math import gcd, isqrt, lcm

from .errors import NonExactInput
from .numbers import GaussRat
from .poly import BivarPoly

_Z = GaussRat(0)


# ---------------------------------------------------------------- Q(i)[y]
def _ytrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _yadd(a, b):
    n = max(len(a), len(b))
    return _ytrim([(a[k] if k < len(a) else _Z) + (b[k] if k < len(b) else _Z) for k in range(n)])


def _yneg(a):
    return [-c for c in a]


def _ymul(a, b):
    if not a or not b:
        return []
    out = [_Z] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return _ytrim(out)


def _yscale(a, c):
    return _ytrim([c * v for v in a])


def _ydivmod(a, b):
    a = list(a)
    q = [_Z] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for j, cb in enumerate(b):
            a[k + j] = a[k + j] - c * cb
        a.pop()
        _ytrim(a)
    return _ytrim(q), a


def _ymonic(a):
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _ygcd(a, b):
    a, b = _ytrim(list(a)), _ytrim(list(b))
    while b:
        a, b = b, _ydivmod(a, b)[1]
    return _ymonic(a)


def _ydivexact(a, b):
    q, r = _ydivmod(a, b)
    if r:
        raise ArithmeticError("inexact division in Q(i)[y]")
    return q


# ---------------------------------------------------------------- Q(i)[y][x]
def _xtrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def to_xpoly(f: BivarPoly):
    if not f.is_exact():
        raise NonExactInput("exact coefficients required")
    out = []
    for col in f.x_coeffs():
        yp = [_Z] * (max(col) + 1 if col else 0)
        for j, c in col.items():
            yp[j] = c
        out.append(_ytrim(yp))
    return _xtrim(out)


def from_xpoly(p) -> BivarPoly:
    m = {}
    for i, yp in enumerate(p):
        for j, c in enumerate(yp):
            if c:
                m[(i, j)] = c
    return BivarPoly(m)


def _xdeg(p):
    return len(p) - 1


def _xderiv(p):
    return _xtrim([_yscale(p[i], GaussRat(i)) for i in range(1, len(p))])


def _xsub(a, b):
    n = max(len(a), len(b))
    return _xtrim([_yadd(a[k] if k < len(a) else [], _yneg(b[k]) if k < len(b) else []) for k in range(n)])


def _content(p):
    g = []
    for yp in p:
        if yp:
            g = _ygcd(g, yp) if g else _ymonic(yp)
            if len(g) == 1:
                break
    return g


def _primpart(p):
    if not p:
        return p
    c = _content(p)
    if len(c) > 1:
        p = [_ydivexact(yp, c) if yp else [] for yp in p]
    # normalise: leading y-coefficient of the leading x-coefficient is 1
    lc = p[-1][-1]
    if lc != 1:
        inv = lc.inverse()
        p = [_yscale(yp, inv) for yp in p]
    return p


def _prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` in ``Q(i)[y][x]``."""
    a = [list(yp) for yp in a]
    lb = b[-1]
    db = _xdeg(b)
    while a and _xdeg(a) >= db:
        la = a[-1]
        k = _xdeg(a) - db
        a = [_ymul(yp, lb) for yp in a]
        for j, yb in enumerate(b):
            a[k + j] = _yadd(a[k + j], _yneg(_ymul(la, yb)))
        a.pop()
        _xtrim(a)
    return a


def _xgcd(a, b):
    a, b = _primpart(list(a)), _primpart(list(b))
    if not a:
        return b
    if not b:
        return a
    if _xdeg(a) < _xdeg(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primpart(r)
    return _primpart(a)


def _xdivexact(a, b):
    """``a / b`` where ``b`` divides ``a`` in ``Q(i)(y)[x]`` and is primitive."""
    a = [list(yp) for yp in a]
    db = _xdeg(b)
    lb = b[-1]
    q = [[] for _ in range(max(_xdeg(a) - db + 1, 0))]
    while a and _xdeg(a) >= db:
        k = _xdeg(a) - db
        c = _ydivexact(a[-1], lb)
        q[k] = c
        for j, yb in enumerate(b):
            a[k + j] = _yadd(a[k + j], _yneg(_ymul(c, yb)))
        a.pop()
        _xtrim(a)
    if a:
        raise ArithmeticError("inexact division in Q(i)[y][x]")
    return _xtrim(q)


# ---------------------------------------------------------------- Z[y][x]
# Real inputs are cleared of denominators and handled over the integers:
# integer contents keep the remainder sequences small, and by Gauss's lemma
# every exact division by a primitive divisor stays integral.
def _iytrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _iyadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, v in enumerate(b):
        out[k] += v
    return _iytrim(out)


def _iysub(a, b):
    out = list(a) + [0] * max(len(b) - len(a), 0)
    for k, v in enumerate(b):
        out[k] -= v
    return _iytrim(out)


def _iymul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _iytrim(out)


def _iyscale(a, c):
    return _iytrim([c * v for v in a])


def _icontent(vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _iyprim(a):
    """Primitive part over Z with a positive leading coefficient."""
    if not a:
        return a
    g = _icontent(a)
    if a[-1] < 0:
        g = -g
    return a if g == 1 else [v // g for v in a]


def _iyprem(a, b):
    a = list(a)
    lb, db = b[-1], len(b) - 1
    while a and len(a) - 1 >= db:
        la, k = a[-1], len(a) - 1 - db
        a = [v * lb for v in a]
        for j, vb in enumerate(b):
            a[k + j] -= la * vb
        a.pop()
        _iytrim(a)
    return a


def _iygcd(a, b):
    a, b = _iyprim(_iytrim(list(a))), _iyprim(_iytrim(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        a, b = b, _iyprim(_iyprem(a, b))
    return a


def _iydivexact(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * max(len(a) - db, 0)
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        c, r = divmod(a[-1], lb)
        if r:
            raise ArithmeticError("inexact division in Z[y]")
        q[k] = c
        for j, vb in enumerate(b):
            a[k + j] -= c * vb
        a.pop()
        _iytrim(a)
    if a:
        raise ArithmeticError("inexact division in Z[y]")
    return _iytrim(q)


def _is_real_exact(f: BivarPoly):
    return f.is_exact() and f.is_real()


def to_ixpoly(f: BivarPoly):
    den = 1
    for _, c in f.items():
        den = lcm(den, c.re.denominator)
    out = []
    for col in f.x_coeffs():
        yp = [0] * (max(col) + 1 if col else 0)
        for j, c in col.items():
            yp[j] = int(c.re * den)
        out.append(_iytrim(yp))
    return _xtrim(out)


def from_ixpoly(p) -> BivarPoly:
    return BivarPoly({(i, j): c for i, yp in enumerate(p) for j, c in enumerate(yp) if c})


def _ixderiv(p):
    return _xtrim([_iyscale(p[i], i) for i in range(1, len(p))])


def _ixsub(a, b):
    n = max(len(a), len(b))
    return _xtrim([_iysub(a[k] if k < len(a) else [], b[k] if k < len(b) else []) for k in range(n)])


def _ixprim(p):
    """Primitive part over Z[y], leading coefficient with positive lead."""
    if not p:
        return p
    g = []
    for yp in sorted((yp for yp in p if yp), key=len):
        g = _iygcd(g, yp) if g else _iyprim(yp)
        if len(g) == 1:
            break
    if len(g) > 1:
        p = [_iydivexact(yp, g) if yp else [] for yp in p]
    k = _icontent(v for yp in p for v in yp)
    if p[-1][-1] < 0:
        k = -k
    if k != 1:
        p = [[v // k for v in yp] for yp in p]
    return p


def _ixprem(a, b):
    """Full pseudo-remainder ``lc(b)^(da-db+1) * a mod b``."""
    a = [list(yp) for yp in a]
    lb, db = b[-1], _xdeg(b)
    steps = _xdeg(a) - db + 1
    while a and _xdeg(a) >= db:
        steps -= 1
        la, k = a[-1], _xdeg(a) - db
        a = [_iymul(yp, lb) for yp in a]
        for j, yb in enumerate(b):
            a[k + j] = _iysub(a[k + j], _iymul(la, yb))
        a.pop()
        _xtrim(a)
    if a and steps > 0:
        scale = _iypow(lb, steps)
        a = [_iymul(yp, scale) for yp in a]
    return a


_PRIME = (1 << 61) - 1
_POINTS = (3, 7, 12, 23, 41, 66)


def _iyeval(a, y0):
    v = 0
    for c in reversed(a):
        v = (v * y0 + c) % _PRIME
    return v


def _mod_gcd_degree(a, b):
    """Univariate gcd degree over ``Z/p`` (inputs have nonzero leads)."""
    while b:
        inv = pow(b[-1], -1, _PRIME)
        a = list(a)
        while len(a) >= len(b):
            c = a[-1] * inv % _PRIME
            k = len(a) - len(b)
            for j, v in enumerate(b):
                a[k + j] = (a[k + j] - c * v) % _PRIME
            a.pop()
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _gcd_degree_bound(a, b):
    """Upper bound on ``deg_x gcd(a, b)`` from images at ``y = y0`` mod p.

    Specialisations that keep both leading coefficients can only raise
    the gcd degree, so the smallest image degree is a valid bound.
    """
    best = min(_xdeg(a), _xdeg(b))
    tries = 0
    for y0 in _POINTS:
        ia = [_iyeval(yp, y0) for yp in a]
        ib = [_iyeval(yp, y0) for yp in b]
        if not ia[-1] or not ib[-1]:
            continue
        best = min(best, _mod_gcd_degree(ia, ib))
        tries += 1
        if best == 0 or tries == 2:
            break
    return best


def _divides(b, a):
    try:
        _ixdivexact(a, b)
    except ArithmeticError:
        return False
    return True


def _iypow(a, k):
    out = [1]
    for _ in range(k):
        out = _iymul(out, a)
    return out


def _at(p, xi):
    v = 0
    for c in reversed(p):
        v = v * xi + c
    return v


def _digits(h, xi):
    """Symmetric base-``xi`` digits of ``h`` (low first)."""
    out = []
    while h:
        d = h % xi
        if d > xi // 2:
            d -= xi
        out.append(d)
        h = (h - d) // xi
    return out


def _grow(xi):
    return xi * 73794 * isqrt(isqrt(xi)) // 27011


def _uheugcd(a, b):
    """Heuristic gcd in ``Z[x]`` by evaluation at a large integer."""
    ca, cb = _icontent(a), _icontent(b)
    g0 = gcd(ca, cb)
    a, b = [v // ca for v in a], [v // cb for v in b]
    xi = 2 * min(max(map(abs, a)), max(map(abs, b))) + 29
    for _ in range(6):
        h = gcd(_at(a, xi), _at(b, xi))
        g = _iyprim(_digits(h, xi))
        if g and _iydivides(g, a) and _iydivides(g, b):
            return [g0 * v for v in g]
        xi = _grow(xi)
    return None


def _iydivides(b, a):
    try:
        _iydivexact(a, b)
    except ArithmeticError:
        return False
    return True


def _bheugcd(a, b):
    """Heuristic gcd of primitive ``a, b`` in ``Z[y][x]``: evaluate ``y``
    at a large integer, take the gcd in ``Z[x]`` and read the ``y``
    coefficients back from base-``xi`` digits. Accepted only when it
    divides both inputs exactly; ``None`` when every attempt fails."""
    norm = lambda p: max(abs(v) for yp in p for v in yp)
    xi = 2 * min(norm(a), norm(b)) + 29
    for _ in range(4):
        ea = [_at(yp, xi) for yp in a]
        eb = [_at(yp, xi) for yp in b]
        h = _uheugcd(ea, eb) if ea[-1] and eb[-1] else None
        if h is not None:
            cand = _ixprim(_xtrim([_digits(c, xi) for c in h]))
            if cand and _divides(cand, a) and _divides(cand, b):
                return cand
        xi = _grow(xi)
    return None


def _ixgcd(a, b):
    """Gcd in ``Q(y)[x]``, returned primitive in ``Z[y][x]``."""
    a, b = _ixprim(list(a)), _ixprim(list(b))
    if not a:
        return b
    if not b:
        return a
    if _xdeg(a) < _xdeg(b):
        a, b = b, a
    if _xdeg(b) == 0:
        return [[1]]
    bound = _gcd_degree_bound(a, b)
    if bound == 0:
        return [[1]]
    cand = _bheugcd(a, b)
    if cand is not None:
        return cand
    A, B = a, b
    # subresultant remainder sequence: only exact divisions in Z[y]
    g, h = [1], [1]
    while True:
        if _xdeg(B) == bound:
            cand = _ixprim(B)
            if _divides(cand, a) and _divides(cand, b):
                return cand
        delta = _xdeg(A) - _xdeg(B)
        R = _ixprem(A, B)
        if not R:
            return _ixprim(B)
        if _xdeg(R) == 0:
            return [[1]]
        div = _iymul(g, _iypow(h, delta))
        A, B = B, [_iydivexact(yp, div) if yp else [] for yp in R]
        g = A[-1]
        if delta == 0:
            continue
        h = _iydivexact(_iypow(g, delta), _iypow(h, delta - 1))


def _ixdivexact(a, b):
    a = [list(yp) for yp in a]
    db, lb = _xdeg(b), b[-1]
    q = [[] for _ in range(max(_xdeg(a) - db + 1, 0))]
    while a and _xdeg(a) >= db:
        k = _xdeg(a) - db
        c = _iydivexact(a[-1], lb)
        q[k] = c
        for j, yb in enumerate(b):
            a[k + j] = _iysub(a[k + j], _iymul(c, yb))
        a.pop()
        _xtrim(a)
    if a:
        raise ArithmeticError("inexact division in Z[y][x]")
    return _xtrim(q)


_INTEGER = dict(
    to=to_ixpoly, back=from_ixpoly, prim=_ixprim, gcd=_ixgcd, div=_ixdivexact, deriv=_ixderiv, sub=_ixsub
)
_GAUSS = dict(
    to=to_xpoly, back=from_xpoly, prim=_primpart, gcd=_xgcd, div=_xdivexact, deriv=_xderiv, sub=_xsub
)


def _ring(*fs):
    return _INTEGER if all(_is_real_exact(f) for f in fs) else _GAUSS


# ---------------------------------------------------------------- public
def gcd_x(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    """Gcd of ``f`` and ``g`` as polynomials in ``x`` over ``Q(i)(y)``,
    returned primitive in ``Q(i)[y][x]`` (a y-only gcd is reported as 1)."""
    R = _ring(f, g)
    a, b = R["to"](f), R["to"](g)
    if not a and not b:
        return BivarPoly()
    gp = R["gcd"](a, b)
    if _xdeg(gp) <= 0:
        return BivarPoly.const(1)
    return R["back"](gp)


def div_x(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    """Exact quotient of ``f`` by the x-primitive ``g`` (up to a constant
    factor on the integer path)."""
    R = _ring(f, g)
    return R["back"](R["div"](R["prim"](R["to"](f)), R["prim"](R["to"](g))))


def primitive_part_x(f: BivarPoly) -> BivarPoly:
    R = _ring(f)
    return R["back"](R["prim"](R["to"](f)))


def squarefree_decompose_x(f: BivarPoly):
    """Yun's algorithm in ``x`` over ``Q(i)(y)``.

    Returns ``[(factor, multiplicity), ...]`` with pairwise coprime,
    squarefree, x-primitive factors of positive x-degree whose product of
    powers equals ``f`` up to a factor free of ``x``.
    """
    if not f.is_exact():
        raise NonExactInput("exact coefficients required")
    R = _ring(f)
    a = R["to"](f)
    if not a:
        raise ValueError("cannot decompose the zero polynomial")
    if _xdeg(a) <= 0:
        return []
    prim, xgcd, div, deriv, sub = R["prim"], R["gcd"], R["div"], R["deriv"], R["sub"]
    a = prim(a)
    b = deriv(a)
    c = xgcd(a, b)
    w = div(a, c)
    yy = div(b, c)
    z = sub(yy, deriv(w))
    out = []
    k = 1
    while _xdeg(w) > 0:
        g = xgcd(w, z) if z else prim(w)
        if _xdeg(g) > 0:
            out.append((R["back"](prim(g)), k))
        w = div(w, g)
        yy = div(z, g) if z else []
        z = sub(yy, deriv(w))
        k += 1
    return out


def is_constant_in_x(f: BivarPoly) -> bool:
    return f.x_degree() <= 0
