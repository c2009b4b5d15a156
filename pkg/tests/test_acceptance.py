"""Acceptance criteria, one test per criterion plus a determinism rerun.

Each criterion is a function of a seed that asserts its checks and returns
a JSON-ready payload. The timed test records the canonical bytes of that
payload; the determinism tests rerun every criterion and compare bytes.
"""

import io
import json
import random
import time
from fractions import Fraction as F

import pytest
import sympy as sp

from polarcalc import (
    BivarPoly,
    degree_bounds,
    ell_of_arc,
    format_arc,
    format_poly,
    gradient_exponent_complex,
    gradient_exponent_real,
    numeric_exponent_estimate,
    parse_arc,
    parse_poly,
    polar_branches,
    polar_quotients,
    real_polar_branches,
    relative_diagram,
)
from polarcalc.cli import run
from polarcalc.invariants import APPROX, BOTH, POLAR

from generators import X, Y, random_branch_product, random_homogeneous, random_polynomial
from oracles import construction_quotients, substitution_orders

SEED = 0
EX21 = "x^3 - y^4 + y^5"
EX42 = "1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5"
EX46 = "x^3 + 3*x*y^3"
TWO_PAIRS = "(x^2-y^2)*(x^2-y^4)"

FIRST_RUN = {}


def cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([*argv, "--format", "json", "--seed", str(SEED)], stdout=out, stderr=err)
    assert code == 0, err.getvalue()
    return json.loads(out.getvalue())


def q(v):
    return str(F(v))


def canonical(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def flip_y(f):
    """``f(x, -y)``."""
    return BivarPoly({(i, j): c * (-1) ** j for (i, j), c in f.items()})


# ---------------------------------------------------------------- criteria
def polygon_regression(seed):
    f, arc = parse_poly(EX21), parse_arc("x = y^(4/3)")
    d = relative_diagram(f, arc)
    assert {(dot.i, dot.h) for dot in d.dots} == {(3, F(0)), (2, F(4, 3)), (1, F(8, 3)), (0, F(5))}
    assert [e.tan_theta for e in d.edges] == [F(4, 3), F(7, 3)]
    he = d.highest_edge
    assert he.tan_theta == F(7, 3) and list(he.edge_poly) == [1, 3]
    rep = cli_json("polygon", EX21, "--arc", "x = y^(4/3)")
    assert rep["highest_edge"] == {"tan_theta": "7/3", "poly": "1 + 3*z"}
    return rep


def sextic_regression(seed):
    f = parse_poly(EX42)
    arcs = {format_arc(b.series): b.order_f for b in polar_branches(f).branches}
    assert set(arcs) == {"x = y", "x = i*y^2", "x = -i*y^2"}
    r = gradient_exponent_complex(f, seed)
    assert dict(r.ell_values) == {"x = y": F(5, 6), "x = i*y^2": F(10, 11), "x = -i*y^2": F(10, 11)}
    for route in (POLAR, APPROX, BOTH):
        assert polar_quotients(f, route=route, seed=seed).values == (6, 11)
    # maximum of ell over polar branches, and the same from the quotients
    via_branches = max(v for _, v in r.ell_values)
    via_quotients = max(1 - 1 / v for v in r.quotients.values)
    assert via_branches == via_quotients == r.L == F(10, 11)
    rep = cli_json("lojasiewicz", EX42)
    assert rep["L"] == "10/11"
    return rep


def real_cubic_regression(seed):
    r = gradient_exponent_real(parse_poly(EX46), seed)
    assert (r.L_plus, r.L_minus, r.L) == (F(2, 3), F(7, 9), F(7, 9))
    rep = cli_json("lojasiewicz", EX46, "--field", "real")
    assert (rep["L_plus"], rep["L_minus"], rep["L"]) == ("2/3", "7/9", "7/9")
    return rep


def cusp_regression(seed):
    out = {}
    for text, want in (("x^2 - y^3", F(2, 3)), ("x^2 - y^5", F(4, 5))):
        f = parse_poly(text)
        assert gradient_exponent_complex(f, seed).L == want
        assert gradient_exponent_real(f, seed).L == want
        out[text] = [cli_json("lojasiewicz", text), cli_json("lojasiewicz", text, "--field", "real")]
    return out


def homogeneous_law(seed):
    rng = random.Random(seed)
    out = []
    for d in range(2, 7):
        for _ in range(50):
            f = random_homogeneous(rng, d)
            L = gradient_exponent_complex(f, seed).L
            assert L == 1 - F(1, d), (format_poly(f), L)
            out.append([format_poly(f), q(L)])
    return out


def closed_form_quotients():
    """Polar curve of (x^2-y^2)(x^2-y^4): x = 0 and 2x^2 = y^2 + y^4.

    f depends on x only through x^2, so substituting x^2 along each
    component gives ord f exactly.
    """
    f = (X**2 - Y**2) * (X**2 - Y**4)
    assert sp.factor(sp.diff(f, X)) == sp.factor(2 * X * (2 * X**2 - Y**2 - Y**4))
    u = sp.symbols("u")
    g = (u - Y**2) * (u - Y**4)
    orders = set()
    for x2 in (sp.Integer(0), (Y**2 + Y**4) / 2):
        orders.add(min(m[0] for m in sp.Poly(sp.expand(g.subs(u, x2)), Y).monoms()))
    return {F(o) for o in orders}


def two_pairs_instance(seed):
    f = parse_poly(TWO_PAIRS)
    want = closed_form_quotients()
    assert want == {4, 6}
    for route in (POLAR, APPROX, BOTH):
        assert set(polar_quotients(f, route=route, seed=seed).values) == want
    r = gradient_exponent_complex(f, seed)
    assert r.L == max(1 - 1 / v for v in want) == F(5, 6)
    return cli_json("quotients", TWO_PAIRS) | {"lojasiewicz": cli_json("lojasiewicz", TWO_PAIRS)}


BRANCH_PRODUCTS = 200


def branch_product_suite(seed):
    out = []
    for k in range(BRANCH_PRODUCTS):
        s = seed * 100003 + k
        f, comps = random_branch_product(random.Random(s), max_mult=3, max_denom=4, max_branches=4)
        got = polar_quotients(f, route=BOTH, seed=s)
        orders = substitution_orders(f, comps, random.Random(10**7 + s))
        bad = {pair: v for pair, v in orders.items() if v[0] != v[1]}
        assert not bad, (s, bad)
        want, _ = construction_quotients(comps)
        assert set(got.values) == want == {w for _, w in orders.values()}, s
        out.append([s, [q(v) for v in got.values]])
    return out


def bound_suite(seed):
    rng = random.Random(seed)
    u = parse_poly("1 + x + y")
    out = []
    for d in range(2, 6):
        for _ in range(100):
            # singular samples only: smooth ones have L = 0 trivially
            f = random_polynomial(rng, d, min_order=2)
            r = gradient_exponent_complex(f, seed)
            assert F(r.m - 1, r.m) <= r.L <= 1 - F(1, (d - 1) ** 2 + 1), format_poly(f)
            assert degree_bounds(f, r.L)[3]
            assert gradient_exponent_complex(u * f, seed).L == r.L, format_poly(f)
            out.append([format_poly(f), r.m, q(r.L)])
    return out


def _numeric_pairs(seed):
    """``(label, f, arc, exact ell)`` for the branches of criteria 2-4 and 6."""
    pairs = []
    for text in (EX42, "x^2 - y^3", "x^2 - y^5", TWO_PAIRS):
        f = parse_poly(text)
        for b in polar_branches(f, depth=24).branches:
            pairs.append((text, f, b.series, 1 - 1 / F(b.order_f)))
    ex46 = parse_poly(EX46)
    for tag, g in (("", ex46), ("y -> -y: ", flip_y(ex46))):
        for b in real_polar_branches(g, depth=24, seed=seed).branches:
            pairs.append((tag + EX46, g, b.series, ell_of_arc(g, b.series)))
    return pairs


def numeric_oracle(seed):
    out = []
    for label, f, arc, ell in _numeric_pairs(seed):
        est = numeric_exponent_estimate(f, arc, 1e-6, 1e-3, 64)
        assert abs(est - float(ell)) <= 0.02, (label, format_arc(arc), est, ell)
        out.append([label, format_arc(arc), q(ell), est])
    # every exact ell named in the regressions is exercised
    seen = {(p[0], p[2]) for p in out}
    for text, ell in ((EX42, "5/6"), (EX42, "10/11"), ("x^2 - y^3", "2/3"), ("x^2 - y^5", "4/5"), (TWO_PAIRS, "5/6"), (TWO_PAIRS, "3/4"), (EX46, "2/3"), ("y -> -y: " + EX46, "7/9")):
        assert (text, ell) in seen, (text, ell)
    return out


CRITERIA = {
    1: (polygon_regression, 1),
    2: (sextic_regression, 5),
    3: (real_cubic_regression, 5),
    4: (cusp_regression, 1),
    5: (homogeneous_law, 60),
    6: (two_pairs_instance, 2),
    7: (branch_product_suite, 600),
    8: (bound_suite, 600),
    9: (numeric_oracle, 30),
}


def timed(number):
    fn, limit = CRITERIA[number]
    start = time.perf_counter()
    payload = fn(SEED)
    elapsed = time.perf_counter() - start
    FIRST_RUN[number] = canonical(payload)
    print(f"criterion {number}: {elapsed:.2f} s (limit {limit} s)")
    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"


@pytest.mark.criterion(1, "relative polygon of the cusp family along y^(4/3)")
def test_criterion_01_polygon():
    timed(1)


@pytest.mark.criterion(2, "polar branches, ell values, quotients and L of the rational sextic")
def test_criterion_02_sextic():
    timed(2)


@pytest.mark.criterion(3, "real exponents of x^3 + 3xy^3")
def test_criterion_03_real_cubic():
    timed(3)


@pytest.mark.criterion(4, "exponents of the two cusps")
def test_criterion_04_cusps():
    timed(4)


@pytest.mark.criterion(5, "homogeneous law over 250 random forms")
def test_criterion_05_homogeneous():
    timed(5)


@pytest.mark.criterion(6, "quotients and L of (x^2-y^2)(x^2-y^4) against the closed-form polar curve")
def test_criterion_06_two_pairs():
    timed(6)


@pytest.mark.criterion(7, "both quotient routes and substitution checks on 200 branch products")
def test_criterion_07_branch_products():
    timed(7)


@pytest.mark.criterion(8, "degree bound, order bound and unit invariance on 400 random singular polynomials")
def test_criterion_08_bounds():
    timed(8)


@pytest.mark.criterion(9, "log-log slope estimates within 0.02 of exact ell")
def test_criterion_09_numeric():
    timed(9)


@pytest.mark.criterion(10, "rerunning every criterion gives byte-identical JSON")
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion_10_determinism(number):
    fn, _ = CRITERIA[number]
    first = FIRST_RUN.get(number)
    if first is None:
        first = canonical(fn(SEED))
    assert canonical(fn(SEED)) == first
