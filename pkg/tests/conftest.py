"""Independent oracles shared by the test modules.

Nothing here goes through the package's complex-coordinate machinery:
symbolic expansions use sympy and equivariance is tested numerically on
the real 2x2 matrix field ``B = [[c, b], [b, a]]``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import strategies as st

from bdesym import RealPoly

X, Y, Z, ZB = sp.symbols("x y z zb")


def to_sympy(p: RealPoly) -> sp.Expr:
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * X**i * Y**j for (i, j), c in p.terms.items()])


def from_sympy(expr) -> RealPoly:
    poly = sp.Poly(sp.expand(expr), X, Y)
    out = RealPoly.zero()
    for (i, j), c in poly.terms():
        c = sp.Rational(c)
        out = out + RealPoly.monomial(i, j, Fraction(int(c.p), int(c.q)))
    return out


def complex_coefficients(p: RealPoly) -> dict:
    """Coefficients of ``p((z+zb)/2, (z-zb)/(2i))`` as ``{(j, k): sympy complex}``."""
    expr = sp.expand(to_sympy(p).subs({X: (Z + ZB) / 2, Y: (Z - ZB) / (2 * sp.I)}, simultaneous=True))
    if expr == 0:
        return {}
    return {mon: sp.nsimplify(c) for mon, c in sp.Poly(expr, Z, ZB).terms()}


def field(triple):
    """Vectorised float evaluator ``(x, y) -> B`` with ``B = [[c, b], [b, a]]``."""
    exprs = [sp.lambdify((X, Y), to_sympy(p), "numpy") for p in triple]

    def B(x, y):
        a, b, c = (np.broadcast_to(np.asarray(f(x, y), dtype=float), np.shape(x)) for f in exprs)
        return np.stack([np.stack([c, b], -1), np.stack([b, a], -1)], -2)

    return B


def numerically_equivariant(triple, sg, elements=None, points=16, seed=0, tol=1e-9) -> bool:
    """``B(g p) == eta(g) g B(p) g^T`` at random points for every listed element."""
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1.5, 1.5, size=(points, 2))
    B = field(triple)
    elements = sg.group.elements() if elements is None else elements
    for g in elements:
        G = g.matrix()
        q = pts @ G.T
        lhs = B(q[:, 0], q[:, 1])
        rhs = sg.eta_value(g) * np.einsum("ij,njk,lk->nil", G, B(pts[:, 0], pts[:, 1]), G)
        if not np.allclose(lhs, rhs, atol=tol, rtol=tol):
            return False
    return True


def float_equivariant_dimension(sg, t: int, seed=1) -> int:
    """Dimension of homogeneous degree-``t`` equivariant triples by float SVD.

    Unknowns are the real monomial coefficients of a, b, c; each group
    element and sample point contributes the linear conditions of the
    equivariance identity.
    """
    monos = [(i, t - i) for i in range(t + 1)]
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1, 1, size=(3 * len(monos) + 4, 2))
    cols = []
    for slot, (i, j) in itertools.product(range(3), monos):
        triple = [RealPoly.zero()] * 3
        triple[slot] = RealPoly.monomial(i, j)
        B = field(triple)
        rows = []
        for g in sg.group.elements():
            G = g.matrix()
            q = pts @ G.T
            diff = B(q[:, 0], q[:, 1]) - sg.eta_value(g) * np.einsum("ij,njk,lk->nil", G, B(pts[:, 0], pts[:, 1]), G)
            rows.append(diff.reshape(-1))
        cols.append(np.concatenate(rows))
    M = np.stack(cols, axis=1)
    s = np.linalg.svd(M, compute_uv=False)
    return int(M.shape[1] - np.sum(s > 1e-8 * max(1.0, s[0])))


def real_polys(max_degree=4, max_terms=5):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    term = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree), coeff)

    def build(terms):
        out = RealPoly.zero()
        for i, j, c in terms:
            out = out + RealPoly.monomial(i, j, c)
        return out

    return st.lists(term, max_size=max_terms).map(build)


@pytest.fixture
def tmp_out(tmp_path):
    return tmp_path


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
