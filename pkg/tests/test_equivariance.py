import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from bdesym import BDE, check_equivariance, detect_symmetries, discriminant, parse_group, parse_poly
from bdesym.equivariance import (
    check_equivariance_elementwise,
    discriminant_invariance,
    morse_symmetry_candidates,
    morse_value,
)
from bdesym.errors import DegenerateBDE, NotMorse
from bdesym.parsing import format_symmetry_group
from bdesym.table import TABLE

from conftest import numerically_equivariant, real_polys, to_sympy
from worked_examples import EXAMPLES

GROUPS = ["Z3", "Z4", "Z6[Z3]", "D3", "D4[D2(kx)]", "D6[D3(kx)]", "D5[Z5]", "Z2", "Z2[1]",
          "Z2xZ2", "Z2xZ2[Z2(-I)]", "Z2xZ2[Z2(kx)]", "Z2xZ2[Z2(ky)]", "Z4[Z2]", "D4(rot)"]


def bde(*s):
    return BDE.from_strings(*s)


class TestDiscriminant:
    def test_saddle(self):
        assert discriminant(bde("y", "x", "-y")) == parse_poly("x^2 + y^2")

    def test_identity(self):
        assert discriminant(bde("1", "0", "1")) == parse_poly("-1")

    @settings(max_examples=40, deadline=None)
    @given(real_polys(3, 3), real_polys(3, 3), real_polys(3, 3))
    def test_matches_sympy(self, a, b, c):
        if a.is_zero() and b.is_zero() and c.is_zero():
            return
        want = sp.expand(to_sympy(b) ** 2 - to_sympy(a) * to_sympy(c))
        assert sp.expand(to_sympy(discriminant(BDE(a, b, c))) - want) == 0

    def test_zero_form_rejected(self):
        with pytest.raises(DegenerateBDE):
            bde("0", "0", "0")

    def test_b_total_is_halved(self):
        assert BDE.from_mapping({"a": "1", "b_total": "2*x", "c": "1"}).b == parse_poly("x")


class TestCheck:
    def test_z2(self):
        assert check_equivariance(bde("1", "y", "1"), parse_group("Z2"))

    def test_d6(self):
        assert check_equivariance(bde("-x", "-y", "x"), parse_group("D6[D3(kx)]"))

    def test_constant_a_fails_z2_minus(self):
        assert not check_equivariance(bde("1", "0", "0"), parse_group("Z2[1]"))

    @pytest.mark.parametrize("group, triple, _delta", EXAMPLES)
    def test_examples_numerically(self, group, triple, _delta):
        e, sg = bde(*triple), parse_group(group)
        assert check_equivariance(e, sg)
        if sg.group.is_finite:
            assert numerically_equivariant(e.triple(), sg)

    @pytest.mark.parametrize("row", TABLE, ids=lambda r: r.key)
    def test_table_generators_are_equivariant(self, row):
        n = row.min_n
        sg = row.symmetry_group(n)
        for triple in row.triples(n):
            assert check_equivariance(BDE(*triple), sg)
            if sg.group.is_finite:
                assert numerically_equivariant(triple, sg)

    @settings(max_examples=60, deadline=None)
    @given(real_polys(3, 3), real_polys(3, 3), real_polys(3, 3), st.sampled_from(GROUPS))
    def test_agrees_with_float_oracle(self, a, b, c, group):
        if a.is_zero() and b.is_zero() and c.is_zero():
            return
        e, sg = BDE(a, b, c), parse_group(group)
        expected = numerically_equivariant(e.triple(), sg)
        assert check_equivariance(e, sg) == expected
        assert check_equivariance_elementwise(e, sg) == expected

    def test_generators_suffice(self):
        # symmetrised sums survive, one-sided ones do not
        sg = parse_group("Z2xZ2[Z2(ky)]")
        assert check_equivariance(bde("y", "x", "-y"), sg)
        assert not check_equivariance(bde("y", "y", "-y"), sg)


class TestDiscriminantInvariance:
    def test_saddle(self):
        assert discriminant_invariance(bde("y", "x", "-y"), parse_group("Z2xZ2[Z2(ky)]"))

    def test_z2(self):
        assert discriminant_invariance(bde("1", "y", "1"), parse_group("Z2"))

    def test_trivial(self):
        assert discriminant_invariance(bde("x", "x*y^2+3", "y"), parse_group("1"))

    @pytest.mark.parametrize("group, triple, _delta", EXAMPLES)
    def test_follows_from_equivariance(self, group, triple, _delta):
        assert discriminant_invariance(bde(*triple), parse_group(group))


class TestDetect:
    @pytest.mark.parametrize("triple, want", [
        (("y", "1", "-y"), "Z2[1]"),
        (("y", "x", "-y"), "Z2xZ2[Z2(ky)]"),
        (("-x", "-y", "x"), "D6[D3(kx)]"),
        (("1", "0", "1"), "O2"),
        (("2*x*y", "x^2-y^2", "-2*x*y"), "O2[SO2]"),
        (("x", "y^3", "-x"), "Z2xZ2[Z2(kx)]"),
        (("x*y", "1", "-x*y"), "Z2xZ2[Z2(-I)]"),
    ])
    def test_known(self, triple, want):
        assert detect_symmetries(bde(*triple)).group == parse_group(want)

    def test_so2_example(self):
        rep = detect_symmetries(bde(*EXAMPLES[0][1]))
        assert rep.group.group.kind in ("SO2", "O2")
        assert rep.rotation_part.kind == "SO2"

    def test_generic_form_is_trivial(self):
        assert detect_symmetries(bde("x+1", "y^2", "x*y+2")).group == parse_group("1")

    @pytest.mark.parametrize("row", TABLE, ids=lambda r: r.key)
    def test_detected_group_contains_row_group(self, row):
        # a generic combination of the generators has at least the row's symmetry
        n = row.min_n
        sg = row.symmetry_group(n)
        triples = row.triples(n)
        weights = [1, 2, -3, 5, 7, -11][: len(triples)]
        e = BDE(*(sum((t[s] * w for t, w in zip(triples, weights)), parse_poly("0")) for s in range(3)))
        found = detect_symmetries(e).group
        assert sg.group.is_subgroup_of(found.group)
        for g in (sg.group.generators() if not sg.group.is_finite else sg.group.elements()):
            assert found.eta_value(g) == sg.eta_value(g)

    @pytest.mark.parametrize("triple", [("y", "x", "-y"), ("-x", "-y", "x"), ("y", "1", "-y"), ("x", "y^3", "-x")])
    def test_swap_covariance(self, triple):
        e = bde(*triple)
        a = detect_symmetries(e).group
        b = detect_symmetries(e.swap_xy()).group
        assert a.group.order() == b.group.order()
        assert check_equivariance(e.swap_xy(), b)

    def test_report_serialises(self):
        d = detect_symmetries(bde("-x", "-y", "x")).to_dict()
        assert d["group"] == "D6[D3(kx)]"
        assert d["rotation_part"] == "Z6"


class TestMorse:
    def test_saddle_value(self):
        assert morse_value(bde("y", "x", "-y")) == -4

    def test_zero(self):
        assert morse_value(bde("x^2", "1", "y^2")) == 0

    def test_not_morse(self):
        assert morse_value(bde("x", "y^3", "-x")) == 0
        with pytest.raises(NotMorse):
            morse_symmetry_candidates(bde("y", "1", "-y"))

    def test_point_list(self):
        names = [format_symmetry_group(g) for g in morse_symmetry_candidates(bde("y", "x", "-y"))]
        assert names == ["Z3", "Z6[Z3]", "D3", "D3[Z3]", "D6[D3(kx)]"]

    def test_line_pair_list(self):
        e = bde("y", "x", "y")
        assert morse_value(e) != 0
        names = [format_symmetry_group(g) for g in morse_symmetry_candidates(e)]
        assert names == ["Z2", "Z2[1]", "Z2xZ2[Z2(kx)]"]

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=6, max_size=6), real_polys(4, 3))
    def test_value_is_two_jet_discriminant(self, co, higher):
        x, y = sp.symbols("x y")
        lin = [f"{co[2 * i]}*x + {co[2 * i + 1]}*y" for i in range(3)]
        # higher-order terms must not change the value
        pad = higher * parse_poly("x^2")
        a, b, c = parse_poly(lin[0]) + pad, parse_poly(lin[1]), parse_poly(lin[2])
        if a.is_zero() and b.is_zero() and c.is_zero():
            return
        sa, sb, sc = (sp.sympify(s) for s in lin)
        q = sp.Poly(sp.expand(sb**2 - sa * sc), x, y)
        p, m, r = (q.coeff_monomial(mono) for mono in (x**2, x * y, y**2))
        assert morse_value(BDE(a, b, c)) == m * m - 4 * p * r
