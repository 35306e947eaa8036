import itertools
from fractions import Fraction

import numpy as np
import pytest

from bdesym import (
    ComplexMapForm,
    ComplexPoly,
    GaussianRational,
    GroupElement,
    GroupSpec,
    act_on_form,
    parse_group,
    triple_to_complex_form,
    validate_eta,
)
from bdesym.errors import GroupSyntaxError, InfiniteGroup, NotAdmissible, NotExactlyRepresentable, NotInGroup, NotIndexTwo
from bdesym.groups import (
    act_on_complex_poly,
    act_reflection_on_complex_poly,
    act_rotation_on_complex_poly,
    eta_value,
)
from bdesym.parsing import format_symmetry_group, parse_poly

I = GaussianRational(0, 1)
z, zb = ComplexPoly.z(), ComplexPoly.zb()

FINITE = ["Z1", "Z3", "Z4", "Z6", "Z2", "Z2(-I)", "D3", "D4(rot)", "Z2xZ2", "D6", "D5(ky)"]
WITH_ETA = ["Z6[Z3]", "D6[D3(kx)]", "D6[D3(ky)]", "D4[Z4]", "Z2xZ2[Z2(-I)]", "Z2xZ2[Z2(kx)]",
            "Z2xZ2[Z2(ky)]", "Z2[1]", "D3[Z3]", "Z4[Z2]"]


def numeric(q: ComplexPoly):
    def f(zv):
        return sum((float(c.re) + 1j * float(c.im)) * zv**j * np.conj(zv)**k for (j, k), c in q.terms.items())
    return f


def image(g: GroupElement, zv):
    u = np.exp(1j * np.pi * float(g.angle))
    return u * zv if g.is_rotation else u * np.conj(zv)


class TestElements:
    def test_cyclic_three(self):
        assert GroupSpec.cyclic(3).elements() == [GroupElement.rotation(Fraction(k * 2, 3)) for k in range(3)]

    def test_klein_four(self):
        els = set(GroupSpec.klein_four().elements())
        assert els == {GroupElement.identity(), GroupElement.rotation(1),
                       GroupElement.reflection(0), GroupElement.reflection(1)}

    @pytest.mark.parametrize("g", [GroupSpec.so2(), GroupSpec.o2()])
    def test_infinite(self, g):
        with pytest.raises(InfiniteGroup):
            g.elements()

    @pytest.mark.parametrize("name", FINITE)
    def test_group_axioms(self, name):
        g = parse_group(name).group
        els = g.elements()
        assert len(set(els)) == g.order()
        for a, b in itertools.product(els, repeat=2):
            assert g.contains(a * b)
        for a, b, c in itertools.product(els, repeat=3):
            assert (a * b) * c == a * (b * c)
        for a in els:
            assert a * a.inverse() == GroupElement.identity()
            assert (a * a.inverse()).det() == 1

    @pytest.mark.parametrize("name", FINITE)
    def test_composition_matches_matrices(self, name):
        els = parse_group(name).group.elements()
        for a, b in itertools.product(els, repeat=2):
            assert np.allclose((a * b).matrix(), a.matrix() @ b.matrix())
            assert (a * b).det() == a.det() * b.det()
            assert np.isclose(np.linalg.det(a.matrix()), a.det())


class TestEta:
    @pytest.mark.parametrize("g, k", [
        (GroupSpec.cyclic(6), GroupSpec.cyclic(3)),
        (GroupSpec.dihedral(6), GroupSpec.dihedral(3, "kx")),
        (GroupSpec.dihedral(6), GroupSpec.dihedral(3, "rot")),
        (GroupSpec.dihedral(5), GroupSpec.cyclic(5)),
        (GroupSpec.klein_four(), GroupSpec.cyclic(2)),
        (GroupSpec.klein_four(), GroupSpec.dihedral(1, "kx")),
        (GroupSpec.klein_four(), GroupSpec.dihedral(1, "ky")),
        (GroupSpec.dihedral(1), GroupSpec.trivial()),
        (GroupSpec.o2(), GroupSpec.so2()),
    ])
    def test_admissible(self, g, k):
        assert validate_eta(g, k).kernel == k

    def test_so2_has_no_sign(self):
        with pytest.raises(NotAdmissible):
            validate_eta(GroupSpec.so2(), GroupSpec.trivial())

    def test_wrong_index(self):
        with pytest.raises(NotIndexTwo):
            validate_eta(GroupSpec.cyclic(6), GroupSpec.cyclic(2))

    def test_reflection_subgroup_of_d3(self):
        with pytest.raises(NotIndexTwo):
            validate_eta(GroupSpec.dihedral(3), GroupSpec.dihedral(1))

    def test_kernel_outside_group(self):
        with pytest.raises(NotAdmissible):
            validate_eta(GroupSpec.dihedral(4), GroupSpec.dihedral(2, Fraction(1, 4)))

    def test_eta_on_generators(self):
        d6 = parse_group("D6[D3(kx)]")
        assert eta_value(d6, GroupElement.rotation(Fraction(1, 3))) == -1
        klein = parse_group("Z2xZ2[Z2(ky)]")
        assert eta_value(klein, GroupElement.reflection(0)) == -1
        assert eta_value(klein, GroupElement.reflection(1)) == 1

    @pytest.mark.parametrize("name", WITH_ETA + FINITE)
    def test_homomorphism(self, name):
        sg = parse_group(name)
        els = sg.group.elements()
        assert sg.eta_value(GroupElement.identity()) == 1
        for a, b in itertools.product(els, repeat=2):
            assert sg.eta_value(a * b) == sg.eta_value(a) * sg.eta_value(b)

    def test_not_in_group(self):
        with pytest.raises(NotInGroup):
            eta_value(parse_group("Z3"), GroupElement.reflection(0))


class TestPolyActions:
    def test_half_turn(self):
        assert act_rotation_on_complex_poly(GroupElement.rotation(1), z) == -z

    def test_sixth_turn_on_z3_invariant(self):
        f = z**3 + zb**3
        assert act_rotation_on_complex_poly(GroupElement.rotation(Fraction(1, 3)), f) == -f

    def test_fifth_turn_not_exact(self):
        with pytest.raises(NotExactlyRepresentable):
            act_rotation_on_complex_poly(GroupElement.rotation(Fraction(2, 5)), z)

    def test_kx_swaps(self):
        assert act_reflection_on_complex_poly(GroupElement.reflection(0), z * z) == zb * zb

    def test_ky_on_z(self):
        assert act_reflection_on_complex_poly(GroupElement.reflection(1), z) == -zb

    @pytest.mark.parametrize("g", [GroupElement.rotation(Fraction(1, 2)), GroupElement.rotation(1),
                                   GroupElement.reflection(0), GroupElement.reflection(Fraction(1, 2)),
                                   GroupElement.reflection(Fraction(3, 2))])
    def test_pullback_agrees_numerically(self, g):
        f = z**3 * zb * GaussianRational(2, -1) + zb**2 * I + ComplexPoly.const(3) + z * zb
        pts = np.array([0.3 + 0.4j, -1.1 + 0.2j, 0.7 - 0.9j])
        assert np.allclose(numeric(act_on_complex_poly(g, f))(pts), numeric(f)(image(g, pts)))

    def test_action_law(self):
        els = GroupSpec.dihedral(4).elements()
        f = z**4 * GaussianRational(1, 1) + z * zb**3 + zb**2 * I
        for a, b in itertools.product(els, repeat=2):
            # pullback is a right action: (f o a) o b == f o (a b)
            assert act_on_complex_poly(b, act_on_complex_poly(a, f)) == act_on_complex_poly(a * b, f)

    def test_reflection_involution(self):
        f = z**2 * zb * GaussianRational(1, 3) + I
        k = GroupElement.reflection(Fraction(1, 2))
        assert act_on_complex_poly(k, act_on_complex_poly(k, f)) == f


class TestFormActions:
    def test_identity(self):
        f = ComplexMapForm(z * zb, zb * I)
        assert act_on_form(GroupElement.identity(), 1, f) == f

    def test_half_turn_on_zbar(self):
        f = ComplexMapForm(ComplexPoly.zero(), zb)
        assert act_on_form(GroupElement.rotation(1), 1, f) == ComplexMapForm(ComplexPoly.zero(), -zb)

    def test_kx_with_negative_sign(self):
        f = ComplexMapForm(ComplexPoly.zero(), zb)
        assert act_on_form(GroupElement.reflection(0), -1, f) == ComplexMapForm(ComplexPoly.zero(), -zb)

    def test_fixed_points_are_equivariants(self):
        sg = parse_group("D6[D3(kx)]")
        f = triple_to_complex_form(*(parse_poly(s) for s in ("-x", "-y", "x")))
        for g in sg.group.elements():
            assert act_on_form(g, sg.eta_value(g), f) == f

    def test_left_action_law(self):
        els = GroupSpec.dihedral(4).elements()
        f = ComplexMapForm(z * z + zb * zb, z**3 * GaussianRational(1, 2) + zb * I)
        for a, b in itertools.product(els, repeat=2):
            assert act_on_form(a, 1, act_on_form(b, 1, f)) == act_on_form(a * b, 1, f)

    def test_matches_matrix_conjugation(self):
        # eta g B(g^-1 p) g^T with B the real matrix of the form
        from bdesym import complex_form_to_triple
        from conftest import field

        f = triple_to_complex_form(*(parse_poly(s) for s in ("x^2 - y", "x*y + 1", "y^3")))
        for g in GroupSpec.dihedral(4).elements():
            out = complex_form_to_triple(act_on_form(g, -1, f))
            G = g.matrix()
            p = np.array([[0.4, -0.3], [1.2, 0.5]])
            q = p @ np.linalg.inv(G).T
            want = -np.einsum("ij,njk,lk->nil", G, field(complex_form_to_triple(f))(q[:, 0], q[:, 1]), G)
            assert np.allclose(field(out)(p[:, 0], p[:, 1]), want)


class TestSyntax:
    @pytest.mark.parametrize("text", ["Z3", "Z6[Z3]", "D6[D3(kx)]", "Z2[1]", "Z2xZ2[Z2(-I)]", "O2[SO2]",
                                      "SO2", "O2", "Z2xZ2", "D5", "D4(rot)", "Z2(-I)", "Z2xZ2[Z2(ky)]"])
    def test_round_trip(self, text):
        sg = parse_group(text)
        assert parse_group(format_symmetry_group(sg)) == sg

    def test_bare_z2_is_reflection(self):
        assert parse_group("Z2").group == GroupSpec.dihedral(1, "kx")

    def test_klein_aliases(self):
        assert parse_group("D2").group == parse_group("Z2xZ2").group

    @pytest.mark.parametrize("bad", ["Q8", "D", "Z3[", "Z3(kx)", "SO2[1]", "Z6[Z4]"])
    def test_rejects(self, bad):
        with pytest.raises((GroupSyntaxError, NotAdmissible)):
            parse_group(bad)
