"""BDE values, discriminants, exact equivariance checks and symmetry detection."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, List, Optional, Tuple

from .algebra import ComplexMapForm, GaussianRational, RealPoly, real_to_complex, triple_to_complex_form
from .errors import DegenerateBDE, NotExactlyRepresentable, NotMorse
from .groups import (
    _UNITS,
    GroupElement,
    GroupSpec,
    SymmetryGroup,
    act_on_form,
    act_reflection_on_complex_poly,
    pullback_form,
    unit_root,
    unit_sign,
    validate_eta,
)


@dataclass(frozen=True)
class BDE:
    """The equation ``a dy^2 + 2 b dx dy + c dx^2 = 0``; ``b`` is the half coefficient."""

    a: RealPoly
    b: RealPoly
    c: RealPoly

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, RealPoly):
                object.__setattr__(self, name, RealPoly.const(v))
        if self.a.is_zero() and self.b.is_zero() and self.c.is_zero():
            raise DegenerateBDE("a = b = c = 0 is not a binary differential equation")

    @classmethod
    def from_strings(cls, a: str, b: str, c: str) -> "BDE":
        from .parsing import parse_poly

        return cls(parse_poly(a), parse_poly(b), parse_poly(c))

    @classmethod
    def from_mapping(cls, doc: Dict[str, str]) -> "BDE":
        """Build from ``{"a", "b", "c"}``; ``b_total`` (the full middle coefficient) is halved."""
        from .parsing import parse_poly

        if "b" in doc and "b_total" in doc:
            raise ValueError("give either 'b' or 'b_total', not both")
        if "b_total" in doc:
            b = parse_poly(str(doc["b_total"])) * Fraction(1, 2)
        else:
            b = parse_poly(str(doc["b"]))
        return cls(parse_poly(str(doc["a"])), b, parse_poly(str(doc["c"])))

    @cached_property
    def complex_form(self) -> ComplexMapForm:
        return triple_to_complex_form(self.a, self.b, self.c)

    def triple(self) -> Tuple[RealPoly, RealPoly, RealPoly]:
        return self.a, self.b, self.c

    def swap_xy(self) -> "BDE":
        """The same equation after exchanging the roles of x and y."""
        return BDE(self.c.swap_xy(), self.b.swap_xy(), self.a.swap_xy())

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def discriminant(e: BDE) -> RealPoly:
    return e.b * e.b - e.a * e.c


def _exponent_differences(f: ComplexMapForm) -> List[int]:
    """``j-k`` over alpha terms and ``j-k-2`` over beta terms."""
    return [j - k for j, k in f.alpha.terms] + [j - k - 2 for j, k in f.beta.terms]


def _rotation_ok(diffs, n: Optional[int], eta_r: int) -> bool:
    if n is None:
        return all(d == 0 for d in diffs)
    return all(unit_sign(Fraction(2 * d, n)) == eta_r for d in diffs)


def _reflection_ok(f: ComplexMapForm, rho: GroupElement, eta: int) -> bool:
    try:
        g = pullback_form(rho, f)
    except NotExactlyRepresentable:
        return False
    return g == (f if eta == 1 else -f)


def check_form_equivariance(f: ComplexMapForm, sg: SymmetryGroup) -> bool:
    """Exact test of ``B(g p) = eta(g) g B(p) g^t`` on a generating set."""
    f = f.symmetrized()
    g = sg.group
    diffs = _exponent_differences(f)
    if not g.is_finite:
        if not _rotation_ok(diffs, None, 1):
            return False
    elif g.n > 1:
        rot = GroupElement.rotation(Fraction(2, g.n))
        if not _rotation_ok(diffs, g.n, sg.eta_value(rot)):
            return False
    if g.has_reflections:
        rho = GroupElement.reflection(g.phi0)
        return _reflection_ok(f, rho, sg.eta_value(rho))
    return True


def check_equivariance(e: BDE, sg: SymmetryGroup) -> bool:
    return check_form_equivariance(e.complex_form, sg)


def check_equivariance_elementwise(e: BDE, sg: SymmetryGroup) -> bool:
    """Element-by-element version for finite groups (slow path, used as a cross-check)."""
    f = e.complex_form
    for g in sg.group.elements():
        try:
            if act_on_form(g, sg.eta_value(g), f) != f:
                return False
        except NotExactlyRepresentable:
            return False
    return True


def discriminant_invariance(e: BDE, sg: SymmetryGroup) -> bool:
    """Whether ``delta o g = delta`` for every g in the group."""
    d = real_to_complex(discriminant(e))
    g = sg.group
    diffs = [j - k for j, k in d.terms]
    if not g.is_finite:
        if any(x != 0 for x in diffs):
            return False
    elif g.n > 1 and not _rotation_ok(diffs, g.n, 1):
        return False
    if g.has_reflections:
        try:
            return act_reflection_on_complex_poly(GroupElement.reflection(g.phi0), d) == d
        except NotExactlyRepresentable:
            return False
    return True


# detection ------------------------------------------------------------------

@dataclass
class DetectionReport:
    group: SymmetryGroup
    rotation_part: GroupSpec
    reflection_axes: List[Fraction]
    eta_assignment: Dict[str, int]
    discriminant_invariant: bool
    axis_offset: Fraction = field(default=Fraction(0))

    def to_dict(self) -> dict:
        return {
            "group": str(self.group),
            "rotation_part": _rotation_name(self.rotation_part),
            "reflection_params": [str(a) for a in self.reflection_axes],
            "eta": dict(self.eta_assignment),
            "discriminant_invariant": self.discriminant_invariant,
            "axis_offset": str(self.axis_offset),
        }


def _rotation_name(g: GroupSpec) -> str:
    return "SO2" if g.kind == "SO2" else f"Z{g.n}"


def _two_adic(d: int) -> int:
    return (d & -d).bit_length() - 1


def _unit_index(u: GaussianRational) -> Optional[int]:
    for s, v in _UNITS.items():
        if u == v:
            return s
    return None


def _reflection_solutions(f: ComplexMapForm, eta: int) -> Optional[List[Fraction]]:
    """Reflection parameters phi (in [0, 2)) with ``T_phi f = eta f``.

    Each coefficient ``c`` at exponent shift ``m`` demands
    ``e^{i pi phi m} = eta c / conj(c)``.  With rational ``phi`` the right side
    must be a fourth root of unity, so the candidates are finite.  Returns
    None when every shift is zero (then any phi works).
    """
    constraints = []
    for (j, k), c in f.alpha.terms.items():
        constraints.append((k - j, c))
    for (j, k), c in f.beta.terms.items():
        constraints.append((k - j + 2, c))
    pinned = None
    for m, c in constraints:
        u = (c * eta) / c.conjugate()
        s = _unit_index(u)
        if m == 0:
            if s != 0:
                return []
            continue
        if s is None:
            return []
        if pinned is None or abs(m) < abs(pinned[0]):
            pinned = (m, s)
    if pinned is None:
        return None
    m, s = pinned
    candidates = {(Fraction(s, 2) + 2 * l) / m for l in range(abs(m))}
    out = []
    for phi in candidates:
        phi = phi - 2 * math.floor(phi / 2)
        ok = True
        for mm, c in constraints:
            if mm == 0:
                continue
            try:
                if c.conjugate() * unit_root(phi * mm) != c * eta:
                    ok = False
                    break
            except NotExactlyRepresentable:
                ok = False
                break
        if ok:
            out.append(phi)
    return sorted(out)


def detect_symmetries(e: BDE) -> DetectionReport:
    """Largest ``Gamma_eta`` (up to rational-angle axes) under which ``e`` is equivariant.

    Rotations: by the exponent congruences only ``zeta^d = +-1`` constraints
    occur, so the rotation order is ``g = gcd(d)`` with eta = +1, or ``2g``
    with eta = -1 when every nonzero d shares one 2-adic valuation and no d
    vanishes.  Reflections: solved coefficient-wise, see
    ``_reflection_solutions``; an axis with irrational angle cannot match a
    Q[i] coefficient ratio unless that ratio is a fourth root of unity.
    """
    f = e.complex_form
    diffs = _exponent_differences(f)
    nonzero = [d for d in diffs if d != 0]
    sols = {eta: _reflection_solutions(f, eta) for eta in (1, -1)}

    if not nonzero:
        rot = GroupSpec.so2()
        if sols[1] is None or sols[1]:
            sg = SymmetryGroup(GroupSpec.o2())
            axes_eta = 1
        elif sols[-1] is None or sols[-1]:
            sg = SymmetryGroup(GroupSpec.o2(), validate_eta(GroupSpec.o2(), GroupSpec.so2()))
            axes_eta = -1
        else:
            sg = SymmetryGroup(rot)
            axes_eta = None
        eta_assign = {"rotations": 1}
        if axes_eta is not None:
            eta_assign["reflections"] = axes_eta
        return DetectionReport(sg, rot, [Fraction(0)] if axes_eta else [], eta_assign,
                               discriminant_invariance(e, sg))

    g = reduce(math.gcd, (abs(d) for d in nonzero))
    if 0 not in diffs and len({_two_adic(abs(d)) for d in nonzero}) == 1:
        n, eta_r = 2 * g, -1
    else:
        n, eta_r = g, 1
    rot = GroupSpec.cyclic(n)

    refl = [(phi, eta) for eta in (1, -1) for phi in (sols[eta] or [])]
    eta_assign = {}
    if n > 1:
        eta_assign[str(GroupElement.rotation(Fraction(2, n)))] = eta_r
    if not refl:
        kernel = GroupSpec.cyclic(n // 2) if eta_r == -1 else None
        sg = SymmetryGroup(rot, validate_eta(rot, kernel))
        axes: List[Fraction] = []
        offset = Fraction(0)
    else:
        period = Fraction(2, n)
        # the reflections form one coset of the rotations, so the smallest is the representative
        phi0 = min(phi for phi, _ in refl)
        eta0 = dict(refl)[phi0]
        assert phi0 < period and all(((phi - phi0) / period).denominator == 1 for phi, _ in refl)
        grp = GroupSpec(kind="dihedral", n=n, phi0=phi0)
        if eta_r == 1:
            kernel = None if eta0 == 1 else GroupSpec.cyclic(n)
        else:
            kernel = GroupSpec(kind="dihedral", n=n // 2, phi0=phi0 if eta0 == 1 else phi0 + period)
        sg = SymmetryGroup(grp, validate_eta(grp, kernel))
        axes = sorted(phi for phi, _ in refl)
        eta_assign[str(GroupElement.reflection(phi0))] = eta0
        offset = Fraction(0) if phi0 in (0, Fraction(1, n)) else phi0
    report = DetectionReport(sg, rot, axes, eta_assign, discriminant_invariance(e, sg), offset)
    assert check_equivariance(e, sg), "detected group failed the equivariance check"
    return report


# Morse-type discriminants --------------------------------------------------

def _linear(p: RealPoly) -> Tuple[Fraction, Fraction]:
    return p.coeff(1, 0), p.coeff(0, 1)


def morse_value(e: BDE) -> Fraction:
    a1, a2 = _linear(e.a)
    b1, b2 = _linear(e.b)
    c1, c2 = _linear(e.c)
    return (c2 * a1 - c1 * a2) ** 2 - 4 * (b2 * a1 - b1 * a2) * (c2 * b1 - c1 * b2)


def discriminant_two_jet(e: BDE) -> RealPoly:
    """Quadratic part of ``b^2 - ac`` built from the linear parts of a, b, c."""
    x, y = RealPoly.x(), RealPoly.y()
    a1, a2 = _linear(e.a)
    b1, b2 = _linear(e.b)
    c1, c2 = _linear(e.c)
    la, lb, lc = a1 * x + a2 * y, b1 * x + b2 * y, c1 * x + c2 * y
    return lb * lb - la * lc


MORSE_POINT_GROUPS = ("Z3", "Z6[Z3]", "D3", "D3[Z3]", "D6[D3(kx)]")
MORSE_LINES_GROUPS = ("Z2", "Z2[1]", "Z2xZ2[Z2(kx)]")


def morse_symmetry_candidates(e: BDE) -> List[SymmetryGroup]:
    """Possible nontrivial symmetry groups when the discriminant is of Morse type."""
    from .parsing import parse_group

    if morse_value(e) == 0:
        raise NotMorse("the linear part does not give a Morse discriminant")
    q = discriminant_two_jet(e)
    p, m, r = q.coeff(2, 0), q.coeff(1, 1), q.coeff(0, 2)
    names = MORSE_POINT_GROUPS if m * m - 4 * p * r < 0 else MORSE_LINES_GROUPS
    return [parse_group(s) for s in names]
