"""Compact subgroups of O(2), their index-two kernels, and exact actions.

Angles are kept as rationals in units of pi.  A rotation by ``t`` is
``z -> e^{i pi t} z``; a reflection with parameter ``phi`` is
``z -> e^{i pi phi} conj(z)`` (its mirror line makes angle ``pi*phi/2``
with the x-axis, so ``phi = 0`` is kappa_x and ``phi = 1`` is kappa_y).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .algebra import ComplexMapForm, ComplexPoly, GaussianRational
from .errors import (
    InfiniteGroup,
    NotAdmissible,
    NotExactlyRepresentable,
    NotIndexTwo,
    NotInGroup,
    NotNormal,
)

ROTATION = "rotation"
REFLECTION = "reflection"

_UNITS = {
    0: GaussianRational(1, 0),
    1: GaussianRational(0, 1),
    2: GaussianRational(-1, 0),
    3: GaussianRational(0, -1),
}


def _mod2(t) -> Fraction:
    t = Fraction(t)
    return t - 2 * math.floor(t / 2)


def unit_root(t) -> GaussianRational:
    """``exp(i*pi*t)`` exactly, provided it is one of 1, i, -1, -i."""
    t = Fraction(t)
    twice = 2 * t
    if twice.denominator != 1:
        raise NotExactlyRepresentable(f"exp(i*pi*{t}) is not in Q[i]")
    return _UNITS[twice.numerator % 4]


def unit_sign(t) -> Optional[int]:
    """``exp(i*pi*t)`` if it is +1 or -1, otherwise None."""
    t = Fraction(t)
    if t.denominator != 1:
        return None
    return 1 if t.numerator % 2 == 0 else -1


@dataclass(frozen=True)
class GroupElement:
    kind: str
    angle: Fraction

    def __post_init__(self):
        if self.kind not in (ROTATION, REFLECTION):
            raise ValueError(f"unknown element kind {self.kind!r}")
        object.__setattr__(self, "angle", _mod2(self.angle))

    @classmethod
    def rotation(cls, t) -> "GroupElement":
        return cls(ROTATION, Fraction(t))

    @classmethod
    def reflection(cls, phi) -> "GroupElement":
        return cls(REFLECTION, Fraction(phi))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(ROTATION, Fraction(0))

    @property
    def is_rotation(self) -> bool:
        return self.kind == ROTATION

    def det(self) -> int:
        return 1 if self.is_rotation else -1

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        """Composition ``self o other`` (other acts first)."""
        a, b = self.angle, other.angle
        if self.is_rotation and other.is_rotation:
            return GroupElement(ROTATION, a + b)
        if self.is_rotation:
            return GroupElement(REFLECTION, a + b)
        if other.is_rotation:
            return GroupElement(REFLECTION, a - b)
        return GroupElement(ROTATION, a - b)

    def inverse(self) -> "GroupElement":
        if self.is_rotation:
            return GroupElement(ROTATION, -self.angle)
        return self

    def matrix(self) -> np.ndarray:
        th = math.pi * float(self.angle)
        c, s = math.cos(th), math.sin(th)
        if self.is_rotation:
            return np.array([[c, -s], [s, c]])
        return np.array([[c, s], [s, -c]])

    def __str__(self):
        if self.is_rotation:
            return "id" if self.angle == 0 else f"rot({self.angle}*pi)"
        if self.angle == 0:
            return "kx"
        if self.angle == 1:
            return "ky"
        return f"ref({self.angle}*pi)"


CYCLIC, DIHEDRAL, SO2, O2 = "cyclic", "dihedral", "SO2", "O2"


@dataclass(frozen=True)
class GroupSpec:
    """One compact subgroup of O(2).

    ``phi0`` is the reflection parameter of a distinguished reflection; a
    dihedral group holds the reflections ``phi0 + 2k/n``.  It is stored
    reduced into ``[0, 2/n)``.
    """

    kind: str
    n: int = 1
    phi0: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if self.kind not in (CYCLIC, DIHEDRAL, SO2, O2):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind in (CYCLIC, DIHEDRAL):
            if self.n < 1:
                raise ValueError("group order parameter must be >= 1")
        else:
            object.__setattr__(self, "n", 0)
        if self.kind == DIHEDRAL:
            period = Fraction(2, self.n)
            p = Fraction(self.phi0)
            object.__setattr__(self, "phi0", p - period * math.floor(p / period))
        elif self.kind == O2:
            object.__setattr__(self, "phi0", Fraction(0))
        else:
            object.__setattr__(self, "phi0", Fraction(0))

    # constructors -----------------------------------------------------
    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls(CYCLIC, n)

    @classmethod
    def trivial(cls) -> "GroupSpec":
        return cls(CYCLIC, 1)

    @classmethod
    def dihedral(cls, n: int, axis="kx") -> "GroupSpec":
        if axis == "kx":
            phi0 = Fraction(0)
        elif axis == "ky":
            phi0 = Fraction(1)
        elif axis in ("rotated", "rot"):
            phi0 = Fraction(1, n)
        else:
            phi0 = Fraction(axis)
        return cls(DIHEDRAL, n, phi0)

    @classmethod
    def klein_four(cls) -> "GroupSpec":
        return cls.dihedral(2, "kx")

    @classmethod
    def so2(cls) -> "GroupSpec":
        return cls(SO2)

    @classmethod
    def o2(cls) -> "GroupSpec":
        return cls(O2)

    # structure --------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind in (CYCLIC, DIHEDRAL)

    @property
    def has_reflections(self) -> bool:
        return self.kind in (DIHEDRAL, O2)

    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteGroup(f"{self.kind} is infinite")
        return self.n * (2 if self.kind == DIHEDRAL else 1)

    def rotation_part(self) -> "GroupSpec":
        if self.kind == O2:
            return GroupSpec.so2()
        if self.kind == DIHEDRAL:
            return GroupSpec.cyclic(self.n)
        return self

    def contains(self, g: GroupElement) -> bool:
        if self.kind == O2:
            return True
        if self.kind == SO2:
            return g.is_rotation
        if g.is_rotation:
            return (g.angle * self.n / 2).denominator == 1
        if self.kind == CYCLIC:
            return False
        return ((g.angle - self.phi0) * self.n / 2).denominator == 1

    def elements(self) -> List[GroupElement]:
        if not self.is_finite:
            raise InfiniteGroup(f"{self.kind} has infinitely many elements")
        out = [GroupElement.rotation(Fraction(2 * k, self.n)) for k in range(self.n)]
        if self.kind == DIHEDRAL:
            out += [GroupElement.reflection(self.phi0 + Fraction(2 * k, self.n)) for k in range(self.n)]
        return out

    def generators(self) -> List[GroupElement]:
        """A finite generating set; for SO2/O2 only the reflection part."""
        gens = []
        if self.is_finite and self.n > 1:
            gens.append(GroupElement.rotation(Fraction(2, self.n)))
        if self.has_reflections:
            gens.append(GroupElement.reflection(self.phi0))
        return gens

    def is_subgroup_of(self, other: "GroupSpec") -> bool:
        if other.kind == O2:
            return True
        if other.kind == SO2:
            return not self.has_reflections
        if not self.is_finite:
            return False
        return all(other.contains(g) for g in self.elements())


@dataclass(frozen=True)
class EtaSpec:
    """A homomorphism onto {+1, -1} given by its kernel; None means eta = 1."""

    kernel: Optional[GroupSpec] = None

    @property
    def is_trivial(self) -> bool:
        return self.kernel is None


@dataclass(frozen=True)
class SymmetryGroup:
    group: GroupSpec
    eta: EtaSpec = field(default_factory=EtaSpec)

    @property
    def kernel(self) -> GroupSpec:
        return self.group if self.eta.is_trivial else self.eta.kernel

    def eta_value(self, g: GroupElement) -> int:
        return eta_value(self, g)

    def __str__(self):
        from .parsing import format_symmetry_group

        return format_symmetry_group(self)


def validate_eta(g: GroupSpec, kernel: Optional[GroupSpec]) -> EtaSpec:
    if kernel is None or kernel == g:
        return EtaSpec(None)
    if g.kind == SO2:
        raise NotAdmissible("SO2 is connected: only the trivial eta exists")
    if g.kind == O2:
        if kernel.kind == SO2:
            return EtaSpec(kernel)
        raise NotAdmissible("the only index-two closed subgroup of O2 is SO2")
    if not kernel.is_finite:
        raise NotAdmissible(f"{kernel.kind} is not a subgroup of a finite group")
    kel = kernel.elements()
    if not all(g.contains(k) for k in kel):
        raise NotAdmissible("kernel is not a subgroup of the group")
    if g.order() != 2 * kernel.order():
        raise NotIndexTwo(f"kernel has index {Fraction(g.order(), kernel.order())}, not 2")
    for a in g.elements():
        ai = a.inverse()
        for k in kel:
            if not kernel.contains(a * k * ai):
                raise NotNormal("kernel is not normal")
    return EtaSpec(kernel)


def eta_value(sg: SymmetryGroup, g: GroupElement) -> int:
    if not sg.group.contains(g):
        raise NotInGroup(f"{g} is not in the group")
    if sg.eta.is_trivial:
        return 1
    return 1 if sg.eta.kernel.contains(g) else -1


# actions ------------------------------------------------------------------

def act_rotation_on_complex_poly(g: GroupElement, f: ComplexPoly) -> ComplexPoly:
    """``f(e^{i t pi} z)``: the monomial ``z^j zb^k`` picks up ``e^{i t pi (j-k)}``."""
    if not g.is_rotation:
        raise ValueError("expected a rotation")
    return ComplexPoly._raw(
        {(j, k): c * unit_root(g.angle * (j - k)) for (j, k), c in f.terms.items()}
    )


def act_reflection_on_complex_poly(g: GroupElement, f: ComplexPoly) -> ComplexPoly:
    """``f(e^{i phi pi} zb)``: swaps the exponents and multiplies by a unit."""
    if g.is_rotation:
        raise ValueError("expected a reflection")
    return ComplexPoly._raw(
        {(k, j): c * unit_root(g.angle * (j - k)) for (j, k), c in f.terms.items()}
    )


def act_on_complex_poly(g: GroupElement, f: ComplexPoly) -> ComplexPoly:
    """Pull back ``f`` along ``g``, i.e. return ``f o g``."""
    if g.is_rotation:
        return act_rotation_on_complex_poly(g, f)
    return act_reflection_on_complex_poly(g, f)


def pullback_form(g: GroupElement, f: ComplexMapForm) -> ComplexMapForm:
    """``x -> g^{-1} f(g x) g``, the conjugacy pullback used by the Reynolds operators."""
    t = g.angle
    if g.is_rotation:
        alpha = {(j, k): c * unit_root(t * (j - k)) for (j, k), c in f.alpha.terms.items()}
        beta = {(j, k): c * unit_root(t * (j - k - 2)) for (j, k), c in f.beta.terms.items()}
    else:
        alpha = {(j, k): c.conjugate() * unit_root(t * (k - j)) for (j, k), c in f.alpha.terms.items()}
        beta = {(j, k): c.conjugate() * unit_root(t * (k - j + 2)) for (j, k), c in f.beta.terms.items()}
    return ComplexMapForm(ComplexPoly._raw(alpha), ComplexPoly._raw(beta))


def act_on_form(g: GroupElement, eta_val: int, f: ComplexMapForm) -> ComplexMapForm:
    """Left action ``x -> eta * g f(g^{-1} x) g^{-1}``; fixed points are the equivariants."""
    out = pullback_form(g.inverse(), f)
    return out if eta_val == 1 else -out
