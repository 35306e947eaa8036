"""Text front end: polynomial expressions and the ``G[kernel]`` group notation."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Optional

from .algebra import RealPoly
from .errors import GroupSyntaxError, NegativeExponent, PolySyntaxError, ZeroDenominator
from .groups import CYCLIC, DIHEDRAL, O2, SO2, GroupSpec, SymmetryGroup, validate_eta


class _PolyParser:
    """Recursive descent over

        poly   := ['-'|'+'] term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := base ('^' uint)?
        base   := 'x' | 'y' | NAME | ['-'] rational | '(' poly ')'
    """

    def __init__(self, text: str, env: Optional[Dict[str, RealPoly]] = None):
        self.text = text
        self.pos = 0
        self.env = env or {}

    def error(self, msg, cls=PolySyntaxError):
        raise cls(msg, self.pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an unsigned integer")
        self.pos = m.end()
        return int(m.group())

    def parse(self) -> RealPoly:
        p = self.poly()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def poly(self) -> RealPoly:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = self.term() * sign
        while self.peek() and self.peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> RealPoly:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> RealPoly:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "-":
                self.error("negative exponent", NegativeExponent)
            base = base ** self.uint()
        return base

    def base(self) -> RealPoly:
        ch = self.peek()
        if not ch:
            self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            inner = self.poly()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        negative = False
        if ch == "-":
            self.pos += 1
            if not self.peek().isdigit():
                self.error("a sign inside a product must precede a number")
            negative = True
        if self.peek().isdigit():
            num = self.uint() * (-1 if negative else 1)
            if self.peek() == "/":
                self.pos += 1
                den = self.uint()
                if den == 0:
                    self.error("zero denominator", ZeroDenominator)
                return RealPoly.const(Fraction(num, den))
            return RealPoly.const(num)
        m = re.compile(r"[A-Za-z_][A-Za-z_0-9]*").match(self.text, self.pos)
        if m:
            name = m.group()
            if name == "x":
                self.pos = m.end()
                return RealPoly.x()
            if name == "y":
                self.pos = m.end()
                return RealPoly.y()
            if name in self.env:
                self.pos = m.end()
                return self.env[name]
            self.error(f"unknown identifier {name!r}")
        self.error(f"unexpected {ch!r}")


def parse_poly(text: str, env: Optional[Dict[str, RealPoly]] = None) -> RealPoly:
    """Parse a polynomial in ``x, y``; explicit ``*`` between factors is required."""
    return _PolyParser(text, env).parse()


# groups -------------------------------------------------------------------

_ATOM = re.compile(
    r"^(?:(?P<triv>1)|(?P<so2>SO2)|(?P<o2>O2)|(?P<klein>Z2xZ2)"
    r"|(?P<z>Z)(?P<zn>\d+)(?:\((?P<zax>kx|ky|-I)\))?"
    r"|(?P<d>D)(?P<dn>\d+)(?:\((?P<dax>kx|ky|rot)\))?)$"
)


def _parse_atom(text: str, as_kernel: bool) -> GroupSpec:
    m = _ATOM.match(text.strip())
    if not m:
        raise GroupSyntaxError(f"cannot parse group {text!r}")
    if m.group("triv"):
        return GroupSpec.trivial()
    if m.group("so2"):
        return GroupSpec.so2()
    if m.group("o2"):
        return GroupSpec.o2()
    if m.group("klein"):
        return GroupSpec.klein_four()
    if m.group("z"):
        n = int(m.group("zn"))
        if n < 1:
            raise GroupSyntaxError("group order must be >= 1")
        ax = m.group("zax")
        if ax:
            if n != 2:
                raise GroupSyntaxError("axis qualifiers only apply to Z2")
            if ax == "-I":
                return GroupSpec.cyclic(2)
            return GroupSpec.dihedral(1, ax)
        if n == 2 and not as_kernel:
            # bare Z2 is generated by kappa_x
            return GroupSpec.dihedral(1, "kx")
        return GroupSpec.cyclic(n)
    n = int(m.group("dn"))
    if n < 1:
        raise GroupSyntaxError("group order must be >= 1")
    return GroupSpec.dihedral(n, m.group("dax") or "kx")


def parse_group(text: str) -> SymmetryGroup:
    """Parse ``Z6[Z3]``, ``D6[D3(kx)]``, ``Z2xZ2[Z2(-I)]``, ``O2[SO2]`` and friends."""
    s = text.replace(" ", "")
    m = re.match(r"^([^\[\]]+)(?:\[([^\[\]]+)\])?$", s)
    if not m:
        raise GroupSyntaxError(f"cannot parse group {text!r}")
    group = _parse_atom(m.group(1), as_kernel=False)
    kernel = _parse_atom(m.group(2), as_kernel=True) if m.group(2) is not None else None
    if kernel is not None and kernel == group:
        raise GroupSyntaxError("kernel equal to the group: omit the brackets for trivial eta")
    return SymmetryGroup(group, validate_eta(group, kernel))


def _axis_name(g: GroupSpec) -> str:
    reflections = {e.angle for e in g.elements() if not e.is_rotation}
    if 0 in reflections:
        return "kx"
    if 1 in reflections:
        return "ky"
    if g.phi0 == Fraction(1, g.n):
        return "rot"
    return f"axis={g.phi0}"


def format_group(g: GroupSpec, kernel_of: Optional[GroupSpec] = None) -> str:
    """Canonical text; ``kernel_of`` switches to the explicit kernel spelling."""
    if g.kind == SO2:
        return "SO2"
    if g.kind == O2:
        return "O2"
    if g.kind == CYCLIC:
        if g.n == 1:
            return "1"
        if g.n == 2 and (kernel_of is None or kernel_of.has_reflections):
            return "Z2(-I)"
        return f"Z{g.n}"
    ax = _axis_name(g)
    if g.n == 1:
        if ax == "kx" and kernel_of is None:
            return "Z2"
        return f"Z2({ax})"
    if g.n == 2 and ax == "kx" and kernel_of is None:
        return "Z2xZ2"
    if ax == "kx" and kernel_of is None:
        return f"D{g.n}"
    return f"D{g.n}({ax})"


def format_symmetry_group(sg: SymmetryGroup) -> str:
    head = format_group(sg.group)
    if sg.eta.is_trivial:
        return head
    return f"{head}[{format_group(sg.eta.kernel, kernel_of=sg.group)}]"
