"""Generators of modules of equivariant quadratic forms.

Forms are handled in complex coordinates as ``w -> alpha w + beta conj(w)``.
The pipeline starts from a catalog group (trivial, Z_n or SO2), extends by an
element ``delta`` outside the current subgroup with the Reynolds projections,
and finally prunes the generator list by exact degree-wise linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    I,
    ComplexMapForm,
    ComplexPoly,
    GaussianRational,
    RealPoly,
    complex_form_to_triple,
    complex_to_real,
    real_to_complex,
    triple_to_complex_form,
)
from .equivariance import check_form_equivariance
from .errors import NotAdmissible, NotExactlyRepresentable, NotInPlusModule
from .groups import (
    CYCLIC,
    DIHEDRAL,
    O2,
    SO2,
    EtaSpec,
    GroupElement,
    GroupSpec,
    SymmetryGroup,
    act_on_complex_poly,
    pullback_form,
    unit_root,
    unit_sign,
)
from .linalg import Echelon, nullspace

HALF = Fraction(1, 2)
_Z = ComplexPoly.z()
_ZB = ComplexPoly.zb()
_ONE = ComplexPoly.const(1)
_NIL = ComplexPoly.zero()

Triple = Tuple[RealPoly, RealPoly, RealPoly]


def _w(alpha: ComplexPoly) -> ComplexMapForm:
    return ComplexMapForm(alpha, _NIL)


def _wb(beta: ComplexPoly) -> ComplexMapForm:
    return ComplexMapForm(_NIL, beta)


# Hilbert bases ------------------------------------------------------------

@dataclass(frozen=True)
class HilbertBasis:
    group: GroupSpec
    invariants: Tuple[ComplexPoly, ...]

    def real(self) -> List[RealPoly]:
        return [complex_to_real(u) for u in self.invariants]

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.real()) + "}"


def _mirror_coefficient(u: GaussianRational) -> GaussianRational:
    """A nonzero c with conj(c) = c*u, for a unit u in {1, i, -1, -i}."""
    return {
        GaussianRational(1): GaussianRational(1),
        GaussianRational(-1): I,
        I: GaussianRational(1, -1),
        -I: GaussianRational(1, 1),
    }[u]


def hilbert_basis(g: GroupSpec) -> HilbertBasis:
    x, y = RealPoly.x(), RealPoly.y()

    def real(*ps):
        return HilbertBasis(g, tuple(real_to_complex(p) for p in ps))

    zz = _Z * _ZB
    if not g.is_finite:
        return HilbertBasis(g, (zz,))
    if g.kind == CYCLIC:
        if g.n == 1:
            return real(x, y)
        if g.n == 2:
            return real(x * x, x * y, y * y)
        zn, zbn = _Z ** g.n, _ZB ** g.n
        return HilbertBasis(g, (zz, zn + zbn, (zn - zbn) * I))
    if g.n == 1 and g.phi0 == 0:
        return real(x, y * y)
    if g.n == 1 and g.phi0 == 1:
        return real(y, x * x)
    if g.n == 2 and g.phi0 == 0:
        return real(x * x, y * y)
    # reflection z -> e z̄ fixes c z^n + conj(c) z̄^n exactly when conj(c) = c e^n
    c = _mirror_coefficient(unit_root(g.phi0 * g.n))
    lead = ComplexPoly.monomial(g.n, 0, c) + ComplexPoly.monomial(0, g.n, c.conjugate())
    if g.n == 1:
        return HilbertBasis(g, (lead, (lead - ComplexPoly.monomial(1, 0, c * 2)) ** 2))
    return HilbertBasis(g, (zz, lead))


@lru_cache(maxsize=None)
def _products(invariants: Tuple[ComplexPoly, ...], t: int) -> Tuple[ComplexPoly, ...]:
    """Every monomial in the (homogeneous) invariants of total degree exactly t."""
    if t < 0:
        return ()
    degs = [u.degree() for u in invariants]
    out: List[ComplexPoly] = []

    def walk(i, left, acc):
        if i == len(invariants):
            if left == 0:
                out.append(acc)
            return
        while left >= 0:
            walk(i + 1, left, acc)
            acc = acc * invariants[i]
            left -= degs[i]

    walk(0, t, _ONE)
    return tuple(out)


def invariant_monomials(basis: HilbertBasis, t: int) -> Tuple[ComplexPoly, ...]:
    return _products(basis.invariants, t)


# generator sets -----------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSet:
    target_group: SymmetryGroup
    generators: Tuple[ComplexMapForm, ...]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def triples(self) -> List[Triple]:
        return [complex_form_to_triple(f) for f in self.generators]


def trivial_generators() -> GeneratorSet:
    one, nil = RealPoly.const(1), RealPoly.zero()
    units = [(one, nil, nil), (nil, one, nil), (nil, nil, one)]
    return GeneratorSet(
        SymmetryGroup(GroupSpec.trivial()), tuple(triple_to_complex_form(*u) for u in units)
    )


def so2_generators() -> GeneratorSet:
    z2 = _Z ** 2
    return GeneratorSet(SymmetryGroup(GroupSpec.so2()), (_w(_ONE), _wb(z2), _wb(z2 * I)))


def zn_generators(n: int) -> GeneratorSet:
    """``w, z^2 w̄, i z^2 w̄, z̄^(n-2) w̄, i z̄^(n-2) w̄`` for Z_n, n >= 2."""
    if n < 2:
        raise ValueError("zn_generators needs n >= 2")
    z2, tail = _Z ** 2, _ZB ** (n - 2)
    forms = (_w(_ONE), _wb(z2), _wb(z2 * I), _wb(tail), _wb(tail * I))
    return GeneratorSet(SymmetryGroup(GroupSpec.cyclic(n)), forms)


# Reynolds projections -----------------------------------------------------

def is_invariant(f: ComplexPoly, sg: SymmetryGroup) -> bool:
    """``f o g = eta(g) f`` on a generating set (``eta`` twisted invariance)."""
    g = sg.group
    if not g.is_finite and any(j != k for j, k in f.terms):
        return False
    try:
        for el in g.generators():
            if act_on_complex_poly(el, f) != f * sg.eta_value(el):
                return False
    except NotExactlyRepresentable:
        return False
    return True


def _check_delta(plus: GroupSpec, delta: GroupElement) -> None:
    if plus.contains(delta):
        raise NotAdmissible(f"{delta} lies in the subgroup; it cannot split the cosets")


def _project(f: ComplexPoly, plus: GroupSpec, delta: GroupElement, sign: int) -> ComplexPoly:
    _check_delta(plus, delta)
    if not is_invariant(f, SymmetryGroup(plus)):
        raise NotInPlusModule(f"{f} is not invariant under the subgroup")
    moved = act_on_complex_poly(delta, f)
    return (f + moved) * HALF if sign == 1 else (f - moved) * HALF


def reynolds_R(f: ComplexPoly, plus: GroupSpec, delta: GroupElement) -> ComplexPoly:
    return _project(f, plus, delta, 1)


def reynolds_S(f: ComplexPoly, plus: GroupSpec, delta: GroupElement) -> ComplexPoly:
    return _project(f, plus, delta, -1)


def _project_form(g: ComplexMapForm, plus: GroupSpec, delta: GroupElement, sign: int) -> ComplexMapForm:
    _check_delta(plus, delta)
    g = g.symmetrized()
    if not check_form_equivariance(g, SymmetryGroup(plus)):
        raise NotInPlusModule("form is not equivariant under the subgroup")
    moved = pullback_form(delta, g)
    return (g + moved if sign == 1 else g - moved).scale(HALF)


def reynolds_R_form(g: ComplexMapForm, plus: GroupSpec, delta: GroupElement) -> ComplexMapForm:
    return _project_form(g, plus, delta, 1)


def reynolds_S_form(g: ComplexMapForm, plus: GroupSpec, delta: GroupElement) -> ComplexMapForm:
    return _project_form(g, plus, delta, -1)


# Algorithm 3.1 and the reflection closure ---------------------------------

def default_delta(group: GroupSpec, plus: GroupSpec) -> GroupElement:
    """The fixed coset representative used for each extension step."""
    if group.has_reflections and not plus.has_reflections:
        delta = GroupElement.reflection(group.phi0)
    elif plus.has_reflections and group.n == 2:
        delta = GroupElement.reflection(plus.phi0 + 1)
    else:
        delta = GroupElement.rotation(Fraction(2, group.n))
    if not group.contains(delta) or plus.contains(delta):
        raise NotAdmissible(f"no coset representative for {group} over {plus}")
    return delta


def lifted_products(
    basis: HilbertBasis, gens: GeneratorSet, delta: GroupElement
) -> List[ComplexMapForm]:
    """The list ``H_ij = ũ_i H_j`` with ``ũ_0 = 1`` and ``ũ_i = S(u_i)``."""
    plus = basis.group
    tilde = [_ONE] + [reynolds_S(u, plus, delta) for u in basis.invariants]
    return [h.scale(u) for u in tilde if u for h in gens.generators]


def algorithm_3_1(
    group: GroupSpec,
    eta: EtaSpec,
    basis: HilbertBasis,
    gens: GeneratorSet,
    delta: Optional[GroupElement] = None,
) -> GeneratorSet:
    """Generators of the eta-twisted module from those of ``ker eta``."""
    if eta.is_trivial:
        raise NotAdmissible("the algorithm needs a nontrivial eta")
    plus = eta.kernel
    if basis.group != plus:
        raise ValueError("the Hilbert basis must belong to ker eta")
    delta = delta or default_delta(group, plus)
    out = []
    for h in lifted_products(basis, gens, delta):
        s = reynolds_S_form(h, plus, delta)
        if not s.is_zero():
            out.append(s)
    return GeneratorSet(SymmetryGroup(group, eta), tuple(out))


def reflection_closure(
    step3: Sequence[ComplexMapForm],
    group: GroupSpec,
    plus: GroupSpec,
    delta: Optional[GroupElement] = None,
) -> GeneratorSet:
    """Apply ``R⃗`` to the lifted products; the result generates the Γ-module."""
    delta = delta or default_delta(group, plus)
    out = []
    for h in step3:
        r = reynolds_R_form(h, plus, delta)
        if not r.is_zero():
            out.append(r)
    return GeneratorSet(SymmetryGroup(group), tuple(out))


# pruning ------------------------------------------------------------------

def form_vector(f: ComplexMapForm) -> Dict[tuple, Fraction]:
    """Real coordinates of a symmetrized form: (slot, j, k, re/im part)."""
    v = {}
    for slot, poly in (("a", f.alpha), ("b", f.beta)):
        for (j, k), c in poly.terms.items():
            if c.re:
                v[(slot, j, k, 0)] = c.re
            if c.im:
                v[(slot, j, k, 1)] = c.im
    return v


def vector_form(v: Dict[tuple, Fraction]) -> ComplexMapForm:
    acc = {"a": {}, "b": {}}
    for (slot, j, k, part), c in v.items():
        prev = acc[slot].get((j, k), GaussianRational(0))
        acc[slot][(j, k)] = prev + (GaussianRational(0, c) if part else GaussianRational(c))
    return ComplexMapForm(ComplexPoly(acc["a"]), ComplexPoly(acc["b"]))


def _sparsify(v: dict, pool: List[dict]) -> dict:
    """Greedily subtract pool elements while that shrinks the support."""
    improved = True
    while improved and v:
        improved = False
        for b in pool:
            for key in sorted(v.keys() & b.keys()):
                c = v[key] / b[key]
                cand = {k: v.get(k, 0) - c * b.get(k, 0) for k in v.keys() | b.keys()}
                cand = {k: x for k, x in cand.items() if x}
                if len(cand) < len(v):
                    v, improved = cand, True
                    break
            if improved:
                break
    return v


def _multiples(chosen: List[ComplexMapForm], basis: HilbertBasis, t: int) -> List[ComplexMapForm]:
    return [
        f.scale(m)
        for f in chosen
        for m in invariant_monomials(basis, t - f.degree())
    ]


def _proportional(u: dict, v: dict) -> bool:
    if u.keys() != v.keys() or not u:
        return False
    k0 = next(iter(u))
    r = u[k0] / v[k0]
    return all(u[k] == r * v[k] for k in u)


def triple_vector(f: ComplexMapForm) -> Dict[tuple, Fraction]:
    """Real coordinates of the (a, b, c) entries: (slot, x-exponent, y-exponent)."""
    v = {}
    for slot, p in enumerate(complex_form_to_triple(f)):
        for (ex, ey), c in p.terms.items():
            v[(slot, ex, ey)] = c
    return v


def vector_triple_form(v: Dict[tuple, Fraction]) -> ComplexMapForm:
    acc = [{}, {}, {}]
    for (slot, ex, ey), c in v.items():
        acc[slot][(ex, ey)] = c
    return triple_to_complex_form(*(RealPoly(t) for t in acc))


def _normalize_real(v: dict) -> dict:
    lead = v[min(v, key=lambda k: (k[0], -(k[1] + k[2]), -k[1]))]
    return {k: c / lead for k, c in v.items()}


def _prune(gs: GeneratorSet, bound: Optional[int], drop_redundant: bool) -> GeneratorSet:
    g = gs.target_group.group
    basis = hilbert_basis(g)
    # groups without irrational rotations read best in x, y; the rest in z, zb
    real = g.is_finite and g.n <= 2
    to_vec = triple_vector if real else form_vector

    def finish(v):
        if real:
            return vector_triple_form(_normalize_real(v))
        return vector_form(v).normalized()

    forms = [f.symmetrized() for f in gs.generators]
    forms = [f for f in forms if not f.is_zero()]
    for f in forms:
        if not (f.alpha + f.beta).is_homogeneous() or (
            f.alpha and f.beta and f.alpha.degree() != f.beta.degree()
        ):
            raise ValueError(f"generator {f} is not homogeneous")
    forms.sort(key=ComplexMapForm.degree)
    if bound is None:
        bound = max((f.degree() for f in forms), default=0)
    chosen: List[ComplexMapForm] = []
    for f in forms:
        t = f.degree()
        if t > bound:
            chosen.append(finish(to_vec(f)))
            continue
        pool = [to_vec(p) for p in _multiples(chosen, basis, t)]
        v = to_vec(f)
        if drop_redundant and Echelon(pool).contains(v):
            continue
        v = _sparsify(v, pool)
        if not v or any(_proportional(v, p) for p in pool):
            continue
        chosen.append(finish(v))
    # later generators may simplify earlier ones of the same degree
    changed = True
    while changed:
        changed = False
        for i, f in enumerate(chosen):
            others = chosen[:i] + chosen[i + 1:]
            pool = [to_vec(p) for p in _multiples(others, basis, f.degree())]
            v = _sparsify(to_vec(f), pool)
            if len(v) < len(to_vec(f)):
                chosen[i] = finish(v)
                changed = True
    return GeneratorSet(gs.target_group, tuple(chosen))


def reduce_generators(gs: GeneratorSet) -> GeneratorSet:
    """Light clean-up: sparsify against invariant multiples of earlier
    generators, drop zeros and anything that became a single multiple."""
    return _prune(gs, None, drop_redundant=False)


def simplify_generators(gs: GeneratorSet, degree_bound: Optional[int] = None) -> GeneratorSet:
    """Drop every generator (up to ``degree_bound``) that lies in the module
    generated by lower or equal degree ones, then sparsify the survivors."""
    return _prune(gs, degree_bound, drop_redundant=True)


# routes to each group -----------------------------------------------------

def extension_subgroup(sg: SymmetryGroup) -> Optional[GroupSpec]:
    """The index-two subgroup whose generators are extended, or None for a catalog group."""
    g = sg.group
    if not sg.eta.is_trivial:
        return sg.eta.kernel
    if g.kind == O2:
        return GroupSpec.so2()
    if g.kind == DIHEDRAL:
        if g.n == 2 and g.phi0 == 0:
            return GroupSpec.dihedral(1, "kx")
        return GroupSpec.cyclic(g.n)
    return None


def equivariant_generators(sg: SymmetryGroup) -> GeneratorSet:
    """Unpruned generator set of the module of ``sg``-equivariant forms."""
    g = sg.group
    plus = extension_subgroup(sg)
    if plus is None:
        if g.kind == SO2:
            return so2_generators()
        if g.n == 1:
            return trivial_generators()
        return zn_generators(g.n)
    inner = simplify_generators(equivariant_generators(SymmetryGroup(plus)))
    basis = hilbert_basis(plus)
    delta = default_delta(g, plus)
    if sg.eta.is_trivial:
        return reflection_closure(lifted_products(basis, inner, delta), g, plus, delta)
    return algorithm_3_1(g, sg.eta, basis, inner, delta)


@dataclass(frozen=True)
class GeneralForm:
    group: SymmetryGroup
    basis: HilbertBasis
    generators: Tuple[ComplexMapForm, ...]
    rows: Tuple[Triple, ...] = field(default=())

    def lines(self) -> List[str]:
        return [f"a={a}; b={b}; c={c}" for a, b, c in self.rows]

    def __str__(self):
        return "\n".join(self.lines())


def general_form(sg: SymmetryGroup) -> GeneralForm:
    gens = simplify_generators(equivariant_generators(sg))
    return GeneralForm(
        sg,
        hilbert_basis(sg.group),
        gens.generators,
        tuple(complex_form_to_triple(f) for f in gens.generators),
    )


# degree-bounded oracle ----------------------------------------------------

def _unit_triples(t: int):
    zero = RealPoly.zero()
    for slot in range(3):
        for ex in range(t + 1):
            mono = RealPoly.monomial(ex, t - ex)
            trip = [zero, zero, zero]
            trip[slot] = mono
            yield (slot, ex), tuple(trip)


def _rotation_survives(d: int, g: GroupSpec, eta_r: int) -> bool:
    if not g.is_finite:
        return d == 0
    if g.n == 1:
        return True
    # rotation by 2pi/n multiplies z^j zb^k by e^{2 pi i d/n}
    return unit_sign(Fraction(2 * d, g.n)) == eta_r


def _mirror(rho: GroupElement, f: ComplexMapForm) -> ComplexMapForm:
    """``rho^{-1} f(rho z) rho`` for the reflection ``w -> e conj(w)``:
    alpha becomes conj(alpha o rho) and beta becomes e^2 conj(beta o rho)."""
    e2 = unit_root(2 * rho.angle)
    a = act_on_complex_poly(rho, f.alpha).conj()
    b = act_on_complex_poly(rho, f.beta).conj() * e2
    return ComplexMapForm(a, b)


def homogeneous_equivariants(sg: SymmetryGroup, t: int) -> List[Triple]:
    """Basis of equivariant triples whose entries are homogeneous of degree t,
    solved directly from the coefficient constraints."""
    g = sg.group
    cols, forms = [], {}
    for key, trip in _unit_triples(t):
        cols.append(key)
        forms[key] = triple_to_complex_form(*trip)
    eta_r = 1
    if g.is_finite and g.n > 1:
        eta_r = sg.eta_value(GroupElement.rotation(Fraction(2, g.n)))
    rows: List[dict] = []

    def add(keyed: Dict[tuple, Dict[tuple, Fraction]]):
        rows.extend(r for r in keyed.values() if r)

    # rotation congruences: a coefficient with the wrong phase must vanish
    dead: Dict[tuple, Dict[tuple, Fraction]] = {}
    survivors: Dict[tuple, ComplexMapForm] = {}
    for u, f in forms.items():
        kept = {"a": {}, "b": {}}
        for slot, poly, shift in (("a", f.alpha, 0), ("b", f.beta, 2)):
            for (j, k), c in poly.terms.items():
                if _rotation_survives(j - k - shift, g, eta_r):
                    kept[slot][(j, k)] = c
                    continue
                for part, val in ((0, c.re), (1, c.im)):
                    if val:
                        dead.setdefault((slot, j, k, part), {})[u] = val
        survivors[u] = ComplexMapForm(ComplexPoly(kept["a"]), ComplexPoly(kept["b"]))
    add(dead)

    if g.has_reflections:
        rho = GroupElement.reflection(g.phi0)
        eta_f = sg.eta_value(rho)
        eqs: Dict[tuple, Dict[tuple, Fraction]] = {}
        for u, f in survivors.items():
            diff = form_vector(_mirror(rho, f) - f.scale(eta_f))
            for key, val in diff.items():
                eqs.setdefault(key, {})[u] = val
        add(eqs)

    out = []
    for vec in nullspace(rows, cols):
        acc = [RealPoly.zero()] * 3
        for (slot, ex), c in vec.items():
            acc[slot] = acc[slot] + RealPoly.monomial(ex, t - ex, c)
        out.append(tuple(acc))
    return out


def degree_bounded_equivariants(sg: SymmetryGroup, d: int) -> List[Triple]:
    """Basis of equivariant triples with polynomial entries of degree <= d."""
    out = []
    for t in range(d + 1):
        out.extend(homogeneous_equivariants(sg, t))
    return out


def module_space(gens: Sequence[ComplexMapForm], basis: HilbertBasis, t: int) -> Echelon:
    """Span of ``m g`` at homogeneous degree t (m a monomial in the invariants)."""
    homog = []
    for f in gens:
        f = f.symmetrized()
        d = f.degree()
        if d <= t:
            homog.append(f)
    return Echelon(form_vector(p) for p in _multiples(homog, basis, t))


def oracle_space(sg: SymmetryGroup, t: int) -> Echelon:
    return Echelon(form_vector(triple_to_complex_form(*trip)) for trip in homogeneous_equivariants(sg, t))


def same_space(a: Echelon, b: Echelon) -> bool:
    return a.rank == b.rank and all(b.contains(r) for _, r in a.rows)


def completeness_report(sg: SymmetryGroup, gens: Sequence[ComplexMapForm], d: int) -> Dict[int, Tuple[int, int]]:
    """Per degree, ``(module rank, oracle rank)`` where the spans differ."""
    basis = hilbert_basis(sg.group)
    bad = {}
    for t in range(d + 1):
        mine, truth = module_space(gens, basis, t), oracle_space(sg, t)
        if not same_space(mine, truth):
            bad[t] = (mine.rank, truth.rank)
    return bad


# table comparison ---------------------------------------------------------

@dataclass
class TableComparison:
    row: str
    n: Optional[int]
    bound: int
    emitted: List[Triple]
    table: List[Triple]
    matches: Dict[int, int]
    unmatched: List[int]
    module_mismatch: Dict[int, Tuple[int, int]]
    oracle_mismatch: Dict[int, Tuple[int, int]]
    ok: bool

    def to_dict(self) -> dict:
        def fmt(t):
            return [str(p) for p in t]

        return {
            "row": self.row,
            "n": self.n,
            "degree_bound": self.bound,
            "ok": self.ok,
            "emitted": [fmt(t) for t in self.emitted],
            "table": [fmt(t) for t in self.table],
            "matches": {str(k): v for k, v in self.matches.items()},
            "unmatched": self.unmatched,
            "module_mismatch": {str(k): list(v) for k, v in self.module_mismatch.items()},
            "oracle_mismatch": {str(k): list(v) for k, v in self.oracle_mismatch.items()},
        }


def compare_to_table(sg: SymmetryGroup) -> TableComparison:
    from .table import find_row

    row, n = find_row(sg)
    bound = 2 * (n or 2) + 4
    table_forms = [triple_to_complex_form(*t) for t in row.triples(n)]
    emitted = general_form(sg)
    tvecs = [form_vector(f) for f in table_forms]
    matches, unmatched, used = {}, [], set()
    for i, f in enumerate(emitted.generators):
        v = form_vector(f)
        hit = next((j for j, tv in enumerate(tvecs) if j not in used and _proportional(v, tv)), None)
        if hit is None:
            unmatched.append(i)
        else:
            used.add(hit)
            matches[i] = hit
    basis = hilbert_basis(sg.group)
    module_bad, oracle_bad = {}, {}
    for t in range(bound + 1):
        mine = module_space(emitted.generators, basis, t)
        theirs = module_space(table_forms, basis, t)
        if not same_space(mine, theirs):
            module_bad[t] = (mine.rank, theirs.rank)
        truth = oracle_space(sg, t)
        if not same_space(theirs, truth):
            oracle_bad[t] = (theirs.rank, truth.rank)
    ok = not unmatched and not module_bad and not oracle_bad
    return TableComparison(
        row.key, n, bound, list(emitted.rows), row.triples(n), matches, unmatched, module_bad, oracle_bad, ok
    )
