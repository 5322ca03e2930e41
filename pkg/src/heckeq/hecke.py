"""Hecke algebras p_H Q[G] p_H and equations for their isotypical pieces.

The basis is always ``q_i = (1/|H|) * sum of the double coset H x_i H``.
Structure constants are reported in that normalization;
:meth:`HeckeData.unnormalized_constants` and :meth:`HeckeData.mixed_constants`
convert to the coset-sum conventions found in some printed tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import Cyclotomic
from .chartab import (
    Character,
    CharacterTable,
    RationalCharacter,
    central_idempotent,
    char_on_coset_average,
    fixed_dim,
)
from .errors import InternalError, PreconditionError
from .groupalg import GroupAlgebraElement, averaging_idempotent, is_idempotent
from .permgrp import (
    CommonTransversal,
    DoubleCosetDecomposition,
    Permutation,
    PermGroup,
    double_cosets,
    is_two_sided_transversal,
)


@dataclass(frozen=True)
class HeckeData:
    group: PermGroup
    subgroup: PermGroup
    dc: DoubleCosetDecomposition
    basis: tuple
    structure_constants: tuple  # c[i][j][k] with q_i q_j = sum_k c[i][j][k] q_k

    @property
    def s(self) -> int:
        return len(self.basis)

    @property
    def unit(self) -> GroupAlgebraElement:
        return self.basis[0]

    def coordinates(self, alpha: GroupAlgebraElement) -> tuple:
        """Coefficients of ``alpha`` in the q-basis; it must be H-bi-invariant."""
        horder = self.subgroup.order
        out = []
        seen = 0
        for D in self.dc.cosets:
            vals = {alpha.coefficient(g) for g in D}
            if len(vals) != 1:
                raise InternalError("element is not constant on a double coset")
            v = vals.pop()
            out.append(v * horder)
            seen += len(D)
        if seen != self.group.order:
            raise InternalError("double cosets do not cover the group")
        return tuple(out)

    def element(self, coords: Sequence) -> GroupAlgebraElement:
        total = GroupAlgebraElement.zero(self.group)
        for c, q in zip(coords, self.basis):
            if c:
                total = total + q * Fraction(c)
        return total

    def product(self, i: int, j: int) -> tuple:
        return self.structure_constants[i][j]

    def is_commutative(self) -> bool:
        c = self.structure_constants
        return all(c[i][j] == c[j][i] for i in range(self.s) for j in range(self.s))

    def unnormalized_constants(self) -> tuple:
        """Constants for Q_i = sum of H_i: Q_i Q_j = sum_k |H| c_ijk Q_k."""
        h = self.subgroup.order
        return tuple(tuple(tuple(x * h for x in ck) for ck in row) for row in self.structure_constants)

    def mixed_constants(self) -> tuple:
        """Q_i Q_j written in the normalized basis: |H|^2 c_ijk."""
        h2 = self.subgroup.order ** 2
        return tuple(tuple(tuple(x * h2 for x in ck) for ck in row) for row in self.structure_constants)

    def masses(self) -> tuple:
        return tuple(q.mass() for q in self.basis)


def build_hecke(G: PermGroup, H: PermGroup, representatives: Sequence[Permutation] | None = None) -> HeckeData:
    dc = double_cosets(G, H, representatives)
    horder = H.order
    basis = tuple(GroupAlgebraElement.sum_of(G, sorted(D), Fraction(1, horder)) for D in dc.cosets)

    # the two expressions for q_i agree
    pH = averaging_idempotent(H, G)
    for x, k, q in zip(dc.representatives, dc.intersection_orders, basis):
        alt = pH * GroupAlgebraElement.delta(G, x) * pH * Fraction(horder, k)
        if alt != q:
            raise InternalError(f"q for representative {x} disagrees with (|H|/|H cap xHx^-1|) p_H x p_H")

    proto = HeckeData(G, H, dc, basis, ())
    s = len(basis)
    consts = tuple(tuple(proto.coordinates(basis[i] * basis[j]) for j in range(s)) for i in range(s))
    hd = HeckeData(G, H, dc, basis, consts)
    _check_structure(hd)
    return hd


def _check_structure(hd: HeckeData):
    s = hd.s
    c = hd.structure_constants
    for j in range(s):
        unit_vec = tuple(Fraction(int(k == j)) for k in range(s))
        if c[0][j] != unit_vec or c[j][0] != unit_vec:
            raise InternalError("q_1 is not a two-sided unit")
    for i in range(s):
        for j in range(s):
            for k in range(s):
                for l in range(s):
                    lhs = sum((c[i][j][m] * c[m][k][l] for m in range(s)), Fraction(0))
                    rhs = sum((c[j][k][m] * c[i][m][l] for m in range(s)), Fraction(0))
                    if lhs != rhs:
                        raise InternalError("structure constants are not associative")
    masses = hd.masses()
    for i in range(s):
        for j in range(s):
            if sum((c[i][j][k] * masses[k] for k in range(s)), Fraction(0)) != masses[i] * masses[j]:
                raise InternalError("coefficient mass is not multiplicative")


# ---------------------------------------------------------------------------
# induced representation


@dataclass(frozen=True)
class DecompositionEntry:
    character: RationalCharacter
    fixed_dim: int  # dim V^H for one complex constituent V
    multiplicity: Fraction  # a = dim V^H / s
    hecke_dim: int  # dim of the rational Hecke module: [K:Q] * s * dim V^H

    @property
    def present(self) -> bool:
        return self.fixed_dim > 0


@dataclass(frozen=True)
class InducedDecomposition:
    entries: tuple
    s: int

    @property
    def present(self) -> list[DecompositionEntry]:
        return [e for e in self.entries if e.present]

    def entry(self, label: str) -> DecompositionEntry:
        for e in self.entries:
            if e.character.label == label:
                return e
        raise KeyError(label)

    def algebra_dimension(self) -> int:
        """sum [K:Q] (dim V^H)^2, the Q-dimension of the Hecke algebra."""
        return sum(e.character.field_degree * e.fixed_dim ** 2 for e in self.entries)


def induced_decomposition(hd: HeckeData, rational_characters: Sequence[RationalCharacter]) -> InducedDecomposition:
    entries = []
    for rc in rational_characters:
        fd = int(fixed_dim(rc.representative, hd.subgroup))
        entries.append(
            DecompositionEntry(
                character=rc,
                fixed_dim=fd,
                multiplicity=Fraction(fd, rc.schur_index),
                hecke_dim=rc.field_degree * rc.schur_index * fd,
            )
        )
    dec = InducedDecomposition(tuple(entries), hd.s)
    complex_total = sum(rc.field_degree * e.fixed_dim ** 2 for rc, e in zip(rational_characters, entries))
    if complex_total != hd.s:
        raise InternalError(f"sum of (dim V^H)^2 is {complex_total} but there are {hd.s} double cosets")
    return dec


def permutation_character(G: PermGroup, H: PermGroup, g: Permutation) -> int:
    """Number of left cosets xH fixed by g."""
    hset = set(H.elements)
    # g xH = xH  iff  x^-1 g x in H; count x and divide by |H|
    return sum(1 for x in G.elements if x.inverse() * g * x in hset) // H.order


# ---------------------------------------------------------------------------
# characters on the Hecke algebra


def hecke_character_values(hd: HeckeData, chi) -> tuple:
    """chi(q_i) for every basis element."""
    return tuple(char_on_coset_average(chi, D, hd.subgroup.order) for D in hd.dc.cosets)


def _inverse_coset_values(hd: HeckeData, chi) -> tuple:
    h = hd.subgroup.order
    return tuple(char_on_coset_average(chi, (g.inverse() for g in D), h) for D in hd.dc.cosets)


def hecke_idempotent(hd: HeckeData, rc: RationalCharacter, check: bool = True) -> GroupAlgebraElement:
    """f = (dim V/|G|) sum_i |H cap x_i H x_i^-1| tr(chi_V(q_i)) q_i."""
    fd = fixed_dim(rc.representative, hd.subgroup)
    if fd == 0:
        raise PreconditionError(f"{rc.label} does not occur in the induced representation")
    G = hd.group
    traces = hecke_character_values(hd, rc)
    scale = Fraction(rc.degree_complex, G.order)
    coords = []
    for k, t in zip(hd.dc.intersection_orders, traces):
        coords.append(scale * k * t.to_rational())
    f = hd.element(coords)
    if check:
        pH = hd.unit
        e = central_idempotent(rc)
        if pH * e * pH != f:
            raise InternalError(f"Hecke idempotent for {rc.label} differs from p_H e_W p_H")
        if not is_idempotent(f):
            raise InternalError(f"Hecke idempotent for {rc.label} is not idempotent")
        for q in hd.basis:
            if not f.commutes_with(q):
                raise InternalError(f"Hecke idempotent for {rc.label} is not central")
    return f


def orthogonality_sum(hd: HeckeData, chi_u, chi_v, coefficient: str = "proof") -> Fraction:
    """sum_j w_j chi_U(q_j^-1) chi_V(q_j).

    ``coefficient="proof"`` uses w_j = 1/[H : H cap x_j H x_j^-1], which makes
    the sum equal [G:H]/dim V on the diagonal and 0 off it;
    ``coefficient="display"`` uses the reciprocal weight |H|/|H cap x_j H x_j^-1|.
    """
    h = hd.subgroup.order
    if coefficient == "proof":
        weights = [Fraction(k, h) for k in hd.dc.intersection_orders]
    elif coefficient == "display":
        weights = [Fraction(h, k) for k in hd.dc.intersection_orders]
    else:
        raise ValueError(f"unknown coefficient convention {coefficient!r}")
    u_inv = _inverse_coset_values(hd, chi_u)
    v = hecke_character_values(hd, chi_v)
    total = Cyclotomic.rational(0)
    for w, a, b in zip(weights, u_inv, v):
        total = total + a * b * w
    if not total.is_rational:
        raise InternalError(f"orthogonality sum {total} is not rational")
    return total.to_rational()


def hecke_characters(hd: HeckeData, table: CharacterTable) -> list[Character]:
    """Complex irreducibles V with V^H != 0."""
    return [chi for chi in table.characters() if fixed_dim(chi, hd.subgroup) > 0]


# ---------------------------------------------------------------------------
# equation systems


@dataclass(frozen=True)
class Relation:
    """q_index(z) = coefficient * z."""

    index: int  # 1-based
    coefficient: int
    redundant: bool = False


@dataclass(frozen=True)
class EquationSystem:
    kind: str  # "special", "general" or "prym"
    label: str
    relations: tuple = ()
    q_coefficients: tuple = ()  # general: n*(p_H - f) in the q-basis
    scale: int = 1  # general: n = |G|
    element: GroupAlgebraElement | None = None
    idempotent: GroupAlgebraElement | None = None  # image of this is the solution set
    transversal: tuple = ()
    target: str = ""  # prym: "fixed" or "complement"
    rhs: int = 0  # prym: right-hand side multiple of z
    overgroup: PermGroup | None = None
    notes: tuple = field(default=())

    def lines(self) -> list[str]:
        if self.kind == "special":
            out = []
            for r in self.relations:
                if r.redundant:
                    continue
                out.append(f"q_{r.index}(z) = {_rhs_dot(r.coefficient)}")
            return out
        if self.kind == "general":
            terms = [f"{c}·q_{i}" for i, c in enumerate(self.q_coefficients, 1) if c]
            body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
            return [f"Ker({body})_0  [n = {self.scale}]"]
        if self.kind == "prym":
            lhs = " + ".join(f"{g}(z)" for g in self.transversal) if self.transversal else "0"
            return [f"{lhs} = {_rhs_dot(self.rhs)}"]
        raise ValueError(self.kind)

    def compact(self) -> str:
        """Relations grouped by coefficient, largest first: ``q_2(z) = q_3(z) = z, q_4(z) = -3z``."""
        if self.kind != "special":
            return "; ".join(self.lines())
        groups: dict[int, list[int]] = {}
        for r in self.relations:
            if not r.redundant:
                groups.setdefault(r.coefficient, []).append(r.index)
        parts = []
        for c in sorted(groups, reverse=True):
            lhs = " = ".join(f"q_{i}(z)" for i in groups[c])
            parts.append(f"{lhs} = {_rhs_compact(c)}")
        return ", ".join(parts)


def _rhs_dot(c) -> str:
    if c == 0:
        return "0"
    if c == 1:
        return "z"
    return f"{c}·z"


def _rhs_compact(c) -> str:
    if c == 0:
        return "0"
    if c == 1:
        return "z"
    if c == -1:
        return "-z"
    return f"{c}z"


def special_equations(hd: HeckeData, rc: RationalCharacter) -> EquationSystem:
    """q_i(z) = chi_V(q_i) z, valid when dim V^H = 1 and the character is rational."""
    fd = fixed_dim(rc.representative, hd.subgroup)
    if fd != 1:
        raise PreconditionError(f"{rc.label}: dim V^H = {fd}, the special form needs dim V^H = 1")
    if rc.field_degree != 1:
        raise PreconditionError(f"{rc.label}: character field has degree {rc.field_degree}, the special form needs K = Q")
    vals = hecke_character_values(hd, rc)
    rels = []
    for i, v in enumerate(vals, 1):
        q = v.to_rational()
        if q.denominator != 1:
            raise InternalError(f"chi(q_{i}) = {q} is not an integer")
        rels.append(Relation(i, int(q), redundant=(i == 1)))
    if rels[0].coefficient != 1:
        raise InternalError("chi(q_1) must be 1 when dim V^H = 1")
    f = hecke_idempotent(hd, rc, check=False)
    return EquationSystem(kind="special", label=rc.label, relations=tuple(rels), idempotent=f)


def general_equation(hd: HeckeData, rc: RationalCharacter) -> EquationSystem:
    """A_{H,W} as the kernel component of p_H - f, scaled by n = |G|."""
    f = hecke_idempotent(hd, rc)
    alpha = hd.unit - f
    n = hd.group.order
    coords = hd.coordinates(alpha * n)
    ints = []
    for c in coords:
        if c.denominator != 1:
            raise InternalError(f"n*(p_H - f) has non-integral q-coefficient {c}")
        ints.append(int(c))
    return EquationSystem(
        kind="general", label=rc.label, q_coefficients=tuple(ints), scale=n, element=alpha, idempotent=f
    )


def prym_equations(
    K: PermGroup,
    H: PermGroup,
    transversal: CommonTransversal,
    ambient: PermGroup | None = None,
    dc: DoubleCosetDecomposition | None = None,
) -> tuple[EquationSystem, EquationSystem]:
    """Equations for A_K and for its complement P(A_H, A_K) inside A_H.

    With g_1..g_m a two-sided transversal of H in K, on A_H the element
    sum_j g_j acts as [K:H] p_K, so A_K is where it acts as [K:H] and the
    complement is where it vanishes.
    """
    ambient = ambient or K
    K.require_subgroup_of(ambient)
    if dc is None:
        dc = double_cosets(K, H)
    if not is_two_sided_transversal(K, H, dc, transversal):
        raise PreconditionError("transversal is not two-sided for H in the overgroup")
    gs = transversal.flattened
    index = K.order // H.order
    if len(gs) != index:
        raise PreconditionError(f"transversal has {len(gs)} elements, index is {index}")
    sigma = GroupAlgebraElement.sum_of(ambient, gs)
    pH = averaging_idempotent(H, ambient)
    pK = averaging_idempotent(K, ambient)
    if pH * sigma != pK * index or sigma * pH != pK * index:
        raise InternalError("p_H * sum g_j differs from [K:H] p_K")
    label = f"P({H.order}/{K.order})"
    fixed = EquationSystem(
        kind="prym", label=label, element=sigma, idempotent=pK, transversal=gs,
        target="fixed", rhs=index, overgroup=K,
    )
    comp = EquationSystem(
        kind="prym", label=label, element=sigma, idempotent=pH - pK, transversal=gs,
        target="complement", rhs=0, overgroup=K,
    )
    return fixed, comp


# ---------------------------------------------------------------------------
# comparing against printed structure constants

CONVENTIONS = ("normalized", "coset-sum", "mixed")
CONVENTION_NOTES = {
    "normalized": "q_i q_j = sum c_ijk q_k with q_i = (1/|H|) sum over H x_i H",
    "coset-sum": "Q_i Q_j = sum |H| c_ijk Q_k with Q_i the plain sum over H x_i H",
    "mixed": "Q_i Q_j written in the q-basis: sum |H|^2 c_ijk q_k",
}


def convention_constants(hd: HeckeData, name: str) -> tuple:
    if name == "normalized":
        return hd.structure_constants
    if name == "coset-sum":
        return hd.unnormalized_constants()
    if name == "mixed":
        return hd.mixed_constants()
    raise ValueError(f"unknown convention {name!r}")


@dataclass(frozen=True)
class PrintedConstant:
    """A claimed product q_left q_right = sum coeff q_k; indices are 1-based."""

    left: int
    right: int
    terms: tuple  # ((k, Fraction), ...)

    def vector(self, s: int) -> tuple:
        v = [Fraction(0)] * s
        for k, c in self.terms:
            v[k - 1] += Fraction(c)
        return tuple(v)

    def __str__(self):
        rhs = " + ".join(f"{c}q_{k}" for k, c in self.terms) or "0"
        return f"q_{self.left}q_{self.right} = {rhs}"


def annotate_printed(hd: HeckeData, printed: Sequence[PrintedConstant]) -> list[tuple[PrintedConstant, tuple]]:
    """For each printed product, the conventions that reproduce it exactly."""
    tables = {name: convention_constants(hd, name) for name in CONVENTIONS}
    out = []
    for p in printed:
        if not (1 <= p.left <= hd.s and 1 <= p.right <= hd.s) or any(not 1 <= k <= hd.s for k, _ in p.terms):
            raise PreconditionError(f"printed constant {p} refers to a missing basis element")
        want = p.vector(hd.s)
        hits = tuple(n for n, c in tables.items() if c[p.left - 1][p.right - 1] == want)
        out.append((p, hits))
    return out
