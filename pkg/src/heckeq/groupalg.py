"""The rational group algebra Q[G].

An element is a finitely supported function G -> Q stored sparsely by the
index of each group element in ``G.elements``.  Multiplication is the
convolution product ``(a*b)(g) = sum_{xy=g} a(x) b(y)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from .errors import ContextError
from .permgrp import Permutation, PermGroup


class GroupAlgebraElement:
    __slots__ = ("group", "_coeffs")

    def __init__(self, group: PermGroup, coeffs: Mapping[int, Fraction] | None = None):
        self.group = group
        self._coeffs = {i: Fraction(c) for i, c in (coeffs or {}).items() if c}

    # -- constructors
    @classmethod
    def from_elements(cls, group: PermGroup, terms: Iterable[tuple[Permutation, Fraction]]) -> "GroupAlgebraElement":
        acc: dict[int, Fraction] = {}
        for g, c in terms:
            i = group.index(g)
            acc[i] = acc.get(i, Fraction(0)) + Fraction(c)
        return cls(group, acc)

    @classmethod
    def delta(cls, group: PermGroup, g: Permutation) -> "GroupAlgebraElement":
        return cls(group, {group.index(g): Fraction(1)})

    @classmethod
    def one(cls, group: PermGroup) -> "GroupAlgebraElement":
        return cls.delta(group, group.identity)

    @classmethod
    def zero(cls, group: PermGroup) -> "GroupAlgebraElement":
        return cls(group, {})

    @classmethod
    def sum_of(cls, group: PermGroup, elements: Iterable[Permutation], scale=1) -> "GroupAlgebraElement":
        s = Fraction(scale)
        return cls(group, {group.index(g): s for g in elements})

    # -- access
    @property
    def coeffs(self) -> dict[Permutation, Fraction]:
        els = self.group.elements
        return {els[i]: c for i, c in sorted(self._coeffs.items())}

    def items(self):
        return sorted(self._coeffs.items())

    def coefficient(self, g: Permutation) -> Fraction:
        return self._coeffs.get(self.group.index(g), Fraction(0))

    def support(self) -> frozenset:
        els = self.group.elements
        return frozenset(els[i] for i in self._coeffs)

    def mass(self) -> Fraction:
        """Sum of coefficients (the augmentation); multiplicative."""
        return sum(self._coeffs.values(), Fraction(0))

    def denominator(self) -> int:
        return lcm(1, *(c.denominator for c in self._coeffs.values()))

    def is_zero(self) -> bool:
        return not self._coeffs

    # -- algebra
    def _same(self, other: "GroupAlgebraElement"):
        if not isinstance(other, GroupAlgebraElement):
            raise TypeError("expected a group algebra element")
        if other.group is not self.group and other.group != self.group:
            raise ContextError("group algebra elements over different groups")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupAlgebraElement.one(self.group) * other
        self._same(other)
        acc = dict(self._coeffs)
        for i, c in other._coeffs.items():
            acc[i] = acc.get(i, Fraction(0)) + c
        return GroupAlgebraElement(self.group, acc)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgebraElement(self.group, {i: -c for i, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupAlgebraElement.one(self.group) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return GroupAlgebraElement(self.group, {i: x * c for i, x in self._coeffs.items()})
        return convolve(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group == other.group and self._coeffs == other._coeffs

    __hash__ = None

    def antipode(self) -> "GroupAlgebraElement":
        """The element sum a(g) g^-1."""
        els = self.group.elements
        return GroupAlgebraElement.from_elements(self.group, ((els[i].inverse(), c) for i, c in self._coeffs.items()))

    def commutes_with(self, other: "GroupAlgebraElement") -> bool:
        return self * other == other * self

    def __repr__(self):
        els = self.group.elements
        terms = [f"{c}*{els[i]}" for i, c in sorted(self._coeffs.items())]
        if len(terms) > 6:
            terms = terms[:6] + [f"... ({len(self._coeffs)} terms)"]
        return "GroupAlgebraElement(" + " + ".join(terms or ["0"]) + ")"


def convolve(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    a._same(b)
    G = a.group
    els = G.elements
    idx = G._index
    acc: dict[int, Fraction] = {}
    bitems = [(els[j].images, y) for j, y in b._coeffs.items()]
    for i, x in a._coeffs.items():
        gi = els[i].images
        for bimg, y in bitems:
            k = idx[Permutation([gi[t] for t in bimg])]
            acc[k] = acc.get(k, Fraction(0)) + x * y
    return GroupAlgebraElement(G, acc)


def averaging_idempotent(H: PermGroup, ambient: PermGroup) -> GroupAlgebraElement:
    """p_H = (1/|H|) sum_{h in H} h inside Q[ambient]."""
    H.require_subgroup_of(ambient)
    return GroupAlgebraElement.sum_of(ambient, H.elements, Fraction(1, H.order))


def is_idempotent(a: GroupAlgebraElement) -> bool:
    return a * a == a
