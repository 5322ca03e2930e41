"""Finite permutation groups by full element enumeration.

Points are written 1..n in cycle notation and stored 0-based internally.
Products compose right to left, ``(g*h)(k) = g(h(k))``, so a group acting on
the left satisfies ``rho(g*h) = rho(g) rho(h)``.

Groups are small (the enumeration cap defaults to 10**6 elements), so every
algorithm here works directly on the element list; there are no stabilizer
chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    ContainmentError,
    CycleSyntaxError,
    GroupTooLargeError,
    InputError,
    InternalError,
    MalformedCycleError,
    PointRangeError,
)

DEFAULT_CAP = 10**6


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based cycles; no validation beyond range."""
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        s = self.images
        return Permutation([s[i] for i in other.images])

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(k + 1 for k in cyc))
        return out

    @property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation"):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self})"


def parse_cycles(text: str, degree: int, line: int | None = None) -> Permutation:
    """Parse cycle notation such as ``"(1 2)(3 4)"``; ``"()"`` is the identity.

    Inside a cycle, points are separated by spaces or commas.
    """
    s = text
    n = len(s)
    pos = 0
    cycles: list[list[int]] = []
    seen: set[int] = set()
    saw_empty = False

    def skip_ws(p):
        while p < n and s[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == n:
        raise CycleSyntaxError("empty permutation", text, 1, line)
    while pos < n:
        if s[pos] != "(":
            raise CycleSyntaxError(f"expected '(' but found {s[pos]!r}", text, pos + 1, line)
        start = pos
        pos += 1
        points: list[int] = []
        while True:
            while pos < n and (s[pos].isspace() or s[pos] == ","):
                pos += 1
            if pos == n:
                raise CycleSyntaxError("unbalanced parentheses", text, start + 1, line)
            ch = s[pos]
            if ch == ")":
                pos += 1
                break
            if ch.isdigit():
                q = pos
                while q < n and s[q].isdigit():
                    q += 1
                pt = int(s[pos:q])
                if not 1 <= pt <= degree:
                    raise PointRangeError(f"point {pt} outside 1..{degree}", text, pos + 1, line)
                if pt in seen:
                    raise MalformedCycleError(f"point {pt} repeated", text, pos + 1, line)
                seen.add(pt)
                points.append(pt)
                pos = q
                if pos < n and not (s[pos].isspace() or s[pos] in ",)"):
                    raise CycleSyntaxError(f"unexpected {s[pos]!r}", text, pos + 1, line)
                continue
            if ch == "(":
                raise CycleSyntaxError("nested '('", text, pos + 1, line)
            raise CycleSyntaxError(f"unexpected {ch!r}", text, pos + 1, line)
        if not points:
            saw_empty = True
        else:
            cycles.append(points)
        pos = skip_ws(pos)
    if saw_empty and cycles:
        raise CycleSyntaxError("'()' must stand alone", text, 1, line)
    return Permutation.from_cycles(cycles, degree)


def parse_generator_list(text: str, degree: int, line: int | None = None) -> list[Permutation]:
    """Generators separated by ``;``.  An empty string gives no generators."""
    parts = [p for p in text.split(";") if p.strip()]
    return [parse_cycles(p, degree, line) for p in parts]


class PermGroup:
    """A finite permutation group with its full sorted element list."""

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: Sequence[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.identity = Permutation.identity(degree)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._index

    def index(self, g: Permutation) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise ContainmentError(f"{g} is not an element of the group") from None

    def __eq__(self, other):
        return (
            isinstance(other, PermGroup)
            and self.degree == other.degree
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        gens = ", ".join(map(str, self.generators)) or "()"
        return f"<PermGroup degree={self.degree} order={self.order} gens={gens}>"

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.elements)

    def require_subgroup_of(self, other: "PermGroup"):
        if self.degree != other.degree:
            raise ContainmentError(f"degree {self.degree} subgroup in degree {other.degree} group")
        for g in self.elements:
            if g not in other:
                raise ContainmentError(f"subgroup element {g} is not in the ambient group")

    def subgroup(self, generators: Sequence[Permutation]) -> "PermGroup":
        for g in generators:
            if g not in self:
                raise ContainmentError(f"generator {g} is not in the ambient group")
        return generate(generators, degree=self.degree)

    @cached_property
    def exponent(self) -> int:
        return lcm(*(g.order for g in self.elements))

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[Permutation, ...], ...]:
        return conjugacy_classes(self)

    @cached_property
    def class_index(self) -> dict[Permutation, int]:
        out = {}
        for c, cls in enumerate(self.conjugacy_classes):
            for g in cls:
                out[g] = c
        return out

    def is_normal_in(self, other: "PermGroup") -> bool:
        return all(x * h * x.inverse() in self for x in other.generators for h in self.generators)


def generate(generators: Sequence[Permutation], degree: int | None = None, cap: int = DEFAULT_CAP) -> PermGroup:
    """Closure of ``generators`` under multiplication."""
    generators = list(generators)
    if degree is None:
        if not generators:
            raise InputError("degree is required for an empty generator list")
        degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise InputError(f"generator {g} has degree {g.degree}, expected {degree}")
    e = Permutation.identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise GroupTooLargeError(f"group exceeds the enumeration cap of {cap} elements")
        frontier = nxt
    return PermGroup(degree, generators, sorted(seen))


def conjugacy_classes(G: PermGroup) -> tuple[tuple[Permutation, ...], ...]:
    """Classes sorted by (size, smallest element); each class sorted."""
    gens = [(s, s.inverse()) for s in G.generators]
    done: set[Permutation] = set()
    classes = []
    for g in G.elements:
        if g in done:
            continue
        orbit = {g}
        frontier = [g]
        while frontier:
            nxt = []
            for x in frontier:
                for s, si in gens:
                    y = s * x * si
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        done |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: (len(c), c[0]))
    return tuple(classes)


# ---------------------------------------------------------------------------
# cosets


def left_coset(g: Permutation, H: PermGroup) -> frozenset:
    return frozenset(g * h for h in H.elements)


def right_coset(g: Permutation, H: PermGroup) -> frozenset:
    return frozenset(h * g for h in H.elements)


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    representatives: tuple
    cosets: tuple  # of frozenset
    sizes: tuple
    intersection_orders: tuple
    subgroup_order: int

    def __len__(self):
        return len(self.representatives)

    @property
    def indices(self) -> tuple:
        """[H : H cap x H x^-1] for each double coset."""
        return tuple(self.subgroup_order // k for k in self.intersection_orders)

    def coset_containing(self, g: Permutation) -> int:
        for i, c in enumerate(self.cosets):
            if g in c:
                return i
        raise ContainmentError(f"{g} lies in no double coset")


def double_cosets(G: PermGroup, H: PermGroup, representatives: Sequence[Permutation] | None = None) -> DoubleCosetDecomposition:
    """Decompose G into double cosets H x H.

    By default representatives are the smallest element not yet covered, so
    ``x_1`` is the identity.  Explicit ``representatives`` fix the labelling;
    they must start with the identity and lie in distinct double cosets, and
    any double cosets they miss are appended in the default order.
    """
    H.require_subgroup_of(G)
    Hel = H.elements
    covered: set[Permutation] = set()
    reps, cosets = [], []

    def add(x):
        if x in covered:
            raise InputError(f"representative {x} lies in an earlier double coset")
        hx = [h * x for h in Hel]
        D = frozenset(a * h for a in hx for h in Hel)
        covered.update(D)
        reps.append(x)
        cosets.append(D)

    if representatives:
        reps_in = list(representatives)
        if not reps_in[0].is_identity():
            raise InputError("the first double coset representative must be the identity")
        for x in reps_in:
            if x not in G:
                raise ContainmentError(f"representative {x} is not in the group")
            add(x)
    for g in G.elements:
        if g not in covered:
            add(g)

    horder = H.order
    hset = set(Hel)
    inter = []
    for x in reps:
        xi = x.inverse()
        inter.append(sum(1 for h in Hel if xi * h * x in hset))
    sizes = tuple(len(c) for c in cosets)
    if sum(sizes) != G.order:
        raise InternalError("double cosets do not partition the group")
    for s, k in zip(sizes, inter):
        if s * k != horder * horder:
            raise InternalError(f"double coset size {s} disagrees with |H|^2/{k}")
    return DoubleCosetDecomposition(tuple(reps), tuple(cosets), sizes, tuple(inter), horder)


@dataclass(frozen=True)
class CommonTransversal:
    per_coset: tuple  # tuple of tuples of Permutation

    @property
    def flattened(self) -> tuple:
        return tuple(g for part in self.per_coset for g in part)


def _perfect_matching(adj: list[list[int]], nright: int) -> list[int]:
    """Kuhn's augmenting-path matching; returns match_left (or -1)."""
    match_right = [-1] * nright

    def augment(u, visited):
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if match_right[v] == -1 or augment(match_right[v], visited):
                match_right[v] = u
                return True
        return False

    for u in range(len(adj)):
        augment(u, set())
    match_left = [-1] * len(adj)
    for v, u in enumerate(match_right):
        if u != -1:
            match_left[u] = v
    return match_left


def common_transversal(G: PermGroup, H: PermGroup, dc: DoubleCosetDecomposition) -> CommonTransversal:
    """Elements representing the left and the right cosets of H simultaneously.

    Each double coset is handled separately: left cosets and right cosets
    inside it form a bipartite graph (edge when they meet), a perfect matching
    exists by Hall's theorem, and the smallest element of each matched
    intersection is chosen.
    """
    parts = []
    for D in dc.cosets:
        lefts, rights = {}, {}
        for g in sorted(D):
            lc = left_coset(g, H)
            lefts.setdefault(lc, None)
            rc = right_coset(g, H)
            rights.setdefault(rc, None)
        L = sorted(lefts, key=min)
        R = sorted(rights, key=min)
        if len(L) != len(R):
            raise InternalError("left and right coset counts differ inside a double coset")
        adj = [[j for j, r in enumerate(R) if not l.isdisjoint(r)] for l in L]
        match = _perfect_matching(adj, len(R))
        if -1 in match:
            raise InternalError("no perfect matching between left and right cosets")
        parts.append(tuple(min(L[i] & R[match[i]]) for i in range(len(L))))
    tv = CommonTransversal(tuple(parts))
    if not is_two_sided_transversal(G, H, dc, tv):
        raise InternalError("computed transversal is not two-sided")
    return tv


def is_two_sided_transversal(G: PermGroup, H: PermGroup, dc: DoubleCosetDecomposition, tv: CommonTransversal) -> bool:
    """Check that the g_{i,j} meet every left and every right coset in H_i once."""
    if len(tv.per_coset) != len(dc.cosets):
        return False
    for D, part in zip(dc.cosets, tv.per_coset):
        if any(g not in D for g in part):
            return False
        lefts = [left_coset(g, H) for g in part]
        rights = [right_coset(g, H) for g in part]
        if len(set(lefts)) != len(part) or len(set(rights)) != len(part):
            return False
        if len(part) * H.order != len(D):
            return False
    return True


# ---------------------------------------------------------------------------
# small named groups


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return generate([], degree=max(n, 1))
    gens = [Permutation.from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(1, n + 1))], n))
    return generate(gens)


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return generate([], degree=1)
    return generate([Permutation.from_cycles([tuple(range(1, n + 1))], n)])


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n (n >= 3)."""
    rot = Permutation.from_cycles([tuple(range(1, n + 1))], n)
    refl = Permutation([(-i) % n for i in range(n)])
    return generate([rot, refl])


def direct_product(*factors: PermGroup) -> PermGroup:
    """Direct product acting on the disjoint union of the factors' points."""
    degree = sum(f.degree for f in factors)
    gens = []
    offset = 0
    for f in factors:
        for s in f.generators:
            img = list(range(degree))
            for i, j in enumerate(s.images):
                img[offset + i] = offset + j
            gens.append(Permutation(img))
        offset += f.degree
    return generate(gens, degree=degree)
