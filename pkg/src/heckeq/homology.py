"""Rational homology models: G-modules over Q and subspace identities.

A module stands in for H_1(A, Q) of an abelian variety with G-action.  At
this level "connected component of a kernel" is the exact null space and an
isogeny onto a sum is a direct sum of subspaces, so every statement below is
a finite exact computation.  Complex structures and torsion are invisible.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Sequence

import numpy as np

from .arith import MatrixQ, SubspaceQ, image_space, kernel_space
from .errors import ContextError, DimensionError, InputError, PreconditionError, TheoremViolation
from .groupalg import GroupAlgebraElement, is_idempotent
from .permgrp import Permutation, PermGroup

EXHAUSTIVE_LIMIT = 200
RANDOM_PAIRS = 200


class GModuleQ:
    """A representation G -> GL_d(Q) given by integer matrices.

    Permutation modules keep the action as permutations of the basis, which
    makes ``act`` a sparse scatter instead of a matrix sum.
    """

    def __init__(
        self,
        group: PermGroup,
        dimension: int,
        *,
        generator_matrices: Sequence[Sequence[Sequence[int]]] | None = None,
        generator_permutations: Sequence[Sequence[int]] | None = None,
        name: str = "",
        validate: bool = True,
        seed: int = 0,
    ):
        if (generator_matrices is None) == (generator_permutations is None):
            raise ValueError("give exactly one of generator_matrices or generator_permutations")
        self.group = group
        self.dimension = dimension
        self.name = name
        gens = group.generators
        if generator_permutations is not None:
            data = [tuple(p) for p in generator_permutations]
            for p in data:
                if sorted(p) != list(range(dimension)):
                    raise InputError("generator action is not a permutation of the basis")
            ident = tuple(range(dimension))
            compose = lambda a, b: tuple(a[i] for i in b)  # noqa: E731
            self._is_perm = True
        else:
            data = []
            for m in generator_matrices:
                arr = np.array([[int(x) for x in row] for row in m], dtype=object).reshape(-1, dimension) if dimension else np.zeros((0, 0), dtype=object)
                if arr.shape != (dimension, dimension):
                    raise DimensionError(f"generator matrix has shape {arr.shape}, expected {(dimension, dimension)}")
                data.append(arr)
            ident = np.identity(dimension, dtype=int).astype(object)
            compose = lambda a, b: a.dot(b)  # noqa: E731
            self._is_perm = False
        if len(data) != len(gens):
            raise InputError(f"module gives {len(data)} generator actions, the group has {len(gens)} generators")
        self._compose = compose
        self._action = self._extend(data, ident)
        if validate:
            self.check_homomorphism(seed=seed)

    # -- construction
    def _extend(self, data, ident) -> list:
        G = self.group
        act: list = [None] * G.order
        act[G.index(G.identity)] = ident
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                rx = act[G.index(x)]
                for s, rs in zip(G.generators, data):
                    y = x * s
                    ry = self._compose(rx, rs)
                    j = G.index(y)
                    if act[j] is None:
                        act[j] = ry
                        nxt.append(y)
                    elif not _same(act[j], ry):
                        raise InputError(f"generator action violates a group relation at {y}")
            frontier = nxt
        return act

    def check_homomorphism(self, seed: int = 0, pairs: int | None = None):
        G = self.group
        n = G.order
        eye = self._action[G.index(G.identity)]
        if self._is_perm:
            if eye != tuple(range(self.dimension)):
                raise InputError("identity does not act trivially")
        elif not _same(eye, np.identity(self.dimension, dtype=int).astype(object)):
            raise InputError("identity does not act trivially")
        if n <= EXHAUSTIVE_LIMIT and pairs is None:
            todo = ((i, j) for i in range(n) for j in range(n))
        else:
            rng = random.Random(seed)
            todo = [(rng.randrange(n), rng.randrange(n)) for _ in range(pairs or RANDOM_PAIRS)]
        els = G.elements
        for i, j in todo:
            k = G.index(els[i] * els[j])
            if not _same(self._compose(self._action[i], self._action[j]), self._action[k]):
                raise InputError(f"action is not a homomorphism on the pair {els[i]}, {els[j]}")

    # -- queries
    @property
    def is_permutation_module(self) -> bool:
        return self._is_perm

    def matrix(self, g: Permutation) -> MatrixQ:
        a = self._action[self.group.index(g)]
        d = self.dimension
        if self._is_perm:
            e = [Fraction(0)] * (d * d)
            for j, i in enumerate(a):
                e[i * d + j] = Fraction(1)
            return MatrixQ(d, d, tuple(e))
        return MatrixQ(d, d, tuple(Fraction(int(x)) for x in a.flat))

    def character(self, g: Permutation) -> int:
        a = self._action[self.group.index(g)]
        if self._is_perm:
            return sum(1 for j, i in enumerate(a) if i == j)
        return int(sum(a[i, i] for i in range(self.dimension)))

    def __repr__(self):
        return f"GModuleQ({self.name or 'custom'}, dim={self.dimension}, |G|={self.group.order})"


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return a == b
    return bool((a == b).all())


def regular_module(G: PermGroup) -> GModuleQ:
    """Left translation on Q[G], basis ordered like ``G.elements``."""
    els = G.elements
    perms = [tuple(G.index(s * h) for h in els) for s in G.generators]
    return GModuleQ(G, G.order, generator_permutations=perms, name="regular", validate=False)


def permutation_module(G: PermGroup, K: PermGroup) -> GModuleQ:
    """Action of G on the left cosets gK, ordered by their smallest element."""
    K.require_subgroup_of(G)
    kset = K.elements
    seen: dict[Permutation, int] = {}
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        for k in kset:
            seen[g * k] = len(reps)
        reps.append(g)
    perms = [tuple(seen[s * r] for r in reps) for s in G.generators]
    return GModuleQ(G, len(reps), generator_permutations=perms, name=f"coset[{G.order}/{K.order}]", validate=False)


def load_module(source, G: PermGroup, seed: int = 0) -> GModuleQ:
    """Read a module file: a dimension line, then one square integer matrix per generator.

    Blank lines, ``#`` comments and optional ``generator ...`` header lines
    are ignored.  The dimension line is ``dimension: d`` or a bare integer.
    """
    if isinstance(source, os.PathLike) or (isinstance(source, str) and "\n" not in source and Path(source).is_file()):
        name = str(source)
        text = Path(source).read_text()
    else:
        name, text = "inline", str(source)
    dim = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.lower().startswith("generator"):
            continue
        if dim is None:
            body = line.split(":", 1)[1] if line.lower().startswith("dimension") else line
            try:
                dim = int(body.strip())
            except ValueError:
                raise InputError(f"{name}:{lineno}: expected the module dimension, got {raw!r}") from None
            if dim < 0:
                raise InputError(f"{name}:{lineno}: negative dimension")
            continue
        try:
            vals = [int(x) for x in line.replace(",", " ").split()]
        except ValueError:
            raise InputError(f"{name}:{lineno}: matrix entries must be integers: {raw!r}") from None
        if len(vals) != dim:
            raise DimensionError(f"{name}:{lineno}: row has {len(vals)} entries, dimension is {dim}")
        rows.append(vals)
    if dim is None:
        raise InputError(f"{name}: missing dimension line")
    ngen = len(G.generators)
    if dim == 0:
        mats = [[] for _ in range(ngen)]
    else:
        if len(rows) != ngen * dim:
            raise InputError(f"{name}: expected {ngen} matrices of size {dim}, found {len(rows)} rows")
        mats = [rows[k * dim:(k + 1) * dim] for k in range(ngen)]
    return GModuleQ(G, dim, generator_matrices=mats, name=name, seed=seed)


def act(alpha: GroupAlgebraElement, M: GModuleQ) -> MatrixQ:
    """The matrix of sum_g alpha(g) rho(g)."""
    if alpha.group is not M.group and alpha.group != M.group:
        raise ContextError("group algebra element and module belong to different groups")
    d = M.dimension
    items = alpha.items()
    if M._is_perm:
        e = [Fraction(0)] * (d * d)
        for idx, c in items:
            for j, i in enumerate(M._action[idx]):
                e[i * d + j] += c
        return MatrixQ(d, d, tuple(e))
    den = lcm(1, *(c.denominator for _, c in items))
    acc = np.zeros((d, d), dtype=object)
    acc[...] = 0
    for idx, c in items:
        acc = acc + M._action[idx] * int(c * den)
    return MatrixQ(d, d, tuple(Fraction(int(x), den) for x in acc.flat))


# ---------------------------------------------------------------------------
# subvarieties


@dataclass(frozen=True)
class SubvarietyModel:
    module: GModuleQ
    space: SubspaceQ
    label: str = ""

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_stable_under(self, elements: Sequence[Permutation]) -> bool:
        return all(self.space.image_under(self.module.matrix(g)) <= self.space for g in elements)

    def is_stable_under_algebra(self, alphas: Sequence[GroupAlgebraElement]) -> bool:
        return all(self.space.image_under(act(a, self.module)) <= self.space for a in alphas)

    def __eq__(self, other):
        if not isinstance(other, SubvarietyModel):
            return NotImplemented
        return self.module is other.module and self.space == other.space

    __hash__ = None


def image_component(alpha: GroupAlgebraElement, M: GModuleQ, label: str = "") -> SubvarietyModel:
    """Im(alpha); scaling alpha by a positive integer changes nothing over Q."""
    return SubvarietyModel(M, image_space(act(alpha, M)), label)


def kernel_component(alpha: GroupAlgebraElement, M: GModuleQ, label: str = "") -> SubvarietyModel:
    """Ker(alpha)_0, which over Q is the full null space."""
    return SubvarietyModel(M, kernel_space(act(alpha, M)), label)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    clauses: tuple
    dims: tuple = ()  # ((name, int), ...)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def dim(self, name: str) -> int:
        return dict(self.dims)[name]

    def raise_if_failed(self):
        bad = [c for c in self.clauses if not c.passed]
        if bad:
            raise TheoremViolation(
                f"{self.subject}: " + "; ".join(f"{c.name} failed ({c.detail})" for c in bad)
            )
        return self


def verify_complement(iota: GroupAlgebraElement, M: GModuleQ, unit: GroupAlgebraElement | None = None, subject: str = "") -> VerificationReport:
    """Check that Im(iota) and Im(unit - iota) split Im(unit).

    With the default unit 1 this is the splitting of the whole module; with
    unit = p_H it is the relative version inside A_H.
    """
    if not is_idempotent(iota):
        raise PreconditionError("the element to split by is not idempotent")
    if unit is None:
        unit = GroupAlgebraElement.one(iota.group)
    elif not is_idempotent(unit):
        raise PreconditionError("the ambient unit is not idempotent")
    elif unit * iota != iota or iota * unit != iota:
        raise PreconditionError("the idempotent is not below the ambient unit")
    comp = unit - iota
    im_u = image_space(act(unit, M))
    m_iota = act(iota, M)
    m_comp = act(comp, M)
    im_i = image_space(m_iota)
    im_c = image_space(m_comp)
    ker_c = kernel_space(m_comp) & im_u
    ker_i = kernel_space(m_iota) & im_u
    meet = im_i & im_c
    clauses = (
        Clause("trivial intersection", meet.dim == 0, f"dim of intersection {meet.dim}"),
        Clause("dimensions add up", im_i.dim + im_c.dim == im_u.dim, f"{im_i.dim} + {im_c.dim} vs {im_u.dim}"),
        Clause("image equals kernel of complement", im_i == ker_c, f"dims {im_i.dim} and {ker_c.dim}"),
        Clause("complement image equals kernel", im_c == ker_i, f"dims {im_c.dim} and {ker_i.dim}"),
        Clause("idempotent matrix", m_iota @ m_iota == m_iota, ""),
    )
    dims = (("image", im_i.dim), ("complement", im_c.dim), ("ambient", im_u.dim))
    return VerificationReport(subject or "complement", clauses, dims)


def verify_equation_system(es, hd, M: GModuleQ) -> VerificationReport:
    """Compare the solution space of an equation system with the idempotent image it should equal."""
    G = hd.group
    if M.group != G:
        raise ContextError("module and Hecke data use different groups")
    if es.idempotent is None or es.idempotent.group != G:
        raise ContextError("equation system was built over a different group")
    A_H = image_space(act(hd.unit, M))
    target = image_space(act(es.idempotent, M))
    d = M.dimension
    eye = MatrixQ.identity(d)
    clauses = []
    dims = [("A_H", A_H.dim), ("target", target.dim)]
    if es.kind == "special":
        sol = A_H
        for r in es.relations:
            m = act(hd.basis[r.index - 1], M) - eye.scale(r.coefficient)
            sol = sol & kernel_space(m)
        clauses.append(Clause("solution space equals idempotent image", sol == target, f"dims {sol.dim} and {target.dim}"))
        model = SubvarietyModel(M, sol)
        clauses.append(Clause("solution space is Hecke-stable", model.is_stable_under_algebra(hd.basis), ""))
        dims.append(("solutions", sol.dim))
    elif es.kind == "general":
        m = act(es.element, M)
        sol = kernel_space(m) & A_H
        scaled = kernel_space(m.scale(es.scale)) & A_H
        clauses.append(Clause("kernel component equals idempotent image", sol == target, f"dims {sol.dim} and {target.dim}"))
        clauses.append(Clause("kernel independent of the integer multiple", scaled == sol, ""))
        dims.append(("solutions", sol.dim))
    elif es.kind == "prym":
        s = act(es.element, M)
        sol = kernel_space(s - eye.scale(es.rhs)) & A_H
        clauses.append(Clause(f"{es.target} relation cuts out the idempotent image", sol == target, f"dims {sol.dim} and {target.dim}"))
        on_target = all(s.apply(v) == tuple(x * es.rhs for x in v) for v in target.vectors())
        clauses.append(Clause("sum of transversal acts by the stated scalar on the target", on_target, ""))
        dims.append(("solutions", sol.dim))
        # the same relation with right-hand side z, for comparison
        dims.append(("solutions with rhs z", (kernel_space(s - eye) & A_H).dim))
    else:
        raise ValueError(f"unknown equation system kind {es.kind!r}")
    return VerificationReport(f"{es.kind} system for {es.label}" + (f" ({es.target})" if es.target else ""), tuple(clauses), tuple(dims))


def isotypical_dims(hd, decomposition, M: GModuleQ) -> tuple[tuple, VerificationReport]:
    """Dimensions of Im(f_{H,W}) for every constituent, with an additivity check."""
    from .hecke import hecke_idempotent

    A_H = image_space(act(hd.unit, M))
    total = SubspaceQ.zero(M.dimension)
    out = []
    for entry in decomposition.present:
        f = hecke_idempotent(hd, entry.character)
        sp = image_space(act(f, M))
        out.append((entry.character.label, sp.dim))
        total = total + sp
    s = sum(d for _, d in out)
    clauses = (
        Clause("dimensions add up to A_H", s == A_H.dim, f"{s} vs {A_H.dim}"),
        Clause("pieces span A_H", total == A_H, ""),
    )
    return tuple(out), VerificationReport("isotypical decomposition", clauses, (("A_H", A_H.dim), ("sum", s)))
