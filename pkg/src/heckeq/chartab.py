"""Complex character tables, Galois orbits and rational central idempotents.

Tables are either read from a small text format (see :func:`ingest_table`)
or computed with Dixon's method (:func:`dixon_compute`): the class
multiplication matrices are simultaneously diagonalized over F_p with
``p = 1 mod exponent``, and the resulting values are lifted back to cyclotomic
integers through the eigenvalue multiplicities of each element.

Character values are :class:`~heckeq.arith.Cyclotomic` numbers in the field
of the table exponent; ``z n`` always denotes ``exp(2*pi*i/n)``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from pathlib import Path
from typing import Mapping, Sequence

from .arith import Cyclotomic, cyclo_normalize, format_cyclotomic, parse_cyclotomic
from .errors import (
    ClassAlignmentError,
    ConfigurationError,
    InputError,
    InternalError,
    InvalidCharacterError,
    InvalidTableError,
)
from .groupalg import GroupAlgebraElement, is_idempotent
from .permgrp import Permutation, PermGroup, parse_cycles


class CharacterTable:
    """Irreducible complex characters of ``group``.

    Columns follow ``group.conjugacy_classes`` (class 0 is the identity).
    """

    def __init__(self, group: PermGroup, rows: Sequence[Sequence], exponent: int | None = None, validate: bool = True):
        self.group = group
        self.classes = group.conjugacy_classes
        self.class_sizes = tuple(len(c) for c in self.classes)
        self.representatives = tuple(c[0] for c in self.classes)
        self.exponent = exponent if exponent is not None else group.exponent
        vals = [[Cyclotomic.coerce(v) for v in r] for r in rows]
        order = lcm(self.exponent, *(v.order for r in vals for v in r))
        self.field_order = order
        self.rows = tuple(tuple(v.embed(order) for v in r) for r in vals)
        if validate:
            self.validate()

    def __len__(self):
        return len(self.rows)

    @property
    def degrees(self) -> tuple[int, ...]:
        out = []
        for r in self.rows:
            d = r[0]
            if not d.is_rational or d.to_rational().denominator != 1:
                raise InvalidTableError(f"character degree {d} is not an integer")
            out.append(int(d.to_rational()))
        return tuple(out)

    def class_of(self, g: Permutation) -> int:
        try:
            return self.group.class_index[g]
        except KeyError:
            raise InputError(f"{g} is not an element of the group") from None

    def power_class(self, c: int, a: int) -> int:
        return self.group.class_index[self.representatives[c] ** a]

    def inverse_class(self, c: int) -> int:
        return self.power_class(c, -1)

    def value(self, row: int, g: Permutation) -> Cyclotomic:
        return self.rows[row][self.class_of(g)]

    def character(self, row: int) -> "Character":
        return Character(self, row)

    def characters(self) -> list["Character"]:
        return [Character(self, i) for i in range(len(self.rows))]

    def validate(self):
        G = self.group
        k = len(self.classes)
        if len(self.rows) != k:
            raise InvalidTableError(f"{len(self.rows)} rows for {k} conjugacy classes")
        for i, r in enumerate(self.rows):
            if len(r) != k:
                raise InvalidTableError(f"row {i} has {len(r)} values for {k} classes")
        degs = self.degrees
        if any(d <= 0 for d in degs):
            raise InvalidTableError("character degrees must be positive")
        if sum(d * d for d in degs) != G.order:
            raise InvalidTableError(f"sum of squared degrees is {sum(d * d for d in degs)}, not |G| = {G.order}")
        conj = [tuple(v.conjugate() for v in r) for r in self.rows]
        sizes = self.class_sizes
        for i in range(k):
            for j in range(i, k):
                s = Cyclotomic.rational(0)
                for c in range(k):
                    s = s + self.rows[i][c] * conj[j][c] * sizes[c]
                expected = G.order if i == j else 0
                if s != expected:
                    raise InvalidTableError(
                        f"row orthogonality fails for rows {i} and {j}: got {s}, expected {expected}"
                    )

    def column_orthogonality_holds(self) -> bool:
        k = len(self.classes)
        for a in range(k):
            for b in range(k):
                s = Cyclotomic.rational(0)
                for r in self.rows:
                    s = s + r[a] * r[b].conjugate()
                expected = self.group.order // self.class_sizes[a] if a == b else 0
                if s != expected:
                    return False
        return True

    def row_permutation_to(self, other: "CharacterTable") -> list[int] | None:
        """Index map sending each row here to an equal row of ``other``."""
        lookup = {}
        for j, r in enumerate(other.rows):
            lookup.setdefault(r, j)
        perm = []
        for r in self.rows:
            j = lookup.get(r)
            if j is None:
                return None
            perm.append(j)
        return perm if len(set(perm)) == len(perm) else None


class Character:
    """A row of a character table, callable on group elements."""

    __slots__ = ("table", "row")

    def __init__(self, table: CharacterTable, row: int):
        self.table = table
        self.row = row

    def __call__(self, g: Permutation) -> Cyclotomic:
        return self.table.value(self.row, g)

    @property
    def degree(self) -> int:
        return self.table.degrees[self.row]

    @property
    def values(self) -> tuple:
        return self.table.rows[self.row]

    def __eq__(self, other):
        return isinstance(other, Character) and other.table is self.table and other.row == self.row

    def __hash__(self):
        return hash((id(self.table), self.row))

    def __repr__(self):
        return f"Character(row={self.row}, degree={self.degree})"


@dataclass(frozen=True)
class RationalCharacter:
    """Sum of a Galois orbit of complex irreducible characters.

    ``trace_values`` holds tr_{K/Q}(chi(C)) per conjugacy class; the Schur
    index is an input (default 1) and never influences idempotents.
    """

    table: CharacterTable
    orbit: tuple
    field_degree: int
    trace_values: tuple
    degree_complex: int
    schur_index: int = 1
    schur_source: str = "assumed"
    label: str = ""

    def __call__(self, g: Permutation) -> Fraction:
        return self.trace_values[self.table.class_of(g)]

    @property
    def characters(self) -> list[Character]:
        return [self.table.character(i) for i in self.orbit]

    @property
    def representative(self) -> Character:
        return self.table.character(self.orbit[0])

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.trace_values)

    def with_schur(self, s: int, source: str = "user") -> "RationalCharacter":
        if s < 1:
            raise InputError(f"Schur index must be positive, got {s}")
        return dataclasses.replace(self, schur_index=s, schur_source=source)

    def with_label(self, label: str) -> "RationalCharacter":
        return dataclasses.replace(self, label=label)

    def __eq__(self, other):
        return (
            isinstance(other, RationalCharacter)
            and other.table is self.table
            and other.orbit == self.orbit
        )

    def __hash__(self):
        return hash((id(self.table), self.orbit))

    def __repr__(self):
        return f"RationalCharacter({self.label or self.orbit}, degree={self.degree_complex}, [K:Q]={self.field_degree})"


# ---------------------------------------------------------------------------
# text format


def ingest_table(source, group: PermGroup) -> CharacterTable:
    """Read a character table and align its columns with ``group``'s classes.

    Format (``#`` starts a comment)::

        degree: 4
        exponent: 12
        classes:
          () 1
          (1 2) 6
          ...
        char: 1, 1, 1, 1, 1
        char: 3, 1, -1, 0, -1

    Values use ``term (('+'|'-') term)*`` with ``term := rational ['*' 'z' n '^' k]``.
    """
    if isinstance(source, os.PathLike) or (isinstance(source, str) and "\n" not in source and Path(source).is_file()):
        text = Path(source).read_text()
    else:
        text = str(source)
    degree = group.degree
    exponent = None
    class_lines: list[tuple[int, str]] = []
    char_lines: list[tuple[int, str]] = []
    in_classes = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if sep and key in ("degree", "exponent", "classes", "char"):
            in_classes = key == "classes"
            if key == "degree":
                degree = _int_field(rest, lineno, "degree")
            elif key == "exponent":
                exponent = _int_field(rest, lineno, "exponent")
            elif key == "char":
                char_lines.append((lineno, rest))
            elif rest.strip():
                raise InputError(f"line {lineno}: unexpected text after 'classes:'")
            continue
        if in_classes:
            class_lines.append((lineno, line))
            continue
        raise InputError(f"line {lineno}: unrecognized table line {line!r}")

    if degree != group.degree:
        raise ClassAlignmentError(f"table is for degree {degree}, group has degree {group.degree}")
    if exponent is None:
        raise InvalidTableError("missing 'exponent:' line")
    if exponent != group.exponent:
        raise ClassAlignmentError(f"table exponent {exponent} differs from group exponent {group.exponent}")
    k = len(group.conjugacy_classes)
    if len(class_lines) != k:
        raise ClassAlignmentError(f"table lists {len(class_lines)} classes, group has {k}")

    column_of = []
    for lineno, line in class_lines:
        close = line.rfind(")")
        if close < 0:
            raise InputError(f"line {lineno}: class entry needs a cycle-notation representative")
        rep = parse_cycles(line[:close + 1], degree, line=lineno)
        size = _int_field(line[close + 1:], lineno, "class size")
        if rep not in group:
            raise ClassAlignmentError(f"line {lineno}: representative {rep} is not in the group")
        c = group.class_index[rep]
        if len(group.conjugacy_classes[c]) != size:
            raise ClassAlignmentError(
                f"line {lineno}: class of {rep} has size {len(group.conjugacy_classes[c])}, table says {size}"
            )
        if c in column_of:
            raise ClassAlignmentError(f"line {lineno}: class of {rep} listed twice")
        column_of.append(c)

    rows = []
    for lineno, rest in char_lines:
        parts = [p for p in rest.split(",")]
        if len(parts) != k:
            raise InvalidTableError(f"line {lineno}: {len(parts)} values for {k} classes")
        try:
            vals = [parse_cyclotomic(p) for p in parts]
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        aligned = [None] * k
        for v, c in zip(vals, column_of):
            aligned[c] = v
        rows.append(aligned)
    return CharacterTable(group, rows, exponent)


def _int_field(text: str, lineno: int, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise InputError(f"line {lineno}: {what} must be an integer, got {text.strip()!r}") from None


def emit_table(t: CharacterTable) -> str:
    lines = [f"degree: {t.group.degree}", f"exponent: {t.exponent}", "classes:"]
    for rep, size in zip(t.representatives, t.class_sizes):
        lines.append(f"  {rep} {size}")
    for r in t.rows:
        lines.append("char: " + ", ".join(format_cyclotomic(v) for v in r))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Dixon's method


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def choose_prime(exponent: int, group_order: int, limit: int = 10**7) -> int:
    """Smallest p = 1 mod exponent with p > 2*sqrt(|G|)."""
    p = exponent + 1
    while p * p <= 4 * group_order or not _is_prime(p):
        p += exponent
        if p > limit:
            raise ConfigurationError(f"no prime = 1 mod {exponent} below {limit}; raise the bound")
    return p


def _primitive_root(p: int) -> int:
    qs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    return 1  # p == 2


def _nullspace_mod(A: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    rows = [[x % p for x in r] for r in A]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-rows[i][f]) % p
        basis.append(v)
    return basis


def _charpoly_mod(M: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial (constant term first) via Hessenberg form."""
    n = len(M)
    H = [[x % p for x in r] for r in M]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = pow(H[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % p
            if u:
                H[i] = [(x - u * y) % p for x, y in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    # polys[m] is the charpoly of the leading m x m block
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev  # x * prev
        h = H[m - 1][m - 1]
        for t, c in enumerate(prev):
            cur[t] = (cur[t] - h * c) % p
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            coef = H[i - 1][m - 1] * prod % p
            if coef:
                for t, c in enumerate(polys[i - 1]):
                    cur[t] = (cur[t] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def class_multiplication_coefficients(G: PermGroup) -> list[list[list[int]]]:
    """a[i][j][l] = #{(x, y) in C_i x C_j : x y = z_l} for the class representative z_l."""
    classes = G.conjugacy_classes
    k = len(classes)
    cidx = G.class_index
    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    for l, z in enumerate(c[0] for c in classes):
        for i, C in enumerate(classes):
            for x in C:
                a[i][cidx[x.inverse() * z]][l] += 1
    return a


def dixon_compute(G: PermGroup, prime_limit: int = 10**7) -> CharacterTable:
    """Compute the irreducible characters of ``G`` exactly.

    Rows are ordered by degree, then by the Galois-averaged values (trivial
    character first), then by canonical coefficient vectors.
    """
    classes = G.conjugacy_classes
    k = len(classes)
    e = G.exponent
    order = G.order
    p = choose_prime(e, order, prime_limit)
    sizes = [len(c) for c in classes]
    reps = [c[0] for c in classes]
    cidx = G.class_index
    inv_class = [cidx[r.inverse()] for r in reps]

    a = class_multiplication_coefficients(G)
    mats = [[[a[i][j][l] % p for l in range(k)] for j in range(k)] for i in range(k)]

    spaces = [[[1 if r == c else 0 for r in range(k)] for c in range(k)]]
    # a fixed combination of class matrices usually separates all characters at once
    combo = [[sum((i + 1) * mats[i][j][l] for i in range(1, k)) % p for l in range(k)] for j in range(k)]
    for M in [combo] + [mats[i] for i in range(1, k)]:
        if all(len(U) == 1 for U in spaces):
            break
        roots = _roots_mod(_charpoly_mod(M, p), p)
        split = []
        for U in spaces:
            if len(U) == 1:
                split.append(U)
                continue
            m = len(U)
            pieces = []
            for lam in roots:
                # columns of (M - lam) @ B where B has the vectors of U as columns
                A = []
                for j in range(k):
                    row = []
                    for u in U:
                        s = sum(M[j][l] * u[l] for l in range(k) if u[l]) - lam * u[j]
                        row.append(s % p)
                    A.append(row)
                cs = _nullspace_mod(A, m, p)
                if cs:
                    pieces.append([[sum(ci * u[l] for ci, u in zip(c, U)) % p for l in range(k)] for c in cs])
            if sum(len(P) for P in pieces) != m:
                raise InternalError("class matrices are not simultaneously diagonalizable mod p")
            split.extend(pieces)
        spaces = split
    if any(len(U) != 1 for U in spaces) or len(spaces) != k:
        raise InternalError("could not separate the irreducible characters")

    g = _primitive_root(p)
    zeta_p = pow(g, (p - 1) // e, p)
    elt_orders = [r.order for r in reps]
    powers = [[cidx[reps[l] ** j] for j in range(elt_orders[l])] for l in range(k)]

    rows = []
    for (w,) in spaces:
        if w[0] == 0:
            raise InternalError("eigenvector vanishes on the identity class")
        inv0 = pow(w[0], p - 2, p)
        w = [x * inv0 % p for x in w]
        s = sum(w[l] * w[inv_class[l]] * pow(sizes[l], p - 2, p) for l in range(k)) % p
        target = order * pow(s, p - 2, p) % p
        degree = next((d for d in range(1, isqrt(order) + 1) if d * d % p == target and order % d == 0), None)
        if degree is None:
            raise InternalError("no admissible character degree for an eigenvector")
        chi_mod = [degree * w[l] * pow(sizes[l], p - 2, p) % p for l in range(k)]
        row = []
        for l in range(k):
            o = elt_orders[l]
            zo = pow(zeta_p, e // o, p)
            inv_o = pow(o, p - 2, p)
            mult = []
            for t in range(o):
                acc = 0
                for j in range(o):
                    acc += chi_mod[powers[l][j]] * pow(zo, (-j * t) % o, p)
                m_t = acc * inv_o % p
                if m_t > degree:
                    raise InternalError(f"eigenvalue multiplicity {m_t} exceeds degree {degree}")
                mult.append(m_t)
            if sum(mult) != degree:
                raise InternalError("eigenvalue multiplicities do not add up to the degree")
            raw = [0] * e
            step = e // o
            for t, m_t in enumerate(mult):
                raw[t * step] += m_t
            row.append(cyclo_normalize(e, raw))
        rows.append(row)

    def sort_key(r):
        return (
            int(r[0].to_rational()),
            tuple(-v.normalized_trace() for v in r),
            tuple(tuple(v.embed(e).coeffs) for v in r),
        )

    rows.sort(key=sort_key)
    return CharacterTable(G, rows, e)


# ---------------------------------------------------------------------------
# rational characters


def galois_orbits(t: CharacterTable, schur: Mapping[str, int] | None = None, labels: Sequence[str] | None = None) -> list[RationalCharacter]:
    """Group the rows into Galois orbits and form their rational traces.

    The Galois automorphism zeta -> zeta**a acts on a character by
    chi -> (g -> chi(g**a)).  Orbits are ordered by their smallest row.
    Default labels are W0, W1, ... in that order.
    """
    e = t.exponent
    k = len(t.classes)
    units = [a for a in range(1, e + 1) if gcd(a, e) == 1]
    pmaps = {a: [t.power_class(c, a) for c in range(k)] for a in units}
    row_index = {}
    for i, r in enumerate(t.rows):
        row_index.setdefault(r, i)
    assigned = [None] * len(t.rows)
    orbits = []
    for i, r in enumerate(t.rows):
        if assigned[i] is not None:
            continue
        orb = set()
        for a in units:
            img = tuple(r[pmaps[a][c]] for c in range(k))
            j = row_index.get(img)
            if j is None:
                raise InternalError(f"Galois image of row {i} is not a row of the table")
            orb.add(j)
        orb = tuple(sorted(orb))
        for j in orb:
            assigned[j] = len(orbits)
        orbits.append(orb)

    schur = dict(schur or {})
    out = []
    for n, orb in enumerate(orbits):
        traces = []
        for c in range(k):
            s = Cyclotomic.rational(0)
            for j in orb:
                s = s + t.rows[j][c]
            if not s.is_rational:
                raise InternalError(f"orbit {orb} has irrational trace {s}")
            traces.append(s.to_rational())
        label = labels[n] if labels and n < len(labels) else f"W{n}"
        rc = RationalCharacter(
            table=t,
            orbit=orb,
            field_degree=len(orb),
            trace_values=tuple(traces),
            degree_complex=t.degrees[orb[0]],
            label=label,
        )
        if label in schur:
            rc = rc.with_schur(schur.pop(label))
        out.append(rc)
    if schur:
        raise InputError(f"Schur index given for unknown characters: {', '.join(sorted(schur))}")
    return out


def fixed_dim(chi, H: PermGroup) -> Fraction:
    """(1/|H|) sum_{h in H} chi(h): the dimension of the H-fixed vectors."""
    total = Cyclotomic.rational(0)
    for h in H.elements:
        total = total + chi(h)
    total = total / H.order
    if not total.is_rational:
        raise InvalidCharacterError(f"fixed-space dimension {total} is not rational")
    q = total.to_rational()
    if q.denominator != 1 or q < 0:
        raise InvalidCharacterError(f"fixed-space dimension {q} is not a nonnegative integer")
    return q


def char_on_coset_average(chi, coset_elements, H_order: int) -> Cyclotomic:
    """(1/|H|) sum of chi over a set, i.e. chi evaluated on q_i."""
    total = Cyclotomic.rational(0)
    for g in coset_elements:
        total = total + chi(g)
    return total / H_order


def character_of_element(chi, alpha: GroupAlgebraElement) -> Cyclotomic:
    """Linear extension of chi to the group algebra."""
    total = Cyclotomic.rational(0)
    for g, c in alpha.coeffs.items():
        total = total + Cyclotomic.coerce(chi(g)) * c
    return total


def central_idempotent(rc: RationalCharacter) -> GroupAlgebraElement:
    """e_W = (dim V/|G|) sum_g tr_{K/Q}(chi_V(g^-1)) g."""
    t = rc.table
    G = t.group
    scale = Fraction(rc.degree_complex, G.order)
    inv = [t.inverse_class(c) for c in range(len(t.classes))]
    coeffs = {}
    for c, cls in enumerate(t.classes):
        v = rc.trace_values[inv[c]] * scale
        if v:
            for g in cls:
                coeffs[G.index(g)] = v
    e = GroupAlgebraElement(G, coeffs)
    if not is_idempotent(e):
        raise InvalidCharacterError(f"central idempotent for {rc.label or rc.orbit} is not idempotent")
    for s in G.generators:
        d = GroupAlgebraElement.delta(G, s)
        if not e.commutes_with(d):
            raise InvalidCharacterError(f"idempotent for {rc.label or rc.orbit} is not central")
    return e


def apply_labels(
    rcs: Sequence[RationalCharacter],
    signatures: Mapping[str, Sequence[tuple[Permutation, Fraction]]],
    schur: Mapping[str, int] | None = None,
) -> list[RationalCharacter]:
    """Rename rational characters by their trace values on chosen elements.

    Each signature must match exactly one character.  Schur overrides are
    applied afterwards, keyed by the final labels.
    """
    out = list(rcs)
    taken: dict[int, str] = {}
    for label, sig in signatures.items():
        hits = [i for i, rc in enumerate(out) if all(rc(g) == Fraction(v) for g, v in sig)]
        if len(hits) != 1:
            raise InputError(f"label {label!r} matches {len(hits)} rational characters, expected 1")
        i = hits[0]
        if i in taken:
            raise InputError(f"labels {taken[i]!r} and {label!r} name the same character")
        taken[i] = label
        out[i] = out[i].with_label(label)
    names = [rc.label for rc in out]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise InputError(f"duplicate character labels after renaming: {', '.join(dupes)}")
    schur = dict(schur or {})
    for i, rc in enumerate(out):
        if rc.label in schur:
            out[i] = rc.with_schur(schur.pop(rc.label))
    if schur:
        raise InputError(f"Schur index given for unknown characters: {', '.join(sorted(schur))}")
    return out
