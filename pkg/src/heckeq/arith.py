"""Exact arithmetic: rationals, cyclotomic numbers and linear algebra over Q.

Rationals are :class:`fractions.Fraction`.  A :class:`Cyclotomic` of order
``n`` is a residue in ``Q[x]/(Phi_n(x))`` where ``x`` stands for the fixed
primitive root ``exp(2*pi*i/n)``.  Matrices and subspaces are immutable; all
row reductions are done on integer-scaled rows so intermediate growth stays
small and results are canonical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionError, InputError

Rational = Fraction

__all__ = [
    "Rational",
    "Cyclotomic",
    "MatrixQ",
    "SubspaceQ",
    "cyclotomic_polynomial",
    "cyclo_normalize",
    "parse_cyclotomic",
    "rref",
    "kernel_space",
    "image_space",
    "subspace_intersect",
]


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    """Divide integer polynomials (low degree first); ``den`` is monic."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise InputError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _reduce_mod_phi(coeffs: list[int], n: int) -> list[int]:
    """Remainder of an integer polynomial modulo Phi_n (Phi_n is monic)."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    c = list(coeffs) + [0] * max(0, d - len(coeffs))
    for i in range(len(c) - 1, d - 1, -1):
        t = c[i]
        if t:
            for j in range(d):
                if phi[j]:
                    c[i - d + j] -= t * phi[j]
    return c[:d]


def _normalize_content(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num, den = [-x for x in num], -den
    g = reduce(gcd, num, den)
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


def _split_fractions(values: Sequence) -> tuple[list[int], int]:
    fr = [Fraction(x) for x in values]
    den = lcm(1, *(x.denominator for x in fr))
    return [x.numerator * (den // x.denominator) for x in fr], den


# ---------------------------------------------------------------------------
# Cyclotomic numbers


class Cyclotomic:
    """Element of Q(zeta_n) in canonical form modulo Phi_n.

    Stored as an integer numerator vector over a positive common denominator.
    Instances are immutable.  Arithmetic between different orders happens in
    the order ``lcm(n1, n2)``; results are not descended to a smaller field.
    """

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, num: Sequence[int], den: int = 1):
        # callers guarantee num is reduced mod Phi_n; use cyclo_normalize otherwise
        num, den = _normalize_content(list(num), den)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    # -- constructors
    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        q = Fraction(value)
        return cls(1, (q.numerator,), q.denominator)

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclotomic":
        raw = [0] * n
        raw[k % n] = 1
        return cyclo_normalize(n, raw)

    @staticmethod
    def coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # -- predicates and views
    @property
    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_integral_vector(self) -> bool:
        return self._den == 1

    def embed(self, m: int) -> "Cyclotomic":
        """Re-express in Q(zeta_m); ``m`` must be a multiple of the order."""
        if m == self.order:
            return self
        if m % self.order:
            raise InputError(f"cannot embed order {self.order} into order {m}")
        step = m // self.order
        raw = [0] * m
        for k, c in enumerate(self._num):
            if c:
                raw[k * step] += c
        return Cyclotomic(m, _reduce_mod_phi(raw, m), self._den)

    def galois(self, a: int) -> "Cyclotomic":
        """Image under zeta -> zeta**a (``a`` coprime to the order)."""
        n = self.order
        if gcd(a, n) != 1:
            raise InputError(f"{a} is not a unit modulo {n}")
        raw = [0] * n
        for k, c in enumerate(self._num):
            if c:
                raw[(k * a) % n] += c
        return Cyclotomic(n, _reduce_mod_phi(raw, n), self._den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def normalized_trace(self) -> Fraction:
        """Trace to Q divided by the field degree; independent of the order."""
        n = self.order
        total = Fraction(0)
        for k, c in enumerate(self._num):
            if c:
                m = n // gcd(n, k)
                total += c * Fraction(_mobius(m), _phi(m))
        return total / self._den

    # -- arithmetic
    def _common(self, other):
        other = Cyclotomic.coerce(other)
        if self.order == other.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        da, db = a._den, b._den
        if da == db:
            return Cyclotomic(a.order, [x + y for x, y in zip(a._num, b._num)], da)
        return Cyclotomic(a.order, [x * db + y * da for x, y in zip(a._num, b._num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-x for x in self._num], self._den)

    def __sub__(self, other):
        try:
            return self + (-Cyclotomic.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.order, [x * q.numerator for x in self._num], self._den * q.denominator)
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        an, bn = a._num, b._num
        if len(an) == 1:
            return Cyclotomic(a.order, [an[0] * y for y in bn], a._den * b._den)
        prod = [0] * (len(an) + len(bn) - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.order, _reduce_mod_phi(prod, a.order), a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = Cyclotomic.coerce(other)
        if other.is_rational:
            return self * (1 / other.to_rational())
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison
    def __eq__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        return hash(self.normalized_trace())

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        return format_cyclotomic(self)


def cyclo_normalize(n: int, raw: Sequence) -> Cyclotomic:
    """Canonical residue of ``sum raw[k] * zeta_n**k`` modulo Phi_n."""
    if n < 1:
        raise InputError(f"cyclotomic order must be positive, got {n}")
    nums, den = _split_fractions(raw)
    folded = [0] * n
    for k, c in enumerate(nums):
        if c:
            folded[k % n] += c
    return Cyclotomic(n, _reduce_mod_phi(folded, n), den)


def format_cyclotomic(x: Cyclotomic) -> str:
    terms = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        body = str(mag) if k == 0 else f"{mag}*z{x.order}^{k}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<num>\d+(?:/\d+)?)(?:\s*\*\s*(?P<z1>z\s*\d+(?:\s*\^\s*-?\d+)?))?"
    r"|(?P<z2>z\s*\d+(?:\s*\^\s*-?\d+)?))\s*"
)
_Z_RE = re.compile(r"z\s*(\d+)(?:\s*\^\s*(-?\d+))?")


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse ``term (('+'|'-') term)*`` with ``term := rational ['*' 'z' n '^' k]``."""
    pos = 0
    total = Cyclotomic.rational(0)
    first = True
    s = text.strip()
    if not s:
        raise InputError("empty cyclotomic expression")
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse cyclotomic value at column {pos + 1}: {text!r}")
        if not first and m.group("sign") is None:
            raise InputError(f"missing operator at column {pos + 1}: {text!r}")
        coeff = Fraction(m.group("num")) if m.group("num") else Fraction(1)
        if m.group("sign") == "-":
            coeff = -coeff
        zpart = m.group("z1") or m.group("z2")
        if zpart:
            zm = _Z_RE.fullmatch(zpart)
            n = int(zm.group(1))
            if n < 1:
                raise InputError(f"root order must be positive in {text!r}")
            k = int(zm.group(2)) if zm.group(2) is not None else 1
            total = total + Cyclotomic.root(n, k) * coeff
        else:
            total = total + coeff
        pos = m.end()
        first = False
    return total


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class MatrixQ:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "MatrixQ":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged matrix rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        e = [Fraction(0)] * (n * n)
        for i in range(n):
            e[i * n + i] = Fraction(1)
        return cls(n, n, tuple(e))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "MatrixQ":
        return MatrixQ(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _check_same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return MatrixQ(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "MatrixQ":
        c = Fraction(c)
        return MatrixQ(self.rows, self.cols, tuple(a * c for a in self.entries))

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        da, A = _scaled_int_rows(self)
        db, B = _scaled_int_rows(other)
        out = []
        n = other.cols
        for arow in A:
            acc = [0] * n
            for k, a in enumerate(arow):
                if a:
                    brow = B[k]
                    for j in range(n):
                        b = brow[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        den = da * db
        return MatrixQ(self.rows, n, tuple(Fraction(x, den) for r in out for x in r))

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionError("vector length does not match matrix")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        )


def _scaled_int_rows(m: MatrixQ) -> tuple[int, list[list[int]]]:
    den = 1
    for x in m.entries:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    rows = []
    for i in range(m.rows):
        rows.append([x.numerator * (den // x.denominator) for x in m.row(i)])
    return den, rows


def _int_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in row]


def _row_content(row: list[int]) -> int:
    return reduce(gcd, row, 0)


def _rref_rows(rows: Iterable[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination on integer-scaled rows.

    Pivot choice is the leftmost column with a nonzero entry and, within it,
    the first such row; the output is the unique reduced row echelon form.
    """
    work = []
    for r in rows:
        ir = _int_row(r)
        if any(ir):
            work.append(ir)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        p = work[r]
        pc = p[c]
        for i in range(len(work)):
            if i == r:
                continue
            f = work[i][c]
            if not f:
                continue
            g = gcd(pc, f)
            a, b = pc // g, f // g
            new = [a * x - b * y for x, y in zip(work[i], p)]
            cont = _row_content(new)
            if cont > 1:
                new = [x // cont for x in new]
            work[i] = new
        pivots.append(c)
        r += 1
    out = []
    for i, c in enumerate(pivots):
        pc = work[i][c]
        out.append([Fraction(x, pc) for x in work[i]])
    return out, pivots


@dataclass(frozen=True)
class SubspaceQ:
    """Subspace of Q^n stored as the RREF of a spanning set (one row per vector)."""

    ambient_dim: int
    basis: MatrixQ

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "SubspaceQ":
        vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, _ = _rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, MatrixQ(len(rows), ambient_dim, tuple(x for r in rows for x in r)))

    @classmethod
    def zero(cls, n: int) -> "SubspaceQ":
        return cls(n, MatrixQ(0, n, ()))

    @classmethod
    def full(cls, n: int) -> "SubspaceQ":
        return cls(n, MatrixQ.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple]:
        return [self.basis.row(i) for i in range(self.basis.rows)]

    def contains(self, v: Sequence) -> bool:
        return SubspaceQ.span(self.vectors() + [v], self.ambient_dim).dim == self.dim

    def __le__(self, other: "SubspaceQ") -> bool:
        _check_ambient(self, other)
        return (self + other).dim == other.dim

    def __add__(self, other: "SubspaceQ") -> "SubspaceQ":
        _check_ambient(self, other)
        return SubspaceQ.span(self.vectors() + other.vectors(), self.ambient_dim)

    def __and__(self, other: "SubspaceQ") -> "SubspaceQ":
        return subspace_intersect(self, other)

    def orthogonal(self) -> "SubspaceQ":
        """Annihilator under the standard dot product."""
        return kernel_space(self.basis)

    def image_under(self, m: MatrixQ) -> "SubspaceQ":
        if m.cols != self.ambient_dim:
            raise DimensionError("matrix does not act on this ambient space")
        return SubspaceQ.span([m.apply(v) for v in self.vectors()], m.rows)


def _check_ambient(a: SubspaceQ, b: SubspaceQ):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def rref(m: MatrixQ) -> tuple[SubspaceQ, int]:
    rows, _ = _rref_rows((m.row(i) for i in range(m.rows)), m.cols)
    basis = MatrixQ(len(rows), m.cols, tuple(x for r in rows for x in r))
    return SubspaceQ(m.cols, basis), len(rows)


def kernel_space(m: MatrixQ) -> SubspaceQ:
    """Exact null space {v : m v = 0}."""
    rows, pivots = _rref_rows((m.row(i) for i in range(m.rows)), m.cols)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        vecs.append(v)
    return SubspaceQ.span(vecs, m.cols)


def image_space(m: MatrixQ) -> SubspaceQ:
    """Column space of ``m``."""
    return rref(m.transpose())[0]


def subspace_intersect(a: SubspaceQ, b: SubspaceQ) -> SubspaceQ:
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.dim == n:
        return b
    if b.dim == n:
        return a
    perp = a.orthogonal().vectors() + b.orthogonal().vectors()
    return kernel_space(MatrixQ.from_rows(perp, cols=n))
