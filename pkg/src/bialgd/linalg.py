"""Exact scalar fields and the linear-algebra kernel.

Two ground fields are supported: the rationals (``QQ``) and prime fields
(``GF(p)``).  Every routine is exact; there is no tolerance anywhere.

Elimination runs on sparse rows (``dict`` column -> scalar).  Over the
rationals the rows are cleared to primitive integer vectors and eliminated
fraction-free (cross-multiplication followed by content removal), which keeps
intermediate growth bounded; over GF(p) rows are plain residues.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NoSolution, NotInSubspace, Singular


# ---------------------------------------------------------------------------
# fields


class Fp:
    """A residue modulo a prime, reduced to ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _parse_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class RationalField:
    name = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return _parse_rational(x)

    def format(self, x) -> str:
        return str(Fraction(x))

    def random_element(self, rng: random.Random, bound: int = 9) -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    def spec(self):
        return "Q"

    def __repr__(self):
        return "QQ"

    # elimination backend: primitive integer rows

    def _prep(self, row: dict) -> dict:
        den = 1
        for v in row.values():
            d = v.denominator if isinstance(v, Fraction) else 1
            den = den * d // math.gcd(den, d)
        out = {}
        for k, v in row.items():
            if v:
                if isinstance(v, Fraction):
                    out[k] = v.numerator * (den // v.denominator)
                else:
                    out[k] = int(v) * den
        return _primitive(out)

    def _pivot(self, row, c):
        return row

    def _eliminate(self, r, p, c):
        a = p[c]
        b = r[c]
        g = math.gcd(a, b)
        a //= g
        b //= g
        if a != 1:
            out = {k: a * v for k, v in r.items()}
        else:
            out = dict(r)
        for k, v in p.items():
            w = out.get(k, 0) - b * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return _primitive(out)

    def _export(self, row, c):
        piv = row[c]
        return {k: Fraction(v, piv) for k, v in row.items()}


def _primitive(row: dict) -> dict:
    if not row:
        return row
    g = math.gcd(*row.values())
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class PrimeField:
    characteristic: int

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or not _is_prime(p):
            raise ValueError(f"GF(p) requires a prime p, got {p!r}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("element of a different prime field")
            return x
        q = _parse_rational(x)
        if q.denominator % self.p == 0:
            raise ValueError(f"{x!r} has a denominator divisible by {self.p}")
        return Fp(q.numerator * pow(q.denominator, -1, self.p), self.p)

    def format(self, x) -> str:
        return str(self(x).v)

    def random_element(self, rng: random.Random, bound: int = 9) -> Fp:
        return Fp(rng.randrange(self.p), self.p)

    def spec(self):
        return {"Fp": self.p}

    def __repr__(self):
        return f"GF({self.p})"

    def _prep(self, row):
        p = self.p
        out = {}
        for k, v in row.items():
            w = (v.v if isinstance(v, Fp) else int(v)) % p
            if w:
                out[k] = w
        return out

    def _pivot(self, row, c):
        inv = pow(row[c], -1, self.p)
        if inv == 1:
            return row
        return {k: v * inv % self.p for k, v in row.items()}

    def _eliminate(self, r, piv, c):
        P = self.p
        b = r[c]
        out = dict(r)
        for k, v in piv.items():
            w = (out.get(k, 0) - b * v) % P
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return out

    def _export(self, row, c):
        return {k: Fp(v, self.p) for k, v in row.items()}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec):
    """``"Q"`` or ``{"Fp": p}``."""
    if spec == "Q" or spec is None:
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return GF(spec["Fp"])
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# sparse row reduction


class RowReduction:
    """Reduced row echelon form of a family of sparse rows.

    Pivots are chosen at the first nonzero column of each row, so the result
    is independent of anything but the input order of the rows and columns.
    ``rows[c]`` is the reduced row whose pivot is column ``c`` (pivot entry 1).
    """

    def __init__(self, rows: Iterable[dict], field):
        self.field = field
        piv: dict[int, dict] = {}
        for r in rows:
            r = field._prep(r)
            while r:
                hits = [c for c in r if c in piv]
                if not hits:
                    break
                c = min(hits)
                r = field._eliminate(r, piv[c], c)
            if r:
                c = min(r)
                piv[c] = field._pivot(r, c)
        for c in sorted(piv, reverse=True):
            row = piv[c]
            for k in [k for k in row if k != c and k in piv]:
                if k in row:
                    row = field._eliminate(row, piv[k], k)
            piv[c] = field._pivot(row, c)
        self.pivots = sorted(piv)
        self.rows = {c: field._export(piv[c], c) for c in self.pivots}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict) -> dict:
        """Remainder of ``v`` modulo the row space (zero on every pivot)."""
        out = {k: x for k, x in v.items() if x}
        for c in [c for c in out if c in self.rows]:
            x = out.get(c)
            if not x:
                continue
            for k, y in self.rows[c].items():
                w = out.get(k, 0) - x * y
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def sparse_kernel(rows: Iterable[dict], ncols: int, field) -> list[dict]:
    """Basis of ``{x : row . x = 0 for every row}``, one vector per free column."""
    rr = RowReduction(rows, field)
    free = [c for c in range(ncols) if c not in rr.rows]
    basis = {f: {f: field.one} for f in free}
    for p, row in rr.rows.items():
        for k, v in row.items():
            if k != p:
                basis[k][p] = -v
    return [basis[f] for f in free]


def sparse_solve(rows: Sequence[dict], rhs: Sequence, ncols: int, field):
    """Solve ``M x = rhs`` with ``M`` given by sparse rows.

    Returns ``(particular, kernel_basis)``; free variables of the particular
    solution are zero.  Raises ``NoSolution`` when ``rhs`` is outside the
    column space.
    """
    aug = []
    for r, b in zip(rows, rhs):
        if b:
            r = dict(r)
            r[ncols] = b
        aug.append(r)
    if len(rows) != len(rhs):
        raise ValueError("row count and right-hand side length differ")
    rr = RowReduction(aug, field)
    if ncols in rr.rows:
        raise NoSolution("right-hand side is not in the column space")
    particular = {}
    for p, row in rr.rows.items():
        v = row.get(ncols)
        if v:
            particular[p] = v
    free = [c for c in range(ncols) if c not in rr.rows]
    kernel = {f: {f: field.one} for f in free}
    for p, row in rr.rows.items():
        for k, v in row.items():
            if k != p and k != ncols:
                kernel[k][p] = -v
    return particular, [kernel[f] for f in free]


def dense(v: dict, n: int, field) -> list:
    out = [field.zero] * n
    for k, x in v.items():
        out[k] = x
    return out


def sparse(v: Sequence) -> dict:
    return {i: x for i, x in enumerate(v) if x}


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, rows, field=QQ, ncols=None):
        rows = tuple(tuple(field(x) if not _is_scalar(x, field) else x for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def identity(cls, n, field=QQ):
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        return cls([[field.zero] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def from_columns(cls, cols, nrows, field=QQ):
        cols = list(cols)
        return cls([[c[i] for c in cols] for i in range(nrows)], field, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def rows(self):
        return [list(r) for r in self._rows]

    def row(self, i):
        return list(self._rows[i])

    def col(self, j):
        return [r[j] for r in self._rows]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    @property
    def T(self):
        return Matrix([[r[j] for r in self._rows] for j in range(self.ncols)], self.field, self.nrows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.field, self.ncols)

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.field, self.ncols)

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self._rows], self.field, self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            zero = self.field.zero
            ocols = other.ncols
            orows = other._rows
            out = []
            for r in self._rows:
                acc = [zero] * ocols
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(orows[k]):
                            if b:
                                acc[j] = acc[j] + a * b
                out.append(acc)
            return Matrix(out, self.field, ocols)
        v = list(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        zero = self.field.zero
        out = []
        for r in self._rows:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def is_zero(self):
        return all(not x for r in self._rows for x in r)

    def sparse_rows(self):
        return [sparse(r) for r in self._rows]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self._rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"


def _is_scalar(x, field):
    if field is QQ:
        return isinstance(x, Fraction)
    return isinstance(x, Fp) and x.p == field.p


def as_matrix(M, field=QQ) -> Matrix:
    return M if isinstance(M, Matrix) else Matrix(M, field)


@dataclass(frozen=True)
class Solution:
    particular: list
    kernel_basis: list


def rank(M) -> int:
    """Row-echelon rank."""
    M = as_matrix(M)
    return RowReduction(M.sparse_rows(), M.field).rank


def column_rank(M) -> int:
    """Column-echelon rank, computed by fraction-free elimination of the columns."""
    M = as_matrix(M)
    return _bareiss(M.T)[0]


def kernel(M) -> list[list]:
    M = as_matrix(M)
    return [dense(v, M.ncols, M.field) for v in sparse_kernel(M.sparse_rows(), M.ncols, M.field)]


def solve(M, b) -> Solution:
    M = as_matrix(M)
    b = [M.field(x) for x in b]
    if len(b) != M.nrows:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    part, ker = sparse_solve(M.sparse_rows(), b, M.ncols, M.field)
    return Solution(dense(part, M.ncols, M.field), [dense(v, M.ncols, M.field) for v in ker])


def span_membership(v, spanning_set, field=QQ):
    """Return ``(True, coeffs)`` when ``v`` is a combination of ``spanning_set``.

    ``coeffs`` reproduce ``v`` exactly; ``(False, None)`` otherwise.
    """
    v = [field(x) for x in v]
    vecs = [[field(x) for x in s] for s in spanning_set]
    if any(len(s) != len(v) for s in vecs):
        raise ValueError("vectors of different lengths")
    if not vecs:
        return (True, []) if all(not x for x in v) else (False, None)
    M = Matrix.from_columns(vecs, len(v), field)
    try:
        sol = solve(M, v)
    except NoSolution:
        return False, None
    return True, sol.particular


def invert(M) -> Matrix:
    M = as_matrix(M)
    n = M.nrows
    if M.ncols != n:
        raise ValueError("only square matrices are invertible")
    f = M.field
    aug = []
    for i, r in enumerate(M._rows):
        row = sparse(r)
        row[n + i] = f.one
        aug.append(row)
    rr = RowReduction(aug, f)
    if rr.pivots[:n] != list(range(n)):
        raise Singular(f"matrix has rank < {n}")
    out = []
    for i in range(n):
        row = rr.rows[i]
        out.append([row.get(n + j, f.zero) for j in range(n)])
    return Matrix(out, f, n)


def det(M):
    M = as_matrix(M)
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    return _bareiss(M)[1]


def _bareiss(M: Matrix):
    """Fraction-free elimination; returns ``(rank, det)`` (det only if square)."""
    f = M.field
    n, m = M.nrows, M.ncols
    if f is QQ:
        scale = Fraction(1)
        rows = []
        for r in M._rows:
            den = 1
            for x in r:
                den = den * x.denominator // math.gcd(den, x.denominator)
            rows.append([int(x * den) for x in r])
            scale *= den
        one = 1
    else:
        rows = [list(r) for r in M._rows]
        scale = f.one
        one = f.one
    sign = 1
    prev = one
    rk = 0
    col = 0
    while rk < n and col < m:
        piv = next((i for i in range(rk, n) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        if piv != rk:
            rows[rk], rows[piv] = rows[piv], rows[rk]
            sign = -sign
        p = rows[rk][col]
        for i in range(rk + 1, n):
            a = rows[i][col]
            ri = rows[i]
            rr = rows[rk]
            for j in range(col, m):
                v = p * ri[j] - a * rr[j]
                ri[j] = v // prev if f is QQ else v / prev
        prev = p
        rk += 1
        col += 1
    d = None
    if n == m:
        if rk < n:
            d = f.zero
        else:
            d = rows[n - 1][n - 1] * sign
            d = Fraction(d) / scale if f is QQ else d / scale
    return rk, d


# ---------------------------------------------------------------------------
# subspaces and quotients


class Subspace:
    """A subspace of ``field^n`` with a canonical (reduced echelon) basis.

    Coordinates of a member are read off at the pivot positions.
    """

    def __init__(self, vectors: Iterable, n: int, field):
        self.field = field
        self.n = n
        rr = RowReduction((v if isinstance(v, dict) else sparse(v) for v in vectors), field)
        self.pivots = rr.pivots
        self._rr = rr
        self.basis = [dense(rr.rows[p], n, field) for p in self.pivots]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return len(self.pivots)

    def contains(self, v) -> bool:
        v = v if isinstance(v, dict) else sparse(v)
        return self._rr.contains(v)

    def coords(self, v) -> list:
        vd = v if isinstance(v, dict) else sparse(v)
        if not self._rr.contains(vd):
            raise NotInSubspace("vector is not in the subspace")
        return [vd.get(p, self.field.zero) for p in self.pivots]

    def element(self, coords) -> list:
        out = [self.field.zero] * self.n
        for c, b in zip(coords, self.basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        out[i] = out[i] + c * x
        return out

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.pivots == other.pivots and self.basis == other.basis

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)


class Quotient:
    """``field^ambient / span(relations)`` with the echelon section.

    The representatives of the quotient basis are the non-pivot ambient
    coordinates of the reduced relation space; ``project`` and ``lift``
    satisfy ``project(lift(c)) == c``.
    """

    def __init__(self, ambient: int, relations: Iterable[dict], field):
        self.field = field
        self.ambient = ambient
        self._rr = RowReduction(relations, field)
        piv = set(self._rr.pivots)
        self.reps = [c for c in range(ambient) if c not in piv]
        self.index = {c: i for i, c in enumerate(self.reps)}

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def relation_rank(self) -> int:
        return self._rr.rank

    def project(self, v) -> list:
        vd = v if isinstance(v, dict) else sparse(v)
        red = self._rr.reduce(vd)
        out = [self.field.zero] * len(self.reps)
        idx = self.index
        for k, x in red.items():
            out[idx[k]] = x
        return out

    def is_zero(self, v) -> bool:
        vd = v if isinstance(v, dict) else sparse(v)
        return not self._rr.reduce(vd)

    def lift(self, coords) -> dict:
        return {self.reps[i]: c for i, c in enumerate(coords) if c}

    def relation_rows(self) -> list[dict]:
        """Reduced basis of the relation space."""
        return [self._rr.rows[p] for p in self._rr.pivots]

    def lift_alt(self, coords) -> dict:
        """A second section: the echelon lift shifted by relation vectors."""
        out = self.lift(coords)
        rels = [self._rr.rows[p] for p in self._rr.pivots]
        if not rels:
            return out
        for i, c in enumerate(coords):
            if not c:
                continue
            for k, x in rels[i % len(rels)].items():
                w = out.get(k, 0) + c * x
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out


# ---------------------------------------------------------------------------
# matrix commutants


def flatten(M: Matrix) -> list:
    return [x for r in M._rows for x in r]


def unflatten(v, n: int, field) -> Matrix:
    return Matrix([list(v[i * n:(i + 1) * n]) for i in range(n)], field, n)


def commutant_space(mats: Iterable[Matrix], n: int, field) -> Subspace:
    """All ``n x n`` matrices ``X`` with ``X M = M X`` for every ``M`` given.

    Members are flattened row-major (entry ``(i, j)`` at ``i * n + j``).
    """
    return Subspace(sparse_kernel(commutant_rows(mats, n), n * n, field), n * n, field)


def commutant_rows(mats: Iterable[Matrix], n: int) -> list[dict]:
    """Linear equations (on flattened ``X``) for ``X M - M X = 0``."""
    rows = []
    for M in mats:
        R = M._rows
        for i in range(n):
            for j in range(n):
                row = {}
                for k in range(n):
                    a = R[k][j]
                    if a:
                        row[i * n + k] = row.get(i * n + k, 0) + a
                    b = R[i][k]
                    if b:
                        row[k * n + j] = row.get(k * n + j, 0) - b
                row = {c: x for c, x in row.items() if x}
                if row:
                    rows.append(row)
    return rows
