"""Finite-dimensional unital algebras, ring extensions, and group algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import InvalidAlgebra, InvalidExtension, OrderCapExceeded, ParentMismatch
from .linalg import QQ, Matrix, Subspace, sparse_kernel, dense

DEFAULT_ORDER_CAP = 512


class Algebra:
    """A unital associative algebra given by structure constants.

    ``mult[i][j]`` is a sparse dict ``{k: c}`` meaning ``e_i e_j = sum_k c e_k``.
    """

    def __init__(self, field, basis_names, mult, unit, elements=None):
        self.field = field
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        n = self.dim
        if len(mult) != n or any(len(r) != n for r in mult):
            raise InvalidAlgebra(f"multiplication table must be {n} x {n}")
        self.mult = tuple(
            tuple({k: field(c) for k, c in m.items() if c} for m in row) for row in mult
        )
        if len(unit) != n:
            raise InvalidAlgebra("unit vector has the wrong length")
        self.unit = tuple(field(x) for x in unit)
        # permutations indexing the basis, for group algebras
        self.elements = tuple(elements) if elements is not None else None

    @classmethod
    def from_dense(cls, field, basis_names, table, unit):
        """Build from a dense ``c[i][j][k]`` tensor."""
        mult = [[{k: field(c) for k, c in enumerate(ck) if field(c)} for ck in row] for row in table]
        return cls(field, basis_names, mult, unit)

    def zero_vector(self):
        return [self.field.zero] * self.dim

    def basis_vector(self, i):
        v = self.zero_vector()
        v[i] = self.field.one
        return v

    def one(self):
        return list(self.unit)

    def product(self, x: Sequence, y: Sequence) -> list:
        out = self.zero_vector()
        mult = self.mult
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = mult[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j].items():
                    out[k] = out[k] + ab * c
        return out

    def basis_product(self, i, j) -> list:
        return dense(self.mult[i][j], self.dim, self.field)

    def left_matrix(self, x) -> Matrix:
        """Matrix of ``a -> x a`` (column ``j`` is ``x e_j``)."""
        cols = [self.product(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    def right_matrix(self, x) -> Matrix:
        cols = [self.product(self.basis_vector(j), x) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.field(c) for c in coords))

    def verify(self) -> list[tuple]:
        """Return the failing (kind, indices) pairs; empty means a valid algebra."""
        n = self.dim
        failures = []
        one = self.one()
        for i in range(n):
            e = self.basis_vector(i)
            if self.product(one, e) != e or self.product(e, one) != e:
                failures.append(("unit", (i,)))
        for i, j in itertools.product(range(n), repeat=2):
            ij = self.basis_product(i, j)
            for k in range(n):
                lhs = self.product(ij, self.basis_vector(k))
                rhs = self.product(self.basis_vector(i), self.basis_product(j, k))
                if lhs != rhs:
                    failures.append(("associativity", (i, j, k)))
        return failures

    def check(self):
        failures = self.verify()
        if failures:
            kind, idx = failures[0]
            names = ", ".join(self.basis_names[i] for i in idx)
            raise InvalidAlgebra(f"{kind} fails at basis ({names}) indices {idx}")

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field!r})"


@dataclass(frozen=True)
class AlgebraElement:
    parent: Algebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.parent.dim:
            raise ValueError("coordinate length does not match the parent dimension")

    def __mul__(self, other):
        return multiply(self, other)

    def __add__(self, other):
        _same_parent(self, other)
        return AlgebraElement(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        _same_parent(self, other)
        return AlgebraElement(self.parent, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c):
        return AlgebraElement(self.parent, tuple(c * a for a in self.coords))


def _same_parent(x, y):
    if x.parent is not y.parent:
        raise ParentMismatch("elements belong to different algebras")


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same_parent(x, y)
    return AlgebraElement(x.parent, tuple(x.parent.product(x.coords, y.coords)))


# ---------------------------------------------------------------------------
# ring extensions


class RingExtension:
    """A unital subalgebra ``B`` of ``A`` given by spanning vectors.

    The span is reduced to an echelon basis.  Non-closed spans are rejected,
    never closed up silently.
    """

    def __init__(self, A: Algebra, B_span):
        self.A = A
        f = A.field
        vecs = [[f(x) for x in v] for v in B_span]
        if any(len(v) != A.dim for v in vecs):
            raise InvalidExtension("subalgebra vectors have the wrong length")
        self.B = Subspace(vecs, A.dim, f)
        self.B_basis = self.B.basis
        if not self.B.contains(A.one()):
            raise InvalidExtension("subalgebra span does not contain the unit of A")
        for (i, x), (j, y) in itertools.product(enumerate(self.B_basis), repeat=2):
            if not self.B.contains(A.product(x, y)):
                raise InvalidExtension(f"subalgebra span is not closed: b{i} * b{j} leaves it")

    @property
    def field(self):
        return self.A.field

    @property
    def n(self):
        return self.A.dim

    @property
    def m(self):
        return len(self.B_basis)

    @cached_property
    def lambda_b(self) -> list[Matrix]:
        return [self.A.left_matrix(b) for b in self.B_basis]

    @cached_property
    def rho_b(self) -> list[Matrix]:
        return [self.A.right_matrix(b) for b in self.B_basis]

    @cached_property
    def R(self) -> Subspace:
        return centralizer(self)

    @property
    def R_basis(self):
        return self.R.basis

    def __repr__(self):
        return f"RingExtension(dim A={self.n}, dim B={self.m})"


def centralizer(ext: RingExtension) -> Subspace:
    """``C_A(B)``: the joint kernel of ``lambda_b - rho_b`` over the B-basis."""
    n = ext.n
    rows = []
    for L, Rm in zip(ext.lambda_b, ext.rho_b):
        D = L - Rm
        for i in range(n):
            row = {j: x for j, x in enumerate(D.row(i)) if x}
            if row:
                rows.append(row)
    return Subspace(sparse_kernel(rows, n, ext.field), n, ext.field)


# ---------------------------------------------------------------------------
# permutations and group algebras


def compose(g, h):
    """``(g h)(x) = g(h(x))``."""
    return tuple(g[x] for x in h)


def inverse(g):
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def from_cycles(cycles, degree: int):
    """Permutation of ``{0..degree-1}`` from 1-based cycle lists."""
    perm = list(range(degree))
    seen = set()
    for cyc in cycles:
        pts = [int(x) - 1 for x in cyc]
        for p in pts:
            if p < 0 or p >= degree:
                raise ValueError(f"point {p + 1} outside 1..{degree}")
            if p in seen:
                raise ValueError(f"point {p + 1} repeated in cycle notation")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def cycle_string(g) -> str:
    seen = set()
    parts = []
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = g[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "e"


def generate_group(generators, degree: int, cap: int = DEFAULT_ORDER_CAP) -> list:
    """All elements of the group generated, sorted (identity first)."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        raise OrderCapExceeded(f"group order exceeds the cap of {cap}")
        frontier = nxt
    return sorted(elems)


def algebra_of_group(elements, field=QQ) -> Algebra:
    elements = list(elements)
    index = {g: i for i, g in enumerate(elements)}
    mult = []
    for g in elements:
        row = []
        for h in elements:
            gh = compose(g, h)
            if gh not in index:
                raise InvalidAlgebra("element list is not closed under composition")
            row.append({index[gh]: field.one})
        mult.append(row)
    ident = tuple(range(len(elements[0]))) if elements else ()
    unit = [field.one if g == ident else field.zero for g in elements]
    names = [cycle_string(g) for g in elements]
    return Algebra(field, names, mult, unit, elements=elements)


def group_algebra(generators, field=QQ, degree: int | None = None, cap: int = DEFAULT_ORDER_CAP) -> Algebra:
    """Group algebra of the permutation group generated by ``generators``.

    Generators are permutation tuples (0-based images).  With no generators
    the result is the field itself (``degree`` defaults to 1).
    """
    gens = [tuple(g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    if any(len(g) != degree for g in gens):
        raise ValueError("generators act on different degrees")
    return algebra_of_group(generate_group(gens, degree, cap), field)


def subgroup_extension(G_gens, H_gens, field=QQ, degree: int | None = None, cap: int = DEFAULT_ORDER_CAP) -> RingExtension:
    gens = [tuple(g) for g in G_gens]
    hgens = [tuple(h) for h in H_gens]
    if degree is None:
        degree = len(gens[0]) if gens else (len(hgens[0]) if hgens else 1)
    A = group_algebra(gens, field, degree, cap)
    index = {g: i for i, g in enumerate(A.elements)}
    H = generate_group(hgens, degree, cap)
    missing = [h for h in H if h not in index]
    if missing:
        raise InvalidExtension(f"subgroup element {cycle_string(missing[0])} is not in G")
    return RingExtension(A, [A.basis_vector(index[h]) for h in H])


def subgroup_extension_from_elements(A: Algebra, H) -> RingExtension:
    index = {g: i for i, g in enumerate(A.elements)}
    return RingExtension(A, [A.basis_vector(index[h]) for h in H])


# ---------------------------------------------------------------------------
# small named algebras


def matrix_algebra(k: int, field=QQ) -> Algebra:
    """``M_k(field)`` on the matrix units ``E_ij`` (index ``i * k + j``)."""
    names = [f"E{i + 1}{j + 1}" for i in range(k) for j in range(k)]
    mult = []
    for i, j in itertools.product(range(k), repeat=2):
        row = []
        for p, q in itertools.product(range(k), repeat=2):
            row.append({i * k + q: field.one} if j == p else {})
        mult.append(row)
    unit = [field.one if i == j else field.zero for i in range(k) for j in range(k)]
    return Algebra(field, names, mult, unit)


def quadratic_field(d, field=QQ) -> Algebra:
    """``field[x]/(x^2 - d)`` on the basis ``1, x``; ``d = 2`` gives Q(sqrt 2)."""
    d = field(d)
    mult = [[{0: field.one}, {1: field.one}], [{1: field.one}, {0: d}]]
    return Algebra(field, ["1", f"sqrt({field.format(d)})"], mult, [field.one, field.zero])


def truncated_polynomial(k: int, field=QQ) -> Algebra:
    """``field[x]/(x^k)``."""
    mult = [[({i + j: field.one} if i + j < k else {}) for j in range(k)] for i in range(k)]
    names = ["1"] + [f"x^{i}" for i in range(1, k)]
    return Algebra(field, names, mult, [field.one] + [field.zero] * (k - 1))


def scalars(A: Algebra) -> RingExtension:
    """``A | k 1``."""
    return RingExtension(A, [A.one()])


def trivial(A: Algebra) -> RingExtension:
    """``A | A``."""
    return RingExtension(A, [A.basis_vector(i) for i in range(A.dim)])
