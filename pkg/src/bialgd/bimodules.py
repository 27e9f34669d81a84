"""The tensor-square, the rings T and S, and the balanced / Frobenius tests."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import RingExtension
from .errors import Inconclusive, NoSolution, NotFound
from .linalg import (
    Matrix,
    Quotient,
    RowReduction,
    Subspace,
    commutant_rows,
    commutant_space,
    dense,
    flatten,
    sparse,
    sparse_kernel,
    sparse_solve,
    unflatten,
)


def _axpy(out: dict, c, v: dict):
    for k, x in v.items():
        w = out.get(k, 0) + c * x
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class TensorSquare:
    """``A (x)_B A`` as a quotient of ``A (x)_k A``.

    Ambient index of ``e_i (x) e_j`` is ``i * n + j``.
    """

    def __init__(self, ext: RingExtension):
        self.ext = ext
        A = ext.A
        n = A.dim
        self.n = n
        self.field = A.field
        rels = []
        for b in ext.B_basis:
            # (e_i b) (x) e_j - e_i (x) (b e_j)
            Rb = A.right_matrix(b)
            Lb = A.left_matrix(b)
            for i in range(n):
                eib = Rb.col(i)
                for j in range(n):
                    bej = Lb.col(j)
                    rel = {}
                    for k, x in enumerate(eib):
                        if x:
                            rel[k * n + j] = x
                    for k, x in enumerate(bej):
                        if x:
                            w = rel.get(i * n + k, 0) - x
                            if w:
                                rel[i * n + k] = w
                            else:
                                rel.pop(i * n + k, None)
                    if rel:
                        rels.append(rel)
        self.relations = rels
        self.Q = Quotient(n * n, rels, self.field)
        self._Lq = [self._action_columns(i, left=True) for i in range(n)]
        self._Rq = [self._action_columns(i, left=False) for i in range(n)]

    @property
    def dim(self) -> int:
        return self.Q.dim

    # ambient operations -------------------------------------------------

    def ambient_pure(self, x, y) -> dict:
        n = self.n
        out = {}
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        out[i * n + j] = a * b
        return out

    def ambient_left(self, a, v: dict) -> dict:
        """``a . (x (x) y) = a x (x) y`` on an ambient vector."""
        n = self.n
        mult = self.ext.A.mult
        out = {}
        for idx, c in v.items():
            i, j = divmod(idx, n)
            for p, ap in enumerate(a):
                if ap:
                    for k, x in mult[p][i].items():
                        w = out.get(k * n + j, 0) + c * ap * x
                        if w:
                            out[k * n + j] = w
                        else:
                            out.pop(k * n + j, None)
        return out

    def ambient_right(self, v: dict, a) -> dict:
        n = self.n
        mult = self.ext.A.mult
        out = {}
        for idx, c in v.items():
            i, j = divmod(idx, n)
            for p, ap in enumerate(a):
                if ap:
                    for k, x in mult[j][p].items():
                        w = out.get(i * n + k, 0) + c * ap * x
                        if w:
                            out[i * n + k] = w
                        else:
                            out.pop(i * n + k, None)
        return out

    def ambient_map_second(self, v: dict, M: Matrix) -> dict:
        """``x (x) y -> x (x) M(y)``."""
        n = self.n
        out = {}
        for idx, c in v.items():
            i, j = divmod(idx, n)
            for k in range(n):
                x = M[k, j]
                if x:
                    _axpy(out, c * x, {i * n + k: 1})
        return out

    # quotient operations ------------------------------------------------

    def project(self, v) -> list:
        return self.Q.project(v)

    def lift(self, coords) -> dict:
        return self.Q.lift(coords)

    def pure(self, x, y) -> list:
        return self.Q.project(self.ambient_pure(x, y))

    def _action_columns(self, i, left):
        e = self.ext.A.basis_vector(i)
        cols = []
        for r in self.Q.reps:
            v = self.ambient_left(e, {r: self.field.one}) if left else self.ambient_right({r: self.field.one}, e)
            cols.append(sparse(self.Q.project(v)))
        return cols

    def _act(self, table, a, coords) -> list:
        out = {}
        for p, ap in enumerate(a):
            if not ap:
                continue
            cols = table[p]
            for c, x in enumerate(coords):
                if x:
                    _axpy(out, ap * x, cols[c])
        return dense(out, self.dim, self.field)

    def act_left(self, a, coords) -> list:
        return self._act(self._Lq, a, coords)

    def act_right(self, coords, a) -> list:
        return self._act(self._Rq, a, coords)

    def left_matrix(self, a) -> Matrix:
        cols = [self.act_left(a, _unit(self.dim, c, self.field)) for c in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    def right_matrix(self, a) -> Matrix:
        cols = [self.act_right(_unit(self.dim, c, self.field), a) for c in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)


def _unit(n, i, field):
    v = [field.zero] * n
    v[i] = field.one
    return v


def tensor_square(ext: RingExtension) -> TensorSquare:
    return TensorSquare(ext)


class TRing:
    """``T = (A (x)_B A)^B`` with product ``t t' = t'^1 t^1 (x) t^2 t'^2``."""

    def __init__(self, ext: RingExtension, ts: TensorSquare, space: Subspace):
        self.ext = ext
        self.ts = ts
        self.space = space
        self.field = ext.field

    @property
    def dim(self):
        return self.space.dim

    @property
    def basis(self):
        return self.space.basis

    def coords(self, q) -> list:
        return self.space.coords(q)

    def to_quotient(self, t) -> list:
        return self.space.element(t)

    def lift(self, t) -> dict:
        return self.ts.lift(self.to_quotient(t))

    @cached_property
    def unit(self) -> list:
        A = self.ext.A
        return self.coords(self.ts.pure(A.one(), A.one()))

    def product_q(self, t, s) -> list:
        """Product of two quotient-coordinate vectors (composition order)."""
        ts = self.ts
        out = [self.field.zero] * ts.dim
        n = ts.n
        A = self.ext.A
        for idx, c in ts.lift(s).items():
            i, j = divmod(idx, n)
            v = ts.act_left(A.basis_vector(i), ts.act_right(t, A.basis_vector(j)))
            out = [o + c * x for o, x in zip(out, v)]
        return out

    def mul(self, x, y) -> list:
        return self.coords(self.product_q(self.to_quotient(x), self.to_quotient(y)))

    @cached_property
    def mult_table(self) -> list:
        d = self.dim
        return [[self.coords(self.product_q(self.basis[a], self.basis[b])) for b in range(d)] for a in range(d)]

    def source(self, r) -> list:
        """``1 (x) r``."""
        return self.coords(self.ts.pure(self.ext.A.one(), r))

    def target(self, r) -> list:
        """``r (x) 1``."""
        return self.coords(self.ts.pure(r, self.ext.A.one()))

    def epsilon(self, t) -> list:
        """``t^1 t^2`` as an element of A."""
        A = self.ext.A
        n = A.dim
        out = A.zero_vector()
        for idx, c in self.lift(t).items():
            i, j = divmod(idx, n)
            out = [o + c * x for o, x in zip(out, A.basis_product(i, j))]
        return out

    def r_left(self, r, t) -> list:
        """``r . t = r t^1 (x) t^2``."""
        return self.coords(self.ts.act_left(r, self.to_quotient(t)))

    def r_right(self, t, r) -> list:
        """``t . r = t^1 (x) t^2 r``."""
        return self.coords(self.ts.act_right(self.to_quotient(t), r))


def compute_T(ext: RingExtension, ts: TensorSquare | None = None) -> TRing:
    ts = ts or tensor_square(ext)
    q = ts.dim
    rows = {}
    for bi, b in enumerate(ext.B_basis):
        for c in range(q):
            e = _unit(q, c, ext.field)
            diff = [x - y for x, y in zip(ts.act_left(b, e), ts.act_right(e, b))]
            for r, x in enumerate(diff):
                if x:
                    rows.setdefault((bi, r), {})[c] = x
    space = Subspace(sparse_kernel(list(rows.values()), q, ext.field), q, ext.field)
    return TRing(ext, ts, space)


class SRing:
    """``S = End_B A_B`` as n x n matrices; product is composition."""

    def __init__(self, ext: RingExtension, space: Subspace):
        self.ext = ext
        self.space = space
        self.field = ext.field
        self.n = ext.n

    @property
    def dim(self):
        return self.space.dim

    @cached_property
    def matrices(self) -> list[Matrix]:
        return [unflatten(b, self.n, self.field) for b in self.space.basis]

    def coords(self, M: Matrix) -> list:
        return self.space.coords(flatten(M))

    def contains(self, M: Matrix) -> bool:
        return self.space.contains(flatten(M))

    def matrix(self, coords) -> Matrix:
        return unflatten(self.space.element(coords), self.n, self.field)

    @cached_property
    def unit(self) -> list:
        return self.coords(Matrix.identity(self.n, self.field))

    @cached_property
    def mult_table(self) -> list:
        mats = self.matrices
        return [[self.coords(a @ b) for b in mats] for a in mats]


def compute_S(ext: RingExtension) -> SRing:
    return SRing(ext, commutant_space(ext.lambda_b + ext.rho_b, ext.n, ext.field))


# ---------------------------------------------------------------------------
# balanced


@dataclass
class BalancedResult:
    balanced: bool
    endo_dim: int
    bicommutant_dim: int
    witness: Matrix | None = None

    def __bool__(self):
        return self.balanced


def balanced(ext: RingExtension) -> BalancedResult:
    """Is the double commutant of the right B-action exactly ``rho(B)``?"""
    n, f = ext.n, ext.field
    E = commutant_space(ext.rho_b, n, f)
    E_mats = [unflatten(v, n, f) for v in E.basis]
    F = commutant_space(E_mats, n, f)
    rhoB = Subspace([flatten(M) for M in ext.rho_b], n * n, f)
    witness = None
    for v in F.basis:
        if not rhoB.contains(v):
            witness = unflatten(v, n, f)
            break
    ok = witness is None and rhoB.issubset(F)
    return BalancedResult(ok, E.dim, F.dim, witness)


# ---------------------------------------------------------------------------
# Frobenius systems


@dataclass
class FrobeniusSystem:
    """A B-bimodule map ``E: A -> B`` with dual bases ``xs``, ``ys``."""

    E: Matrix
    xs: list
    ys: list
    hom_coeffs: list = dc_field(default_factory=list)
    method: str = "random"

    def __len__(self):
        return len(self.xs)


def check_frobenius_system(ext: RingExtension, fs: FrobeniusSystem) -> dict:
    """Evaluate the defining identities of a Frobenius system on basis elements."""
    A = ext.A
    n = A.dim
    E = fs.E
    out = {"image_in_B": all(ext.B.contains(E.col(j)) for j in range(n))}
    bimod = True
    for b in ext.B_basis:
        for j in range(n):
            a = A.basis_vector(j)
            if E @ A.product(b, a) != A.product(b, E @ a) or E @ A.product(a, b) != A.product(E @ a, b):
                bimod = False
    out["bimodule_map"] = bimod
    left = right = True
    for r in range(n):
        a = A.basis_vector(r)
        s1 = A.zero_vector()
        s2 = A.zero_vector()
        for x, y in zip(fs.xs, fs.ys):
            t1 = A.product(E @ A.product(a, x), y)
            t2 = A.product(x, E @ A.product(y, a))
            s1 = [p + q for p, q in zip(s1, t1)]
            s2 = [p + q for p, q in zip(s2, t2)]
        left = left and s1 == a
        right = right and s2 == a
    out["dual_bases_left"] = left
    out["dual_bases_right"] = right
    return out


def bimodule_hom_space(ext: RingExtension) -> Subspace:
    """``Hom_{B,B}(A, B)`` as flattened n x n matrices with image in B."""
    n, f = ext.n, ext.field
    rows = commutant_rows(ext.lambda_b + ext.rho_b, n)
    annihilator = sparse_kernel([sparse(b) for b in ext.B_basis], n, f)
    for w in annihilator:
        for j in range(n):
            rows.append({i * n + j: x for i, x in w.items()})
    return Subspace(sparse_kernel(rows, n * n, f), n * n, f)


def _dual_basis_system(ext: RingExtension, E: Matrix):
    """Rows and rhs of the linear system for ``w`` with ``y_i = sum_j w_ij e_j``."""
    A = ext.A
    n, f = A.dim, A.field
    rows = {}
    EP = [[E @ A.basis_product(r, i) for i in range(n)] for r in range(n)]
    for r in range(n):
        for i in range(n):
            ep = EP[r][i]
            if not any(ep):
                continue
            for j in range(n):
                v = A.product(ep, A.basis_vector(j))
                for m, x in enumerate(v):
                    if x:
                        rows.setdefault((0, r, m), {})
                        _axpy(rows[(0, r, m)], x, {i * n + j: 1})
    for j in range(n):
        for r in range(n):
            ep = EP[j][r]
            if not any(ep):
                continue
            for i in range(n):
                v = A.product(A.basis_vector(i), ep)
                for m, x in enumerate(v):
                    if x:
                        rows.setdefault((1, r, m), {})
                        _axpy(rows[(1, r, m)], x, {i * n + j: 1})
    keys = sorted(set(rows) | {(s, r, r) for s in (0, 1) for r in range(n)})
    return [rows.get(k, {}) for k in keys], [f.one if k[1] == k[2] else f.zero for k in keys]


def _system_from_solution(ext, E, w, coeffs, method):
    A = ext.A
    n, f = A.dim, A.field
    xs, ys = [], []
    for i in range(n):
        y = [w.get(i * n + j, f.zero) for j in range(n)]
        if any(y):
            xs.append(A.basis_vector(i))
            ys.append(y)
    return FrobeniusSystem(E, xs, ys, list(coeffs), method)


def _try_hom(ext, homs, coeffs):
    n, f = ext.n, ext.field
    flat = [f.zero] * (n * n)
    for c, h in zip(coeffs, homs):
        if c:
            flat = [a + c * b for a, b in zip(flat, h)]
    E = unflatten(flat, n, f)
    rows, rhs = _dual_basis_system(ext, E)
    w, _ = sparse_solve(rows, rhs, n * n, f)
    return E, w


def frobenius(ext: RingExtension, seed: int = 0, tries: int = 8, grid_cap: int = 20000) -> FrobeniusSystem:
    """Search for a Frobenius system of ``A | B``.

    Random draws of the bimodule map are tried first.  If they all fail, the
    generic ranks of the dual-bases system (as a function of the map's
    coefficients) are found by evaluation on a grid large enough to exceed
    the degree of every minor.  Unequal generic ranks certify ``NotFound``;
    a grid point with equal ranks yields a system.  A grid larger than
    ``grid_cap`` points gives ``Inconclusive``.
    """
    f = ext.field
    homs = bimodule_hom_space(ext).basis
    h = len(homs)
    if h == 0:
        raise NotFound("Hom_{B,B}(A, B) is zero")
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [f.random_element(rng) for _ in range(h)]
        if not any(coeffs):
            continue
        try:
            E, w = _try_hom(ext, homs, coeffs)
        except NoSolution:
            continue
        return _system_from_solution(ext, E, w, coeffs, "random")
    return _grid_certificate(ext, homs, grid_cap)


def _grid_certificate(ext, homs, grid_cap):
    f = ext.field
    n = ext.n
    h = len(homs)
    nrows = len(_dual_basis_system(ext, Matrix.identity(n, f))[0])
    degree = min(nrows, n * n + 1)
    if f.characteristic and f.characteristic ** h <= grid_cap:
        values = [f(v) for v in range(f.characteristic)]
    elif f.characteristic and degree + 1 > f.characteristic:
        raise Inconclusive("prime field too small for the evaluation grid")
    else:
        values = [f(v) for v in range(degree + 1)]
    if len(values) ** h > grid_cap:
        raise Inconclusive(f"evaluation grid of {len(values)}^{h} points exceeds the cap {grid_cap}")
    best_plain = best_aug = -1
    for coeffs in itertools.product(values, repeat=h):
        if not any(coeffs):
            continue
        flat = [f.zero] * (n * n)
        for c, hv in zip(coeffs, homs):
            if c:
                flat = [a + c * b for a, b in zip(flat, hv)]
        E = unflatten(flat, n, f)
        rows, rhs = _dual_basis_system(ext, E)
        plain = RowReduction(rows, f).rank
        aug_rows = [{**r, n * n: b} if b else r for r, b in zip(rows, rhs)]
        aug = RowReduction(aug_rows, f).rank
        if plain == aug:
            w, _ = sparse_solve(rows, rhs, n * n, f)
            return _system_from_solution(ext, E, w, coeffs, "grid")
        best_plain = max(best_plain, plain)
        best_aug = max(best_aug, aug)
    raise NotFound(
        f"dual-bases system is inconsistent on the whole grid (generic ranks {best_plain} < {best_aug})"
    )
