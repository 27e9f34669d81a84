"""Bialgebroid structures on T and S, their axiom suites, and specializations.

Both bialgebroids are stored as plain structure matrices over the
coordinates of T (or S) and R, so the verifiers see nothing but numbers and
a single-entry mutation is a meaningful negative control.

Conventions (``kind``):

* ``"right"`` (T): bimodule ``r . x . r' = x t(r) s(r')``; Takeuchi
  ``(s(r) (x) 1) D(x) = (1 (x) t(r)) D(x)``; counit laws
  ``e(xy) = e(s(e(x)) y) = e(t(e(x)) y)``.
* ``"left"`` (S): bimodule ``r . a . r' = s(r) t(r') a``; Takeuchi
  ``D(a)(t(r) (x) 1) = D(a)(1 (x) s(r))``; counit laws
  ``e(aa') = e(a s(e(a'))) = e(a t(e(a')))``.

In both cases ``X (x)_R X`` is ``X (x)_k X`` modulo ``(x . r) (x) y - x (x) (r . y)``.
"""
from __future__ import annotations

import copy
import itertools
import random
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, RingExtension, scalars
from .bimodules import SRing, TRing, frobenius
from .depth_two import Quasibase
from .errors import (
    Inconclusive,
    InvalidExtension,
    NoSolution,
    NontrivialCentralizer,
    NotFound,
    NotInSubspace,
    NotSeparable,
    Singular,
)
from .linalg import Matrix, RowReduction, Subspace, dense, invert, sparse, sparse_solve
from .tensors import IteratedQuotient, a_tensor_over_r, apply_factors, axpy, balanced_tensor, factorwise_product, pure


# ---------------------------------------------------------------------------
# axiom reports


@dataclass
class AxiomResult:
    passed: bool
    witness: tuple | None = None
    note: str = ""


class AxiomReport(dict):
    """Ordered mapping ``axiom name -> AxiomResult``."""

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.values())

    def failed(self) -> list[str]:
        return [k for k, r in self.items() if not r.passed]

    def record(self, name, witness=None, note=""):
        self[name] = AxiomResult(witness is None, witness, note)

    def as_dict(self):
        return {
            k: {"verdict": "pass" if r.passed else "fail", "witness": list(r.witness) if r.witness else None, "note": r.note}
            for k, r in self.items()
        }


# ---------------------------------------------------------------------------
# structure


@dataclass
class Bialgebroid:
    kind: str
    field: object
    mult: list
    unit: list
    R_mult: list
    R_unit: list
    source: list
    target: list
    eps: list
    delta: list
    context: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def d(self):
        return len(self.unit)

    @property
    def h(self):
        return len(self.R_unit)

    # ring operations -----------------------------------------------------

    def _vec(self, v, n):
        return dense(v, n, self.field) if isinstance(v, dict) else list(v)

    def __setattr__(self, name, value):
        # replacing a structure table invalidates everything derived from it
        if name in _TABLES:
            self.__dict__.pop("_sm", None)
            self.__dict__.pop("_memo", None)
        object.__setattr__(self, name, value)

    def _memo_get(self, key, build):
        memo = self.__dict__.setdefault("_memo", {})
        if key not in memo:
            memo[key] = build()
        return memo[key]

    def _sparse_mult(self):
        sm = self.__dict__.get("_sm")
        if sm is None:
            sm = self.__dict__["_sm"] = [[sparse(v) for v in row] for row in self.mult]
        return sm

    def mul(self, x, y) -> list:
        sm = self._sparse_mult()
        out = [self.field.zero] * self.d
        ys = [(b, yb) for b, yb in enumerate(y) if yb]
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = sm[a]
            for b, yb in ys:
                c = xa * yb
                for k, m in row[b].items():
                    out[k] = out[k] + c * m
        return out

    def rmul(self, r, s) -> list:
        f = self.field
        out = [f.zero] * self.h
        for a, ra in enumerate(r):
            if ra:
                for b, sb in enumerate(s):
                    if sb:
                        c = ra * sb
                        out = [o + c * m for o, m in zip(out, self.R_mult[a][b])]
        return out

    def _combine(self, coeffs, table, n):
        out = [self.field.zero] * n
        for c, v in zip(coeffs, table):
            if c:
                out = [o + c * x for o, x in zip(out, v)]
        return out

    def src(self, r):
        return list(self._memo_get(("src", tuple(r)), lambda: self._combine(r, self.source, self.d)))

    def tgt(self, r):
        return list(self._memo_get(("tgt", tuple(r)), lambda: self._combine(r, self.target, self.d)))

    def counit(self, x):
        return self._combine(x, self.eps, self.h)

    def coproduct(self, x) -> dict:
        out = {}
        for c, v in zip(x, self.delta):
            if c:
                axpy(out, c, v)
        return out

    def basis(self, a):
        v = [self.field.zero] * self.d
        v[a] = self.field.one
        return v

    def r_basis(self, k):
        v = [self.field.zero] * self.h
        v[k] = self.field.one
        return v

    def mod_left(self, r, x):
        """``r . x``."""
        return self.mul(x, self.tgt(r)) if self.kind == "right" else self.mul(self.src(r), x)

    def mod_right(self, x, r):
        """``x . r``."""
        return self.mul(x, self.src(r)) if self.kind == "right" else self.mul(self.tgt(r), x)

    def _cols(self, fn):
        return [sparse(fn(self.basis(j))) for j in range(self.d)]

    def action_cols(self, how: str, k: int) -> list:
        """Columns of ``x -> r_k . x`` (``"left"``), ``x -> x . r_k`` (``"right"``),
        ``x -> s(r_k) x``, ``x -> t(r_k) x``, ``x -> x s(r_k)`` or ``x -> x t(r_k)``."""
        def build():
            r = self.r_basis(k)
            fn = {
                "left": lambda x: self.mod_left(r, x),
                "right": lambda x: self.mod_right(x, r),
                "src_mul": lambda x: self.mul(self.src(r), x),
                "tgt_mul": lambda x: self.mul(self.tgt(r), x),
                "mul_src": lambda x: self.mul(x, self.src(r)),
                "mul_tgt": lambda x: self.mul(x, self.tgt(r)),
            }[how]
            return self._cols(fn)
        return self._memo_get(("cols", how, k), build)

    def _slot(self):
        return [(self.action_cols("right", k), self.action_cols("left", k)) for k in range(self.h)]

    def actions_commute(self) -> bool:
        """``(r . x) . r2 == r . (x . r2)`` on basis elements."""
        def build():
            return all(self.mod_right(self.mod_left(self.r_basis(k), self.basis(x)), self.r_basis(k2))
                       == self.mod_left(self.r_basis(k), self.mod_right(self.basis(x), self.r_basis(k2)))
                       for x in range(self.d) for k in range(self.h) for k2 in range(self.h))
        return self._memo_get("commute", build)

    def tensor2(self):
        return self._memo_get("Q2", lambda: balanced_tensor([self.d, self.d], [self._slot()], self.field))

    def tensor3(self):
        """``T (x)_R T (x)_R T``; built on ``tensor2`` when the R-actions commute."""
        def build():
            d, s = self.d, self._slot()
            if self.actions_commute():
                return IteratedQuotient(self.tensor2(), d, d, d, s, self.field)
            return balanced_tensor([d, d, d], [s, s], self.field)
        return self._memo_get("Q3", build)

    def copy(self) -> "Bialgebroid":
        parts = {k: copy.deepcopy(getattr(self, k)) for k in _TABLES}
        return type(self)(kind=self.kind, field=self.field, context=self.context, **parts)


_TABLES = ("mult", "unit", "R_mult", "R_unit", "source", "target", "eps", "delta")


class RightBialgebroidT(Bialgebroid):
    pass


class LeftBialgebroidS(Bialgebroid):
    pass


def mutate(b: Bialgebroid, part: str, index: tuple, amount=1) -> Bialgebroid:
    """Copy of ``b`` with one structure entry shifted by ``amount``."""
    out = b.copy()
    out.__dict__.pop("_sm", None)
    f = out.field
    if part == "delta":
        a, k = index
        v = dict(out.delta[a])
        w = v.get(k, f.zero) + f(amount)
        if w:
            v[k] = w
        else:
            v.pop(k, None)
        out.delta[a] = v
        return out
    target = getattr(out, part)
    *head, last = index
    for i in head:
        target = target[i]
    target[last] = target[last] + f(amount)
    return out


# ---------------------------------------------------------------------------
# builders


def _R_structure(ext: RingExtension):
    R = ext.R
    A = ext.A
    mult = [[R.coords(A.product(x, y)) for y in R.basis] for x in R.basis]
    return mult, R.coords(A.one())


def coproduct_from_quasibase(ext: RingExtension, T: TRing, qb: Quasibase) -> list:
    """``D(x) = sum_j (x^1 (x) gamma_j(x^2)) (x) u_j`` on each T-basis element."""
    d = T.dim
    ts = T.ts
    out = []
    for a in range(d):
        lift = ts.lift(T.basis[a])
        total = {}
        for M, u in qb.pairs:
            first = T.coords(ts.project(ts.ambient_map_second(lift, M)))
            axpy(total, 1, pure([sparse(first), sparse(u)], [d, d]))
        out.append(total)
    return out


def build_T_bialgebroid(ext: RingExtension, T: TRing, right_qb: Quasibase) -> RightBialgebroidT:
    if right_qb.side != "right":
        raise ValueError("a right quasibase is required")
    R = ext.R
    R_mult, R_unit = _R_structure(ext)
    eps = []
    for a in range(T.dim):
        e = T.epsilon(_unit(T.dim, a, ext.field))
        try:
            eps.append(R.coords(e))
        except NotInSubspace:
            raise InvalidExtension("counit value t^1 t^2 is not in the centralizer") from None
    return RightBialgebroidT(
        kind="right",
        field=ext.field,
        mult=[[list(v) for v in row] for row in T.mult_table],
        unit=list(T.unit),
        R_mult=R_mult,
        R_unit=R_unit,
        source=[T.source(r) for r in R.basis],
        target=[T.target(r) for r in R.basis],
        eps=eps,
        delta=coproduct_from_quasibase(ext, T, right_qb),
        context={"ext": ext, "ring": T, "quasibase": right_qb},
    )


def build_S_bialgebroid(ext: RingExtension, S: SRing, T: TRing, left_qb: Quasibase, right_qb: Quasibase | None = None) -> LeftBialgebroidS:
    """Coproduct ``D(a) = sum_i a(- t_i^1) t_i^2 (x) beta_i`` from a left quasibase."""
    if left_qb is None or left_qb.side != "left":
        raise ValueError("a left quasibase is required")
    A = ext.A
    n = A.dim
    R = ext.R
    R_mult, R_unit = _R_structure(ext)
    rights = [A.right_matrix(A.basis_vector(j)) for j in range(n)]
    d = S.dim
    lifts = [(T.lift(t), S.coords(M)) for M, t in left_qb.pairs]
    delta = []
    for alpha in S.matrices:
        total = {}
        for lift, beta in lifts:
            first = Matrix.zeros(n, n, ext.field)
            for idx, c in lift.items():
                j, k = divmod(idx, n)
                first = first + (rights[k] @ alpha @ rights[j]).scale(c)
            axpy(total, 1, pure([sparse(S.coords(first)), sparse(beta)], [d, d]))
        delta.append(total)
    return LeftBialgebroidS(
        kind="left",
        field=ext.field,
        mult=[[list(v) for v in row] for row in S.mult_table],
        unit=list(S.unit),
        R_mult=R_mult,
        R_unit=R_unit,
        source=[S.coords(A.left_matrix(r)) for r in R.basis],
        target=[S.coords(A.right_matrix(r)) for r in R.basis],
        eps=[R.coords(M @ A.one()) for M in S.matrices],
        delta=delta,
        context={"ext": ext, "ring": S, "quasibase": left_qb, "right_quasibase": right_qb},
    )


# ---------------------------------------------------------------------------
# verification


def verify_bialgebroid(b: Bialgebroid) -> AxiomReport:
    """Run the full axiom list for ``b.kind`` and report per axiom."""
    rep = AxiomReport()
    d, h = b.d, b.h
    f = b.field
    E = [b.basis(a) for a in range(d)]
    Rb = [b.r_basis(k) for k in range(h)]
    right = b.kind == "right"

    def first(pairs):
        for w, ok in pairs:
            if not ok:
                return w
        return None

    # ring structure
    rep.record("ring_associative", first(
        ((x, y, z), b.mul(b.mul(E[x], E[y]), E[z]) == b.mul(E[x], b.mul(E[y], E[z])))
        for x, y, z in itertools.product(range(d), repeat=3)))
    rep.record("ring_unit", first(((x,), b.mul(b.unit, E[x]) == E[x] == b.mul(E[x], b.unit)) for x in range(d)))

    # (i) source / target
    rep.record("source_homomorphism", first(itertools.chain(
        [(("unit",), b.src(b.R_unit) == b.unit)],
        (((r, s), b.src(b.rmul(Rb[r], Rb[s])) == b.mul(b.src(Rb[r]), b.src(Rb[s])))
         for r, s in itertools.product(range(h), repeat=2)))))
    rep.record("target_antihomomorphism", first(itertools.chain(
        [(("unit",), b.tgt(b.R_unit) == b.unit)],
        (((r, s), b.tgt(b.rmul(Rb[r], Rb[s])) == b.mul(b.tgt(Rb[s]), b.tgt(Rb[r])))
         for r, s in itertools.product(range(h), repeat=2)))))
    rep.record("source_target_commute", first(
        ((r, s), b.mul(b.src(Rb[r]), b.tgt(Rb[s])) == b.mul(b.tgt(Rb[s]), b.src(Rb[r])))
        for r, s in itertools.product(range(h), repeat=2)))

    # (ii) coring
    Q2 = b.tensor2()
    Q3 = b.tensor3()
    D = [b.delta[a] for a in range(d)]
    rep.record("counit_bimodule", first(
        ((x, r), b.counit(b.mod_left(Rb[r], E[x])) == b.rmul(Rb[r], b.counit(E[x]))
         and b.counit(b.mod_right(E[x], Rb[r])) == b.rmul(b.counit(E[x]), Rb[r]))
        for x, r in itertools.product(range(d), range(h))))

    def bimod_ok(x, r):
        lhs = b.coproduct(b.mod_left(Rb[r], E[x]))
        rhs = apply_factors(D[x], [d, d], [b.action_cols("left", r), None])
        if Q2.project(lhs) != Q2.project(rhs):
            return False
        lhs = b.coproduct(b.mod_right(E[x], Rb[r]))
        rhs = apply_factors(D[x], [d, d], [None, b.action_cols("right", r)])
        return Q2.project(lhs) == Q2.project(rhs)

    rep.record("coproduct_bimodule", first(((x, r), bimod_ok(x, r)) for x, r in itertools.product(range(d), range(h))))

    def coassoc_ok(x):
        l = apply_factors(D[x], [d, d], [D, None], [d * d, d])
        r = apply_factors(D[x], [d, d], [None, D], [d, d * d])
        return Q3.project(l) == Q3.project(r)

    rep.record("coassociativity", first(((x,), coassoc_ok(x)) for x in range(d)))

    def counit_sides(x):
        left = [f.zero] * d
        rightv = [f.zero] * d
        for k, c in D[x].items():
            i, j = divmod(k, d)
            left = [p + c * q for p, q in zip(left, b.mod_left(b.counit(E[i]), E[j]))]
            rightv = [p + c * q for p, q in zip(rightv, b.mod_right(E[i], b.counit(E[j])))]
        return left == E[x], rightv == E[x]

    sides = [counit_sides(x) for x in range(d)]
    rep.record("counit_left", first(((x,), s[0]) for x, s in enumerate(sides)))
    rep.record("counit_right", first(((x,), s[1]) for x, s in enumerate(sides)))

    # (iii) Takeuchi
    def takeuchi_ok(x, r):
        if right:
            l = apply_factors(D[x], [d, d], [b.action_cols("src_mul", r), None])
            rr = apply_factors(D[x], [d, d], [None, b.action_cols("tgt_mul", r)])
        else:
            l = apply_factors(D[x], [d, d], [b.action_cols("mul_tgt", r), None])
            rr = apply_factors(D[x], [d, d], [None, b.action_cols("mul_src", r)])
        return Q2.project(l) == Q2.project(rr)

    rep.record("takeuchi", first(((x, r), takeuchi_ok(x, r)) for x, r in itertools.product(range(d), range(h))))

    # (iv) coproduct is a unital algebra map (gated on Takeuchi)
    unit_sq = pure([sparse(b.unit), sparse(b.unit)], [d, d])
    rep.record("coproduct_unit", None if Q2.project(b.coproduct(b.unit)) == Q2.project(unit_sq) else ("unit",))
    if rep["takeuchi"].passed:
        muls = [lambda i, j: sparse(b.mul(E[i], E[j]))] * 2
        coords = [Q2.project(D[x]) for x in range(d)]
        lifts = [(Q2.lift(c), Q2.lift_alt(c)) for c in coords]

        def mult_ok(x, y):
            lhs = coords_of_product = Q2.project(b.coproduct(b.mul(E[x], E[y])))
            for lx, ly in ((lifts[x][0], lifts[y][0]), (lifts[x][1], lifts[y][1])):
                if Q2.project(factorwise_product(lx, ly, [d, d], muls)) != coords_of_product:
                    return False
            return lhs == coords_of_product

        rep.record("coproduct_multiplicative", first(((x, y), mult_ok(x, y)) for x, y in itertools.product(range(d), repeat=2)))
    else:
        rep["coproduct_multiplicative"] = AxiomResult(False, None, "not evaluated: Takeuchi condition fails")

    # (v) counit
    rep.record("counit_unit", None if b.counit(b.unit) == b.R_unit else ("unit",))

    def counit_mult(x, y):
        xy = b.counit(b.mul(E[x], E[y]))
        if right:
            ex = b.counit(E[x])
            return xy == b.counit(b.mul(b.src(ex), E[y])), xy == b.counit(b.mul(b.tgt(ex), E[y]))
        ey = b.counit(E[y])
        return xy == b.counit(b.mul(E[x], b.src(ey))), xy == b.counit(b.mul(E[x], b.tgt(ey)))

    cm = {(x, y): counit_mult(x, y) for x, y in itertools.product(range(d), repeat=2)}
    rep.record("counit_source", first((k, v[0]) for k, v in cm.items()))
    rep.record("counit_target", first((k, v[1]) for k, v in cm.items()))
    return rep


def verify_right_bialgebroid(Tb: Bialgebroid) -> AxiomReport:
    if Tb.kind != "right":
        raise ValueError("expected a right bialgebroid")
    return verify_bialgebroid(Tb)


def verify_left_bialgebroid(Sb: Bialgebroid) -> AxiomReport:
    if Sb.kind != "left":
        raise ValueError("expected a left bialgebroid")
    return verify_bialgebroid(Sb)


def quasibase_independent(Tb: Bialgebroid, other_qb: Quasibase) -> bool:
    """Does a second right quasibase give the same coproduct in T (x)_R T?"""
    ext, T = Tb.context["ext"], Tb.context["ring"]
    other = coproduct_from_quasibase(ext, T, other_qb)
    Q2 = Tb.tensor2()
    return all(Q2.project(x) == Q2.project(y) for x, y in zip(Tb.delta, other))


# ---------------------------------------------------------------------------
# pairing


@dataclass
class Pairing:
    grid: list  # grid[alpha][t] -> R coordinates
    s_rank: int
    t_rank: int
    nondegenerate: bool


def pairing(Sb: Bialgebroid, Tb: Bialgebroid) -> Pairing:
    """``<alpha, t> = t^1 alpha(t^2)`` on basis elements, valued in R."""
    ext = Tb.context["ext"]
    S, T = Sb.context["ring"], Tb.context["ring"]
    A = ext.A
    n = A.dim
    grid = []
    lifts = [T.ts.lift(q) for q in T.basis]
    for alpha in S.matrices:
        row = []
        for lift in lifts:
            v = A.zero_vector()
            for idx, c in lift.items():
                j, k = divmod(idx, n)
                v = [p + c * q for p, q in zip(v, A.product(A.basis_vector(j), alpha.col(k)))]
            row.append(ext.R.coords(v))
        grid.append(row)
    h = len(Tb.R_unit)
    s_rows = [sparse([x for cell in row for x in cell]) for row in grid]
    t_rows = [sparse([grid[a][t][k] for a in range(len(grid)) for k in range(h)]) for t in range(len(lifts))]
    s_rank = RowReduction(s_rows, ext.field).rank
    t_rank = RowReduction(t_rows, ext.field).rank
    return Pairing(grid, s_rank, t_rank, s_rank == len(grid) and t_rank == len(lifts))


# ---------------------------------------------------------------------------
# trivial centralizer: ordinary bialgebras


@dataclass
class Bialgebra:
    field: object
    mult: list
    unit: list
    delta: list  # sparse over d*d
    eps: list    # scalars


def bialgebra_specialize(b: Bialgebroid):
    """Read ``b`` as a k-bialgebra when ``R = k 1``; returns ``(Bialgebra, report)``."""
    if b.h != 1:
        raise NontrivialCentralizer(f"centralizer has dimension {b.h}")
    f = b.field
    u = b.R_unit[0]
    eps = [e[0] / u for e in b.eps]
    B = Bialgebra(f, b.mult, b.unit, b.delta, eps)
    d = b.d
    E = [b.basis(a) for a in range(d)]
    rep = AxiomReport()

    def first(pairs):
        for w, ok in pairs:
            if not ok:
                return w
        return None

    def counit(x):
        return sum((c * e for c, e in zip(x, eps)), f.zero)

    rep.record("associative", first(((x, y, z), b.mul(b.mul(E[x], E[y]), E[z]) == b.mul(E[x], b.mul(E[y], E[z])))
                                    for x, y, z in itertools.product(range(d), repeat=3)))
    rep.record("unit", first(((x,), b.mul(b.unit, E[x]) == E[x] == b.mul(E[x], b.unit)) for x in range(d)))
    D = b.delta
    rep.record("coassociative", first(((x,), apply_factors(D[x], [d, d], [D, None], [d * d, d])
                                        == apply_factors(D[x], [d, d], [None, D], [d, d * d])) for x in range(d)))

    def counit_law(x):
        l = [f.zero] * d
        r = [f.zero] * d
        for k, c in D[x].items():
            i, j = divmod(k, d)
            l[j] = l[j] + c * eps[i]
            r[i] = r[i] + c * eps[j]
        return l == E[x] and r == E[x]

    rep.record("counit", first(((x,), counit_law(x)) for x in range(d)))
    muls = [lambda i, j: sparse(b.mul(E[i], E[j]))] * 2
    rep.record("coproduct_multiplicative", first(
        ((x, y), factorwise_product(D[x], D[y], [d, d], muls) == b.coproduct(b.mul(E[x], E[y])))
        for x, y in itertools.product(range(d), repeat=2)))
    rep.record("coproduct_unit", None if b.coproduct(b.unit) == pure([sparse(b.unit)] * 2, [d, d]) else ("unit",))
    rep.record("counit_multiplicative", first(((x, y), counit(b.mul(E[x], E[y])) == eps[x] * eps[y])
                                               for x, y in itertools.product(range(d), repeat=2)))
    rep.record("counit_unit", None if counit(b.unit) == f.one else ("unit",))
    return B, rep


# ---------------------------------------------------------------------------
# separable centralizer: weak bialgebra data


def algebra_from_table(field, mult, unit, prefix="r") -> Algebra:
    h = len(unit)
    table = [[{k: x for k, x in enumerate(v) if x} for v in row] for row in mult]
    return Algebra(field, [f"{prefix}{i}" for i in range(h)], table, unit)


@dataclass
class IndexOneSystem:
    phi: list   # values of the functional on the R-basis
    es: list    # R-coordinate vectors
    fs: list
    method: str


def check_index_one(R: Algebra, sys: IndexOneSystem) -> bool:
    f = R.field
    one = R.one()
    total = R.zero_vector()
    for e, g in zip(sys.es, sys.fs):
        total = [a + b for a, b in zip(total, R.product(e, g))]
    if total != one:
        return False

    def phi(v):
        return sum((a * b for a, b in zip(sys.phi, v)), f.zero)

    for k in range(R.dim):
        r = R.basis_vector(k)
        l = R.zero_vector()
        rr = R.zero_vector()
        for e, g in zip(sys.es, sys.fs):
            l = [a + phi(R.product(r, e)) * b for a, b in zip(l, g)]
            rr = [a + b * phi(R.product(g, r)) for a, b in zip(rr, e)]
        if l != r or rr != r:
            return False
    return True


def index_one_system(R: Algebra, seed: int = 0, tries: int = 16) -> IndexOneSystem:
    """An index-one Frobenius system ``(phi, e_i, f_i)`` of ``R`` over k.

    Starts from any Frobenius system; if ``z = sum e_i f_i`` is invertible it
    rescales by ``z``.  Otherwise it solves ``sum_i e_i x f_i = 1`` (linear
    in ``x``): no solution certifies that ``R`` is not separable; a solution
    that is invertible gives the rescaling ``phi(x^-1 -)``, ``x f_i``.
    """
    f = R.field
    try:
        fs = frobenius(scalars(R), seed=seed)
    except NotFound as exc:
        raise NotSeparable(f"R admits no Frobenius system: {exc}") from None
    one = R.one()
    pivot = next(i for i, x in enumerate(one) if x)
    phi = [fs.E.col(j)[pivot] / one[pivot] for j in range(R.dim)]
    es, gs = [list(x) for x in fs.xs], [list(y) for y in fs.ys]

    def m(x):
        out = R.zero_vector()
        for e, g in zip(es, gs):
            out = [a + b for a, b in zip(out, R.product(R.product(e, x), g))]
        return out

    def rescale(x, method):
        xinv = invert(R.left_matrix(x)) @ one
        new_phi = [sum((p * c for p, c in zip(phi, R.product(xinv, R.basis_vector(j)))), f.zero) for j in range(R.dim)]
        return IndexOneSystem(new_phi, es, [R.product(x, g) for g in gs], method)

    z = m(one)
    try:
        zinv = invert(R.left_matrix(z)) @ one
        out = rescale(zinv, "rescale")
        if check_index_one(R, out):
            return out
    except Singular:
        pass
    # Higman: separable iff 1 lies in the image of x -> sum e_i x f_i
    cols = [m(R.basis_vector(j)) for j in range(R.dim)]
    rows = [sparse([c[i] for c in cols]) for i in range(R.dim)]
    try:
        part, ker = sparse_solve(rows, one, R.dim, f)
    except NoSolution:
        image = Subspace(cols, R.dim, f)
        raise NotSeparable("1 is not in the image of x -> sum e_i x f_i", certificate=image.basis) from None
    x0 = dense(part, R.dim, f)
    rng = random.Random(seed)
    candidates = [x0]
    for _ in range(tries):
        x = list(x0)
        for k in ker:
            c = f.random_element(rng)
            x = [a + c * b for a, b in zip(x, dense(k, R.dim, f))]
        candidates.append(x)
    for x in candidates:
        try:
            out = rescale(x, "higman")
        except Singular:
            continue
        if check_index_one(R, out):
            return out
    raise Inconclusive("no invertible solution of sum e_i x f_i = 1 found")


@dataclass
class WeakCoalgebraLift:
    system: IndexOneSystem
    delta_w: list  # sparse over d*d (tensor over k)
    eps_w: list    # scalars
    iota: Matrix   # A (x)_R T -> A (x)_k T
    report: AxiomReport


def weak_lift(Tb: Bialgebroid, seed: int = 0) -> WeakCoalgebraLift:
    """Weak-bialgebra coproduct and counit on T from an index-one system of R."""
    ext = Tb.context["ext"]
    A = ext.A
    f = Tb.field
    d, h, n = Tb.d, Tb.h, A.dim
    Ralg = algebra_from_table(f, Tb.R_mult, Tb.R_unit)
    sys = index_one_system(Ralg, seed=seed)
    rep = AxiomReport()
    rep.record("index_one", None if check_index_one(Ralg, sys) else ("system",))

    E = [Tb.basis(a) for a in range(d)]

    split = [(Tb._cols(lambda x, e=e: Tb.mod_right(x, e)), Tb._cols(lambda y, g=g: Tb.mod_left(g, y)))
             for e, g in zip(sys.es, sys.fs)]

    def transport(v):
        """``x (x)_R y -> sum_i x . e_i (x)_k f_i . y``."""
        out = {}
        for right, left in split:
            axpy(out, 1, apply_factors(v, [d, d], [right, left]))
        return out

    delta_w = [transport(Tb.delta[a]) for a in range(d)]
    eps_w = [sum((p * c for p, c in zip(sys.phi, Tb.eps[a])), f.zero) for a in range(d)]

    Q2 = Tb.tensor2()
    bad = next((i for i, g in enumerate(Q2.relation_rows()) if transport(g)), None)
    rep.record("transport_well_defined", None if bad is None else (bad,))
    images = [sparse_vec for sparse_vec in (transport(Q2.lift(_unit(Q2.dim, i, f))) for i in range(Q2.dim))]
    rep.record("transport_injective", None if RowReduction(images, f).rank == Q2.dim else ("rank",))

    rep.record("coassociative", next(((x,) for x in range(d)
                                      if apply_factors(delta_w[x], [d, d], [delta_w, None], [d * d, d])
                                      != apply_factors(delta_w[x], [d, d], [None, delta_w], [d, d * d])), None))

    def counit_ok(x):
        l = [f.zero] * d
        r = [f.zero] * d
        for k, c in delta_w[x].items():
            i, j = divmod(k, d)
            l[j] = l[j] + c * eps_w[i]
            r[i] = r[i] + c * eps_w[j]
        return l == E[x] and r == E[x]

    rep.record("counital", next(((x,) for x in range(d) if not counit_ok(x)), None))

    # iota: A (x)_R T -> (A (x)_k T) D_w(1)
    R_vecs = ext.R.basis
    r_left = [Tb.action_cols("left", k) for k in range(h)]
    AT = a_tensor_over_r(A, R_vecs, d, r_left)

    def r_vec(coords):
        return ext.R.element(coords)

    iota_split = [([sparse(A.product(A.basis_vector(a), r_vec(e))) for a in range(n)], left)
                  for e, (_, left) in zip(sys.es, split)]

    def iota_amb(v):
        out = {}
        for right, left in iota_split:
            axpy(out, 1, apply_factors(v, [n, d], [right, left]))
        return out

    bad = next((i for i, g in enumerate(AT.relation_rows()) if iota_amb(g)), None)
    rep.record("iota_well_defined", None if bad is None else (bad,))
    cols = [iota_amb(AT.lift(_unit(AT.dim, i, f))) for i in range(AT.dim)]
    rep.record("iota_injective", None if RowReduction(cols, f).rank == AT.dim else ("rank",))
    # (a (x) t) . (x (x) y) = a eps(x) (x) t y, applied to D_w(1)
    dw1 = transport(Tb.coproduct(Tb.unit))
    W = []
    for a in range(n):
        for t in range(d):
            v = {}
            for k, c in dw1.items():
                i, j = divmod(k, d)
                left = A.product(A.basis_vector(a), r_vec(Tb.counit(E[i])))
                right = Tb.mul(E[t], E[j])
                axpy(v, c, pure([sparse(left), sparse(right)], [n, d]))
            W.append(v)
    Wsp = Subspace(W, n * d, f)
    img = Subspace(cols, n * d, f)
    rep.record("iota_onto", None if Wsp == img else ("image",))
    iota = Matrix.from_columns([dense(c, n * d, f) for c in cols], n * d, f)
    return WeakCoalgebraLift(sys, delta_w, eps_w, iota, rep)


def _unit(n, i, f):
    v = [f.zero] * n
    v[i] = f.one
    return v
