"""Coaction of T on A, coinvariants, the Galois map and its inverse.

``A (x)_R T`` is ``A (x)_k T`` modulo ``a r (x) t - a (x) r . t`` where
``r . t = r t^1 (x) t^2``; ambient index of ``e_a (x) t_j`` is ``a * d + j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import RingExtension
from .bialgebroid import AxiomReport, AxiomResult, RightBialgebroidT, build_T_bialgebroid
from .bimodules import TRing, balanced, compute_S, compute_T, frobenius, tensor_square
from .depth_two import Quasibase, is_d2
from .errors import IllDefined, Inconclusive, NotFound
from .linalg import Matrix, RowReduction, Subspace, sparse, sparse_kernel
from .tensors import a_tensor_over_r, apply_factors, axpy, balanced_tensor, factorwise_product, pure


@dataclass
class Coaction:
    ext: RingExtension
    T: TRing
    quasibase: Quasibase
    space: object      # Quotient for A (x)_R T
    ambient: list      # sparse ambient representative of delta(e_a)
    matrix: Matrix     # columns delta(e_a) in quotient coordinates

    def __call__(self, a) -> list:
        return self.matrix @ list(a)

    def one_tensor(self, a) -> list:
        """``a (x) 1_T`` in quotient coordinates."""
        return self.space.project(pure([sparse(a), sparse(self.T.unit)], [self.ext.n, self.T.dim]))


def _r_left_cols(T: TRing):
    """Columns of ``t -> r t^1 (x) t^2`` for each R-basis element."""
    d = T.dim
    f = T.field
    cols = []
    for r in T.ext.R.basis:
        cols.append([sparse(T.r_left(r, [f.one if i == j else f.zero for i in range(d)])) for j in range(d)])
    return cols


def a_tensor_r_t(ext: RingExtension, T: TRing):
    return a_tensor_over_r(ext.A, ext.R.basis, T.dim, _r_left_cols(T))


def coaction(ext: RingExtension, right_qb: Quasibase, T: TRing | None = None, space=None) -> Coaction:
    """``delta(a) = sum_j gamma_j(a) (x) u_j``."""
    T = T or compute_T(ext)
    space = space or a_tensor_r_t(ext, T)
    A = ext.A
    n, d = A.dim, T.dim
    amb = []
    for a in range(n):
        v = {}
        for M, u in right_qb.pairs:
            axpy(v, 1, pure([sparse(M.col(a)), sparse(u)], [n, d]))
        amb.append(v)
    mat = Matrix.from_columns([space.project(v) for v in amb], space.dim, ext.field)
    return Coaction(ext, T, right_qb, space, amb, mat)


def coinvariants(ext: RingExtension, delta: Coaction) -> Subspace:
    """Kernel of ``a -> delta(a) - a (x) 1_T``."""
    n = ext.n
    f = ext.field
    cols = []
    for a in range(n):
        e = ext.A.basis_vector(a)
        cols.append([x - y for x, y in zip(delta.matrix.col(a), delta.one_tensor(e))])
    rows = [sparse([c[i] for c in cols]) for i in range(delta.space.dim)]
    return Subspace(sparse_kernel(rows, n, f), n, f)


def is_unital_subalgebra(ext: RingExtension, V: Subspace) -> bool:
    A = ext.A
    if not V.contains(A.one()):
        return False
    return all(V.contains(A.product(x, y)) for x in V.basis for y in V.basis)


def verify_comodule_algebra(ext: RingExtension, delta: Coaction, Tb: RightBialgebroidT) -> AxiomReport:
    rep = AxiomReport()
    A = ext.A
    R = ext.R
    f = ext.field
    n, d, h = A.dim, Tb.d, Tb.h
    Q = delta.space
    amb = delta.ambient
    coords = [delta.matrix.col(a) for a in range(n)]

    def first(pairs):
        for w, ok in pairs:
            if not ok:
                return w
        return None

    # coassociativity in A (x)_R T (x)_R T
    a_slot = []
    for k, r in enumerate(R.basis):
        right = [sparse(A.product(A.basis_vector(j), r)) for j in range(n)]
        left = Tb.action_cols("left", k)
        a_slot.append((right, left))
    Q3 = balanced_tensor([n, d, d], [a_slot, Tb._slot()], f)
    rep.record("coassociativity", first(
        ((a,), Q3.project(apply_factors(amb[a], [n, d], [amb, None], [n * d, d]))
         == Q3.project(apply_factors(amb[a], [n, d], [None, Tb.delta], [n, d * d])))
        for a in range(n)))

    def counit_ok(a):
        out = A.zero_vector()
        for k, c in amb[a].items():
            i, j = divmod(k, d)
            r = R.element(Tb.counit(Tb.basis(j)))
            out = [x + c * y for x, y in zip(out, A.product(A.basis_vector(i), r))]
        return out == A.basis_vector(a)

    rep.record("counit", first(((a,), counit_ok(a)) for a in range(n)))
    rep.record("unit", None if delta(A.one()) == delta.one_tensor(A.one()) else ("unit",))

    def rcompat_ok(a, k):
        r = R.basis[k]
        lhs = apply_factors(amb[a], [n, d], [lambda i: sparse(A.product(r, A.basis_vector(i))), None])
        rhs = apply_factors(amb[a], [n, d], [None, Tb.action_cols("tgt_mul", k)])
        return Q.project(lhs) == Q.project(rhs)

    rep.record("r_compatibility", first(((a, k), rcompat_ok(a, k)) for a, k in itertools.product(range(n), range(h))))

    if rep["r_compatibility"].passed:
        muls = [lambda i, j: sparse(A.basis_product(i, j)), lambda i, j: sparse(Tb.mul(Tb.basis(i), Tb.basis(j)))]
        lifts = [(Q.lift(c), Q.lift_alt(c)) for c in coords]

        def mult_ok(a, b):
            target = delta(A.basis_product(a, b))
            return all(Q.project(factorwise_product(lifts[a][s], lifts[b][s], [n, d], muls)) == target for s in (0, 1))

        rep.record("multiplicativity", first(((a, b), mult_ok(a, b)) for a, b in itertools.product(range(n), repeat=2)))
    else:
        rep["multiplicativity"] = AxiomResult(False, None, "not evaluated: r-compatibility fails")

    co = coinvariants(ext, delta)
    rep.record("r_commutes_with_coinvariants", first(
        ((k, c), A.product(r, x) == A.product(x, r))
        for k, r in enumerate(R.basis) for c, x in enumerate(co.basis)))
    rep.record("base_coinvariant", first(((i,), delta(b) == delta.one_tensor(b)) for i, b in enumerate(ext.B_basis)))
    return rep


# ---------------------------------------------------------------------------
# Galois map


def galois_map(ext: RingExtension, delta: Coaction, ts=None) -> Matrix:
    """``beta(a (x) a') = a delta(a')`` from ``A (x)_B A`` to ``A (x)_R T``."""
    ts = ts or delta.T.ts
    A = ext.A
    n, d = A.dim, delta.T.dim
    Q = delta.space
    left_cols = [lambda i, p=p: sparse(A.basis_product(p, i)) for p in range(n)]

    def amb(v):
        out = {}
        for k, c in v.items():
            p, q = divmod(k, n)
            axpy(out, c, apply_factors(delta.ambient[q], [n, d], [left_cols[p], None]))
        return out

    for i, rel in enumerate(ts.Q.relation_rows()):
        if not Q.is_zero(amb(rel)):
            raise IllDefined(f"beta does not vanish on relation {i}")
    cols = [Q.project(amb({c: ext.field.one})) for c in ts.Q.reps]
    return Matrix.from_columns(cols, Q.dim, ext.field)


def theta(ext: RingExtension, ts, T: TRing, space) -> Matrix:
    """``theta(a (x) t) = a t^1 (x) t^2`` from ``A (x)_R T`` to ``A (x)_B A``."""
    A = ext.A
    d = T.dim
    f = ext.field

    def amb(v):
        out = [f.zero] * ts.dim
        for k, c in v.items():
            a, j = divmod(k, d)
            t = [f.one if i == j else f.zero for i in range(d)]
            out = [x + c * y for x, y in zip(out, ts.act_left(A.basis_vector(a), T.to_quotient(t)))]
        return out

    for i, rel in enumerate(space.relation_rows()):
        if any(amb(rel)):
            raise IllDefined(f"theta does not vanish on relation {i}")
    return Matrix.from_columns([amb({c: f.one}) for c in space.reps], ts.dim, f)


def s_action(ext: RingExtension, S=None):
    """Action table ``alpha |> e_a`` and the invariants ``{a : alpha(a) = alpha(1) a}``."""
    S = S or compute_S(ext)
    A = ext.A
    n = A.dim
    one = A.one()
    table = [[M.col(a) for a in range(n)] for M in S.matrices]
    rows = []
    for M in S.matrices:
        e = M @ one
        for i in range(n):
            rows.append(sparse([M[i, a] - A.product(e, A.basis_vector(a))[i] for a in range(n)]))
    return table, Subspace(sparse_kernel(rows, n, ext.field), n, ext.field)


# ---------------------------------------------------------------------------
# characterization


@dataclass
class GaloisReport:
    frobenius: bool | None
    left_d2: bool
    right_d2: bool
    balanced: bool
    galois: bool
    reason: str
    biconditional: bool | None
    literal_biconditional: bool | None = None
    dims: dict = dc_field(default_factory=dict)
    coinvariant_basis: list | None = None
    invariant_basis: list | None = None
    beta: Matrix | None = None
    theta: Matrix | None = None
    beta_bijective: bool | None = None
    inverse_checks: dict = dc_field(default_factory=dict)
    comodule_axioms: AxiomReport | None = None
    frobenius_note: str = ""

    @property
    def d2(self):
        return self.left_d2 and self.right_d2


def frobenius_flag(ext: RingExtension, seed: int = 0):
    """``(True | False | None, note)`` from the Frobenius search."""
    try:
        frobenius(ext, seed=seed)
        return True, ""
    except NotFound as exc:
        return False, str(exc)
    except Inconclusive as exc:
        return None, str(exc)


def characterize(ext: RingExtension, seed: int = 0, *, axioms: bool = True, ts=None, T=None, S=None,
                 d2=None, frob=None, bal=None) -> GaloisReport:
    """Decide the Frobenius, D2, balanced and Galois properties of ``ext``.

    The Galois verdict is ``beta`` bijective and coinvariants equal to B.
    ``biconditional`` records ``frobenius => (d2 and balanced <=> galois)``
    and ``literal_biconditional`` the unconditional
    ``(frobenius and d2 and balanced) <=> galois``; both are ``None`` when
    the Frobenius search is inconclusive.  Already
    computed pieces may be passed in; ``axioms=False`` skips the comodule
    axiom battery.
    """
    f = ext.field
    fro, note = frob if frob is not None else frobenius_flag(ext, seed)
    ts = ts or tensor_square(ext)
    T = T or compute_T(ext, ts)
    S = S or compute_S(ext)
    d2 = d2 or is_d2(ext, ts, T, S)
    bal = balanced(ext).balanced if bal is None else bal
    B = Subspace(ext.B_basis, ext.n, f)
    _, inv = s_action(ext, S)
    out = GaloisReport(
        frobenius=fro, left_d2=d2.left, right_d2=d2.right, balanced=bal, galois=False,
        reason="", biconditional=None, invariant_basis=inv.basis, frobenius_note=note,
        dims={"A": ext.n, "B": ext.m, "R": ext.R.dim, "T": T.dim, "S": S.dim, "AxA": ts.dim},
    )
    if not d2.right:
        out.reason = "not_right_d2"
    else:
        delta = coaction(ext, d2.right_qb, T)
        out.dims["AxT"] = delta.space.dim
        co = coinvariants(ext, delta)
        out.coinvariant_basis = co.basis
        if axioms:
            Tb = build_T_bialgebroid(ext, T, d2.right_qb)
            out.comodule_axioms = verify_comodule_algebra(ext, delta, Tb)
        beta = galois_map(ext, delta, ts)
        th = theta(ext, ts, T, delta.space)
        out.beta, out.theta = beta, th
        bij = beta.nrows == beta.ncols and RowReduction(beta.sparse_rows(), f).rank == beta.ncols
        out.beta_bijective = bij
        out.inverse_checks = {
            "theta_beta_identity": beta.ncols == th.nrows and th @ beta == Matrix.identity(ts.dim, f),
            "beta_theta_identity": beta.nrows == th.ncols and beta @ th == Matrix.identity(delta.space.dim, f),
        }
        co_is_B = co == B
        out.galois = bij and co_is_B
        out.reason = "ok" if out.galois else ("beta_not_bijective" if not bij else "coinvariants_differ_from_base")
    if fro is not None:
        # the theorem assumes a Frobenius extension; without it the claim is vacuous
        out.biconditional = (not fro) or ((d2.d2 and bal) == out.galois)
        out.literal_biconditional = (fro and d2.d2 and bal) == out.galois
    return out
