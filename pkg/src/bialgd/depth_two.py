"""Depth-two quasibases.

A right quasibase is a list of pairs ``(gamma_j, u_j)`` in ``S x T`` with
``a (x) a' = sum_j a gamma_j(a') u_j`` for all ``a, a'``; a left quasibase
has ``a (x) a' = sum_i t_i beta_i(a) a'``.

Both sides of each identity are one-sided module maps in the free variable
(left A-linear in ``a`` for the right version, right A-linear in ``a'`` for
the left one), so it suffices to impose them at ``a = 1`` (resp.
``a' = 1``).  With ``w_p = sum_u c_{p,u} u`` the identity is linear in the
coefficients ``c``, and solvability of that system is exactly the D2
condition on that side.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import RingExtension
from .bimodules import SRing, TensorSquare, TRing, compute_S, compute_T, tensor_square
from .errors import NoSolution, NotD2
from .linalg import sparse, sparse_solve
from .tensors import axpy


@dataclass
class Quasibase:
    side: str
    pairs: list  # (Matrix in S, T-coordinate vector)

    def __len__(self):
        return len(self.pairs)


def _solve_quasibase(ext, ts: TensorSquare, T: TRing, S: SRing, side: str, variant: int = 0):
    A = ext.A
    n, q, d, f = A.dim, ts.dim, T.dim, ext.field
    # action of each A-basis element on each T-basis element, in quotient coords
    acted = []
    for i in range(n):
        e = A.basis_vector(i)
        if side == "right":
            acted.append([sparse(ts.act_left(e, u)) for u in T.basis])
        else:
            acted.append([sparse(ts.act_right(u, e)) for u in T.basis])
    rows = [dict() for _ in range(n * q)]
    for p, M in enumerate(S.matrices):
        for r in range(n):
            for i in range(n):
                x = M[i, r]
                if not x:
                    continue
                for k in range(d):
                    col = p * d + k
                    for c, y in acted[i][k].items():
                        row = rows[r * q + c]
                        w = row.get(col, 0) + x * y
                        if w:
                            row[col] = w
                        else:
                            row.pop(col, None)
    rhs = []
    one = A.one()
    for r in range(n):
        e = A.basis_vector(r)
        rhs.extend(ts.pure(one, e) if side == "right" else ts.pure(e, one))
    try:
        sol, ker = sparse_solve(rows, rhs, S.dim * d, f)
    except NoSolution:
        raise NotD2(side) from None
    if variant and ker:
        sol = axpy(dict(sol), f.one, ker[(variant - 1) % len(ker)])
    pairs = []
    for p, M in enumerate(S.matrices):
        t = [sol.get(p * d + k, f.zero) for k in range(d)]
        if any(t):
            pairs.append((M, t))
    return Quasibase(side, pairs)


def right_quasibase(ext, ts=None, T=None, S=None, variant: int = 0) -> Quasibase:
    """Solve ``1 (x) a' = sum_j gamma_j(a') u_j``; raises ``NotD2('right')``.

    ``variant > 0`` shifts the particular solution by a kernel vector, giving
    a different quasibase when one exists.
    """
    ts = ts or tensor_square(ext)
    T = T or compute_T(ext, ts)
    S = S or compute_S(ext)
    return _solve_quasibase(ext, ts, T, S, "right", variant)


def left_quasibase(ext, ts=None, T=None, S=None, variant: int = 0) -> Quasibase:
    ts = ts or tensor_square(ext)
    T = T or compute_T(ext, ts)
    S = S or compute_S(ext)
    return _solve_quasibase(ext, ts, T, S, "left", variant)


def verify_quasibase(ext: RingExtension, ts: TensorSquare, T: TRing, qb: Quasibase):
    """Check the defining identity on every pair of basis elements.

    Works on ambient representatives, independently of the action tables
    used by the solver.  Returns ``(ok, first failing (p, q) or None)``.
    """
    A = ext.A
    n = A.dim
    lifts = [T.lift(t) for _, t in qb.pairs]
    for p in range(n):
        ep = A.basis_vector(p)
        for q in range(n):
            eq = A.basis_vector(q)
            total = {}
            for (M, _), lift in zip(qb.pairs, lifts):
                if qb.side == "right":
                    x = A.product(ep, M @ eq)
                    axpy(total, 1, ts.ambient_left(x, lift))
                else:
                    y = A.product(M @ ep, eq)
                    axpy(total, 1, ts.ambient_right(lift, y))
            if ts.project(total) != ts.pure(ep, eq):
                return False, (p, q)
    return True, None


@dataclass
class D2Result:
    left: bool
    right: bool
    left_qb: Quasibase | None = None
    right_qb: Quasibase | None = None

    @property
    def d2(self):
        return self.left and self.right


def is_d2(ext: RingExtension, ts=None, T=None, S=None) -> D2Result:
    ts = ts or tensor_square(ext)
    T = T or compute_T(ext, ts)
    S = S or compute_S(ext)
    out = D2Result(False, False)
    try:
        out.left_qb = left_quasibase(ext, ts, T, S)
        out.left = True
    except NotD2:
        pass
    try:
        out.right_qb = right_quasibase(ext, ts, T, S)
        out.right = True
    except NotD2:
        pass
    return out
