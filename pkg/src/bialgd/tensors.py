"""Multi-factor tensor bookkeeping over sparse ambient coordinates.

A linear map on one factor is given by its columns: ``cols[j]`` is the
sparse image of basis vector ``j``.  The ambient index of a pure basis
tensor ``(i_0, ..., i_{k-1})`` is mixed-radix in ``dims``.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

from .linalg import Quotient


def axpy(out: dict, c, v: dict) -> dict:
    for k, x in v.items():
        w = out.get(k, 0) + c * x
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def flat_index(idx: Sequence[int], dims: Sequence[int]) -> int:
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


def split_index(k: int, dims: Sequence[int]) -> tuple:
    out = []
    for d in reversed(dims):
        k, r = divmod(k, d)
        out.append(r)
    return tuple(reversed(out))


def pure(vectors: Sequence[dict], dims: Sequence[int]) -> dict:
    """Sparse ambient vector of ``v_0 (x) v_1 (x) ...``."""
    out = {0: 1}
    for v, d in zip(vectors, dims):
        nxt = {}
        for k, c in out.items():
            base = k * d
            for i, x in v.items():
                w = c * x
                if w:
                    nxt[base + i] = w
        out = nxt
        if not out:
            break
    return out


def apply_factors(v: dict, dims: Sequence[int], maps: Sequence, out_dims: Sequence[int] | None = None) -> dict:
    """Apply one linear map per factor (``None`` = identity).

    A map is a list of sparse columns or a callable ``j -> sparse``;
    ``out_dims`` are the factor dimensions of the codomain.
    """
    out_dims = dims if out_dims is None else out_dims
    cache = [dict() for _ in dims]
    out = {}
    for k, c in v.items():
        idx = split_index(k, dims)
        parts = []
        for s, i in enumerate(idx):
            m = maps[s]
            if m is None:
                parts.append({i: 1})
                continue
            img = cache[s].get(i)
            if img is None:
                img = m(i) if callable(m) else m[i]
                cache[s][i] = img
            if not img:
                parts = None
                break
            parts.append(img)
        if parts is None:
            continue
        axpy(out, c, pure(parts, out_dims))
    return out


def factorwise_product(v: dict, w: dict, dims: Sequence[int], muls: Sequence[Callable]) -> dict:
    """``(x_0 (x) x_1 ...)(y_0 (x) y_1 ...) = x_0 y_0 (x) x_1 y_1 ...``.

    ``muls[s](i, j)`` is the sparse product of basis vectors in factor ``s``.
    """
    out = {}
    for k1, c1 in v.items():
        i1 = split_index(k1, dims)
        for k2, c2 in w.items():
            i2 = split_index(k2, dims)
            parts = [muls[s](a, b) for s, (a, b) in enumerate(zip(i1, i2))]
            if all(parts):
                axpy(out, c1 * c2, pure(parts, dims))
    return out


def balanced_tensor(dims: Sequence[int], slots: Sequence[Sequence[tuple]], field) -> Quotient:
    """Tensor product balanced over a ring acting between neighbouring factors.

    ``slots[s]`` lists, for each ring basis element ``r``, the pair
    ``(right_r, left_r)``: columns of ``x -> x . r`` on factor ``s`` and of
    ``y -> r . y`` on factor ``s + 1``.  Relations are
    ``... (x . r) (x) y ... - ... x (x) (r . y) ...`` over all basis tensors.
    """
    total = math.prod(dims)
    if total == 0:
        return Quotient(0, [], field)
    stride = [total // math.prod(dims[: s + 1]) for s in range(len(dims))]
    rels = []
    for s, acts in enumerate(slots):
        st, st1 = stride[s], stride[s + 1]
        for right, left in acts:
            for k in range(total):
                i = (k // st) % dims[s]
                j = (k // st1) % dims[s + 1]
                base = k - i * st
                rel = {}
                for i2, x in right[i].items():
                    rel[base + i2 * st] = x
                base = k - j * st1
                for j2, x in left[j].items():
                    key = base + j2 * st1
                    w = rel.get(key, 0) - x
                    if w:
                        rel[key] = w
                    else:
                        rel.pop(key, None)
                if rel:
                    rels.append(rel)
    return Quotient(total, rels, field)


class IteratedQuotient:
    """``(V0 (x)_R V1) (x)_R V2`` built on an existing quotient ``Q2`` of ``V0 (x) V1``.

    ``slot`` lists ``(right_r, left_r)`` for the second junction: columns of
    ``y -> y . r`` on ``V1`` and of ``z -> r . z`` on ``V2``.  This agrees with
    the one-shot quotient of ``V0 (x) V1 (x) V2`` whenever ``y -> y . r`` is
    well defined on ``Q2``, that is when the two R-actions on ``V1`` commute.
    ``project`` takes ambient vectors over ``d0 * d1 * d2``.
    """

    def __init__(self, Q2: Quotient, d0: int, d1: int, d2: int, slot, field):
        self.Q2, self.d1, self.d2 = Q2, d1, d2
        self._pairs: dict = {}
        acts = []
        for right, left in slot:
            cols = []
            for rep in Q2.reps:
                v = apply_factors({rep: 1}, [d0, d1], [None, right])
                cols.append({i: x for i, x in enumerate(Q2.project(v)) if x})
            acts.append((cols, left))
        self.outer = balanced_tensor([Q2.dim, d2], [acts], field)

    @property
    def dim(self) -> int:
        return self.outer.dim

    def _pair(self, k):
        q = self._pairs.get(k)
        if q is None:
            q = self._pairs[k] = {i: x for i, x in enumerate(self.Q2.project({k: 1})) if x}
        return q

    def project(self, v: dict) -> list:
        d2 = self.d2
        out: dict = {}
        for k, c in v.items():
            ij, l = divmod(k, d2)
            for i, x in self._pair(ij).items():
                key = i * d2 + l
                w = out.get(key, 0) + c * x
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return self.outer.project(out)


def a_tensor_over_r(A, R_basis, d: int, r_left_cols: Sequence[list]) -> Quotient:
    """``A (x)_R M`` for a left R-module ``M`` of dimension ``d``.

    ``r_left_cols[k]`` gives the columns of ``m -> r_k . m``; ``A`` is a right
    R-module by multiplication.  Ambient index of ``e_a (x) m_j`` is ``a * d + j``.
    """
    n = A.dim
    slots = []
    for r, left in zip(R_basis, r_left_cols):
        right = []
        for j in range(n):
            v = A.product(A.basis_vector(j), r)
            right.append({i: x for i, x in enumerate(v) if x})
        slots.append((right, left))
    return balanced_tensor([n, d], [slots], A.field)
