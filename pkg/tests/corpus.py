"""Named test instances, built once per session."""
from __future__ import annotations

from functools import lru_cache

from bialgd.algebra import (
    Algebra,
    RingExtension,
    from_cycles,
    matrix_algebra,
    quadratic_field,
    scalars,
    subgroup_extension,
    trivial,
    truncated_polynomial,
)
from bialgd.bialgebroid import build_S_bialgebroid, build_T_bialgebroid
from bialgd.linalg import GF, QQ
from bialgd.report import Analysis

S3_GENS = [from_cycles([[1, 2]], 3), from_cycles([[1, 2, 3]], 3)]
D4_GENS = [from_cycles([[1, 2, 3, 4]], 4), from_cycles([[2, 4]], 4)]


def upper_triangular(field=QQ):
    """2x2 upper triangular matrices on E11, E12, E22: not a Frobenius algebra."""
    mult = [[{0: 1}, {1: 1}, {}], [{}, {}, {1: 1}], [{}, {}, {2: 1}]]
    return Algebra(field, ["E11", "E12", "E22"], mult, [1, 0, 1])


BUILDERS = {
    "Q|Q": lambda: trivial(truncated_polynomial(1)),
    "M2|M2": lambda: trivial(matrix_algebra(2)),
    "sqrt2|Q": lambda: scalars(quadratic_field(2)),
    "QC2|Q": lambda: subgroup_extension([from_cycles([[1, 2]], 2)], [], degree=2),
    "QS3|QA3": lambda: subgroup_extension(S3_GENS, [from_cycles([[1, 2, 3]], 3)], degree=3),
    "QD4|Q<r>": lambda: subgroup_extension(D4_GENS, [from_cycles([[1, 2, 3, 4]], 4)], degree=4),
    "M2|Q": lambda: scalars(matrix_algebra(2)),
    "Q[x]/x^2|Q": lambda: scalars(truncated_polynomial(2)),
    "T2|Q": lambda: scalars(upper_triangular()),
    "F5S3|F5A3": lambda: subgroup_extension(S3_GENS, [from_cycles([[1, 2, 3]], 3)], field=GF(5), degree=3),
    "M2|T2": lambda: RingExtension(matrix_algebra(2), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
    "QS3|Q<(12)>": lambda: subgroup_extension(S3_GENS, [from_cycles([[1, 2]], 3)], degree=3),
    "QS3|Q<(13)>": lambda: subgroup_extension(S3_GENS, [from_cycles([[1, 3]], 3)], degree=3),
    "QD4|Q<s>": lambda: subgroup_extension(D4_GENS, [from_cycles([[2, 4]], 4)], degree=4),
}

# the trivial subgroup: dim T = |G|^2, far slower than everything above
LARGE_BUILDERS = {
    "QS3|Q": lambda: subgroup_extension(S3_GENS, [], degree=3),
    "QD4|Q": lambda: subgroup_extension(D4_GENS, [], degree=4),
}

D2_NAMES = ["Q|Q", "M2|M2", "sqrt2|Q", "QC2|Q", "QS3|QA3", "QD4|Q<r>", "M2|Q", "Q[x]/x^2|Q", "T2|Q", "F5S3|F5A3", "M2|T2"]
NOT_D2_NAMES = ["QS3|Q<(12)>", "QS3|Q<(13)>", "QD4|Q<s>"]
# Frobenius + D2 + balanced instances named for the Galois direction
GALOIS_NAMES = ["QS3|QA3", "sqrt2|Q", "QC2|Q", "Q|Q", "M2|M2", "QD4|Q<r>", "M2|Q", "Q[x]/x^2|Q"]
GROUP_NAMES = ["QC2|Q", "QS3|QA3", "QD4|Q<r>", "QS3|Q<(12)>", "QS3|Q<(13)>", "QD4|Q<s>", "F5S3|F5A3"]


@lru_cache(maxsize=None)
def ext(name):
    return (BUILDERS.get(name) or LARGE_BUILDERS[name])()


@lru_cache(maxsize=None)
def analysis(name):
    return Analysis(ext(name))


@lru_cache(maxsize=None)
def T_bialgebroid(name):
    an = analysis(name)
    return build_T_bialgebroid(an.ext, an.T, an.d2.right_qb)


@lru_cache(maxsize=None)
def S_bialgebroid(name):
    an = analysis(name)
    return build_S_bialgebroid(an.ext, an.S, an.T, an.d2.left_qb, an.d2.right_qb)


@lru_cache(maxsize=None)
def characterization(name):
    return analysis(name).galois(axioms=True)
