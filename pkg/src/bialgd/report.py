"""Report documents for the command line: one internal dict, two renderings."""
from __future__ import annotations

import json
from functools import cached_property

from . import __version__
from .algebra import RingExtension, algebra_of_group, compose, cycle_string, generate_group, inverse
from .bialgebroid import (
    bialgebra_specialize,
    build_S_bialgebroid,
    build_T_bialgebroid,
    pairing,
    quasibase_independent,
    verify_left_bialgebroid,
    verify_right_bialgebroid,
    weak_lift,
)
from .bimodules import balanced, check_frobenius_system, compute_S, compute_T, frobenius, tensor_square
from .depth_two import is_d2, right_quasibase
from .errors import Inconclusive, NotFound, NotSeparable
from .galois import characterize

CHECKS = ("d2", "frobenius", "balanced", "galois", "axioms")
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def s(x) -> str:
    """Every number in a report is a string; rationals as ``p/q``."""
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def tri(flag) -> str:
    return INCONCLUSIVE if flag is None else (PASS if flag else FAIL)


def fmt_vector(field, v):
    return [field.format(x) for x in v]


def fmt_witness(w):
    return None if w is None else [s(x) for x in w]


def axiom_table(rep):
    return {
        name: {"verdict": PASS if r.passed else FAIL, "witness": fmt_witness(r.witness), **({"note": r.note} if r.note else {})}
        for name, r in rep.items()
    }


class Analysis:
    """Lazily computed pipeline pieces shared by all checks."""

    def __init__(self, ext: RingExtension, seed: int = 0):
        self.ext = ext
        self.seed = seed

    @cached_property
    def ts(self):
        return tensor_square(self.ext)

    @cached_property
    def T(self):
        return compute_T(self.ext, self.ts)

    @cached_property
    def S(self):
        return compute_S(self.ext)

    @cached_property
    def d2(self):
        return is_d2(self.ext, self.ts, self.T, self.S)

    @cached_property
    def frobenius(self):
        """``(flag, system or None, note)``."""
        try:
            fs = frobenius(self.ext, seed=self.seed)
        except NotFound as exc:
            return False, None, str(exc)
        except Inconclusive as exc:
            return None, None, str(exc)
        return True, fs, ""

    @cached_property
    def balanced(self):
        return balanced(self.ext)

    def galois(self, axioms=True):
        fro, _, note = self.frobenius
        return characterize(self.ext, self.seed, axioms=axioms, ts=self.ts, T=self.T, S=self.S,
                            d2=self.d2, frob=(fro, note), bal=self.balanced.balanced)

    def dims(self):
        e = self.ext
        return {"A": s(e.n), "B": s(e.m), "R": s(e.R.dim), "T": s(self.T.dim), "S": s(self.S.dim), "AxA": s(self.ts.dim)}


def check_d2(an: Analysis):
    d = an.d2
    return {
        "verdict": tri(d.d2),
        "left": tri(d.left),
        "right": tri(d.right),
        "quasibase_lengths": {
            "left": s(len(d.left_qb)) if d.left_qb else None,
            "right": s(len(d.right_qb)) if d.right_qb else None,
        },
    }


def check_frobenius(an: Analysis):
    flag, fs, note = an.frobenius
    out = {"verdict": tri(flag), "seed": s(an.seed)}
    if note:
        out["note"] = note
    if fs is not None:
        identities = check_frobenius_system(an.ext, fs)
        out["method"] = fs.method
        out["identities"] = {k: tri(v) for k, v in identities.items()}
        out["length"] = s(len(fs))
        if not all(identities.values()):
            out["verdict"] = FAIL
    return out


def check_balanced(an: Analysis):
    b = an.balanced
    return {"verdict": tri(b.balanced), "endomorphism_dim": s(b.endo_dim), "bicommutant_dim": s(b.bicommutant_dim)}


def check_galois(an: Analysis, axioms=True):
    g = an.galois(axioms)
    f = an.ext.field
    out = {
        "verdict": tri(g.galois),
        "reason": g.reason,
        "biconditional": "undetermined" if g.biconditional is None else s(g.biconditional),
        "literal_biconditional": "undetermined" if g.literal_biconditional is None else s(g.literal_biconditional),
        "invariants": [fmt_vector(f, v) for v in g.invariant_basis],
    }
    if g.coinvariant_basis is not None:
        out["coinvariants"] = [fmt_vector(f, v) for v in g.coinvariant_basis]
        out["beta_bijective"] = s(g.beta_bijective)
        out["inverse_checks"] = {k: s(v) for k, v in g.inverse_checks.items()}
        out["dim_AxT"] = s(g.dims["AxT"])
    if g.comodule_axioms is not None:
        out["comodule_axioms"] = axiom_table(g.comodule_axioms)
        if not g.comodule_axioms.passed:
            out["verdict"] = FAIL
    return out


def check_axioms(an: Analysis):
    d = an.d2
    if not d.d2:
        return {"verdict": FAIL, "note": "bialgebroids require depth two on both sides"}
    ext = an.ext
    Tb = build_T_bialgebroid(ext, an.T, d.right_qb)
    Sb = build_S_bialgebroid(ext, an.S, an.T, d.left_qb, d.right_qb)
    rt = verify_right_bialgebroid(Tb)
    rs = verify_left_bialgebroid(Sb)
    p = pairing(Sb, Tb)
    other = right_quasibase(ext, an.ts, an.T, an.S, variant=1)
    indep = quasibase_independent(Tb, other)
    out = {
        "T": axiom_table(rt),
        "S": axiom_table(rs),
        "pairing": {
            "nondegenerate": s(p.nondegenerate),
            "rank_S_side": s(p.s_rank),
            "rank_T_side": s(p.t_rank),
            "dim_S": s(an.S.dim),
            "dim_T": s(an.T.dim),
        },
        "quasibase_independence": tri(indep),
    }
    ok = rt.passed and rs.passed and indep
    if an.frobenius[0]:
        ok = ok and p.nondegenerate and an.S.dim == an.T.dim
    if ext.R.dim == 1:
        _, brep = bialgebra_specialize(Tb)
        out["bialgebra"] = axiom_table(brep)
        ok = ok and brep.passed
    try:
        wl = weak_lift(Tb, seed=an.seed)
        out["weak_lift"] = {"status": "found", "method": wl.system.method, "checks": axiom_table(wl.report)}
        ok = ok and wl.report.passed
    except NotSeparable as exc:
        cert = [fmt_vector(ext.field, v) for v in (exc.certificate or [])]
        out["weak_lift"] = {"status": "not_separable", "note": str(exc), "certificate_image_basis": cert}
    except Inconclusive as exc:
        out["weak_lift"] = {"status": "inconclusive", "note": str(exc)}
    out["verdict"] = tri(ok)
    return out


RUNNERS = {
    "d2": check_d2,
    "frobenius": check_frobenius,
    "balanced": check_balanced,
    "galois": check_galois,
    "axioms": check_axioms,
}


def parse_checks(text: str) -> list[str]:
    items = [c.strip() for c in text.split(",") if c.strip()]
    if not items:
        raise ValueError("no checks given")
    out = []
    for c in items:
        if c == "all":
            out.extend(CHECKS)
        elif c in CHECKS:
            out.append(c)
        else:
            raise ValueError(f"unknown check {c!r}; choose from {', '.join(CHECKS + ('all',))}")
    return [c for c in CHECKS if c in out]


def exit_code(report) -> int:
    verdicts = [v["verdict"] for v in report["checks"].values()]
    if FAIL in verdicts:
        return 1
    if INCONCLUSIVE in verdicts:
        return 3
    return 0


def analyze(ext: RingExtension, checks, seed: int = 0, source: str | None = None):
    an = Analysis(ext, seed)
    report = {
        "tool": {"name": "bialgd", "version": __version__},
        "seed": s(seed),
        "field": ext.field.spec() if isinstance(ext.field.spec(), str) else {k: s(v) for k, v in ext.field.spec().items()},
        "dimensions": an.dims(),
        "checks": {c: RUNNERS[c](an) for c in checks},
    }
    if source is not None:
        report["input"] = source
    verdicts = [v["verdict"] for v in report["checks"].values()]
    report["verdict"] = FAIL if FAIL in verdicts else (INCONCLUSIVE if INCONCLUSIVE in verdicts else PASS)
    return report, exit_code(report)


def to_json(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text_lines(obj, indent=0):
    pad = "  " * indent
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, dict):
            if "verdict" in val and all(not isinstance(v, (dict, list)) for v in val.values()):
                extra = ", ".join(f"{k}={'-' if v is None else v}" for k, v in sorted(val.items()) if k != "verdict")
                yield f"{pad}{key:<32} {val['verdict']}" + (f"  ({extra})" if extra else "")
            else:
                yield f"{pad}{key}:"
                yield from _text_lines(val, indent + 1)
        elif isinstance(val, list):
            shown = "; ".join("[" + " ".join(map(str, v)) + "]" if isinstance(v, list) else str(v) for v in val)
            yield f"{pad}{key:<32} {shown if val else '(none)'}"
        else:
            yield f"{pad}{key:<32} {'-' if val is None else val}"


def to_text(report) -> str:
    return "\n".join(_text_lines(report)) + "\n"


# ---------------------------------------------------------------------------
# subgroup scan


def all_subgroups(elements, degree) -> list[tuple]:
    """Every subgroup, as a sorted element tuple, by closure of generated sets."""
    found = {}
    ident = tuple(range(degree))
    trivial = (ident,)
    found[trivial] = ()
    cyclic = {}
    for g in elements:
        H = tuple(generate_group([g], degree))
        cyclic.setdefault(H, g)
    frontier = list(cyclic)
    for H in frontier:
        found.setdefault(H, ())
    while frontier:
        nxt = []
        for H in frontier:
            for C, g in cyclic.items():
                if set(C) <= set(H):
                    continue
                J = tuple(generate_group(list(H) + [g], degree))
                if J not in found:
                    found[J] = ()
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), H))


def is_normal(H, elements) -> bool:
    Hs = set(H)
    return all(compose(compose(g, h), inverse(g)) in Hs for g in elements for h in H)


def scan(elements, degree, field, seed: int = 0):
    """Rows ``(subgroup, order, normal, d2, galois)`` and the exit code."""
    A = algebra_of_group(elements, field)
    index = {g: i for i, g in enumerate(A.elements)}
    rows = []
    for H in all_subgroups(elements, degree):
        ext = RingExtension(A, [A.basis_vector(index[h]) for h in H])
        an = Analysis(ext, seed)
        d2 = an.d2.d2
        g = an.galois(axioms=False)
        rows.append({
            "subgroup": [cycle_string(h) for h in H],
            "order": s(len(H)),
            "normal": s(is_normal(H, elements)),
            "d2": s(d2),
            "galois": s(g.galois),
            "biconditional": "undetermined" if g.biconditional is None else s(g.biconditional),
        })
    ok = all(r["d2"] == r["normal"] for r in rows)
    report = {
        "tool": {"name": "bialgd", "version": __version__},
        "group_order": s(len(elements)),
        "subgroups": s(len(rows)),
        "d2_count": s(sum(r["d2"] == "true" for r in rows)),
        "normal_count": s(sum(r["normal"] == "true" for r in rows)),
        "d2_iff_normal": s(ok),
        "rows": rows,
    }
    return report, 0 if ok else 1


def scan_text(report) -> str:
    lines = [f"{'order':>5}  {'normal':<6} {'d2':<6} {'galois':<6}  subgroup"]
    for r in report["rows"]:
        lines.append(f"{r['order']:>5}  {r['normal']:<6} {r['d2']:<6} {r['galois']:<6}  {{{', '.join(r['subgroup'])}}}")
    lines.append(f"subgroups={report['subgroups']} d2={report['d2_count']} normal={report['normal_count']} "
                 f"d2_iff_normal={report['d2_iff_normal']}")
    return "\n".join(lines) + "\n"
