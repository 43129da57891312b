"""Theorem-level checks at desk scale, each producing a JSON certificate.

All linear algebra happens inside the ambient tensor product that holds the
irreducible module; every vector built here lies in U(n^-) v0.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .kernel import SpanBasis, SparseVec, dependent_subset, fmt_rational, solve_in_span, vec_axpy
from .patterns import Triangle, enumerate_pi, grad_of, in_pi, root_sum, weight_coeff
from .pbw import Word, exp_word, is_arranged, prec, prec_key, random_arranged_word
from .repbuild import apply_word, irreducible_module
from .rootsys import (
    Cell,
    DominantWeight,
    cells,
    fundamental,
    is_short,
    root_of_cell,
    simple_root_coords,
    vsub,
)

log = logging.getLogger(__name__)


@dataclass
class Certificate:
    claim: str
    params: dict
    verdict: str = "pass"
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def fail(self, **witness) -> "Certificate":
        self.verdict = "fail"
        self.witness.update(witness)
        return self

    def to_json(self) -> dict:
        return {"claim": self.claim, "params": self.params, "verdict": self.verdict, "witness": self.witness}


class VerificationFailure(RuntimeError):
    def __init__(self, cert: Certificate):
        super().__init__(f"{cert.claim}: {cert.witness}")
        self.cert = cert


def weight_params(w: DominantWeight) -> dict:
    return {"n": w.n, "weight": list(w.a), "lambda": [fmt_rational(x) for x in w.lam]}


# -- basis policies ---------------------------------------------------------------

@dataclass(frozen=True)
class BasisPolicy:
    kind: str = "ordered"
    seed: int = 0
    words: Tuple[Word, ...] = ()

    def __post_init__(self):
        if self.kind not in ("ordered", "random-arranged", "explicit"):
            raise ValueError(f"unknown basis policy {self.kind!r}")

    def describe(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "random-arranged":
            out["seed"] = self.seed
        if self.kind == "explicit":
            out["words"] = [str(wd) for wd in self.words]
        return out


ORDERED = BasisPolicy("ordered")


def monomials_for(w: DominantWeight, p: BasisPolicy = ORDERED) -> Dict[Triangle, Word]:
    pi = enumerate_pi(w)
    if p.kind == "ordered":
        return {T: exp_word(T) for T in pi}
    if p.kind == "random-arranged":
        rng = random.Random(p.seed)
        return {T: random_arranged_word(T, rng) for T in pi}
    chosen: Dict[Triangle, Word] = {}
    for wd in p.words:
        if wd.n != w.n:
            raise ValueError(f"word {wd} has rank {wd.n}, expected {w.n}")
        if not is_arranged(wd):
            raise ValueError(f"word {wd} is not arranged")
        T = wd.log
        if T in chosen:
            raise ValueError(f"two words with exponents {T}")
        chosen[T] = wd
    missing = [T for T in pi if T not in chosen]
    extra = [T for T in chosen if not in_pi(T, w)]
    if extra:
        raise ValueError(f"word exponents outside Pi_lambda: {[str(T) for T in extra]}")
    for T in missing:
        chosen[T] = exp_word(T)
    return {T: chosen[T] for T in pi}


# -- basis (main theorem) ------------------------------------------------------------

@lru_cache(maxsize=None)
def _ordered_vectors(w: DominantWeight) -> Tuple[Tuple[Triangle, ...], Tuple[SparseVec, ...]]:
    M = irreducible_module(w)
    pi = tuple(enumerate_pi(w))
    vecs = tuple(apply_word(M.ambient, exp_word(T), M.highest) for T in pi)
    return pi, vecs


def verify_basis(w: DominantWeight, p: BasisPolicy = ORDERED) -> Certificate:
    cert = Certificate("basis", {**weight_params(w), "policy": p.describe()})
    words = monomials_for(w, p)
    M = irreducible_module(w)
    tri = list(words)
    vecs = [apply_word(M.ambient, words[T], M.highest) for T in tri]
    span = SpanBasis()
    for v in vecs:
        span.insert(v)
    cert.witness.update(rank=span.rank, count=len(tri), dim=M.dim)
    if span.rank == len(tri) == M.dim:
        return cert
    dep = dependent_subset(vecs)
    bad = {}
    if dep is not None:
        i, idxs = dep
        bad = {"dependent": [{"triangle": tri[k].to_json(), "word": str(words[tri[k]])} for k in idxs]}
    return cert.fail(**bad)


# -- straightening -----------------------------------------------------------------------

def straighten(w: DominantWeight, M: Triangle) -> Certificate:
    """Express exp(M) v0 in the ordered basis and check every term is prec M."""
    if M.n != w.n:
        raise ValueError("rank mismatch")
    if in_pi(M, w):
        raise ValueError(f"straighten needs log M outside Pi_lambda, got {M}")
    cert = Certificate("straighten", {**weight_params(w), "monomial": M.to_json()})
    mod = irreducible_module(w)
    pi, vecs = _ordered_vectors(w)
    target = apply_word(mod.ambient, exp_word(M), mod.highest)
    coeffs = solve_in_span(list(vecs), target)
    if coeffs is None:
        return cert.fail(reason="not in span")
    terms = [(T, c) for T, c in zip(pi, coeffs) if c]
    back: SparseVec = {}
    for T, c in terms:
        back = vec_axpy(back, c, vecs[pi.index(T)])
    cert.witness["coefficients"] = [
        {"exponents": T.to_json(), "coeff": fmt_rational(c)} for T, c in terms
    ]
    cert.witness["zero"] = not target
    if back != target:
        return cert.fail(reason="coefficients do not reproduce M v0")
    offenders = [T for T, _ in terms if prec(T, M) >= 0]
    if offenders:
        return cert.fail(not_smaller=[T.to_json() for T in offenders])
    return cert


def straighten_coefficients(cert: Certificate) -> Dict[Triangle, Fraction]:
    return {
        Triangle.from_json(t["exponents"]): Fraction(t["coeff"]) for t in cert.witness.get("coefficients", [])
    }


def weight_filtered_triangles(w: DominantWeight) -> List[Triangle]:
    """Exponent triangles T with lambda - sum T_c root(c) a weight of L_lambda.

    Monomials outside this set kill v0. The lowest weight is -lambda, so every
    simple-root coordinate of the root sum is bounded by that of 2 lambda.
    """
    n = w.n
    weights = irreducible_module(w).weight_set()
    cap = simple_root_coords(n, [2 * x for x in w.lam])
    order = cells(n)
    rc = [simple_root_coords(n, root_of_cell(n, c)) for c in order]
    out: List[Triangle] = []
    vals = [0] * len(order)

    def rec(k: int, used: List[Fraction]) -> None:
        if k == len(order):
            T = Triangle(n, tuple(vals))
            if vsub(w.lam, root_sum(T)) in weights:
                out.append(T)
            return
        v = 0
        cur = list(used)
        while all(x <= y for x, y in zip(cur, cap)):
            vals[k] = v
            rec(k + 1, cur)
            v += 1
            cur = [x + r for x, r in zip(cur, rc[k])]
        vals[k] = 0

    rec(0, [Fraction(0)] * n)
    return out


def straighten_sweep(w: DominantWeight) -> Certificate:
    cert = Certificate("straighten-sweep", weight_params(w))
    checked, zero = 0, 0
    for T in weight_filtered_triangles(w):
        if in_pi(T, w):
            continue
        c = straighten(w, T)
        checked += 1
        zero += bool(c.witness.get("zero"))
        if not c.ok:
            return cert.fail(checked=checked, offending=c.to_json())
    cert.witness.update(checked=checked, zero_vectors=zero)
    return cert


# -- Minkowski decomposition -------------------------------------------------------------

def minkowski_direction(w: DominantWeight) -> Tuple[int, DominantWeight]:
    n = w.n
    nz = [i for i, x in enumerate(w.a, 1) if x]
    if not nz:
        raise ValueError("Minkowski step needs a nonzero weight")
    if sum(w.a) == 1 or w.a == fundamental(n, n, 2).a:
        raise ValueError(f"{w} is a base case (fundamental or 2w_n)")
    l = nz[0]
    eps = fundamental(n, l) if l < n else fundamental(n, n, 2)
    return l, eps


def _lll(a: Cell, b: Cell) -> bool:
    return a != b and a[0] <= b[0] and a[1] <= b[1]


@dataclass
class MinkowskiResult:
    rest: Triangle
    part: Triangle
    used_fallback: bool
    indicator_failure: Optional[str] = None


def minkowski_decompose(w: DominantWeight, T: Triangle) -> MinkowskiResult:
    """Split T in Pi_lambda as rest + part with part in Pi_eps, rest in Pi_{lambda - eps}.

    Tries the indicator of the <<<-minimal support cells in rows <= l first;
    if that pair is not valid, scans Pi_eps in lexicographic order.
    """
    if not in_pi(T, w):
        raise ValueError(f"{T} is not in Pi_lambda")
    l, eps = minkowski_direction(w)
    lam2 = w - eps
    n = w.n
    supp = [c for c, v in T.items() if v]
    minimal = [c for c in supp if c[0] <= l and not any(_lll(d, c) for d in supp)]
    U = Triangle.from_dict(n, {c: 1 for c in minimal})
    rest = T - U
    why = None
    if not in_pi(U, eps):
        why = f"indicator {U} not in Pi_eps"
    elif not in_pi(rest, lam2):
        why = f"remainder {rest} not in Pi_(lambda-eps)"
    else:
        return MinkowskiResult(rest, U, False)
    log.info("Minkowski indicator construction failed for %s, T=%s: %s", w, T, why)
    for U in enumerate_pi(eps):
        if U.leq(T) and in_pi(T - U, lam2):
            return MinkowskiResult(T - U, U, True, why)
    cert = Certificate("minkowski", {**weight_params(w), "triangle": T.to_json()})
    raise VerificationFailure(cert.fail(reason="no decomposition exists", indicator_failure=why))


def minkowski_certificate(w: DominantWeight) -> Certificate:
    cert = Certificate("minkowski", weight_params(w))
    l, eps = minkowski_direction(w)
    total, fallbacks = 0, []
    for T in enumerate_pi(w):
        try:
            r = minkowski_decompose(w, T)
        except VerificationFailure as exc:
            return cert.fail(**exc.cert.witness, triangle=T.to_json())
        total += 1
        if r.used_fallback:
            fallbacks.append({"triangle": T.to_json(), "part": r.part.to_json(), "indicator_failure": r.indicator_failure})
    cert.witness.update(checked=total, eps=list(eps.a), fallback_count=len(fallbacks), fallbacks=fallbacks)
    return cert


# -- weighted PBW degeneration ----------------------------------------------------------

def _grade_str(m: Fraction) -> str:
    return fmt_rational(m)


def filtration_spans(w: DominantWeight) -> Tuple[List[Fraction], Dict[Fraction, SpanBasis]]:
    """Span of {M v0 : M ordered, grad M <= m} for every half-integer grade m.

    Returned spans are snapshots keyed by grade; grades run from 0 to the
    largest grade of any weight-filtered monomial.
    """
    mod = irreducible_module(w)
    cands = sorted(weight_filtered_triangles(w), key=prec_key)
    top = max((grad_of(T) for T in cands), default=Fraction(0))
    grades = [Fraction(k, 2) for k in range(int(2 * top) + 1)]
    span = SpanBasis()
    snaps: Dict[Fraction, SpanBasis] = {}
    it = iter(cands)
    pending = next(it, None)
    for m in grades:
        while pending is not None and grad_of(pending) <= m:
            span.insert(apply_word(mod.ambient, exp_word(pending), mod.highest))
            pending = next(it, None)
        snaps[m] = span.copy()
    return grades, snaps


def graded_dims(w: DominantWeight) -> Tuple[Dict[Fraction, int], Certificate]:
    cert = Certificate("graded-dims", weight_params(w))
    counts: Dict[Fraction, int] = {}
    for T in enumerate_pi(w):
        g = grad_of(T)
        counts[g] = counts.get(g, 0) + 1
    grades, snaps = filtration_spans(w)
    dims = {m: snaps[m].rank for m in grades}
    cert.witness["counts"] = {_grade_str(m): counts[m] for m in sorted(counts)}
    cert.witness["filtration"] = {_grade_str(m): dims[m] for m in grades}
    prev = 0
    for m in sorted(set(grades) | set(counts)):
        d = dims.get(m, prev)
        if d - prev != counts.get(m, 0):
            return counts, cert.fail(grade=_grade_str(m), jump=d - prev, count=counts.get(m, 0))
        prev = d
    if prev != irreducible_module(w).dim:
        return counts, cert.fail(reason="filtration does not exhaust the module", top=prev)
    return counts, cert


def degeneration_basis_check(w: DominantWeight, p: BasisPolicy = ORDERED) -> Certificate:
    """Images of M_T v0 (grad T = m) must be a basis of layer m modulo layer m - 1/2."""
    cert = Certificate("degeneration-basis", {**weight_params(w), "policy": p.describe()})
    words = monomials_for(w, p)
    mod = irreducible_module(w)
    grades, snaps = filtration_spans(w)
    by_grade: Dict[Fraction, List[Triangle]] = {}
    for T in words:
        by_grade.setdefault(grad_of(T), []).append(T)
    prev = SpanBasis()
    checked = []
    for m in grades:
        cur = prev.copy()
        for T in by_grade.get(m, []):
            ok, _ = cur.insert(apply_word(mod.ambient, words[T], mod.highest))
            if not ok:
                return cert.fail(grade=_grade_str(m), triangle=T.to_json(), word=str(words[T]))
        if cur.rank != snaps[m].rank:
            return cert.fail(grade=_grade_str(m), reason="layer not reached", rank=cur.rank, layer=snaps[m].rank)
        checked.append(_grade_str(m))
        prev = snaps[m]
    extra = [g for g in by_grade if g not in snaps]
    if extra:
        return cert.fail(reason="basis triangle above the top grade", grades=[_grade_str(g) for g in extra])
    cert.witness["grades"] = checked
    return cert


# -- exploratory scan for the non-arranged question ----------------------------------------

def has_bad_subexpression(wd: Word) -> bool:
    """True if wd contains f_{i,i'} ... f_{j,j'} ... f_{i,i'} with i != j (short factors)."""
    shorts = [c[0] for c in wd.factors if is_short(wd.n, c)]
    for p, i in enumerate(shorts):
        for q in range(p + 1, len(shorts)):
            if shorts[q] == i:
                if any(x != i for x in shorts[p + 1:q]):
                    return True
                break
    return False


def conjecture_scan(w: DominantWeight, max_len: int, seed: int = 0, samples: int = 10, tries: int = 20) -> dict:
    """Random non-arranged choices that avoid the bad subexpression; informational only.

    Triangles of total degree <= max_len get a shuffled word when one passes
    the filter, the rest keep their ordered word.
    """
    report = {"params": {**weight_params(w), "max_len": max_len, "seed": seed, "samples": samples}, "samples": []}
    if max_len <= 0:
        return report
    rng = random.Random(seed)
    mod = irreducible_module(w)
    pi = enumerate_pi(w)
    for s in range(samples):
        words = {}
        nonarranged = 0
        for T in pi:
            wd = exp_word(T)
            if T.degree <= max_len:
                for _ in range(tries):
                    f = list(wd.factors)
                    rng.shuffle(f)
                    cand = Word(w.n, tuple(f))
                    if not has_bad_subexpression(cand):
                        wd = cand
                        break
            nonarranged += not is_arranged(wd)
            words[T] = wd
        span = SpanBasis()
        for T in pi:
            span.insert(apply_word(mod.ambient, words[T], mod.highest))
        report["samples"].append(
            {"sample": s, "non_arranged": nonarranged, "rank": span.rank, "dim": mod.dim, "basis": span.rank == mod.dim}
        )
    return report
