"""Exact scalars and sparse linear algebra over the rationals.

Vectors are plain dicts mapping an orderable label to a nonzero Fraction.
Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

SparseVec = Dict[Hashable, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def fmt_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"not a rational string: {s!r}")
    s = s.strip()
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational string: {s!r}") from exc
    return q


def is_half_integer(q) -> bool:
    return Fraction(q).denominator in (1, 2)


# -- sparse vectors ---------------------------------------------------------

def vec_clean(v: SparseVec) -> SparseVec:
    return {k: c for k, c in v.items() if c != 0}


def vec_axpy(y: SparseVec, a, x: SparseVec) -> SparseVec:
    """Return y + a*x as a new vector."""
    out = dict(y)
    if a == 0:
        return out
    for k, c in x.items():
        s = out.get(k, ZERO) + a * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_add(x: SparseVec, y: SparseVec) -> SparseVec:
    return vec_axpy(x, 1, y)


def vec_sub(x: SparseVec, y: SparseVec) -> SparseVec:
    return vec_axpy(x, -1, y)


def vec_scale(a, x: SparseVec) -> SparseVec:
    if a == 0:
        return {}
    return {k: a * c for k, c in x.items()}


def _iadd(acc: SparseVec, a, x: SparseVec) -> None:
    # in-place accumulate; only used on private scratch vectors
    for k, c in x.items():
        s = acc.get(k, ZERO) + a * c
        if s:
            acc[k] = s
        else:
            del acc[k]


# -- row echelon span ---------------------------------------------------------

class SpanBasis:
    """Reduced row-echelon basis of a subspace.

    Each stored vector has coefficient 1 at its pivot and 0 at every other
    pivot. The pivot of a newly inserted vector is its smallest label, so the
    result does not depend on dict iteration order.

    ``insert`` mutates in place; use :func:`span_insert` for a persistent
    update. Stored vectors are never mutated, only replaced, so copying the
    pivot map is enough to fork a basis.
    """

    __slots__ = ("pivots", "_tags")

    def __init__(self):
        self.pivots: Dict[Hashable, SparseVec] = {}
        # optional bookkeeping: expression of each stored vector in terms of
        # the caller's input indices (used by solve_in_span)
        self._tags: Dict[Hashable, SparseVec] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> "SpanBasis":
        other = SpanBasis()
        other.pivots = dict(self.pivots)
        other._tags = dict(self._tags)
        return other

    def reduce(self, v: SparseVec, tag: Optional[SparseVec] = None):
        """Return the residual of v (and of its tag) against the basis."""
        r = dict(v)
        t = dict(tag) if tag is not None else None
        hits = [p for p in r if p in self.pivots]
        for p in hits:
            c = r.get(p)
            if not c:
                continue
            _iadd(r, -c, self.pivots[p])
            if t is not None:
                _iadd(t, -c, self._tags[p])
        return r, t

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)[0]

    def insert(self, v: SparseVec, tag: Optional[SparseVec] = None) -> Tuple[bool, SparseVec]:
        r, t = self.reduce(v, tag)
        if not r:
            return False, r
        p = min(r)
        inv = 1 / r[p]
        new = {k: c * inv for k, c in r.items()}
        new_tag = {k: c * inv for k, c in t.items()} if t is not None else None
        for q, w in list(self.pivots.items()):
            c = w.get(p)
            if c:
                self.pivots[q] = vec_axpy(w, -c, new)
                if new_tag is not None and q in self._tags:
                    self._tags[q] = vec_axpy(self._tags[q], -c, new_tag)
        self.pivots[p] = new
        if new_tag is not None:
            self._tags[p] = new_tag
        return True, r

    def vectors(self) -> List[SparseVec]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def span_insert(basis: SpanBasis, v: SparseVec) -> Tuple[SpanBasis, bool, SparseVec]:
    b = basis.copy()
    inserted, residual = b.insert(v)
    return b, inserted, residual


def rank(vectors: Iterable[SparseVec]) -> int:
    b = SpanBasis()
    for v in vectors:
        b.insert(v)
    return b.rank


def solve_in_span(vectors: Sequence[SparseVec], target: SparseVec) -> Optional[List[Fraction]]:
    """Coefficients c with sum(c[i] * vectors[i]) == target, or None.

    Dependent input vectors get coefficient 0.
    """
    b = SpanBasis()
    for i, v in enumerate(vectors):
        b.insert(v, {i: ONE})
    r, t = b.reduce(target, {})
    if r:
        return None
    coeffs = [ZERO] * len(vectors)
    # target - sum(tag-combination) == 0, so the combination is -t
    for i, c in t.items():
        coeffs[i] = -c
    return coeffs


def dependent_subset(vectors: Sequence[SparseVec]) -> Optional[Tuple[int, List[int]]]:
    """First index that depends on earlier ones, with the indices it uses."""
    b = SpanBasis()
    for i, v in enumerate(vectors):
        r, t = b.reduce(v, {i: ONE})
        if not r:
            return i, sorted(k for k in t)
        b.insert(v, {i: ONE})
    return None
