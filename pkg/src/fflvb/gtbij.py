"""Type-B Gelfand-Tsetlin patterns and the piecewise-linear maps F and G.

A pattern lives on the same cells as a triangle. The top row R(i, i) =
lambda_i is implicit. Neighbors of (i, j): upper-left (i, j-1), upper-right
(i+1, j), bottom-left (i-1, j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Dict, List, Optional, Tuple

from .kernel import fmt_rational, is_half_integer, parse_rational
from .patterns import Triangle, best_partial_sums, in_pi
from .rootsys import Cell, DominantWeight, cell_index, cells, is_short, is_valid_cell, weight_from_fundamental, fundamental_from_lambda


@dataclass(frozen=True)
class GTPattern:
    lam: Tuple[Fraction, ...]
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.lam)
        if len(self.entries) != n * n:
            raise ValueError(f"pattern for n={n} needs {n * n} entries")

    @property
    def n(self) -> int:
        return len(self.lam)

    def __getitem__(self, c: Cell) -> Fraction:
        i, j = c
        if i == j:
            return self.lam[i - 1]
        return self.entries[cell_index(self.n)[c]]

    def get(self, c: Cell) -> Optional[Fraction]:
        i, j = c
        if i == j and 1 <= i <= self.n:
            return self.lam[i - 1]
        if is_valid_cell(self.n, c):
            return self.entries[cell_index(self.n)[c]]
        return None

    def items(self):
        return zip(cells(self.n), self.entries)

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [fmt_rational(x) for x in self.entries]}

    @classmethod
    def from_json(cls, obj, w: DominantWeight) -> "GTPattern":
        try:
            n = int(obj["n"])
            entries = tuple(parse_rational(x) for x in obj["entries"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed pattern JSON: {obj!r}") from exc
        if n != w.n:
            raise ValueError(f"pattern rank {n} does not match weight rank {w.n}")
        return cls(w.lam, entries)

    @classmethod
    def from_dict(cls, w: DominantWeight, d: Dict[Cell, Fraction]) -> "GTPattern":
        idx = cell_index(w.n)
        e = [Fraction(0)] * (w.n * w.n)
        for c, v in d.items():
            e[idx[c]] = Fraction(v)
        return cls(w.lam, tuple(e))


def _weight_of(R: GTPattern) -> DominantWeight:
    return weight_from_fundamental(R.n, fundamental_from_lambda(R.lam))


def validate_gt(R: GTPattern, w: DominantWeight) -> bool:
    n = w.n
    if R.n != n or tuple(R.lam) != tuple(w.lam):
        return False
    cls = w.lam[0] % 1
    for c, r in R.items():
        i, j = c
        if r < 0 or not is_half_integer(r):
            return False
        if not is_short(n, c) and r % 1 != cls:
            return False
        # no greater than upper-left, no less than upper-right where present
        if r > R[(i, j - 1)]:
            return False
        ur = R.get((i + 1, j))
        if ur is not None and r < ur:
            return False
    return True


def _rows(n: int) -> List[List[Cell]]:
    rows: Dict[int, List[Cell]] = {}
    for c in cells(n):
        rows.setdefault(c[1] - c[0], []).append(c)
    return [rows[k] for k in sorted(rows)]


def _choices(lo: Fraction, hi: Fraction, short: bool, cls: Fraction) -> List[Fraction]:
    lo = max(lo, Fraction(0))
    if short:
        return [Fraction(k, 2) for k in range(ceil(2 * lo), floor(2 * hi) + 1)]
    start = ceil(lo - cls) + cls
    out = []
    x = start
    while x <= hi:
        out.append(x)
        x += 1
    return out


def enumerate_gt(w: DominantWeight) -> List[GTPattern]:
    """All patterns of Gamma_lambda, filled row by row (j - i = 1, 2, ...)."""
    n = w.n
    cls = w.lam[0] % 1
    idx = cell_index(n)
    rows = _rows(n)
    out: List[GTPattern] = []
    vals: List[Fraction] = [Fraction(0)] * (n * n)

    def above(c: Cell, which: str) -> Optional[Fraction]:
        i, j = c
        d = (i, j - 1) if which == "ul" else (i + 1, j)
        if d[0] == d[1]:
            return w.lam[d[0] - 1] if d[0] <= n else None
        return vals[idx[d]] if is_valid_cell(n, d) else None

    def rec(r: int) -> None:
        if r == len(rows):
            out.append(GTPattern(w.lam, tuple(vals)))
            return
        row = rows[r]
        ranges = []
        for c in row:
            hi = above(c, "ul")
            lo = above(c, "ur")
            ranges.append(_choices(lo if lo is not None else Fraction(0), hi, is_short(n, c), cls))
        for combo in product(*ranges):
            for c, v in zip(row, combo):
                vals[idx[c]] = v
            rec(r + 1)

    rec(0)
    return out


def f_map(R: GTPattern) -> Triangle:
    n = R.n
    w = _weight_of(R)
    if not validate_gt(R, w):
        raise ValueError("f_map: pattern violates the Gelfand-Tsetlin conditions")
    out = {}
    for c, r in R.items():
        i, j = c
        ref = R[(i, j - 1)]
        if i > 1:
            ref = min(ref, R[(i - 1, j)])
        v = ref - r
        if is_short(n, c):
            v *= 2
        assert v.denominator == 1 and v >= 0, (c, v)
        out[c] = int(v)
    return Triangle.from_dict(n, out)


def g_map(T: Triangle, w: DominantWeight) -> GTPattern:
    if not in_pi(T, w):
        raise ValueError("g_map: triangle is not in Pi_lambda")
    W = best_partial_sums(T, w)
    return GTPattern(w.lam, tuple(-W[c] for c in cells(w.n)))
