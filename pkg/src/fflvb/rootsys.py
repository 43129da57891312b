"""Root data for B_n = so(2n+1) in the orthonormal beta-basis.

Cells (i, j) with 1 <= i < j <= 2n+1-i index the positive roots. The cell
(i, 2n+1-i) in the rightmost column carries the short root beta_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

Cell = Tuple[int, int]
Vec = Tuple[Fraction, ...]


def bar(n: int, j: int) -> int:
    return 2 * n + 1 - j


def is_valid_cell(n: int, c: Cell) -> bool:
    i, j = c
    return 1 <= i < j <= 2 * n + 1 - i


def is_short(n: int, c: Cell) -> bool:
    return c[0] + c[1] == 2 * n + 1


def ll_key(c: Cell) -> Tuple[int, int]:
    """Sort key of the order << (by i+j, then by i)."""
    return (c[0] + c[1], c[0])


@lru_cache(maxsize=None)
def cells(n: int) -> Tuple[Cell, ...]:
    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")
    out = [(i, j) for i in range(1, n + 1) for j in range(i + 1, 2 * n + 2 - i)]
    out.sort(key=ll_key)
    return tuple(out)


@lru_cache(maxsize=None)
def cell_index(n: int) -> dict:
    return {c: k for k, c in enumerate(cells(n))}


def short_cells(n: int) -> Tuple[Cell, ...]:
    return tuple((i, bar(n, i)) for i in range(1, n + 1))


def simple_cells(n: int) -> Tuple[Cell, ...]:
    # top row: (i, i+1) is alpha_i for i < n, and (n, n+1) is the short alpha_n
    return tuple((i, i + 1) for i in range(1, n + 1))


def _unit(n: int, k: int, s: int = 1) -> List[Fraction]:
    v = [Fraction(0)] * n
    v[k - 1] = Fraction(s)
    return v


def root_of_cell(n: int, c: Cell) -> Vec:
    if not is_valid_cell(n, c):
        raise ValueError(f"invalid cell {c} for n={n}")
    i, j = c
    v = _unit(n, i)
    if i + j == 2 * n + 1:
        pass
    elif j <= n:
        v[j - 1] -= 1
    else:
        v[bar(n, j) - 1] += 1
    return tuple(v)


def positive_roots(n: int) -> List[Vec]:
    return [root_of_cell(n, c) for c in cells(n)]


def cell_of_root(n: int, root: Sequence) -> Cell | None:
    table = _root_table(n)
    return table.get(tuple(Fraction(x) for x in root))


@lru_cache(maxsize=None)
def _root_table(n: int) -> dict:
    return {root_of_cell(n, c): c for c in cells(n)}


def simple_root_coords(n: int, v: Sequence) -> Tuple[Fraction, ...]:
    """Coordinates of a beta-vector in the simple roots alpha_1..alpha_n.

    alpha_i = beta_i - beta_{i+1}, alpha_n = beta_n, so the k-th coordinate is
    the partial sum v_1 + ... + v_k.
    """
    out, s = [], Fraction(0)
    for x in v:
        s += Fraction(x)
        out.append(s)
    return tuple(out)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(Fraction(a) + Fraction(b) for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


@dataclass(frozen=True)
class DominantWeight:
    n: int
    a: Tuple[int, ...]
    lam: Vec

    def __add__(self, other: "DominantWeight") -> "DominantWeight":
        if other.n != self.n:
            raise ValueError("rank mismatch")
        return weight_from_fundamental(self.n, [x + y for x, y in zip(self.a, other.a)])

    def __sub__(self, other: "DominantWeight") -> "DominantWeight":
        if other.n != self.n:
            raise ValueError("rank mismatch")
        return weight_from_fundamental(self.n, [x - y for x, y in zip(self.a, other.a)])

    @property
    def is_zero(self) -> bool:
        return not any(self.a)

    def __str__(self) -> str:
        parts = []
        for i, x in enumerate(self.a, 1):
            if x:
                parts.append(f"{x if x > 1 else ''}w{i}")
        return "+".join(parts) or "0"


def weight_from_fundamental(n: int, a: Sequence[int]) -> DominantWeight:
    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")
    a = tuple(int(x) for x in a)
    if len(a) != n:
        raise ValueError(f"expected {n} fundamental coordinates, got {len(a)}")
    if any(x < 0 for x in a):
        raise ValueError(f"fundamental coordinates must be nonnegative: {a}")
    lam = tuple(sum(a[i:n - 1], 0) + Fraction(a[n - 1], 2) for i in range(n))
    return DominantWeight(n, a, lam)


def fundamental(n: int, i: int, mult: int = 1) -> DominantWeight:
    a = [0] * n
    a[i - 1] = mult
    return weight_from_fundamental(n, a)


def fundamental_from_lambda(lam: Sequence) -> Tuple[int, ...]:
    lam = [Fraction(x) for x in lam]
    n = len(lam)
    a = [lam[i] - lam[i + 1] for i in range(n - 1)] + [2 * lam[-1]]
    if any(x.denominator != 1 or x < 0 for x in a):
        raise ValueError(f"not a dominant integral weight: {lam}")
    return tuple(int(x) for x in a)


def rho(n: int) -> Vec:
    return tuple(Fraction(2 * (n - k) + 1, 2) for k in range(1, n + 1))


def weyl_dim(w: DominantWeight) -> int:
    r = rho(w.n)
    lr = vadd(w.lam, r)
    num, den = Fraction(1), Fraction(1)
    for alpha in positive_roots(w.n):
        num *= dot(lr, alpha)
        den *= dot(r, alpha)
    q = num / den
    assert q.denominator == 1 and q > 0, q
    return int(q)
