"""Number triangles, Dyck paths and the lattice-point set Pi_lambda.

A triangle stores one entry per cell, in << order. Membership uses a
dynamic program over the grid instead of enumerating paths: the number of
Dyck paths grows exponentially in n, the DP is quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .kernel import HALF, ONE, fmt_rational
from .rootsys import (
    Cell,
    DominantWeight,
    cell_index,
    cells,
    is_short,
    is_valid_cell,
    root_of_cell,
)


@dataclass(frozen=True)
class Triangle:
    n: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise ValueError(f"triangle for n={self.n} needs {self.n ** 2} entries")
        if any(x < 0 for x in self.entries):
            raise ValueError("triangle entries must be nonnegative")

    @classmethod
    def zero(cls, n: int) -> "Triangle":
        return cls(n, (0,) * (n * n))

    @classmethod
    def from_dict(cls, n: int, d: Mapping[Cell, int]) -> "Triangle":
        idx = cell_index(n)
        e = [0] * (n * n)
        for c, v in d.items():
            if c not in idx:
                raise ValueError(f"invalid cell {c} for n={n}")
            e[idx[c]] = int(v)
        return cls(n, tuple(e))

    def __getitem__(self, c: Cell) -> int:
        return self.entries[cell_index(self.n)[c]]

    def items(self) -> Iterator[Tuple[Cell, int]]:
        return zip(cells(self.n), self.entries)

    def support(self) -> Dict[Cell, int]:
        return {c: v for c, v in self.items() if v}

    def __add__(self, other: "Triangle") -> "Triangle":
        _same(self, other)
        return Triangle(self.n, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Triangle") -> "Triangle":
        _same(self, other)
        return Triangle(self.n, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def leq(self, other: "Triangle") -> bool:
        _same(self, other)
        return all(x <= y for x, y in zip(self.entries, other.entries))

    @property
    def degree(self) -> int:
        return sum(self.entries)

    def to_json(self) -> dict:
        return {"n": self.n, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, obj) -> "Triangle":
        try:
            n = int(obj["n"])
            entries = tuple(int(x) for x in obj["entries"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed triangle JSON: {obj!r}") from exc
        if any(isinstance(x, bool) for x in obj["entries"]):
            raise ValueError("triangle entries must be integers")
        return cls(n, entries)

    def __str__(self) -> str:
        sup = self.support()
        if not sup:
            return "0"
        return " ".join(f"t{i}{j}={v}" for (i, j), v in sup.items())


def _same(a: Triangle, b: Triangle) -> None:
    if a.n != b.n:
        raise ValueError(f"rank mismatch: {a.n} vs {b.n}")


def weight_coeff(n: int, c: Cell) -> Fraction:
    return HALF if is_short(n, c) else ONE


def grad_of(T: Triangle) -> Fraction:
    return sum((weight_coeff(T.n, c) * v for c, v in T.items()), Fraction(0))


def root_sum(T: Triangle) -> Tuple[Fraction, ...]:
    tot = [Fraction(0)] * T.n
    for c, v in T.items():
        if v:
            for k, x in enumerate(root_of_cell(T.n, c)):
                tot[k] += v * x
    return tuple(tot)


# -- Dyck paths -----------------------------------------------------------------

Path = Tuple[Cell, ...]


def successors(n: int, c: Cell) -> List[Cell]:
    i, j = c
    return [d for d in ((i + 1, j), (i, j + 1)) if is_valid_cell(n, d)]


def predecessors(n: int, c: Cell) -> List[Cell]:
    i, j = c
    return [d for d in ((i - 1, j), (i, j - 1)) if is_valid_cell(n, d)]


def is_endpoint(n: int, c: Cell) -> bool:
    return c[1] - c[0] == 1 or is_short(n, c)


def is_partial_path(n: int, d: Sequence[Cell]) -> bool:
    if not d or any(not is_valid_cell(n, c) for c in d):
        return False
    if d[0][1] - d[0][0] != 1:
        return False
    return all(b in successors(n, a) for a, b in zip(d, d[1:]))


def is_dyck_path(n: int, d: Sequence[Cell]) -> bool:
    return is_partial_path(n, d) and is_endpoint(n, d[-1])


@lru_cache(maxsize=None)
def partial_paths(n: int) -> Tuple[Path, ...]:
    out: List[Path] = []

    def walk(path: List[Cell]) -> None:
        out.append(tuple(path))
        for nxt in successors(n, path[-1]):
            path.append(nxt)
            walk(path)
            path.pop()

    for i in range(1, n + 1):
        walk([(i, i + 1)])
    return tuple(out)


@lru_cache(maxsize=None)
def dyck_paths(n: int) -> Tuple[Path, ...]:
    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")
    return tuple(d for d in partial_paths(n) if is_endpoint(n, d[-1]))


def s_sum(T: Triangle, d: Sequence[Cell]) -> Fraction:
    n = T.n
    if not is_partial_path(n, d):
        raise ValueError(f"not a (partial) Dyck path for n={n}: {d}")
    return sum((weight_coeff(n, c) * T[c] for c in d), Fraction(0))


def m_bound(w: DominantWeight, d: Sequence[Cell]) -> Fraction:
    n = w.n
    if not is_dyck_path(n, d):
        raise ValueError(f"not a Dyck path for n={n}: {d}")
    i1 = d[0][0]
    iN, jN = d[-1]
    if iN + jN < 2 * n + 1:
        return w.lam[i1 - 1] - w.lam[jN - 1]
    return w.lam[i1 - 1]


# -- membership ------------------------------------------------------------------

def best_partial_sums(T: Triangle, w: DominantWeight) -> Dict[Cell, Fraction]:
    """max over partial paths d ending at each cell of S(T, d) - lambda_{i_1}.

    Cells are processed in << order, which lists both predecessors of a cell
    before the cell itself.
    """
    n = T.n
    if w.n != n:
        raise ValueError(f"rank mismatch: {n} vs {w.n}")
    W: Dict[Cell, Fraction] = {}
    for c, t in T.items():
        i, j = c
        cands = [W[p] for p in predecessors(n, c)]
        if j == i + 1:
            cands.append(-w.lam[i - 1])
        W[c] = max(cands) + weight_coeff(n, c) * t
    return W


def in_pi(T: Triangle, w: DominantWeight) -> bool:
    n = T.n
    W = best_partial_sums(T, w)
    for i in range(1, n):
        if W[(i, i + 1)] + w.lam[i] > 0:
            return False
    return all(W[c] <= 0 for c in cells(n) if is_short(n, c))


def _cell_caps(w: DominantWeight) -> Dict[Cell, Fraction]:
    # tightest end-test reachable from a cell: -lambda_j for j <= n, else 0
    n = w.n
    return {c: (-w.lam[c[1] - 1] if c[1] <= n else Fraction(0)) for c in cells(n)}


def iter_pi(w: DominantWeight) -> Iterator[Triangle]:
    """Depth-first walk over Pi_lambda in lexicographic << order.

    The bound on each entry is exact: every partial assignment meeting it
    extends by zeros to a member, so the search never backtracks empty.
    """
    n = w.n
    order = cells(n)
    caps = _cell_caps(w)
    preds = [predecessors(n, c) for c in order]
    coeff = [weight_coeff(n, c) for c in order]
    idx = cell_index(n)
    vals = [0] * len(order)
    W: List[Fraction] = [Fraction(0)] * len(order)

    def rec(k: int) -> Iterator[Triangle]:
        if k == len(order):
            yield Triangle(n, tuple(vals))
            return
        i, j = order[k]
        cands = [W[idx[p]] for p in preds[k]]
        if j == i + 1:
            cands.append(-w.lam[i - 1])
        base = max(cands)
        room = caps[order[k]] - base
        if room < 0:
            return
        top = floor(room / coeff[k])
        for v in range(top + 1):
            vals[k] = v
            W[k] = base + coeff[k] * v
            yield from rec(k + 1)
        vals[k] = 0

    yield from rec(0)


def enumerate_pi(w: DominantWeight) -> List[Triangle]:
    return list(iter_pi(w))


# -- H-representation ----------------------------------------------------------------

@dataclass(frozen=True)
class HRep:
    vars: Tuple[Cell, ...]
    rows: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...]

    def satisfied_by(self, T: Triangle) -> bool:
        x = T.entries
        return all(sum(a * v for a, v in zip(coeffs, x)) <= rhs for coeffs, rhs in self.rows)

    def to_json(self) -> dict:
        return {
            "vars": [list(c) for c in self.vars],
            "rows": [
                {"coeffs": [fmt_rational(a) for a in coeffs], "rhs": fmt_rational(rhs)}
                for coeffs, rhs in self.rows
            ],
        }


def polytope_h_rep(w: DominantWeight) -> HRep:
    n = w.n
    order = cells(n)
    idx = cell_index(n)
    rows = []
    for d in dyck_paths(n):
        coeffs = [Fraction(0)] * len(order)
        for c in d:
            coeffs[idx[c]] = weight_coeff(n, c)
        rows.append((tuple(coeffs), m_bound(w, d)))
    for k in range(len(order)):
        coeffs = [Fraction(0)] * len(order)
        coeffs[k] = Fraction(-1)
        rows.append((tuple(coeffs), Fraction(0)))
    return HRep(order, tuple(rows))
