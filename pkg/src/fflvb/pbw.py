"""Words in the root vectors f_{i,j}, the orders << and prec, and PBW rewriting.

Root vectors are normalized by the explicit action on the vector
representation; every bracket is read off from matrix commutators there.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .kernel import fmt_rational, solve_in_span
from .patterns import Triangle, grad_of
from .rootsys import Cell, cell_index, cells, is_short, is_valid_cell, ll_key, root_of_cell, vadd, cell_of_root

LinComb = Dict[Triangle, Fraction]


# -- words ------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    n: int
    factors: Tuple[Cell, ...]

    def __post_init__(self):
        for c in self.factors:
            if not is_valid_cell(self.n, c):
                raise ValueError(f"invalid cell {c} for n={self.n}")

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return " ".join(f"{i},{j}" for i, j in self.factors)

    @classmethod
    def parse(cls, n: int, text: str) -> "Word":
        factors = []
        for tok in text.split():
            try:
                i, j = (int(x) for x in tok.split(","))
            except ValueError as exc:
                raise ValueError(f"bad word token {tok!r}; expected 'i,j'") from exc
            factors.append((i, j))
        return cls(n, tuple(factors))

    @property
    def log(self) -> Triangle:
        counts: Dict[Cell, int] = {}
        for c in self.factors:
            counts[c] = counts.get(c, 0) + 1
        return Triangle.from_dict(self.n, counts)

    @property
    def grad(self) -> Fraction:
        return grad_of(self.log)


def ll_less(c1: Cell, c2: Cell) -> bool:
    return ll_key(c1) < ll_key(c2)


def is_arranged(wd: Word) -> bool:
    last = 0
    for c in wd.factors:
        if is_short(wd.n, c):
            if c[0] < last:
                return False
            last = c[0]
    return True


def is_ordered(wd: Word) -> bool:
    return all(not ll_less(b, a) for a, b in zip(wd.factors, wd.factors[1:]))


def exp_word(T: Triangle) -> Word:
    """The ordered word with exponent triangle T."""
    out: List[Cell] = []
    for c, v in T.items():
        out.extend([c] * v)
    return Word(T.n, tuple(out))


def ord_word(wd: Word) -> Triangle:
    """Exponents of ord(wd); ``exp_word`` of the result is the sorted word."""
    return wd.log


def prec_key(T: Triangle):
    return (grad_of(T), T.entries)


def prec(M: Triangle, N: Triangle) -> int:
    """-1 if M prec N, 0 if equal, 1 if N prec M."""
    if M.n != N.n:
        raise ValueError("rank mismatch")
    a, b = prec_key(M), prec_key(N)
    return (a > b) - (a < b)


def random_arranged_word(T: Triangle, rng: random.Random) -> Word:
    """Uniform shuffle of the factors, then short factors re-sorted by row in place."""
    factors = list(exp_word(T).factors)
    rng.shuffle(factors)
    slots = [k for k, c in enumerate(factors) if is_short(T.n, c)]
    shorts = sorted(factors[k] for k in slots)
    for k, c in zip(slots, shorts):
        factors[k] = c
    return Word(T.n, tuple(factors))


# -- structure constants -----------------------------------------------------------

class StructureConstants:
    """Bracket table on the negative root vectors: [f_a, f_b] = sum k_c f_c."""

    def __init__(self, n: int, table: Dict[Tuple[Cell, Cell], Dict[Cell, Fraction]]):
        self.n = n
        self._table = table

    def bracket(self, a: Cell, b: Cell) -> Dict[Cell, Fraction]:
        return self._table.get((a, b), {})

    def items(self):
        return self._table.items()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "brackets": [
                {"a": list(a), "b": list(b), "value": {f"{c[0]},{c[1]}": fmt_rational(k) for c, k in v.items()}}
                for (a, b), v in sorted(self._table.items())
                if v
            ],
        }


def _flatten(m) -> Dict[Tuple[int, int], Fraction]:
    return {(k, r): c for k, col in m.items() for r, c in col.items()}


@lru_cache(maxsize=None)
def structure_constants(n: int) -> StructureConstants:
    from .repbuild import RepresentationError, commutator, vector_rep

    V = vector_rep(n)
    cs = cells(n)
    flats = [_flatten(V.lower[c]) for c in cs]
    table: Dict[Tuple[Cell, Cell], Dict[Cell, Fraction]] = {}
    for a in cs:
        for b in cs:
            com = _flatten(commutator(V.lower[a], V.lower[b]))
            coeffs = solve_in_span(flats, com)
            if coeffs is None:
                raise RepresentationError(f"[f{a}, f{b}] is not in the span of the root vectors")
            val = {c: k for c, k in zip(cs, coeffs) if k}
            target = cell_of_root(n, vadd(root_of_cell(n, a), root_of_cell(n, b)))
            if val and (len(val) != 1 or target not in val):
                raise RepresentationError(f"[f{a}, f{b}] has the wrong root: {val}")
            table[(a, b)] = val
    return StructureConstants(n, table)


# -- PBW normal form -------------------------------------------------------------------

def lincomb_add(acc: LinComb, other: Mapping[Triangle, Fraction], scale=1) -> None:
    for k, c in other.items():
        s = acc.get(k, Fraction(0)) + scale * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class PBWRewriter:
    """Rewrites words into ordered monomials by adjacent swaps.

    The leftmost out-of-order pair X a b Y is replaced by X b a Y + X [a, b] Y.
    Each swap removes an inversion and each bracket shortens the word, so the
    recursion terminates. Results are cached per word.
    """

    def __init__(self, n: int):
        self.n = n
        self.sc = structure_constants(n)
        self._key = {c: ll_key(c) for c in cells(n)}
        self._cache: Dict[Tuple[Cell, ...], LinComb] = {}
        self._lock = threading.Lock()

    def normalize(self, wd) -> LinComb:
        factors = tuple(getattr(wd, "factors", wd))
        return dict(self._normalize(factors))

    def _normalize(self, f: Tuple[Cell, ...]) -> LinComb:
        with self._lock:
            hit = self._cache.get(f)
        if hit is not None:
            return hit
        key = self._key
        pos = next((p for p in range(len(f) - 1) if key[f[p + 1]] < key[f[p]]), None)
        if pos is None:
            out: LinComb = {Word(self.n, f).log: Fraction(1)}
        else:
            a, b = f[pos], f[pos + 1]
            out = dict(self._normalize(f[:pos] + (b, a) + f[pos + 2:]))
            for c, k in self.sc.bracket(a, b).items():
                lincomb_add(out, self._normalize(f[:pos] + (c,) + f[pos + 2:]), k)
        with self._lock:
            self._cache[f] = out
        return out


@lru_cache(maxsize=None)
def rewriter(n: int) -> PBWRewriter:
    return PBWRewriter(n)


def pbw_normalize(wd: Word) -> LinComb:
    return rewriter(wd.n).normalize(wd)


def lincomb_to_json(lc: Mapping[Triangle, Fraction]) -> dict:
    terms = sorted(lc.items(), key=lambda kv: prec_key(kv[0]), reverse=True)
    return {"terms": [{"exponents": T.to_json(), "coeff": fmt_rational(c)} for T, c in terms]}
