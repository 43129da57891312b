"""Explicit finite-dimensional so(2n+1)-modules with exact sparse matrices.

A matrix is a column map ``{source_index: SparseVec}``; basis vectors are
integer indices into ``RepModule.labels``. Lowering operators are stored for
every cell, raising operators only for the simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .kernel import SpanBasis, SparseVec, _iadd, fmt_rational, vec_axpy, vec_sub
from .rootsys import (
    Cell,
    DominantWeight,
    Vec,
    bar,
    cells,
    is_short,
    root_of_cell,
    simple_cells,
    vadd,
    vsub,
    weyl_dim,
)

Matrix = Dict[int, SparseVec]


class RepresentationError(RuntimeError):
    pass


# -- matrix helpers ---------------------------------------------------------------

def mat_apply(m: Matrix, v: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for k, c in v.items():
        col = m.get(k)
        if col:
            _iadd(out, c, col)
    return out


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    out = {}
    for k, col in b.items():
        img = mat_apply(a, col)
        if img:
            out[k] = img
    return out


def mat_add(a: Matrix, b: Matrix, scale=1) -> Matrix:
    out = dict(a)
    for k, col in b.items():
        s = vec_axpy(out.get(k, {}), scale, col)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def mat_scale(s, a: Matrix) -> Matrix:
    if s == 0:
        return {}
    return {k: {r: s * c for r, c in col.items()} for k, col in a.items()}


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def mat_clean(a: Matrix) -> Matrix:
    return {k: col for k, col in a.items() if col}


# -- the module type --------------------------------------------------------------

@dataclass
class RepModule:
    n: int
    labels: List[str]
    weights: List[Vec]
    lower: Dict[Cell, Matrix]
    raising: Dict[int, Matrix]
    highest: int
    name: str = ""
    # factor dimensions for tensor products, used to print labels
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, k: int) -> SparseVec:
        return {k: Fraction(1)}

    @property
    def v0(self) -> SparseVec:
        return {self.highest: Fraction(1)}

    def act(self, c: Cell, v: SparseVec) -> SparseVec:
        return mat_apply(self.lower[c], v)

    def vec_to_json(self, v: SparseVec) -> dict:
        return {
            "coords": [
                {"label": self.labels[k], "coeff": fmt_rational(v[k])} for k in sorted(v)
            ]
        }


def apply_word(m: RepModule, word, v: SparseVec) -> SparseVec:
    """Apply a word in the f's; the rightmost factor acts first."""
    factors = getattr(word, "factors", word)
    out = dict(v)
    for c in reversed(factors):
        if not out:
            break
        out = mat_apply(m.lower[c], out)
    return out


# -- vector representation ---------------------------------------------------------

def _vec_index(n: int, k: int) -> int:
    return k + n


@lru_cache(maxsize=None)
def vector_rep(n: int) -> RepModule:
    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")
    E = lambda k: _vec_index(n, k)  # noqa: E731
    lower: Dict[Cell, Matrix] = {}
    for c in cells(n):
        i, j = c
        m: Matrix = {}
        if is_short(n, c):
            m[E(i)] = {E(0): Fraction(1)}
            m[E(0)] = {E(-i): Fraction(-2)}
        elif j <= n:
            m[E(i)] = {E(j): Fraction(1)}
            m[E(-j)] = {E(-i): Fraction(-1)}
        else:
            jj = bar(n, j)
            m[E(i)] = {E(-jj): Fraction(1)}
            m[E(jj)] = {E(-i): Fraction(-1)}
        lower[c] = m
    raising: Dict[int, Matrix] = {}
    for i in range(1, n):
        raising[i] = {E(i + 1): {E(i): Fraction(1)}, E(-i): {E(-i - 1): Fraction(-1)}}
    raising[n] = {E(0): {E(n): Fraction(2)}, E(-n): {E(0): Fraction(-1)}}
    weights = []
    for k in range(-n, n + 1):
        w = [Fraction(0)] * n
        if k:
            w[abs(k) - 1] = Fraction(1 if k > 0 else -1)
        weights.append(tuple(w))
    labels = [f"e({k})" for k in range(-n, n + 1)]
    return RepModule(n, labels, weights, lower, raising, E(1), name="V", meta={"kind": "vector"})


# -- exterior powers -----------------------------------------------------------------

def _sort_sign(seq: List[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the permutation sorting seq, or 0 if seq has repeats."""
    if len(set(seq)) != len(seq):
        return 0, ()
    s = list(seq)
    sign = 1
    for a in range(len(s)):
        for b in range(len(s) - 1 - a):
            if s[b] > s[b + 1]:
                s[b], s[b + 1] = s[b + 1], s[b]
                sign = -sign
    return sign, tuple(s)


def _wedge_operator(m: Matrix, subsets: List[Tuple[int, ...]], index: Dict[Tuple[int, ...], int]) -> Matrix:
    out: Matrix = {}
    for k, S in enumerate(subsets):
        col: SparseVec = {}
        for pos, x in enumerate(S):
            img = m.get(x)
            if not img:
                continue
            for y, c in img.items():
                seq = list(S)
                seq[pos] = y
                sign, key = _sort_sign(seq)
                if sign:
                    _iadd(col, sign * c, {index[key]: Fraction(1)})
        if col:
            out[k] = col
    return out


def exterior_power(m: RepModule, l: int, highest: Optional[Sequence[int]] = None) -> RepModule:
    if not 1 <= l <= m.dim:
        raise ValueError(f"exterior degree {l} out of range for dim {m.dim}")
    subsets = list(combinations(range(m.dim), l))
    index = {S: k for k, S in enumerate(subsets)}
    lower = {c: _wedge_operator(mat, subsets, index) for c, mat in m.lower.items()}
    raising = {i: _wedge_operator(mat, subsets, index) for i, mat in m.raising.items()}
    weights = []
    for S in subsets:
        w = tuple(Fraction(0) for _ in range(m.n))
        for x in S:
            w = vadd(w, m.weights[x])
        weights.append(w)
    if highest is None:
        # greedy: the l basis vectors with lexicographically largest weights
        order = sorted(range(m.dim), key=lambda k: m.weights[k], reverse=True)
        highest = order[:l]
    hkey = tuple(sorted(highest))
    labels = ["^".join(m.labels[x] for x in S) for S in subsets]
    return RepModule(
        m.n, labels, weights, lower, raising, index[hkey],
        name=f"wedge{l}({m.name})", meta={"kind": "wedge", "l": l},
    )


@lru_cache(maxsize=None)
def wedge_vector(n: int, l: int) -> RepModule:
    """The fundamental module for l < n, or L_{2 omega_n} for l = n."""
    V = vector_rep(n)
    if l == 1:
        return V
    return exterior_power(V, l, highest=[_vec_index(n, k) for k in range(1, l + 1)])


def wedge_coords(m: RepModule, ks: Sequence[int]) -> SparseVec:
    """Coordinates of e_{k1} ^ ... ^ e_{kl} in an exterior power of the vector rep."""
    seq = [_vec_index(m.n, k) for k in ks]
    sign, key = _sort_sign(seq)
    if not sign:
        return {}
    label = "^".join(f"e({k - m.n})" for k in key)
    return {m.labels.index(label): Fraction(sign)}


# -- spin representation ----------------------------------------------------------------

def _spin_ops(n: int):
    states = list(product((0, 1), repeat=n))
    index = {s: k for k, s in enumerate(states)}

    def create(j: int) -> Matrix:
        # a_j^dagger: set I_j 0 -> 1 with sign prod_{k<j} (-1)^{I_k}
        m: Matrix = {}
        for s in states:
            if s[j - 1] == 0:
                t = list(s)
                t[j - 1] = 1
                sign = (-1) ** sum(s[: j - 1])
                m[index[s]] = {index[tuple(t)]: Fraction(sign)}
        return m

    def annihilate(j: int) -> Matrix:
        m: Matrix = {}
        for s in states:
            if s[j - 1] == 1:
                t = list(s)
                t[j - 1] = 0
                sign = (-1) ** sum(s[: j - 1])
                m[index[s]] = {index[tuple(t)]: Fraction(sign)}
        return m

    return states, create, annihilate


@lru_cache(maxsize=None)
def spin_rep(n: int) -> RepModule:
    from .pbw import structure_constants

    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")
    states, create, annihilate = _spin_ops(n)
    simple_lower: Dict[Cell, Matrix] = {}
    raising: Dict[int, Matrix] = {}
    for i in range(1, n):
        simple_lower[(i, i + 1)] = mat_clean(mat_mul(create(i), annihilate(i + 1)))
        raising[i] = mat_clean(mat_mul(create(i + 1), annihilate(i)))
    simple_lower[(n, n + 1)] = create(n)
    raising[n] = annihilate(n)

    lower = generate_lowering(n, simple_lower)
    weights = [tuple(Fraction((-1) ** b, 2) for b in s) for s in states]
    labels = ["I(" + ",".join(str(b) for b in s) + ")" for s in states]
    m = RepModule(n, labels, weights, lower, raising, 0, name="S", meta={"kind": "spin"})
    problems = module_problems(m, structure_constants(n))
    if problems:
        raise RepresentationError("spin module failed validation: " + "; ".join(problems[:5]))
    return m


def generate_lowering(n: int, simple: Dict[Cell, Matrix]) -> Dict[Cell, Matrix]:
    """Extend simple lowering matrices to every f_c through the bracket table."""
    from .pbw import structure_constants

    sc = structure_constants(n)
    built = dict(simple)
    simples = list(simple_cells(n))
    while len(built) < n * n:
        progress = False
        for c in cells(n):
            if c in built:
                continue
            for a in list(built):
                for s in simples:
                    br = sc.bracket(a, s)
                    if len(br) == 1 and c in br:
                        built[c] = mat_scale(1 / br[c], commutator(built[a], built[s]))
                        break
                if c in built:
                    progress = True
                    break
        if not progress:
            raise RepresentationError("could not generate all root vectors from simple ones")
    return {c: mat_clean(built[c]) for c in cells(n)}


# -- tensor products ------------------------------------------------------------------

def tensor(ms: Sequence[RepModule]) -> RepModule:
    ms = list(ms)
    if not ms:
        raise ValueError("tensor of no modules")
    if len(ms) == 1:
        return ms[0]
    n = ms[0].n
    if any(m.n != n for m in ms):
        raise ValueError("tensor factors must have equal rank")
    dims = [m.dim for m in ms]
    strides = []
    s = 1
    for d in reversed(dims):
        strides.append(s)
        s *= d
    strides.reverse()
    tuples = list(product(*[range(d) for d in dims]))

    def flat(t) -> int:
        return sum(a * b for a, b in zip(t, strides))

    def lift(mats: List[Optional[Matrix]]) -> Matrix:
        out: Matrix = {}
        for k, t in enumerate(tuples):
            col: SparseVec = {}
            for pos, mat in enumerate(mats):
                if not mat:
                    continue
                img = mat.get(t[pos])
                if not img:
                    continue
                for y, c in img.items():
                    k2 = k + (y - t[pos]) * strides[pos]
                    col[k2] = col.get(k2, Fraction(0)) + c
            col = {a: b for a, b in col.items() if b}
            if col:
                out[k] = col
        return out

    lower = {c: lift([m.lower[c] for m in ms]) for c in cells(n)}
    raising = {i: lift([m.raising.get(i) for m in ms]) for i in range(1, n + 1)}
    weights = []
    for t in tuples:
        w = tuple(Fraction(0) for _ in range(n))
        for pos, x in enumerate(t):
            w = vadd(w, ms[pos].weights[x])
        weights.append(w)
    labels = ["⊗".join(ms[pos].labels[x] for pos, x in enumerate(t)) for t in tuples]
    highest = flat(tuple(m.highest for m in ms))
    return RepModule(
        n, labels, weights, lower, raising, highest,
        name="⊗".join(m.name for m in ms), meta={"kind": "tensor", "dims": dims},
    )


def trivial_module(n: int) -> RepModule:
    return RepModule(
        n, ["1"], [tuple(Fraction(0) for _ in range(n))],
        {c: {} for c in cells(n)}, {i: {} for i in range(1, n + 1)}, 0,
        name="C", meta={"kind": "trivial"},
    )


# -- validation --------------------------------------------------------------------------

def module_problems(m: RepModule, sc, check_brackets: bool = True) -> List[str]:
    """Everything wrong with a module; an empty list means it passed."""
    n = m.n
    out = []
    for c in cells(n):
        r = root_of_cell(n, c)
        for k, col in m.lower[c].items():
            target = vsub(m.weights[k], r)
            for y in col:
                if m.weights[y] != target:
                    out.append(f"f{c} does not lower weight of {m.labels[k]} by {r}")
    for i, e in m.raising.items():
        if mat_apply(e, m.v0):
            out.append(f"raising operator {i} does not kill the highest vector")
    if check_brackets:
        for a in cells(n):
            for b in cells(n):
                if b <= a:
                    continue
                lhs = commutator(m.lower[a], m.lower[b])
                rhs: Matrix = {}
                for c, k in sc.bracket(a, b).items():
                    rhs = mat_add(rhs, m.lower[c], k)
                if mat_clean(mat_add(lhs, rhs, -1)):
                    out.append(f"[f{a}, f{b}] disagrees with the structure constants")
    return out


# -- irreducible modules -------------------------------------------------------------------

@dataclass
class IrreducibleModule:
    weight: DominantWeight
    ambient: RepModule
    highest: SparseVec
    basis: List[SparseVec]
    weights: List[Vec]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight_set(self) -> set:
        return set(self.weights)


def factor_modules(w: DominantWeight) -> List[RepModule]:
    """Tensor factors whose product contains L_lambda via its highest vector.

    Pairs of spin factors are replaced by wedge^n V = L_{2 omega_n}, which is
    smaller than spin (x) spin.
    """
    n = w.n
    out: List[RepModule] = []
    for i in range(1, n):
        out.extend([wedge_vector(n, i)] * w.a[i - 1])
    an = w.a[n - 1]
    out.extend([wedge_vector(n, n)] * (an // 2))
    if an % 2:
        out.append(spin_rep(n))
    return out


def cyclic_closure(m: RepModule, v0: SparseVec) -> Tuple[List[SparseVec], List[Vec]]:
    """Basis of U(n^-) v0 by closing under the simple lowering operators."""
    span = SpanBasis()
    span.insert(v0)
    basis = [v0]
    queue = [v0]
    simples = simple_cells(m.n)
    while queue:
        v = queue.pop(0)
        for c in simples:
            u = mat_apply(m.lower[c], v)
            if u and span.insert(u)[0]:
                basis.append(u)
                queue.append(u)
    wts = [m.weights[next(iter(v))] for v in basis]
    return basis, wts


@lru_cache(maxsize=None)
def irreducible_module(w: DominantWeight) -> IrreducibleModule:
    factors = factor_modules(w)
    ambient = tensor(factors) if factors else trivial_module(w.n)
    v0 = ambient.v0
    basis, wts = cyclic_closure(ambient, v0)
    expected = weyl_dim(w)
    if len(basis) != expected:
        raise RepresentationError(
            f"cyclic submodule for {w} has dimension {len(basis)}, Weyl formula gives {expected}"
        )
    for i, e in ambient.raising.items():
        if mat_apply(e, v0):
            raise RepresentationError(f"raising operator {i} does not kill v0 for {w}")
    return IrreducibleModule(w, ambient, v0, basis, wts)
