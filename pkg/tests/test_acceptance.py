"""Acceptance gate. Each test prints one PASS/FAIL line for its criterion.

Run standalone with ``python tests/test_acceptance.py`` or through pytest;
the lines are collected into the terminal summary. A criterion whose test
crashed before reporting is listed as FAIL.
"""

import logging
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from fflvb.gtbij import enumerate_gt, f_map, g_map
from fflvb.kernel import vec_axpy, vec_sub
from fflvb.patterns import Triangle, enumerate_pi, in_pi
from fflvb.pbw import Word, exp_word, is_arranged, pbw_normalize, random_arranged_word, structure_constants
from fflvb.patterns import grad_of
from fflvb.repbuild import (
    apply_word,
    commutator,
    irreducible_module,
    mat_mul,
    mat_scale,
    module_problems,
    spin_rep,
    tensor,
    vector_rep,
    wedge_coords,
    wedge_vector,
)
from fflvb.rootsys import bar, cells, fundamental, weight_from_fundamental, weyl_dim
from fflvb.verify import (
    BasisPolicy,
    degeneration_basis_check,
    graded_dims,
    minkowski_certificate,
    minkowski_decompose,
    straighten,
    straighten_coefficients,
    straighten_sweep,
    verify_basis,
)

CRITERIA = range(1, 11)
LINES = {}


def report(k, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}" + (f": {detail}" if detail else "")
    LINES[k] = line
    print(line)
    assert ok, line


def criterion1_weights():
    out = []
    for n in (2, 3):
        for a in product(range(3), repeat=n):
            if sum(a) <= 2:
                out.append(weight_from_fundamental(n, a))
    out.append(weight_from_fundamental(2, (2, 2)))
    return out


# -- 1 -----------------------------------------------------------------------------

def test_criterion_1_counting():
    t0 = time.perf_counter()
    bad = []
    for w in criterion1_weights():
        d = weyl_dim(w)
        p, g = len(enumerate_pi(w)), len(enumerate_gt(w))
        if not p == g == d:
            bad.append((str(w), p, g, d))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 60, f"{len(criterion1_weights())} weights, {dt:.1f}s, mismatches={bad}")


# -- 2 -----------------------------------------------------------------------------

def test_criterion_2_bijection():
    bad = 0
    total = 0
    for w in criterion1_weights():
        for T in enumerate_pi(w):
            total += 1
            bad += f_map(g_map(T, w)) != T
        for R in enumerate_gt(w):
            total += 1
            bad += g_map(f_map(R), w) != R
    report(2, bad == 0, f"{total} round trips, {bad} exceptions")


# -- 3 -----------------------------------------------------------------------------

def _crossing_params(n, l):
    return [
        (i1, j1, i2, j2)
        for i1 in range(1, l + 1)
        for i2 in range(i1 + 1, l + 1)
        for j1 in range(l + 1, n + 1)
        for j2 in range(2 * n + 1 - l, 2 * n + 1)
        if i2 + j2 < 2 * n + 1
    ]


def _crossing_failures(n, l):
    m = wedge_vector(n, l)
    v0 = m.v0
    bad = []
    for i1, j1, i2, j2 in _crossing_params(n, l):
        lhs = apply_word(m, [(i1, j1), (i2, j2)], v0)
        r1 = apply_word(m, [(i1, bar(n, i2)), (bar(n, j2), j1)], v0)
        r2 = apply_word(m, [(i1, j2), (i2, j1)], v0)
        r3 = apply_word(m, [(bar(n, j2), j1), (i1, bar(n, i1)), (i2, bar(n, i2))], v0)
        if lhs != vec_sub(vec_sub(r1, r2), r3):
            bad.append((n, l, i1, j1, i2, j2))
    return bad


def test_criterion_3_representations():
    problems = []
    for n in (2, 3):
        sc = structure_constants(n)
        mods = [vector_rep(n), spin_rep(n)] + [wedge_vector(n, l) for l in range(2, n + 1)]
        for m in mods:
            problems += [f"{m.name}: {p}" for p in module_problems(m, sc)]
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    lhs = commutator(m.lower[(i, bar(n, i))], m.lower[(j, bar(n, j))])
                    if lhs != mat_scale(2, m.lower[(i, bar(n, j))]):
                        problems.append(f"{m.name}: short relation at {i},{j}")
        for m in [wedge_vector(n, l) for l in range(1, n + 1)] + [spin_rep(n)]:
            for i in range(1, n + 1):
                f = m.lower[(i, bar(n, i))]
                if any(mat_mul(f, mat_mul(f, f)).values()):
                    problems.append(f"{m.name}: cube of f{i},{bar(n, i)} nonzero")
    small = sum(len(_crossing_params(n, l)) for n in (2, 3) for l in range(1, n + 1))
    # no admissible samples exist at n <= 3, so the identity is also run at n = 4, 5
    big = [(n, l) for n in (4, 5) for l in range(1, n + 1)]
    samples = sum(len(_crossing_params(n, l)) for n, l in big)
    fails = [f for n, l in big for f in _crossing_failures(n, l)]
    problems += [f"crossing-pair identity fails at {f}" for f in fails]
    report(3, not problems and samples > 0,
           f"crossing-pair samples: {small} at n<=3, {samples} at n=4,5; problems={problems[:5]}")


# -- 4 -----------------------------------------------------------------------------

def test_criterion_4_vanishing_word():
    M = irreducible_module(fundamental(2, 2, 2))
    amb = M.ambient
    e12 = wedge_coords(amb, [1, 2])
    assert M.highest == e12
    z = apply_word(amb, Word.parse(2, "2,3 1,4 2,3"), e12)
    nz = apply_word(amb, Word.parse(2, "1,4 2,3 2,3"), e12)
    report(4, z == {} and nz != {}, f"non-arranged -> {amb.vec_to_json(z)}, ordered -> {len(nz)} coords")


# -- 5 -----------------------------------------------------------------------------

# w2 at n=2 is the spin module, dimension 2^n = 4
BASIS_CASES = [
    (2, (1, 0), 5), (2, (0, 1), 4), (2, (0, 2), 10), (2, (2, 0), 14),
    (2, (1, 1), 16), (2, (2, 2), 81),
    (3, (1, 0, 0), 7), (3, (0, 1, 0), 21), (3, (0, 0, 1), 8), (3, (0, 0, 2), 35),
]


def test_criterion_5_basis():
    bad = []
    for n, a, d in BASIS_CASES:
        w = weight_from_fundamental(n, a)
        c = verify_basis(w)
        if not (c.ok and weyl_dim(w) == d == c.witness["dim"] == c.witness["rank"]):
            bad.append((n, a, d, c.witness.get("rank"), weyl_dim(w)))
    seeds = range(20)
    for a in ((0, 2), (1, 1)):
        w = weight_from_fundamental(2, a)
        for s in seeds:
            if not verify_basis(w, BasisPolicy("random-arranged", seed=s)).ok:
                bad.append((2, a, "seed", s))
    report(5, not bad, f"{len(BASIS_CASES)} ordered cases, 40 random-arranged; failures={bad}")


# -- 6 -----------------------------------------------------------------------------

def test_criterion_6_straighten():
    w = fundamental(2, 2, 2)
    sweep = straighten_sweep(w)
    c = straighten(w, Triangle.from_dict(2, {(1, 3): 1, (1, 4): 1}))
    half = straighten_coefficients(c) == {Triangle.from_dict(2, {(1, 4): 2, (2, 3): 1}): Fraction(1, 2)}
    report(6, sweep.ok and sweep.witness.get("checked", 0) > 0 and c.ok and half,
           f"sweep checked {sweep.witness.get('checked')}, coefficient 1/2 reproduced={half}")


# -- 7 -----------------------------------------------------------------------------

def _eligible(w):
    return sum(w.a) > 1 and w.a != fundamental(w.n, w.n, 2).a


def test_criterion_7_minkowski(caplog):
    bad, total = [], 0
    for w in filter(_eligible, criterion1_weights()):
        c = minkowski_certificate(w)
        total += c.witness.get("checked", 0)
        if not (c.ok and c.witness["checked"] == len(enumerate_pi(w))):
            bad.append(str(w))
    w = weight_from_fundamental(2, (1, 1))
    with caplog.at_level(logging.INFO, logger="fflvb.verify"):
        r = minkowski_decompose(w, Triangle.from_dict(2, {(1, 4): 3}))
    logged = "indicator construction failed" in caplog.text
    inst = r.used_fallback and r.indicator_failure is not None and logged
    report(7, not bad and inst, f"{total} triangles decomposed, failures={bad}, fallback instance ok={inst}")


# -- 8 -----------------------------------------------------------------------------

def test_criterion_8_degeneration():
    bad = []
    for a in ((1, 0), (0, 1), (0, 2), (1, 1)):
        w = weight_from_fundamental(2, a)
        if not graded_dims(w)[1].ok:
            bad.append((a, "graded-dims"))
        if not degeneration_basis_check(w).ok:
            bad.append((a, "degen-check"))
    report(8, not bad, f"failures={bad}")


# -- 9 -----------------------------------------------------------------------------

def test_criterion_9_rewriting():
    rng = random.Random(2024)
    mods = [vector_rep(2), spin_rep(2), irreducible_module(weight_from_fundamental(2, (1, 1))).ambient]
    cs = cells(2)
    bad = 0
    for m in mods:
        for _ in range(50):
            wd = Word(2, tuple(rng.choice(cs) for _ in range(rng.randint(0, 5))))
            v = {k: Fraction(rng.randint(1, 3)) for k in rng.sample(range(m.dim), min(3, m.dim))}
            got = {}
            for T, c in pbw_normalize(wd).items():
                got = vec_axpy(got, c, apply_word(m, exp_word(T), v))
            bad += got != apply_word(m, wd, v)
    strict = 0
    for _ in range(50):
        T = Triangle(3, tuple(rng.randint(0, 2) for _ in range(9)))
        M, N = random_arranged_word(T, rng), random_arranged_word(T, rng)
        assert is_arranged(M) and is_arranged(N)
        diff = dict(pbw_normalize(M))
        for K, c in pbw_normalize(N).items():
            diff[K] = diff.get(K, 0) - c
        strict += any(c and grad_of(K) >= grad_of(T) for K, c in diff.items())
    report(9, bad == 0 and strict == 0, f"150 words, {bad} mismatches; 50 arranged pairs, {strict} violations")


# -- 10 ----------------------------------------------------------------------------

CLI_CALLS = [
    ["cells", "--n", "3"],
    ["enumerate", "pi", "--n", "2", "--weight", "1,1", "--format", "jsonl"],
    ["enumerate", "gt", "--n", "3", "--weight", "0,0,2"],
    ["normalize", "--n", "3", "--word", "3,4 2,5 1,6 2,3"],
    ["apply", "--n", "2", "--weight", "0,2", "--word", "1,4 2,3 2,3"],
    ["verify-basis", "--n", "2", "--weight", "1,1", "--policy", "random-arranged", "--seed", "11"],
    ["minkowski", "--n", "2", "--weight", "1,1"],
    ["conjecture-scan", "--n", "2", "--weight", "0,2", "--max-len", "3", "--samples", "3", "--seed", "5"],
]


def test_criterion_10_determinism():
    diffs = []
    for argv in CLI_CALLS:
        cmd = [sys.executable, "-m", "fflvb", *argv]
        a = subprocess.run(cmd, capture_output=True)
        b = subprocess.run(cmd, capture_output=True)
        if a.returncode != 0 or a.stdout != b.stdout or a.returncode != b.returncode:
            diffs.append(argv[0])
    report(10, not diffs, f"{len(CLI_CALLS)} commands run twice, differing={diffs}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
