from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from fflvb.patterns import (
    Triangle,
    dyck_paths,
    enumerate_pi,
    grad_of,
    in_pi,
    is_dyck_path,
    m_bound,
    polytope_h_rep,
    s_sum,
)
from fflvb.rootsys import cells, fundamental, is_short, weight_from_fundamental, weyl_dim

from oracles import all_paths, member_bruteforce, pi_box_scan

F = Fraction
W2 = fundamental(2, 2, 2)  # lambda = (1, 1)


def tri(n, **kw):
    return Triangle.from_dict(n, {(int(k[1]), int(k[2])): v for k, v in kw.items()})


def test_dyck_paths_small():
    assert dyck_paths(1) == (((1, 2),),)
    got = set(dyck_paths(2))
    assert got == {
        ((1, 2),),
        ((2, 3),),
        ((1, 2), (1, 3), (2, 3)),
        ((1, 2), (1, 3), (1, 4)),
    }
    # (1,2) -> (2,3) is a diagonal move, not a path step
    assert not is_dyck_path(2, ((1, 2), (2, 3)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_dyck_paths_match_raw_enumeration(n):
    assert set(dyck_paths(n)) == set(all_paths(n))
    assert len(set(dyck_paths(n))) == len(dyck_paths(n))
    for d in dyck_paths(n):
        assert d[0][1] - d[0][0] == 1
        # short cells only ever appear at the end
        assert not any(is_short(n, c) for c in d[:-1])


def test_s_sum_examples():
    T = tri(2, t23=2, t14=1)
    assert s_sum(T, ((2, 3),)) == 1
    assert s_sum(T, ((1, 2), (1, 3), (1, 4))) == F(1, 2)
    assert s_sum(Triangle.zero(2), ((1, 2), (1, 3), (2, 3))) == 0
    with pytest.raises(ValueError):
        s_sum(T, ((1, 2), (2, 3)))


def test_m_bound_examples():
    assert m_bound(W2, ((1, 2),)) == 0
    assert m_bound(W2, ((2, 3),)) == 1
    assert m_bound(W2, ((1, 2), (1, 3), (1, 4))) == 1


def test_in_pi_examples():
    assert in_pi(tri(2, t23=2, t14=1), W2)
    assert not in_pi(tri(2, t12=1), W2)
    for a in [(0, 0), (1, 0), (3, 1)]:
        assert in_pi(Triangle.zero(2), weight_from_fundamental(2, a))


@pytest.mark.parametrize("n,a", [(1, (2,)), (2, (1, 1)), (2, (0, 3)), (3, (1, 0, 1)), (4, (0, 1, 0, 1))])
def test_dp_matches_bruteforce_in_box(n, a):
    w = weight_from_fundamental(n, a)
    import random

    rng = random.Random(n * 100 + sum(a))
    top = int(2 * w.lam[0]) + 1
    samples = [Triangle(n, tuple(rng.randint(0, top) * (rng.random() < 0.35) for _ in range(n * n))) for _ in range(400)]
    samples += enumerate_pi(w)[:200]
    for T in samples:
        assert in_pi(T, w) == member_bruteforce(T, w.lam), T


def test_dp_matches_bruteforce_exhaustive_n2():
    w = weight_from_fundamental(2, (1, 1))
    for e in product(range(4), repeat=4):
        T = Triangle(2, e)
        assert in_pi(T, w) == member_bruteforce(T, w.lam)


def test_enumerate_pi_examples():
    assert len(enumerate_pi(W2)) == 10
    spin = enumerate_pi(fundamental(2, 2))
    assert sorted(spin, key=lambda T: T.entries) == [
        tri(2), tri(2, t23=1), tri(2, t14=1), tri(2, t14=1, t23=1)
    ]
    assert enumerate_pi(weight_from_fundamental(3, (0, 0, 0))) == [Triangle.zero(3)]


@pytest.mark.parametrize("n,a", [(1, (3,)), (2, (1, 0)), (2, (0, 2)), (2, (1, 1)), (2, (2, 1)), (3, (1, 0, 0)), (3, (0, 0, 1))])
def test_enumerate_matches_box_scan(n, a):
    w = weight_from_fundamental(n, a)
    got = enumerate_pi(w)
    assert got == sorted(got, key=lambda T: T.entries)
    assert set(got) == set(pi_box_scan(w))
    assert len(got) == len(set(got)) == weyl_dim(w)


weights2 = st.tuples(st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=25, deadline=None)
@given(weights2, st.data())
def test_downward_closed(a, data):
    w = weight_from_fundamental(2, a)
    pi = enumerate_pi(w)
    T = data.draw(st.sampled_from(pi))
    smaller = Triangle(2, tuple(data.draw(st.integers(0, x)) for x in T.entries))
    assert in_pi(smaller, w)


@settings(max_examples=25, deadline=None)
@given(weights2, weights2, st.data())
def test_minkowski_containment(a, b, data):
    mu, nu = weight_from_fundamental(2, a), weight_from_fundamental(2, b)
    S = data.draw(st.sampled_from(enumerate_pi(mu)))
    T = data.draw(st.sampled_from(enumerate_pi(nu)))
    assert in_pi(S + T, mu + nu)


def test_grad_examples():
    assert grad_of(tri(2, t23=2, t14=1)) == F(3, 2)
    assert grad_of(tri(2, t12=1)) == 1
    assert grad_of(Triangle.zero(2)) == 0


@pytest.mark.parametrize("n,a", [(2, (0, 2)), (2, (1, 1)), (3, (0, 1, 0)), (2, (0, 0))])
def test_h_rep_lattice_points(n, a):
    w = weight_from_fundamental(n, a)
    h = polytope_h_rep(w)
    assert len(h.rows) == len(dyck_paths(n)) + n * n
    assert list(h.vars) == list(cells(n))
    top = int(2 * w.lam[0])
    pts = {Triangle(n, e) for e in product(range(top + 2), repeat=n * n) if h.satisfied_by(Triangle(n, e))} if n == 2 else None
    if pts is not None:
        assert pts == set(enumerate_pi(w))
    else:
        assert all(h.satisfied_by(T) for T in enumerate_pi(w))


def test_h_rep_json_shape():
    j = polytope_h_rep(W2).to_json()
    assert j["vars"][0] == [1, 2]
    assert {"coeffs", "rhs"} == set(j["rows"][0])
    assert all(isinstance(x, str) for x in j["rows"][0]["coeffs"])


def test_triangle_json_roundtrip():
    T = tri(2, t14=1, t23=2)
    assert T.to_json() == {"n": 2, "entries": [0, 0, 1, 2]}
    assert Triangle.from_json(T.to_json()) == T
    with pytest.raises(ValueError):
        Triangle.from_json({"n": 2, "entries": [0, 1]})
