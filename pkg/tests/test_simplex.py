import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from toric_mcm.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, ExactLP, linprog
from toric_mcm.intmat import solve


def test_small_lp():
    res = linprog([1, 1], [[1, 0], [0, 1], [1, 2]], [2, 3, 8])
    assert res.status == OPTIMAL and res.value == 5 and res.x == (2, 3)


def test_unbounded_and_infeasible():
    assert linprog([1], [[-1]], [0]).status == UNBOUNDED
    assert linprog([1], [[1], [-1]], [0, -1]).status == INFEASIBLE


def test_equalities_and_fractions():
    res = linprog([0, 1], a_eq=[[2, 3]], b_eq=[1], a_ub=[[-1, 0]], b_ub=[0])
    assert res.status == OPTIMAL and res.value == Fraction(1, 3)
    lp = ExactLP([[1, 1]], [1], nvars=2)
    assert lp.maximize([Fraction(1, 2), Fraction(1, 3)]).status == UNBOUNDED


def vertex_optimum(c, a, b):
    """Best objective over all basic feasible points (oracle for bounded problems)."""
    best = None
    n = len(c)
    for rows in itertools.combinations(range(len(a)), n):
        x = solve([a[i] for i in rows], [b[i] for i in rows])
        if x is None:
            continue
        if all(sum(p * q for p, q in zip(a[i], x)) <= b[i] for i in range(len(a))):
            v = sum(p * q for p, q in zip(c, x))
            best = v if best is None else max(best, v)
    return best


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-4, 4), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), max_size=4),
    st.lists(st.integers(-4, 6), min_size=4, max_size=4))))
def test_matches_vertex_enumeration_on_boxed_problems(data):
    c, a, b = data
    n = len(c)
    a = [list(r) for r in a]
    b = list(b[:len(a)])
    for i in range(n):
        e = [0] * n
        e[i] = 1
        a += [e, [-x for x in e]]
        b += [5, 5]
    res = linprog(c, a, b)
    best = vertex_optimum(c, a, b)
    if best is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL and res.value == best
        assert all(sum(p * q for p, q in zip(r, res.x)) <= bb for r, bb in zip(a, b))
