import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girard_couples.corpus import boolean_lattice, diamond, pentagon
from girard_couples.lattice import (
    BudgetExceeded,
    FiniteLattice,
    LatticeError,
    SupMap,
    constant_bottom,
    distributivity_witness,
    dual_map,
    enumerate_sup_maps,
    identity_map,
    is_completely_distributive,
    is_strong,
    lattice_from_covers,
    op_dual,
    product_lattice,
    right_adjoint,
)
from girard_couples.quantale import chain

CORPUS = {
    "chain2": chain(2), "chain3": chain(3), "chain4": chain(4), "M3": diamond(), "N5": pentagon(),
    "bool2": boolean_lattice(2), "bool3": boolean_lattice(3),
}


def brute_join(L, a, b):
    ups = [u for u in range(L.n) if L.leq[a, u] and L.leq[b, u]]
    least = [u for u in ups if all(L.leq[u, v] for v in ups)]
    assert len(least) == 1
    return least[0]


def brute_sup_maps(S, T):
    """All maps S -> T (as tuples) preserving bottom and binary joins, by full scan."""
    out = []
    for table in itertools.product(range(T.n), repeat=S.n):
        if table[S.bottom] != T.bottom:
            continue
        if all(table[S.join[a, b]] == T.join[table[a], table[b]] for a in range(S.n) for b in range(S.n)):
            out.append(table)
    return out


def test_two_chain():
    L = lattice_from_covers(["0", "1"], [("0", "1")])
    assert (L.bottom, L.top) == (0, 1)
    assert L.join[0, 1] == 1 and L.meet[0, 1] == 0


def test_diamond_tables_match_scan():
    M = diamond()
    a, b = M.index("a"), M.index("b")
    assert M.labels[M.join[a, b]] == "1" and M.labels[M.meet[a, b]] == "0"
    for x in range(M.n):
        for y in range(M.n):
            assert M.join[x, y] == brute_join(M, x, y)


@pytest.mark.parametrize("elements, covers, fragment", [
    (["0", "a", "b", "1"], [("0", "a"), ("0", "b")], "no join"),
    (["a", "b"], [("a", "b"), ("b", "a")], "cycle"),
    (["a", "a"], [], "duplicate"),
    (["a", "b"], [("a", "c")], "unknown"),
])
def test_rejects_bad_input(elements, covers, fragment):
    with pytest.raises(LatticeError, match=fragment):
        lattice_from_covers(elements, covers)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_lattice_identities(name):
    L = CORPUS[name]
    J, M = L.join, L.meet
    idx = np.arange(L.n)
    assert (J == J.T).all() and (M == M.T).all()
    for a in range(L.n):
        assert J[a, a] == a and M[a, a] == a
        for b in range(L.n):
            assert J[a, M[a, b]] == a and M[a, J[a, b]] == a
            for c in range(L.n):
                assert J[J[a, b], c] == J[a, J[b, c]]
                assert M[M[a, b], c] == M[a, M[b, c]]
    assert L.leq[L.bottom, idx].all() and L.leq[idx, L.top].all()


def test_op_dual():
    two = chain(2)
    d = op_dual(two)
    assert d.top == two.bottom and d.labels == ("0'", "1'")
    N = pentagon()
    Nop = op_dual(N)
    assert (Nop.leq == N.leq.T).all() and (Nop.join == N.meet).all()
    assert op_dual(Nop) == N
    for L in CORPUS.values():
        assert is_completely_distributive(L) == is_completely_distributive(op_dual(L))


def test_distributivity():
    assert is_completely_distributive(chain(4))
    assert is_completely_distributive(boolean_lattice(3))
    M = diamond()
    w = distributivity_witness(M)
    assert w is not None
    a, b, c = w
    assert M.meet[a, M.join[b, c]] != M.join[M.meet[a, b], M.meet[a, c]]
    assert not is_completely_distributive(pentagon())


def test_right_adjoint_examples():
    B = boolean_lattice(2)
    assert right_adjoint(identity_map(B)) == tuple(range(B.n))
    C3 = chain(3)
    assert right_adjoint(constant_bottom(C3, C3)) == (2, 2, 2)
    f = SupMap(C3, C3, (0, 0, 2))  # f(m) = 0, f(1) = 1
    assert right_adjoint(f) == (1, 1, 2)  # f#(0) = m, f#(m) = m, f#(1) = 1
    fd = dual_map(f)
    assert fd.source == op_dual(C3) and fd.table == (1, 1, 2)
    assert dual_map(fd) == f


def test_strong():
    assert is_strong(identity_map(chain(2)))
    assert not is_strong(constant_bottom(chain(2), chain(2)))


def test_invalid_sup_map_rejected():
    with pytest.raises(LatticeError):
        SupMap(chain(3), chain(3), (0, 2, 1))


@pytest.mark.parametrize("name, count", [("chain2", 2), ("chain3", 6), ("bool2", 16)])
def test_sup_map_counts(name, count):
    L = CORPUS[name]
    maps = enumerate_sup_maps(L, L)
    assert len(maps) == count
    assert sorted(m.table for m in maps) == sorted(brute_sup_maps(L, L))


@pytest.mark.parametrize("S, T", [("M3", "chain3"), ("N5", "chain2"), ("chain3", "M3"), ("N5", "N5")])
def test_sup_maps_match_brute_force(S, T):
    S, T = CORPUS[S], CORPUS[T]
    got = [m.table for m in enumerate_sup_maps(S, T)]
    assert len(set(got)) == len(got)
    assert sorted(got) == sorted(brute_sup_maps(S, T))


@pytest.mark.parametrize("name", ["chain3", "M3", "N5", "bool2"])
def test_adjunction(name):
    L = CORPUS[name]
    for f in enumerate_sup_maps(L, L):
        g = right_adjoint(f)
        for s in range(L.n):
            for t in range(L.n):
                assert L.leq[f.table[s], t] == L.leq[s, g[t]]


def test_budget():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_sup_maps(boolean_lattice(3), boolean_lattice(3), budget=100)
    assert exc.value.size == 8 ** 3


def test_product_lattice():
    L, tuples = product_lattice([chain(2), chain(2)])
    assert L.n == 4 and is_completely_distributive(L)
    assert L.labels[L.top] == "(1;1)"
    E, _ = product_lattice([])
    assert E.n == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.data())
def test_random_down_set_lattices(k, data):
    # down-sets of a random poset on k points always form a distributive lattice
    rel = np.eye(k, dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            rel[i, j] = data.draw(st.booleans())
    for m in range(k):
        rel |= rel[:, [m]] & rel[[m], :]
    downs = sorted({tuple(rel[:, list(s)].any(axis=1)) if s else (False,) * k
                    for r in range(k + 1) for s in itertools.combinations(range(k), r)})
    n = len(downs)
    leq = np.array([[all(x <= y for x, y in zip(a, b)) for b in downs] for a in downs])
    L = FiniteLattice(leq, [str(i) for i in range(n)])
    assert is_completely_distributive(L)
    for a in range(n):
        for b in range(n):
            assert downs[L.join[a, b]] == tuple(x or y for x, y in zip(downs[a], downs[b]))
