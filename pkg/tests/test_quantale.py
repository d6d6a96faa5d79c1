import itertools
from hypothesis import given, settings
from hypothesis import strategies as st

import numpy as np
import pytest

from girard_couples import corpus
from girard_couples.endo import build_endo_quantale
from girard_couples.quantale import (
    Quantale,
    QuantaleError,
    check_annulator_perp,
    frame_quantale,
    girard_elements,
    is_cyclic_element,
    is_dualizing_element,
    is_semiunital,
    is_von_neumann,
    lukasiewicz_chain,
    product_quantale,
    residual_left,
    residual_right,
    sided_sets,
    sub_ring_quantale,
    zero_quantale,
)
from girard_couples.quantale import chain


def scan_right(Q, a, b):
    cands = [c for c in range(Q.n) if Q.leq[Q.mul[c, a], b]]
    return Q.lattice.join_all(cands)


def scan_left(Q, b, a):
    cands = [c for c in range(Q.n) if Q.leq[Q.mul[a, c], b]]
    return Q.lattice.join_all(cands)


def subgroup(n, gens):
    """Additive subgroup of Z_n generated by gens, as a frozenset."""
    out = {0}
    frontier = set(gens)
    while frontier:
        out |= frontier
        frontier = {(x + y) % n for x in out for y in out} - out
    return frozenset(out)


@pytest.mark.parametrize("name", ["subZ4", "subZ6", "luk4", "frame-bool2", "endo-chain3", "endo-M3", "zero-chain3"])
def test_residuals_match_scan(name):
    Q = corpus.quantale(name)
    for a in range(Q.n):
        for b in range(Q.n):
            assert residual_right(Q, a, b) == scan_right(Q, a, b)
            assert residual_left(Q, b, a) == scan_left(Q, b, a)
            for c in range(Q.n):
                assert Q.leq[Q.mul[c, a], b] == Q.leq[c, residual_right(Q, a, b)]
                assert Q.leq[Q.mul[a, c], b] == Q.leq[c, residual_left(Q, b, a)]


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_sub_ring_products_match_sets(n):
    Q = sub_ring_quantale(n)
    groups = {}
    for i, lab in enumerate(Q.labels):
        m = n if lab == "0" else 1 if lab == f"Z{n}" else int(lab.split("Z")[0])
        groups[i] = subgroup(n, [m % n])
    assert len(set(groups.values())) == Q.n
    for i, j in itertools.product(range(Q.n), repeat=2):
        assert Q.leq[i, j] == (groups[i] <= groups[j])
        prod = subgroup(n, [x * y % n for x in groups[i] for y in groups[j]])
        assert groups[Q.mul[i, j]] == prod
    assert groups[Q.unit] == frozenset(range(n))


def test_sub_z4():
    Q = sub_ring_quantale(4)
    z, two, full = (Q.lattice.index(s) for s in ("0", "2Z4", "Z4"))
    assert residual_left(Q, two, two) == full
    assert Q.mul[two, two] == z
    s = sided_sets(Q)
    assert set(s.right) == set(s.left) == {z, two, full}
    assert girard_elements(Q)


def test_zero_multiplication_chain():
    Q = zero_quantale(chain(3))
    assert Q.unit is None
    assert not is_semiunital(Q)
    assert not is_von_neumann(Q)
    assert girard_elements(Q) == ()


def test_two_chain_and_frames():
    Q = frame_quantale(chain(2))
    assert Q.unit == Q.top and girard_elements(Q) == (Q.bottom,)
    # a chain frame with three elements has no cyclic dualizing element
    assert girard_elements(frame_quantale(chain(3))) == ()
    assert girard_elements(frame_quantale(corpus.boolean_lattice(2))) == (0,)


def test_endo_bool2_semiunital():
    Q = build_endo_quantale(corpus.boolean_lattice(2)).quantale
    assert is_semiunital(Q)
    s = sided_sets(Q)
    two_sided = set(s.right) & set(s.left)
    assert two_sided == {Q.bottom, Q.top}


def test_endo_m3_not_girard():
    Q = corpus.quantale("endo-M3")
    assert girard_elements(Q) == ()
    assert any(is_cyclic_element(Q, d) for d in range(Q.n))


def test_lukasiewicz():
    Q = lukasiewicz_chain(4)
    assert girard_elements(Q) == (0,)
    perp = Q.right_residuals[:, 0]
    assert perp.tolist() == [3, 2, 1, 0]


def test_law_violation_raises():
    L = chain(3)
    bad = np.array([[0, 0, 0], [0, 2, 1], [0, 1, 2]])  # not monotone
    with pytest.raises(QuantaleError):
        Quantale(L, bad)


@pytest.mark.parametrize("name", [q for q, _, _ in corpus.girard_quantales()][:12])
def test_girard_corpus(name):
    _, Q, d = next(t for t in corpus.girard_quantales() if t[0] == name)
    assert is_cyclic_element(Q, d) and is_dualizing_element(Q, d)
    assert all(c.passed for c in check_annulator_perp(Q, d))


def test_product_quantale():
    P, tuples = product_quantale([sub_ring_quantale(4), frame_quantale(chain(2))])
    assert P.n == 6 and P.unit is not None
    for i, j in itertools.product(range(P.n), repeat=2):
        a, b = tuples[i], tuples[j]
        assert tuples[P.mul[i, j]] == (sub_ring_quantale(4).mul[a[0], b[0]], min(a[1], b[1]))


def naive_laws(L, m, unit):
    n, J = L.n, L.join
    r = range(n)
    out = {
        "associativity": all(m[m[a, b], c] == m[a, m[b, c]] for a in r for b in r for c in r),
        "left distributivity": all(m[a, J[b, c]] == J[m[a, b], m[a, c]] for a in r for b in r for c in r),
        "right distributivity": all(m[J[b, c], a] == J[m[b, a], m[c, a]] for a in r for b in r for c in r),
        "zero absorption": all(m[L.bottom, a] == L.bottom == m[a, L.bottom] for a in r),
    }
    if unit is not None:
        out["unit law"] = all(m[unit, a] == a == m[a, unit] for a in r)
    return out


BASES = ["subZ6", "luk4", "frame-bool2", "endo-chain3", "zero-chain3", "subZ8", "frame-chain4"]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(BASES), st.lists(st.tuples(st.integers(0, 19), st.integers(0, 19), st.integers(0, 19)),
                                        max_size=3), st.booleans())
def test_law_checks_match_naive_scan(name, edits, with_unit):
    from girard_couples.quantale import quantale_law_checks

    Q = corpus.quantale(name)
    m = Q.mul.copy()
    for a, b, v in edits:
        m[a % Q.n, b % Q.n] = v % Q.n
    unit = Q.unit if with_unit else None
    got = {c.name: c.passed for c in quantale_law_checks(Q.lattice, m, unit)}
    assert got == naive_laws(Q.lattice, m, unit)
    for c in quantale_law_checks(Q.lattice, m, unit):
        if c.failed and c.name != "zero absorption" and c.name != "unit law":
            a, b, x = (Q.lattice.index(w) for w in c.witness)
            J = Q.lattice.join
            if c.name == "associativity":
                assert m[m[a, b], x] != m[a, m[b, x]]
            elif c.name == "left distributivity":
                assert m[a, J[b, x]] != J[m[a, b], m[a, x]]
            else:
                assert m[J[b, x], a] != J[m[b, a], m[x, a]]


@pytest.mark.parametrize("name", ["subZ6", "luk4", "endo-chain3", "frame-bool2", "zero-chain3"])
def test_residuals_into_match_full_tables(name):
    Q = corpus.quantale(name)
    for d in range(Q.n):
        to_d, d_from = Q.residuals_into(d)
        assert to_d.tolist() == Q.right_residuals[:, d].tolist()
        assert d_from.tolist() == Q.left_residuals[d, :].tolist()
