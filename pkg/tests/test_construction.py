import itertools

import numpy as np
import pytest

from girard_couples import corpus
from girard_couples.construction import (
    G_of_S,
    build_G,
    check_G_of_S,
    check_convolution,
    check_restriction_of_scalars,
    check_sided_chain,
    rosenthal,
    verify_G,
)
from girard_couples.couple import CoupleError, cs_couple, identity_couple, zero_couple
from girard_couples.corpus import boolean_lattice, diamond, pentagon
from girard_couples.quantale import chain, frame_quantale, girard_elements, sub_ring_quantale


def ok(checks):
    return all(c.passed is not False for c in checks)


def isomorphic(leq_a, leq_b):
    """Brute-force order isomorphism between two small posets."""
    n = len(leq_a)
    if n != len(leq_b):
        return False
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        if (leq_b[p[:, None], p[None, :]] == leq_a).all():
            return True
    return False


def sided(Q, side):
    top = Q.top
    if side == "right":
        return [r for r in range(Q.n) if Q.leq[Q.mul[r, top], r]]
    return [l for l in range(Q.n) if Q.leq[Q.mul[top, l], l]]


@pytest.mark.parametrize("name, size", [("chain2", 4), ("subZ4", 9), ("subZ6", 16)])
def test_rosenthal_is_full_product(name, size):
    Q = corpus.quantale(name)
    G = rosenthal(Q)
    assert G.n == size == Q.n ** 2
    assert sorted(G.pairs) == [(a, c) for a in range(Q.n) for c in range(Q.n)]
    assert G.dualizer in girard_elements(G.quantale)
    assert G.pairs[G.dualizer] == (Q.top, Q.unit)
    assert ok(verify_G(G)) and check_convolution(G).passed


@pytest.mark.parametrize("name", ["chain2", "subZ4", "luk3"])
def test_rosenthal_against_residual_oracle(name):
    Q = corpus.quantale(name)
    G = rosenthal(Q)

    def arrow(a, b):  # a -> b, largest c with c a <= b
        return Q.lattice.join_all(c for c in range(Q.n) if Q.leq[Q.mul[c, a], b])

    def larrow(b, a):  # b <- a, largest c with a c <= b
        return Q.lattice.join_all(c for c in range(Q.n) if Q.leq[Q.mul[a, c], b])

    for i, (a1, c1) in enumerate(G.pairs):
        # negation swaps the components, since a^perp = a' in the zero couple
        assert G.pairs[G.perp(i)] == (c1, a1)
        for j, (a2, c2) in enumerate(G.pairs):
            # the join in Q^op is the meet in Q
            expect = (int(Q.mul[a1, a2]), int(Q.lattice.meet[arrow(a1, c2), larrow(c1, a2)]))
            assert G.pairs[G.quantale.mul[i, j]] == expect
    perp = G.quantale.right_residuals[:, G.dualizer]
    assert all(perp[g] == G.perp(g) for g in range(G.n))


def test_zero_couple_two_chain_G():
    K = zero_couple(frame_quantale(chain(2)))
    G = build_G(K)
    assert G.n == 4
    assert check_restriction_of_scalars(K, G).passed
    assert all(c.passed is None for c in check_sided_chain(K, G))


def test_identity_two_chain_G():
    K = identity_couple(frame_quantale(chain(2)))
    G = build_G(K)
    assert sorted(G.pairs) == [(0, 0), (1, 0), (1, 1)]
    leq = G.quantale.leq
    assert (leq | leq.T).all()  # a 3-element chain
    assert ok(verify_G(G)) and check_restriction_of_scalars(K, G).passed


def test_not_girard_rejected():
    with pytest.raises(CoupleError):
        build_G(identity_couple(corpus.quantale("endo-M3")))


def test_cs_bool2_G():
    K = cs_couple(boolean_lattice(2))
    G = build_G(K)
    assert G.pairs[G.unit] == (K.Q.unit, K.C.bottom)
    assert ok(verify_G(G)) and check_convolution(G).passed
    assert ok(check_sided_chain(K, G))
    assert check_restriction_of_scalars(K, G).passed


@pytest.mark.parametrize("S", [chain(2), chain(3), boolean_lattice(2), diamond(), pentagon()], ids=lambda s: str(s.n))
def test_G_of_S_sided_posets(S):
    G = G_of_S(S)
    Q = G.quantale
    assert ok(check_G_of_S(G))
    R, L = sided(Q, "right"), sided(Q, "left")
    assert isomorphic(Q.leq[np.ix_(R, R)], S.leq)
    assert isomorphic(Q.leq[np.ix_(L, L)], S.leq.T)
    assert G.dualizer in girard_elements(Q)


def test_G_of_M3_is_girard_although_Q_M3_is_not():
    assert girard_elements(corpus.quantale("endo-M3")) == ()
    G = corpus.girard_model("GofS-M3")
    assert ok(verify_G(G))


def test_corrupted_G_table_fails_convolution():
    G = rosenthal(sub_ring_quantale(4))
    mul = G.quantale.mul.copy()
    mul[1, 1] = (mul[1, 1] + 1) % G.n
    from dataclasses import replace

    from girard_couples.quantale import Quantale

    broken = replace(G, quantale=Quantale(G.quantale.lattice, mul, unit=G.unit, validate=False))
    c = check_convolution(broken)
    assert c.failed and c.witness


def test_strong_gamma():
    for name in ("cs-couple-chain3", "identity-luk3"):
        K = corpus.couple(name)
        G = build_G(K)
        assert G.gamma[K.C.top] == G.quantale.top
        assert [G.alpha[G.gamma[c]] for c in range(K.C.n)] == K.phi.tolist()
