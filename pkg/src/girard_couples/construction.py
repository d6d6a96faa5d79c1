"""Factoring a Girard couple through a Girard quantale.

Given a Girard couple ``phi: C -> Q`` with dualizer d, the pairs ``(a, c)``
with ``phi(c) <= a`` form a Girard quantale G under

    (a1, c1)(a2, c2) = (a1 a2, a1.c2 v c1.a2)

with unit ``(e, 0)``, dualizer ``(1, d)`` and negation ``(a, c) -> (c^perp, a^perp)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import Check, law
from .couple import Couple, CoupleError, cs_couple, is_girard, validate_couple, zero_couple
from .lattice import FiniteLattice, op_dual, order_isomorphism_witness
from .quantale import Quantale, cyclic_witness, dualizing_witness, sided_sets, unit_witness


@dataclass
class GirardQuantale:
    quantale: Quantale
    pairs: list[tuple[int, int]]
    unit: int
    dualizer: int
    gamma: tuple[int, ...]  # C -> G
    alpha: tuple[int, ...]  # G -> Q
    couple: Couple

    def index(self, a: int, c: int) -> int:
        return self._index[(a, c)]

    def __post_init__(self):
        self._index = {p: i for i, p in enumerate(self.pairs)}

    @property
    def n(self) -> int:
        return self.quantale.n

    def perp(self, g: int) -> int:
        """``(a, c)^perp = (c^perp, a^perp)``."""
        a, c = self.pairs[g]
        K = self.couple
        return self.index(K.perp_c(c), K.perp_q(a))


def build_G(K: Couple) -> GirardQuantale:
    if K.d is None or not is_girard(K):
        raise CoupleError(f"{K.name or 'couple'} is not a Girard couple with a designated dualizer")
    Q, C = K.Q, K.C
    pairs = [(a, c) for a in range(Q.n) for c in range(C.n) if Q.leq[K.phi[c], a]]
    P = np.array(pairs, dtype=np.int64)
    a, c = P[:, 0], P[:, 1]
    pos = np.full((Q.n, C.n), -1, dtype=np.int64)
    pos[a, c] = np.arange(len(pairs))

    def locate(qa, cc, what):
        out = pos[qa, cc]
        assert (out >= 0).all(), f"{what} leaves G"
        return out

    # order, joins and meets are componentwise; G is closed under both
    leq = Q.leq[a[:, None], a[None, :]] & C.leq[c[:, None], c[None, :]]
    join = locate(Q.lattice.join[a[:, None], a[None, :]], C.lattice.join[c[:, None], c[None, :]], "join")
    meet = locate(Q.lattice.meet[a[:, None], a[None, :]], C.lattice.meet[c[:, None], c[None, :]], "meet")
    labels = [f"({Q.labels[x]};{C.labels[y]})" for x, y in pairs]
    L = FiniteLattice.from_tables(leq, join, meet, labels)
    # (a1, c1)(a2, c2) = (a1 a2, a1 c2 v c1 a2)
    second = C.lattice.join[K.act_l[a[:, None], c[None, :]], K.act_r[c[:, None], a[None, :]]]
    mul = locate(Q.mul[a[:, None], a[None, :]], second, "product")
    e = K.neutral
    unit = int(pos[e, C.bottom])
    G = Quantale(L, mul, unit=unit, name=f"G({K.name})")
    gamma = tuple(int(pos[K.phi[x], x]) for x in range(C.n))
    alpha = tuple(int(x) for x in a)
    return GirardQuantale(G, pairs, unit, int(pos[Q.top, K.d]), gamma, alpha, K)


def verify_G(G: GirardQuantale) -> list[Check]:
    K, Gq = G.couple, G.quantale
    anchor = "Girard couples factor through a Girard quantale"
    n = Gq.n
    idx = np.arange(n)
    formula = np.array([G.perp(g) for g in range(n)])
    # formula[x] is x -> d iff {y | yx <= d} is its down-set, and d <- x iff {y | xy <= d} is
    below = Gq.leq[Gq.mul, G.dualizer]
    down = Gq.leq[:, formula]
    certified = (below == down) & (below.T == down)
    cyc = cyclic_witness(Gq, G.dualizer)
    if certified.all():
        # then d <- (a -> d) = (d <- a) -> d = formula[formula[a]]
        hit = np.flatnonzero(formula[formula] != idx)
        dual = Gq.labels[int(hit[0])] if hit.size else None
    else:
        dual = dualizing_witness(Gq, G.dualizer)
    neutral = unit_witness(Gq, G.unit)
    bad_phi = [K.C.labels[c] for c in range(K.C.n) if G.alpha[G.gamma[c]] != K.phi[c]]
    out = [
        Check("(1, d) is cyclic", cyc is None, anchor=anchor, witness=cyc, suite="girard"),
        Check("(1, d) is dualizing", dual is None, anchor=anchor, witness=dual, suite="girard"),
        Check("(e, 0) is neutral", neutral is None, anchor=anchor, witness=neutral, suite="girard"),
        Check("phi = alpha . gamma", not bad_phi, anchor=anchor, witness=bad_phi[:1] or None, suite="girard"),
    ]
    out.append(law("(a, c)^perp = (c^perp, a^perp)", certified, [Gq.labels, Gq.labels], anchor=anchor,
                   suite="girard"))
    out.append(law("(a, c)^perp^perp = (a, c)", formula[formula] == idx, [Gq.labels], anchor=anchor, suite="girard"))
    A = np.asarray(G.alpha)
    gam = np.asarray(G.gamma)
    out.append(law("alpha is a quantale homomorphism", A[Gq.mul] == K.Q.mul[A[:, None], A[None, :]],
                   [Gq.labels, Gq.labels], anchor=anchor, suite="girard"))
    out.append(law("gamma is a quantale homomorphism", gam[K.C.mul] == Gq.mul[gam[:, None], gam[None, :]],
                   [K.C.labels, K.C.labels], anchor=anchor, suite="girard"))
    out.append(Check("alpha is strong", int(A[Gq.top]) == K.Q.top, anchor=anchor,
                     witness=K.Q.labels[int(A[Gq.top])], suite="girard"))
    if K.is_strong:
        out.append(Check("gamma is strong", G.gamma[K.C.top] == Gq.top, anchor=anchor,
                         witness=Gq.labels[G.gamma[K.C.top]], suite="girard"))
    return out


def restricted_couple(K: Couple, G: GirardQuantale) -> Couple:
    """``gamma: C -> G`` with G acting on C through ``alpha``."""
    A = np.asarray(G.alpha)
    return Couple(K.C, G.quantale, G.gamma, K.act_l[A, :], K.act_r[:, A], d=K.d, name=f"C -> G({K.name})")


def check_restriction_of_scalars(K: Couple, G: GirardQuantale) -> Check:
    bad = [c for c in validate_couple(restricted_couple(K, G)) if c.failed]
    return Check("C -> G is a couple under restricted scalars", not bad, anchor="restriction of scalars along alpha",
                 witness=[(c.name, c.witness) for c in bad] or None, suite="girard")


def check_sided_chain(K: Couple, G: GirardQuantale) -> list[Check]:
    """``R(C) ~ R(G) ~ R(Q)`` and ``L(C) ~ L(G) ~ L(Q)`` via gamma and alpha."""
    anchor = "sided parts of C, G and Q agree"
    names = ("R(C) ~ R(G) ~ R(Q)", "L(C) ~ L(G) ~ L(Q)")
    if not K.is_strong:
        return [Check(n, None, anchor=anchor, witness="phi is not strong", suite="girard") for n in names]
    Gq = G.quantale
    sc, sg, sq = sided_sets(K.C), sided_sets(Gq), sided_sets(K.Q)
    out = []
    top_c = K.C.top
    for name, xc, xg, xq, back in (
        (names[0], sc.right, sg.right, sq.right, lambda g: int(K.act_l[G.alpha[g], top_c])),
        (names[1], sc.left, sg.left, sq.left, lambda g: int(K.act_r[top_c, G.alpha[g]])),
    ):
        gam = lambda c: G.gamma[c]  # noqa: E731
        alp = lambda g: G.alpha[g]  # noqa: E731
        why = order_isomorphism_witness(gam, xc, K.C.leq, xg, Gq.leq)
        if why is None:
            why = order_isomorphism_witness(alp, xg, Gq.leq, xq, K.Q.leq)
        if why is None and any(back(gam(c)) != c for c in xc):
            why = "multiplying by 1_C does not invert gamma"
        out.append(Check(name, why is None, anchor=anchor, witness=why, suite="girard"))
    return out


def check_convolution(G: GirardQuantale) -> Check:
    """Products agree with ``(ab)_i = join over j & k <= i of a_j b_k``.

    Component 0 is C and component 1 is Q; a product landing in component 0
    is carried to component 1 by phi.
    """
    K = G.couple
    jQ, jC, phi = K.Q.lattice.join, K.C.lattice.join, K.phi
    P = np.asarray(G.pairs)
    a1, a0 = P[:, 0][:, None], P[:, 1][:, None]  # rows: first factor
    b1, b0 = P[:, 0][None, :], P[:, 1][None, :]  # columns: second factor
    t00, t01, t10 = K.C.mul[a0, b0], K.act_r[a0, b1], K.act_l[a1, b0]
    t11 = K.Q.mul[a1, b1]
    # terms with min(j, k) <= 0 are the C-valued ones; all four reach component 1
    out0 = jC[jC[t00, t01], t10]
    out1 = jQ[jQ[jQ[t11, phi[t00]], phi[t01]], phi[t10]]
    prod = P[G.quantale.mul]
    ok = (prod[..., 0] == out1) & (prod[..., 1] == out0)
    return law("convolution product", ok, [G.quantale.labels] * 2, anchor="convolution reading of G", suite="girard")


def rosenthal(Q: Quantale) -> GirardQuantale:
    """The Girard quantale on ``Q x Q^op`` built from the zero couple of Q."""
    G = build_G(zero_couple(Q))
    assert len(G.pairs) == Q.n * Q.n, "carrier is not all of Q x Q^op"
    return G


def G_of_S(S: FiniteLattice, **budgets) -> GirardQuantale:
    return build_G(cs_couple(S, **budgets))


def check_G_of_S(G: GirardQuantale) -> list[Check]:
    """``x -> gamma(x@0')`` is an order isomorphism ``S -> R(G)``, and ``y -> gamma(1@y')`` one ``S^op -> L(G)``."""
    K = G.couple
    S, T = K.base, K.tensor
    Gq = G.quantale
    s = sided_sets(Gq)
    anchor = "a Girard quantale with right-sided part S"
    # 0' in S^op is the bottom of S
    right = lambda x: G.gamma[int(T.gen[x, S.bottom])]  # noqa: E731
    left = lambda y: G.gamma[int(T.gen[S.top, y])]  # noqa: E731
    xs = list(range(S.n))
    why_r = order_isomorphism_witness(right, xs, S.leq, s.right, Gq.leq)
    why_l = order_isomorphism_witness(left, xs, op_dual(S).leq, s.left, Gq.leq)
    return [
        Check("R(G) ~ S", why_r is None, anchor=anchor, witness=why_r, suite="girard"),
        Check("L(G) ~ S^op", why_l is None, anchor=anchor, witness=why_l, suite="girard"),
    ]
