"""Couples of quantales ``phi: C -> Q`` and their Girard structure.

Elements of the two components are plain indices; where an operation may
take or return either, it uses a tagged pair ``(side, index)`` with side
``"C"`` or ``"Q"``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .checks import Check, law
from .endo import EndoQuantale, build_endo_quantale
from .lattice import DEFAULT_MAP_BUDGET, FiniteLattice, op_dual, order_isomorphism_witness
from .quantale import (
    Quantale,
    is_semiunital,
    is_von_neumann,
    product_quantale,
    sided_sets,
    sub_ideal_quantale,
    sub_ring_quantale,
    subgroups_of_ideal,
    von_neumann_witness,
    zero_quantale,
)
from .tensor import DEFAULT_TENSOR_BUDGET, TensorProduct, tensor_lattice


class CoupleError(ValueError):
    pass


class Couple:
    """Quantales C and Q, a coupling map ``phi``, and the Q-bimodule actions on C.

    ``act_l[a, c] = a.c`` and ``act_r[c, a] = c.a``.  Construction does not
    validate; call :func:`validate_couple`.
    """

    def __init__(self, C: Quantale, Q: Quantale, phi, act_l, act_r, d: int | None = None, name: str = ""):
        self.C, self.Q = C, Q
        self.phi = np.array(phi, dtype=np.int64)
        self.act_l = np.array(act_l, dtype=np.int64)
        self.act_r = np.array(act_r, dtype=np.int64)
        if self.phi.shape != (C.n,) or self.act_l.shape != (Q.n, C.n) or self.act_r.shape != (C.n, Q.n):
            raise CoupleError("table shapes do not match the component quantales")
        for t in (self.phi, self.act_l, self.act_r):
            t.setflags(write=False)
        self.d = d
        self.name = name

    def __repr__(self):
        return f"Couple({self.name or 'anonymous'}, |C|={self.C.n}, |Q|={self.Q.n})"

    def with_tables(self, **changes) -> "Couple":
        kw = dict(C=self.C, Q=self.Q, phi=self.phi, act_l=self.act_l, act_r=self.act_r, d=self.d, name=self.name)
        kw.update(changes)
        return Couple(**kw)

    @property
    def is_strong(self) -> bool:
        return int(self.phi[self.C.top]) == self.Q.top

    @property
    def is_unital(self) -> bool:
        e = self.Q.unit
        if e is None:
            return False
        idx = np.arange(self.C.n)
        return bool((self.act_l[e] == idx).all() and (self.act_r[:, e] == idx).all())

    def mixed_residuals(self, t: int) -> dict[str, np.ndarray]:
        """Residuals into ``t`` in C, for every element of the opposite component.

        ``q_right[a] = a -> t`` and ``q_left[a] = t <- a`` are elements of C;
        ``c_right[c] = c -> t`` and ``c_left[c] = t <- c`` are elements of Q.
        """
        below_l = self.C.leq[self.act_l, t]  # [a, c]: a.c <= t
        below_r = self.C.leq[self.act_r, t]  # [c, a]: c.a <= t
        return {
            "q_right": self.C.lattice.sup_columns(below_r),
            "q_left": self.C.lattice.sup_columns(below_l.T),
            "c_right": self.Q.lattice.sup_columns(below_l),
            "c_left": self.Q.lattice.sup_columns(below_r.T),
        }

    @cached_property
    def _perp_tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self.d is None:
            raise CoupleError("couple has no designated dualizing element")
        r = self.mixed_residuals(self.d)
        return r["q_right"], r["c_right"]

    def perp_q(self, a: int) -> int:
        """``a -> d`` in C."""
        return int(self._perp_tables[0][a])

    def perp_c(self, c: int) -> int:
        """``c -> d`` in Q."""
        return int(self._perp_tables[1][c])

    @property
    def perp_q_table(self) -> np.ndarray:
        return self._perp_tables[0]

    @property
    def perp_c_table(self) -> np.ndarray:
        return self._perp_tables[1]

    @property
    def neutral(self) -> int:
        """``e = d^perp`` in Q."""
        return self.perp_c(self.d)

    def side(self, s: str) -> Quantale:
        return {"C": self.C, "Q": self.Q}[s]

    def product(self, x: tuple[str, int], y: tuple[str, int]) -> tuple[str, int]:
        (s, a), (t, b) = x, y
        if s == "Q" and t == "Q":
            return "Q", int(self.Q.mul[a, b])
        if s == "Q":
            return "C", int(self.act_l[a, b])
        if t == "Q":
            return "C", int(self.act_r[a, b])
        return "C", int(self.C.mul[a, b])


# --- predicates ---------------------------------------------------------------


def is_cyclic(K: Couple, d: int) -> bool:
    left = K.C.leq[K.act_l, d]
    right = K.C.leq[K.act_r, d]
    return bool((left == right.T).all())


def is_dualizing(K: Couple, d: int) -> bool:
    r = K.mixed_residuals(d)
    iq, ic = np.arange(K.Q.n), np.arange(K.C.n)
    return bool(
        (r["c_left"][r["q_right"]] == iq).all()  # d <- (a -> d) = a
        and (r["c_right"][r["q_left"]] == iq).all()  # (d <- a) -> d = a
        and (r["q_left"][r["c_right"]] == ic).all()  # d <- (c -> d) = c
        and (r["q_right"][r["c_left"]] == ic).all()  # (d <- c) -> d = c
    )


def girard_elements_couple(K: Couple) -> tuple[int, ...]:
    return tuple(d for d in range(K.C.n) if is_cyclic(K, d) and is_dualizing(K, d))


def is_girard(K: Couple) -> bool:
    if K.d is not None and is_cyclic(K, K.d) and is_dualizing(K, K.d):
        return True
    return bool(girard_elements_couple(K))


def perp(K: Couple, z: tuple[str, int]) -> tuple[str, int]:
    side, x = z
    if side == "Q":
        return "C", K.perp_q(x)
    return "Q", K.perp_c(x)


def par(K: Couple, z1: tuple[str, int], z2: tuple[str, int]) -> tuple[str, int]:
    """``z1 par z2 = (z2^perp z1^perp)^perp``."""
    return perp(K, K.product(perp(K, z2), perp(K, z1)))


# --- validation -----------------------------------------------------------------


def validate_couple(K: Couple) -> list[Check]:
    C, Q = K.C, K.Q
    mC, mQ, al, ar, phi = C.mul, Q.mul, K.act_l, K.act_r, K.phi
    jC, jQ = C.lattice.join, Q.lattice.join
    lc, lq = C.labels, Q.labels
    iq = np.arange(Q.n)
    suite = "couple"

    def chk(name, ok, labels, anchor):
        return law(name, ok, labels, anchor=anchor, suite=suite)

    checks = [
        chk("phi preserves joins", (phi[jC] == jQ[phi[:, None], phi[None, :]]) & (phi[C.bottom] == Q.bottom), [lc, lc],
            "sup-homomorphism"),
        chk("left action distributes over joins in Q", al[jQ, :] == jC[al[:, None, :], al[None, :, :]], [lq, lq, lc],
            "bimodule"),
        chk("left action distributes over joins in C", al[:, jC] == jC[al[:, :, None], al[:, None, :]], [lq, lc, lc],
            "bimodule"),
        chk("right action distributes over joins in C", ar[jC, :] == jC[ar[:, None, :], ar[None, :, :]], [lc, lc, lq],
            "bimodule"),
        chk("right action distributes over joins in Q", ar[:, jQ] == jC[ar[:, :, None], ar[:, None, :]], [lc, lq, lq],
            "bimodule"),
        chk("(ab)m = a(bm)", al[mQ, :] == al[iq[:, None, None], al[None, :, :]], [lq, lq, lc], "bimodule"),
        chk("m(ab) = (ma)b", ar[:, mQ] == ar[ar[:, :, None], iq[None, None, :]], [lc, lq, lq], "bimodule"),
        chk("(am)b = a(mb)", ar[al[:, :, None], iq[None, None, :]] == al[iq[:, None, None], ar[None, :, :]],
            [lq, lc, lq], "bimodule"),
        chk("phi(a c) = a phi(c)", phi[al] == mQ[iq[:, None], phi[None, :]], [lq, lc], "bimodule homomorphism"),
        chk("phi(c a) = phi(c) a", phi[ar] == mQ[phi[:, None], iq[None, :]], [lc, lq], "bimodule homomorphism"),
        chk("phi(c1) c2 = c1 c2", al[phi[:, None], np.arange(C.n)[None, :]] == mC, [lc, lc], "coupling identity"),
        chk("c1 phi(c2) = c1 c2", ar[np.arange(C.n)[:, None], phi[None, :]] == mC, [lc, lc], "coupling identity"),
        chk("a(c1 c2) = (a c1)c2", al[:, mC] == mC[al[:, :, None], np.arange(C.n)[None, None, :]], [lq, lc, lc],
            "derived associativity"),
        chk("(c1 c2)a = c1(c2 a)", ar[mC, :] == mC[np.arange(C.n)[:, None, None], ar[None, :, :]], [lc, lc, lq],
            "derived associativity"),
        chk("(c1 a)c2 = c1(a c2)", mC[ar[:, :, None], np.arange(C.n)[None, None, :]]
            == mC[np.arange(C.n)[:, None, None], al[None, :, :]], [lc, lq, lc], "derived associativity"),
        chk("phi(c1 c2) = phi(c1) phi(c2)", phi[mC] == mQ[phi[:, None], phi[None, :]], [lc, lc],
            "phi is a quantale homomorphism"),
    ]
    zero_ok = (al[Q.bottom, :] == C.bottom) & (al[:, C.bottom] == C.bottom).all() \
        & (ar[:, Q.bottom] == C.bottom) & (ar[C.bottom, :] == C.bottom).all()
    checks.insert(5, chk("actions preserve zero", zero_ok, [lc], "bimodule"))
    return checks


def girard_checks(K: Couple) -> list[Check]:
    """Cyclicity and dualizing property of the designated element."""
    if K.d is None:
        return [Check("designated dualizing element", None, witness="none designated", suite="girard")]
    d = K.d
    lab = K.C.labels[d]
    cyc = K.C.leq[K.act_l, d] == K.C.leq[K.act_r, d].T
    out = [law(f"{lab} is cyclic", cyc, [K.Q.labels, K.C.labels], anchor="cyclic element", suite="girard"),
           Check(f"{lab} is dualizing", is_dualizing(K, d), anchor="dualizing element", suite="girard")]
    if out[1].passed is False:
        r = K.mixed_residuals(d)
        bad = [K.Q.labels[a] for a in range(K.Q.n) if r["c_left"][r["q_right"][a]] != a]
        bad += [K.C.labels[c] for c in range(K.C.n) if r["q_left"][r["c_right"][c]] != c]
        out[1].witness = bad[:1]
    return out


# --- constructors -------------------------------------------------------------


def identity_couple(Q: Quantale) -> Couple:
    """``Q -> Q`` by the identity; Girard exactly when Q is."""
    from .quantale import girard_elements

    found = girard_elements(Q)
    return Couple(Q, Q, np.arange(Q.n), Q.mul, Q.mul, d=found[0] if found else None, name=f"id({Q.name})")


def zero_couple(Q: Quantale) -> Couple:
    """``Q^op -> Q`` by the zero map, with residual actions and dualizer ``e'``.

    Indices in ``Q^op`` coincide with those of Q.
    """
    if Q.unit is None:
        raise CoupleError(f"{Q.name or 'quantale'} is not unital")
    Lop = op_dual(Q.lattice)
    C = Quantale(Lop, np.full((Q.n, Q.n), Lop.bottom), name=f"{Q.name}^op")
    act_l = Q.right_residuals  # a.c = (a -> c')'
    act_r = Q.left_residuals.copy()  # c.a = (c' <- a)', stored [c, a]
    return Couple(C, Q, np.full(Q.n, Q.bottom), act_l, act_r, d=Q.unit, name=f"zero({Q.name})")


def product_couple(couples: Sequence[Couple]) -> Couple:
    """Componentwise product; the dualizer is the tuple of dualizers when all exist."""
    Cp, ct = product_quantale([k.C for k in couples], name="prod C")
    Qp, qt = product_quantale([k.Q for k in couples], name="prod Q")
    cpos = {t: i for i, t in enumerate(ct)}
    qpos = {t: i for i, t in enumerate(qt)}
    phi = [qpos[tuple(int(k.phi[c]) for k, c in zip(couples, t))] for t in ct]
    act_l = [[cpos[tuple(int(k.act_l[a, c]) for k, a, c in zip(couples, s, t))] for t in ct] for s in qt]
    act_r = [[cpos[tuple(int(k.act_r[c, a]) for k, c, a in zip(couples, t, s))] for s in qt] for t in ct]
    d = None
    if all(k.d is not None for k in couples):
        d = cpos[tuple(k.d for k in couples)]
    name = " x ".join(k.name for k in couples) or "trivial"
    return Couple(Cp, Qp, phi, np.array(act_l).reshape(Qp.n, Cp.n), np.array(act_r).reshape(Cp.n, Qp.n), d=d,
                  name=name)


def sub_ideal_couple(n: int, k: int) -> Couple:
    """``Sub(kZ_n) -> Sub(Z_n)`` by inclusion, acting by subgroup products."""
    Q = sub_ring_quantale(n)
    C = sub_ideal_quantale(n, k)
    gens_q = sorted((m for m in range(1, n + 1) if n % m == 0), reverse=True)
    gens_c = subgroups_of_ideal(n, k)
    from math import gcd

    qpos = {m: i for i, m in enumerate(gens_q)}
    cpos = {m: i for i, m in enumerate(gens_c)}
    phi = [qpos[m] for m in gens_c]
    act_l = [[cpos[gcd(a * c, n)] for c in gens_c] for a in gens_q]
    act_r = [[cpos[gcd(c * a, n)] for a in gens_q] for c in gens_c]
    return Couple(C, Q, phi, act_l, act_r, name=f"Sub({k}Z{n}) in Sub(Z{n})")


class CsCouple(Couple):
    """The couple ``C(S) -> Q(S)`` with the tensor and endomorphism data kept."""

    tensor: TensorProduct
    endo: EndoQuantale
    base: FiniteLattice


def cs_couple(S: FiniteLattice,
              map_budget: int = DEFAULT_MAP_BUDGET, tensor_budget: int = DEFAULT_TENSOR_BUDGET) -> CsCouple:
    """``S (x) S^op`` with ``(x@y')(u@v') = 0 if u <= y else x@v'``, coupled to Q(S) by
    ``phi(x@y') = rho_x lambda_y`` and dualized by ``d = join_x x@x'``."""
    T = tensor_lattice(S, op_dual(S), tensor_budget)
    E = build_endo_quantale(S, budget=map_budget)
    Q = E.quantale
    n, k = S.n, len(T)
    gen, jC = T.gen, T.lattice.join
    pairs = [T.pairs(c) for c in range(k)]

    def join_gens(items) -> int:
        acc = T.lattice.bottom
        for x, y in items:
            acc = int(jC[acc, gen[x, y]])
        return acc

    # w[c2][y] = meet {v | (u, v) in c2, u not <= y}: the C(S)-product of x@y' with c2 is x@w'
    not_le = ~S.leq  # not_le[u, y]
    w = np.empty((k, n), dtype=np.int64)
    for c in range(k):
        m = T.members(c)
        hit = (not_le.T.astype(np.int32) @ m.astype(np.int32)) > 0  # hit[y, v]
        w[c] = S.inf_columns(hit.T)
    mulC = np.array([[join_gens((x, int(w[c2, y])) for x, y in pairs[c1]) for c2 in range(k)] for c1 in range(k)])
    C = Quantale(T.lattice, mulC, name="C(S)")

    F, A = E.tables, E.adjoints
    act_l = np.array([[join_gens((int(F[a, x]), y) for x, y in pairs[c]) for c in range(k)] for a in range(Q.n)])
    act_r = np.array([[join_gens((x, int(A[a, y])) for x, y in pairs[c]) for a in range(Q.n)] for c in range(k)])
    rl = np.array([[int(Q.mul[E.rho(x), E.lam(y)]) for y in range(n)] for x in range(n)])
    phi = [Q.lattice.join_all(int(rl[x, y]) for x, y in pairs[c]) for c in range(k)]
    d = join_gens((x, x) for x in range(n))
    K = CsCouple(C, Q, phi, act_l, act_r, d=d, name="C(S) -> Q(S)")
    K.tensor, K.endo, K.base = T, E, S
    return K


# --- theorem checks -------------------------------------------------------------


def check_self_adjoint(K: Couple) -> Check:
    """``phi#(c^perp) = phi(c)^perp`` for every c, i.e. ``phi* = phi`` under the dualities."""
    name, anchor = "phi is self-adjoint", "self-adjointness"
    if K.d is None:
        return Check(name, None, anchor=anchor, witness="not a Girard couple", suite="girard")
    below = K.Q.leq[K.phi, :]  # [c, a]: phi(c) <= a
    phi_adj = K.C.lattice.sup_columns(below)  # Q -> C
    for c in range(K.C.n):
        lhs = int(phi_adj[K.perp_c(c)])
        rhs = K.perp_q(int(K.phi[c]))
        if lhs != rhs:
            return Check(name, False, anchor=anchor, witness=K.C.labels[c], suite="girard")
    return Check(name, True, anchor=anchor, suite="girard")


def check_strong_sided_iso(K: Couple) -> list[Check]:
    """``phi`` restricted to sided elements is inverse to ``r -> r.1_C`` and ``l -> 1_C.l``."""
    anchor = "strong couples of semiunital quantales"
    pre = []
    if not K.is_strong:
        pre.append("phi is not strong")
    if not is_semiunital(K.C):
        pre.append("C is not semiunital")
    if not is_semiunital(K.Q):
        pre.append("Q is not semiunital")
    names = ("phi: R(C) ~ R(Q)", "phi: L(C) ~ L(Q)")
    if pre:
        return [Check(n, None, anchor=anchor, witness="; ".join(pre), suite="girard") for n in names]
    sc, sq = sided_sets(K.C), sided_sets(K.Q)
    top_c = K.C.top
    out = []
    for name, rc, rq, back in (
        (names[0], sc.right, sq.right, lambda r: int(K.act_l[r, top_c])),
        (names[1], sc.left, sq.left, lambda l: int(K.act_r[top_c, l])),
    ):
        fwd = lambda c: int(K.phi[c])  # noqa: E731
        why = order_isomorphism_witness(fwd, rc, K.C.leq, rq, K.Q.leq)
        if why is None and any(back(fwd(c)) != c for c in rc):
            why = "multiplying by 1_C does not invert phi"
        if why is None and any(fwd(back(a)) != a for a in rq):
            why = "phi does not invert multiplication by 1_C"
        out.append(Check(name, why is None, anchor=anchor, witness=why, suite="girard"))
    return out


def check_girard_implies(K: Couple) -> list[Check]:
    """A Girard couple is unital; a strong one has von Neumann components."""
    anchor = "Girard couples are unital; strong ones von Neumann"
    if K.d is None:
        return [Check("Girard couple consequences", None, anchor=anchor, witness="no dualizer", suite="girard")]
    e = K.neutral
    idx_q, idx_c = np.arange(K.Q.n), np.arange(K.C.n)
    out = [
        Check("e = d^perp is a unit of Q", bool((K.Q.mul[e] == idx_q).all() and (K.Q.mul[:, e] == idx_q).all()),
              anchor=anchor, witness=K.Q.labels[e], suite="girard"),
        Check("e acts neutrally on C", bool((K.act_l[e] == idx_c).all() and (K.act_r[:, e] == idx_c).all()),
              anchor=anchor, witness=K.Q.labels[e], suite="girard"),
    ]
    if not K.is_strong:
        out.append(Check("strong consequences", None, anchor=anchor, witness="phi is not strong", suite="girard"))
        return out
    for tag, q in (("C", K.C), ("Q", K.Q)):
        why = von_neumann_witness(q)
        out.append(Check(f"{tag} is von Neumann", why is None, anchor=anchor, witness=why, suite="girard"))
    sc = sided_sets(K.C)
    below = [K.C.labels[x] for x in set(sc.right) | set(sc.left) if x != K.C.bottom and K.C.leq[x, K.d]]
    out.append(Check("only 0 is a sided element below d", not below, anchor=anchor, witness=below or None,
                     suite="girard"))
    return out


def check_cs_theorem(K: CsCouple) -> list[Check]:
    """Exact identities of the C(S) -> Q(S) couple: strength, Girard, perp formulas."""
    S, E, T = K.base, K.endo, K.tensor
    Q, n = K.Q, S.n
    anchor = "C(S) -> Q(S) is a strong Girard couple"
    out = [Check("phi is strong", K.is_strong, anchor=anchor, witness=f"phi(1) = {Q.labels[K.phi[K.C.top]]}",
                 suite="girard")]
    out += girard_checks(K)
    jQ, jC = Q.lattice.join, K.C.lattice.join
    bad = None
    for x in range(n):
        for y in range(n):
            g = int(T.gen[x, y])
            a = int(jQ[E.lam(x), E.rho(y)])
            if K.perp_q(a) != g or K.perp_c(g) != a:
                bad = (S.labels[x], S.labels[y])
                break
        if bad:
            break
    out.append(Check("(lambda_x v rho_y)^perp = x@y' and back", bad is None, anchor=anchor, witness=bad,
                     suite="girard"))
    bad_r, bad_l = None, None
    r = K.mixed_residuals(K.d)
    for a in range(Q.n):
        right = K.C.lattice.join_all(int(T.gen[E.adjoints[a, x], x]) for x in range(n))
        left = K.C.lattice.join_all(int(T.gen[x, E.tables[a, x]]) for x in range(n))
        if bad_r is None and int(r["q_right"][a]) != right:
            bad_r = Q.labels[a]
        if bad_l is None and int(r["q_left"][a]) != left:
            bad_l = Q.labels[a]
    out.append(Check("alpha -> d = join_x alpha#(x)@x'", bad_r is None, anchor=anchor, witness=bad_r, suite="girard"))
    out.append(Check("d <- alpha = join_x x@alpha(x)'", bad_l is None, anchor=anchor, witness=bad_l, suite="girard"))
    bad = None
    for x in range(n):
        for y in range(n):
            expect = [x if not S.leq[u, y] else S.bottom for u in range(n)]
            if list(E.tables[int(K.phi[T.gen[x, y]])]) != expect:
                bad = (S.labels[x], S.labels[y])
    out.append(Check("phi(x@y')(u) = x if u not <= y else 0", bad is None, anchor=anchor, witness=bad, suite="girard"))
    return out
