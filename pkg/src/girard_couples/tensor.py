"""Tensor products of finite sup-lattices, represented by bi-ideals.

An element of ``S (x) T`` is a subset of ``S x T`` that is down-closed,
closed under joins in each slot separately, and contains every pair with a
zero coordinate.  The generator ``x (x) y`` is the least such set containing
``(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import BudgetExceeded, FiniteLattice, op_dual

DEFAULT_TENSOR_BUDGET = 400


@dataclass(frozen=True, eq=False)
class BiIdeal:
    S: FiniteLattice
    T: FiniteLattice
    members: np.ndarray  # bool |S| x |T|

    @property
    def key(self) -> bytes:
        return self.members.tobytes()

    def __eq__(self, other):
        return isinstance(other, BiIdeal) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __contains__(self, pair) -> bool:
        return bool(self.members[pair])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(s), int(t)) for s, t in np.argwhere(self.members)]

    def __le__(self, other: BiIdeal) -> bool:
        return not (self.members & ~other.members).any()


def closure(S: FiniteLattice, T: FiniteLattice, members) -> np.ndarray:
    """Least bi-ideal containing ``members`` (fixpoint of the closure rules)."""
    R = np.array(members, dtype=bool).reshape(S.n, T.n)
    R[S.bottom, :] = True
    R[:, T.bottom] = True
    lS, lT = S.leq.astype(np.int32), T.leq.astype(np.int32)
    while True:
        new = (lS @ R.astype(np.int32) @ lT.T) > 0
        cols = S.sup_columns(new)  # join of each T-column
        new[cols, np.arange(T.n)] = True
        rows = T.sup_columns(new.T)
        new[np.arange(S.n), rows] = True
        if (new == R).all():
            return R
        R = new


def generator(S: FiniteLattice, T: FiniteLattice, x: int, y: int) -> BiIdeal:
    R = np.zeros((S.n, T.n), dtype=bool)
    R[x, y] = True
    return BiIdeal(S, T, closure(S, T, R))


class TensorProduct:
    """``S (x) T`` with its bi-ideals in a fixed order and a generator table.

    ``gen[x, y]`` is the lattice index of ``x (x) y``.
    """

    def __init__(self, S: FiniteLattice, T: FiniteLattice, budget: int = DEFAULT_TENSOR_BUDGET):
        if S.n * T.n > budget:
            raise BudgetExceeded("tensor product pairs", S.n * T.n, budget)
        self.S, self.T = S, T
        gens = {}
        for x in range(S.n):
            for y in range(T.n):
                g = generator(S, T, x, y).members
                gens[(x, y)] = g
        distinct = {g.tobytes(): g for g in gens.values()}
        bottom = closure(S, T, np.zeros((S.n, T.n), dtype=bool))
        found = {bottom.tobytes(): bottom}
        frontier = [bottom]
        while frontier:
            nxt = []
            for I in frontier:
                for g in distinct.values():
                    J = closure(S, T, I | g)
                    k = J.tobytes()
                    if k not in found:
                        found[k] = J
                        nxt.append(J)
            frontier = nxt
        ideals = sorted(found.values(), key=lambda m: (int(m.sum()), m.tobytes()))
        self.ideals = [BiIdeal(S, T, m) for m in ideals]
        self._index = {m.tobytes(): i for i, m in enumerate(ideals)}
        flat = np.array([m.ravel() for m in ideals])
        leq = (flat.astype(np.int32) @ (~flat).T.astype(np.int32)) == 0
        self.lattice = FiniteLattice(leq, [self._label(m) for m in ideals])
        self.gen = np.array([[self._index[gens[(x, y)].tobytes()] for y in range(T.n)] for x in range(S.n)])

    def _label(self, m: np.ndarray) -> str:
        S, T = self.S, self.T
        nz = m.copy()
        nz[S.bottom, :] = False
        nz[:, T.bottom] = False
        pts = [(int(s), int(t)) for s, t in np.argwhere(nz)]
        maximal = [p for p in pts if not any(q != p and S.leq[p[0], q[0]] and T.leq[p[1], q[1]] for q in pts)]
        if not maximal:
            return "0"
        return "+".join(f"{S.labels[s]}@{T.labels[t]}" for s, t in maximal)

    def __len__(self):
        return len(self.ideals)

    def index_of(self, members) -> int:
        return self._index[np.asarray(members, dtype=bool).tobytes()]

    def members(self, i: int) -> np.ndarray:
        return self.ideals[i].members

    def pairs(self, i: int) -> list[tuple[int, int]]:
        return self.ideals[i].pairs()


def tensor_lattice(S: FiniteLattice, T: FiniteLattice, budget: int = DEFAULT_TENSOR_BUDGET) -> TensorProduct:
    return TensorProduct(S, T, budget)


@dataclass(frozen=True)
class EndoDuality:
    """Order-reversing bijection between ``S (x) S^op`` and ``Q(S)``.

    ``to_endo[c]`` is the map paired with bi-ideal ``c`` and ``to_tensor``
    is its inverse.
    """

    to_endo: tuple[int, ...]
    to_tensor: tuple[int, ...]


def tensor_dual_to_endo(S: FiniteLattice, tensor: TensorProduct | None = None, endo=None) -> EndoDuality:
    """Pair ``x (x) y'`` with ``lambda_x v rho_y`` and extend by the perp rule.

    ``c`` goes to the meet of ``lambda_x v rho_y`` over the generators below
    ``c``; a map ``alpha`` goes to the join of those generators whose partner
    lies above ``alpha``.  Raises AssertionError if the two fail to be mutually
    inverse order-reversing bijections.
    """
    from .endo import build_endo_quantale

    C = tensor if tensor is not None else tensor_lattice(S, op_dual(S))
    E = endo if endo is not None else build_endo_quantale(S)
    Q = E.quantale
    partner = np.array([[int(Q.lattice.join[E.lam(x), E.rho(y)]) for y in range(S.n)] for x in range(S.n)])
    to_endo = tuple(Q.lattice.meet_all(partner[x, y] for x, y in C.pairs(c)) for c in range(len(C)))
    to_tensor = tuple(
        C.lattice.join_all(int(C.gen[x, y]) for x in range(S.n) for y in range(S.n) if Q.leq[a, partner[x, y]])
        for a in range(Q.n)
    )
    assert len(C) == Q.n, f"|S (x) S^op| = {len(C)} but |Q(S)| = {Q.n}"
    assert all(to_tensor[to_endo[c]] == c for c in range(len(C))), "tensor -> endo -> tensor is not the identity"
    assert all(to_endo[to_tensor[a]] == a for a in range(Q.n)), "endo -> tensor -> endo is not the identity"
    for c1 in range(len(C)):
        for c2 in range(len(C)):
            assert C.lattice.leq[c1, c2] == Q.leq[to_endo[c2], to_endo[c1]], "pairing does not reverse order"
    return EndoDuality(to_endo, to_tensor)
