"""The quantale Q(S) of join-preserving endomaps of a finite lattice S."""

from __future__ import annotations

import numpy as np

from .checks import Check
from .lattice import DEFAULT_MAP_BUDGET, BudgetExceeded, FiniteLattice, enumerate_sup_maps, right_adjoint
from .quantale import Quantale

DEFAULT_ENDO_CAP = 5  # |S| above this needs an explicit budget


class EndoQuantale:
    """Q(S) with maps indexed in enumeration order.

    Order and joins are pointwise, multiplication is composition
    ``(f*g)(x) = f(g(x))`` and the unit is the identity map.
    """

    def __init__(self, base: FiniteLattice, budget: int = DEFAULT_MAP_BUDGET, cap: int | None = DEFAULT_ENDO_CAP):
        if cap is not None and base.n > cap and budget == DEFAULT_MAP_BUDGET:
            raise BudgetExceeded("Q(S) base lattice (pass an explicit budget)", base.n, cap)
        self.base = base
        maps = enumerate_sup_maps(base, base, budget)
        self.tables = np.array([m.table for m in maps], dtype=np.int64).reshape(len(maps), base.n)
        self.maps = maps
        self._index = {m.table: i for i, m in enumerate(maps)}
        F = self.tables
        leq = base.leq[F[:, None, :], F[None, :, :]].all(axis=2)
        labels = ["|".join(base.labels[v] for v in row) for row in F]
        lattice = FiniteLattice(leq, labels)
        k = len(maps)
        mul = np.empty((k, k), dtype=np.int64)
        for i in range(k):
            comp = F[i][F]  # row j: f_i after f_j
            for j in range(k):
                mul[i, j] = self._index[tuple(int(v) for v in comp[j])]
        identity = self._index[tuple(range(base.n))]
        self.quantale = Quantale(lattice, mul, unit=identity, name="Q(S)")
        self.adjoints = np.array([right_adjoint(m) for m in maps], dtype=np.int64).reshape(k, base.n)

    def __len__(self):
        return len(self.maps)

    def index_of(self, table) -> int:
        return self._index[tuple(int(v) for v in table)]

    def rho(self, x: int) -> int:
        """``rho_x``: sends every nonzero element to x."""
        S = self.base
        return self.index_of([S.bottom if y == S.bottom else x for y in range(S.n)])

    def lam(self, x: int) -> int:
        """``lambda_x``: 0 on the down-set of x, 1 elsewhere."""
        S = self.base
        return self.index_of([S.bottom if S.leq[y, x] else S.top for y in range(S.n)])

    def apply(self, alpha: int, x: int) -> int:
        return int(self.tables[alpha, x])


def build_endo_quantale(S: FiniteLattice,
                        budget: int = DEFAULT_MAP_BUDGET, cap: int | None = DEFAULT_ENDO_CAP) -> EndoQuantale:
    return EndoQuantale(S, budget=budget, cap=cap)


def rho(E: EndoQuantale, x: int) -> int:
    return E.rho(x)


def lam(E: EndoQuantale, x: int) -> int:
    return E.lam(x)


def check_decomposition(E: EndoQuantale) -> Check:
    """Every alpha is the meet of ``rho_{alpha(x)} v lambda_x`` and of ``rho_x v lambda_{alpha#(x)}``."""
    Q, S = E.quantale, E.base
    J, M = Q.lattice.join, Q.lattice
    rhos = [E.rho(x) for x in range(S.n)]
    lams = [E.lam(x) for x in range(S.n)]
    for alpha in range(len(E)):
        first = M.meet_all(int(J[rhos[E.tables[alpha, x]], lams[x]]) for x in range(S.n))
        second = M.meet_all(int(J[rhos[x], lams[E.adjoints[alpha, x]]]) for x in range(S.n))
        if first != alpha or second != alpha:
            return Check("decomposition formula", False, witness=Q.labels[alpha], suite="quantale")
    return Check("decomposition formula", True, suite="quantale")
