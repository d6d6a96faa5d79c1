"""Quantales as multiplication tables over finite lattices.

Residual conventions follow the usual adjunctions::

    a*c <= b  iff  c <= b <- a        (residual_left)
    c*a <= b  iff  c <= a -> b        (residual_right)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from .checks import Check, law
from .lattice import FiniteLattice, lattice_from_covers, product_lattice


class QuantaleError(ValueError):
    def __init__(self, check: Check):
        super().__init__(f"{check.name} fails at {check.witness}")
        self.check = check


def _rowwise_law(name: str, n: int, row_ok, labels) -> Check:
    """Check ``row_ok(a)`` (an n x n boolean slice) for every first argument a."""
    for a in range(n):
        ok = row_ok(a)
        if not ok.all():
            b, c = map(int, np.argwhere(~ok)[0])
            return Check(name, False, anchor="quantale", witness=[labels[a], labels[b], labels[c]], suite="quantale")
    return Check(name, True, anchor="quantale", suite="quantale")


def _first_failure(name: str, ok: np.ndarray, axes, anchor: str = "quantale") -> Check:
    """``axes[i]`` gives the labels along axis i of ``ok``."""
    if ok.all():
        return Check(name, True, anchor=anchor, suite="quantale")
    pos = np.argwhere(~ok)[0]
    return Check(name, False, anchor=anchor, witness=[ax[int(i)] for ax, i in zip(axes, pos)], suite="quantale")


def quantale_law_checks(lattice: FiniteLattice, mul: np.ndarray, unit: int | None = None) -> list[Check]:
    """The quantale axioms, exhaustively.

    Distributivity is tested against the join generators (join-irreducibles
    and 0): a map with ``f(x v g) = f(x) v f(g)`` for every generator g
    preserves all binary joins.  Once both distributive laws hold, both
    sides of the associative law preserve joins in each argument, so
    generator triples decide it; otherwise every triple is scanned.
    """
    L, m = lattice, np.asarray(mul)
    J, labs, n = L.join, L.labels, L.n
    gens = sorted(set(L.join_irreducibles()) | {L.bottom})

    def by_generator(name, holds):
        # holds(g)[a, x] is the law at (a, x, g)
        for g in gens:
            ok = holds(g)
            if not ok.all():
                a, x = map(int, np.argwhere(~ok)[0])
                return Check(name, False, anchor="quantale", witness=[labs[a], labs[x], labs[g]], suite="quantale")
        return Check(name, True, anchor="quantale", suite="quantale")

    # a(x v g) = ax v ag and (x v g)a = xa v ga
    dist_left = by_generator("left distributivity", lambda g: m[:, J[:, g]] == J[m, m[:, g][:, None]])
    dist_right = by_generator("right distributivity", lambda g: (m[J[:, g], :] == J[m, m[g, :][None, :]]).T)
    if dist_left.passed and dist_right.passed:
        G = np.array(gens)
        mg = m[np.ix_(G, G)]  # products of generators
        ok = m[mg[:, :, None], G[None, None, :]] == m[G[:, None, None], mg[None, :, :]]
        assoc = _first_failure("associativity", ok, [[labs[g] for g in gens]] * 3)
    else:
        assoc = _rowwise_law("associativity", n, lambda a: m[m[a, :], :] == m[a, m], labs)
    checks = [
        assoc,
        dist_left,
        dist_right,
        law("zero absorption", (m[L.bottom, :] == L.bottom) & (m[:, L.bottom] == L.bottom), [labs],
            anchor="quantale", suite="quantale"),
    ]
    if unit is not None:
        idx = np.arange(n)
        checks.append(law("unit law", (m[unit, :] == idx) & (m[:, unit] == idx), [labs], anchor="unital quantale",
                          suite="quantale"))
    return checks


def find_unit(mul: np.ndarray) -> int | None:
    idx = np.arange(mul.shape[0])
    for e in range(mul.shape[0]):
        if (mul[e, :] == idx).all() and (mul[:, e] == idx).all():
            return e
    return None


class Quantale:
    """A finite quantale; the laws are checked eagerly unless ``validate=False``."""

    def __init__(self, lattice: FiniteLattice, mul, unit: int | None = None, *, name: str = "", validate: bool = True):
        mul = np.array(mul, dtype=np.int64)
        if mul.shape != (lattice.n, lattice.n):
            raise ValueError(f"multiplication table has shape {mul.shape}, expected {(lattice.n, lattice.n)}")
        if mul.min() < 0 or mul.max() >= lattice.n:
            raise ValueError("multiplication table refers to unknown elements")
        mul.setflags(write=False)
        self.lattice = lattice
        self.mul = mul
        self.name = name
        self.validated = validate
        if validate:
            for c in quantale_law_checks(lattice, mul, unit):
                if c.failed:
                    raise QuantaleError(c)
        self.unit = unit if unit is not None else find_unit(mul)

    def __repr__(self):
        return f"Quantale({self.name or 'anonymous'}, n={self.n})"

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def leq(self) -> np.ndarray:
        return self.lattice.leq

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def labels(self) -> tuple[str, ...]:
        return self.lattice.labels

    def _residual_sets_join(self, ok: np.ndarray) -> np.ndarray:
        # ok[c, j] marks {c | c satisfies the j-th inequality}
        if self.validated:
            # join-distributivity makes each set a principal down-set: take its largest member
            return np.argmax(np.where(ok, self.lattice.height[:, None], -1), axis=0)
        return self.lattice.sup_columns(ok)

    @cached_property
    def right_residuals(self) -> np.ndarray:
        """``R[a, b] = a -> b``."""
        out = np.empty((self.n, self.n), dtype=np.int64)
        for a in range(self.n):
            ok = self.leq[self.mul[:, a], :]  # ok[c, b]: c*a <= b
            out[a, :] = self._residual_sets_join(ok)
        return out

    @cached_property
    def left_residuals(self) -> np.ndarray:
        """``L[b, a] = b <- a``."""
        out = np.empty((self.n, self.n), dtype=np.int64)
        for a in range(self.n):
            ok = self.leq[self.mul[a, :], :]  # ok[c, b]: a*c <= b
            out[:, a] = self._residual_sets_join(ok)
        return out

    def residuals_into(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        """``(a -> d, d <- a)`` for every a, without the full residual tables."""
        below = self.leq[self.mul, d]  # below[x, y]: xy <= d
        return self._residual_sets_join(below), self._residual_sets_join(below.T)


def residual_left(Q: Quantale, b: int, a: int) -> int:
    """``b <- a``: the largest c with ``a*c <= b``."""
    return int(Q.left_residuals[b, a])


def residual_right(Q: Quantale, a: int, b: int) -> int:
    """``a -> b``: the largest c with ``c*a <= b``."""
    return int(Q.right_residuals[a, b])


@dataclass(frozen=True)
class SidedSets:
    right: tuple[int, ...]
    left: tuple[int, ...]
    two: tuple[int, ...]


def sided_sets(Q: Quantale) -> SidedSets:
    t = Q.top
    idx = np.arange(Q.n)
    right = Q.leq[Q.mul[idx, t], idx]
    left = Q.leq[Q.mul[t, idx], idx]
    return SidedSets(
        tuple(int(x) for x in np.flatnonzero(right)),
        tuple(int(x) for x in np.flatnonzero(left)),
        tuple(int(x) for x in np.flatnonzero(right & left)),
    )


def is_semiunital(Q: Quantale) -> bool:
    s = sided_sets(Q)
    return all(Q.mul[r, Q.top] == r for r in s.right) and all(Q.mul[Q.top, l] == l for l in s.left)


def von_neumann_witness(Q: Quantale) -> str | None:
    """Why the annulators fail to be a duality between R(Q) and L(Q), or None."""
    s = sided_sets(Q)
    R, L = set(s.right), set(s.left)
    ann_r = {r: int(Q.right_residuals[r, Q.bottom]) for r in R}  # r -> 0
    ann_l = {l: int(Q.left_residuals[Q.bottom, l]) for l in L}  # 0 <- l
    lab = Q.labels
    for r, l in ann_r.items():
        if l not in L:
            return f"{lab[r]} -> 0 = {lab[l]} is not left-sided"
        if ann_l[l] != r:
            return f"0 <- ({lab[r]} -> 0) = {lab[ann_l[l]]} != {lab[r]}"
    for l, r in ann_l.items():
        if r not in R:
            return f"0 <- {lab[l]} = {lab[r]} is not right-sided"
        if ann_r[r] != l:
            return f"(0 <- {lab[l]}) -> 0 = {lab[ann_r[r]]} != {lab[l]}"
    return None


def is_von_neumann(Q: Quantale) -> bool:
    return von_neumann_witness(Q) is None


def is_cyclic_element(Q: Quantale, d: int) -> bool:
    below = Q.leq[Q.mul, d]
    return bool((below == below.T).all())


def is_dualizing_element(Q: Quantale, d: int) -> bool:
    return dualizing_witness(Q, d) is None


def cyclic_witness(Q: Quantale, d: int) -> list[str] | None:
    """A pair (a, b) with exactly one of ``ab``, ``ba`` below d."""
    below = Q.leq[Q.mul, d]
    bad = np.argwhere(below != below.T)
    return [Q.labels[int(i)] for i in bad[0]] if len(bad) else None


def dualizing_witness(Q: Quantale, d: int) -> str | None:
    """An element a with ``d <- (a -> d) != a`` or ``(d <- a) -> d != a``."""
    idx = np.arange(Q.n)
    to_d, d_from = Q.residuals_into(d)
    bad = (d_from[to_d] != idx) | (to_d[d_from] != idx)
    hit = np.flatnonzero(bad)
    return Q.labels[int(hit[0])] if hit.size else None


def unit_witness(Q: Quantale, e: int) -> str | None:
    idx = np.arange(Q.n)
    hit = np.flatnonzero((Q.mul[e] != idx) | (Q.mul[:, e] != idx))
    return Q.labels[int(hit[0])] if hit.size else None


def girard_elements(Q: Quantale) -> tuple[int, ...]:
    """All cyclic dualizing elements of ``Q``."""
    return tuple(d for d in range(Q.n) if is_cyclic_element(Q, d) and is_dualizing_element(Q, d))


def girard_perp(Q: Quantale, d: int) -> np.ndarray:
    """Negation table ``a -> d`` for a designated cyclic dualizing ``d``."""
    return Q.residuals_into(d)[0]


# --- constructors -------------------------------------------------------------


def chain(n: int, prefix: str = "") -> FiniteLattice:
    labels = [f"{prefix}{i}" for i in range(n)]
    return lattice_from_covers(labels, list(zip(labels, labels[1:])))


def frame_quantale(L: FiniteLattice, name: str = "") -> Quantale:
    """Multiplication = meet; only a quantale when ``L`` is distributive."""
    return Quantale(L, L.meet, unit=L.top, name=name)


def zero_quantale(L: FiniteLattice, name: str = "") -> Quantale:
    """Every product is the bottom element."""
    return Quantale(L, np.full((L.n, L.n), L.bottom), name=name)


def lukasiewicz_chain(n: int) -> Quantale:
    """The n-element MV-chain with ``a*b = max(0, a + b - (n-1))``."""
    L = chain(n)
    i = np.arange(n)
    mul = np.maximum(0, i[:, None] + i[None, :] - (n - 1))
    return Quantale(L, mul, unit=n - 1, name=f"luk{n}")


def _subgroup_label(m: int, n: int) -> str:
    if m == n:
        return "0"
    if m == 1:
        return f"Z{n}"
    return f"{m}Z{n}"


def sub_ring_quantale(n: int) -> Quantale:
    """Additive subgroups of Z_n under the subgroup-generated product.

    The subgroup ``mZ_n`` (``m | n``) is stored by its generator ``m``; the
    product of ``mZ_n`` and ``kZ_n`` is ``gcd(mk, n)Z_n``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    gens = sorted((m for m in range(1, n + 1) if n % m == 0), reverse=True)  # n (zero subgroup) first
    return _subgroup_quantale(gens, n, f"subZ{n}")


def _subgroup_quantale(gens: Sequence[int], n: int, name: str) -> Quantale:
    k = len(gens)
    # mZ_n contains jZ_n iff m | j
    leq = np.array([[b % a == 0 for b in gens] for a in gens]).T
    labels = [_subgroup_label(m, n) for m in gens]
    L = FiniteLattice(leq, labels)
    pos = {m: i for i, m in enumerate(gens)}
    mul = np.array([[pos[gcd(a * b, n)] for b in gens] for a in gens])
    return Quantale(L, mul, name=name)


def subgroups_of_ideal(n: int, k: int) -> list[int]:
    """Generators m of the subgroups mZ_n contained in kZ_n."""
    if k < 1 or n % k:
        raise ValueError(f"{k} does not divide {n}")
    return sorted((m for m in range(1, n + 1) if n % m == 0 and m % k == 0), reverse=True)


def sub_ideal_quantale(n: int, k: int) -> Quantale:
    return _subgroup_quantale(subgroups_of_ideal(n, k), n, f"subZ{n}[{k}]")


def product_quantale(factors: Sequence[Quantale], name: str = "") -> tuple[Quantale, list[tuple[int, ...]]]:
    L, tuples = product_lattice([q.lattice for q in factors])
    pos = {t: i for i, t in enumerate(tuples)}
    m = len(tuples)
    mul = np.empty((m, m), dtype=np.int64)
    for i, s in enumerate(tuples):
        for j, t in enumerate(tuples):
            mul[i, j] = pos[tuple(int(q.mul[a, b]) for q, a, b in zip(factors, s, t))]
    unit = None
    if all(q.unit is not None for q in factors):
        unit = pos[tuple(q.unit for q in factors)]
    return Quantale(L, mul, unit=unit, name=name), tuples


def check_annulator_perp(Q: Quantale, d: int) -> list[Check]:
    """Von Neumann property, and ``x^perp`` agreeing with the annulator on sided x."""
    anchor = "Girard negation extends the annulator duality"
    s = sided_sets(Q)
    lab = Q.labels
    why = von_neumann_witness(Q)
    out = [Check("von Neumann", why is None, anchor=anchor, witness=why, suite="girard")]
    bad_r = [lab[r] for r in s.right if Q.right_residuals[r, d] != Q.right_residuals[r, Q.bottom]]
    bad_l = [lab[l] for l in s.left if Q.left_residuals[d, l] != Q.left_residuals[Q.bottom, l]]
    out.append(Check("r^perp = r -> 0 on right-sided r", not bad_r, anchor=anchor, witness=bad_r[:1] or None,
                     suite="girard"))
    out.append(Check("l^perp = 0 <- l on left-sided l", not bad_l, anchor=anchor, witness=bad_l[:1] or None,
                     suite="girard"))
    return out
