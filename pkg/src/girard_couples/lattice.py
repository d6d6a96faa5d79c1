"""Finite complete lattices and join-preserving maps between them.

Elements are dense indices ``0..n-1``; labels are carried along for display
and for the text formats only.  Every finite lattice is complete, so
arbitrary joins reduce to folds of the binary join starting at the bottom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAP_BUDGET = 10**6


class LatticeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Raised when a construction would exceed its configured size budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    rel = rel.copy()
    for k in range(rel.shape[0]):
        rel |= np.outer(rel[:, k], rel[k, :])
    return rel


class FiniteLattice:
    """A finite lattice given by its order relation.

    ``leq[a, b]`` is true iff ``a <= b``.  Join and meet tables are computed
    by a least-upper-bound scan; construction fails with :class:`LatticeError`
    if the relation is not a partial order or some pair lacks a bound.
    """

    def __init__(self, leq, labels: Sequence[str] | None = None):
        leq = np.asarray(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] == 0:
            raise LatticeError("order relation must be a non-empty square matrix")
        n = leq.shape[0]
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise LatticeError(f"{len(labels)} labels for {n} elements")
        if len(set(labels)) != n:
            raise LatticeError("duplicate element labels")
        if not leq.diagonal().all():
            raise LatticeError("order is not reflexive")
        off = leq & leq.T
        np.fill_diagonal(off, False)
        if off.any():
            a, b = map(int, np.argwhere(off)[0])
            raise LatticeError(f"order is not antisymmetric: {labels[a]} and {labels[b]}")
        if (_transitive_closure(leq) != leq).any():
            raise LatticeError("order is not transitive")

        self._set(leq, labels, self._bound_table(leq, labels, "join"), self._bound_table(leq.T, labels, "meet"))

    def _set(self, leq, labels, join, meet) -> None:
        self.n = leq.shape[0]
        self.labels = labels
        self.leq = _frozen(leq)
        self.height = _frozen(leq.sum(axis=0))  # |down-set| of each element
        self.join = _frozen(join)
        self.meet = _frozen(meet)
        self.bottom = int(np.argmin(self.height))
        self.top = int(np.argmax(self.height))
        self._index = {lab: i for i, lab in enumerate(labels)}

    @classmethod
    def from_tables(cls, leq, join, meet, labels: Sequence[str]) -> "FiniteLattice":
        """A lattice whose bounds are already known in closed form, e.g. componentwise in a product.

        Only the quadratic consistency conditions are checked: ``a <= b`` iff
        ``a v b = b`` iff ``a & b = a``.
        """
        leq = np.asarray(leq, dtype=bool)
        join, meet = np.asarray(join, dtype=np.int64), np.asarray(meet, dtype=np.int64)
        labels = tuple(str(x) for x in labels)
        n = leq.shape[0]
        if len(set(labels)) != n:
            raise LatticeError("duplicate element labels")
        idx = np.arange(n)
        if not ((join == idx[None, :]) == leq).all() or not ((meet == idx[:, None]) == leq).all():
            raise LatticeError("join or meet table disagrees with the order")
        L = cls.__new__(cls)
        L._set(leq, labels, join, meet)
        return L

    @staticmethod
    def _bound_table(leq: np.ndarray, labels, kind: str) -> np.ndarray:
        n = leq.shape[0]
        height = leq.sum(axis=0)
        big = n + 1
        out = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            ub = leq[a][None, :] & leq  # ub[b, u]: u bounds both a and b
            cand = np.argmin(np.where(ub, height[None, :], big), axis=1)
            bad = (ub & ~leq[cand]).any(axis=1) | ~ub[np.arange(n), cand]
            if bad.any():
                b = int(np.argmax(bad))
                raise LatticeError(f"{{{labels[a]}, {labels[b]}}} has no {kind}")
            out[a] = cand
        return out

    @classmethod
    def from_covers(cls, elements: Sequence[str], cover_pairs: Iterable[tuple[str, str]]):
        return lattice_from_covers(elements, cover_pairs)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.labels, self.leq.tobytes()))

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, labels={list(self.labels)!r})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LatticeError(f"unknown element {label!r}") from None

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = int(self.join[acc, x])
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = int(self.meet[acc, x])
        return acc

    def sup_columns(self, mask: np.ndarray) -> np.ndarray:
        """Join of ``{i | mask[i, j]}`` for every column ``j``."""
        mask = np.asarray(mask, dtype=bool)
        # u bounds column j iff no i in the column fails i <= u
        viol = mask.T.astype(np.int32) @ (~self.leq).astype(np.int32)
        ub = viol == 0
        return np.argmin(np.where(ub, self.height[None, :], self.n + 1), axis=1)

    def inf_columns(self, mask: np.ndarray) -> np.ndarray:
        """Meet of ``{i | mask[i, j]}`` for every column ``j``."""
        mask = np.asarray(mask, dtype=bool)
        viol = mask.T.astype(np.int32) @ (~self.leq.T).astype(np.int32)
        lb = viol == 0
        return np.argmax(np.where(lb, self.height[None, :], -1), axis=1)

    def sup_mask(self, mask) -> int:
        return int(self.sup_columns(np.asarray(mask, dtype=bool)[:, None])[0])

    def inf_mask(self, mask) -> int:
        return int(self.inf_columns(np.asarray(mask, dtype=bool)[:, None])[0])

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(a, b)`` with ``b`` covering ``a``."""
        strict = self.leq.copy()
        np.fill_diagonal(strict, False)
        two_step = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
        cov = strict & ~two_step
        return [(int(a), int(b)) for a, b in np.argwhere(cov)]

    def join_irreducibles(self) -> list[int]:
        """Elements that are not the join of the elements strictly below them."""
        below = np.full(self.n, self.bottom)
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        for y in range(self.n):
            cols = np.flatnonzero(strict[y])
            below[cols] = self.join[below[cols], y]
        return [x for x in range(self.n) if below[x] != x]


def lattice_from_covers(elements: Sequence[str], cover_pairs: Iterable[tuple[str, str]]) -> FiniteLattice:
    elements = [str(e) for e in elements]
    seen = set()
    for e in elements:
        if e in seen:
            raise LatticeError(f"duplicate element name {e!r}")
        seen.add(e)
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rel = np.eye(n, dtype=bool)
    for lo, hi in cover_pairs:
        if lo not in idx or hi not in idx:
            missing = lo if lo not in idx else hi
            raise LatticeError(f"cover mentions unknown element {missing!r}")
        if lo == hi:
            raise LatticeError(f"cover {lo}<{hi} is a cycle")
        rel[idx[lo], idx[hi]] = True
    rel = _transitive_closure(rel)
    off = rel & rel.T
    np.fill_diagonal(off, False)
    if off.any():
        a, b = map(int, np.argwhere(off)[0])
        raise LatticeError(f"covers contain a cycle through {elements[a]} and {elements[b]}")
    return FiniteLattice(rel, elements)


def _unprime(label: str) -> str:
    return label[:-1] if label.endswith("'") else label + "'"


def op_dual(L: FiniteLattice) -> FiniteLattice:
    """The opposite lattice; labels gain (or lose) a trailing prime."""
    return FiniteLattice(L.leq.T, [_unprime(x) for x in L.labels])


def product_lattice(factors: Sequence[FiniteLattice]) -> tuple[FiniteLattice, list[tuple[int, ...]]]:
    """Cartesian product ordered componentwise, with the tuple for each index."""
    tuples = list(itertools.product(*[range(f.n) for f in factors]))
    if not factors:
        return FiniteLattice(np.ones((1, 1), dtype=bool), ["()"]), tuples
    m = len(tuples)
    leq = np.ones((m, m), dtype=bool)
    arr = np.array(tuples, dtype=np.int64).reshape(m, len(factors))
    for k, f in enumerate(factors):
        leq &= f.leq[arr[:, k][:, None], arr[:, k][None, :]]
    labels = ["(" + ";".join(f.labels[t[k]] for k, f in enumerate(factors)) + ")" for t in tuples]
    return FiniteLattice(leq, labels), tuples


# --- sup-maps ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SupMap:
    """A join-preserving map between finite lattices, stored as an image table."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(x) for x in self.table))
        if len(self.table) != self.source.n:
            raise LatticeError("map table length does not match the source")
        bad = sup_map_violation(self.source, self.target, self.table)
        if bad is not None:
            raise LatticeError(f"map does not preserve joins at {bad}")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, SupMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.table == other.table

    def __hash__(self):
        return hash(self.table)


def sup_map_violation(S: FiniteLattice, T: FiniteLattice, table) -> tuple | None:
    """First witness that ``table`` fails to preserve joins, or None."""
    f = np.asarray(table, dtype=np.int64)
    if f[S.bottom] != T.bottom:
        return ("bottom",)
    bad = f[S.join] != T.join[f[:, None], f[None, :]]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return (S.labels[a], S.labels[b])
    return None


def identity_map(L: FiniteLattice) -> SupMap:
    return SupMap(L, L, tuple(range(L.n)))


def constant_bottom(S: FiniteLattice, T: FiniteLattice) -> SupMap:
    return SupMap(S, T, (T.bottom,) * S.n)


def right_adjoint(f: SupMap) -> tuple[int, ...]:
    """``f#(t) = join {s | f(s) <= t}``; meet-preserving and always defined."""
    S, T = f.source, f.target
    F = np.asarray(f.table)
    mask = T.leq[F, :]  # mask[s, t]: f(s) <= t
    return tuple(int(x) for x in S.sup_columns(mask))


def dual_map(f: SupMap) -> SupMap:
    """The dual ``f*: T^op -> S^op`` with ``f*(t') = f#(t)'``."""
    return SupMap(op_dual(f.target), op_dual(f.source), right_adjoint(f))


def is_strong(f: SupMap) -> bool:
    return f.table[f.source.top] == f.target.top


def distributivity_witness(L: FiniteLattice) -> tuple[int, int, int] | None:
    """First ``(a, b, c)`` with ``a & (b | c) != (a & b) | (a & c)``, if any."""
    M, J = L.meet, L.join
    lhs = M[:, J]  # lhs[a, b, c] = a & (b | c)
    rhs = J[M[:, :, None], M[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        return tuple(int(x) for x in np.argwhere(bad)[0])
    return None


def is_completely_distributive(L: FiniteLattice) -> bool:
    # for finite lattices complete distributivity is binary distributivity
    return distributivity_witness(L) is None


def enumerate_sup_maps(S: FiniteLattice, T: FiniteLattice, budget: int = DEFAULT_MAP_BUDGET) -> list[SupMap]:
    """All join-preserving maps ``S -> T``.

    A sup-map is determined by its values on the join-irreducibles of ``S``;
    candidates are tried in lexicographic order of those values.
    """
    ji = S.join_irreducibles()
    size = T.n ** len(ji)
    if size > budget:
        raise BudgetExceeded("sup-map enumeration", size, budget)
    below = S.leq[ji, :]  # below[k, x]: ji[k] <= x
    out = []
    for images in itertools.product(range(T.n), repeat=len(ji)):
        table = np.empty(S.n, dtype=np.int64)
        for x in range(S.n):
            table[x] = T.join_all(images[k] for k in range(len(ji)) if below[k, x])
        if any(table[ji[k]] != images[k] for k in range(len(ji))):
            continue
        if sup_map_violation(S, T, table) is None:
            out.append(SupMap(S, T, table))
    return out


def is_order_embedding(f, src: Sequence[int], src_leq: np.ndarray, dst_leq: np.ndarray) -> tuple | None:
    """Witness pair where ``x <= y`` and ``f(x) <= f(y)`` disagree, or None."""
    for x in src:
        for y in src:
            if bool(src_leq[x, y]) != bool(dst_leq[f(x), f(y)]):
                return (x, y)
    return None


def order_isomorphism_witness(f, src: Sequence[int], src_leq, dst: Sequence[int], dst_leq) -> str | None:
    """Why ``f`` fails to be an order isomorphism ``src -> dst`` (None if it is one)."""
    image = [f(x) for x in src]
    if sorted(image) != sorted(dst) or len(set(image)) != len(image):
        return f"not a bijection onto the target (image {sorted(set(image))}, target {sorted(dst)})"
    bad = is_order_embedding(f, src, src_leq, dst_leq)
    if bad is not None:
        return f"order disagrees at {bad}"
    return None
