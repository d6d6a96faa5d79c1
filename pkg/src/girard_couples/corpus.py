"""Named builtin objects, so every check can run without input files.

Names::

    chain2..chain9, M3, N5, bool2, bool3          lattices
    subZ<n>, luk<n>, frame-<L>, zero-<L>, endo-<L>  quantales (a distributive
                                                  lattice name alone means its frame)
    cs-couple-<L>, identity-<Q>, zero-<Q>, subideal-<n>-<k>   couples
    rosenthal-<Q>, GofS-<L>                       Girard quantales built from couples

``cs-couple-2x2`` is ``cs-couple-bool2``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations

from .construction import GirardQuantale, G_of_S, rosenthal
from .couple import Couple, cs_couple, identity_couple, sub_ideal_couple, zero_couple
from .endo import build_endo_quantale
from .lattice import FiniteLattice, is_completely_distributive, lattice_from_covers
from .quantale import Quantale, chain, frame_quantale, lukasiewicz_chain, sub_ring_quantale, zero_quantale


class UnknownBuiltin(KeyError):
    def __str__(self):
        return f"unknown builtin {self.args[0]!r}"


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of the first k letters; the empty set is labelled ``0``."""
    letters = "abcdefgh"[:k]
    subsets = [frozenset(letters[i] for i in range(k) if mask >> i & 1) for mask in range(1 << k)]
    name = {s: "".join(sorted(s)) or "0" for s in subsets}
    covers = [(name[s], name[s | {x}]) for s in subsets for x in letters if x not in s]
    return lattice_from_covers([name[s] for s in subsets], covers)


def diamond() -> FiniteLattice:
    return lattice_from_covers(["0", "a", "b", "c", "1"],
                               [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


def pentagon() -> FiniteLattice:
    return lattice_from_covers(["0", "a", "b", "c", "1"],
                               [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


LATTICE_NAMES = ("chain2", "chain3", "chain4", "chain5", "M3", "N5", "bool2", "bool3")
CS_LATTICES = ("chain2", "chain3", "chain4", "bool2", "M3", "N5")
QUANTALE_NAMES = ("frame-chain2", "frame-chain3", "frame-chain4", "frame-bool2", "subZ4", "subZ6", "subZ8",
                  "luk3", "luk4", "zero-chain3", "endo-chain2", "endo-chain3", "endo-chain4", "endo-bool2",
                  "endo-M3", "endo-N5")
ROSENTHAL_NAMES = ("rosenthal-chain2", "rosenthal-subZ4", "rosenthal-subZ6")


@lru_cache(maxsize=None)
def lattice(name: str) -> FiniteLattice:
    if m := re.fullmatch(r"chain(\d+)", name):
        n = int(m.group(1))
        if not 1 <= n <= 9:
            raise UnknownBuiltin(name)
        return chain(n)
    if m := re.fullmatch(r"bool(\d)", name):
        return boolean_lattice(int(m.group(1)))
    if name == "M3":
        return diamond()
    if name == "N5":
        return pentagon()
    raise UnknownBuiltin(name)


@lru_cache(maxsize=None)
def quantale(name: str) -> Quantale:
    if m := re.fullmatch(r"subZ(\d+)", name):
        return sub_ring_quantale(int(m.group(1)))
    if m := re.fullmatch(r"luk(\d+)", name):
        return lukasiewicz_chain(int(m.group(1)))
    if m := re.fullmatch(r"(frame|zero|endo)-(.+)", name):
        kind, base = m.groups()
        L = lattice(base)
        if kind == "frame":
            return frame_quantale(L, name=name)
        if kind == "zero":
            return zero_quantale(L, name=name)
        Q = build_endo_quantale(L).quantale
        Q.name = name
        return Q
    try:
        L = lattice(name)
    except UnknownBuiltin:
        raise UnknownBuiltin(name) from None
    if not is_completely_distributive(L):
        raise UnknownBuiltin(f"{name} (not distributive, so not a frame quantale)")
    return frame_quantale(L, name=name)


@lru_cache(maxsize=None)
def couple(name: str) -> Couple:
    if name == "cs-couple-2x2":
        name = "cs-couple-bool2"
    if m := re.fullmatch(r"cs-couple-(.+)", name):
        K = cs_couple(lattice(m.group(1)))
        K.name = name
        return K
    if m := re.fullmatch(r"identity-(.+)", name):
        K = identity_couple(quantale(m.group(1)))
        K.name = name
        return K
    if m := re.fullmatch(r"zero-(.+)", name):
        K = zero_couple(quantale(m.group(1)))
        K.name = name
        return K
    if m := re.fullmatch(r"subideal-(\d+)-(\d+)", name):
        K = sub_ideal_couple(int(m.group(1)), int(m.group(2)))
        K.name = name
        return K
    raise UnknownBuiltin(name)


@lru_cache(maxsize=None)
def girard_model(name: str) -> GirardQuantale:
    if m := re.fullmatch(r"rosenthal-(.+)", name):
        G = rosenthal(quantale(m.group(1)))
    elif m := re.fullmatch(r"GofS-(.+)", name):
        G = G_of_S(lattice(m.group(1)))
    else:
        raise UnknownBuiltin(name)
    G.quantale.name = name
    return G


def resolve(name: str):
    """Look a builtin up in every registry, preferring the most specific kind.

    Returns ``(kind, obj)`` with kind one of lattice, quantale, couple or model.
    """
    for kind, fn in (("model", girard_model), ("couple", couple), ("lattice", lattice), ("quantale", quantale)):
        try:
            return kind, fn(name)
        except UnknownBuiltin:
            continue
    raise UnknownBuiltin(name)


def builtin_names() -> list[str]:
    names = list(LATTICE_NAMES) + list(QUANTALE_NAMES)
    names += [f"cs-couple-{s}" for s in CS_LATTICES] + ["cs-couple-2x2"]
    names += [f"identity-{q}" for q in QUANTALE_NAMES] + [f"zero-{q}" for q in unital_quantale_names()]
    names += ["subideal-6-3", "subideal-8-2"]
    names += list(ROSENTHAL_NAMES) + [f"GofS-{s}" for s in CS_LATTICES]
    return names


def unital_quantale_names() -> list[str]:
    return [q for q in QUANTALE_NAMES if quantale(q).unit is not None]


# --- families used by the acceptance suite -------------------------------------------


def corpus_couples() -> list[Couple]:
    """Identity couples on the corpus quantales, zero couples on the unital ones, and
    the couples C(S) -> Q(S)."""
    out = [couple(f"identity-{q}") for q in QUANTALE_NAMES]
    out += [couple(f"zero-{q}") for q in unital_quantale_names()]
    out += [couple(f"cs-couple-{s}") for s in CS_LATTICES]
    out += [couple("subideal-6-3"), couple("subideal-8-2")]
    return out


def small_couples(limit: int = 6) -> list[Couple]:
    return [K for K in corpus_couples() if K.C.n <= limit and K.Q.n <= limit]


def product_pairs(limit: int = 6) -> list[tuple[Couple, Couple]]:
    """All unordered pairs (with repetition) of small corpus couples."""
    ks = small_couples(limit)
    return list(combinations(ks, 2)) + [(k, k) for k in ks]


def girard_couples() -> list[Couple]:
    from .couple import is_girard

    return [K for K in corpus_couples() if K.d is not None and is_girard(K)]


def girard_quantales() -> list[tuple[str, Quantale, int]]:
    """Every corpus Girard quantale with its dualizer: builtin quantales that have one,
    and the quantales built from couples."""
    from .quantale import girard_elements

    out = []
    for q in QUANTALE_NAMES:
        Q = quantale(q)
        found = girard_elements(Q)
        if found:
            out.append((q, Q, found[0]))
    for name in list(ROSENTHAL_NAMES) + [f"GofS-{s}" for s in CS_LATTICES]:
        G = girard_model(name)
        out.append((name, G.quantale, G.dualizer))
    return out
