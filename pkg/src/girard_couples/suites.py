"""Verification suites as run by ``girard-couples check``.

Each suite takes a loaded object (lattice, quantale, couple or Girard
quantale built from a couple) and returns checks plus informational facts.
A lattice S stands for the couple C(S) -> Q(S) in the couple and Girard
suites, and for Q(S) in the quantale suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checks import Check, law
from .construction import (
    GirardQuantale,
    build_G,
    check_convolution,
    check_G_of_S,
    check_restriction_of_scalars,
    check_sided_chain,
    verify_G,
)
from .couple import (
    Couple,
    CsCouple,
    check_cs_theorem,
    check_girard_implies,
    check_self_adjoint,
    check_strong_sided_iso,
    cs_couple,
    girard_checks,
    girard_elements_couple,
    identity_couple,
    is_girard,
    validate_couple,
    zero_couple,
)
from .endo import build_endo_quantale, check_decomposition
from .lattice import DEFAULT_MAP_BUDGET, FiniteLattice, distributivity_witness
from .quantale import (
    Quantale,
    check_annulator_perp,
    cyclic_witness,
    dualizing_witness,
    girard_elements,
    is_semiunital,
    quantale_law_checks,
    sided_sets,
    von_neumann_witness,
)
from .tensor import DEFAULT_TENSOR_BUDGET

SUITES = ("lattice", "quantale", "couple", "girard")


@dataclass
class Subject:
    """What a suite runs on; ``dualizer`` and ``neg`` only come from quantale files."""

    kind: str  # lattice, quantale, couple, model
    obj: object
    name: str = ""
    dualizer: int | None = None
    neg: dict[int, int] | None = None
    map_budget: int = DEFAULT_MAP_BUDGET
    tensor_budget: int = DEFAULT_TENSOR_BUDGET
    _cache: dict = field(default_factory=dict)

    def cs(self) -> CsCouple:
        if "cs" not in self._cache:
            self._cache["cs"] = cs_couple(self.obj, map_budget=self.map_budget, tensor_budget=self.tensor_budget)
        return self._cache["cs"]


@dataclass
class SuiteResult:
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)


def _prefix(checks, tag: str) -> list[Check]:
    for c in checks:
        c.name = f"{tag}: {c.name}"
    return checks


# --- lattice -------------------------------------------------------------------


def lattice_checks(L: FiniteLattice) -> list[Check]:
    leq, J, M = L.leq, L.join, L.meet
    lab = [L.labels]
    idx = np.arange(L.n)
    s, an = "lattice", "finite lattice"
    ub = leq[idx[:, None], J] & leq[idx[None, :], J]  # a, b <= a v b
    # a v b is below every common upper bound
    least = ~(leq[:, None, :] & leq[None, :, :]) | leq[J[:, :, None], idx[None, None, :]]
    lb = leq[M, idx[:, None]] & leq[M, idx[None, :]]
    greatest = ~(leq.T[:, None, :] & leq.T[None, :, :]) | leq[idx[None, None, :], M[:, :, None]]
    return [
        law("reflexive", np.diag(leq), lab, anchor=an, suite=s),
        law("antisymmetric", ~(leq & leq.T) | (idx[:, None] == idx[None, :]), lab * 2, anchor=an, suite=s),
        law("transitive", ~(leq[:, :, None] & leq[None, :, :]) | leq[:, None, :], lab * 3, anchor=an, suite=s),
        law("a v b is an upper bound", ub, lab * 2, anchor=an, suite=s),
        law("a v b is the least upper bound", least, lab * 3, anchor=an, suite=s),
        law("a & b is a lower bound", lb, lab * 2, anchor=an, suite=s),
        law("a & b is the greatest lower bound", greatest, lab * 3, anchor=an, suite=s),
        law("bottom and top", leq[L.bottom, :] & leq[:, L.top], lab, anchor=an, suite=s),
    ]


def lattice_info(L: FiniteLattice) -> dict:
    w = distributivity_witness(L)
    info = {"size": L.n, "distributive": w is None, "join-irreducibles": [L.labels[j] for j in L.join_irreducibles()]}
    if w is not None:
        info["distributivity witness"] = [L.labels[x] for x in w]
    return info


def _lattices(subj: Subject) -> list[tuple[str, FiniteLattice]]:
    if subj.kind == "lattice":
        return [("", subj.obj)]
    if subj.kind == "quantale":
        return [("", subj.obj.lattice)]
    if subj.kind == "couple":
        return [("C", subj.obj.C.lattice), ("Q", subj.obj.Q.lattice)]
    return [("", subj.obj.quantale.lattice)]


def run_lattice(subj: Subject) -> SuiteResult:
    r = SuiteResult()
    for tag, L in _lattices(subj):
        checks = lattice_checks(L)
        r.checks += _prefix(checks, tag) if tag else checks
        info = lattice_info(L)
        r.info.update({f"{tag} {k}".strip(): v for k, v in info.items()})
    return r


# --- quantale ------------------------------------------------------------------


def quantale_info(Q: Quantale) -> dict:
    s = sided_sets(Q)
    lab = Q.labels
    return {
        "size": Q.n,
        "unit": lab[Q.unit] if Q.unit is not None else None,
        "right-sided": [lab[x] for x in s.right],
        "left-sided": [lab[x] for x in s.left],
        "semiunital": is_semiunital(Q),
        "von Neumann": von_neumann_witness(Q) is None,
        "girard elements": [lab[x] for x in girard_elements(Q)],
    }


def _quantale_laws(Q: Quantale) -> list[Check]:
    return quantale_law_checks(Q.lattice, Q.mul, Q.unit)


def _quantales(subj: Subject) -> list[tuple[str, Quantale]]:
    if subj.kind == "quantale":
        return [("", subj.obj)]
    if subj.kind == "couple":
        return [("C", subj.obj.C), ("Q", subj.obj.Q)]
    if subj.kind == "model":
        return [("", subj.obj.quantale)]
    return []


def run_quantale(subj: Subject) -> SuiteResult:
    r = SuiteResult()
    if subj.kind == "lattice":
        E = build_endo_quantale(subj.obj, budget=subj.map_budget)
        r.checks += _prefix(_quantale_laws(E.quantale), "Q(S)")
        r.checks.append(check_decomposition(E))
        r.info["Q(S) size"] = E.quantale.n
        r.info["Q(S) girard elements"] = [E.quantale.labels[x] for x in girard_elements(E.quantale)]
        return r
    for tag, Q in _quantales(subj):
        checks = _quantale_laws(Q)
        r.checks += _prefix(checks, tag) if tag else checks
        if not any(c.failed for c in checks):
            r.info.update({f"{tag} {k}".strip(): v for k, v in quantale_info(Q).items()})
    return r


def _laws_hold(Q: Quantale) -> bool:
    return not any(c.failed for c in _quantale_laws(Q))


# --- couple --------------------------------------------------------------------


def run_couple(subj: Subject) -> SuiteResult:
    r = SuiteResult()
    if subj.kind == "couple":
        r.checks += validate_couple(subj.obj)
        K = subj.obj
        r.info.update({"|C|": K.C.n, "|Q|": K.Q.n, "strong": K.is_strong, "unital": K.is_unital})
        return r
    if subj.kind == "lattice":
        K = subj.cs()
        r.checks += _prefix(validate_couple(K), "C(S) -> Q(S)")
        r.info.update({"|C(S)|": K.C.n, "|Q(S)|": K.Q.n})
        return r
    if subj.kind == "model":
        G: GirardQuantale = subj.obj
        r.checks += _prefix(validate_couple(G.couple), "underlying couple")
        r.checks.append(check_restriction_of_scalars(G.couple, G))
        r.checks[-1].suite = "couple"
        return r
    Q = subj.obj
    if not _laws_hold(Q):
        r.checks.append(Check("identity and zero couples", None, witness="quantale laws fail", suite="couple"))
        return r
    r.checks += _prefix(validate_couple(identity_couple(Q)), "identity couple")
    if Q.unit is not None:
        r.checks += _prefix(validate_couple(zero_couple(Q)), "zero couple")
    return r


# --- girard --------------------------------------------------------------------


def _girard_quantale_checks(Q: Quantale, d: int | None, neg=None) -> tuple[list[Check], dict]:
    lab = Q.labels
    found = girard_elements(Q)
    info = {"girard elements": [lab[x] for x in found]}
    if d is None:
        if not found:
            why = f"none of the {Q.n} elements is both cyclic and dualizing"
            return [Check("has a cyclic dualizing element", False, anchor="Girard quantale", witness=why,
                          suite="girard")], info
        d = found[0]
    cyc, dual = cyclic_witness(Q, d), dualizing_witness(Q, d)
    out = [
        Check(f"{lab[d]} is cyclic", cyc is None, anchor="cyclic element", witness=cyc, suite="girard"),
        Check(f"{lab[d]} is dualizing", dual is None, anchor="dualizing element", witness=dual, suite="girard"),
    ]
    if cyc is None and dual is None:
        if neg:
            perp = Q.right_residuals[:, d]
            bad = [lab[a] for a, na in neg.items() if perp[a] != na]
            out.append(Check("declared negation is a -> d", not bad, anchor="Girard negation",
                             witness=bad[:1] or None, suite="girard"))
        out += check_annulator_perp(Q, d)
    return out, info


def _girard_couple_checks(K: Couple) -> tuple[list[Check], dict]:
    info = {}
    out = girard_checks(K)
    if K.d is None:
        found = girard_elements_couple(K)
        info["couple girard elements"] = [K.C.labels[x] for x in found]
        if not found:
            return out, info
        K = K.with_tables(d=found[0])
        out = girard_checks(K)
    if any(c.failed for c in out):
        return out, info
    out.append(check_self_adjoint(K))
    out += check_girard_implies(K)
    out += check_strong_sided_iso(K)
    G = build_G(K)
    info["|G|"] = G.n
    out += verify_G(G)
    out.append(check_convolution(G))
    out += check_sided_chain(K, G)
    out.append(check_restriction_of_scalars(K, G))
    if isinstance(K, CsCouple):
        out += check_cs_theorem(K)
        out += check_G_of_S(G)
    return out, info


def run_girard(subj: Subject) -> SuiteResult:
    r = SuiteResult()
    if subj.kind == "quantale":
        Q = subj.obj
        if not _laws_hold(Q):
            r.checks.append(Check("Girard structure", None, witness="quantale laws fail", suite="girard"))
            return r
        r.checks, r.info = _girard_quantale_checks(Q, subj.dualizer, subj.neg)
        return r
    if subj.kind == "couple":
        K = subj.obj
        if not (_laws_hold(K.C) and _laws_hold(K.Q)) or any(c.failed for c in validate_couple(K)):
            r.checks.append(Check("Girard structure", None, witness="couple axioms fail", suite="girard"))
            return r
        r.checks, r.info = _girard_couple_checks(K)
        return r
    if subj.kind == "lattice":
        S = subj.obj
        E = subj.cs().endo
        found = girard_elements(E.quantale)
        r.info["distributive"] = distributivity_witness(S) is None
        r.info["Q(S) girard elements"] = [E.quantale.labels[x] for x in found]
        r.checks, info = _girard_couple_checks(subj.cs())
        r.info.update(info)
        return r
    G: GirardQuantale = subj.obj
    checks, info = _girard_quantale_checks(G.quantale, G.dualizer)
    r.checks = checks + verify_G(G) + [check_convolution(G)]
    r.info.update(info)
    return r


RUNNERS = {"lattice": run_lattice, "quantale": run_quantale, "couple": run_couple, "girard": run_girard}


def run_suites(subj: Subject, suites) -> SuiteResult:
    out = SuiteResult()
    for s in suites:
        r = RUNNERS[s](subj)
        out.checks += r.checks
        out.info.update({f"{s}: {k}": v for k, v in r.info.items()})
    return out
