"""Plain-text formats for lattices, quantales and couples.

Lattice::

    # comment
    name: chain3
    elements: 0 1 2
    covers: 0<1, 1<2

Quantale: a lattice plus ``mul: a*b=c`` entries (every product must be
given), and optionally ``unit: e``, ``dualizer: d`` and ``neg: a->b`` lines.

Couple: a ``[C]`` block and a ``[Q]`` block, each a quantale, followed by
``phi: c->a``, ``actl: a*c=c'``, ``actr: c*a=c'`` and optionally
``dualizer: d`` (an element of C).

Several entries may share one line, separated by commas.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .couple import Couple
from .lattice import FiniteLattice, LatticeError, lattice_from_covers
from .quantale import Quantale


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = ""):
        where = f"{source or 'input'}:{line}: " if line is not None else (f"{source}: " if source else "")
        super().__init__(where + message)
        self.line = line
        self.message = message


_BAD_LABEL = re.compile(r"[\s,<=*]|->")


@dataclass
class _Block:
    name: str | None = None
    elements: list[str] | None = None
    elements_line: int = 0
    covers: list[tuple[str, str, int]] = field(default_factory=list)
    mul: list[tuple[str, str, str, int]] = field(default_factory=list)
    unit: tuple[str, int] | None = None
    dualizer: tuple[str, int] | None = None
    neg: list[tuple[str, str, int]] = field(default_factory=list)


@dataclass
class Loaded:
    """Result of reading a definition file."""

    kind: str  # lattice, quantale or couple
    lattice: FiniteLattice | None = None
    quantale: Quantale | None = None
    couple: Couple | None = None
    dualizer: int | None = None
    neg: dict[int, int] | None = None
    name: str = ""

    @property
    def obj(self):
        return {"lattice": self.lattice, "quantale": self.quantale, "couple": self.couple}[self.kind]


def _entries(rest: str) -> list[str]:
    return [p.strip() for p in rest.split(",") if p.strip()]


def _split(entry: str, sep: str, lineno: int, what: str) -> tuple[str, str]:
    left, found, right = entry.partition(sep)
    if not found or not left.strip() or not right.strip():
        raise FormatError(f"malformed {what} entry {entry!r}", lineno)
    return left.strip(), right.strip()


def _parse_blocks(text: str) -> tuple[dict[str, _Block], list[tuple[str, str, int]]]:
    """Split into named blocks; couple-level statements are returned separately."""
    blocks: dict[str, _Block] = {"": _Block()}
    current = ""
    couple_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            current = m.group(1)
            if current not in ("C", "Q"):
                raise FormatError(f"unknown block [{current}]; expected [C] or [Q]", lineno)
            if current in blocks:
                raise FormatError(f"block [{current}] appears twice", lineno)
            blocks[current] = _Block()
            continue
        key, colon, rest = line.partition(":")
        if not colon:
            raise FormatError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip().lower()
        rest = rest.strip()
        if key in ("phi", "actl", "actr"):
            couple_lines.append((key, rest, lineno))
            continue
        # after the couple statements start, or outside any block, the dualizer belongs to the couple
        if key == "dualizer" and (couple_lines or current == "") and ("C" in blocks or "Q" in blocks):
            couple_lines.append((key, rest, lineno))
            continue
        b = blocks[current]
        if key == "name":
            b.name = rest
        elif key == "elements":
            if b.elements is not None:
                raise FormatError("elements listed twice", lineno)
            b.elements = rest.split()
            b.elements_line = lineno
            for e in b.elements:
                if _BAD_LABEL.search(e):
                    raise FormatError(f"element name {e!r} contains a reserved character", lineno)
        elif key == "covers":
            for entry in _entries(rest):
                lo, hi = _split(entry, "<", lineno, "cover")
                b.covers.append((lo, hi, lineno))
        elif key == "mul":
            for entry in _entries(rest):
                lhs, c = _split(entry, "=", lineno, "mul")
                a, bb = _split(lhs, "*", lineno, "mul")
                b.mul.append((a, bb, c, lineno))
        elif key == "unit":
            b.unit = (rest, lineno)
        elif key == "dualizer":
            b.dualizer = (rest, lineno)
        elif key == "neg":
            for entry in _entries(rest):
                a, na = _split(entry, "->", lineno, "neg")
                b.neg.append((a, na, lineno))
        else:
            raise FormatError(f"unknown statement {key!r}", lineno)
    return blocks, couple_lines


def _lookup(L: FiniteLattice, label: str, lineno: int) -> int:
    try:
        return L.index(label)
    except (KeyError, ValueError, LatticeError):
        raise FormatError(f"unknown element {label!r}", lineno) from None


def _build_lattice(b: _Block, where: str = "") -> FiniteLattice:
    if b.elements is None:
        raise FormatError(f"missing 'elements:' line{where}")
    if not b.elements:
        raise FormatError(f"empty element list{where}", b.elements_line)
    known = set(b.elements)
    for lo, hi, lineno in b.covers:
        for x in (lo, hi):
            if x not in known:
                raise FormatError(f"unknown element {x!r} in covers", lineno)
    try:
        return lattice_from_covers(b.elements, [(lo, hi) for lo, hi, _ in b.covers])
    except LatticeError as exc:
        line = b.covers[-1][2] if b.covers else b.elements_line
        raise FormatError(f"not a lattice: {exc}", line) from None


def _build_quantale(b: _Block, validate: bool, where: str = "") -> tuple[Quantale, int | None, dict[int, int]]:
    L = _build_lattice(b, where)
    n = L.n
    mul = np.full((n, n), -1, dtype=np.int64)
    for a, bb, c, lineno in b.mul:
        i, j, k = (_lookup(L, x, lineno) for x in (a, bb, c))
        if mul[i, j] >= 0 and mul[i, j] != k:
            raise FormatError(f"conflicting products for {a}*{bb}", lineno)
        mul[i, j] = k
    missing = np.argwhere(mul < 0)
    if len(missing):
        i, j = map(int, missing[0])
        raise FormatError(f"product {L.labels[i]}*{L.labels[j]} is not given ({len(missing)} missing){where}")
    unit = _lookup(L, *b.unit) if b.unit else None
    Q = Quantale(L, mul, unit=unit, name=b.name or "", validate=validate)
    d = _lookup(L, *b.dualizer) if b.dualizer else None
    neg = {_lookup(L, a, ln): _lookup(L, na, ln) for a, na, ln in b.neg}
    return Q, d, neg


def loads(text: str, validate: bool = False, source: str = "") -> Loaded:
    """Parse any of the three formats, detected from the content.

    Quantale laws are only checked when ``validate`` is set, so malformed
    tables can still be loaded and reported on.
    """
    try:
        blocks, couple_lines = _parse_blocks(text)
        if "C" in blocks or "Q" in blocks:
            return _load_couple(blocks, couple_lines, validate)
        top = blocks[""]
        if top.mul:
            Q, d, neg = _build_quantale(top, validate)
            return Loaded("quantale", lattice=Q.lattice, quantale=Q, dualizer=d, neg=neg or None, name=Q.name)
        L = _build_lattice(top)
        return Loaded("lattice", lattice=L, name=top.name or "")
    except FormatError as exc:
        if source:
            raise FormatError(exc.message, exc.line, source) from None
        raise


def _load_couple(blocks, couple_lines, validate: bool) -> Loaded:
    for side in ("C", "Q"):
        if side not in blocks:
            raise FormatError(f"couple is missing its [{side}] block")
    top = blocks[""]
    if top.elements or top.mul or top.covers:
        raise FormatError("lattice statements must appear inside [C] or [Q]")
    C, _, _ = _build_quantale(blocks["C"], validate, " in [C]")
    Q, _, _ = _build_quantale(blocks["Q"], validate, " in [Q]")
    phi = np.full(C.n, -1, dtype=np.int64)
    act_l = np.full((Q.n, C.n), -1, dtype=np.int64)
    act_r = np.full((C.n, Q.n), -1, dtype=np.int64)
    d = None
    for key, rest, ln in couple_lines:
        if key == "dualizer":
            d = _lookup(C.lattice, rest, ln)
            continue
        for entry in _entries(rest):
            if key == "phi":
                c, a = _split(entry, "->", ln, "phi")
                phi[_lookup(C.lattice, c, ln)] = _lookup(Q.lattice, a, ln)
                continue
            lhs, out = _split(entry, "=", ln, key)
            x, y = _split(lhs, "*", ln, key)
            if key == "actl":
                act_l[_lookup(Q.lattice, x, ln), _lookup(C.lattice, y, ln)] = _lookup(C.lattice, out, ln)
            else:
                act_r[_lookup(C.lattice, x, ln), _lookup(Q.lattice, y, ln)] = _lookup(C.lattice, out, ln)
    for what, table in (("phi", phi), ("actl", act_l), ("actr", act_r)):
        if (table < 0).any():
            raise FormatError(f"{what} is not given for every element ({int((table < 0).sum())} missing)")
    name = top.name or ""
    K = Couple(C, Q, phi, act_l, act_r, d=d, name=name)
    return Loaded("couple", lattice=None, quantale=None, couple=K, dualizer=d, name=name)


def load(path: str | Path, validate: bool = False) -> Loaded:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {p}: {exc.strerror}") from None
    return loads(text, validate=validate, source=str(p))


# --- writers -------------------------------------------------------------------


def _check_labels(labels) -> None:
    for lab in labels:
        if _BAD_LABEL.search(lab) or "#" in lab or lab.startswith("["):
            raise ValueError(f"label {lab!r} cannot be written in the text format")


def _lattice_lines(L: FiniteLattice) -> list[str]:
    _check_labels(L.labels)
    lab = L.labels
    covers = ", ".join(f"{lab[a]}<{lab[b]}" for a, b in L.covers())
    lines = ["elements: " + " ".join(lab)]
    if covers:
        lines.append("covers: " + covers)
    return lines


def format_lattice(L: FiniteLattice, name: str = "") -> str:
    head = [f"name: {name}"] if name else []
    return "\n".join(head + _lattice_lines(L)) + "\n"


def _quantale_lines(Q: Quantale, dualizer: int | None = None, neg=None) -> list[str]:
    lab = Q.labels
    lines = _lattice_lines(Q.lattice)
    for a in range(Q.n):
        lines.append("mul: " + ", ".join(f"{lab[a]}*{lab[b]}={lab[Q.mul[a, b]]}" for b in range(Q.n)))
    if Q.unit is not None:
        lines.append(f"unit: {lab[Q.unit]}")
    if dualizer is not None:
        lines.append(f"dualizer: {lab[dualizer]}")
    if neg is not None:
        lines.append("neg: " + ", ".join(f"{lab[a]}->{lab[int(neg[a])]}" for a in range(Q.n)))
    return lines


def format_quantale(Q: Quantale, dualizer: int | None = None, neg=None, name: str = "") -> str:
    name = name or Q.name
    head = [f"name: {name}"] if name else []
    return "\n".join(head + _quantale_lines(Q, dualizer, neg)) + "\n"


def format_couple(K: Couple, name: str = "") -> str:
    C, Q = K.C, K.Q
    lc, lq = C.labels, Q.labels
    name = name or K.name
    lines = [f"name: {name}"] if name else []
    lines += ["[C]"] + _quantale_lines(C) + ["", "[Q]"] + _quantale_lines(Q) + [""]
    lines.append("phi: " + ", ".join(f"{lc[c]}->{lq[K.phi[c]]}" for c in range(C.n)))
    for a in range(Q.n):
        lines.append("actl: " + ", ".join(f"{lq[a]}*{lc[c]}={lc[K.act_l[a, c]]}" for c in range(C.n)))
    for c in range(C.n):
        lines.append("actr: " + ", ".join(f"{lc[c]}*{lq[a]}={lc[K.act_r[c, a]]}" for a in range(Q.n)))
    if K.d is not None:
        lines.append(f"dualizer: {lc[K.d]}")
    return "\n".join(lines) + "\n"
