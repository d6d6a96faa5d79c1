"""Multiplicative cyclic linear logic over finite Girard quantales.

Grammar (loosest first)::

    par    := tensor ('|' tensor)*
    tensor := unary ('*' unary)*
    unary  := '~' unary | atom '^'*
    atom   := name | '1' | 'bot' | '0' | 'top' | '(' par ')'

``⊗`` and ``⅋`` are accepted for ``*`` and ``|``, ``¬`` for ``~``, and
``⊥``/``⊤`` for ``bot``/``top``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

import numpy as np

from .lattice import BudgetExceeded
from .quantale import Quantale, girard_elements, is_cyclic_element, is_dualizing_element

DEFAULT_TAUTOLOGY_BUDGET = 10**6


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Top:
    pass


Formula = Union[Atom, Tensor, Par, Neg, One, Bot, Zero, Top]


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, column: int, text: str = ""):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column  # 1-based
        self.text = text


_ALIASES = {"⊗": "*", "⅋": "|", "¬": "~", "⊥": "bot", "⊤": "top"}
_TOKEN = re.compile(r"\s*(?:(?P<name>[a-z][a-z0-9]*)|(?P<lit>[01])|(?P<op>[~*|()^⊗⅋¬⊥⊤]))")
_KEYWORDS = {"bot": Bot(), "top": Top()}
_LITERALS = {"1": One(), "0": Zero()}


@dataclass(frozen=True)
class _Token:
    kind: str  # name, lit, op, end
    text: str
    column: int


def tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            out.append(_Token("end", "", pos + 1))
            return out
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unknown token {text[pos]!r}", pos + 1, text)
        kind = m.lastgroup
        tok = _ALIASES.get(m.group(kind), m.group(kind))
        start = m.start(kind)
        if tok in _KEYWORDS:
            kind = "lit"
        elif kind == "op" and tok not in "~*|()^":
            kind = "lit"
        out.append(_Token(kind, tok, start + 1))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> _Token:
        return self.toks[self.i]

    def take(self) -> _Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: _Token):
        raise FormulaSyntaxError(msg, tok.column, self.text)

    def parse(self) -> Formula:
        f = self.par()
        if self.peek.kind != "end":
            self.fail(f"unexpected {self.peek.text!r}", self.peek)
        return f

    def par(self) -> Formula:
        f = self.tensor()
        while self.peek.text == "|":
            self.take()
            f = Par(f, self.tensor())
        return f

    def tensor(self) -> Formula:
        f = self.unary()
        while self.peek.text == "*":
            self.take()
            f = Tensor(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek.text == "~":
            self.take()
            return Neg(self.unary())
        f = self.atom()
        while self.peek.text == "^":
            self.take()
            f = Neg(f)
        return f

    def atom(self) -> Formula:
        t = self.take()
        if t.kind == "name":
            return Atom(t.text)
        if t.kind == "lit":
            return _KEYWORDS.get(t.text) or _LITERALS[t.text]
        if t.text == "(":
            f = self.par()
            close = self.take()
            if close.text != ")":
                self.fail("expected ')'" if close.kind != "end" else "unexpected end of input, expected ')'", close)
            return f
        if t.kind == "end":
            self.fail("unexpected end of input", t)
        self.fail(f"unexpected {t.text!r}", t)


def parse(text: str) -> Formula:
    return _Parser(text).parse()


_PREC = {Par: 1, Tensor: 2, Neg: 3}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 4)


def to_text(f: Formula) -> str:
    """Print with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, (One, Zero, Bot, Top)):
        return {One: "1", Zero: "0", Bot: "bot", Top: "top"}[type(f)]
    if isinstance(f, Neg):
        inner = to_text(f.body)
        return "~" + (f"({inner})" if _prec(f.body) < 3 else inner)
    op = " * " if isinstance(f, Tensor) else " | "
    p = _prec(f)
    left = to_text(f.left)
    right = to_text(f.right)
    if _prec(f.left) < p:
        left = f"({left})"
    if _prec(f.right) <= p:  # left associative
        right = f"({right})"
    return left + op + right


def atoms(f: Formula) -> list[str]:
    """Atom names in order of first appearance."""
    seen: dict[str, None] = {}

    def walk(g):
        if isinstance(g, Atom):
            seen.setdefault(g.name)
        elif isinstance(g, Neg):
            walk(g.body)
        elif isinstance(g, (Tensor, Par)):
            walk(g.left)
            walk(g.right)

    walk(f)
    return list(seen)


def depth(f: Formula) -> int:
    if isinstance(f, Neg):
        return 1 + depth(f.body)
    if isinstance(f, (Tensor, Par)):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def formulas_up_to(d: int, names: tuple[str, ...] = ("a", "b")) -> Iterator[Formula]:
    """Every formula over ``names`` (no constants) of depth at most d."""
    level = [Atom(n) for n in names]
    seen = list(level)
    yield from level
    for _ in range(d):
        nxt = [Neg(f) for f in seen]
        nxt += [op(f, g) for op in (Tensor, Par) for f in seen for g in seen]
        fresh = [f for f in nxt if f not in set(seen)]
        seen = list(dict.fromkeys(seen + fresh))
        yield from dict.fromkeys(fresh)


def random_formula(rng, max_depth: int = 5, names: tuple[str, ...] = ("a", "b", "c", "x1")) -> Formula:
    if max_depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.8:
            return Atom(names[int(rng.integers(len(names)))])
        return (One(), Bot(), Zero(), Top())[int(rng.integers(4))]
    k = int(rng.integers(3))
    if k == 0:
        return Neg(random_formula(rng, max_depth - 1, names))
    op = Tensor if k == 1 else Par
    return op(random_formula(rng, max_depth - 1, names), random_formula(rng, max_depth - 1, names))


# --- semantics -----------------------------------------------------------------


class GirardModel:
    """A finite quantale with a designated cyclic dualizing element."""

    def __init__(self, quantale: Quantale, d: int | None = None, name: str = ""):
        if d is None:
            found = girard_elements(quantale)
            if not found:
                raise ValueError(f"{quantale.name or 'quantale'} has no cyclic dualizing element")
            d = found[0]
        if not (is_cyclic_element(quantale, d) and is_dualizing_element(quantale, d)):
            raise ValueError(f"{quantale.labels[d]} is not cyclic and dualizing")
        self.quantale = quantale
        self.d = int(d)
        self.name = name or quantale.name
        self.perp = quantale.right_residuals[:, self.d]
        # a Girard quantale is unital with e = d^perp
        self.unit = int(quantale.unit) if quantale.unit is not None else int(self.perp[self.d])

    def __repr__(self):
        return f"GirardModel({self.name}, n={self.quantale.n})"

    @property
    def n(self) -> int:
        return self.quantale.n

    def element(self, ref) -> int:
        if isinstance(ref, (int, np.integer)):
            if not 0 <= ref < self.n:
                raise ValueError(f"element index {ref} out of range")
            return int(ref)
        return self.quantale.lattice.index(ref)

    def evaluate(self, f: Formula, valuation: Mapping[str, object]):
        """Value of ``f``; valuation entries may be indices, labels or integer arrays."""
        Q = self.quantale
        mul, perp = Q.mul, self.perp

        def ev(g):
            if isinstance(g, Atom):
                if g.name not in valuation:
                    raise KeyError(f"atom {g.name!r} has no value")
                v = valuation[g.name]
                return np.asarray(v) if isinstance(v, np.ndarray) else self.element(v)
            if isinstance(g, One):
                return self.unit
            if isinstance(g, Bot):
                return self.d
            if isinstance(g, Zero):
                return Q.bottom
            if isinstance(g, Top):
                return Q.top
            if isinstance(g, Neg):
                return perp[ev(g.body)]
            x, y = ev(g.left), ev(g.right)
            if isinstance(g, Tensor):
                return mul[x, y]
            return perp[mul[perp[y], perp[x]]]  # (y^perp x^perp)^perp

        out = ev(f)
        return int(out) if np.ndim(out) == 0 else out

    def is_valid(self, f: Formula, valuation: Mapping[str, object]) -> bool:
        return bool(self.quantale.leq[self.unit, self.evaluate(f, valuation)])

    def valuations(self, names, budget: int = DEFAULT_TAUTOLOGY_BUDGET) -> dict[str, np.ndarray]:
        """All valuations of ``names`` as flat parallel arrays."""
        count = self.n ** len(names)
        if count > budget:
            raise BudgetExceeded("valuations", count, budget)
        if not names:
            return {}
        grids = np.meshgrid(*[np.arange(self.n)] * len(names), indexing="ij")
        return {a: g.ravel() for a, g in zip(names, grids)}

    def counterexample(self, f: Formula, budget: int = DEFAULT_TAUTOLOGY_BUDGET) -> dict[str, str] | None:
        """A falsifying valuation (by labels), or None if ``f`` is a tautology."""
        names = atoms(f)
        vals = self.valuations(names, budget)
        if not names:
            return None if self.is_valid(f, {}) else {}
        ok = self.quantale.leq[self.unit, self.evaluate(f, vals)]
        bad = np.flatnonzero(~ok)
        if bad.size == 0:
            return None
        i = int(bad[0])
        return {a: self.quantale.labels[int(vals[a][i])] for a in names}

    def is_tautology(self, f: Formula, budget: int = DEFAULT_TAUTOLOGY_BUDGET) -> bool:
        return self.counterexample(f, budget) is None

    def equivalent(self, f: Formula, g: Formula, budget: int = DEFAULT_TAUTOLOGY_BUDGET) -> dict[str, str] | None:
        """A valuation where f and g differ, or None if they agree everywhere."""
        names = list(dict.fromkeys(atoms(f) + atoms(g)))
        vals = self.valuations(names, budget)
        x = np.broadcast_to(self.evaluate(f, vals), (self.n ** len(names),))
        y = np.broadcast_to(self.evaluate(g, vals), (self.n ** len(names),))
        bad = np.flatnonzero(x != y)
        if bad.size == 0:
            return None
        i = int(bad[0])
        return {a: self.quantale.labels[int(vals[a][i])] for a in names}


def parse_assignment(text: str) -> dict[str, str]:
    """``"a=x,b=y"`` -> ``{"a": "x", "b": "y"}``."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise ValueError(f"bad assignment {part!r}; expected name=element")
        out[name.strip()] = value.strip()
    return out
