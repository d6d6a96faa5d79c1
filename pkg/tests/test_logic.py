import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girard_couples import corpus
from girard_couples.lattice import BudgetExceeded
from girard_couples.logic import (
    Atom,
    Bot,
    FormulaSyntaxError,
    GirardModel,
    Neg,
    One,
    Par,
    Tensor,
    Top,
    Zero,
    atoms,
    depth,
    formulas_up_to,
    parse,
    parse_assignment,
    random_formula,
    to_text,
)

a, b, c = Atom("a"), Atom("b"), Atom("c")

formulas = st.recursive(
    st.sampled_from([a, b, c, One(), Bot(), Zero(), Top(), Atom("x1")]),
    lambda sub: st.one_of(
        st.builds(Neg, sub), st.builds(Tensor, sub, sub), st.builds(Par, sub, sub)),
    max_leaves=12,
)


def model(name):
    return GirardModel(*next((Q, d) for n, Q, d in corpus.girard_quantales() if n == name))


def slow_eval(M, f, v):
    """Scalar evaluator with negation found by scanning for the largest x with x a <= d."""
    Q = M.quantale

    def neg(x):
        return Q.lattice.join_all(y for y in range(Q.n) if Q.leq[Q.mul[y, x], M.d])

    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, One):
        return M.unit
    if isinstance(f, Bot):
        return M.d
    if isinstance(f, Zero):
        return Q.bottom
    if isinstance(f, Top):
        return Q.top
    if isinstance(f, Neg):
        return neg(slow_eval(M, f.body, v))
    x, y = slow_eval(M, f.left, v), slow_eval(M, f.right, v)
    if isinstance(f, Tensor):
        return int(Q.mul[x, y])
    return neg(int(Q.mul[neg(y), neg(x)]))


def test_parse_examples():
    assert parse("a * ~a") == Tensor(a, Neg(a))
    assert parse("a | b | c") == Par(Par(a, b), c)
    assert parse("a * (b | 1)") == Tensor(a, Par(b, One()))
    assert parse("a * b | c * a") == Par(Tensor(a, b), Tensor(c, a))
    assert parse("~a * b") == Tensor(Neg(a), b)
    assert parse("a^") == Neg(a)
    assert parse("a ⊗ ¬b ⅋ ⊥") == Par(Tensor(a, Neg(b)), Bot())
    assert parse("bot | top * 0") == Par(Bot(), Tensor(Top(), Zero()))


@pytest.mark.parametrize("text, column", [("a * (", 6), ("a +", 3), ("(a", 3), ("a b", 3), ("", 1), ("A", 1)])
def test_syntax_errors(text, column):
    with pytest.raises(FormulaSyntaxError) as exc:
        parse(text)
    assert exc.value.column == column
    assert f"column {column}" in str(exc.value)


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_round_trip(f):
    assert parse(to_text(f)) == f


def test_printer_minimal_parentheses():
    assert to_text(parse("(a * b) * c")) == "a * b * c"
    assert to_text(parse("a * (b * c)")) == "a * (b * c)"
    assert to_text(parse("~(a | b)")) == "~(a | b)"


def test_helpers():
    f = parse("a * (b | ~a)")
    assert atoms(f) == ["a", "b"]
    assert depth(f) == 3 and depth(a) == 0
    assert len(list(formulas_up_to(1, ("a",)))) == len(set(formulas_up_to(1, ("a",))))
    rng = np.random.default_rng(1)
    assert all(depth(random_formula(rng, max_depth=4)) <= 4 for _ in range(50))
    assert parse_assignment("a=x, b = (1;0')") == {"a": "x", "b": "(1;0')"}
    with pytest.raises(ValueError):
        parse_assignment("a")


@pytest.mark.parametrize("name", ["rosenthal-chain2", "subZ4", "luk3", "GofS-bool2"])
@settings(max_examples=40, deadline=None)
@given(f=formulas, data=st.data())
def test_evaluator_matches_scan(name, f, data):
    M = model(name)
    v = {x: data.draw(st.integers(0, M.n - 1)) for x in ("a", "b", "c", "x1")}
    assert M.evaluate(f, v) == slow_eval(M, f, v)


def test_unit_double_negation_de_morgan():
    M = model("rosenthal-chain2")
    for x, y in itertools.product(range(M.n), repeat=2):
        v = {"a": x, "b": y}
        assert M.evaluate(parse("1 * a"), v) == x
        assert M.evaluate(parse("~~a"), v) == x
        assert M.evaluate(parse("~(a*b)"), v) == M.evaluate(parse("~b | ~a"), v)
    assert M.is_valid(parse("1"), {})


def test_tautologies():
    M = model("rosenthal-chain2")
    assert M.is_tautology(parse("a | ~a"))
    R = model("rosenthal-subZ4")
    cex = R.counterexample(parse("a * ~a"))
    assert cex is not None
    assert not R.is_valid(parse("a * ~a"), cex)


@pytest.mark.parametrize("name", ["rosenthal-chain2", "subZ4", "endo-chain2", "GofS-chain3"])
def test_cyclicity_and_depth_three_negation(name):
    M = model(name)
    Q = M.quantale
    for x, y in itertools.product(range(M.n), repeat=2):
        assert Q.leq[Q.mul[x, y], M.d] == Q.leq[Q.mul[y, x], M.d]
    for f in formulas_up_to(2, ("a", "b")):
        assert M.equivalent(Neg(Neg(f)), f) is None
    for f, g in itertools.product(list(formulas_up_to(1, ("a", "b")))[:12], repeat=2):
        assert M.equivalent(Neg(Tensor(f, g)), Par(Neg(g), Neg(f))) is None


def test_double_negation_depth_three_small_model():
    M = model("rosenthal-chain2")
    count = 0
    for f in formulas_up_to(3, ("a",)):
        assert M.equivalent(Neg(Neg(f)), f) is None
        count += 1
    assert count > 1000


def test_budget_and_bad_model():
    M = model("GofS-N5")
    with pytest.raises(BudgetExceeded):
        M.counterexample(parse("a | b | c"))
    with pytest.raises(ValueError):
        GirardModel(corpus.quantale("frame-chain3"))
