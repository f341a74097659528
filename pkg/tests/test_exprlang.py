from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdk import cdcore
from cdk.cdcore import Element
from cdk.exprlang import (
    Add,
    BasisRef,
    Call,
    EvalError,
    Mul,
    Name,
    Neg,
    ParseError,
    RationalLit,
    Repl,
    Sub,
    eval_text,
    format_element,
    format_value,
    parse,
)

from .conftest import same_level


def e(i, n, c=1):
    return Element.basis(i, n, c)


# -- parsing -----------------------------------------------------------------------

def test_parse_examples():
    assert parse("e1*e2") == Mul(BasisRef(1), BasisRef(2))
    assert parse("assoc(e1,e2,e4)") == Call("assoc", (BasisRef(1), BasisRef(2), BasisRef(4)))
    assert parse("-1/2*x") == Mul(Neg(RationalLit(F(1, 2))), Name("x"))
    assert parse("a - b + c") == Add(Sub(Name("a"), Name("b")), Name("c"))


def test_product_groups_left():
    assert parse("a*b*c") == Mul(Mul(Name("a"), Name("b")), Name("c"))


def test_unclosed_parenthesis_is_located():
    with pytest.raises(ParseError) as info:
        parse("a*(b*c")
    assert info.value.offset == 6
    assert info.value.expected == (")",)


@pytest.mark.parametrize("text,offset", [
    ("", 0), ("e1 +", 4), ("1/0", 0), ("e1 $ e2", 3), ("f(e1,", 5), ("(e1))", 4), ("3 4", 2),
])
def test_syntax_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert "offset" in str(info.value)


def test_deep_nesting_is_a_syntax_error():
    with pytest.raises(ParseError, match="deeply"):
        parse("(" * 5000 + "e1" + ")" * 5000)
    with pytest.raises(ParseError):
        parse("-" * 5000 + "e1")


@given(st.text(alphabet="e0123456789/+-*(), abconjtilde_", max_size=40))
def test_parser_is_total(text):
    try:
        parse(text)
    except ParseError as exc:
        assert 0 <= exc.offset <= len(text)


@given(st.text(max_size=30))
def test_parser_is_total_on_arbitrary_text(text):
    try:
        parse(text)
    except ParseError:
        pass


# -- evaluation ---------------------------------------------------------------------------

def test_eval_examples():
    assert eval_text("e1*e2", 2) == e(3, 2)
    for n in range(5):
        assert eval_text("trace(e0)", n) == 2
    assert not eval_text("assoc(e1,e2,e4)", 3).is_zero()
    with pytest.raises(EvalError, match="out of range"):
        eval_text("assoc(e1,e2,e4)", 2)


def test_scalars_promote_to_real_multiples():
    assert eval_text("2 + e1", 1) == e(0, 1, 2) + e(1, 1)
    assert eval_text("1/2*e3", 2) == e(3, 2, F(1, 2))
    assert eval_text("e3*3", 2) == e(3, 2, 3)
    assert eval_text("2*3 - 1", 2) == 5


def test_calls():
    assert eval_text("conj(3*e0 + 5*e7)", 3) == e(0, 3, 3) + e(7, 3, -5)
    assert eval_text("tilde(e1)", 2) == e(3, 2)
    assert eval_text("norm2(e1 + e10)", 4) == 2
    assert eval_text("inner(e1 + e2, e2)", 3) == 1
    assert eval_text("comm(e1, e2)", 2) == e(3, 2, 2)
    assert eval_text("alt(e1, e2)", 3) is True
    assert eval_text("altstrong(e1 + e10, e4)", 4) is False


def test_eval_errors():
    with pytest.raises(EvalError, match="unknown identifier"):
        eval_text("x", 2)
    with pytest.raises(EvalError, match="unknown function"):
        eval_text("frob(e1)", 2)
    with pytest.raises(EvalError, match="argument"):
        eval_text("inner(e1)", 2)
    with pytest.raises(cdcore.LevelError):
        eval_text("tilde(e0)", 0)
    with pytest.raises(EvalError, match="boolean"):
        eval_text("alt(e1,e2) + e1", 3)


def test_bindings():
    x = e(1, 3) + e(2, 3)
    assert eval_text("x*x", 3, {"x": x}) == -e(0, 3, 2)


# -- formatting ---------------------------------------------------------------------------

def test_format_examples():
    assert format_element(e(3, 3)) == "e3"
    assert format_element(-e(2, 3) + e(5, 3, F(1, 2))) == "-e2 + 1/2*e5"
    assert format_element(Element.zero(2)) == "0"
    assert format_element(e(1, 2, -3) - e(2, 2)) == "-3*e1 - e2"
    assert format_value(True) == "true" and format_value(F(-1, 3)) == "-1/3"


@given(same_level(1, levels=st.integers(1, 5)))
def test_format_round_trip(xs):
    (x,) = xs
    value = eval_text(format_element(x), x.level)
    if not isinstance(value, Element):
        value = Element.scalar(value, x.level)
    assert value == x


# -- semantic agreement on random trees -----------------------------------------------------

UNARY = ("conj", "tilde")
SCALAR = ("trace", "norm2")


def trees(level):
    leaves = st.one_of(
        st.integers(0, (1 << level) - 1).map(BasisRef),
        st.builds(lambda p, q: RationalLit(F(p, q)), st.integers(0, 3), st.integers(1, 2)),
    )

    def extend(children):
        return st.one_of(
            st.builds(Neg, children),
            st.builds(Add, children, children),
            st.builds(Sub, children, children),
            st.builds(Mul, children, children),
            st.builds(lambda f, x: Call(f, (x,)), st.sampled_from(UNARY + SCALAR), children),
            st.builds(lambda x, y: Call("inner", (x, y)), children, children),
            st.builds(lambda x, y: Call("comm", (x, y)), children, children),
            st.builds(lambda x, y, z: Call("assoc", (x, y, z)), children, children, children),
        )
    return st.recursive(leaves, extend, max_leaves=8)


def unparse(t):
    if isinstance(t, RationalLit):
        return str(t.value)
    if isinstance(t, BasisRef):
        return f"e{t.index}"
    if isinstance(t, Neg):
        return f"-({unparse(t.operand)})"
    if isinstance(t, Call):
        return f"{t.name}(" + ", ".join(unparse(a) for a in t.args) + ")"
    op = {Add: "+", Sub: "-", Mul: "*"}[type(t)]
    return f"({unparse(t.left)}) {op} ({unparse(t.right)})"


def reference(t, n):
    """Direct cdcore composition with every value kept as an Element."""
    one = Element.basis(0, n)
    if isinstance(t, RationalLit):
        return one.scale(t.value)
    if isinstance(t, BasisRef):
        return Element.basis(t.index, n)
    if isinstance(t, Neg):
        return -reference(t.operand, n)
    if isinstance(t, Add):
        return reference(t.left, n) + reference(t.right, n)
    if isinstance(t, Sub):
        return reference(t.left, n) - reference(t.right, n)
    if isinstance(t, Mul):
        return cdcore.cd_mul(reference(t.left, n), reference(t.right, n))
    args = [reference(a, n) for a in t.args]
    fn = {"conj": cdcore.conjugate, "tilde": cdcore.tilde, "comm": cdcore.commutator,
          "assoc": cdcore.associator}.get(t.name)
    if fn:
        return fn(*args)
    scalar = {"trace": cdcore.trace, "norm2": cdcore.norm2, "inner": cdcore.inner}[t.name]
    return one.scale(scalar(*args))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), trees(n))))
def test_evaluator_agrees_with_direct_composition(nt):
    n, tree = nt
    value = eval_text(unparse(tree), n)
    if not isinstance(value, Element):
        value = Element.scalar(value, n)
    assert value == reference(tree, n)


# -- REPL ---------------------------------------------------------------------------------

def test_repl_session():
    r = Repl(3)
    assert r.handle("let a = e1 + e2") == "a = e1 + e2"
    assert r.handle("let b = e4") == "b = e4"
    assert r.handle("a*b") == "e5 + e6"
    assert r.handle("norm2(a)") == "2"
    assert r.handle("") == ""
    assert r.handle("a*(b").startswith("error: syntax error at offset 4")
    assert r.handle("zz").startswith("error:")
    assert r.handle("let conj = e1").startswith("error:")
    assert r.handle(":level 2") == "level 2"
    assert r.handle("a").startswith("error: unknown identifier")
    assert r.handle(":level x").startswith("error:")
    assert r.handle(":quit") == "" and r.done
