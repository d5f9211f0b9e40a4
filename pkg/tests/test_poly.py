"""Sparse multivariate parameter polynomials and their canonical text."""

import pytest

from isochron import ContextMismatch, ParamPoly, Rat, VarContext, rat


@pytest.fixture
def ctx():
    return VarContext(("a11", "b20", "c1"))


def v(ctx, name):
    return ParamPoly.variable(ctx, name)


def test_difference_of_squares(ctx):
    a, b = v(ctx, "a11"), v(ctx, "b20")
    assert (a + b) * (a - b) == a * a - b * b


def test_multiply_by_zero_annihilates(ctx):
    p = v(ctx, "a11") * 3 + ParamPoly.const(ctx, rat(1, 2))
    z = ParamPoly.zero(ctx)
    assert p * z == z
    assert not (p * z)


def test_product_terms_are_term_convolution(ctx):
    # multiply two explicit polynomials and check the coefficient map
    # against an independently computed convolution of monomials
    a = v(ctx, "a11") + v(ctx, "b20").scale(Rat(2))
    b = v(ctx, "a11") - v(ctx, "c1")
    prod = a * b
    expected = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            key = ka + kb  # packed exponents add under multiplication
            expected[key] = expected.get(key, Rat(0)) + ca * cb
    expected = {k: c for k, c in expected.items() if c != 0}
    assert dict(prod.terms) == expected


def test_addition_is_commutative_and_associative(ctx):
    a, b, c = v(ctx, "a11"), v(ctx, "b20"), v(ctx, "c1")
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a - a == ParamPoly.zero(ctx)


def test_substitute_full(ctx):
    a, b = v(ctx, "a11"), v(ctx, "b20")
    p = a * a - b
    out = p.substitute({"a11": rat(2), "b20": rat(1)})
    assert out.is_constant() and out.constant_value() == 3


def test_substitute_empty_is_identity(ctx):
    p = v(ctx, "a11") * v(ctx, "b20") + ParamPoly.const(ctx, rat(5))
    assert p.substitute({}) == p


def test_substitute_partial(ctx):
    p = v(ctx, "c1") + v(ctx, "b20").scale(rat(1, 3))
    out = p.substitute({"b20": rat(-3, 2)})
    assert out == v(ctx, "c1") - ParamPoly.const(ctx, rat(1, 2))
    assert out.text() == "-1/2 + c1"


def test_text_rendering_is_graded_ascending():
    ctx = VarContext(("b02", "b20", "c1"))
    p = (
        v(ctx, "c1").scale(Rat(-3))
        - v(ctx, "b20").scale(Rat(2))
        - v(ctx, "b02")
    )
    # later-declared names come first among same-degree terms
    assert p.text() == "-3*c1 - 2*b20 - b02"
    q = v(ctx, "b02") * v(ctx, "b02") + v(ctx, "c1") - ParamPoly.const(ctx, rat(1, 4))
    assert q.text() == "-1/4 + c1 + b02^2"


def test_text_zero_and_constants(ctx):
    assert ParamPoly.zero(ctx).text() == "0"
    assert ParamPoly.const(ctx, rat(-7, 3)).text() == "-7/3"
    assert ParamPoly.one(ctx).text() == "1"


def test_equality_against_scalars(ctx):
    assert ParamPoly.const(ctx, rat(4)) == 4
    assert ParamPoly.zero(ctx) == 0
    assert v(ctx, "a11") != 4


def test_degrees_and_variables(ctx):
    p = v(ctx, "a11") * v(ctx, "a11") * v(ctx, "b20") + v(ctx, "c1")
    assert p.total_degree() == 3
    assert p.degree_in("a11") == 2
    assert p.degree_in("c1") == 1
    assert p.variables_used() == {"a11", "b20", "c1"}


def test_context_mismatch_raises(ctx):
    other = VarContext(("a11",))
    with pytest.raises(ContextMismatch):
        v(ctx, "a11") + v(other, "a11")


def test_context_extend_and_relabel(ctx):
    bigger = ctx.extend(("c3",))
    assert bigger.names == ("a11", "b20", "c1", "c3")
    p = v(ctx, "a11") + ParamPoly.const(ctx, rat(1, 2))
    q = p.relabel(bigger)
    assert q.ctx == bigger
    assert q.text() == p.text()
    # redeclaring an existing name is an error, not a silent merge
    with pytest.raises(ValueError):
        ctx.extend(("a11",))


def test_unknown_variable_rejected(ctx):
    with pytest.raises(KeyError):
        ParamPoly.variable(ctx, "nope")


def test_monomial_and_coefficients_in(ctx):
    m = ParamPoly.monomial(ctx, rat(3, 2), {"a11": 2, "b20": 1})
    assert m.text() == "3/2*a11^2*b20"
    p = m + v(ctx, "a11") + ParamPoly.const(ctx, rat(1))
    by_a = p.coefficients_in("a11")
    assert set(by_a) == {0, 1, 2}
    assert by_a[2].text() == "3/2*b20"
    assert by_a[1].text() == "1"
    assert by_a[0].text() == "1"


def test_packing_round_trip():
    ctx = VarContext(("p", "q", "r"))
    key = ctx.pack((3, 0, 7))
    assert ctx.unpack(key) == (3, 0, 7)
    assert ctx.total_degree_of(key) == 10
