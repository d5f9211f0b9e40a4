"""Randomized algebra property suites.

Each ``run_*_suite`` function below draws its own seeded generator, runs
the requested number of randomized cases, raises ``AssertionError`` on
the first violated identity, and returns the number of cases checked.
The acceptance gate calls these functions directly, so they are plain
importable callables rather than pytest-only fixtures.
"""

import random

import pytest

from isochron import ParamPoly, VarContext, XSeries, rat

NAME_POOL = ((), ("a",), ("a", "b"))
X = "x"


# ----------------------------------------------------------------------
# generators
# ----------------------------------------------------------------------


def _rand_rat(rng, nonzero=False):
    while True:
        num = rng.randint(-6, 6)
        if nonzero and num == 0:
            continue
        return rat(num) / rat(rng.choice((1, 1, 2, 3, 4)))


def _rand_poly(rng, ctx):
    roll = rng.random()
    if roll < 0.15:
        return ParamPoly.zero(ctx)
    poly = ParamPoly.const(ctx, _rand_rat(rng))
    for name in ctx.names:
        if rng.random() < 0.35:
            exp = rng.choice((1, 1, 2))
            poly = poly + ParamPoly.monomial(ctx, _rand_rat(rng, nonzero=True),
                                             {name: exp})
    return poly


def _rand_series(rng, ctx, order=None, constant=None):
    """Random series; ``constant`` pins the order-0 coefficient."""
    n = rng.randint(2, 5) if order is None else order
    coeffs = [_rand_poly(rng, ctx) for _ in range(n + 1)]
    if constant is not None:
        coeffs[0] = ParamPoly.const(ctx, rat(constant))
    return XSeries(ctx, X, coeffs)


def _ctx(rng):
    return VarContext(rng.choice(NAME_POOL))


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------


def run_ring_axiom_suite(cases=1000, seed=8801):
    rng = random.Random(seed)
    for i in range(cases):
        ctx = _ctx(rng)
        p, q, r = (_rand_poly(rng, ctx) for _ in range(3))
        note = f"case {i}: {p} | {q} | {r}"
        assert p + q == q + p, note
        assert p * q == q * p, note
        assert (p + q) + r == p + (q + r), note
        assert (p * q) * r == p * (q * r), note
        assert p * (q + r) == p * q + p * r, note
        assert p + ParamPoly.zero(ctx) == p, note
        assert p * ParamPoly.one(ctx) == p, note
        assert not (p - p), note
        # series-level distributivity at full (polynomial) length
        A = _rand_series(rng, ctx)
        B = _rand_series(rng, ctx, order=A.order)
        C = _rand_series(rng, ctx, order=A.order)
        lhs = A.mul(B + C)
        assert lhs == A.mul(B) + A.mul(C), note
    return cases


def run_truncation_suite(cases=1000, seed=8802):
    rng = random.Random(seed)
    for i in range(cases):
        ctx = _ctx(rng)
        A = _rand_series(rng, ctx)
        B = _rand_series(rng, ctx)
        m = rng.randint(0, min(A.order, B.order))
        note = f"case {i} at order {m}"
        capped = A.mul(B, order=m)
        assert capped == A.truncate(m).mul(B.truncate(m), order=m), note
        assert capped == A.mul(B).truncate(m), note
        assert (A + B).truncate(m) == A.truncate(m) + B.truncate(m), note
        if m >= 1:
            assert A.truncate(m).derivative() == A.derivative().truncate(m - 1), note
    return cases


def run_exp_suite(cases=1000, seed=8803):
    rng = random.Random(seed)
    for i in range(cases):
        ctx = _ctx(rng)
        m = rng.randint(2, 5)
        A = _rand_series(rng, ctx, order=m, constant=0)
        B = _rand_series(rng, ctx, order=m, constant=0)
        note = f"case {i}"
        EA = A.exp(order=m)
        EB = B.exp(order=m)
        assert EA.mul(EB, order=m) == (A + B).exp(order=m), note
        assert EA.eval_zero() == 1, note
        # d/dx exp(A) = A' exp(A)
        assert EA.derivative().truncate(m - 1) == \
            A.derivative().mul(EA, order=m - 1), note
        # exp(A) exp(-A) = 1
        one = XSeries.const(ctx, X, 1, m)
        assert EA.mul((-A).exp(order=m), order=m) == one, note
    return cases


def run_inverse_suite(cases=1000, seed=8804):
    rng = random.Random(seed)
    for i in range(cases):
        ctx = _ctx(rng)
        m = rng.randint(1, 5)
        A = _rand_series(rng, ctx, order=m, constant=1)
        note = f"case {i}"
        inv = A.inverse(order=m)
        one = XSeries.const(ctx, X, 1, m)
        assert A.mul(inv, order=m) == one, note
        assert inv.inverse(order=m) == A.truncate(m), note
        # (AB)^{-1} = B^{-1} A^{-1}
        B = _rand_series(rng, ctx, order=m, constant=1)
        lhs = A.mul(B, order=m).inverse(order=m)
        assert lhs == B.inverse(order=m).mul(inv, order=m), note
    return cases


def run_sqrt_suite(cases=1000, seed=8805):
    rng = random.Random(seed)
    for i in range(cases):
        ctx = _ctx(rng)
        m = rng.randint(1, 5)
        A = _rand_series(rng, ctx, order=m, constant=1)
        note = f"case {i}"
        square = A.mul(A, order=m)
        root = square.sqrt(order=m)
        assert root == A.truncate(m), note
        B = _rand_series(rng, ctx, order=m, constant=1)
        rootB = B.sqrt(order=m)
        assert rootB.mul(rootB, order=m) == B.truncate(m), note
        # sqrt(B)^{-1} == sqrt(B^{-1})
        assert rootB.inverse(order=m) == B.inverse(order=m).sqrt(order=m), note
    return cases


def run_compose_suite(cases=1000, seed=8806):
    rng = random.Random(seed)
    for i in range(cases):
        ctx = _ctx(rng)
        m = rng.randint(2, 4)
        A = _rand_series(rng, ctx, order=m)
        B = _rand_series(rng, ctx, order=m, constant=0)
        C = _rand_series(rng, ctx, order=m, constant=0)
        note = f"case {i}"
        ident = XSeries.identity(ctx, X, m)
        assert A.compose(ident, order=m) == A.truncate(m), note
        assert ident.compose(B, order=m) == B.truncate(m), note
        # associativity of substitution
        lhs = A.compose(B, order=m).compose(C, order=m)
        rhs = A.compose(B.compose(C, order=m), order=m)
        assert lhs == rhs, note
        # substitution is a ring morphism
        A2 = _rand_series(rng, ctx, order=m)
        assert (A + A2).compose(B, order=m) == \
            A.compose(B, order=m) + A2.compose(B, order=m), note
        assert A.mul(A2, order=m).compose(B, order=m) == \
            A.compose(B, order=m).mul(A2.compose(B, order=m), order=m), note
        # chain rule
        assert A.compose(B, order=m).derivative().truncate(m - 1) == \
            A.derivative().compose(B, order=m - 1).mul(
                B.derivative(), order=m - 1), note
    return cases


SUITES = {
    "ring-axioms": run_ring_axiom_suite,
    "truncation-homomorphism": run_truncation_suite,
    "exp": run_exp_suite,
    "inverse": run_inverse_suite,
    "sqrt": run_sqrt_suite,
    "compose": run_compose_suite,
}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_property_suite(name):
    assert SUITES[name](cases=1000) == 1000
