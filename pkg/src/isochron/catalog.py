"""Ready-made example systems.

Each factory builds a fresh system; symbolic parameters are free by
default and can be bound to exact rationals via keyword arguments.
The parameter declaration order fixes the canonical term order in
rendered conditions, so it is part of each system's interface.
"""

from __future__ import annotations

from .lienard import LienardSystem, PlanarSystem, RationalFunctionX, X, cherkas_reduce
from .poly import ParamPoly, VarContext
from .rationals import Rat, rat
from .series import XSeries


def _rat_or_none(value):
    if value is None:
        return None
    return rat(value) if isinstance(value, (int, str)) else value


def _bind(system: LienardSystem, bindings) -> LienardSystem:
    clean = {k: _rat_or_none(v) for k, v in bindings.items() if v is not None}
    return system.substitute(clean) if clean else system


def linear_center() -> LienardSystem:
    """``x'' + x = 0``: f = 0, g = x.  Isochronous with h = 0."""
    ctx = VarContext(())
    f_num = XSeries.zeros(ctx, X, 0)
    g_num = XSeries.identity(ctx, X, 1)
    return LienardSystem.from_polys(f_num, g_num)


def quartic_planar() -> PlanarSystem:
    """The nine-parameter quartic family with a center at the origin:

        x' = -y + a11 x y + a21 x^2 y + a31 x^3 y
        y' = x + b20 x^2 + b30 x^3 + b02 y^2 + b12 x y^2 + b22 x^2 y^2 + b40 x^4

    Parameters are declared in the order they appear in the reduced
    system (f's numerator, then f's denominator, then g).
    """
    ctx = VarContext(("b02", "b12", "b22", "a11", "a21", "a31", "b20", "b30", "b40"))

    def v(name):
        return ParamPoly.variable(ctx, name)

    one = ParamPoly.one(ctx)
    p1 = XSeries.poly(ctx, X, [-one, v("a11"), v("a21"), v("a31")])
    q0 = XSeries.poly(ctx, X, [0, one, v("b20"), v("b30"), v("b40")])
    q2 = XSeries.poly(ctx, X, [v("b02"), v("b12"), v("b22")])
    return PlanarSystem(p1=p1, q0=q0, q2=q2)


def quartic_reduced(**bindings) -> LienardSystem:
    """The quartic family in Lienard form (via the planar reduction):

        f = (b02 + b12 x + b22 x^2 + a11 + 2 a21 x + 3 a31 x^2)
            / (1 - a11 x - a21 x^2 - a31 x^3)
        g = (1 - a11 x - a21 x^2 - a31 x^3)(x + b20 x^2 + b30 x^3 + b40 x^4)
    """
    return _bind(cherkas_reduce(quartic_planar()), bindings)


def one_parameter_quartic_planar(b22=None) -> PlanarSystem:
    """A one-parameter quartic family with a center at the origin:

        x' = -y + x y - (3/8 + 2 b22) x^2 y + (1/16 + b22) x^3 y
        y' = x - (3/4) x^2 + (1/4) y^2 + (3/8) x^3 - 2 b22 x y^2
             + b22 x^2 y^2 - (1/16) x^4

    For b22 in {-1/16, 0, 1/16} the origin is an isochronous center
    whose time-reparametrisation series h is known in closed form; the
    expansions are shipped as fixtures under ``tests/fixtures``.
    """
    ctx = VarContext(("b22",))
    b22p = ParamPoly.variable(ctx, "b22")
    one = ParamPoly.one(ctx)

    def c(v):
        return ParamPoly.const(ctx, v)

    p1 = XSeries.poly(
        ctx, X, [-one, one, c(Rat(-3, 8)) - 2 * b22p, c(Rat(1, 16)) + b22p]
    )
    q0 = XSeries.poly(ctx, X, [0, one, c(Rat(-3, 4)), c(Rat(3, 8)), c(Rat(-1, 16))])
    q2 = XSeries.poly(ctx, X, [c(Rat(1, 4)), (-2) * b22p, b22p])
    system = PlanarSystem(p1=p1, q0=q0, q2=q2)
    value = _rat_or_none(b22)
    if value is None:
        return system

    def sub(s):
        return XSeries(ctx, X, [cc.substitute({"b22": value}) for cc in s.coeffs])

    return PlanarSystem(p1=sub(p1), q0=sub(q0), q2=sub(q2))


def one_parameter_quartic_reduced(b22=None) -> LienardSystem:
    """Lienard form of :func:`one_parameter_quartic_planar`."""
    return cherkas_reduce(one_parameter_quartic_planar(b22))


def cubic_zero_urabe_reduced(b20=None) -> LienardSystem:
    """A cubic isochronous family (in Lienard form) with h identically 0:

        f = -6 b20 / (1 + 2 b20 x),
        g = x (1 + b20 x) (1 + 2 b20 x).

    Here phi(x) = xi(x) = (1 - (1 + 2 b20 x)^-2) / (4 b20) exactly, so
    the family is isochronous with vanishing Urabe function.
    """
    ctx = VarContext(("b20",))
    b = ParamPoly.variable(ctx, "b20")
    one = ParamPoly.one(ctx)
    f_num = XSeries.poly(ctx, X, [(-6) * b])
    f_den = XSeries.poly(ctx, X, [one, 2 * b])
    g_num = (
        XSeries.identity(ctx, X, 1)
        .mul(XSeries.poly(ctx, X, [one, b]))
        .mul(XSeries.poly(ctx, X, [one, 2 * b]))
    )
    sys = LienardSystem(
        RationalFunctionX(f_num, f_den),
        RationalFunctionX.from_poly(g_num),
    )
    return _bind(sys, {"b20": b20})


def cubic_linear_urabe_reduced(b20=None) -> LienardSystem:
    """A cubic isochronous family (in Lienard form) with linear h:

        f = -(3 b20 / 2) / (1 + (b20 / 2) x),
        g = x (1 + (b20 / 2) x)^3 .

    Isochronous for every b20 with h(xi) = -(b20 / 2) xi, since
    xi = x / (1 + (b20/2) x) and phi = xi - (b20/4) xi^2 exactly.
    """
    ctx = VarContext(("b20",))
    b = ParamPoly.variable(ctx, "b20")
    one = ParamPoly.one(ctx)
    half_b = b.scale(Rat(1, 2))
    f_num = XSeries.poly(ctx, X, [b.scale(Rat(-3, 2))])
    f_den = XSeries.poly(ctx, X, [one, half_b])
    lin = XSeries.poly(ctx, X, [one, half_b])
    g_num = XSeries.identity(ctx, X, 1).mul(lin).mul(lin).mul(lin)
    sys = LienardSystem(
        RationalFunctionX(f_num, f_den),
        RationalFunctionX.from_poly(g_num),
    )
    return _bind(sys, {"b20": b20})


def cubic_linear_urabe_coefficients(b20):
    """Exact odd h-coefficients for :func:`cubic_linear_urabe_reduced`."""
    from .conditions import UrabeSeries

    value = _rat_or_none(b20)
    return UrabeSeries.from_values([-value / 2])
