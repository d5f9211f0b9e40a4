"""Systems of Lienard type and reduction of planar systems to that shape.

The central object is ``x'' + f(x) x'^2 + g(x) = 0`` with ``f`` and ``g``
rational functions of ``x`` whose coefficients are polynomials in the
system parameters.  For the machinery downstream we normalise both
denominators to constant coefficient 1 and require ``g(0) = 0``,
``g'(0) = 1`` (a nondegenerate center at the origin, unit linear part).

From ``f`` and ``g`` we build the auxiliary series

    F = integral of f,          (F(0) = 0)
    phi = integral of exp(F),   (phi(0) = 0, phi'(0) = 1)
    xi with xi(0) = 0, xi'(0) = 1 and  xi^2 / 2 = integral of g * exp(2F),

all with exact coefficients.  ``cherkas_reduce`` maps a planar system

    x' = p1(x) y,    y' = q0(x) + q2(x) y^2

(the scope of this reduction; first-degree terms in ``y`` and ``y``-free
terms in ``x'`` are not handled by it) to the Lienard form via

    f = -(q2 + p1') / p1,    g = -q0 * p1 .
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .poly import ContextMismatch, ParamPoly, VarContext
from .rationals import Rat, rat
from .series import XSeries

X = "x"
XI = "xi"


class ReductionError(ValueError):
    """Raised when a planar system is outside the scope of the reduction."""


def _as_x_poly(value: XSeries) -> XSeries:
    if value.var != X:
        raise ValueError(f"expected a polynomial in {X!r}, got {value.var!r}")
    return value


@dataclass(frozen=True)
class RationalFunctionX:
    """Quotient of two exact polynomials in x (denominator a unit)."""

    num: XSeries
    den: XSeries

    def __post_init__(self):
        _as_x_poly(self.num)
        _as_x_poly(self.den)
        if self.num.ctx != self.den.ctx:
            raise ContextMismatch("numerator and denominator contexts differ")

    @classmethod
    def from_poly(cls, num: XSeries) -> "RationalFunctionX":
        one = XSeries.const(num.ctx, X, 1)
        return cls(num, one)

    @property
    def ctx(self) -> VarContext:
        return self.num.ctx

    def is_polynomial(self) -> bool:
        return all(not c for c in self.den.coeffs[1:]) and (
            self.den.coeffs[0] == ParamPoly.one(self.ctx)
        )

    def series(self, order: int, tick=None) -> XSeries:
        """Expansion at the origin through the requested order."""
        num = self.num.truncate(order).pad_to(order)
        inv = self.den.inverse(order=order, tick=tick)
        return num.mul(inv, order=order, tick=tick)

    def at_zero(self) -> ParamPoly:
        return self.num.coeffs[0]

    def relabel(self, ctx: VarContext) -> "RationalFunctionX":
        return RationalFunctionX(
            XSeries(ctx, X, [c.relabel(ctx) for c in self.num.coeffs]),
            XSeries(ctx, X, [c.relabel(ctx) for c in self.den.coeffs]),
        )


def _fingerprint(kind: str, names, polys) -> str:
    h = hashlib.sha256()
    h.update(kind.encode())
    h.update(("|".join(names)).encode())
    for p in polys:
        h.update(b"#")
        h.update(";".join(c.text() for c in p.coeffs).encode())
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class LienardSystem:
    """``x'' + f(x) x'^2 + g(x) = 0`` with rational ``f`` and ``g``."""

    f: RationalFunctionX
    g: RationalFunctionX

    def __post_init__(self):
        if self.f.ctx != self.g.ctx:
            raise ContextMismatch("f and g live in different contexts")

    @classmethod
    def from_polys(cls, f_num, g_num, f_den=None, g_den=None) -> "LienardSystem":
        one = XSeries.const(f_num.ctx, X, 1)
        return cls(
            RationalFunctionX(f_num, f_den if f_den is not None else one),
            RationalFunctionX(g_num, g_den if g_den is not None else one),
        )

    @property
    def ctx(self) -> VarContext:
        return self.f.ctx

    def fingerprint(self) -> str:
        return _fingerprint(
            "lienard",
            self.ctx.names,
            (self.f.num, self.f.den, self.g.num, self.g.den),
        )

    def with_context(self, ctx: VarContext) -> "LienardSystem":
        return LienardSystem(self.f.relabel(ctx), self.g.relabel(ctx))

    def substitute(self, bindings: dict) -> "LienardSystem":
        """Bind some parameters to Rat values (context unchanged)."""

        def sub(s: XSeries) -> XSeries:
            return XSeries(s.ctx, s.var, [c.substitute(bindings) for c in s.coeffs])

        return LienardSystem(
            RationalFunctionX(sub(self.f.num), sub(self.f.den)),
            RationalFunctionX(sub(self.g.num), sub(self.g.den)),
        )

    # ------------------------------------------------------------------
    # series pipeline
    # ------------------------------------------------------------------

    def f_series(self, order: int, tick=None) -> XSeries:
        return self.f.series(order, tick=tick)

    def g_series(self, order: int, tick=None) -> XSeries:
        return self.g.series(order, tick=tick)

    def F_series(self, order: int, tick=None) -> XSeries:
        """Integral of f, through the requested order (F(0) = 0)."""
        if order < 1:
            raise ValueError("order must be >= 1")
        return self.f_series(order - 1, tick=tick).integrate()

    def expF_series(self, order: int, sign: int = 1, tick=None) -> XSeries:
        """exp(F) (or exp(-F), or exp(2F), ... via ``sign``)."""
        F = self.F_series(order, tick=tick)
        if sign != 1:
            F = F.scale(Rat(sign))
        return F.exp(order=order, tick=tick)

    def phi_series(self, order: int, tick=None) -> XSeries:
        """phi = integral of exp(F); phi(0) = 0, phi'(0) = 1."""
        if order < 1:
            raise ValueError("order must be >= 1")
        return self.expF_series(order - 1, tick=tick).integrate()

    def xi_series(self, order: int, tick=None) -> XSeries:
        """The odd-normalised coordinate: xi^2 / 2 = integral of g exp(2F).

        Requires a valid system (g(0) = 0, g'(0) = 1); the square root is
        taken on a unit series after pulling out the leading x^2 / 2.
        """
        if order < 1:
            raise ValueError("order must be >= 1")
        g = self.g_series(order, tick=tick)
        e2F = self.expF_series(order, sign=2, tick=tick)
        m = g.mul(e2F, order=order, tick=tick).integrate().truncate(order + 1)
        twice = m.scale(Rat(2))
        one = ParamPoly.one(self.ctx)
        if twice.coeffs[0] or twice.coeffs[1] or twice.coefficient(2) != one:
            raise ValueError(
                "system is not normalised: 2 * integral(g exp(2F)) must start at x^2"
            )
        inner = twice.shift_down(2)
        root = inner.sqrt(order=order - 1, tick=tick)
        return root.shift_up(1)


def validate_lienard(system: LienardSystem) -> list[str]:
    """Structural checks; returns human-readable violations (empty = valid).

    Checked: both denominators have constant coefficient exactly 1, and
    g has g(0) = 0 with g'(0) = 1 after division.  (The sign condition
    x g(x) > 0 near 0 is analytic, not structural, and is not checked.)
    """
    problems = []
    ctx = system.ctx
    one = ParamPoly.one(ctx)
    if system.f.den.coeffs[0] != one:
        problems.append("denominator of f must have constant coefficient 1")
    if system.g.den.coeffs[0] != one:
        problems.append("denominator of g must have constant coefficient 1")
    if system.g.num.coeffs[0]:
        problems.append("g(0) must be 0 (numerator constant coefficient)")
    else:
        # g'(0) = num'(0)/den(0) once num(0) = 0 and den(0) = 1.
        if system.g.num.coefficient(1) != one:
            problems.append("g'(0) must be 1")
    return problems


@dataclass(frozen=True)
class PlanarSystem:
    """``x' = p0 + p1 y``, ``y' = q0 + q1 y + q2 y^2`` with polynomial entries.

    Only ``p1``, ``q0``, ``q2`` take part in the reduction implemented
    here; ``p0`` and ``q1`` are carried so that general systems can at
    least be represented and rejected with a clear message.
    """

    p1: XSeries
    q0: XSeries
    q2: XSeries
    p0: XSeries = None
    q1: XSeries = None

    def __post_init__(self):
        ctx = self.p1.ctx
        zero = XSeries.zeros(ctx, X, 0)
        if self.p0 is None:
            object.__setattr__(self, "p0", zero)
        if self.q1 is None:
            object.__setattr__(self, "q1", zero)
        for s in (self.p0, self.p1, self.q0, self.q1, self.q2):
            _as_x_poly(s)
            if s.ctx != ctx:
                raise ContextMismatch("planar entries over different contexts")

    @property
    def ctx(self) -> VarContext:
        return self.p1.ctx

    def fingerprint(self) -> str:
        return _fingerprint(
            "planar", self.ctx.names, (self.p0, self.p1, self.q0, self.q1, self.q2)
        )


def cherkas_reduce(system: PlanarSystem) -> LienardSystem:
    """Reduce ``x' = p1 y``, ``y' = q0 + q2 y^2`` to Lienard type.

    Differentiating ``x' = p1 y`` once and eliminating ``y`` gives

        x'' = (p1' + q2) / p1 * x'^2 + p1 q0,

    i.e. ``f = -(q2 + p1') / p1`` and ``g = -q0 p1``.  Preconditions:
    ``p0 = 0``, ``q1 = 0``, ``p1(0)`` invertible.  When ``p1(0) = -1``
    (the common orientation ``x' = -y + ...``) numerator and denominator
    of ``f`` are jointly negated so the denominator is unit-normalised;
    any other constant is rejected rather than silently rescaled.
    """
    ctx = system.ctx
    if not system.p0.is_zero() or not system.q1.is_zero():
        raise ReductionError(
            "not reducible by this method: requires p0 = 0 and q1 = 0"
        )
    p1_0 = system.p1.coeffs[0].constant_value()
    if p1_0 is None or p1_0 not in (rat(1), rat(-1)):
        raise ReductionError(
            "not reducible by this method: p1(0) must be the constant 1 or -1"
        )
    p1 = system.p1
    if p1.order >= 1:
        f_num = -(system.q2 + p1.derivative())
    else:
        f_num = -system.q2
    f_den = p1
    if p1_0 == rat(-1):
        f_num = -f_num
        f_den = -f_den
    g_num = (-system.q0).mul(p1)
    one = XSeries.const(ctx, X, 1)
    sys = LienardSystem(
        RationalFunctionX(f_num, f_den),
        RationalFunctionX(g_num, one),
    )
    problems = validate_lienard(sys)
    if problems:
        raise ReductionError(
            "reduced system is degenerate: " + "; ".join(problems)
        )
    return sys
