"""Truncated power series in one analytic variable.

An :class:`XSeries` is a finite coefficient vector ``a_0 .. a_N`` whose
entries are :class:`~isochron.poly.ParamPoly` values, representing
``sum a_i t**i`` either exactly (a polynomial) or through order ``N``.
The analytic variable is just a label (``"x"`` or ``"xi"``); mixing labels
or parameter contexts is an error rather than a silent coercion.

``mul`` computes output coefficients one order at a time, which makes
truncation free (stop at the requested order) and gives the resource
guard a natural place to be called between coefficients (``tick``).
The classic unit-series recurrences (inverse, exp, sqrt) run entirely in
exact arithmetic.
"""

from __future__ import annotations

from .poly import ContextMismatch, ParamPoly, VarContext
from .rationals import Rat, rat


def _coerce_coeff(ctx, value):
    if isinstance(value, ParamPoly):
        if value.ctx != ctx:
            raise ContextMismatch("coefficient from a different context")
        return value
    return ParamPoly.const(ctx, value)


def _convolve_at(ca, cb, n, zero):
    """Coefficient of t**n in the product of coefficient lists ca, cb."""
    la, lb = len(ca), len(cb)
    acc = {}
    for i in range(max(0, n - lb + 1), min(n, la - 1) + 1):
        a = ca[i].terms
        b = cb[n - i].terms
        if not a or not b:
            continue
        if len(a) < len(b):
            a, b = b, a
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                v = va * vb
                s = acc.get(k)
                if s is None:
                    acc[k] = v
                else:
                    acc[k] = s + v
    terms = {k: v for k, v in acc.items() if v}
    return ParamPoly(zero.ctx, terms) if terms else zero


class XSeries:
    """Power series / polynomial with ParamPoly coefficients."""

    __slots__ = ("ctx", "var", "coeffs")

    def __init__(self, ctx: VarContext, var: str, coeffs):
        self.ctx = ctx
        self.var = var
        self.coeffs = tuple(_coerce_coeff(ctx, c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, ctx, var, order: int) -> "XSeries":
        zero = ParamPoly.zero(ctx)
        return cls(ctx, var, [zero] * (order + 1))

    @classmethod
    def const(cls, ctx, var, value, order: int = 0) -> "XSeries":
        s = cls.zeros(ctx, var, order)
        return cls(ctx, var, (_coerce_coeff(ctx, value),) + s.coeffs[1:])

    @classmethod
    def identity(cls, ctx, var, order: int = 1) -> "XSeries":
        """The series ``t`` (to the requested order)."""
        if order < 1:
            raise ValueError("identity needs order >= 1")
        zero = ParamPoly.zero(ctx)
        coeffs = [zero, ParamPoly.one(ctx)] + [zero] * (order - 1)
        return cls(ctx, var, coeffs)

    @classmethod
    def poly(cls, ctx, var, entries) -> "XSeries":
        """Exact polynomial from a low-to-high coefficient list."""
        return cls(ctx, var, entries)

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> ParamPoly:
        """Coefficient of t**i (zero beyond the stored order)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ParamPoly.zero(self.ctx)

    def eval_zero(self) -> ParamPoly:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, XSeries)
            and self.ctx == other.ctx
            and self.var == other.var
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def agrees_through(self, other: "XSeries", order: int) -> bool:
        """Equality of coefficients 0..order, ignoring stored lengths."""
        return all(self.coefficient(i) == other.coefficient(i) for i in range(order + 1))

    def _check(self, other: "XSeries"):
        if self.ctx != other.ctx:
            raise ContextMismatch("series over different parameter contexts")
        if self.var != other.var:
            raise ValueError(f"series variables differ: {self.var} vs {other.var}")

    def __repr__(self):
        inner = ", ".join(c.text() for c in self.coeffs[: min(6, len(self.coeffs))])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"XSeries[{self.var}]({inner}{tail}; order={self.order})"

    # ------------------------------------------------------------------
    # linear operations
    # ------------------------------------------------------------------

    def truncate(self, order: int) -> "XSeries":
        """Drop coefficients above ``order`` (no-op when already shorter)."""
        if order < 0:
            raise ValueError("order must be >= 0")
        if order >= self.order:
            return self
        return XSeries(self.ctx, self.var, self.coeffs[: order + 1])

    def pad_to(self, order: int) -> "XSeries":
        """Extend with explicit zero coefficients up to ``order``."""
        if order <= self.order:
            return self
        zero = ParamPoly.zero(self.ctx)
        return XSeries(self.ctx, self.var, self.coeffs + (zero,) * (order - self.order))

    def __neg__(self):
        return XSeries(self.ctx, self.var, [-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = [a[i] + b[i] for i in range(len(b))]
        out.extend(a[len(b):])
        return XSeries(self.ctx, self.var, out)

    def __sub__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.__add__(-other)

    def scale(self, scalar) -> "XSeries":
        """Multiply every coefficient by a Rat or ParamPoly."""
        if isinstance(scalar, ParamPoly):
            return XSeries(self.ctx, self.var, [c * scalar for c in self.coeffs])
        scalar = rat(scalar) if isinstance(scalar, (int, str)) else scalar
        return XSeries(self.ctx, self.var, [c.scale(scalar) for c in self.coeffs])

    def derivative(self) -> "XSeries":
        if self.order < 1:
            return XSeries.zeros(self.ctx, self.var, 0)
        out = [self.coeffs[i].scale(Rat(i)) for i in range(1, len(self.coeffs))]
        return XSeries(self.ctx, self.var, out)

    def integrate(self) -> "XSeries":
        """Antiderivative with zero constant term (order grows by one)."""
        zero = ParamPoly.zero(self.ctx)
        out = [zero]
        out.extend(self.coeffs[i].scale(Rat(1, i + 1)) for i in range(len(self.coeffs)))
        return XSeries(self.ctx, self.var, out)

    def shift_up(self, k: int) -> "XSeries":
        """Multiply by t**k."""
        zero = ParamPoly.zero(self.ctx)
        return XSeries(self.ctx, self.var, (zero,) * k + self.coeffs)

    def shift_down(self, k: int) -> "XSeries":
        """Divide by t**k; the dropped low coefficients must be zero."""
        for i in range(min(k, len(self.coeffs))):
            if self.coeffs[i]:
                raise ValueError(f"coefficient of order {i} is nonzero; cannot shift down")
        if k >= len(self.coeffs):
            return XSeries.zeros(self.ctx, self.var, 0)
        return XSeries(self.ctx, self.var, self.coeffs[k:])

    # ------------------------------------------------------------------
    # multiplicative operations
    # ------------------------------------------------------------------

    def mul(self, other: "XSeries", order: int | None = None, tick=None) -> "XSeries":
        """Product; exact polynomial product when ``order`` is None."""
        self._check(other)
        ca, cb = self.coeffs, other.coeffs
        full = len(ca) + len(cb) - 2
        n_out = full if order is None else min(order, full)
        zero = ParamPoly.zero(self.ctx)
        out = []
        for n in range(n_out + 1):
            if tick is not None:
                tick()
            out.append(_convolve_at(ca, cb, n, zero))
        if order is not None and order > full:
            out.extend([zero] * (order - full))
        return XSeries(self.ctx, self.var, out)

    def __mul__(self, other):
        if isinstance(other, XSeries):
            return self.mul(other)
        return NotImplemented

    def inverse(self, order: int | None = None, tick=None) -> "XSeries":
        """Reciprocal of a unit series (constant coefficient exactly 1)."""
        if self.coeffs[0] != ParamPoly.one(self.ctx):
            raise ValueError("inverse requires constant coefficient 1")
        n_out = self.order if order is None else order
        a = self.coeffs
        la = len(a)
        out = [ParamPoly.one(self.ctx)]
        for n in range(1, n_out + 1):
            if tick is not None:
                tick()
            s = ParamPoly.zero(self.ctx)
            for j in range(1, min(n, la - 1) + 1):
                if a[j]:
                    s = s + a[j] * out[n - j]
            out.append(-s)
        return XSeries(self.ctx, self.var, out)

    def exp(self, order: int | None = None, tick=None) -> "XSeries":
        """Exponential of a series with zero constant coefficient."""
        if self.coeffs[0]:
            raise ValueError("exp requires constant coefficient 0")
        n_out = self.order if order is None else order
        a = self.coeffs
        la = len(a)
        out = [ParamPoly.one(self.ctx)]
        for n in range(1, n_out + 1):
            if tick is not None:
                tick()
            s = ParamPoly.zero(self.ctx)
            for j in range(1, min(n, la - 1) + 1):
                if a[j]:
                    s = s + (a[j] * out[n - j]).scale(Rat(j))
            out.append(s.scale(Rat(1, n)))
        return XSeries(self.ctx, self.var, out)

    def sqrt(self, order: int | None = None, tick=None) -> "XSeries":
        """Square root of a unit series (constant coefficient exactly 1)."""
        if self.coeffs[0] != ParamPoly.one(self.ctx):
            raise ValueError("sqrt requires constant coefficient 1")
        n_out = self.order if order is None else order
        a = self.coeffs
        out = [ParamPoly.one(self.ctx)]
        half = Rat(1, 2)
        for n in range(1, n_out + 1):
            if tick is not None:
                tick()
            s = self.coefficient(n) if n < len(a) else ParamPoly.zero(self.ctx)
            for j in range(1, n):
                s = s - out[j] * out[n - j]
            out.append(s.scale(half))
        return XSeries(self.ctx, self.var, out)

    def compose(self, inner: "XSeries", order: int | None = None, tick=None) -> "XSeries":
        """``self(inner(t))`` for an inner series with zero constant term.

        The result carries the inner series' variable label.
        """
        if self.ctx != inner.ctx:
            raise ContextMismatch("series over different parameter contexts")
        if inner.coeffs[0]:
            raise ValueError("compose requires inner constant coefficient 0")
        n_out = min(self.order, inner.order) if order is None else order
        acc = XSeries.const(self.ctx, inner.var, self.coefficient(min(self.order, n_out)), 0)
        inner_v = XSeries(self.ctx, inner.var, inner.coeffs)
        for k in range(min(self.order, n_out) - 1, -1, -1):
            acc = acc.mul(inner_v, order=n_out, tick=tick)
            acc = XSeries(
                self.ctx,
                inner.var,
                (acc.coeffs[0] + self.coeffs[k],) + acc.coeffs[1:],
            )
        return acc.pad_to(n_out)
