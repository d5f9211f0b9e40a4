"""Sparse polynomials in the system parameters.

The coefficients that flow through the recurrences are polynomials in a
fixed, ordered set of parameter names (system parameters such as ``b20``,
followed by any symbolic odd coefficients ``c1, c3, ...``).  Two
representation choices carry all the performance:

* A monomial is packed into a single Python int: 16 bits per variable,
  first-declared variable in the most significant field, and the total
  degree stored above all of them.  Multiplying monomials is then integer
  addition, and sorting keys ascending *is* graded-lexicographic order,
  which gives the canonical term order for free.
* A polynomial is a dict mapping packed keys to nonzero Rat coefficients.

The canonical text form lists terms in ascending graded-lex order with
exact rational coefficients, e.g. ``-3*c1 - 2*b20 + a11 - b02``.
"""

from __future__ import annotations

from .rationals import ONE, Rat, ZERO, format_rat, rat

_BITS = 16
_MASK = (1 << _BITS) - 1


class ContextMismatch(ValueError):
    """Raised when combining polynomials over different variable lists."""


class VarContext:
    """An ordered, immutable list of variable names with exponent packing.

    Contexts compare equal when their name tuples are equal, so values can
    be rebuilt (e.g. in a worker process) without breaking arithmetic.
    """

    __slots__ = ("names", "_pos", "_shifts", "_degshift")

    def __init__(self, names=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        for n in names:
            if not isinstance(n, str) or not n or not n.isidentifier():
                raise ValueError(f"bad variable name: {n!r}")
        self.names = names
        self._pos = {n: i for i, n in enumerate(names)}
        n = len(names)
        # First-declared name gets the most significant exponent field so
        # that ascending integer order on keys is ascending graded-lex.
        self._shifts = tuple(_BITS * (n - 1 - i) for i in range(n))
        self._degshift = _BITS * n

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarContext({list(self.names)!r})"

    def __contains__(self, name):
        return name in self._pos

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def pack(self, exps) -> int:
        """Pack an exponent sequence (one per variable) into a key."""
        if len(exps) != len(self.names):
            raise ValueError("exponent vector has wrong length")
        key = 0
        total = 0
        for e, shift in zip(exps, self._shifts):
            if e < 0 or e > _MASK:
                raise ValueError(f"exponent out of range: {e}")
            total += e
            key |= e << shift
        if total > _MASK:
            raise ValueError(f"total degree out of range: {total}")
        return key | (total << self._degshift)

    def unpack(self, key: int):
        """Inverse of :meth:`pack`; returns the exponent tuple."""
        return tuple((key >> shift) & _MASK for shift in self._shifts)

    def total_degree_of(self, key: int) -> int:
        return key >> self._degshift

    def var_key(self, name: str) -> int:
        """Packed key of ``name`` to the first power."""
        return (1 << self._shifts[self.position(name)]) | (1 << self._degshift)

    def extend(self, extra) -> "VarContext":
        """New context with ``extra`` names appended (collisions rejected)."""
        extra = tuple(extra)
        clash = [n for n in extra if n in self._pos]
        if clash:
            raise ValueError(f"variable names already present: {clash}")
        return VarContext(self.names + extra)


def _coerce_scalar(value):
    if isinstance(value, int):
        return Rat(value)
    return value


class ParamPoly:
    """A sparse polynomial in the parameters of a :class:`VarContext`.

    Instances are treated as immutable; all operations return new values.
    The ``terms`` dict maps packed monomial keys to nonzero coefficients
    and must already be canonical when passed to ``__init__`` (the factory
    classmethods take care of that for external callers).
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext) -> "ParamPoly":
        return cls(ctx, {})

    @classmethod
    def const(cls, ctx: VarContext, value) -> "ParamPoly":
        value = rat(value) if isinstance(value, (int, str)) else value
        return cls(ctx, {0: value} if value else {})

    @classmethod
    def one(cls, ctx: VarContext) -> "ParamPoly":
        return cls(ctx, {0: ONE})

    @classmethod
    def variable(cls, ctx: VarContext, name: str) -> "ParamPoly":
        return cls(ctx, {ctx.var_key(name): ONE})

    @classmethod
    def monomial(cls, ctx: VarContext, coeff, powers: dict) -> "ParamPoly":
        """``coeff * prod(name**exp)`` for a ``{name: exp}`` mapping."""
        coeff = rat(coeff) if isinstance(coeff, (int, str)) else coeff
        if not coeff:
            return cls(ctx, {})
        exps = [0] * len(ctx.names)
        for name, exp in powers.items():
            if not isinstance(exp, int) or exp <= 0:
                raise ValueError(f"exponent for {name!r} must be a positive int")
            exps[ctx.position(name)] += exp
        return cls(ctx, {ctx.pack(exps): coeff})

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, type(ZERO))):
            other = _coerce_scalar(other)
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    __hash__ = None

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        """The value as a Rat if the polynomial is constant, else ``None``."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        return None

    def total_degree(self) -> int:
        """Total degree (``-1`` for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(self.ctx.total_degree_of(k) for k in self.terms)

    def degree_in(self, name: str) -> int:
        """Degree in one variable (``-1`` for the zero polynomial)."""
        if not self.terms:
            return -1
        shift = self.ctx._shifts[self.ctx.position(name)]
        return max((k >> shift) & _MASK for k in self.terms)

    def variables_used(self):
        """Names that actually occur with a positive exponent."""
        used = set()
        for key in self.terms:
            for name, e in zip(self.ctx.names, self.ctx.unpack(key)):
                if e:
                    used.add(name)
        return used

    def _check(self, other: "ParamPoly"):
        if self.ctx != other.ctx:
            raise ContextMismatch(
                f"variable lists differ: {self.ctx.names} vs {other.ctx.names}"
            )

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __neg__(self):
        return ParamPoly(self.ctx, {k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, type(ZERO))):
            other = ParamPoly.const(self.ctx, _coerce_scalar(other))
        elif not isinstance(other, ParamPoly):
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            s = acc.get(k)
            if s is None:
                acc[k] = v
            else:
                s = s + v
                if s:
                    acc[k] = s
                else:
                    del acc[k]
        return ParamPoly(self.ctx, acc)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, type(ZERO))):
            other = ParamPoly.const(self.ctx, _coerce_scalar(other))
        elif not isinstance(other, ParamPoly):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, type(ZERO))):
            return self.scale(_coerce_scalar(other))
        if not isinstance(other, ParamPoly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        acc = {}
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                v = va * vb
                s = acc.get(k)
                if s is None:
                    acc[k] = v
                else:
                    acc[k] = s + v
        return ParamPoly(self.ctx, {k: v for k, v in acc.items() if v})

    __rmul__ = __mul__

    def scale(self, scalar) -> "ParamPoly":
        scalar = _coerce_scalar(scalar)
        if not scalar:
            return ParamPoly(self.ctx, {})
        return ParamPoly(self.ctx, {k: v * scalar for k, v in self.terms.items()})

    # ------------------------------------------------------------------
    # substitution and context surgery
    # ------------------------------------------------------------------

    def coefficients_in(self, name: str) -> dict:
        """Split by powers of ``name``: ``{power: polynomial}``.

        The returned polynomials live in the same context with the chosen
        variable's exponent cleared; summing ``poly * name**power`` back
        recovers ``self``.
        """
        pos = self.ctx.position(name)
        shift = self.ctx._shifts[pos]
        degshift = self.ctx._degshift
        out: dict[int, dict] = {}
        for key, val in self.terms.items():
            e = (key >> shift) & _MASK
            stripped = key - (e << shift) - (e << degshift)
            out.setdefault(e, {})[stripped] = val
        return {e: ParamPoly(self.ctx, d) for e, d in sorted(out.items())}

    def substitute(self, bindings: dict) -> "ParamPoly":
        """Replace some variables by Rat values; result stays in context."""
        vals = {self.ctx.position(n): rat(v) if isinstance(v, (int, str)) else v
                for n, v in bindings.items()}
        shifts = self.ctx._shifts
        degshift = self.ctx._degshift
        acc: dict[int, object] = {}
        for key, val in self.terms.items():
            stripped = key
            for pos, value in vals.items():
                e = (key >> shifts[pos]) & _MASK
                if e:
                    val = val * value**e
                    stripped -= (e << shifts[pos]) + (e << degshift)
            if not val:
                continue
            s = acc.get(stripped)
            if s is None:
                acc[stripped] = val
            else:
                s = s + val
                if s:
                    acc[stripped] = s
                else:
                    del acc[stripped]
        return ParamPoly(self.ctx, acc)

    def substitute_poly(self, name: str, value: "ParamPoly") -> "ParamPoly":
        """Replace one variable by a polynomial (same context)."""
        self._check(value)
        parts = self.coefficients_in(name)
        out = ParamPoly.zero(self.ctx)
        power = ParamPoly.one(self.ctx)
        last = 0
        for e in sorted(parts):
            for _ in range(e - last):
                power = power * value
            last = e
            out = out + parts[e] * power
        return out

    def relabel(self, new_ctx: VarContext) -> "ParamPoly":
        """Re-express over a different context (by name).

        Variables carrying a positive exponent must exist in ``new_ctx``;
        unused ones may be dropped or reordered freely.
        """
        if new_ctx == self.ctx:
            return ParamPoly(new_ctx, dict(self.terms))
        out = {}
        exps_buf = [0] * len(new_ctx.names)
        for key, val in self.terms.items():
            for i in range(len(exps_buf)):
                exps_buf[i] = 0
            for name, e in zip(self.ctx.names, self.ctx.unpack(key)):
                if not e:
                    continue
                if name not in new_ctx:
                    raise ContextMismatch(
                        f"variable {name!r} not present in target context"
                    )
                exps_buf[new_ctx.position(name)] = e
            out[new_ctx.pack(exps_buf)] = val
        return ParamPoly(new_ctx, out)

    # ------------------------------------------------------------------
    # rendering
    # ------------------------------------------------------------------

    def text(self) -> str:
        """Canonical form: ascending graded-lex, exact coefficients."""
        if not self.terms:
            return "0"
        pieces = []
        for key in sorted(self.terms):
            coeff = self.terms[key]
            negative = coeff < 0
            mag = -coeff if negative else coeff
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ctx.names, self.ctx.unpack(key))
                if e
            ]
            if not factors:
                body = format_rat(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_rat(mag) + "*" + "*".join(factors)
            if not pieces:
                pieces.append("-" + body if negative else body)
            else:
                pieces.append(("- " if negative else "+ ") + body)
        return " ".join(pieces)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"ParamPoly({self.text()})"
