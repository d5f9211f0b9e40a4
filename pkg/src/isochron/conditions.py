"""Necessary isochronicity conditions via three recurrence families.

For a valid system ``x'' + f(x) x'^2 + g(x) = 0`` and an odd series
``h(xi) = c1 xi + c3 xi^3 + ...`` (the unknown time-reparametrisation,
here with symbolic or bound coefficients), isochronicity forces the
sequence of polynomial identities ``P_k(0) = Q_k(0)`` for k = 0..M.
Three equivalent recurrences compute them:

* direct   -- division form.  ``P~_0 = xi/(1+h)``, ``Q~_0 = g e^F`` and

      P~_k = d/dxi(P~_{k-1}) / (1+h),    Q~_k = d/dx(Q~_{k-1}) e^{-F}.

* reduced  -- division-free in ``xi``/``x``:  ``P^_0 = xi``, ``Q^_0 = g`` and

      P^_k = P^'_{k-1} (1+h) - (2k-1) P^_{k-1} h',
      Q^_k = Q^'_{k-1} - (k-2) f Q^_{k-1}.

* rational -- fully polynomial for rational f = Nf/Df, g = Ng/Dg
  (denominators normalised to constant coefficient 1): the P side is the
  reduced one, ``Q_0 = Ng`` and with U = Dg Df', V = Dg Nf, W = Dg' Df,
  C = Dg Df,

      Q_k = Q_{k-1} ((1-k) U + (2-k) V - k W) + Q'_{k-1} C.

Each family runs in two evaluation modes: *truncated* shrinks the
working order to M-k at step k (the minimal order that still yields
every condition up to M), while *untruncated* keeps the full initial
working order M at every step.  All six runs produce identical
condition polynomials; they differ only in cost.

Variant labels: A0/A1 = direct untruncated/truncated, A2/A3 = reduced
truncated/untruncated, A4/A5 = rational truncated/untruncated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lienard import XI, LienardSystem, validate_lienard
from .poly import ParamPoly, VarContext
from .rationals import Rat, rat
from .series import XSeries


class InvalidSystemError(ValueError):
    """System failed structural validation; ``problems`` lists violations."""

    def __init__(self, problems):
        super().__init__("invalid system: " + "; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class UrabeSeries:
    """The odd series h: a tuple of entries, one per odd power of xi.

    Entry j is the coefficient of ``xi**(2j+1)`` and is either a symbolic
    name (``"c1"``, ``"c3"``, ...) or an exact rational value.
    """

    entries: tuple = ()

    @staticmethod
    def min_count_for_order(M: int) -> int:
        """Smallest number of odd coefficients that order M can involve."""
        return max(0, (M - 1) // 2)

    @classmethod
    def symbolic(cls, count: int) -> "UrabeSeries":
        return cls(tuple(f"c{2 * j + 1}" for j in range(count)))

    @classmethod
    def for_order(cls, M: int) -> "UrabeSeries":
        return cls.symbolic(cls.min_count_for_order(M))

    @classmethod
    def from_values(cls, values) -> "UrabeSeries":
        return cls(tuple(rat(v) if isinstance(v, (int, str)) else v for v in values))

    @property
    def count(self) -> int:
        return len(self.entries)

    def symbolic_names(self):
        return tuple(e for e in self.entries if isinstance(e, str))

    def is_numeric(self) -> bool:
        return not self.symbolic_names()

    def signature(self):
        return tuple(e if isinstance(e, str) else str(e) for e in self.entries)

    def bind(self, bindings: dict) -> "UrabeSeries":
        """Replace named entries by exact values where bound."""
        out = []
        for e in self.entries:
            if isinstance(e, str) and e in bindings:
                v = bindings[e]
                out.append(rat(v) if isinstance(v, (int, str)) else v)
            else:
                out.append(e)
        return UrabeSeries(tuple(out))

    def realize(self, ctx: VarContext) -> XSeries:
        """The series h as an exact odd polynomial in xi over ``ctx``."""
        if not self.entries:
            return XSeries.zeros(ctx, XI, 1)
        zero = ParamPoly.zero(ctx)
        coeffs = [zero] * (2 * len(self.entries))
        for j, e in enumerate(self.entries):
            if isinstance(e, str):
                coeffs[2 * j + 1] = ParamPoly.variable(ctx, e)
            else:
                coeffs[2 * j + 1] = ParamPoly.const(ctx, e)
        return XSeries(ctx, XI, coeffs)


#: variant label -> (family, truncated)
VARIANTS = {
    "A0": ("direct", False),
    "A1": ("direct", True),
    "A2": ("reduced", True),
    "A3": ("reduced", False),
    "A4": ("rational", True),
    "A5": ("rational", False),
}


def normalize_variant(label: str) -> str:
    up = str(label).strip().upper()
    if up not in VARIANTS:
        raise ValueError(f"unknown variant {label!r}; expected one of {sorted(VARIANTS)}")
    return up


@dataclass(frozen=True)
class ConditionSet:
    """The polynomials ``P_k(0) - Q_k(0)`` for k = 0..M, plus provenance."""

    variant: str
    M: int
    truncated: bool
    ctx: VarContext
    values: tuple
    system_fingerprint: str = ""
    urabe_signature: tuple = ()

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k: int) -> ParamPoly:
        return self.values[k]

    def texts(self):
        return [v.text() for v in self.values]

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant,
            "M": self.M,
            "truncated": self.truncated,
            "conditions": self.texts(),
        }


@dataclass(frozen=True)
class ConditionTrace:
    """A condition set plus (optionally) the per-step P and Q series."""

    conditions: ConditionSet
    p_steps: tuple = None
    q_steps: tuple = None


@dataclass(frozen=True)
class AgreementReport:
    agree: bool
    detail: str = ""
    index: int = None
    left: str = None
    right: str = None

    def __bool__(self):
        return self.agree


def conditions_agree(sets) -> AgreementReport:
    """Term-by-term comparison of several condition sets.

    All sets must share M; the first is the reference.  On divergence the
    report carries the first differing index and both renderings.
    """
    sets = list(sets)
    if len(sets) < 2:
        return AgreementReport(True, "fewer than two sets")
    ref = sets[0]
    for other in sets[1:]:
        if other.M != ref.M:
            return AgreementReport(
                False, f"orders differ: {ref.variant} has M={ref.M}, "
                f"{other.variant} has M={other.M}"
            )
        if other.ctx != ref.ctx:
            return AgreementReport(
                False, f"parameter contexts differ between {ref.variant} and {other.variant}"
            )
        for k in range(ref.M + 1):
            if ref.values[k] != other.values[k]:
                return AgreementReport(
                    False,
                    f"condition {k} differs between {ref.variant} and {other.variant}",
                    index=k,
                    left=ref.values[k].text(),
                    right=other.values[k].text(),
                )
    return AgreementReport(True, f"all {ref.M + 1} conditions agree across {len(sets)} sets")


# ----------------------------------------------------------------------
# runners
# ----------------------------------------------------------------------


def _prepare(system: LienardSystem, urabe: UrabeSeries, M: int):
    if M < 1:
        raise ValueError("M must be >= 1")
    problems = validate_lienard(system)
    if problems:
        raise InvalidSystemError(problems)
    # A fully numeric table is a concrete h: entries beyond its length are
    # exactly zero, so any count is legitimate.  Symbolic series, by
    # contrast, must carry enough unknowns or the conditions would silently
    # omit coefficients that genuinely occur up to order M.
    if not urabe.is_numeric():
        need = UrabeSeries.min_count_for_order(M)
        if urabe.count < need:
            raise ValueError(
                f"h needs at least {need} odd coefficients for order M={M}, got {urabe.count}"
            )
    names = urabe.symbolic_names()
    ctx = system.ctx.extend(names)
    lifted = system.with_context(ctx) if names else system
    return ctx, lifted, urabe.realize(ctx)


def _finish(label, M, truncated, ctx, original_system, urabe, conds, p_steps, q_steps):
    cs = ConditionSet(
        variant=label,
        M=M,
        truncated=truncated,
        ctx=ctx,
        values=tuple(conds),
        system_fingerprint=original_system.fingerprint(),
        urabe_signature=urabe.signature(),
    )
    return ConditionTrace(
        conditions=cs,
        p_steps=tuple(p_steps) if p_steps is not None else None,
        q_steps=tuple(q_steps) if q_steps is not None else None,
    )


def _p_side_reduced(ctx, hs, M, truncated, tick, keep):
    """Shared P recurrence of the reduced and rational families.

    Yields (and optionally records) P^_k for k = 0..M.
    """
    one_plus_h = XSeries.const(ctx, XI, 1, 0) + hs
    hprime = hs.derivative()
    P = XSeries.identity(ctx, XI, 1)
    steps = [P] if keep else None
    values = [P.eval_zero()]
    for k in range(1, M + 1):
        if tick is not None:
            tick()
        lim = M - k if truncated else M
        term1 = P.derivative().mul(one_plus_h, order=lim, tick=tick)
        term2 = P.mul(hprime, order=lim, tick=tick).scale(Rat(2 * k - 1))
        P = term1 - term2
        if truncated:
            P = P.truncate(lim if lim >= 0 else 0)
        values.append(P.eval_zero())
        if keep:
            steps.append(P)
    return values, steps


def run_reduced(
    system: LienardSystem,
    urabe: UrabeSeries,
    M: int,
    truncated: bool = True,
    tick=None,
    keep_steps: bool = False,
) -> ConditionTrace:
    """Division-free recurrence on (f, g) expansions (variants A2/A3)."""
    ctx, sysL, hs = _prepare(system, urabe, M)
    p_vals, p_steps = _p_side_reduced(ctx, hs, M, truncated, tick, keep_steps)
    fs = sysL.f_series(M, tick=tick)
    Q = sysL.g_series(M, tick=tick)
    q_steps = [Q] if keep_steps else None
    conds = [p_vals[0] - Q.eval_zero()]
    for k in range(1, M + 1):
        if tick is not None:
            tick()
        lim = M - k if truncated else M
        Q = Q.derivative() - fs.mul(Q, order=lim, tick=tick).scale(Rat(k - 2))
        if truncated:
            Q = Q.truncate(lim if lim >= 0 else 0)
        conds.append(p_vals[k] - Q.eval_zero())
        if keep_steps:
            q_steps.append(Q)
    label = "A2" if truncated else "A3"
    return _finish(label, M, truncated, ctx, system, urabe, conds, p_steps, q_steps)


def run_direct(
    system: LienardSystem,
    urabe: UrabeSeries,
    M: int,
    truncated: bool = False,
    tick=None,
    keep_steps: bool = False,
) -> ConditionTrace:
    """Division-based recurrence (variants A0/A1)."""
    ctx, sysL, hs = _prepare(system, urabe, M)
    one_plus_h = XSeries.const(ctx, XI, 1, 0) + hs
    inv1h = one_plus_h.inverse(order=M, tick=tick)
    P = inv1h.shift_up(1).truncate(M)
    eF = sysL.expF_series(M, sign=1, tick=tick)
    emF = sysL.expF_series(M, sign=-1, tick=tick)
    Q = sysL.g_series(M, tick=tick).mul(eF, order=M, tick=tick)
    p_steps = [P] if keep_steps else None
    q_steps = [Q] if keep_steps else None
    conds = [P.eval_zero() - Q.eval_zero()]
    for k in range(1, M + 1):
        if tick is not None:
            tick()
        lim = M - k if truncated else M
        P = P.derivative().mul(inv1h, order=lim, tick=tick)
        Q = Q.derivative().mul(emF, order=lim, tick=tick)
        conds.append(P.eval_zero() - Q.eval_zero())
        if keep_steps:
            p_steps.append(P)
            q_steps.append(Q)
    label = "A1" if truncated else "A0"
    return _finish(label, M, truncated, ctx, system, urabe, conds, p_steps, q_steps)


def run_rational(
    system: LienardSystem,
    urabe: UrabeSeries,
    M: int,
    truncated: bool = True,
    tick=None,
    keep_steps: bool = False,
) -> ConditionTrace:
    """Fully polynomial recurrence on (Nf, Df, Ng, Dg) (variants A4/A5)."""
    ctx, sysL, hs = _prepare(system, urabe, M)
    p_vals, p_steps = _p_side_reduced(ctx, hs, M, truncated, tick, keep_steps)

    Nf = sysL.f.num.truncate(M)
    Df = sysL.f.den.truncate(M)
    Ng = sysL.g.num.truncate(M)
    Dg = sysL.g.den.truncate(M)
    U = Dg.mul(Df.derivative(), tick=tick)
    V = Dg.mul(Nf, tick=tick)
    W = Dg.derivative().mul(Df, tick=tick)
    C = Dg.mul(Df, tick=tick)

    Q = Ng
    q_steps = [Q] if keep_steps else None
    conds = [p_vals[0] - Q.eval_zero()]
    for k in range(1, M + 1):
        if tick is not None:
            tick()
        lim = M - k if truncated else M
        B = U.scale(Rat(1 - k)) + V.scale(Rat(2 - k)) - W.scale(Rat(k))
        Q = Q.mul(B, order=lim, tick=tick) + Q.derivative().mul(C, order=lim, tick=tick)
        if truncated:
            Q = Q.truncate(lim if lim >= 0 else 0)
        conds.append(p_vals[k] - Q.eval_zero())
        if keep_steps:
            q_steps.append(Q)
    label = "A4" if truncated else "A5"
    return _finish(label, M, truncated, ctx, system, urabe, conds, p_steps, q_steps)


_FAMILIES = {
    "direct": run_direct,
    "reduced": run_reduced,
    "rational": run_rational,
}


def run_variant(
    system: LienardSystem,
    urabe: UrabeSeries,
    M: int,
    variant: str,
    tick=None,
    keep_steps: bool = False,
) -> ConditionTrace:
    """Run one of A0..A5 by label."""
    label = normalize_variant(variant)
    family, truncated = VARIANTS[label]
    return _FAMILIES[family](
        system, urabe, M, truncated=truncated, tick=tick, keep_steps=keep_steps
    )
