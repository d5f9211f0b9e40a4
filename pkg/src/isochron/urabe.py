"""Solving for the odd h-coefficients and verifying candidate centers.

``eliminate_urabe`` walks a condition set in order and solves each
condition that is affine (with a nonzero rational coefficient) in its
lowest not-yet-solved odd coefficient; in the standard situation the
even-index conditions solve ``c1, c3, ...`` triangularly and the
odd-index conditions become pure parameter constraints (the residuals).

``verify_cri`` and ``verify_phi_identity`` check a concrete system and a
concrete h against the two defining identities of an isochronous center:

    (CRI)  xi(x) / (1 + h(xi(x))) = g(x) exp(F(x))
    (phi)  phi(x) = xi(x) + H(xi(x)),  H the antiderivative of h, H(0)=0

as exact series identities through a requested order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conditions import ConditionSet, UrabeSeries
from .lienard import XI, LienardSystem
from .poly import ParamPoly
from .rationals import Rat, rat
from .series import XSeries


@dataclass(frozen=True)
class EliminationStep:
    """One solved coefficient: condition ``index`` gave ``name = value``."""

    index: int
    name: str
    value: ParamPoly


@dataclass(frozen=True)
class EliminationResult:
    conditions: ConditionSet
    steps: tuple
    residuals: tuple          # (condition index, polynomial after substitution)
    unsolved: tuple           # names never solved

    @property
    def solved(self) -> dict:
        return {s.name: s.value for s in self.steps}

    def all_residuals_zero(self) -> bool:
        return all(not poly for _, poly in self.residuals)

    def nonzero_residuals(self):
        return [(k, poly) for k, poly in self.residuals if poly]

    def to_json_dict(self) -> dict:
        return {
            "variant": self.conditions.variant,
            "M": self.conditions.M,
            "truncated": self.conditions.truncated,
            "solved": {s.name: s.value.text() for s in self.steps},
            "solved_order": [s.name for s in self.steps],
            "residuals": [
                {"index": k, "condition": poly.text()} for k, poly in self.residuals
            ],
            "unsolved": list(self.unsolved),
            "all_residuals_zero": self.all_residuals_zero(),
        }


def _apply_solutions(poly: ParamPoly, steps) -> ParamPoly:
    """Substitute solved coefficients, repeating until stable.

    Solutions are triangular in the usual case, so one pass suffices;
    the loop guards against values that mention later-solved names.
    """
    for _ in range(len(steps) + 1):
        touched = False
        used = poly.variables_used()
        for step in steps:
            if step.name in used:
                poly = poly.substitute_poly(step.name, step.value)
                touched = True
        if not touched:
            break
    return poly


def eliminate_urabe(conditions: ConditionSet) -> EliminationResult:
    """Triangular elimination of the symbolic odd coefficients.

    Conditions are processed in index order.  A condition that still
    contains unsolved odd coefficients is used to solve the lowest one,
    provided it appears affinely with a nonzero exact-rational
    coefficient; anything else lands in the residual list (after
    substituting all previously solved coefficients).  Conditions that
    reduce to zero under the current solutions are dropped silently —
    they constrain nothing.
    """
    names = [e for e in conditions.urabe_signature if not _is_value(e)]
    order_of = {n: i for i, n in enumerate(names)}
    steps = []
    solved_names = set()
    residuals = []
    for k, cond in enumerate(conditions.values):
        poly = _apply_solutions(cond, steps)
        if not poly:
            continue
        present = [
            n for n in poly.variables_used()
            if n in order_of and n not in solved_names
        ]
        if not present:
            residuals.append((k, poly))
            continue
        target = min(present, key=order_of.get)
        parts = poly.coefficients_in(target)
        lead = parts.get(1)
        degree = poly.degree_in(target)
        lead_const = lead.constant_value() if lead is not None else None
        if degree == 1 and lead_const not in (None, Rat(0)):
            value = parts.get(0, ParamPoly.zero(poly.ctx)).scale(-1 / lead_const)
            steps.append(EliminationStep(index=k, name=target, value=value))
            solved_names.add(target)
        else:
            residuals.append((k, poly))
    unsolved = tuple(n for n in names if n not in solved_names)
    return EliminationResult(
        conditions=conditions,
        steps=tuple(steps),
        residuals=tuple(residuals),
        unsolved=unsolved,
    )


def _is_value(entry: str) -> bool:
    """Signature entries are names (``c3``) or rendered rationals."""
    return not entry or not entry[0].isalpha()


def substitute_urabe(conditions: ConditionSet, bindings: dict) -> ConditionSet:
    """Bind every symbolic odd coefficient appearing in the set.

    ``bindings`` maps names to exact rationals and must cover all names
    that actually occur; partial substitution would silently change the
    meaning of the set, so it is rejected.  Bindings for names that do
    not occur at all are ignored, so a long table of known coefficients
    can be passed as-is.
    """
    clean = {
        k: rat(v) if isinstance(v, (int, str)) else v
        for k, v in bindings.items()
        if k in conditions.ctx
    }
    names = {e for e in conditions.urabe_signature if not _is_value(e)}
    occurring = set()
    for poly in conditions.values:
        occurring |= poly.variables_used() & names
    missing = sorted(occurring - set(clean))
    if missing:
        raise ValueError(f"missing bindings for odd coefficients: {missing}")
    values = tuple(p.substitute(clean) for p in conditions.values)
    new_sig = tuple(
        str(clean[e]) if (e in clean and not _is_value(e)) else e
        for e in conditions.urabe_signature
    )
    return ConditionSet(
        variant=conditions.variant,
        M=conditions.M,
        truncated=conditions.truncated,
        ctx=conditions.ctx,
        values=values,
        system_fingerprint=conditions.system_fingerprint,
        urabe_signature=new_sig,
    )


# ----------------------------------------------------------------------
# identity checks
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyResult:
    identity: str
    order: int
    ok: bool
    mismatch_index: int = None
    lhs: str = None
    rhs: str = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"{self.identity}: identity holds through order {self.order}"
        return (
            f"{self.identity}: first mismatch at order {self.mismatch_index}: "
            f"{self.lhs} != {self.rhs}"
        )


def _realize_h(system: LienardSystem, h) -> XSeries:
    if isinstance(h, UrabeSeries):
        return h.realize(system.ctx)
    if isinstance(h, XSeries):
        if h.var != XI:
            raise ValueError(f"h must be a series in {XI!r}")
        if h.ctx != system.ctx:
            return XSeries(system.ctx, XI, [c.relabel(system.ctx) for c in h.coeffs])
        return h
    raise TypeError("h must be an UrabeSeries or an XSeries in xi")


def _compare(identity, order, lhs: XSeries, rhs: XSeries) -> VerifyResult:
    for i in range(order + 1):
        a = lhs.coefficient(i)
        b = rhs.coefficient(i)
        if a != b:
            return VerifyResult(
                identity=identity,
                order=order,
                ok=False,
                mismatch_index=i,
                lhs=a.text(),
                rhs=b.text(),
            )
    return VerifyResult(identity=identity, order=order, ok=True)


def verify_cri(system: LienardSystem, h, order: int, tick=None) -> VerifyResult:
    """Check xi/(1 + h(xi)) = g exp(F) as series in x through ``order``."""
    hs = _realize_h(system, h)
    xi = system.xi_series(order, tick=tick)
    h_of_xi = hs.compose(xi, order=order, tick=tick)
    denom = XSeries.const(system.ctx, "x", 1, 0) + h_of_xi
    lhs = xi.mul(denom.inverse(order=order, tick=tick), order=order, tick=tick)
    rhs = system.g_series(order, tick=tick).mul(
        system.expF_series(order, tick=tick), order=order, tick=tick
    )
    return _compare("cri", order, lhs, rhs)


def verify_phi_identity(system: LienardSystem, h, order: int, tick=None) -> VerifyResult:
    """Check phi = xi + H(xi) (H the antiderivative of h) through ``order``."""
    hs = _realize_h(system, h)
    xi = system.xi_series(order, tick=tick)
    H = hs.integrate()
    rhs = xi + H.compose(xi, order=order, tick=tick)
    lhs = system.phi_series(order, tick=tick)
    return _compare("phi", order, lhs, rhs)
