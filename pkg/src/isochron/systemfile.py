"""Strict JSON interchange for systems and h-coefficient tables.

A system file is a JSON object with a ``parameters`` list (the declared
order fixes the canonical term order of everything downstream) and
exactly one of:

* ``lienard``: ``{"f": {"num": [...], "den": [...]}, "g": {...}}``
* ``planar``:  ``{"p1": [...], "q0": [...], "q2": [...]}`` with optional
  ``p0`` and ``q1`` entries (default zero).

A polynomial is a list of terms ``{"coeff": "p/q", "x": n, "params":
{"name": exp}}``; ``params`` may be omitted for parameter-free terms and
``den`` may be omitted for denominator 1.  Coefficients are exact
rational literals only — no floats.  Unknown keys are rejected anywhere,
so a typo fails loudly instead of silently dropping a term.

An h-coefficient table (used by ``verify``) is
``{"var": "xi", "odd_coeffs": ["3/4", "-9/128", ...]}`` listing the
coefficients of the odd powers xi^1, xi^3, ... in order.

``emit_system(parse_system(obj)) == obj`` for canonical files (terms in
canonical order, explicit ``params`` and ``den``).
"""

from __future__ import annotations

from .conditions import UrabeSeries
from .lienard import X, LienardSystem, PlanarSystem, RationalFunctionX
from .poly import ParamPoly, VarContext
from .rationals import format_rat, parse_rat
from .series import XSeries


class SystemFormatError(ValueError):
    """A system file violated the format; the message carries the path."""


def _fail(path, message):
    raise SystemFormatError(f"{path}: {message}")


def _check_keys(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    keys = set(obj)
    missing = sorted(set(required) - keys)
    if missing:
        _fail(path, f"missing keys: {missing}")
    unknown = sorted(keys - set(required) - set(optional))
    if unknown:
        _fail(path, f"unknown keys: {unknown}")


def _parse_terms(entries, ctx, path) -> XSeries:
    if not isinstance(entries, list):
        _fail(path, "expected a list of terms")
    coeffs = {}
    max_x = 0
    for i, term in enumerate(entries):
        tpath = f"{path}[{i}]"
        _check_keys(term, tpath, required=("coeff", "x"), optional=("params",))
        try:
            coeff = parse_rat(term["coeff"])
        except ValueError as e:
            _fail(f"{tpath}.coeff", str(e))
        xpow = term["x"]
        if not isinstance(xpow, int) or isinstance(xpow, bool) or xpow < 0:
            _fail(f"{tpath}.x", f"must be a nonnegative integer, got {xpow!r}")
        powers = term.get("params", {})
        if not isinstance(powers, dict):
            _fail(f"{tpath}.params", "expected an object")
        for name, exp in powers.items():
            if name not in ctx:
                _fail(f"{tpath}.params", f"undeclared parameter {name!r}")
            if not isinstance(exp, int) or isinstance(exp, bool) or exp <= 0:
                _fail(f"{tpath}.params.{name}", f"exponent must be a positive integer, got {exp!r}")
        mono = ParamPoly.monomial(ctx, coeff, powers)
        coeffs[xpow] = coeffs.get(xpow, ParamPoly.zero(ctx)) + mono
        max_x = max(max_x, xpow)
    out = [coeffs.get(i, ParamPoly.zero(ctx)) for i in range(max_x + 1)]
    return XSeries(ctx, X, out)


def _parse_rational_function(obj, ctx, path) -> RationalFunctionX:
    _check_keys(obj, path, required=("num",), optional=("den",))
    num = _parse_terms(obj["num"], ctx, f"{path}.num")
    if "den" in obj:
        den = _parse_terms(obj["den"], ctx, f"{path}.den")
    else:
        den = XSeries.const(ctx, X, 1)
    return RationalFunctionX(num, den)


def _parse_parameters(obj) -> VarContext:
    names = obj["parameters"]
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        _fail("parameters", "expected a list of names")
    try:
        return VarContext(names)
    except ValueError as e:
        _fail("parameters", str(e))


def parse_system(obj: dict):
    """Parse a JSON object into a LienardSystem or PlanarSystem."""
    _check_keys(obj, "system", required=("parameters",), optional=("lienard", "planar"))
    has_l = "lienard" in obj
    has_p = "planar" in obj
    if has_l == has_p:
        _fail("system", "exactly one of 'lienard' or 'planar' is required")
    ctx = _parse_parameters(obj)
    if has_l:
        body = obj["lienard"]
        _check_keys(body, "lienard", required=("f", "g"))
        return LienardSystem(
            _parse_rational_function(body["f"], ctx, "lienard.f"),
            _parse_rational_function(body["g"], ctx, "lienard.g"),
        )
    body = obj["planar"]
    _check_keys(body, "planar", required=("p1", "q0", "q2"), optional=("p0", "q1"))
    parts = {
        key: _parse_terms(body[key], ctx, f"planar.{key}")
        for key in ("p1", "q0", "q2")
    }
    extras = {
        key: _parse_terms(body[key], ctx, f"planar.{key}")
        for key in ("p0", "q1")
        if key in body
    }
    return PlanarSystem(p1=parts["p1"], q0=parts["q0"], q2=parts["q2"], **extras)


# ----------------------------------------------------------------------
# emission
# ----------------------------------------------------------------------


def _emit_terms(series: XSeries) -> list:
    ctx = series.ctx
    out = []
    for xpow, coeff in enumerate(series.coeffs):
        for key in sorted(coeff.terms):
            powers = {
                name: e
                for name, e in zip(ctx.names, ctx.unpack(key))
                if e
            }
            out.append(
                {
                    "coeff": format_rat(coeff.terms[key]),
                    "x": xpow,
                    "params": powers,
                }
            )
    return out


def emit_system(system) -> dict:
    """Canonical JSON object for a system (inverse of :func:`parse_system`)."""
    if isinstance(system, LienardSystem):
        return {
            "parameters": list(system.ctx.names),
            "lienard": {
                "f": {
                    "num": _emit_terms(system.f.num),
                    "den": _emit_terms(system.f.den),
                },
                "g": {
                    "num": _emit_terms(system.g.num),
                    "den": _emit_terms(system.g.den),
                },
            },
        }
    if isinstance(system, PlanarSystem):
        body = {
            "p1": _emit_terms(system.p1),
            "q0": _emit_terms(system.q0),
            "q2": _emit_terms(system.q2),
        }
        if not system.p0.is_zero():
            body["p0"] = _emit_terms(system.p0)
        if not system.q1.is_zero():
            body["q1"] = _emit_terms(system.q1)
        return {"parameters": list(system.ctx.names), "planar": body}
    raise TypeError(f"cannot emit {type(system).__name__}")


def parse_urabe_table(obj: dict) -> UrabeSeries:
    """Parse ``{"var": "xi", "odd_coeffs": [...]}`` into bound values."""
    _check_keys(obj, "urabe", required=("var", "odd_coeffs"))
    if obj["var"] != "xi":
        _fail("urabe.var", f"must be 'xi', got {obj['var']!r}")
    coeffs = obj["odd_coeffs"]
    if not isinstance(coeffs, list):
        _fail("urabe.odd_coeffs", "expected a list")
    values = []
    for i, c in enumerate(coeffs):
        try:
            values.append(parse_rat(c))
        except ValueError as e:
            _fail(f"urabe.odd_coeffs[{i}]", str(e))
    return UrabeSeries.from_values(values)


def emit_urabe_table(urabe: UrabeSeries) -> dict:
    if not urabe.is_numeric():
        raise ValueError("cannot emit a table with unsolved symbolic entries")
    return {
        "var": "xi",
        "odd_coeffs": [format_rat(e) for e in urabe.entries],
    }
