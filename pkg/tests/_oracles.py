"""Independently coded reference computations used as test oracles.

Everything here works from first principles (Taylor coefficients of the
defining identities) with sympy expressions as coefficients — none of the
package's recurrences or series kernels are reused.  The package is only
imported to *construct* input systems, never to compute expected values.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp

from isochron import LienardSystem, ParamPoly, VarContext, XSeries
from isochron.lienard import X


# ----------------------------------------------------------------------
# randomized valid systems
# ----------------------------------------------------------------------


def random_rat(rng: random.Random, lo=-5, hi=5, dens=(1, 1, 2, 3, 4)) -> Fraction:
    """Uniform-ish rational in [lo, hi] with a small denominator."""
    den = rng.choice(dens)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def random_poly_coeffs(rng: random.Random, max_deg=4):
    """Coefficient lists (f, g) for a valid polynomial system.

    g(0) = 0 and g'(0) = 1 are forced (validity); everything else is a
    random rational in [-5, 5].  Degrees are random up to ``max_deg``.
    """
    fdeg = rng.randint(0, max_deg)
    gdeg = rng.randint(1, max_deg)
    f = [random_rat(rng) for _ in range(fdeg + 1)]
    g = [Fraction(0), Fraction(1)] + [random_rat(rng) for _ in range(gdeg - 1)]
    return f, g


def random_den_coeffs(rng: random.Random, max_deg=2):
    """A denominator with constant term 1 and small random higher terms."""
    deg = rng.randint(0, max_deg)
    return [Fraction(1)] + [random_rat(rng, -2, 2) for _ in range(deg)]


def build_system(f_num, g_num, f_den=None, g_den=None) -> LienardSystem:
    """Package a coefficient-list description as a LienardSystem."""
    ctx = VarContext(())

    def ser(coeffs):
        return XSeries.poly(ctx, X, [ParamPoly.const(ctx, _to_rat_str(c)) for c in coeffs])

    return LienardSystem.from_polys(
        ser(f_num),
        ser(g_num),
        ser(f_den) if f_den is not None else None,
        ser(g_den) if g_den is not None else None,
    )


def _to_rat_str(c):
    frac = Fraction(c)
    return f"{frac.numerator}/{frac.denominator}" if frac.denominator != 1 else str(frac.numerator)


def random_system(rng: random.Random, max_deg=4, rational=False):
    """A random valid system plus its Fraction coefficient lists."""
    f, g = random_poly_coeffs(rng, max_deg)
    fd = random_den_coeffs(rng) if rational and rng.random() < 0.7 else None
    gd = random_den_coeffs(rng) if rational and rng.random() < 0.7 else None
    return build_system(f, g, fd, gd), (f, g, fd, gd)


# ----------------------------------------------------------------------
# sympy-coefficient truncated series helpers (lists: index = power of x)
# ----------------------------------------------------------------------


def s_trim(a, n):
    return list(a[: n + 1]) + [sp.Integer(0)] * (n + 1 - len(a))


def s_mul(a, b, n):
    out = [sp.Integer(0)] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n + 1 - i]):
            if bj == 0:
                continue
            out[i + j] = sp.expand(out[i + j] + ai * bj)
    return out

def s_add(a, b):
    n = max(len(a), len(b))
    a = a + [sp.Integer(0)] * (n - len(a))
    b = b + [sp.Integer(0)] * (n - len(b))
    return [sp.expand(x + y) for x, y in zip(a, b)]


def _q(c):
    """Exact conversion to a sympy expression (no float round trips)."""
    if isinstance(c, Fraction):
        return sp.Rational(c.numerator, c.denominator)
    if isinstance(c, int):
        return sp.Integer(c)
    return sp.sympify(c)


def s_int(a):
    """Antiderivative with zero constant term."""
    return [sp.Integer(0)] + [c / sp.Integer(i + 1) for i, c in enumerate(a)]


def s_inv(a, n):
    """Reciprocal of a series with a(0) = 1."""
    assert sp.simplify(a[0] - 1) == 0
    a = s_trim(a, n)
    out = [sp.Integer(1)] + [sp.Integer(0)] * n
    for k in range(1, n + 1):
        acc = sp.Integer(0)
        for j in range(1, k + 1):
            acc += a[j] * out[k - j]
        out[k] = sp.expand(-acc)
    return out


def s_exp(a, n):
    """exp of a series with a(0) = 0, via exp' = a'·exp."""
    assert a[0] == 0
    a = s_trim(a, n)
    out = [sp.Integer(1)] + [sp.Integer(0)] * n
    for k in range(1, n + 1):
        acc = sp.Integer(0)
        for j in range(1, k + 1):
            acc += j * a[j] * out[k - j]
        out[k] = sp.expand(acc / k)
    return out


def s_sqrt(a, n):
    """Square root of a series with a(0) = 1."""
    assert sp.simplify(a[0] - 1) == 0
    a = s_trim(a, n)
    out = [sp.Integer(1)] + [sp.Integer(0)] * n
    for k in range(1, n + 1):
        acc = sp.Integer(0)
        for j in range(1, k):
            acc += out[j] * out[k - j]
        out[k] = sp.expand((a[k] - acc) / 2)
    return out


def s_compose(outer, inner, n):
    """outer(inner(x)) with inner(0) = 0, Horner on the truncated outer."""
    assert inner[0] == 0
    outer = s_trim(outer, n)
    inner = s_trim(inner, n)
    out = [outer[-1]] + [sp.Integer(0)] * n
    for c in reversed(outer[:-1]):
        out = s_mul(out, inner, n)
        out[0] = sp.expand(out[0] + c)
    return out


def s_revert(a, n):
    """Compositional inverse of a = x + O(x^2) (a[0]=0, a[1]=1)."""
    assert a[0] == 0 and sp.simplify(a[1] - 1) == 0
    rev = [sp.Integer(0), sp.Integer(1)] + [sp.Integer(0)] * (n - 1)
    for k in range(2, n + 1):
        err = s_compose(s_trim(a, k), rev, k)[k]
        rev[k] = sp.expand(-err)
    return rev


# ----------------------------------------------------------------------
# first-principles oracles
# ----------------------------------------------------------------------


def _rf_series(num, den, n):
    num = [_q(c) for c in num]
    if den is None:
        return s_trim(num, n)
    den = [_q(c) for c in den]
    return s_mul(s_trim(num, n), s_inv(den, n), n)


def oracle_core_series(f_num, g_num, f_den, g_den, n):
    """The defining series of a system: f, g, F, e^F, phi, xi (order n)."""
    f = _rf_series(f_num, f_den, n)
    g = _rf_series(g_num, g_den, n)
    F = s_trim(s_int(f), n)
    eF = s_exp(F, n)
    phi = s_trim(s_int(eF), n)
    e2F = s_exp([2 * c for c in F], n)
    # xi = sqrt(2 * integral of g e^{2F}); the integrand starts at x,
    # the integral at x^2/2, so xi = x * sqrt(inner) with inner(0)=1.
    acc = s_trim(s_int(s_mul(g, e2F, n + 1)), n + 1)
    inner = [sp.expand(2 * c) for c in acc[2:]]
    inner = s_trim(inner, n - 1)
    xi = [sp.Integer(0)] + s_sqrt(inner, n - 1)
    return f, g, F, eF, phi, s_trim(xi, n)


def oracle_xi(f_num, g_num, f_den=None, g_den=None, order=8):
    """Taylor coefficients of xi(x) from its definition, as sympy values."""
    return oracle_core_series(f_num, g_num, f_den, g_den, order)[5]


def oracle_cri_sides(f_num, g_num, h_odd, order, f_den=None, g_den=None):
    """Both sides of the center identity xi/(1+h(xi)) = g·e^F as x-series.

    ``h_odd`` lists the coefficients of xi, xi^3, xi^5, ... (sympy-able).
    """
    _, g, _, eF, _, xi = oracle_core_series(f_num, g_num, f_den, g_den, order)
    hpoly = [sp.Integer(0)] * (2 * len(h_odd))
    for j, c in enumerate(h_odd):
        hpoly[2 * j + 1] = _q(c)
    h_of_xi = s_compose(s_trim(hpoly, order), xi, order)
    one_plus = [sp.expand(1 + h_of_xi[0])] + h_of_xi[1:]
    lhs = s_mul(xi, s_inv(one_plus, order), order)
    rhs = s_mul(g, eF, order)
    return lhs, rhs


def first_mismatch(a, b):
    """Index of the first differing coefficient, or None."""
    for i, (x, y) in enumerate(zip(a, b)):
        if sp.simplify(sp.expand(x - y)) != 0:
            return i
    return None


def oracle_conditions(f_num, g_num, M, n_cs, f_den=None, g_den=None):
    """First-principles condition polynomials 0..M in symbolic c1,c3,...

    Both sides of the center identity are rewritten in their *own*
    natural time variable and differentiated at 0:

    * left side:  with s = xi + H(xi) (H = integral of h), invert to
      xi = xi^(s); then a_k = k! · [s^k] xi^(s)/(1 + h(xi^(s))).
    * right side: with u = phi(x), invert to x = x^(u); then
      b_k = k! · [u^k] g(x^(u))·e^{F(x^(u))}.

    condition_k = a_k − b_k.  No recurrence from the package is used:
    only series inversion/composition, coded above.
    """
    cs = [sp.Symbol(f"c{2 * j + 1}") for j in range(n_cs)]

    # left side: pure h bookkeeping in xi
    hpoly = [sp.Integer(0)] * (M + 1)
    for j, c in enumerate(cs):
        if 2 * j + 1 <= M:
            hpoly[2 * j + 1] = c
    H = s_trim(s_int(hpoly), M)
    s_of_xi = s_add(
        [sp.Integer(0), sp.Integer(1)] + [sp.Integer(0)] * (M - 1), H
    )
    xi_hat = s_revert(s_trim(s_of_xi, M), M)
    h_at = s_compose(hpoly, xi_hat, M)
    one_plus = [sp.expand(1 + h_at[0])] + h_at[1:]
    a_side = s_mul(xi_hat, s_inv(one_plus, M), M)

    # right side: pure system bookkeeping in x
    _, g, _, eF, phi, _ = oracle_core_series(f_num, g_num, f_den, g_den, M)
    x_hat = s_revert(phi, M)
    b_side = s_compose(s_mul(g, eF, M), x_hat, M)

    return [
        sp.expand(sp.factorial(k) * (a_side[k] - b_side[k])) for k in range(M + 1)
    ]


# ----------------------------------------------------------------------
# bridging engine output to sympy
# ----------------------------------------------------------------------


def poly_text_to_sympy(text: str):
    """Parse the engine's canonical polynomial string into a sympy expr."""
    return sp.sympify(text.replace("^", "**"), rational=True)


def series_to_sympy(series) -> list:
    """Engine XSeries -> list of sympy exprs (via canonical texts)."""
    return [poly_text_to_sympy(c.text()) for c in series.coeffs]
