#!/usr/bin/env python3
"""Generate the h-coefficient fixture tables for the one-parameter
quartic family at b22 in {1/16, 0, -1/16}.

The three closed forms are expanded into exact rational series with
plain ``fractions.Fraction`` arithmetic on dense coefficient lists —
deliberately independent of the isochron package, so the fixtures can
serve as an external oracle for it.  Each h is odd, so we expand the
even part A(u) with u = xi^2 and emit the odd coefficients.

Closed forms (u = xi^2, W the principal Lambert function):

  b22 =  1/16:  h = sqrt(2) xi sqrt(2u + 32) (u + 12) / (2 (u + 4)(u + 16))
  b22 =  0:     h = sqrt(2) sqrt((u - 4 + 2 r)/u) xi (u + 2 r + 2)
                    / ((2 + u)(r + 6)),            r = sqrt(4 + 2u)
  b22 = -1/16:  h = sqrt(2) sqrt(2 L + 8) sqrt(u/L) (L + 3) L
                    / (2 xi (L + 4)(L + 1)),       L = W(u/4)

Usage:  python3 tools/make_urabe_fixtures.py [outdir]   (default tests/fixtures)
"""

from __future__ import annotations

import json
import math
import sys
from fractions import Fraction
from pathlib import Path

N = 16  # coefficients of A(u) per table -> odd xi-coefficients c1..c31


def mul(a, b, n=N):
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if not ai:
            continue
        for j, bj in enumerate(b[: n - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ]


def scale(a, s):
    s = Fraction(s)
    return [ai * s for ai in a]


def const(c, n=N):
    out = [Fraction(0)] * n
    out[0] = Fraction(c)
    return out


def inverse(a, n=N):
    """1/a for a with nonzero constant term."""
    out = [Fraction(0)] * n
    out[0] = 1 / Fraction(a[0])
    for k in range(1, n):
        s = Fraction(0)
        for j in range(1, min(k, len(a) - 1) + 1):
            s += Fraction(a[j]) * out[k - j]
        out[k] = -s * out[0]
    return out


def sqrt_series(a, n=N):
    """sqrt(a) for a with positive rational square constant term."""
    c0 = Fraction(a[0])
    root = Fraction(
        math.isqrt(c0.numerator), math.isqrt(c0.denominator)
    )
    assert root * root == c0, f"constant term {c0} is not a rational square"
    out = [Fraction(0)] * n
    out[0] = root
    half = 1 / (2 * root)
    for k in range(1, n):
        s = Fraction(a[k]) if k < len(a) else Fraction(0)
        for j in range(1, k):
            s -= out[j] * out[k - j]
        out[k] = s * half
    return out


def shift_down(a, k):
    assert all(x == 0 for x in a[:k]), "shift would drop nonzero terms"
    return a[k:] + [Fraction(0)] * k


def poly(*coeffs):
    out = [Fraction(c) for c in coeffs] + [Fraction(0)] * (N - len(coeffs))
    return out[:N]


def lambertw_series(n=N):
    """W(z) = sum_{k>=1} (-k)^(k-1)/k! z^k (principal branch at 0)."""
    out = [Fraction(0)] * n
    for k in range(1, n):
        out[k] = Fraction((-k) ** (k - 1), math.factorial(k))
    return out


def compose(outer, inner, n=N):
    """outer(inner(u)) for inner with zero constant term."""
    assert inner[0] == 0
    acc = const(outer[min(len(outer), n) - 1], n)
    for k in range(min(len(outer), n) - 2, -1, -1):
        acc = mul(acc, inner, n)
        acc[0] += Fraction(outer[k])
    return acc


def even_part_b22_one_sixteenth():
    # sqrt(2) sqrt(2u+32) = 2 sqrt(u+16) = 8 sqrt(1 + u/16)
    root = scale(sqrt_series(poly(1, Fraction(1, 16))), 8)
    num = mul(root, poly(12, 1))
    den = mul(poly(4, 1), poly(16, 1))
    return scale(mul(num, inverse(den)), Fraction(1, 2))


def even_part_b22_zero():
    r = scale(sqrt_series(poly(1, Fraction(1, 2))), 2)      # sqrt(4+2u)
    inner = add(poly(-4, 1), scale(r, 2))                   # u - 4 + 2r, starts at u
    ratio = shift_down(inner, 1)                            # (u - 4 + 2r)/u
    front = sqrt_series(scale(ratio, 2))                    # sqrt(2) sqrt(ratio)
    num = mul(front, add(poly(2, 1), scale(r, 2)))          # * (u + 2r + 2)
    den = mul(poly(2, 1), add(r, poly(6)))                  # (2+u)(r+6)
    return mul(num, inverse(den))


def even_part_b22_minus_one_sixteenth():
    L = compose(lambertw_series(), poly(0, Fraction(1, 4)))  # W(u/4), starts at u/4
    u_over_L = inverse(shift_down(L, 1))                     # u/L, constant 4
    # sqrt(2) sqrt(2L+8) sqrt(u/L) = 2 sqrt(L+4) sqrt(u/L)
    front = scale(mul(sqrt_series(add(L, poly(4))), sqrt_series(u_over_L)), 2)
    num = mul(mul(front, add(L, poly(3))), L)                # starts at u
    den = scale(mul(add(L, poly(4)), add(L, poly(1))), 2)
    b = mul(num, inverse(den))                               # B(u), h = B(u)/xi
    return shift_down(b, 1)                                  # B(u)/u


TABLES = {
    "urabe_b22_1_16.json": even_part_b22_one_sixteenth,
    "urabe_b22_0.json": even_part_b22_zero,
    "urabe_b22_m1_16.json": even_part_b22_minus_one_sixteenth,
}


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/fixtures")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, build in TABLES.items():
        coeffs = build()
        table = {"var": "xi", "odd_coeffs": [str(c) for c in coeffs]}
        path = outdir / name
        path.write_text(json.dumps(table, indent=2) + "\n", encoding="utf-8")
        print(f"{path}: c1..c{2 * len(coeffs) - 1} = {table['odd_coeffs'][:3]} ...")


if __name__ == "__main__":
    main()
