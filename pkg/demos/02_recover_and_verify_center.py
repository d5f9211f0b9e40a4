"""Recover the Urabe function of a known isochronous center and verify it.

The quartic family specialized at b22 = 1/16 has an isochronous center
at the origin.  Its Urabe function h is not known in closed form here —
but the necessary conditions determine its odd coefficients uniquely,
one per even-index condition.  We solve them out, then feed the
recovered series back into the two defining identities

    (CRI)  xi(x) / (1 + h(xi(x))) = g(x) exp(F(x))
    (phi)  phi(x) = xi(x) + H(xi(x)),   H' = h, H(0) = 0

and check both as exact series identities.
"""

from isochron import (
    UrabeSeries,
    eliminate_urabe,
    run_variant,
    verify_cri,
    verify_phi_identity,
)
from isochron.catalog import one_parameter_quartic_reduced

def poly_text(series):
    parts = []
    for i in range(series.order + 1):
        c = series.coefficient(i)
        if c:
            parts.append(f"({c.text()})" + ("" if i == 0 else f"*x^{i}"))
    return " + ".join(parts) or "0"


system = one_parameter_quartic_reduced("1/16")
print("system: quartic family at b22 = 1/16")
print("  f =", poly_text(system.f.num), "  over  ", poly_text(system.f.den))
print("  g =", poly_text(system.g.num))

M = 12
count = 6  # condition 12 involves c11
conds = run_variant(system, UrabeSeries.symbolic(count), M, "A4").conditions
solution = eliminate_urabe(conds)
assert solution.all_residuals_zero(), "b22 = 1/16 should satisfy every condition"

values = []
for step in solution.steps:
    value = step.value.constant_value()
    values.append(value)
    print(f"condition {step.index:2d} forces {step.name:3s} = {value}")

h = UrabeSeries.from_values(values)
print("\nrecovered h(xi) =",
      " + ".join(f"({v})*xi^{2 * i + 1}" for i, v in enumerate(h.entries)))

for result in (verify_cri(system, h, M), verify_phi_identity(system, h, M)):
    print("PASS" if result.ok else "FAIL", result.describe())
