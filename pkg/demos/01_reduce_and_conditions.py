"""From a planar system to its isochronicity conditions.

A planar system

    x' = -y + y * p1(x),      y' = q0(x) + y^2 * q2(x)

with q1 = 0 reduces, by a Cherkas-type change of variable, to a
Lienard-type equation  x'' + f(x) x'^2 + g(x) = 0.  The necessary
conditions for an isochronous center at the origin are then polynomial
equations in the system parameters and the odd coefficients c1, c3, ...
of the (unknown) Urabe function h.

This script reduces the nine-parameter quartic family, computes the
first few conditions, and solves the c's out of them.
"""

from isochron import UrabeSeries, eliminate_urabe, run_variant
from isochron.catalog import quartic_planar
from isochron.lienard import cherkas_reduce


def poly_text(series):
    parts = []
    for i in range(series.order + 1):
        c = series.coefficient(i)
        if c:
            parts.append(f"({c.text()})" + ("" if i == 0 else f"*x^{i}"))
    return " + ".join(parts) or "0"


planar = quartic_planar()
print("planar family parameters:", ", ".join(planar.p1.ctx.names))
print("  p1 =", poly_text(planar.p1))
print("  q0 =", poly_text(planar.q0))
print("  q2 =", poly_text(planar.q2))

system = cherkas_reduce(planar)
print("\nreduced Lienard form (f rational in x, g polynomial):")
print("  f =", poly_text(system.f.num), "  over  ", poly_text(system.f.den))
print("  g =", poly_text(system.g.num))

M = 5
conds = run_variant(system, UrabeSeries.for_order(M), M, "A4").conditions
print(f"\nfirst {M + 1} necessary conditions (variant A4):")
for k, text in enumerate(conds.texts()):
    print(f"  [{k}] {text}")

result = eliminate_urabe(conds)
print("\nodd h-coefficients solved out of the even-index conditions:")
for step in result.steps:
    print(f"  condition {step.index}:  {step.name} = {step.value.text()}")
print("\nwhat remains are pure constraints on the system parameters:")
for index, poly in result.nonzero_residuals():
    print(f"  condition {index}: polynomial with {len(poly.variables_used())} "
          f"parameters, degree {poly.total_degree()}")
print("\na parameter choice is a candidate isochronous center exactly when")
print("every such residual vanishes (and then the solved c's give its h).")
