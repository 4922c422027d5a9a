"""A tour of one real quadratic differential on a genus-2 curve.

Run with ``python3 notebooks/01_worked_example.py``.
"""

from realhitchin.counting import count_gl, count_gl2, count_sl2
from realhitchin.curve import build_curve
from realhitchin.klein import classify_hyperelliptic
from realhitchin.monodromy import oracle_traces
from realhitchin.spectral import QuadDifferential, analyze, ovals, spectral_genus

# Six real branch points give three ovals for complex conjugation.
curve = build_curve("(z^2-1)(z^2-4)(z^2-9)")
print("genus", curve.g, "real root pairs", curve.k)
print("ovals:", [o.describe(curve) for o in ovals(curve)])

# The Klein invariants: three ovals, complement disconnected.
inv = classify_hyperelliptic(curve, "ConjF")
print("(n, a) =", (inv.n, inv.a))

# q = (z - 3/2)(z + 3/2) dz^2 / w^2 puts one zero on each of the two finite ovals.
q = QuadDifferential.from_pair(curve, "3/2", "-3/2")
sp = analyze(q)
print("zeros per oval:", sp.oval_zero_counts, " n+ =", sp.n_plus, " u =", sp.u)

# Each oval with 2k zeros lifts to k circles on the spectral curve;
# the zero-free oval where q > 0 lifts to two.
for trace in oracle_traces(q):
    print(f"  {trace.label:>16}: {trace.circles} circle(s), {len(trace.glue_points)} sign changes")
print("n_S =", sp.n_S)

# Component counts from the three formulas.
print("GL(2):", count_gl2(sp.n_plus, sp.u).count)
print("GL(n) via the spectral curve:", count_gl(sp.n_S, spectral_genus(2, curve.g)).count)
print("SL(2):", count_sl2(sp.n_zero, sp.u).count)
