"""The mod-2 presentation behind the SL(2) count, for one genus-3 example."""

from realhitchin.counting import count_sl2
from realhitchin.homology import build_presentation, sl2_exponent, theta_kernel_dim, theta_squared_vanishes

# Two ovals, connected complement, two fixed zeros on the first oval.
pres = build_presentation(3, 2, 1, 3, 2, [0, 0])
print(pres.case, "with", len(pres.generators), "generators:", " ".join(pres.generators))
print(pres.theta.to_text())
print("theta squared vanishes:", theta_squared_vanishes(pres))

g, u = 3, 2
print("kernel dimension", theta_kernel_dim(pres), "expected", 3 * g - 3 + pres.n_zero + u // 2)
print("SL(2) exponent", sl2_exponent(pres), "formula", count_sl2(pres.n_zero, u).d)

# The same count for every way of placing four zeros on three ovals in genus 2.
for assignment in ([0, 0, 0, 0], [0, 0, 1, 1], [1, 1, 2, 2]):
    p = build_presentation(2, 3, 0, 0, 4, assignment)
    print(assignment, "->", 2 ** sl2_exponent(p), "components")
