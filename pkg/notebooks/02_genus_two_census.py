"""Which invariant tuples (n, a, n+, u/2) occur in genus 2?

The grid alone is quick; pass ``--full`` to add the 100000 random configurations.
"""

import sys

from realhitchin.census import Budget, admissible_tuples, census

full = "--full" in sys.argv
budget = Budget() if full else Budget(random=0)
print(len(admissible_tuples(2)), "tuples satisfy the parity and range constraints")

report = census(2, budget, seed=0)
print("realized:", report["realized"], "after", report["budget"]["tried"], "configurations")
for key, w in sorted(report["witnesses"].items()):
    cfg = w["config"]
    print(f"  {key:>9}  roots={','.join(cfg['roots'])}  zeros={','.join(cfg['zeros'])}  sign={cfg['sign']}")
print("never seen:", report["missing"])

# (1,0,0,1) needs one oval with a single pair of zeros and the other pair
# off it; with no real branch points the single oval is the whole line,
# doubly covered, so every real zero there counts twice.
