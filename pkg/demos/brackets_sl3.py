"""Print a few brackets of L_q(sl_3) and their q -> 1 limits.

    python3 demos/brackets_sl3.py
"""
from qlie.algebra import compute_structure_constants

sc = compute_structure_constants(3, "sl")
print(f"basis: {', '.join(sc.labels)}")
for a, b in [("X_1_2", "X_2_1"), ("X_1_2", "X_2_3"), ("X_1_2", "X_3_1"), ("H_1", "X_1_2"), ("H_1", "H_1")]:
    res = sc.bracket(a, b)
    body = " + ".join(f"{c} {t}" for t, c in res.items()) or "0"
    limit = ", ".join(f"{c.classical_limit()} {t}" for t, c in res.items()) or "0"
    print(f"[{a} o {b}] = {body}")
    print(f"    at q = 1: {limit}")
