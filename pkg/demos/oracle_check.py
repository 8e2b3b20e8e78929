"""Rebuild the tables for n = 2, 3 in U_q(gl_n) and compare with the R-matrix path.

The oracle forms ad(x)(X_ij) from the coproduct and antipode, then reads
coordinates by evaluating in pi and pi (x) pi. It shares no contraction code
with compute_structure_constants.
"""
import time

from qlie.algebra import compute_structure_constants
from qlie.oracle import oracle_structure_constants, symbolic_basis

for n in (2, 3):
    for kind in ("gl", "sl"):
        t0 = time.perf_counter()
        d = oracle_structure_constants(n, kind).first_difference(compute_structure_constants(n, kind))
        rank = symbolic_basis(n, kind).rank_certificate
        verdict = "identical" if d is None else f"differ at {d[:3]}"
        print(f"{kind}_{n}: rank {rank}, {verdict} ({time.perf_counter() - t0:.1f}s)")
