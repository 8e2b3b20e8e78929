"""Where the computed tables part from the printed closed forms.

Only the M family differs, and by an overall sign: M_kij = -conj(N_kij).
The classical bracket [e_ij, e_ki] = -e_kj forces the minus sign at q = 1.
"""
from qlie.algebra import closed_form_families, compare_families, compute_structure_constants

for n in (2, 3, 4):
    fam = compute_structure_constants(n, "gl").families()
    diffs = compare_families(fam, closed_form_families(n, "printed"))
    names = sorted({d[0] for d in diffs})
    print(f"n={n}: {len(diffs)} entries differ, families {names or '-'}")
    for name, key, got, want in diffs[:2]:
        print(f"    {name}{key}: computed {got}, printed {want}, q=1 -> {got.classical_limit()}")
    rest = compare_families(fam, closed_form_families(n, "corrected"))
    print(f"    against corrected M = -conj(N): {len(rest)} differences")
