import pytest

from qlie.algebra import (
    LABEL_K, StructureConstants, _module_matrix, _t, act, adjoint_coeffs, basis_labels,
    build_basis, casimir_weights, closed_form, closed_form_families, compare_families,
    compute_structure_constants, label_H, label_X, parse_label, roots, xii_expansion,
)
from qlie.linalg import rank
from qlie.oracle import separating_family, symbolic_T
from qlie.scalar import ONE, ZERO, Scalar, q, q_power
from qlie.uq import EvaluationSpan, adjoint_action

CASES = [(n, kind) for n in (2, 3, 4) for kind in ("gl", "sl")]


# --- labels and basis -------------------------------------------------------

def test_labels():
    assert basis_labels(2, "gl") == ["X_1_2", "X_2_1", "H_1", "K"]
    assert basis_labels(3, "sl")[-2:] == ["H_1", "H_2"] and len(basis_labels(3, "sl")) == 8
    for n in (2, 3, 4):
        assert len(basis_labels(n, "gl")) == n * n
        assert len(basis_labels(n, "sl")) == n * n - 1
    assert parse_label("X_3_1") == ("X", 3, 1)
    assert parse_label("H_2") == ("H", 2)
    assert parse_label("K") == ("K",)
    with pytest.raises(ValueError):
        parse_label("X_1")
    with pytest.raises(ValueError):
        basis_labels(1, "gl")
    with pytest.raises(ValueError):
        basis_labels(3, "so")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_casimir_weights(n):
    b = build_basis(n)
    for i in range(1, n + 1):
        want = (1 - q_power(-2)) * q_power(i) / (q_power(2 * n) - 1)
        assert casimir_weights(n)[i] == want
        assert b.casimir_C[_t(n, i, i)] == want


def test_X12_scaling():
    b = build_basis(3)
    calX = [(x + y) / 2 for x, y in zip(b.traceless_T[1, 2], b.traceless_V[1, 2])]
    assert b.coords[label_X(1, 2)] == calX
    calX = [(x + y) / 2 for x, y in zip(b.traceless_T[3, 1], b.traceless_V[3, 1])]
    assert b.coords[label_X(3, 1)] == [q_power(-1.5) * c for c in calX]


@pytest.mark.parametrize("n,kind", CASES)
def test_basis_independent(n, kind):
    b = build_basis(n, kind)
    assert rank(b.matrix()) == b.dim
    classical = b.matrix().map(lambda c: Scalar(c.classical_limit()))
    assert rank(classical) == b.dim


# --- X_ii expansion ---------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_xii_consistent_with_basis(n):
    b = build_basis(n)
    for i in range(1, n + 1):
        exp = xii_expansion(i, n)
        hpart = [ZERO] * (2 * n * n)
        for lbl, c in exp.items():
            if lbl != LABEL_K:
                hpart = [x + c * y for x, y in zip(hpart, b.coords[lbl])]
        calX = [(x + y) / 2 for x, y in zip(b.traceless_T[i, i], b.traceless_V[i, i])]
        assert hpart == calX
        assert exp[LABEL_K] == q_power(i)
        assert exp[LABEL_K].classical_limit() == 1
    for i in range(1, n):
        a, c = xii_expansion(i, n), xii_expansion(i + 1, n)
        diff = {k: a.get(k, ZERO) - q.inv() * c.get(k, ZERO) for k in set(a) | set(c)}
        assert {k: v for k, v in diff.items() if v} == {label_H(i): ONE}


def test_xii_n2():
    want = 1 - (q**2 - 1) / (q**4 - 1)
    assert xii_expansion(1, 2) == {label_H(1): want, LABEL_K: q}


# --- adjoint coefficient arrays ----------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_casimirs_are_invariant(n):
    b = build_basis(n)
    zero = [ZERO] * (2 * n * n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for gen in ("T", "V"):
                coords = list(zero)
                idx = _t(n, i, j) + (0 if gen == "T" else n * n)
                coords[idx] = ONE
                mm = _module_matrix(n, coords)
                assert act(n, mm, b.casimir_C) == zero
                assert act(n, mm, b.casimir_B) == zero


@pytest.mark.parametrize("n", [2, 3])
def test_adjoint_coeffs_classical(n):
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            C = adjoint_coeffs("T", i, j, n)
            for r in rng:
                for s in rng:
                    for k in rng:
                        for l in rng:
                            want = (j == k and r == i and s == l) - (l == i and r == k and s == j)
                            assert C[r, s, k, l].classical_limit() == want


def test_adjoint_coeffs_against_hopf_n2():
    n = 2
    T = symbolic_T(n)
    keys = [(k, l) for k in (1, 2) for l in (1, 2)]
    reps = separating_family(n)
    span = EvaluationSpan([T[k] for k in keys], reps)
    for i, j in keys:
        C = adjoint_coeffs("T", i, j, n)
        for k, l in keys:
            coeffs = span.expand(adjoint_action(T[i, j], T[k, l]))
            for (r, s), c in zip(keys, coeffs):
                assert c == C[r, s, k, l]


# --- structure constants ----------------------------------------------------

@pytest.mark.parametrize("n,kind", [(2, "gl"), (3, "gl"), (4, "gl")])
def test_K_decouples(n, kind):
    sc = compute_structure_constants(n, kind)
    for a in sc.labels:
        assert not sc.bracket(LABEL_K, a) and not sc.bracket(a, LABEL_K)


def test_n2_examples():
    sc = compute_structure_constants(2, "gl")
    assert sc.bracket("X_1_2", "X_2_1") == {"H_1": ONE}
    assert sc.bracket("H_1", "H_1") == {"H_1": q**2 - q**-2}
    assert sc == closed_form(2, "gl")


@pytest.mark.parametrize("n,kind", CASES)
def test_matches_closed_forms_up_to_M_sign(n, kind):
    sc = compute_structure_constants(n, kind)
    assert sc == closed_form(n, kind, convention="corrected")
    diff = compare_families(sc.families(), closed_form_families(n, "printed"))
    assert {d[0] for d in diff} <= {"M"}
    assert len(diff) == (n * (n - 1) * (n - 2))
    for _, _, got, printed in diff:
        assert got == -printed


def test_closed_form_examples():
    n = 4
    fam = closed_form_families(n)
    for (i, j, l), v in fam["N"].items():
        assert v == q_power(0.5 - j) * (1 + q**n) / 2
    for (k, i, j), v in fam["M"].items():
        assert v == q_power(i - 0.5) * (1 + q**-n) / 2
    for (i, j, k), v in fam["l"].items():
        assert v.classical_limit() == (k == i) - (k == i - 1) + (k == j - 1) - (k == j)
    with pytest.raises(ValueError):
        closed_form_families(3, "other")


def test_table_round_trip_through_families():
    sc = compute_structure_constants(3, "sl")
    again = closed_form(3, "sl", families=sc.families())
    assert again == sc


def test_first_difference_names_entry():
    sc = compute_structure_constants(2, "gl")
    table = {k: dict(v) for k, v in sc.table.items()}
    table["H_1", "X_1_2"]["X_1_2"] = table["H_1", "X_1_2"]["X_1_2"] + 1
    other = StructureConstants(2, "gl", sc.labels, table)
    a, b, t, mine, theirs = sc.first_difference(other)
    assert (a, b, t) == ("H_1", "X_1_2", "X_1_2")
    assert theirs - mine == ONE


# --- roots ------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_roots(n):
    rd = roots(n, compute_structure_constants(n, "gl").families())
    for (i, j), a in rd.a.items():
        assert rd.a[j, i] == [-x for x in a]
        assert rd.r[i, j] == [-x for x in rd.l[j, i]]
    assert rd.lattice_violations() == []


def test_lattice_law_only_for_composable_pairs():
    # for disjoint pairs a_12 + a_34 = 0 fails already at q = 1
    rd = roots(4)
    lhs = [x + y for x, y in zip(rd.a[1, 2], rd.a[3, 4])]
    assert [c.classical_limit() for c in lhs] == [2, -2, 2]
