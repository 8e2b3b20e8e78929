from fractions import Fraction

import pytest

from qlie.algebra import compute_structure_constants, label_H
from qlie.linalg import Matrix
from qlie.oracle import (
    ORACLE_TERM_CAP, basis_images, casimir_elements, oracle_structure_constants,
    separating_family, sweedler_size, symbolic_basis,
)
from qlie.scalar import ONE, ZERO, Scalar, q_power
from qlie.uq import (
    EvaluationSpan, ResourceError, SeparatingFamilyError, adjoint_action, expand_in_span,
    rep_pi, tau,
)


@pytest.mark.parametrize("n,kind", [(2, "gl"), (2, "sl"), (3, "gl"), (3, "sl")])
def test_rank_certificate(n, kind):
    sb = symbolic_basis(n, kind)
    assert sb.rank_certificate == len(sb.labels) == (n * n if kind == "gl" else n * n - 1)


def test_span_examples_n2():
    sb = symbolic_basis(2, "gl")
    els = [sb.elements[l] for l in sb.labels]
    reps = separating_family(2)
    assert expand_in_span(els[0], els, reps) == [ONE, ZERO, ZERO, ZERO]
    K, X12, X21 = sb.elements["K"], sb.elements["X_1_2"], sb.elements["X_2_1"]
    assert all(c == ZERO for c in expand_in_span(adjoint_action(K, X12), els, reps))
    assert sb.expand(adjoint_action(X12, X21)) == {label_H(1): ONE}


def test_rank_deficiency_is_reported():
    sb = symbolic_basis(2, "gl")
    x = sb.elements["X_1_2"]
    with pytest.raises(SeparatingFamilyError):
        EvaluationSpan([x, x.scale(2)], separating_family(2))


@pytest.mark.parametrize("n", [2, 3])
def test_classical_images_in_pi(n):
    sb = symbolic_basis(n, "gl")
    pi = rep_pi(n)

    def at_one(label):
        return pi.evaluate(sb.elements[label]).map(lambda c: Scalar(c.classical_limit()))

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                assert at_one(f"X_{i}_{j}") == Matrix.unit(n, i, j)
    for i in range(1, n):
        assert at_one(label_H(i)) == Matrix.unit(n, i, i) - Matrix.unit(n, i + 1, i + 1)
    assert at_one("K") == Matrix.identity(n).scale(Scalar(Fraction(2, n)))


@pytest.mark.parametrize("n", [2, 3])
def test_casimir_relations(n):
    C, B = casimir_elements(n)
    for r in separating_family(n):
        assert r.evaluate(B) == r.evaluate(tau(C)).scale(-q_power(-n))
        # C + B itself is not tau invariant
        assert r.evaluate(tau(C + B)) != r.evaluate(C + B)


@pytest.mark.parametrize("n,kind", [(2, "gl"), (3, "gl"), (3, "sl")])
def test_basis_images(n, kind):
    checks = basis_images(n, kind)
    bad = [(c.map_name, c.label) for c in checks if not c.passed]
    assert not bad
    if kind == "gl":
        k = {c.map_name: c.actual for c in checks if c.label == "K"}
        assert k["tau"] == k["tilde_theta"] == k["tilde_S"] == {"K": Scalar(-1)}
        assert k["dagger"] == {"K": ONE}


def test_oracle_n2():
    for kind in ("gl", "sl"):
        assert oracle_structure_constants(2, kind) == compute_structure_constants(2, kind)


def test_oracle_refuses_large_n():
    assert sweedler_size(3, "gl") < ORACLE_TERM_CAP < sweedler_size(4, "sl")
    with pytest.raises(ResourceError):
        oracle_structure_constants(4, "sl")
    with pytest.raises(ResourceError):
        oracle_structure_constants(3, "gl", term_cap=10)
