import pytest

from qlie.linalg import Matrix, Tensor
from qlie.rmatrix import (
    RMatrix, bar, check_intertwining, projector_identity, r_matrices, r_pi_pistar, r_pistar_rho,
)
from qlie.scalar import ONE, ZERO, q, q_power
from qlie.uq import E, build_Ehat, rep_pi

NS = [2, 3, 4]


def test_r_pi_pistar_entries():
    R = r_pi_pistar(2)
    assert R[1, 1, 1, 1] == q.inv()
    assert R[2, 2, 1, 1] == -(q - q.inv()) * q.inv()
    assert R[1, 2, 1, 2] == ONE
    assert R[1, 1, 2, 2] == ZERO


def test_pistar_rho_slices():
    n = 3
    R = r_pistar_rho(n, "pi")
    pi = rep_pi(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            block = Matrix([[R[i, k, j, l] for l in range(1, n + 1)] for k in range(1, n + 1)])
            if i > j:
                assert block.is_zero()
                continue
            assert block == pi.evaluate(build_Ehat(i, j, n)).scale(q_power(i - j))
            if i == j:
                d = [q.inv() if k == i else ONE for k in range(1, n + 1)]
                assert block == Matrix.diagonal(d)
            else:
                assert block == Matrix.unit(n, i, j).scale(-(q - q.inv()) * q_power(i - j))


@pytest.mark.parametrize("n", NS)
def test_all_r_matrices_intertwine(n):
    rs = list(r_matrices(n).values()) + [r_pistar_rho(n, "pi", True), r_pistar_rho(n, "pi*", True)]
    for R in rs:
        rep = check_intertwining(R)
        assert rep, (R.label, rep.failing_generator)


def test_identity_does_not_intertwine():
    fake = RMatrix("pi pi*", 2, Tensor.identity4(2), "pi", "pi*")
    rep = check_intertwining(fake)
    assert not rep
    assert rep.failing_generator == E(1)


@pytest.mark.parametrize("n", NS)
def test_classical_limit_identity(n):
    for R in r_matrices(n).values():
        assert R.classical_limit_is_identity()


@pytest.mark.parametrize("n", NS)
def test_closed_formula_matches_universal_r_image(n):
    assert r_pi_pistar(n).body == r_pistar_rho(n, "pi", transposed=True).body


@pytest.mark.parametrize("n", NS)
def test_projector_identity(n):
    rep = projector_identity(n)
    assert rep.coefficient == q_power(-2 * n) - 1
    assert rep.rank == 1 and rep.idempotent and rep.annihilates_traceless
    assert rep.passed


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bar_involution(n):
    for i in range(1, n + 1):
        assert bar(bar(i, n), n) == i
    assert [bar(i, n) for i in range(1, n + 1)] == list(range(n, 0, -1))
