"""Numerical R-matrices for the pairs (pi, pi*), (pi*, pi) and (pi*, pi*).

Every R-matrix is a :class:`~qlie.linalg.Tensor` with entries
``R[i, j, k, l] = (rho1_ik (x) rho2_jl)(R)``, i.e. index order
(first-out, second-out, first-in, second-in) with 1-based indices.

``R_{pi pi*}`` comes from its closed formula. The others are evaluated from
the images of the universal R-matrix on its first leg,

    (pi*_ij (x) 1)(R)   = [i <= j] q^(i-j) Ehat_ij
    (pi*_ji (x) 1)(R^T) = [i <= j] q^(i-j) Ehat_ji,

with the second leg evaluated in pi or pi*.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix, Tensor, einsum, matmul, rank, trace
from .scalar import ONE, ZERO, Scalar, q, q_power
from .uq import Letter, Rep, build_Ehat, rep_pi, rep_pistar, tensor_rep, _letter_coproduct, K

__all__ = [
    "RMatrix", "bar", "r_pi_pistar", "r_pistar_rho", "r_matrices",
    "check_intertwining", "IntertwiningReport", "projector_identity", "ProjectorReport",
]


def bar(i: int, n: int) -> int:
    """The index reversal i -> n + 1 - i."""
    return n + 1 - i


@dataclass(frozen=True)
class RMatrix:
    label: str          # "pi pi*", "pi* pi" or "pi* pi*"
    n: int
    body: Tensor
    first: str = field(default="pi")
    second: str = field(default="pi*")

    def __getitem__(self, idx) -> Scalar:
        return self.body[idx]

    def matrix(self) -> Matrix:
        return self.body.as_matrix(2)

    def classical_limit_is_identity(self) -> bool:
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    for l in range(1, n + 1):
                        want = 1 if (i == k and j == l) else 0
                        if self.body[i, j, k, l].classical_limit() != want:
                            return False
        return True


def r_pi_pistar(n: int) -> RMatrix:
    """delta_ik delta_jl + delta_ij delta_kl ((1/q - 1) delta_ik - (q - 1/q) q^(k-i) [i > k])."""
    if n < 2:
        raise ValueError("n must be at least 2")
    qq = q - q.inv()

    def entry(i, j, k, l):
        v = ONE if (i == k and j == l) else ZERO
        if i == j and k == l:
            if i == k:
                v = v + (q.inv() - 1)
            elif i > k:
                v = v - qq * q_power(k - i)
        return v
    return RMatrix("pi pi*", n, Tensor.from_function((n,) * 4, entry), "pi", "pi*")


def _rep_by_name(name: str, n: int) -> Rep:
    return rep_pi(n) if name == "pi" else rep_pistar(n)


def r_pistar_rho(n: int, rho: str = "pi", transposed: bool = False) -> RMatrix:
    """R-matrix with one pi* leg, read off from the universal-R images.

    ``transposed=False`` gives R_{pi* rho}; ``transposed=True`` gives
    R_{rho pi*} from the R^T image.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if rho not in ("pi", "pi*"):
        raise ValueError("rho must be 'pi' or 'pi*'")
    r = _rep_by_name(rho, n)
    data = {}
    for a in range(1, n + 1):
        for c in range(1, n + 1):
            if (a > c) if not transposed else (a < c):
                continue
            img = r.evaluate(build_Ehat(a, c, n)).scale(q_power(min(a, c) - max(a, c)))
            for x, y, v in img.nonzeros():
                if transposed:
                    # (rho (x) pi*)(R)_{x, a, y, c} = [c <= a] q^(c-a) rho(Ehat_ac)_{xy}
                    data[(x + 1, a, y + 1, c)] = v
                else:
                    data[(a, x + 1, c, y + 1)] = v
    body = Tensor((n,) * 4, data)
    if transposed:
        return RMatrix(f"{rho} pi*", n, body, rho, "pi*")
    return RMatrix(f"pi* {rho}", n, body, "pi*", rho)


def r_matrices(n: int) -> dict:
    """The three R-matrices used for the adjoint coefficients."""
    return {
        "pi pi*": r_pi_pistar(n),
        "pi* pi": r_pistar_rho(n, "pi"),
        "pi* pi*": r_pistar_rho(n, "pi*"),
    }


@dataclass
class IntertwiningReport:
    label: str
    passed: bool
    failing_generator: Letter | None = None

    def __bool__(self):
        return self.passed


def _generators(n: int) -> list:
    gens = [Letter("E", i) for i in range(1, n)] + [Letter("F", i) for i in range(1, n)]
    gens += [Letter("H", i) for i in range(1, n + 1)]
    for a in range(n):
        mu = [0] * n
        mu[a] = 1
        gens.append(K(mu))
    return gens


def check_intertwining(R: RMatrix) -> IntertwiningReport:
    """R (rho1 (x) rho2)(Delta g) == (rho1 (x) rho2)(Delta^T g) R for every generator g."""
    n = R.n
    r1 = _rep_by_name(R.first, n)
    r2 = _rep_by_name(R.second, n)
    from .linalg import kron
    Rm = R.matrix()
    for g in _generators(n):
        terms = _letter_coproduct(g, n)
        delta = None
        delta_t = None
        for w1, w2 in terms:
            a = kron(r1.word(w1), r2.word(w2))
            b = kron(r1.word(w2), r2.word(w1))
            delta = a if delta is None else delta + a
            delta_t = b if delta_t is None else delta_t + b
        if matmul(Rm, delta) != matmul(delta_t, Rm):
            return IntertwiningReport(R.label, False, g)
    return IntertwiningReport(R.label, True)


@dataclass
class ProjectorReport:
    n: int
    coefficient: Scalar
    expected_coefficient: Scalar
    projector: Tensor
    idempotent: bool
    rank: int
    annihilates_traceless: bool

    @property
    def passed(self) -> bool:
        return (
            self.coefficient == self.expected_coefficient
            and self.idempotent
            and self.rank == 1
            and self.annihilates_traceless
        )

    def __bool__(self):
        return self.passed


def projector_identity(n: int) -> ProjectorReport:
    """Check R_{sr kbar lbar} R_{lkij} = delta_{rbar i} delta_{sbar j} + (q^-2n - 1) P_{rbar sbar ij}."""
    from .algebra import casimir_weights

    R = r_pi_pistar(n).body
    # reindex the first factor so the contraction runs over plain k, l
    Rbar = Tensor(R.dims, {(s, r, bar(k, n), bar(l, n)): v for (s, r, k, l), v in R.data.items()})
    lhs = einsum("srkl,lkij->rsij", Rbar, R)
    diff = {}
    for (r, s_, i, j), v in lhs.data.items():
        diff[(bar(r, n), bar(s_, n), i, j)] = v
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            key = (i, j, i, j)
            diff[key] = diff.get(key, ZERO) - ONE
    D = Tensor((n,) * 4, diff)
    Dm = D.as_matrix(2)
    coeff = trace(Dm)
    expected = q_power(-2 * n) - 1
    P = D.scale(coeff.inv()) if coeff else D
    Pm = P.as_matrix(2)
    idem = matmul(Pm, Pm) == Pm
    rk = rank(Pm)
    # contraction with the traceless combination T_ab - delta_ab q^a C
    w = casimir_weights(n)
    kill = True
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            diag_sum = ZERO
            for a in range(1, n + 1):
                diag_sum = diag_sum + P[a, a, i, j] * q_power(a)
            for c in range(1, n + 1):
                for d in range(1, n + 1):
                    v = P[c, d, i, j]
                    if c == d:
                        v = v - w[c] * diag_sum
                    if v:
                        kill = False
    return ProjectorReport(n, coeff, expected, P, idem, rk, kill)
